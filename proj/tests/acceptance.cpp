// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "app/runner.hpp"
#include "detection/detector.hpp"
#include "heatmap/export_fmt.hpp"
#include "heatmap/grid.hpp"
#include "heatmap/render.hpp"
#include "imaging/morphology.hpp"
#include "imaging/netpbm.hpp"
#include "oracles.hpp"
#include "simkit/field.hpp"
#include "simkit/scene.hpp"
#include "simkit/sim_ports.hpp"
#include "telemetry/client.hpp"
#include "telemetry/service.hpp"
#include "trapctl/trap.hpp"

using namespace smarttrap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;
std::ostringstream g_detail;

void report(int number, const std::string& name, bool ok) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", number, name.c_str());
    if (!ok) {
        ++g_failures;
        std::string detail = g_detail.str();
        if (!detail.empty()) std::printf("       %s\n", detail.c_str());
    }
    g_detail.str("");
    g_detail.clear();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("smarttrap_accept_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- 1. vision oracle --------------------------------------------------------

bool criterion_vision_oracle() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20200801);
    simkit::RandomSceneParams params;  // 640x480, blobs 5..90 px, specks/holes
    int scenes = 0;
    for (; scenes < 200; ++scenes) {
        auto spec = simkit::random_scene_spec(rng, params);
        auto scene = simkit::generate_scene(spec);
        auto result = detection::detect(scene.image);
        if (result.cbb_count != scene.truth_cbb ||
            result.unknown_count != scene.truth_unknown) {
            g_detail << "scene " << scenes << ": got (" << result.cbb_count << ", "
                     << result.unknown_count << "), truth (" << scene.truth_cbb << ", "
                     << scene.truth_unknown << ")";
            return false;
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("       (%d scenes in %.1f s)\n", scenes, elapsed);
    if (elapsed >= 30.0) {
        g_detail << "suite took " << elapsed << " s, limit is 30 s";
        return false;
    }
    return true;
}

// --- 2. figure-6 style reproduction -------------------------------------------

bool criterion_demo_scene() {
    auto spec = simkit::parse_scene_text(simkit::demo_scene_text());
    auto scene = simkit::generate_scene(spec);
    if (scene.truth_cbb != 11 || scene.truth_unknown != 3) {
        g_detail << "demo scene truth is (" << scene.truth_cbb << ", " << scene.truth_unknown
                 << ")";
        return false;
    }
    auto result = detection::detect(scene.image);
    if (result.cbb_count != 11 || result.unknown_count != 3) {
        g_detail << "detected (" << result.cbb_count << ", " << result.unknown_count << ")";
        return false;
    }

    auto annotated = detection::annotate(scene.image, result);
    const imaging::Rgb green{0, 255, 0};
    const imaging::Rgb red{255, 0, 0};
    int green_boxes = 0, red_boxes = 0;
    for (const auto& det : result.detections) {
        const auto& b = det.bbox;
        const imaging::Rgb want = det.klass == detection::Klass::Cbb ? green : red;
        bool outline_ok = true;
        for (int x = b.x; x < b.x + b.w && outline_ok; ++x) {
            outline_ok = annotated.at(x, b.y) == want && annotated.at(x, b.y + b.h - 1) == want;
        }
        for (int y = b.y; y < b.y + b.h && outline_ok; ++y) {
            outline_ok = annotated.at(b.x, y) == want && annotated.at(b.x + b.w - 1, y) == want;
        }
        if (!outline_ok) {
            g_detail << "box at (" << b.x << "," << b.y << ") not uniformly outlined";
            return false;
        }
        (det.klass == detection::Klass::Cbb ? green_boxes : red_boxes) += 1;
    }
    if (green_boxes != 11 || red_boxes != 3) {
        g_detail << green_boxes << " green / " << red_boxes << " red rectangles";
        return false;
    }
    return true;
}

// --- 3. classification table ---------------------------------------------------

bool criterion_classification_table() {
    detection::SizeRange range{10, 60};
    int checked = 0;
    for (int w = 1; w <= 80; ++w) {
        for (int h = 1; h <= 80; ++h) {
            imaging::Component comp{1, w * h, {0, 0, w, h}};
            bool expected = w >= 10 && w <= 60 && h >= 10 && h <= 60;
            bool got = detection::classify(comp, range).klass == detection::Klass::Cbb;
            if (got != expected) {
                g_detail << "(" << w << "," << h << ") classified " << got << ", expected "
                         << expected;
                return false;
            }
            ++checked;
        }
    }
    return checked == 6400;
}

// --- 4. state machine table ------------------------------------------------------

bool criterion_state_table() {
    int checked = 0;
    for (int cbb = 0; cbb <= 10; ++cbb) {
        for (int unk = 0; unk <= 10; ++unk) {
            trapctl::TrapState expected = unk > 0   ? trapctl::TrapState::EjectMode
                                          : cbb > 0 ? trapctl::TrapState::CaptureMode
                                                    : trapctl::TrapState::DetectionMode;
            if (trapctl::next_state(trapctl::TrapState::DetectionMode, cbb, unk) != expected) {
                g_detail << "(" << cbb << "," << unk << ") diverged";
                return false;
            }
            ++checked;
        }
    }
    return checked == 121;
}

// --- 5. morphology laws -----------------------------------------------------------

bool criterion_morphology_laws() {
    std::mt19937 rng(555);
    auto se = imaging::StructuringElement::square(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto img = oracles::random_binary(rng, 20, 20, 0.35);

        if (imaging::invert(imaging::invert(img)) != img) {
            g_detail << "invert is not an involution (trial " << trial << ")";
            return false;
        }
        auto opened = imaging::open(img, se);
        auto closed = imaging::close(img, se);
        if (imaging::open(opened, se) != opened || imaging::close(closed, se) != closed) {
            g_detail << "open/close not idempotent (trial " << trial << ")";
            return false;
        }
        auto eroded = imaging::erode(img, se);
        auto dilated = imaging::dilate(img, se);
        for (int y = 0; y < 20; ++y) {
            for (int x = 0; x < 20; ++x) {
                if (eroded.get(x, y) && !img.get(x, y)) {
                    g_detail << "erode not anti-extensive";
                    return false;
                }
                if (img.get(x, y) && !dilated.get(x, y)) {
                    g_detail << "dilate not extensive";
                    return false;
                }
            }
        }
        if (eroded != oracles::window_min(img, 1) || dilated != oracles::window_max(img, 1)) {
            g_detail << "erode/dilate diverge from the window oracle";
            return false;
        }

        auto comps = imaging::connected_components(img);
        auto want = oracles::flood_components(img);
        if (comps.size() != want.size()) {
            g_detail << "component count " << comps.size() << " vs oracle " << want.size();
            return false;
        }
        for (size_t i = 0; i < comps.size(); ++i) {
            if (!(comps[i].bbox == want[i].bbox) ||
                comps[i].pixel_count != want[i].pixel_count) {
                g_detail << "component " << i << " mismatch";
                return false;
            }
        }
    }
    return true;
}

// --- 6. scent schedule --------------------------------------------------------------

bool criterion_scent_schedule() {
    trapctl::TrapConfig cfg;  // 180 s pulse period, 1 s frames
    std::vector<imaging::RgbImage> frames(601, imaging::RgbImage(64, 48, {240, 240, 240}));
    simkit::ScriptedCamera camera(std::move(frames));
    auto gps = simkit::ScriptedGps::fixed({-21.6, -45.5});
    simkit::RecordingActuators actuators;
    trapctl::VirtualClock clock;
    trapctl::trap_loop(camera, gps, actuators, nullptr, cfg, clock);

    std::vector<double> pulses;
    for (const auto& ev : actuators.events()) {
        if (ev.actuator == trapctl::Actuator::EjectFan1 &&
            ev.action == trapctl::SwitchAction::On) {
            pulses.push_back(ev.t);
        }
    }
    if (pulses != std::vector<double>{180.0, 360.0, 540.0}) {
        g_detail << "pulse times:";
        for (double t : pulses) g_detail << " " << t;
        return false;
    }
    return true;
}

// --- 7. end-to-end conservation + restart durability ---------------------------------

bool criterion_conservation() {
    TempDir dir("conserve");
    const std::string data_dir = dir.str() + "/data";

    auto scenario = simkit::parse_scenario_text(simkit::demo_scenario_text());
    app::TrapSettings settings = app::default_settings();
    auto round = simkit::simulate_round(scenario, settings.trap);
    if (round.messages.size() < 4) {
        g_detail << "demo round produced too few messages to split";
        return false;
    }

    telemetry::ClientConfig client_cfg;
    client_cfg.base_backoff = std::chrono::milliseconds(5);
    client_cfg.max_attempts_per_flush = 8;

    int port = 0;
    const size_t half = round.messages.size() / 2;
    size_t acked_before_kill = 0;

    {  // first service incarnation
        auto store = std::make_unique<telemetry::CaptureStore>(data_dir, true);
        telemetry::IngestService service(*store, "127.0.0.1", 0);
        service.start();
        port = service.port();
        telemetry::DeliveryClient client(
            telemetry::make_http_transport(service.base_url()), client_cfg);
        for (size_t i = 0; i < half; ++i) client.submit(round.messages[i]);
        if (client.pending() != 0) {
            g_detail << "client had pending messages before the kill";
            return false;
        }
        acked_before_kill = store->size();
        service.stop();  // kill mid-run
    }

    const std::string endpoint = "http://127.0.0.1:" + std::to_string(port);
    size_t final_count = 0;
    double stored_count_sum = 0;
    {  // restart on the same directory and port; deliver the rest
        auto store = std::make_unique<telemetry::CaptureStore>(data_dir, true);
        if (store->size() != acked_before_kill) {
            g_detail << "restart lost acknowledged messages: " << store->size() << " vs "
                     << acked_before_kill;
            return false;
        }
        telemetry::IngestService service(*store, "127.0.0.1", port);
        service.start();
        telemetry::DeliveryClient client(telemetry::make_http_transport(endpoint), client_cfg);
        // Re-send one already-acked message: dedup must keep the store stable.
        client.submit(round.messages[0]);
        for (size_t i = half; i < round.messages.size(); ++i) client.submit(round.messages[i]);
        if (client.pending() != 0) {
            g_detail << "pending after restart flush";
            return false;
        }
        for (const auto& msg : store->query({})) stored_count_sum += msg.captured_count;
        final_count = store->size();
        service.stop();
    }

    if (final_count != round.messages.size()) {
        g_detail << "store has " << final_count << " messages, round emitted "
                 << round.messages.size();
        return false;
    }
    double round_count_sum = 0;
    for (const auto& msg : round.messages) round_count_sum += msg.captured_count;
    if (stored_count_sum != round_count_sum) {
        g_detail << "count sums differ: store " << stored_count_sum << ", round "
                 << round_count_sum;
        return false;
    }

    // Heatmap leg: kernel-mass-normalized raw weight equals the count sum.
    auto messages = app::load_messages(data_dir + "/captures.ndjson");
    heatmap::RenderConfig render_cfg;
    render_cfg.blur_radius_m = 12.0;
    auto grid = heatmap::aggregate(messages, render_cfg);
    double raw_total = 0;
    for (double v : grid.raw) raw_total += v;
    double normalized = raw_total / grid.kernel_mass;
    if (std::abs(normalized - round_count_sum) > 1e-6 * round_count_sum) {
        g_detail << "heatmap mass " << normalized << " vs counts " << round_count_sum;
        return false;
    }

    // Trap-loop leg: frames -> loop -> store conservation on a second trap id.
    {
        auto store = std::make_unique<telemetry::CaptureStore>(data_dir, true);
        telemetry::IngestService service(*store, "127.0.0.1", port);
        service.start();

        simkit::SceneSpec two;
        two.width = 320;
        two.height = 240;
        two.blobs = {{20, 20, 20, 20, 25, simkit::BlobShape::Rect},
                     {80, 20, 22, 30, 25, simkit::BlobShape::Rect}};
        simkit::SceneSpec mixed = two;
        mixed.blobs.push_back({140, 100, 70, 70, 25, simkit::BlobShape::Rect});

        std::vector<imaging::RgbImage> frames;
        frames.push_back(imaging::RgbImage(320, 240, {240, 240, 240}));
        frames.push_back(simkit::generate_scene(two).image);     // capture of 2
        frames.push_back(simkit::generate_scene(mixed).image);   // eject (unknown present)
        frames.push_back(simkit::generate_scene(two).image);     // capture of 2
        simkit::ScriptedCamera camera(std::move(frames));
        auto gps = simkit::ScriptedGps::fixed({-21.6, -45.5});
        simkit::RecordingActuators actuators;
        trapctl::VirtualClock clock;
        trapctl::TrapConfig loop_cfg;
        loop_cfg.trap_id = "trap-acc-loop";
        telemetry::DeliveryClient client(telemetry::make_http_transport(endpoint), client_cfg);
        auto log = trapctl::trap_loop(camera, gps, actuators, &client, loop_cfg, clock);
        client.flush();

        int capturing_sum = 0;
        for (const auto& rec : log.records) {
            if (auto* f = std::get_if<trapctl::FrameRecord>(&rec)) {
                if (f->cbb >= 1 && f->unknown == 0) capturing_sum += f->cbb;
            }
        }
        telemetry::QueryFilter filter;
        filter.trap_id = "trap-acc-loop";
        int stored_loop_sum = 0;
        for (const auto& msg : store->query(filter)) stored_loop_sum += msg.captured_count;
        service.stop();
        if (capturing_sum != 4 || stored_loop_sum != capturing_sum) {
            g_detail << "loop conservation: capturing " << capturing_sum << ", stored "
                     << stored_loop_sum;
            return false;
        }
    }
    return true;
}

// --- 8. fault injection ----------------------------------------------------------------

namespace {

/// Wraps the real HTTP transport; fails the first `outage` attempts, and
/// optionally drops the first successful acknowledgment.
class OutageTransport : public telemetry::Transport {
public:
    OutageTransport(std::unique_ptr<telemetry::Transport> inner, int outage, bool lose_first_ack)
        : inner_(std::move(inner)), outage_(outage), lose_first_ack_(lose_first_ack) {}

    telemetry::TransportResult post_capture(const std::string& body) override {
        ++attempts_;
        if (attempts_ <= outage_) {
            return {telemetry::TransportResult::Kind::Error, "injected outage"};
        }
        auto res = inner_->post_capture(body);
        if (lose_first_ack_ && !ack_lost_ &&
            res.kind == telemetry::TransportResult::Kind::Stored) {
            ack_lost_ = true;
            return {telemetry::TransportResult::Kind::Error, "ack dropped"};
        }
        return res;
    }

private:
    std::unique_ptr<telemetry::Transport> inner_;
    int outage_;
    bool lose_first_ack_;
    int attempts_ = 0;
    bool ack_lost_ = false;
};

}  // namespace

bool criterion_fault_injection() {
    TempDir dir("faults");
    telemetry::CaptureStore store(dir.str(), false);
    telemetry::IngestService service(store, "127.0.0.1", 0);
    service.start();
    const std::string endpoint = service.base_url();

    telemetry::ClientConfig cfg;
    cfg.max_attempts_per_flush = 6;
    cfg.base_backoff = std::chrono::milliseconds(1);
    auto no_sleep = [](std::chrono::milliseconds) {};

    int delivered_once = 0;
    for (int trial = 0; trial < 50; ++trial) {
        telemetry::CaptureMessage msg;
        msg.trap_id = "fault-" + std::to_string(trial);
        msg.seq = static_cast<std::uint64_t>(trial);
        msg.latitude = -21.6;
        msg.longitude = -45.5;
        msg.captured_count = 1 + trial % 4;
        msg.timestamp = 1583020800 + trial;

        bool lose_ack = trial % 2 == 1;  // odd trials also lose the first ack
        telemetry::DeliveryClient client(
            std::make_unique<OutageTransport>(telemetry::make_http_transport(endpoint), 2,
                                              lose_ack),
            cfg, no_sleep);
        client.submit(msg);
        if (client.pending() != 0) continue;

        telemetry::QueryFilter filter;
        filter.trap_id = msg.trap_id;
        auto stored = store.query(filter);
        if (stored.size() == 1 && stored[0] == msg) ++delivered_once;
    }
    service.stop();
    if (delivered_once != 50) {
        g_detail << delivered_once << "/50 trials stored exactly once";
        return false;
    }

    // One real outage: endpoint down at submit time, service starts later.
    telemetry::CaptureStore store2(dir.str() + "/real", false);
    int port2;
    {
        telemetry::IngestService probe(store2, "127.0.0.1", 0);
        probe.start();
        port2 = probe.port();
        probe.stop();
    }
    telemetry::ClientConfig cfg2;
    cfg2.max_attempts_per_flush = 2;
    cfg2.base_backoff = std::chrono::milliseconds(1);
    telemetry::DeliveryClient client(
        telemetry::make_http_transport("http://127.0.0.1:" + std::to_string(port2)), cfg2,
        no_sleep);
    telemetry::CaptureMessage msg;
    msg.trap_id = "fault-real";
    msg.seq = 0;
    msg.latitude = -21.6;
    msg.longitude = -45.5;
    msg.captured_count = 2;
    msg.timestamp = 1583020800;
    client.submit(msg);
    if (client.pending() != 1) {
        g_detail << "message should be buffered while the service is down";
        return false;
    }
    telemetry::IngestService service2(store2, "127.0.0.1", port2);
    service2.start();
    bool drained = client.flush();
    service2.stop();
    if (!drained || store2.size() != 1) {
        g_detail << "buffered message not delivered after the service came back";
        return false;
    }
    return true;
}

// --- 9. heatmap properties + RFC 7946 validation ------------------------------------------

bool criterion_heatmap_properties() {
    std::mt19937 rng(909090);
    const GeoBounds field{-45.5020, -21.6020, -45.4980, -21.5980};
    auto random_messages = [&rng, &field](int n) {
        std::vector<telemetry::CaptureMessage> out;
        auto unit = [&rng] { return rng() * (1.0 / 4294967296.0); };
        for (int i = 0; i < n; ++i) {
            telemetry::CaptureMessage msg;
            msg.trap_id = "hm";
            msg.seq = static_cast<std::uint64_t>(i);
            msg.latitude = field.min_lat + 0.1 * (field.max_lat - field.min_lat) +
                           0.8 * unit() * (field.max_lat - field.min_lat);
            msg.longitude = field.min_lon + 0.1 * (field.max_lon - field.min_lon) +
                            0.8 * unit() * (field.max_lon - field.min_lon);
            msg.captured_count = 1 + static_cast<int>(rng() % 5);
            msg.timestamp = 1583020800 + i;
            out.push_back(msg);
        }
        return out;
    };

    heatmap::RenderConfig cfg;
    cfg.blur_radius_m = 14.0;
    cfg.zoom = heatmap::ZoomPreset::Z16;

    // Linearity.
    auto a = random_messages(35);
    auto b = random_messages(25);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto ga = heatmap::aggregate(a, cfg, field);
    auto gb = heatmap::aggregate(b, cfg, field);
    auto gab = heatmap::aggregate(both, cfg, field);
    for (size_t i = 0; i < gab.raw.size(); ++i) {
        if (std::abs(gab.raw[i] - (ga.raw[i] + gb.raw[i])) > 1e-9) {
            g_detail << "linearity violated at cell " << i;
            return false;
        }
    }

    // Max-normalization.
    if (gab.max_raw <= 0) {
        g_detail << "empty aggregate in normalization check";
        return false;
    }
    double max_intensity = 0;
    for (double v : gab.intensity) max_intensity = std::max(max_intensity, v);
    if (max_intensity != 1.0) {
        g_detail << "max intensity " << max_intensity;
        return false;
    }

    // Translation equivariance by one whole cell.
    const LocalScale scale = local_scale(field.center_lat());
    const double dlon = gab.cell_size_m / scale.meters_per_deg_lon;
    auto shifted_msgs = a;
    for (auto& m : shifted_msgs) m.longitude += dlon;
    auto gs = heatmap::aggregate(shifted_msgs, cfg, field);
    int margin =
        static_cast<int>(std::ceil(3.0 * cfg.blur_radius_m / 2.0 / gab.cell_size_m)) + 2;
    for (int r = margin; r < ga.rows - margin; ++r) {
        for (int c = margin; c < ga.cols - margin - 1; ++c) {
            if (std::abs(gs.raw_at(c + 1, r) - ga.raw_at(c, r)) > 1e-9) {
                g_detail << "translation equivariance violated at (" << c << "," << r << ")";
                return false;
            }
        }
    }

    // Four zoom presets emit RFC 7946 documents that an external validator
    // (python jsonschema against the GeoJSON schema) accepts.
    TempDir dir("geojson");
    std::vector<std::string> files;
    for (auto zoom : {heatmap::ZoomPreset::Z13, heatmap::ZoomPreset::Z14,
                      heatmap::ZoomPreset::Z15, heatmap::ZoomPreset::Z16}) {
        heatmap::RenderConfig zoom_cfg = cfg;
        zoom_cfg.zoom = zoom;
        auto grid = heatmap::aggregate(both, zoom_cfg, field);
        std::string path =
            dir.str() + "/heat_" + heatmap::zoom_preset_name(zoom) + ".geojson";
        std::ofstream(path, std::ios::binary) << heatmap::export_geojson(grid);
        files.push_back(path);
    }
    std::string validator = fs::path(__FILE__).parent_path() / "validate_geojson.py";
    std::string cmd = "python3 '" + validator + "'";
    for (const auto& f : files) cmd += " '" + f + "'";
    int rc = std::system(cmd.c_str());
    if (rc != 0) {
        g_detail << "external GeoJSON validation failed (rc " << rc << ")";
        return false;
    }
    return true;
}

// --- 10. determinism -------------------------------------------------------------------------

struct PipelineArtifacts {
    std::string store_bytes;
    std::string run_log;
    std::string png;
    std::string geojson;
    std::string html;
};

PipelineArtifacts run_pipeline(const std::string& tag) {
    TempDir dir(tag);
    const std::string data_dir = dir.str() + "/data";

    auto scenario = simkit::parse_scenario_text(simkit::demo_scenario_text());
    app::TrapSettings settings = app::default_settings();

    telemetry::ClientConfig client_cfg;
    client_cfg.base_backoff = std::chrono::milliseconds(1);

    PipelineArtifacts artifacts;
    {
        telemetry::CaptureStore store(data_dir, false);
        telemetry::IngestService service(store, "127.0.0.1", 0);
        service.start();
        const std::string endpoint = service.base_url();

        auto round = app::run_round(scenario, settings, endpoint, client_cfg);

        // A deterministic trap-loop leg over generated frames.
        simkit::SceneSpec spec;
        spec.width = 320;
        spec.height = 240;
        spec.blobs = {{30, 40, 18, 22, 25, simkit::BlobShape::Rect}};
        std::vector<imaging::RgbImage> frames;
        frames.push_back(imaging::RgbImage(320, 240, {235, 235, 235}));
        frames.push_back(simkit::generate_scene(spec).image);
        simkit::ScriptedCamera camera(std::move(frames));
        auto gps = simkit::ScriptedGps::fixed({-21.6, -45.5});
        simkit::RecordingActuators actuators;
        trapctl::VirtualClock clock;
        trapctl::TrapConfig loop_cfg;
        loop_cfg.trap_id = "trap-det";
        telemetry::DeliveryClient client(telemetry::make_http_transport(endpoint), client_cfg);
        auto log = trapctl::trap_loop(camera, gps, actuators, &client, loop_cfg, clock);
        client.flush();
        artifacts.run_log = log.to_ndjson();
        service.stop();
    }

    artifacts.store_bytes = read_file(data_dir + "/captures.ndjson");

    auto messages = app::load_messages(data_dir + "/captures.ndjson");
    heatmap::RenderConfig cfg;
    cfg.blur_radius_m = 10.0;
    cfg.zoom = heatmap::ZoomPreset::Z15;
    auto grid = heatmap::aggregate(messages, cfg);
    auto raster = heatmap::render_raster(grid, cfg);
    artifacts.png = heatmap::encode_png(raster);
    artifacts.geojson = heatmap::export_geojson(grid);
    artifacts.html = heatmap::export_html(grid, cfg, raster);
    return artifacts;
}

bool criterion_determinism() {
    auto a = run_pipeline("det_a");
    auto b = run_pipeline("det_b");
    if (a.store_bytes != b.store_bytes) {
        g_detail << "store bytes differ";
        return false;
    }
    if (a.run_log != b.run_log) {
        g_detail << "run logs differ";
        return false;
    }
    if (a.png != b.png || a.geojson != b.geojson || a.html != b.html) {
        g_detail << "heatmap artifacts differ";
        return false;
    }
    if (a.store_bytes.empty() || a.png.empty()) {
        g_detail << "pipeline produced empty artifacts";
        return false;
    }
    return true;
}

}  // namespace

int main() {
    std::printf("smarttrap acceptance suite\n");
    report(1, "vision oracle: 200 random scenes match ground truth exactly (< 30 s)",
           criterion_vision_oracle());
    report(2, "demo scene: 11 + 3 detection and annotated rectangles", criterion_demo_scene());
    report(3, "classification table: 6400/6400 against the inclusive range",
           criterion_classification_table());
    report(4, "state machine table: 121/121 priority rules", criterion_state_table());
    report(5, "morphology laws: involution, idempotence, extensivity, component oracle",
           criterion_morphology_laws());
    report(6, "scent schedule: idle pulses at exactly 180/360/540 s", criterion_scent_schedule());
    report(7, "end-to-end conservation with mid-run service restart", criterion_conservation());
    report(8, "telemetry fault injection: 50/50 stored exactly once", criterion_fault_injection());
    report(9, "heatmap laws and RFC 7946 validation at four zooms",
           criterion_heatmap_properties());
    report(10, "determinism: byte-identical logs, stores and artifacts",
           criterion_determinism());

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
