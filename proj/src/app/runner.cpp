#include "app/runner.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/kvfile.hpp"
#include "simkit/sim_ports.hpp"

namespace smarttrap::app {

namespace fs = std::filesystem;
using nlohmann::json;

TrapSettings default_settings() {
    return {};
}

TrapSettings load_settings_text(const std::string& text) {
    KvFile kv = parse_kv_text(text, "config");
    TrapSettings s;
    s.trap.trap_id = kv.get_string("trap_id", s.trap.trap_id);
    s.trap.frame_period = kv.get_double("frame_period", s.trap.frame_period);
    s.trap.scent_pulse_period = kv.get_double("scent_pulse_period", s.trap.scent_pulse_period);
    s.trap.capture_fan_duration =
        kv.get_double("capture_fan_duration", s.trap.capture_fan_duration);
    s.trap.eject_fan_duration = kv.get_double("eject_fan_duration", s.trap.eject_fan_duration);
    s.trap.detect.threshold =
        static_cast<std::uint8_t>(kv.get_long("threshold", s.trap.detect.threshold));
    s.trap.detect.se_size = static_cast<int>(kv.get_long("se_size", s.trap.detect.se_size));
    s.trap.detect.range.min_px =
        static_cast<int>(kv.get_long("min_px", s.trap.detect.range.min_px));
    s.trap.detect.range.max_px =
        static_cast<int>(kv.get_long("max_px", s.trap.detect.range.max_px));
    if (kv.has("start_time")) {
        auto t = parse_utc(kv.get_string("start_time", ""));
        if (!t) throw ParseError("start_time must be ISO-8601 UTC");
        s.trap.start_time = *t;
    }
    if (const KvRecord* home = kv.find("home")) {
        if (home->values.size() != 2) throw ParseError("home expects: <lon> <lat>");
        s.home = {kv_to_double(*home, 1), kv_to_double(*home, 0)};
    }
    s.trap.validate();
    if (!geofix_valid(s.home)) throw ValidationError("home fix out of range");
    return s;
}

TrapSettings load_settings_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_settings_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<std::string> list_frame_files(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("'" + dir + "' is not a directory");
    }
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

TrapRunResult run_trap(const TrapRunOptions& options) {
    options.settings.trap.validate();

    simkit::FileCamera camera(options.frame_paths);
    auto gps = simkit::ScriptedGps::fixed(options.settings.home);
    simkit::RecordingActuators actuators;
    trapctl::VirtualClock clock;

    TrapRunResult result;
    if (options.endpoint.empty()) {
        result.log = trapctl::trap_loop(camera, gps, actuators, nullptr, options.settings.trap,
                                        clock);
    } else {
        telemetry::DeliveryClient client(telemetry::make_http_transport(options.endpoint),
                                         options.client);
        result.log = trapctl::trap_loop(camera, gps, actuators, &client, options.settings.trap,
                                        clock);
        client.flush();
        result.stats = client.stats();
        result.pending = client.pending();
    }
    result.messages = result.log.messages();
    return result;
}

RoundRunResult run_round(const simkit::FieldScenario& scenario, const TrapSettings& settings,
                         const std::string& endpoint, const telemetry::ClientConfig& client_cfg) {
    RoundRunResult result;
    result.round = simkit::simulate_round(scenario, settings.trap);
    if (!endpoint.empty()) {
        telemetry::DeliveryClient client(telemetry::make_http_transport(endpoint), client_cfg);
        for (const auto& msg : result.round.messages) {
            client.submit(msg);
        }
        client.flush();
        result.stats = client.stats();
        result.pending = client.pending();
    }
    return result;
}

std::vector<telemetry::CaptureMessage> load_messages(const std::string& source) {
    std::vector<telemetry::CaptureMessage> messages;
    if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0) {
        httplib::Client cli(source);
        cli.set_connection_timeout(5, 0);
        cli.set_read_timeout(10, 0);
        auto res = cli.Get("/api/v1/captures");
        if (!res) {
            throw IoError("cannot query '" + source + "': " + httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw IoError("capture query returned status " + std::to_string(res->status));
        }
        json arr = json::parse(res->body, nullptr, false);
        if (arr.is_discarded() || !arr.is_array()) {
            throw ParseError("capture query returned malformed JSON");
        }
        for (const auto& item : arr) {
            auto dec = telemetry::decode_capture_message(item.dump());
            if (!dec.ok()) {
                throw ParseError("capture query item rejected: " + dec.detail);
            }
            messages.push_back(*dec.message);
        }
        return messages;
    }

    std::ifstream in(source, std::ios::binary);
    if (!in) throw IoError("cannot open '" + source + "'");
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto dec = telemetry::decode_capture_message(line);
        if (!dec.ok()) {
            // Run logs carry frame/actuator records too; skip anything that
            // is valid JSON but not a capture message, fail on broken bytes.
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) {
                throw ParseError(source + ":" + std::to_string(line_no) + ": " + dec.detail);
            }
            if (j.is_object() && j.contains("type") && j["type"] != "message") continue;
            throw ParseError(source + ":" + std::to_string(line_no) + ": " + dec.detail);
        }
        messages.push_back(*dec.message);
    }
    return messages;
}

}  // namespace smarttrap::app
