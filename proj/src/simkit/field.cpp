#include "simkit/field.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "common/kvfile.hpp"

namespace smarttrap::simkit {

void FieldScenario::validate() const {
    if (!geobounds_valid(bounds) || (bounds.min_lon == bounds.max_lon) ||
        (bounds.min_lat == bounds.max_lat)) {
        throw ValidationError("scenario bounds must be a non-degenerate lat/lon rectangle");
    }
    if (path.empty()) throw ValidationError("scenario requires a path with at least one vertex");
    for (const auto& p : path) {
        if (!bounds.contains(p)) throw ValidationError("path vertex outside scenario bounds");
    }
    for (const auto& insect : insects) {
        if (!bounds.contains(insect)) throw ValidationError("insect outside scenario bounds");
    }
    if (random_insects < 0) throw ValidationError("random_insects must be >= 0");
    if (dwell_minutes <= 0 || attraction_radius_m <= 0 || waypoint_spacing_m <= 0) {
        throw ValidationError("dwell, attraction radius and waypoint spacing must be positive");
    }
}

std::vector<GeoFix> scenario_waypoints(const FieldScenario& scenario) {
    const LocalScale scale = local_scale(scenario.bounds.center_lat());
    std::vector<GeoFix> waypoints;
    waypoints.push_back(scenario.path.front());

    double walked = 0.0;        // arc length consumed up to `cursor`
    double next = scenario.waypoint_spacing_m;
    for (size_t i = 0; i + 1 < scenario.path.size(); ++i) {
        GeoFix a = scenario.path[i];
        GeoFix b = scenario.path[i + 1];
        double seg = local_distance_m(a, b, scale);
        while (seg > 0 && next <= walked + seg) {
            double f = (next - walked) / seg;
            waypoints.push_back({a.latitude + f * (b.latitude - a.latitude),
                                 a.longitude + f * (b.longitude - a.longitude)});
            next += scenario.waypoint_spacing_m;
        }
        walked += seg;
    }
    return waypoints;
}

std::vector<GeoFix> scenario_insects(const FieldScenario& scenario) {
    std::vector<GeoFix> insects = scenario.insects;
    std::mt19937 rng(scenario.seed);
    auto unit = [&rng]() { return rng() * (1.0 / 4294967296.0); };
    for (int i = 0; i < scenario.random_insects; ++i) {
        double lon = scenario.bounds.min_lon +
                     unit() * (scenario.bounds.max_lon - scenario.bounds.min_lon);
        double lat = scenario.bounds.min_lat +
                     unit() * (scenario.bounds.max_lat - scenario.bounds.min_lat);
        insects.push_back({lat, lon});
    }
    return insects;
}

RoundResult simulate_round(const FieldScenario& scenario, const trapctl::TrapConfig& cfg) {
    scenario.validate();
    cfg.validate();

    const LocalScale scale = local_scale(scenario.bounds.center_lat());
    const std::string trap_id = scenario.trap_id.empty() ? cfg.trap_id : scenario.trap_id;
    const auto waypoints = scenario_waypoints(scenario);
    auto insects = scenario_insects(scenario);
    std::vector<bool> captured(insects.size(), false);

    RoundResult result;
    result.total_insects = static_cast<int>(insects.size());

    std::uint64_t seq = 0;
    const double dwell_s = scenario.dwell_minutes * 60.0;
    for (size_t k = 0; k < waypoints.size(); ++k) {
        int count = 0;
        for (size_t i = 0; i < insects.size(); ++i) {
            if (captured[i]) continue;
            if (local_distance_m(insects[i], waypoints[k], scale) <= scenario.attraction_radius_m) {
                captured[i] = true;
                ++count;
            }
        }
        if (count == 0) continue;
        telemetry::CaptureMessage msg;
        msg.trap_id = trap_id;
        msg.seq = seq++;
        msg.latitude = waypoints[k].latitude;
        msg.longitude = waypoints[k].longitude;
        msg.captured_count = count;
        // Captures are stamped at the end of the stop's dwell.
        msg.timestamp =
            cfg.start_time + static_cast<UnixSeconds>(std::llround((k + 1) * dwell_s));
        result.messages.push_back(std::move(msg));
        result.captured += count;
    }
    return result;
}

FieldScenario parse_scenario_text(const std::string& text) {
    KvFile kv = parse_kv_text(text, "scenario");
    FieldScenario sc;
    const KvRecord* bounds = kv.find("bounds");
    if (!bounds || bounds->values.size() != 4) {
        throw ParseError("scenario requires: bounds <minLon> <minLat> <maxLon> <maxLat>");
    }
    sc.bounds = {kv_to_double(*bounds, 0), kv_to_double(*bounds, 1), kv_to_double(*bounds, 2),
                 kv_to_double(*bounds, 3)};
    sc.dwell_minutes = kv.get_double("dwell_minutes", sc.dwell_minutes);
    sc.attraction_radius_m = kv.get_double("attraction_radius", sc.attraction_radius_m);
    sc.waypoint_spacing_m = kv.get_double("waypoint_spacing", sc.waypoint_spacing_m);
    sc.random_insects = static_cast<int>(kv.get_long("random_insects", 0));
    sc.seed = static_cast<unsigned>(kv.get_long("seed", 0));
    sc.trap_id = kv.get_string("trap_id", "");
    for (const auto& rec : kv.records) {
        if (rec.key == "path") {
            if (rec.values.size() != 2) {
                throw ParseError("path expects: <lon> <lat> per vertex (line " +
                                 std::to_string(rec.line) + ")");
            }
            sc.path.push_back({kv_to_double(rec, 1), kv_to_double(rec, 0)});
        } else if (rec.key == "insect") {
            if (rec.values.size() != 2) {
                throw ParseError("insect expects: <lon> <lat> (line " + std::to_string(rec.line) +
                                 ")");
            }
            sc.insects.push_back({kv_to_double(rec, 1), kv_to_double(rec, 0)});
        }
    }
    return sc;
}

FieldScenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string demo_scenario_text() {
    // Synthetic field near Santana da Vargem, MG; not survey data.
    return R"(smarttrap-scenario v1
trap_id trap-demo
bounds -45.5020 -21.6020 -45.4980 -21.5980
dwell_minutes 30
attraction_radius 1.5
waypoint_spacing 3.0
seed 20200315
random_insects 400
# serpentine walk, west-east passes stepping north
path -45.50180 -21.60180
path -45.49820 -21.60180
path -45.49820 -21.60120
path -45.50180 -21.60120
path -45.50180 -21.60060
path -45.49820 -21.60060
path -45.49820 -21.60000
path -45.50180 -21.60000
path -45.50180 -21.59940
path -45.49820 -21.59940
path -45.49820 -21.59880
path -45.50180 -21.59880
path -45.50180 -21.59820
path -45.49820 -21.59820
)";
}

}  // namespace smarttrap::simkit
