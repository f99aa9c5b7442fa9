#pragma once

#include <string>
#include <vector>

#include "common/geo.hpp"
#include "telemetry/message.hpp"
#include "trapctl/trap.hpp"

namespace smarttrap::simkit {

/// A plantation round: the trap is walked along a path, pausing at evenly
/// spaced waypoints; insects inside the attraction radius of a stop are
/// captured there.
struct FieldScenario {
    GeoBounds bounds;
    std::vector<GeoFix> path;     // polyline vertices, in walk order
    std::vector<GeoFix> insects;  // explicit insect positions
    int random_insects = 0;       // extra insects scattered uniformly in bounds
    unsigned seed = 0;
    double dwell_minutes = 30.0;
    double attraction_radius_m = 1.5;
    double waypoint_spacing_m = 3.0;
    std::string trap_id;  // optional override of the trap config id

    void validate() const;
};

FieldScenario parse_scenario_text(const std::string& text);
FieldScenario parse_scenario_file(const std::string& path);

/// Synthetic demonstration scenario: a serpentine walk over a small field
/// with scattered insects.
std::string demo_scenario_text();

/// Stops along the path at exact arc-length multiples of the spacing,
/// starting at the first vertex.
std::vector<GeoFix> scenario_waypoints(const FieldScenario& scenario);

/// Explicit insects plus the seeded random scatter.
std::vector<GeoFix> scenario_insects(const FieldScenario& scenario);

struct RoundResult {
    std::vector<telemetry::CaptureMessage> messages;
    int total_insects = 0;
    int captured = 0;
};

/// Deterministic capture model: at each waypoint, every not-yet-captured
/// insect within the attraction radius is captured; one message per stop
/// with captures. Simulated time advances one dwell per stop.
RoundResult simulate_round(const FieldScenario& scenario, const trapctl::TrapConfig& cfg);

}  // namespace smarttrap::simkit
