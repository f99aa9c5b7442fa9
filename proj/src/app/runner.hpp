#pragma once

#include <string>
#include <vector>

#include "simkit/field.hpp"
#include "telemetry/client.hpp"
#include "trapctl/trap.hpp"

namespace smarttrap::app {

/// Trap settings as loaded from a config file; the home fix seeds the
/// simulated GPS for desk runs.
struct TrapSettings {
    trapctl::TrapConfig trap;
    GeoFix home{-21.6, -45.5};
};

TrapSettings default_settings();
TrapSettings load_settings_file(const std::string& path);
TrapSettings load_settings_text(const std::string& text);

struct TrapRunOptions {
    std::vector<std::string> frame_paths;  // processed in order
    std::string endpoint;                  // empty = offline run
    TrapSettings settings = default_settings();
    telemetry::ClientConfig client;
};

struct TrapRunResult {
    trapctl::RunLog log;
    std::vector<telemetry::CaptureMessage> messages;
    telemetry::ClientStats stats;
    size_t pending = 0;
};

/// Full desk run: file-backed camera, fixed GPS, recorded actuators, and
/// (when an endpoint is given) HTTP delivery with retry.
TrapRunResult run_trap(const TrapRunOptions& options);

/// Lexicographic *.ppm listing of a frames directory.
std::vector<std::string> list_frame_files(const std::string& dir);

struct RoundRunResult {
    simkit::RoundResult round;
    telemetry::ClientStats stats;
    size_t pending = 0;
};

/// Simulates the round and, when an endpoint is given, submits every
/// message through the delivery client.
RoundRunResult run_round(const simkit::FieldScenario& scenario, const TrapSettings& settings,
                         const std::string& endpoint,
                         const telemetry::ClientConfig& client = {});

/// Messages from either an http(s) endpoint (queried via the capture API)
/// or a local newline-delimited record log.
std::vector<telemetry::CaptureMessage> load_messages(const std::string& source);

}  // namespace smarttrap::app
