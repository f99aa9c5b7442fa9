#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "detection/detector.hpp"
#include "telemetry/message.hpp"
#include "trapctl/ports.hpp"

namespace smarttrap::trapctl {

enum class TrapState { DetectionMode, CaptureMode, EjectMode };

const char* trap_state_name(TrapState s);

// 2020-01-01T00:00:00Z; the simulated runs need a fixed epoch to stay
// byte-reproducible.
constexpr UnixSeconds kDefaultStartTime = 1577836800;

struct TrapConfig {
    double frame_period = 1.0;          // camera cadence, seconds
    double scent_pulse_period = 180.0;  // attractant-spreading pulse period
    double capture_fan_duration = 5.0;
    double eject_fan_duration = 5.0;
    std::string trap_id = "trap-0";
    UnixSeconds start_time = kDefaultStartTime;
    detection::DetectParams detect;

    void validate() const;
};

/// Pure transition rule. Unknown insects dominate: any unknown forces
/// EjectMode even when beetles are present; otherwise any beetle forces
/// CaptureMode; an empty frame stays in DetectionMode.
/// Only valid while in DetectionMode (capture and eject run to completion).
TrapState next_state(TrapState current, int cbb_count, int unknown_count);

/// Drives the actuation schedule and owns per-trap message identity
/// (sequence numbers, last-known GPS fix).
class TrapController {
public:
    TrapController(TrapConfig cfg, GpsPort& gps);

    TrapState state() const { return state_; }
    const TrapConfig& config() const { return cfg_; }

    /// Applies next_state to a detection outcome.
    TrapState decide(int cbb_count, int unknown_count);

    struct CaptureOutcome {
        telemetry::CaptureMessage message;
        std::vector<ActuatorEvent> events;
    };

    /// Capture fan on for capture_fan_duration starting at t, one message
    /// with a fresh GPS fix (or the last known one, flagged stale). State
    /// returns to DetectionMode.
    CaptureOutcome run_capture(int cbb_count, double t);

    /// All three eject fans on for eject_fan_duration starting at t. No
    /// message. State returns to DetectionMode.
    std::vector<ActuatorEvent> run_eject(double t);

    /// Event set for one attractant pulse at t (same fan pattern as eject).
    std::vector<ActuatorEvent> scent_pulse(double t) const;

private:
    TrapConfig cfg_;
    TrapState state_ = TrapState::DetectionMode;
    GpsPort& gps_;
    std::uint64_t next_seq_ = 0;
    std::optional<GeoFix> last_fix_;
};

// --- run log ---------------------------------------------------------------

struct FrameRecord {
    double t = 0.0;
    int cbb = 0;
    int unknown = 0;
};

struct StateRecord {
    double t = 0.0;
    TrapState from = TrapState::DetectionMode;
    TrapState to = TrapState::DetectionMode;
};

struct ActuatorRecord {
    ActuatorEvent event;
};

struct MessageRecord {
    double t = 0.0;
    telemetry::CaptureMessage message;
};

struct CameraErrorRecord {
    double t = 0.0;
    std::string error;
};

using RunRecord =
    std::variant<FrameRecord, StateRecord, ActuatorRecord, MessageRecord, CameraErrorRecord>;

struct RunLog {
    std::vector<RunRecord> records;

    std::vector<telemetry::CaptureMessage> messages() const;
    std::vector<ActuatorEvent> actuator_events() const;
    /// One JSON object per line; message lines carry the wire-format fields.
    std::string to_ndjson() const;
};

/// Consumer for capture messages produced by the loop (normally the
/// delivery client; tests plug in collectors).
class MessageSink {
public:
    virtual ~MessageSink() = default;
    virtual void submit(const telemetry::CaptureMessage& msg) = 0;
};

/// Full device loop over a frame stream: detect each frame, run the state
/// machine, fire the attractant pulse schedule, and emit capture telemetry.
/// Runs until the camera reports end of stream. Camera faults are logged
/// and the frame skipped. Deterministic given the clock and frame stream.
RunLog trap_loop(CameraPort& camera, GpsPort& gps, ActuatorPort& actuators, MessageSink* sink,
                 const TrapConfig& cfg, VirtualClock& clock);

}  // namespace smarttrap::trapctl
