#pragma once

#include <optional>
#include <string>

#include "common/error.hpp"
#include "common/geo.hpp"
#include "imaging/image.hpp"

namespace smarttrap::trapctl {

enum class Actuator { CaptureFan, EjectFan1, EjectFan2, EjectFan3 };
enum class SwitchAction { On, Off };

const char* actuator_name(Actuator a);
const char* switch_action_name(SwitchAction a);

struct ActuatorEvent {
    double t = 0.0;  // seconds since run start
    Actuator actuator = Actuator::CaptureFan;
    SwitchAction action = SwitchAction::On;

    bool operator==(const ActuatorEvent&) const = default;
};

/// One grab attempt. `end` means the stream is exhausted; an empty frame
/// without `end` is a device fault for this frame only.
struct FrameGrab {
    std::optional<imaging::RgbImage> frame;
    bool end = false;
    std::string error;
};

class CameraPort {
public:
    virtual ~CameraPort() = default;
    virtual FrameGrab grab() = 0;
};

class GpsPort {
public:
    virtual ~GpsPort() = default;
    /// nullopt when no fix is currently available.
    virtual std::optional<GeoFix> read_fix() = 0;
};

class ActuatorPort {
public:
    virtual ~ActuatorPort() = default;
    virtual void apply(const ActuatorEvent& event) = 0;
};

/// Deterministic run clock. Time only moves forward.
class VirtualClock {
public:
    double now() const { return now_; }

    void advance_to(double t) {
        if (t < now_) throw StateError("virtual clock cannot move backwards");
        now_ = t;
    }

private:
    double now_ = 0.0;
};

}  // namespace smarttrap::trapctl
