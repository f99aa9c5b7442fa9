#pragma once

#include <string>
#include <vector>

#include "trapctl/ports.hpp"

namespace smarttrap::simkit {

/// Replays a fixed frame list, one frame per grab.
class ScriptedCamera : public trapctl::CameraPort {
public:
    explicit ScriptedCamera(std::vector<imaging::RgbImage> frames)
        : frames_(std::move(frames)) {}

    trapctl::FrameGrab grab() override;

private:
    std::vector<imaging::RgbImage> frames_;
    size_t next_ = 0;
};

/// Loads one PPM file per grab; unreadable files surface as per-frame
/// camera faults instead of ending the run.
class FileCamera : public trapctl::CameraPort {
public:
    explicit FileCamera(std::vector<std::string> paths) : paths_(std::move(paths)) {}

    trapctl::FrameGrab grab() override;

private:
    std::vector<std::string> paths_;
    size_t next_ = 0;
};

/// Replays a fix script (one entry per read, nullopt = no fix); after the
/// script runs out the last entry repeats forever.
class ScriptedGps : public trapctl::GpsPort {
public:
    explicit ScriptedGps(std::vector<std::optional<GeoFix>> script)
        : script_(std::move(script)) {}

    static ScriptedGps fixed(const GeoFix& fix) { return ScriptedGps({fix}); }

    std::optional<GeoFix> read_fix() override;

private:
    std::vector<std::optional<GeoFix>> script_;
    size_t next_ = 0;
};

class RecordingActuators : public trapctl::ActuatorPort {
public:
    void apply(const trapctl::ActuatorEvent& event) override { events_.push_back(event); }

    const std::vector<trapctl::ActuatorEvent>& events() const { return events_; }

private:
    std::vector<trapctl::ActuatorEvent> events_;
};

}  // namespace smarttrap::simkit
