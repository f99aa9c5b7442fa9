#include "simkit/sim_ports.hpp"

#include "imaging/netpbm.hpp"

namespace smarttrap::simkit {

trapctl::FrameGrab ScriptedCamera::grab() {
    if (next_ >= frames_.size()) return {std::nullopt, true, {}};
    return {frames_[next_++], false, {}};
}

trapctl::FrameGrab FileCamera::grab() {
    if (next_ >= paths_.size()) return {std::nullopt, true, {}};
    const std::string& path = paths_[next_++];
    try {
        return {imaging::read_ppm_file(path), false, {}};
    } catch (const std::exception& e) {
        return {std::nullopt, false, e.what()};
    }
}

std::optional<GeoFix> ScriptedGps::read_fix() {
    if (script_.empty()) return std::nullopt;
    if (next_ < script_.size()) return script_[next_++];
    return script_.back();
}

}  // namespace smarttrap::simkit
