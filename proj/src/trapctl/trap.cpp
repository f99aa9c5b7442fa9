#include "trapctl/trap.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace smarttrap::trapctl {

using nlohmann::json;

const char* actuator_name(Actuator a) {
    switch (a) {
        case Actuator::CaptureFan: return "capture_fan";
        case Actuator::EjectFan1: return "eject_fan_1";
        case Actuator::EjectFan2: return "eject_fan_2";
        case Actuator::EjectFan3: return "eject_fan_3";
    }
    return "?";
}

const char* switch_action_name(SwitchAction a) {
    return a == SwitchAction::On ? "on" : "off";
}

const char* trap_state_name(TrapState s) {
    switch (s) {
        case TrapState::DetectionMode: return "detection";
        case TrapState::CaptureMode: return "capture";
        case TrapState::EjectMode: return "eject";
    }
    return "?";
}

void TrapConfig::validate() const {
    if (frame_period <= 0 || scent_pulse_period <= 0 || capture_fan_duration <= 0 ||
        eject_fan_duration <= 0) {
        throw ValidationError("trap periods and durations must be positive");
    }
    if (trap_id.empty()) throw ValidationError("trap_id must be non-empty");
    detect.range.validate();
    imaging::StructuringElement::square(detect.se_size);
}

TrapState next_state(TrapState current, int cbb_count, int unknown_count) {
    if (current != TrapState::DetectionMode) {
        throw StateError("next_state is only defined in DetectionMode");
    }
    if (cbb_count < 0 || unknown_count < 0) {
        throw ValidationError("detection counts must be non-negative");
    }
    if (unknown_count > 0) return TrapState::EjectMode;
    if (cbb_count > 0) return TrapState::CaptureMode;
    return TrapState::DetectionMode;
}

TrapController::TrapController(TrapConfig cfg, GpsPort& gps) : cfg_(std::move(cfg)), gps_(gps) {
    cfg_.validate();
}

TrapState TrapController::decide(int cbb_count, int unknown_count) {
    state_ = next_state(state_, cbb_count, unknown_count);
    return state_;
}

TrapController::CaptureOutcome TrapController::run_capture(int cbb_count, double t) {
    if (state_ != TrapState::CaptureMode) {
        throw StateError("run_capture requires CaptureMode");
    }
    if (cbb_count < 1) throw ValidationError("capture requires at least one beetle");

    CaptureOutcome outcome;
    bool stale = false;
    if (auto fix = gps_.read_fix()) {
        last_fix_ = *fix;
    } else {
        stale = true;  // carry the last-known fix rather than dropping the record
    }
    GeoFix fix = last_fix_.value_or(GeoFix{});

    outcome.message.trap_id = cfg_.trap_id;
    outcome.message.seq = next_seq_++;
    outcome.message.latitude = fix.latitude;
    outcome.message.longitude = fix.longitude;
    outcome.message.captured_count = cbb_count;
    outcome.message.timestamp = cfg_.start_time + static_cast<UnixSeconds>(std::llround(t));
    outcome.message.stale_fix = stale;

    outcome.events.push_back({t, Actuator::CaptureFan, SwitchAction::On});
    outcome.events.push_back({t + cfg_.capture_fan_duration, Actuator::CaptureFan,
                              SwitchAction::Off});
    state_ = TrapState::DetectionMode;
    return outcome;
}

std::vector<ActuatorEvent> TrapController::run_eject(double t) {
    if (state_ != TrapState::EjectMode) {
        throw StateError("run_eject requires EjectMode");
    }
    auto events = scent_pulse(t);  // same fan pattern
    state_ = TrapState::DetectionMode;
    return events;
}

std::vector<ActuatorEvent> TrapController::scent_pulse(double t) const {
    std::vector<ActuatorEvent> events;
    for (Actuator fan : {Actuator::EjectFan1, Actuator::EjectFan2, Actuator::EjectFan3}) {
        events.push_back({t, fan, SwitchAction::On});
    }
    for (Actuator fan : {Actuator::EjectFan1, Actuator::EjectFan2, Actuator::EjectFan3}) {
        events.push_back({t + cfg_.eject_fan_duration, fan, SwitchAction::Off});
    }
    return events;
}

std::vector<telemetry::CaptureMessage> RunLog::messages() const {
    std::vector<telemetry::CaptureMessage> out;
    for (const auto& rec : records) {
        if (const auto* m = std::get_if<MessageRecord>(&rec)) out.push_back(m->message);
    }
    return out;
}

std::vector<ActuatorEvent> RunLog::actuator_events() const {
    std::vector<ActuatorEvent> out;
    for (const auto& rec : records) {
        if (const auto* a = std::get_if<ActuatorRecord>(&rec)) out.push_back(a->event);
    }
    return out;
}

std::string RunLog::to_ndjson() const {
    std::string out;
    for (const auto& rec : records) {
        json j;
        if (const auto* f = std::get_if<FrameRecord>(&rec)) {
            j = {{"type", "frame"}, {"t", f->t}, {"cbb", f->cbb}, {"unknown", f->unknown}};
        } else if (const auto* s = std::get_if<StateRecord>(&rec)) {
            j = {{"type", "state"},
                 {"t", s->t},
                 {"from", trap_state_name(s->from)},
                 {"to", trap_state_name(s->to)}};
        } else if (const auto* a = std::get_if<ActuatorRecord>(&rec)) {
            j = {{"type", "actuator"},
                 {"t", a->event.t},
                 {"actuator", actuator_name(a->event.actuator)},
                 {"action", switch_action_name(a->event.action)}};
        } else if (const auto* m = std::get_if<MessageRecord>(&rec)) {
            j = json::parse(telemetry::encode_capture_message(m->message));
            j["type"] = "message";
            j["t"] = m->t;
        } else if (const auto* e = std::get_if<CameraErrorRecord>(&rec)) {
            j = {{"type", "camera_error"}, {"t", e->t}, {"error", e->error}};
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

RunLog trap_loop(CameraPort& camera, GpsPort& gps, ActuatorPort& actuators, MessageSink* sink,
                 const TrapConfig& cfg, VirtualClock& clock) {
    cfg.validate();
    TrapController ctl(cfg, gps);
    RunLog log;

    auto emit = [&](const std::vector<ActuatorEvent>& events) {
        for (const auto& ev : events) {
            actuators.apply(ev);
            log.records.push_back(ActuatorRecord{ev});
        }
    };

    double t_free = clock.now();  // end of the current busy window
    long pulse_k = 1;
    bool first = true;

    while (true) {
        double t_frame = first ? t_free : t_free + cfg.frame_period;

        // Attractant pulses due in the idle gap fire and push the next frame
        // out; pulses that fell inside a busy window are skipped, not queued.
        while (true) {
            double tp = static_cast<double>(pulse_k) * cfg.scent_pulse_period;
            if (tp <= t_free) {
                ++pulse_k;
                continue;
            }
            if (tp <= t_frame) {
                clock.advance_to(tp);
                emit(ctl.scent_pulse(tp));
                t_free = tp + cfg.eject_fan_duration;
                t_frame = t_free + cfg.frame_period;
                ++pulse_k;
                continue;
            }
            break;
        }
        first = false;

        FrameGrab grab = camera.grab();
        if (grab.end) break;
        clock.advance_to(t_frame);
        if (!grab.frame) {
            log.records.push_back(CameraErrorRecord{t_frame, grab.error});
            t_free = t_frame;
            continue;
        }

        auto result = detection::detect(*grab.frame, cfg.detect);
        log.records.push_back(FrameRecord{t_frame, result.cbb_count, result.unknown_count});

        TrapState decided = ctl.decide(result.cbb_count, result.unknown_count);
        if (decided == TrapState::CaptureMode) {
            log.records.push_back(StateRecord{t_frame, TrapState::DetectionMode, decided});
            auto outcome = ctl.run_capture(result.cbb_count, t_frame);
            emit(outcome.events);
            log.records.push_back(MessageRecord{t_frame, outcome.message});
            if (sink) sink->submit(outcome.message);
            t_free = t_frame + cfg.capture_fan_duration;
            log.records.push_back(StateRecord{t_free, decided, TrapState::DetectionMode});
        } else if (decided == TrapState::EjectMode) {
            log.records.push_back(StateRecord{t_frame, TrapState::DetectionMode, decided});
            emit(ctl.run_eject(t_frame));
            t_free = t_frame + cfg.eject_fan_duration;
            log.records.push_back(StateRecord{t_free, decided, TrapState::DetectionMode});
        } else {
            t_free = t_frame;
        }
    }
    return log;
}

}  // namespace smarttrap::trapctl
