#include "telemetry/message.hpp"

#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace smarttrap::telemetry {

using nlohmann::json;

const char* decode_error_name(DecodeErrorKind kind) {
    switch (kind) {
        case DecodeErrorKind::None: return "none";
        case DecodeErrorKind::Syntax: return "syntax";
        case DecodeErrorKind::MissingField: return "missing_field";
        case DecodeErrorKind::BadType: return "bad_type";
        case DecodeErrorKind::RangeError: return "range";
        case DecodeErrorKind::BadTimestamp: return "bad_timestamp";
    }
    return "unknown";
}

void validate_capture_message(const CaptureMessage& msg) {
    if (msg.trap_id.empty()) throw ValidationError("capture message requires a trap_id");
    if (!geofix_valid({msg.latitude, msg.longitude})) {
        throw ValidationError("capture message coordinates out of range");
    }
    if (msg.captured_count < 1) throw ValidationError("captured_count must be >= 1");
}

std::string encode_capture_message(const CaptureMessage& msg) {
    json j{
        {"trap_id", msg.trap_id},
        {"seq", msg.seq},
        {"latitude", msg.latitude},
        {"longitude", msg.longitude},
        {"captured_count", msg.captured_count},
        {"timestamp", format_utc(msg.timestamp)},
    };
    if (msg.stale_fix) j["stale_fix"] = true;
    return j.dump();
}

namespace {

DecodeResult fail(DecodeErrorKind kind, std::string detail) {
    return {std::nullopt, kind, std::move(detail)};
}

}  // namespace

DecodeResult decode_capture_message(const std::string& bytes) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return fail(DecodeErrorKind::Syntax, "body is not a JSON object");
    }

    constexpr const char* required[] = {"trap_id",        "seq",       "latitude",
                                        "longitude",      "captured_count", "timestamp"};
    for (const char* field : required) {
        if (!j.contains(field)) {
            return fail(DecodeErrorKind::MissingField, std::string("missing '") + field + "'");
        }
    }

    CaptureMessage msg;
    if (!j["trap_id"].is_string()) return fail(DecodeErrorKind::BadType, "trap_id must be a string");
    msg.trap_id = j["trap_id"].get<std::string>();
    if (msg.trap_id.empty()) return fail(DecodeErrorKind::RangeError, "trap_id must be non-empty");

    if (!j["seq"].is_number_unsigned()) {
        return fail(DecodeErrorKind::BadType, "seq must be a non-negative integer");
    }
    msg.seq = j["seq"].get<std::uint64_t>();

    if (!j["latitude"].is_number() || !j["longitude"].is_number()) {
        return fail(DecodeErrorKind::BadType, "latitude/longitude must be numbers");
    }
    msg.latitude = j["latitude"].get<double>();
    msg.longitude = j["longitude"].get<double>();
    if (!geofix_valid({msg.latitude, msg.longitude})) {
        return fail(DecodeErrorKind::RangeError, "coordinates out of range");
    }

    if (!j["captured_count"].is_number_integer()) {
        return fail(DecodeErrorKind::BadType, "captured_count must be an integer");
    }
    msg.captured_count = j["captured_count"].get<int>();
    if (msg.captured_count < 1) {
        return fail(DecodeErrorKind::RangeError, "captured_count must be >= 1");
    }

    if (!j["timestamp"].is_string()) {
        return fail(DecodeErrorKind::BadType, "timestamp must be a string");
    }
    auto ts = parse_utc(j["timestamp"].get<std::string>());
    if (!ts) {
        return fail(DecodeErrorKind::BadTimestamp,
                    "timestamp must be ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ)");
    }
    msg.timestamp = *ts;

    if (j.contains("stale_fix")) {
        if (!j["stale_fix"].is_boolean()) {
            return fail(DecodeErrorKind::BadType, "stale_fix must be a boolean");
        }
        msg.stale_fix = j["stale_fix"].get<bool>();
    }

    return {msg, DecodeErrorKind::None, {}};
}

}  // namespace smarttrap::telemetry
