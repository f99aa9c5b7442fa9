#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "common/geo.hpp"
#include "common/timeutil.hpp"

namespace smarttrap::telemetry {

/// Geo-tagged record emitted once per capture event.
struct CaptureMessage {
    std::string trap_id;
    std::uint64_t seq = 0;  // monotone per trap; (trap_id, seq) unique
    double latitude = 0.0;
    double longitude = 0.0;
    int captured_count = 0;  // >= 1
    UnixSeconds timestamp = 0;
    bool stale_fix = false;  // set when the GPS fix is a carried-over last-known one

    bool operator==(const CaptureMessage&) const = default;
};

enum class DecodeErrorKind {
    None,
    Syntax,        // not a JSON object
    MissingField,  // required field absent
    BadType,       // field present with wrong JSON type
    RangeError,    // coordinate outside valid range or count < 1
    BadTimestamp,  // timestamp not ISO-8601 UTC
};

const char* decode_error_name(DecodeErrorKind kind);

struct DecodeResult {
    std::optional<CaptureMessage> message;
    DecodeErrorKind error = DecodeErrorKind::None;
    std::string detail;

    bool ok() const { return message.has_value(); }
};

/// UTF-8 JSON object, one message per document. stale_fix is omitted when
/// false; unknown fields are ignored on decode.
std::string encode_capture_message(const CaptureMessage& msg);
DecodeResult decode_capture_message(const std::string& bytes);

/// Validation shared by encode-side producers (trap loop, simulator).
void validate_capture_message(const CaptureMessage& msg);

}  // namespace smarttrap::telemetry
