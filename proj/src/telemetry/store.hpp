#pragma once

#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "common/geo.hpp"
#include "telemetry/message.hpp"

namespace smarttrap::telemetry {

struct QueryFilter {
    std::optional<UnixSeconds> since;  // inclusive
    std::optional<UnixSeconds> until;  // inclusive
    std::optional<GeoBounds> bbox;
    std::optional<std::string> trap_id;

    void validate() const;
    bool matches(const CaptureMessage& msg) const;
};

/// Append-only capture store backed by a newline-delimited JSON log.
/// Construction replays the log; each accepted ingest is appended (and
/// fsynced, unless disabled) before it is acknowledged, so a restart
/// reconstructs exactly the acknowledged state. (trap_id, seq) pairs are
/// stored at most once.
class CaptureStore {
public:
    explicit CaptureStore(const std::string& data_dir, bool fsync_on_append = true);
    ~CaptureStore();

    CaptureStore(const CaptureStore&) = delete;
    CaptureStore& operator=(const CaptureStore&) = delete;

    enum class IngestOutcome { Stored, Duplicate };

    /// Message must already be validated (decode_capture_message does that).
    IngestOutcome ingest(const CaptureMessage& msg);

    /// Matches ordered by timestamp, then (trap_id, seq).
    std::vector<CaptureMessage> query(const QueryFilter& filter) const;

    size_t size() const;

    std::string log_path() const { return log_path_; }

private:
    void replay();
    void append_locked(const CaptureMessage& msg);

    std::string log_path_;
    bool fsync_on_append_;
    int fd_ = -1;
    mutable std::mutex mutex_;
    std::vector<CaptureMessage> messages_;
    std::set<std::pair<std::string, std::uint64_t>> seen_;
};

}  // namespace smarttrap::telemetry
