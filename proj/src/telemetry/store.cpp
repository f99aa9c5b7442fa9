#include "telemetry/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <tuple>

#include "common/error.hpp"

namespace smarttrap::telemetry {

void QueryFilter::validate() const {
    if (since && until && *since > *until) {
        throw ValidationError("query: since must not exceed until");
    }
    if (bbox && !geobounds_valid(*bbox)) {
        throw ValidationError("query: invalid bounding box");
    }
}

bool QueryFilter::matches(const CaptureMessage& msg) const {
    if (since && msg.timestamp < *since) return false;
    if (until && msg.timestamp > *until) return false;
    if (bbox && !bbox->contains({msg.latitude, msg.longitude})) return false;
    if (trap_id && msg.trap_id != *trap_id) return false;
    return true;
}

CaptureStore::CaptureStore(const std::string& data_dir, bool fsync_on_append)
    : fsync_on_append_(fsync_on_append) {
    if (data_dir.empty()) throw ValidationError("data directory must be non-empty");
    struct stat st{};
    if (::stat(data_dir.c_str(), &st) != 0) {
        if (::mkdir(data_dir.c_str(), 0755) != 0) {
            throw IoError("cannot create data directory '" + data_dir +
                          "': " + std::strerror(errno));
        }
    } else if (!S_ISDIR(st.st_mode)) {
        throw IoError("'" + data_dir + "' is not a directory");
    }
    log_path_ = data_dir + "/captures.ndjson";
    replay();
    fd_ = ::open(log_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd_ < 0) {
        throw IoError("cannot open log '" + log_path_ + "': " + std::strerror(errno));
    }
}

CaptureStore::~CaptureStore() {
    if (fd_ >= 0) ::close(fd_);
}

void CaptureStore::replay() {
    std::ifstream in(log_path_, std::ios::binary);
    if (!in) return;  // fresh store
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        bool last = in.peek() == EOF;
        DecodeResult dec = decode_capture_message(line);
        if (!dec.ok()) {
            // A torn final line can follow a crash mid-append; anything
            // earlier means the log itself is damaged.
            if (last) break;
            throw ParseError(log_path_ + ":" + std::to_string(line_no) +
                             ": corrupt record: " + dec.detail);
        }
        auto key = std::make_pair(dec.message->trap_id, dec.message->seq);
        if (seen_.insert(key).second) {
            messages_.push_back(*dec.message);
        }
    }
}

void CaptureStore::append_locked(const CaptureMessage& msg) {
    std::string line = encode_capture_message(msg);
    line += '\n';
    size_t off = 0;
    while (off < line.size()) {
        ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw IoError("append to '" + log_path_ + "' failed: " + std::strerror(errno));
        }
        off += static_cast<size_t>(n);
    }
    if (fsync_on_append_ && ::fsync(fd_) != 0) {
        throw IoError("fsync of '" + log_path_ + "' failed: " + std::strerror(errno));
    }
}

CaptureStore::IngestOutcome CaptureStore::ingest(const CaptureMessage& msg) {
    validate_capture_message(msg);
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(msg.trap_id, msg.seq);
    if (seen_.count(key)) return IngestOutcome::Duplicate;
    append_locked(msg);  // durable before acknowledgment
    seen_.insert(key);
    messages_.push_back(msg);
    return IngestOutcome::Stored;
}

std::vector<CaptureMessage> CaptureStore::query(const QueryFilter& filter) const {
    filter.validate();
    std::vector<CaptureMessage> out;
    {
        std::lock_guard lock(mutex_);
        for (const auto& msg : messages_) {
            if (filter.matches(msg)) out.push_back(msg);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CaptureMessage& a, const CaptureMessage& b) {
        return std::tie(a.timestamp, a.trap_id, a.seq) < std::tie(b.timestamp, b.trap_id, b.seq);
    });
    return out;
}

size_t CaptureStore::size() const {
    std::lock_guard lock(mutex_);
    return messages_.size();
}

}  // namespace smarttrap::telemetry
