#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <string>

#include "telemetry/message.hpp"
#include "trapctl/trap.hpp"

namespace smarttrap::telemetry {

/// Outcome of one delivery attempt as seen by the client.
struct TransportResult {
    enum class Kind {
        Stored,     // service accepted and persisted the message
        Duplicate,  // service already had it
        Rejected,   // service refused it as invalid; retrying is pointless
        Error,      // transport-level failure; retry later
    };
    Kind kind = Kind::Error;
    std::string detail;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResult post_capture(const std::string& body) = 0;
};

/// POSTs to <endpoint>/api/v1/captures.
std::unique_ptr<Transport> make_http_transport(const std::string& endpoint);

struct ClientConfig {
    int max_attempts_per_flush = 5;
    std::chrono::milliseconds base_backoff{100};
    std::chrono::milliseconds max_backoff{5000};
    size_t buffer_capacity = 1024;
};

/// Capped exponential growth: base * 2^(attempt-1), clamped to max.
std::chrono::milliseconds backoff_delay(const ClientConfig& cfg, int attempt);

struct ClientStats {
    std::uint64_t delivered = 0;   // acknowledged as stored
    std::uint64_t duplicates = 0;  // acknowledged as already stored
    std::uint64_t rejected = 0;    // refused as invalid, dropped
    std::uint64_t dropped = 0;     // pushed out of a full buffer
};

/// At-least-once delivery with per-trap FIFO order. A message that cannot
/// be delivered blocks the ones behind it; the bounded buffer drops its
/// oldest entry on overflow.
class DeliveryClient : public trapctl::MessageSink {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    DeliveryClient(std::unique_ptr<Transport> transport, ClientConfig cfg = {},
                   Sleeper sleeper = nullptr);

    /// Queues the message and attempts to flush the queue in order.
    void submit(const CaptureMessage& msg) override;

    /// Re-attempts everything still buffered. Returns true when the buffer
    /// drained completely.
    bool flush();

    size_t pending() const { return queue_.size(); }
    const ClientStats& stats() const { return stats_; }

private:
    bool deliver_head();

    std::unique_ptr<Transport> transport_;
    ClientConfig cfg_;
    Sleeper sleeper_;
    std::deque<CaptureMessage> queue_;
    ClientStats stats_;
};

}  // namespace smarttrap::telemetry
