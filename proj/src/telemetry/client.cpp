#include "telemetry/client.hpp"

#include <thread>

#include <httplib.h>

namespace smarttrap::telemetry {

namespace {

class HttpTransport : public Transport {
public:
    explicit HttpTransport(std::string endpoint) : endpoint_(std::move(endpoint)) {}

    TransportResult post_capture(const std::string& body) override {
        httplib::Client cli(endpoint_);
        cli.set_connection_timeout(2, 0);
        cli.set_read_timeout(5, 0);
        auto res = cli.Post("/api/v1/captures", body, "application/json");
        if (!res) {
            return {TransportResult::Kind::Error, httplib::to_string(res.error())};
        }
        switch (res->status) {
            case 201: return {TransportResult::Kind::Stored, {}};
            case 200: return {TransportResult::Kind::Duplicate, {}};
            case 400: return {TransportResult::Kind::Rejected, res->body};
            default:
                return {TransportResult::Kind::Error,
                        "unexpected status " + std::to_string(res->status)};
        }
    }

private:
    std::string endpoint_;
};

}  // namespace

std::unique_ptr<Transport> make_http_transport(const std::string& endpoint) {
    return std::make_unique<HttpTransport>(endpoint);
}

std::chrono::milliseconds backoff_delay(const ClientConfig& cfg, int attempt) {
    if (attempt < 1) attempt = 1;
    auto delay = cfg.base_backoff.count();
    for (int i = 1; i < attempt && delay < cfg.max_backoff.count(); ++i) delay *= 2;
    return std::chrono::milliseconds(std::min(delay, cfg.max_backoff.count()));
}

DeliveryClient::DeliveryClient(std::unique_ptr<Transport> transport, ClientConfig cfg,
                               Sleeper sleeper)
    : transport_(std::move(transport)), cfg_(cfg), sleeper_(std::move(sleeper)) {
    if (!sleeper_) {
        sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    }
}

bool DeliveryClient::deliver_head() {
    const std::string body = encode_capture_message(queue_.front());
    for (int attempt = 1; attempt <= cfg_.max_attempts_per_flush; ++attempt) {
        TransportResult res = transport_->post_capture(body);
        switch (res.kind) {
            case TransportResult::Kind::Stored:
                ++stats_.delivered;
                queue_.pop_front();
                return true;
            case TransportResult::Kind::Duplicate:
                ++stats_.duplicates;
                queue_.pop_front();
                return true;
            case TransportResult::Kind::Rejected:
                // Invalid payloads never become valid; drop instead of
                // blocking everything behind them.
                ++stats_.rejected;
                queue_.pop_front();
                return true;
            case TransportResult::Kind::Error:
                if (attempt < cfg_.max_attempts_per_flush) {
                    sleeper_(backoff_delay(cfg_, attempt));
                }
                break;
        }
    }
    return false;
}

void DeliveryClient::submit(const CaptureMessage& msg) {
    if (queue_.size() >= cfg_.buffer_capacity) {
        queue_.pop_front();
        ++stats_.dropped;
    }
    queue_.push_back(msg);
    flush();
}

bool DeliveryClient::flush() {
    while (!queue_.empty()) {
        if (!deliver_head()) return false;  // keep order: head blocks the rest
    }
    return true;
}

}  // namespace smarttrap::telemetry
