#pragma once

#include <memory>
#include <string>
#include <thread>

#include "telemetry/store.hpp"

namespace smarttrap::telemetry {

/// HTTP ingest/query front end over a CaptureStore.
///
///   POST /api/v1/captures   -> 201 stored | 200 duplicate | 400 rejected
///   GET  /api/v1/captures   ?since&until&bbox=minLon,minLat,maxLon,maxLat&trap_id
///   GET  /api/v1/health
class IngestService {
public:
    IngestService(CaptureStore& store, std::string host, int port);
    ~IngestService();

    IngestService(const IngestService&) = delete;
    IngestService& operator=(const IngestService&) = delete;

    /// Binds and serves on a background thread. Throws IoError when the
    /// address cannot be bound (e.g. port already in use).
    void start();

    /// Stops accepting, drains in-flight handlers, joins the thread.
    void stop();

    bool running() const { return running_; }
    int port() const { return port_; }
    std::string base_url() const;

private:
    CaptureStore& store_;
    std::string host_;
    int port_;
    bool running_ = false;
    std::thread thread_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// "host:port" -> pair; host defaults to 127.0.0.1 when omitted.
std::pair<std::string, int> parse_listen_address(const std::string& addr);

}  // namespace smarttrap::telemetry
