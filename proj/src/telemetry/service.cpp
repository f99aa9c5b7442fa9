#include "telemetry/service.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace smarttrap::telemetry {

using nlohmann::json;

struct IngestService::Impl {
    httplib::Server server;
};

namespace {

json error_body(const std::string& kind, const std::string& detail) {
    return json{{"error", {{"kind", kind}, {"detail", detail}}}};
}

// "minLon,minLat,maxLon,maxLat"
std::optional<GeoBounds> parse_bbox_param(const std::string& raw, std::string& err) {
    GeoBounds b;
    double* fields[4] = {&b.min_lon, &b.min_lat, &b.max_lon, &b.max_lat};
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = raw.find(',', pos);
        std::string tok = raw.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        try {
            size_t used = 0;
            *fields[i] = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            err = "bbox expects minLon,minLat,maxLon,maxLat";
            return std::nullopt;
        }
        if (i < 3) {
            if (comma == std::string::npos) {
                err = "bbox expects 4 comma-separated numbers";
                return std::nullopt;
            }
            pos = comma + 1;
        } else if (comma != std::string::npos) {
            err = "bbox expects exactly 4 numbers";
            return std::nullopt;
        }
    }
    return b;
}

}  // namespace

IngestService::IngestService(CaptureStore& store, std::string host, int port)
    : store_(store), host_(std::move(host)), port_(port), impl_(std::make_unique<Impl>()) {
    auto& svr = impl_->server;

    svr.Post("/api/v1/captures", [this](const httplib::Request& req, httplib::Response& res) {
        DecodeResult dec = decode_capture_message(req.body);
        if (!dec.ok()) {
            res.status = 400;
            res.set_content(error_body(decode_error_name(dec.error), dec.detail).dump(),
                            "application/json");
            return;
        }
        auto outcome = store_.ingest(*dec.message);
        if (outcome == CaptureStore::IngestOutcome::Stored) {
            res.status = 201;
            res.set_content(json{{"status", "stored"}}.dump(), "application/json");
        } else {
            res.status = 200;
            res.set_content(json{{"status", "duplicate"}}.dump(), "application/json");
        }
    });

    svr.Get("/api/v1/captures", [this](const httplib::Request& req, httplib::Response& res) {
        QueryFilter filter;
        std::string err;
        if (req.has_param("since")) {
            auto t = parse_utc(req.get_param_value("since"));
            if (!t) err = "since must be ISO-8601 UTC";
            filter.since = t;
        }
        if (err.empty() && req.has_param("until")) {
            auto t = parse_utc(req.get_param_value("until"));
            if (!t) err = "until must be ISO-8601 UTC";
            filter.until = t;
        }
        if (err.empty() && req.has_param("bbox")) {
            filter.bbox = parse_bbox_param(req.get_param_value("bbox"), err);
        }
        if (err.empty() && req.has_param("trap_id")) {
            filter.trap_id = req.get_param_value("trap_id");
        }
        if (err.empty()) {
            try {
                filter.validate();
            } catch (const ValidationError& e) {
                err = e.what();
            }
        }
        if (!err.empty()) {
            res.status = 400;
            res.set_content(error_body("validation", err).dump(), "application/json");
            return;
        }
        json out = json::array();
        for (const auto& msg : store_.query(filter)) {
            out.push_back(json::parse(encode_capture_message(msg)));
        }
        res.set_content(out.dump(), "application/json");
    });

    svr.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(json{{"status", "ok"}}.dump(), "application/json");
    });
}

IngestService::~IngestService() {
    if (running_) stop();
}

void IngestService::start() {
    if (running_) throw StateError("service already running");
    auto& svr = impl_->server;
    if (port_ == 0) {
        int bound = svr.bind_to_any_port(host_);
        if (bound < 0) throw IoError("cannot bind " + host_ + " to an ephemeral port");
        port_ = bound;
    } else if (!svr.bind_to_port(host_, port_)) {
        throw IoError("cannot bind " + host_ + ":" + std::to_string(port_));
    }
    thread_ = std::thread([&svr] { svr.listen_after_bind(); });
    svr.wait_until_ready();
    running_ = true;
}

void IngestService::stop() {
    if (!running_) return;
    impl_->server.stop();
    thread_.join();
    running_ = false;
}

std::string IngestService::base_url() const {
    return "http://" + host_ + ":" + std::to_string(port_);
}

std::pair<std::string, int> parse_listen_address(const std::string& addr) {
    size_t colon = addr.rfind(':');
    std::string host = colon == std::string::npos ? "" : addr.substr(0, colon);
    std::string port_str = colon == std::string::npos ? addr : addr.substr(colon + 1);
    if (host.empty()) host = "127.0.0.1";
    try {
        size_t used = 0;
        int port = std::stoi(port_str, &used);
        if (used != port_str.size() || port < 0 || port > 65535) {
            throw std::invalid_argument(port_str);
        }
        return {host, port};
    } catch (const std::exception&) {
        throw ValidationError("listen address must be host:port or port (got '" + addr + "')");
    }
}

}  // namespace smarttrap::telemetry
