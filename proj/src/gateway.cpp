#include "randomworld/gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace randomworld {

namespace {

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

}  // namespace

void append_audit_line(const std::string& path, std::mutex& mu, const ChatExchange& ex,
                       int status) {
    if (path.empty()) return;
    std::lock_guard lock(mu);
    std::ofstream out(path, std::ios::app);
    nlohmann::json rec{{"system", ex.system}, {"user", ex.user},       {"reply", ex.reply},
                       {"latency_ms", ex.latency_ms}, {"attempt", ex.attempt}, {"status", status}};
    out << rec.dump() << "\n";
}

// ------------------------------------------------------------- OfflineGateway

OfflineGateway::OfflineGateway(uint64_t seed, std::string audit_log_path)
    : seed_(seed), audit_path_(std::move(audit_log_path)) {}

std::string OfflineGateway::complete(const std::string& system, const std::string& user) {
    uint64_t h = fnv1a64(system) ^ (fnv1a64(user) * 0x9e3779b97f4a7c15ull) ^ seed_;
    std::string reply;
    if (system.find("score") != std::string::npos || user.find("score") != std::string::npos) {
        nlohmann::json j{{"name", "tool-" + hex16(h).substr(0, 8)},
                         {"description", "returns a deterministic offline result"},
                         {"score", 5}};
        reply = j.dump();
    } else {
        reply = "offline-reply-" + hex16(h);
    }
    append_audit_line(audit_path_, audit_mu_, {system, user, reply, 0, 1}, 200);
    return reply;
}

// ----------------------------------------------------------------- RateLimiter

void RateLimiter::acquire() {
    using namespace std::chrono;
    if (per_minute_ <= 0) return;
    while (true) {
        steady_clock::time_point wake;
        {
            std::lock_guard lock(mu_);
            auto now = steady_clock::now();
            while (!stamps_.empty() && now - stamps_.front() > minutes(1)) stamps_.pop_front();
            if ((int)stamps_.size() < per_minute_) {
                stamps_.push_back(now);
                return;
            }
            wake = stamps_.front() + minutes(1);
        }
        std::this_thread::sleep_until(wake);
    }
}

// ----------------------------------------------------------------- HttpGateway

HttpGateway::HttpGateway(GatewayConfig cfg)
    : cfg_(std::move(cfg)), limiter_(cfg_.requests_per_minute) {
    if (cfg_.max_retries < 0) throw std::invalid_argument("GatewayConfig: max_retries < 0");
    if (cfg_.timeout_seconds <= 0) throw std::invalid_argument("GatewayConfig: timeout <= 0");
}

std::string HttpGateway::complete(const std::string& system, const std::string& user) {
    // Split base_url into origin and path prefix.
    std::string origin = cfg_.base_url, prefix;
    size_t scheme = origin.find("://");
    size_t slash = origin.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (slash != std::string::npos) {
        prefix = origin.substr(slash);
        origin = origin.substr(0, slash);
    }
    if (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    nlohmann::json body{{"model", cfg_.model_id},
                        {"temperature", cfg_.temperature},
                        {"messages",
                         {{{"role", "system"}, {"content", system}},
                          {{"role", "user"}, {"content", user}}}}};
    const std::string payload = body.dump();

    httplib::Client client(origin);
    client.set_connection_timeout((time_t)cfg_.timeout_seconds, 0);
    client.set_read_timeout((time_t)cfg_.timeout_seconds, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(cfg_.api_key_env_var.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    std::string last_error = "no attempt made";
    for (int attempt = 1; attempt <= cfg_.max_retries + 1; ++attempt) {
        limiter_.acquire();
        auto start = std::chrono::steady_clock::now();
        auto res = client.Post(prefix + "/chat/completions", headers, payload,
                               "application/json");
        auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            append_audit_line(cfg_.audit_log_path, audit_mu_,
                              {system, user, "", latency, attempt}, 0);
        } else if (res->status == 429) {
            last_error = "rate limited (429)";
            append_audit_line(cfg_.audit_log_path, audit_mu_,
                              {system, user, "", latency, attempt}, res->status);
        } else if (res->status / 100 != 2) {
            append_audit_line(cfg_.audit_log_path, audit_mu_,
                              {system, user, "", latency, attempt}, res->status);
            throw GatewayError("gateway returned status " + std::to_string(res->status),
                               res->status, res->body);
        } else {
            std::string reply;
            try {
                nlohmann::json j = nlohmann::json::parse(res->body);
                reply = j.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const std::exception& e) {
                append_audit_line(cfg_.audit_log_path, audit_mu_,
                                  {system, user, res->body, latency, attempt}, res->status);
                throw GatewayError(std::string("malformed gateway reply: ") + e.what(),
                                   res->status, res->body);
            }
            if (reply.empty())
                throw GatewayError("gateway returned an empty reply", res->status, res->body);
            append_audit_line(cfg_.audit_log_path, audit_mu_,
                              {system, user, reply, latency, attempt}, res->status);
            return reply;
        }
        if (attempt <= cfg_.max_retries)
            std::this_thread::sleep_for(std::chrono::milliseconds(50 << (attempt - 1)));
    }
    throw GatewayError("gateway unavailable after " + std::to_string(cfg_.max_retries + 1) +
                       " attempts: " + last_error);
}

}  // namespace randomworld
