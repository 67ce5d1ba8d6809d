#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace randomworld {

// Raised when the remote service answers with a non-retryable error or all
// retries are exhausted.
struct GatewayError : std::runtime_error {
    GatewayError(const std::string& msg, int status_code = 0, std::string body_text = {})
        : std::runtime_error(msg), status(status_code), body(std::move(body_text)) {}
    int status;
    std::string body;
};

struct GatewayConfig {
    std::string base_url;  // POST {base_url}/chat/completions
    std::string model_id = "gpt-4o";
    std::string api_key_env_var = "RANDOMWORLD_API_KEY";
    double timeout_seconds = 30.0;
    int max_retries = 3;
    double temperature = 0.7;
    int requests_per_minute = 60;
    std::string audit_log_path;  // append-only JSONL; empty disables auditing
};

struct ChatExchange {
    std::string system;
    std::string user;
    std::string reply;
    int64_t latency_ms = 0;
    int attempt = 1;
};

// Chat-completion backend interface. All network traffic in the pipeline
// funnels through implementations of this class.
class Gateway {
public:
    virtual ~Gateway() = default;
    virtual std::string complete(const std::string& system, const std::string& user) = 0;
};

// Deterministic stand-in: replies are a pure function of (prompt class,
// prompt text, seed). Prompts asking for a scored tool name get a well-formed
// JSON proposal; everything else gets a stable acknowledgement string.
class OfflineGateway : public Gateway {
public:
    explicit OfflineGateway(uint64_t seed = 0, std::string audit_log_path = {});
    std::string complete(const std::string& system, const std::string& user) override;

private:
    uint64_t seed_;
    std::string audit_path_;
    std::mutex audit_mu_;
};

// Process-wide request pacing: at most `per_minute` acquisitions per sliding
// 60 s window; excess callers sleep.
class RateLimiter {
public:
    explicit RateLimiter(int per_minute) : per_minute_(per_minute) {}
    void acquire();

private:
    int per_minute_;
    std::mutex mu_;
    std::deque<std::chrono::steady_clock::time_point> stamps_;
};

class HttpGateway : public Gateway {
public:
    explicit HttpGateway(GatewayConfig cfg);
    std::string complete(const std::string& system, const std::string& user) override;

private:
    GatewayConfig cfg_;
    RateLimiter limiter_;
    std::mutex audit_mu_;
};

void append_audit_line(const std::string& path, std::mutex& mu, const ChatExchange& ex,
                       int status);

}  // namespace randomworld
