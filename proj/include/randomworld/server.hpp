#pragma once

#include <atomic>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "randomworld/session.hpp"

namespace randomworld {

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 0;  // 0: pick a free port
    SessionConfig session;
};

// Newline-delimited text service. Per connection:
//   #RESET <env-id>   -> prompt lines, then "#READY" (or "#ERROR ...")
//   #REWARD           -> "#REWARD <r>" once terminal, "#ERROR ..." otherwise
//   anything else     -> treated as an agent message; replies with the
//                        observation line; terminal transitions emit
//                        "#DONE reward=<r>"
class SessionServer {
public:
    SessionServer(const std::vector<Environment>* envs, const std::vector<ToolSpec>* universe,
                  const TypeRegistry* reg, ServerConfig cfg);
    ~SessionServer();

    // Blocking loop over a stream pair (stdio mode).
    void run_stream(std::istream& in, std::ostream& out);

    // Binds and serves on a background thread; returns the bound port.
    int start_tcp();
    // Stops accepting, drains per-connection threads.
    void stop();

private:
    struct ConnState {
        std::unique_ptr<Session> session;
    };

    std::vector<std::string> handle_line(ConnState& state, const std::string& line);
    const Environment* find_env(const std::string& env_id) const;
    void accept_loop();
    void serve_fd(int fd);

    const std::vector<Environment>* envs_;
    const std::vector<ToolSpec>* universe_;
    const TypeRegistry* reg_;
    ServerConfig cfg_;
    int listen_fd_ = -1;
    std::atomic<bool> stopping_{false};
    std::thread accept_thread_;
    std::vector<std::thread> conn_threads_;
    std::vector<int> conn_fds_;
    std::mutex conn_mu_;
};

}  // namespace randomworld
