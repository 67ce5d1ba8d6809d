#include "randomworld/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <sstream>

namespace randomworld {

SessionServer::SessionServer(const std::vector<Environment>* envs,
                             const std::vector<ToolSpec>* universe, const TypeRegistry* reg,
                             ServerConfig cfg)
    : envs_(envs), universe_(universe), reg_(reg), cfg_(std::move(cfg)) {}

SessionServer::~SessionServer() { stop(); }

const Environment* SessionServer::find_env(const std::string& env_id) const {
    for (const auto& e : *envs_)
        if (e.env_id == env_id) return &e;
    return nullptr;
}

namespace {

std::string format_reward(double r) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", r);
    return buf;
}

}  // namespace

std::vector<std::string> SessionServer::handle_line(ConnState& state, const std::string& line) {
    if (line.rfind("#RESET", 0) == 0) {
        std::string env_id = line.size() > 7 ? line.substr(7) : "";
        while (!env_id.empty() && env_id.front() == ' ') env_id.erase(env_id.begin());
        const Environment* env = find_env(env_id);
        if (!env) return {"#ERROR unknown environment: " + env_id};
        state.session = std::make_unique<Session>(env, universe_, cfg_.session, reg_);
        std::vector<std::string> replies;
        std::istringstream prompt(state.session->prompt());
        std::string prompt_line;
        while (std::getline(prompt, prompt_line)) replies.push_back(prompt_line);
        replies.push_back("#READY");
        return replies;
    }
    if (line == "#REWARD") {
        if (!state.session) return {"#ERROR no active session"};
        if (state.session->status() == SessionStatus::Running)
            return {"#ERROR session still running"};
        return {"#REWARD " + format_reward(state.session->reward())};
    }
    if (!state.session) return {"#ERROR no active session (send #RESET <env-id>)"};
    if (state.session->status() != SessionStatus::Running)
        return {"#ERROR session finished (send #RESET to start a new one)"};
    std::string obs = state.session->step(line);
    std::vector<std::string> replies;
    if (!obs.empty()) replies.push_back(obs);
    if (state.session->status() != SessionStatus::Running)
        replies.push_back("#DONE reward=" + format_reward(state.session->reward()));
    return replies;
}

void SessionServer::run_stream(std::istream& in, std::ostream& out) {
    ConnState state;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        for (const auto& reply : handle_line(state, line)) out << reply << "\n";
        out.flush();
    }
}

int SessionServer::start_tcp() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error("socket() failed");
    int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons((uint16_t)cfg_.port);
    if (::inet_pton(AF_INET, cfg_.host.c_str(), &addr.sin_addr) != 1)
        throw std::runtime_error("bad host address: " + cfg_.host);
    if (::bind(listen_fd_, (sockaddr*)&addr, sizeof(addr)) != 0) {
        ::close(listen_fd_);
        throw std::runtime_error("bind() failed on " + cfg_.host + ":" +
                                 std::to_string(cfg_.port));
    }
    if (::listen(listen_fd_, 16) != 0) {
        ::close(listen_fd_);
        throw std::runtime_error("listen() failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, (sockaddr*)&addr, &len);
    int port = ntohs(addr.sin_port);
    accept_thread_ = std::thread([this] { accept_loop(); });
    return port;
}

void SessionServer::accept_loop() {
    while (!stopping_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (stopping_) break;
            continue;
        }
        {
            std::lock_guard lock(conn_mu_);
            conn_fds_.push_back(fd);
            conn_threads_.emplace_back([this, fd] { serve_fd(fd); });
        }
    }
}

void SessionServer::serve_fd(int fd) {
    ConnState state;
    std::string buffer;
    char chunk[4096];
    while (!stopping_) {
        ssize_t n = ::read(fd, chunk, sizeof(chunk));
        if (n <= 0) break;
        buffer.append(chunk, (size_t)n);
        size_t nl;
        while ((nl = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, nl);
            buffer.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string out;
            for (const auto& reply : handle_line(state, line)) out += reply + "\n";
            size_t off = 0;
            while (off < out.size()) {
                ssize_t w = ::write(fd, out.data() + off, out.size() - off);
                if (w <= 0) {
                    ::close(fd);
                    return;
                }
                off += (size_t)w;
            }
        }
    }
    ::close(fd);
}

void SessionServer::stop() {
    if (stopping_.exchange(true)) return;
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (accept_thread_.joinable()) accept_thread_.join();
    std::lock_guard lock(conn_mu_);
    for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    for (auto& t : conn_threads_)
        if (t.joinable()) t.join();
    conn_threads_.clear();
    conn_fds_.clear();
}

}  // namespace randomworld
