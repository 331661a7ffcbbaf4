#include "ccrsim/harness/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <iostream>
#include <thread>

#include "ccrsim/harness/protocol.hpp"

namespace ccrsim::harness {

int serve_stream(std::istream& in, std::ostream& out, const ScenarioConfig& defaults) {
    Session session(defaults);
    std::string line;
    while (!session.closed() && std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out << session.handle(line) << '\n' << std::flush;
        if (!out) return 1;
    }
    return 0;
}

TcpAddress parse_tcp_address(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw ConfigError("transport", "expected tcp:<host>:<port>");
    TcpAddress addr;
    if (colon > 0) addr.host = text.substr(0, colon);
    try {
        std::size_t used = 0;
        addr.port = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("transport", "bad port in '" + text + "'");
    }
    if (addr.port < 0 || addr.port > 65535) throw ConfigError("transport", "port out of range");
    return addr;
}

namespace {

bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

void serve_connection(int fd, ScenarioConfig defaults) {
    Session session(std::move(defaults));
    std::string buffer;
    char chunk[4096];
    while (!session.closed()) {
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while (!session.closed() && (nl = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, nl);
            buffer.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            if (!send_all(fd, session.handle(line) + "\n")) {
                ::close(fd);
                return;
            }
        }
    }
    ::close(fd);
}

}  // namespace

int serve_tcp(const TcpAddress& addr, const ScenarioConfig& defaults, const std::function<void(int)>& on_listening) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    const std::string port = std::to_string(addr.port);
    if (const int rc = ::getaddrinfo(addr.host.c_str(), port.c_str(), &hints, &res); rc != 0) {
        std::cerr << "serve: cannot resolve " << addr.host << ": " << ::gai_strerror(rc) << '\n';
        return 1;
    }
    int listener = -1;
    for (addrinfo* p = res; p != nullptr; p = p->ai_next) {
        listener = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
        if (listener < 0) continue;
        const int one = 1;
        ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(listener, p->ai_addr, p->ai_addrlen) == 0 && ::listen(listener, 16) == 0) break;
        ::close(listener);
        listener = -1;
    }
    ::freeaddrinfo(res);
    if (listener < 0) {
        std::cerr << "serve: cannot listen on " << addr.host << ':' << addr.port << ": " << std::strerror(errno)
                  << '\n';
        return 1;
    }

    sockaddr_storage bound{};
    socklen_t len = sizeof bound;
    ::getsockname(listener, reinterpret_cast<sockaddr*>(&bound), &len);
    const int bound_port = bound.ss_family == AF_INET6
                               ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
                               : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    if (on_listening) on_listening(bound_port);

    for (;;) {
        const int fd = ::accept(listener, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR || errno == ECONNABORTED) continue;
            std::cerr << "serve: accept failed: " << std::strerror(errno) << '\n';
            ::close(listener);
            return 1;
        }
        std::thread(serve_connection, fd, defaults).detach();
    }
}

}  // namespace ccrsim::harness
