#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "ccrsim/config.hpp"

namespace ccrsim::harness {

/// Runs one protocol session over a pair of streams until `close` or EOF.
/// Blank lines are ignored. Returns 0, or 1 if the output stream failed.
int serve_stream(std::istream& in, std::ostream& out, const ScenarioConfig& defaults = {});

struct TcpAddress {
    std::string host = "127.0.0.1";
    int port = 0;
};

/// "host:port" (host may be empty for 127.0.0.1).
TcpAddress parse_tcp_address(const std::string& text);

/// Listens on `addr` and serves each connection on its own thread with its
/// own environment. `on_listening` receives the bound port. Blocks until the
/// listener fails; returns nonzero on transport errors.
int serve_tcp(const TcpAddress& addr, const ScenarioConfig& defaults = {},
              const std::function<void(int port)>& on_listening = {});

}  // namespace ccrsim::harness
