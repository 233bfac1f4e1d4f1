#pragma once

#include <nclab_service/session.hpp>

#include <memory>
#include <string>

namespace nclab::service {

struct ServerOptions {
    std::string address = "127.0.0.1";
    /// 0 binds an ephemeral port; start() reports the one chosen.
    unsigned short port = 0;
    /// I/O threads. Messages of one connection never run concurrently.
    unsigned threads = 1;
};

/// WebSocket endpoint for live sessions (JSON text frames on any path) plus `GET /healthz`.
class PlayServer {
public:
    PlayServer(std::shared_ptr<SessionManager> sessions, ServerOptions options = {});
    ~PlayServer();
    PlayServer(const PlayServer &) = delete;
    PlayServer & operator=(const PlayServer &) = delete;

    /// Binds, listens and starts the I/O threads. Returns the bound port.
    unsigned short start();
    /// Closes the listener and every connection, then joins the I/O threads.
    void stop();
    /// Blocks until stop() is called from elsewhere.
    void wait();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace nclab::service
