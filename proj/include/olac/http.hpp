#pragma once

#include <memory>
#include <string>
#include <thread>

#include "olac/oai.hpp"

namespace httplib {
class Server;
}

namespace olac::http {

/// An HTTP server running on its own thread.
class Service {
public:
    Service();
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    httplib::Server& server() { return *server_; }

    /// Serves the provider at `path` for GET and POST.
    void mount_provider(std::shared_ptr<const oai::Provider> provider, const std::string& path = "/oai");

    /// Binds without serving yet; port 0 picks an ephemeral port. Returns the
    /// bound port. Throws ConfigError if the address cannot be bound.
    int bind(const std::string& host = "127.0.0.1", int port = 0);
    /// Starts serving on a background thread; binds first if needed.
    void listen();
    int start(const std::string& host = "127.0.0.1", int port = 0) {
        int p = bind(host, port);
        listen();
        return p;
    }
    void stop();
    int port() const { return port_; }
    std::string url(const std::string& path = "") const;

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::string host_;
    int port_ = 0;
    bool bound_ = false;
};

}  // namespace olac::http
