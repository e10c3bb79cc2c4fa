#include "olac/http.hpp"

#include <httplib.h>

#include "olac/error.hpp"

namespace olac::http {

Service::Service() : server_(std::make_unique<httplib::Server>()) {
    // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
}

Service::~Service() { stop(); }

void Service::mount_provider(std::shared_ptr<const oai::Provider> provider, const std::string& path) {
    auto handler = [provider](const httplib::Request& req, httplib::Response& res) {
        oai::RequestArgs args(req.params.begin(), req.params.end());
        res.set_content(provider->handle(args), "text/xml; charset=UTF-8");
    };
    server_->Get(path, handler);
    server_->Post(path, handler);
}

int Service::bind(const std::string& host, int port) {
    host_ = host;
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
    } else {
        port_ = server_->bind_to_port(host, port) ? port : -1;
    }
    if (port_ <= 0) throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
    bound_ = true;
    return port_;
}

void Service::listen() {
    if (port_ <= 0) bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void Service::stop() {
    // httplib closes the listening socket only from a running server.
    if (bound_ && !thread_.joinable()) listen();
    bound_ = false;
    if (thread_.joinable()) {
        server_->stop();
        thread_.join();
    }
}

std::string Service::url(const std::string& path) const {
    return "http://" + host_ + ":" + std::to_string(port_) + path;
}

}  // namespace olac::http
