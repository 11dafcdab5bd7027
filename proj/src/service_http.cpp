#include <httplib.h>

#include "liar/service.hpp"

namespace liar::service {

struct HttpServer::Impl {
    SessionService& service;
    httplib::Server server;

    explicit Impl(SessionService& s) : service(s) {}
};

namespace {

void reply(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(SessionService& service, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Headers", "Content-Type"},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    auto* svc = &impl_->service;
    auto forward = [svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->handle(req.method, req.path, req.body));
    };
    srv.Post("/sessions", forward);
    srv.Post(R"(/sessions/([^/]+)/answer)", forward);
    srv.Post(R"(/sessions/([^/]+)/question)", forward);
    srv.Get(R"(/sessions/([^/]+))", forward);
    srv.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    if (!static_dir.empty()) srv.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace liar::service
