#include "http_server.hpp"

#include <csignal>
#include <iostream>

#include <httplib.h>

namespace vtkb_cli {

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void reply(httplib::Response& res, const Reply& r) {
  res.status = vtkb_http_status(r.status);
  res.set_content(r.body + "\n", "application/json");
}

}  // namespace

int serve(const vtkb_kb* kb, const ServiceConfig& config) {
  httplib::Server server;
  // The library default adds SO_REUSEPORT, which lets a second server share a
  // busy port instead of failing.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  server.set_pre_routing_handler([&](const httplib::Request& req, httplib::Response& res) {
    if (!config.cors_allowed_origin.empty()) {
      res.set_header("Access-Control-Allow-Origin", config.cors_allowed_origin);
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      if (req.method == "OPTIONS") {
        res.status = 204;
        return httplib::Server::HandlerResponse::Handled;
      }
    }
    return httplib::Server::HandlerResponse::Unhandled;
  });

  server.Get("/kb/summary", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, call(vtkb_summary, kb));
  });
  server.Get("/kb/validate", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, call(vtkb_validate, kb));
  });
  server.Get("/techniques", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, call(vtkb_techniques, kb));
  });
  server.Get(R"(/techniques/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, call(vtkb_technique, kb, req.matches[1].str().c_str()));
  });

  using Handler = vtkb_status (*)(const vtkb_kb*, const char*, char**);
  auto post = [&](const char* route, Handler h) {
    server.Post(route, [&, h](const httplib::Request& req, httplib::Response& res) {
      reply(res, call(h, kb, req.body.c_str()));
    });
  };
  post("/query", vtkb_query);
  post("/match", vtkb_match);
  post("/recommend", vtkb_recommend);
  post("/check", vtkb_check);

  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status != 404 || !res.body.empty()) return;
    json body = {{"error",
                  {{"code", "NotFound"}, {"message", "no route for " + req.method + " " + req.path}}}};
    res.set_content(body.dump(2) + "\n", "application/json");
  });

  if (!server.bind_to_port(config.host, config.port)) {
    std::cerr << "vtkb: cannot listen on " << config.host << ":" << config.port << "\n";
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "vtkb: serving " << config.kb_path << " on http://" << config.host << ":"
            << config.port << std::endl;
  bool ok = server.listen_after_bind();
  g_server = nullptr;
  return ok ? 0 : 1;
}

}  // namespace vtkb_cli
