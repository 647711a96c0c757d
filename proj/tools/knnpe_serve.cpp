#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "knnpe/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for the 2-D playground", "knnpe-serve"};
  std::string host = "127.0.0.1";
  int port = 8080;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to listen on");
  CLI11_PARSE(app, argc, argv);

  httplib::Server server;
  knnpe::service::install_routes(server);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}
