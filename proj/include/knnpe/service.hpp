#pragma once

// Stateless HTTP facade for the 2-D playground. Each handler takes the
// request body (JSON text) and returns a status and JSON body; the server
// only routes. Request and response schemas are documented in README.md.

#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace knnpe::service {

struct Response {
  int status = 200;
  std::string body;
};

inline constexpr double kDefaultDesk = 400.0;
inline constexpr double kMinRadius = 1.0;
inline constexpr double kMaxRadius = 200.0;

Response handle_health();
Response handle_map(std::string_view body);
Response handle_cv(std::string_view body);
Response handle_condense(std::string_view body);
Response handle_compare_maps(std::string_view body);

/// Registers every endpoint on `server`.
void install_routes(httplib::Server& server);

}  // namespace knnpe::service
