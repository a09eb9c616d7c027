// http_server.hpp -- JSON routes for the assist sessions.
//
//   POST   /api/v1/sessions                {n, s, strategy}  -> 201
//   POST   /api/v1/sessions/{id}/feedback  {positions}       -> 200
//   GET    /api/v1/sessions/{id}                             -> 200
//   DELETE /api/v1/sessions/{id}                             -> 204
//
// Errors carry {error, message} and, for 409, contradicting_round.

#pragma once

#include <string>

#include "permwordle/assist.hpp"
#include "permwordle/json_io.hpp"

namespace httplib {
class Server;
}

namespace permwordle {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
};

Json session_json(const SessionView& v);
Json created_json(const CreatedSession& c, int n, int suit_count, StrategyKind strategy);
Json outcome_json(const FeedbackOutcome& o);
Json error_json(const AssistError& e);

void install_routes(httplib::Server& server, SessionManager& manager, const std::string& cors_origin = "*");

/// Blocks until the server stops. Returns false if the socket could not be bound.
bool serve(SessionManager& manager, const ServerOptions& options);

}  // namespace permwordle
