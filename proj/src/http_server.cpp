#include "permwordle/http_server.hpp"

#include "httplib.h"

namespace permwordle {

namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const AssistError& e) { send(res, e.status(), error_json(e)); }

Json parse_body(const httplib::Request& req) {
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw AssistError(400, "malformed_json", "request body is not valid JSON");
  if (!body.is_object()) throw AssistError(400, "malformed_json", "request body must be a JSON object");
  return body;
}

int int_field(const Json& body, const char* name, std::optional<int> fallback) {
  auto it = body.find(name);
  if (it == body.end()) {
    if (fallback) return *fallback;
    throw AssistError(422, "invalid_parameters", std::string("missing field '") + name + "'");
  }
  if (!it->is_number_integer()) {
    throw AssistError(422, "invalid_parameters", std::string("field '") + name + "' must be an integer");
  }
  const auto v = it->get<long long>();
  if (v < -1'000'000 || v > 1'000'000) {
    throw AssistError(422, "invalid_parameters", std::string("field '") + name + "' is out of range");
  }
  return static_cast<int>(v);
}

template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const AssistError& e) {
    send_error(res, e);
  } catch (const std::exception& e) {
    send(res, 500, {{"error", "internal"}, {"message", e.what()}});
  }
}

}  // namespace

Json session_json(const SessionView& v) {
  Json steps = Json::array();
  for (const auto& st : v.steps) steps.push_back({{"guess", arrangement_json(st.guess)}, {"feedback", to_json(st.feedback)}});
  Json j = {{"id", v.id},
            {"n", v.n},
            {"s", v.suit_count},
            {"strategy", strategy_kind_name(v.strategy)},
            {"solved", v.solved},
            {"round", v.round},
            {"candidate_count", v.candidate_count ? Json(*v.candidate_count) : Json(nullptr)},
            {"steps", std::move(steps)}};
  if (v.pending_guess) j["guess"] = arrangement_json(*v.pending_guess);
  return j;
}

Json created_json(const CreatedSession& c, int n, int suit_count, StrategyKind strategy) {
  return {{"id", c.id},
          {"n", n},
          {"s", suit_count},
          {"strategy", strategy_kind_name(strategy)},
          {"guess", arrangement_json(c.guess)},
          {"round", 1},
          {"candidate_count", c.candidate_count ? Json(*c.candidate_count) : Json(nullptr)}};
}

Json outcome_json(const FeedbackOutcome& o) {
  Json j = {{"solved", o.solved}};
  if (o.guess) j["guess"] = arrangement_json(*o.guess);
  j["round"] = o.round;
  j["candidate_count"] = o.candidate_count ? Json(*o.candidate_count) : Json(nullptr);
  return j;
}

Json error_json(const AssistError& e) {
  Json j = {{"error", e.code()}, {"message", e.what()}};
  if (e.contradicting_round()) j["contradicting_round"] = *e.contradicting_round();
  return j;
}

void install_routes(httplib::Server& server, SessionManager& manager, const std::string& cors_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/api/v1/sessions", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = parse_body(req);
      const int n = int_field(body, "n", std::nullopt);
      const int s = int_field(body, "s", 1);
      StrategyKind strategy = StrategyKind::cycle;
      if (auto it = body.find("strategy"); it != body.end()) {
        if (!it->is_string()) throw AssistError(422, "invalid_parameters", "field 'strategy' must be a string");
        try {
          strategy = parse_strategy_kind(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw AssistError(422, "invalid_parameters", e.what());
        }
      }
      const CreatedSession c = manager.create(n, s, strategy);
      res.set_header("Location", "/api/v1/sessions/" + c.id);
      send(res, 201, created_json(c, n, s, strategy));
    });
  });

  server.Post(R"(/api/v1/sessions/([0-9a-f]+)/feedback)",
              [&manager](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const std::string id = req.matches[1];
                  const Json body = parse_body(req);
                  auto it = body.find("positions");
                  if (it == body.end() || !it->is_array()) {
                    throw AssistError(422, "invalid_positions", "field 'positions' must be an array");
                  }
                  std::vector<int> positions;
                  for (const auto& p : *it) {
                    if (!p.is_number_integer()) throw AssistError(422, "invalid_positions", "positions must be integers");
                    const auto v = p.get<long long>();
                    if (v < 1 || v > 64) throw AssistError(422, "invalid_positions", "position out of range");
                    positions.push_back(static_cast<int>(v));
                  }
                  send(res, 200, outcome_json(manager.submit_feedback(id, positions)));
                });
              });

  server.Get(R"(/api/v1/sessions/([0-9a-f]+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, session_json(manager.view(req.matches[1]))); });
  });

  server.Delete(R"(/api/v1/sessions/([0-9a-f]+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      if (!manager.remove(id)) throw AssistError(404, "not_found", "no session '" + id + "'");
      res.status = 204;
    });
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(Json{{"error", "not_found"}, {"message", "no such route"}}.dump(), "application/json");
    }
  });
}

bool serve(SessionManager& manager, const ServerOptions& options) {
  httplib::Server server;
  install_routes(server, manager, options.cors_origin);
  return server.listen(options.host, options.port);
}

}  // namespace permwordle
