#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "atl/engine.hpp"
#include "atl/errors.hpp"
#include "atl/model_io.hpp"
#include "atl/parser.hpp"
#include "atl/version.hpp"

namespace atl {

struct service_options {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t max_body_bytes = 64ull << 20;  // requests beyond this get 413
};

/// Stateless check endpoint. Every request parses, validates and evaluates
/// its own inline model, so concurrent requests share nothing mutable.
class check_service {
public:
  explicit check_service(service_options options = {})
      : options_(std::move(options)), started_(std::chrono::steady_clock::now()) {
    server_.set_payload_max_length(options_.max_body_bytes);
    server_.Post("/check", [this](const httplib::Request& req, httplib::Response& res) {
      handle_check(req, res);
    });
    server_.Get("/health", [this](const httplib::Request& req, httplib::Response& res) {
      handle_health(req, res);
    });
  }

  const service_options& options() const { return options_; }

  /// Underlying server, exposed so callers can bind to an ephemeral port.
  httplib::Server& server() { return server_; }

  /// Blocks serving requests; false when the port cannot be bound.
  bool run() { return server_.listen(options_.host, options_.port); }

  void stop() { server_.stop(); }

private:
  static void respond_error(httplib::Response& res, int status, const std::string& kind,
                            const std::string& message, const std::string& location = {}) {
    nlohmann::json error = {{"kind", kind}, {"message", message}};
    if (!location.empty())
      error["location"] = location;
    nlohmann::json body;
    body["error"] = std::move(error);
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  void handle_check(const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      respond_error(res, 400, "ParseError", std::string("malformed JSON body: ") + e.what(),
                    "byte " + std::to_string(e.byte));
      return;
    }
    if (!body.is_object()) {
      respond_error(res, 400, "SchemaError", "request body must be an object", "/");
      return;
    }
    if (!body.contains("model")) {
      respond_error(res, 400, "SchemaError", "missing required key", "/model");
      return;
    }
    if (!body.contains("formula") || !body["formula"].is_string()) {
      respond_error(res, 400, "SchemaError", "missing or non-string formula", "/formula");
      return;
    }
    pre_backend backend = pre_backend::relational;
    if (body.contains("backend")) {
      const auto& b = body["backend"];
      if (b.is_string() && b.get<std::string>() == "direct")
        backend = pre_backend::direct;
      else if (!(b.is_string() && b.get<std::string>() == "relational")) {
        respond_error(res, 400, "SchemaError", "backend must be \"direct\" or \"relational\"",
                      "/backend");
        return;
      }
    }
    const std::string formula_text = body["formula"].get<std::string>();
    try {
      game_structure s = build_game_structure(parse_model_document(body["model"]));
      formula f = parse_formula(formula_text);
      check_result r = check(s, f, {backend});
      res.set_content(dump_result(r, s, formula_text, backend), "application/json");
    } catch (const schema_error& e) {
      respond_error(res, 400, "SchemaError", e.what(), e.path());
    } catch (const validation_error& e) {
      std::string message;
      for (const auto& d : e.diagnostics()) {
        if (!message.empty())
          message += "; ";
        message += std::string(to_string(d.kind)) + ": " + d.message;
      }
      respond_error(res, 400, "ValidationError", message);
    } catch (const parse_error& e) {
      // the model JSON is already parsed, so this is the formula's
      respond_error(res, 400, "SyntaxError", e.what(), "offset " + std::to_string(e.offset()));
    } catch (const unknown_proposition_error& e) {
      respond_error(res, 400, "UnknownProposition", e.what());
    } catch (const unknown_player_error& e) {
      respond_error(res, 400, "UnknownPlayer", e.what());
    } catch (const atl_error& e) {
      respond_error(res, 400, "Error", e.what());
    }
  }

  void handle_health(const httplib::Request&, httplib::Response& res) {
    double uptime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    nlohmann::json body = {
        {"status", "ok"}, {"version", version}, {"uptime_seconds", uptime}};
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  service_options options_;
  httplib::Server server_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace atl
