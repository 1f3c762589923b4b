#include "mvl/service.hpp"

#include <thread>

#include "httplib.h"
#include "mvl/errors.hpp"

namespace mvl {

using io::Json;

struct Service::Runner {
  std::thread thread;
};

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void error(httplib::Response& res, int status, const std::string& msg,
           const std::string& path = "") {
  Json body = {{"error", msg}};
  if (!path.empty()) body["path"] = path;
  reply(res, status, body);
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what(), "/");
  }
}

// Runs the handler and maps exceptions onto status codes.
template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const StructuralError& e) {
      error(res, 400, e.what(), e.path());
    } catch (const NotFound& e) {
      error(res, 404, e.what());
    } catch (const TransitionError& e) {
      error(res, 409, e.what());
    } catch (const UnknownCandidate& e) {
      error(res, 422, e.what());
    } catch (const ReferenceError& e) {
      error(res, req.method == "DELETE" ? 409 : 422, e.what());
    } catch (const AxiomError& e) {
      error(res, 422, e.what());
    } catch (const CapExceeded& e) {
      error(res, 422, e.what());
    } catch (const std::exception& e) {
      error(res, 500, e.what());
    }
  };
}

EntityKind kind_of(const httplib::Request& req) {
  auto k = kind_from_collection(req.matches[1].str());
  if (!k) throw NotFound("unknown collection");
  return *k;
}

int query_int(const httplib::Request& req, const std::string& key, int fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  try {
    std::size_t used = 0;
    int out = std::stoi(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  throw StructuralError("expected an integer", "/" + key);
}

Json ids_json(const std::vector<std::string>& ids) { return {{"ids", ids}}; }

}  // namespace

Service::Service(std::shared_ptr<Workspace> workspace)
    : workspace_(std::move(workspace)), server_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() { stop(); }

void Service::routes() {
  auto& s = *server_;
  Workspace& ws = *workspace_;
  const std::string coll = "(algebras|renamings|modules|bridges)";
  const std::string id = "([0-9A-Za-z_-]+)";

  s.Post("/v1/" + coll, guarded([&ws](const httplib::Request& req, httplib::Response& res) {
           auto [eid, created] = ws.put(kind_of(req), parse_body(req));
           reply(res, created ? 201 : 200, {{"id", eid}});
         }));
  s.Get("/v1/" + coll, guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          reply(res, 200, ids_json(ws.list(kind_of(req))));
        }));
  s.Get("/v1/" + coll + "/" + id,
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          reply(res, 200, ws.get(kind_of(req), req.matches[2].str()));
        }));
  s.Delete("/v1/" + coll + "/" + id,
           guarded([&ws](const httplib::Request& req, httplib::Response& res) {
             ws.remove(kind_of(req), req.matches[2].str());
             res.status = 204;
           }));
  s.Get("/v1/algebras/" + id + "/validate",
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          const Json doc = ws.get(EntityKind::kAlgebra, req.matches[1].str());
          auto a = io::algebra_doc_from_json(doc);
          reply(res, 200, io::to_json(validate_conj(a.chain, a.table), a.chain));
        }));
  s.Get("/v1/algebras/" + id + "/intervals",
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          const Json doc = ws.get(EntityKind::kAlgebra, req.matches[1].str());
          reply(res, 200, io::intervals_json(build(io::algebra_from_json(doc))));
        }));

  s.Post("/v1/sessions", guarded([&ws](const httplib::Request& req, httplib::Response& res) {
           const std::string sid = ws.create_session(parse_body(req));
           reply(res, 201, ws.with_session(sid, [&](const Session& ses) {
             return io::session_state_json(ses, sid);
           }));
         }));
  s.Get("/v1/sessions", guarded([&ws](const httplib::Request&, httplib::Response& res) {
          reply(res, 200, ids_json(ws.list_sessions()));
        }));
  s.Get("/v1/sessions/" + id,
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          const std::string sid = req.matches[1].str();
          reply(res, 200, ws.with_session(sid, [&](const Session& ses) {
            return io::session_state_json(ses, sid);
          }));
        }));
  s.Get("/v1/sessions/" + id + "/candidates",
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          const int page = query_int(req, "page", 0);
          const int size = query_int(req, "size", 20);
          reply(res, 200, ws.with_session(req.matches[1].str(), [&](const Session& ses) {
            return io::candidates_page_json(ses, page, size);
          }));
        }));
  s.Post("/v1/sessions/" + id + "/select",
         guarded([&ws](const httplib::Request& req, httplib::Response& res) {
           const std::string sid = req.matches[1].str();
           ws.select(sid, io::selection_from_json(parse_body(req)));
           reply(res, 200, ws.with_session(sid, [&](const Session& ses) {
             return io::session_state_json(ses, sid);
           }));
         }));
  s.Get("/v1/sessions/" + id + "/result",
        guarded([&ws](const httplib::Request& req, httplib::Response& res) {
          reply(res, 200, ws.with_session(req.matches[1].str(), [](const Session& ses) {
            return io::session_result_json(ses);
          }));
        }));
}

int Service::start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) return -1;
  runner_ = std::make_unique<Runner>();
  runner_->thread = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool Service::listen(const std::string& host, int port) { return server_->listen(host, port); }

void Service::stop() {
  if (server_) server_->stop();
  if (runner_ && runner_->thread.joinable()) runner_->thread.join();
  runner_.reset();
}

}  // namespace mvl
