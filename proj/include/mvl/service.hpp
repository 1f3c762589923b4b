#pragma once

#include <memory>
#include <string>

#include "mvl/workspace.hpp"

namespace httplib {
class Server;
}

namespace mvl {

/// HTTP facade over a Workspace, routes under /v1:
///
///   POST   /v1/{algebras|renamings|modules|bridges}        201 {"id"} (200 if known)
///   GET    /v1/{collection}                                 {"ids": [...]}
///   GET    /v1/{collection}/{id}                            stored document
///   DELETE /v1/{collection}/{id}                            204, 409 while referenced
///   GET    /v1/algebras/{id}/validate                       axiom report
///   GET    /v1/algebras/{id}/intervals                      carrier, Hasse edges, signs
///   POST   /v1/sessions                                     201 session state
///   GET    /v1/sessions                                     {"ids": [...]}
///   GET    /v1/sessions/{id}                                session state
///   GET    /v1/sessions/{id}/candidates?page=P&size=S       candidate page
///   POST   /v1/sessions/{id}/select                         {"candidate": id | null}
///   GET    /v1/sessions/{id}/result                         {"shape", "result"}
///
/// Errors are {"error": message, "path"?: JSON pointer}: 400 malformed
/// documents, 404 unknown ids, 409 invalid session transitions or integrity
/// violations on removal, 422 documents failing algebraic checks, dangling
/// references, and candidate ids not on offer.
class Service {
 public:
  explicit Service(std::shared_ptr<Workspace> workspace);
  ~Service();

  /// Binds to the port (0 picks a free one) and returns the bound port, or
  /// -1 on failure. Requests are served on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();

  Workspace& workspace() { return *workspace_; }

 private:
  void routes();

  std::shared_ptr<Workspace> workspace_;
  std::unique_ptr<httplib::Server> server_;
  struct Runner;
  std::unique_ptr<Runner> runner_;
};

}  // namespace mvl
