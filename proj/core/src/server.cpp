#include "mtwb/server.hpp"

#include <sys/socket.h>

#include <httplib.h>

#include <condition_variable>
#include <mutex>
#include <thread>

#include "mtwb/error.hpp"
#include "mtwb/paging.hpp"

namespace mtwb {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kNdjson = "application/x-ndjson";

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, e.to_json(), http_status(e.code()));
}

json parse_body(const std::string& body, bool allow_empty) {
  if (body.empty() && allow_empty) return json();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadRequest, "request body is not valid JSON",
                {{"field", "body"}, {"position", e.byte}});
  }
}

std::string param(const httplib::Request& req, const std::string& name) {
  return req.path_params.at(name);
}

long long int_param(const httplib::Request& req, const std::string& name, long long fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string value = req.get_param_value(name);
  try {
    std::size_t used = 0;
    const long long n = std::stoll(value, &used);
    if (used == value.size()) return n;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kBadRequest, "query parameter '" + name + "' must be an integer",
              {{"field", name}, {"expected", "an integer"}});
}

bool flag_param(const std::string& value) {
  return value == "1" || value == "true" || value == "yes";
}

// Uploaded file contents in submission order, from "file" then "files".
std::vector<std::string> uploaded_files(const httplib::Request& req) {
  std::vector<std::string> out;
  for (const char* name : {"file", "files"}) {
    for (const auto& f : req.get_file_values(name)) out.push_back(f.content);
  }
  return out;
}

}  // namespace

struct Server::Impl {
  Api& api;
  ServerOptions options;
  httplib::Server http;
  std::thread thread;
  int port = -1;
  std::mutex mu;
  std::condition_variable cv;
  bool stopped = false;

  Impl(Api& a, ServerOptions o) : api(a), options(std::move(o)) {}

  template <typename Fn>
  httplib::Server::Handler wrap(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const std::exception& e) {
        send_error(res, Error(ErrorCode::kStorageError, e.what()));
      }
    };
  }

  void routes();
};

void Server::Impl::routes() {
  http.Get("/api/health", wrap([this](const auto&, auto& res) { send_json(res, api.health()); }));

  http.Post("/api/runs", wrap([this](const auto& req, auto& res) {
              send_json(res, api.create_run(parse_body(req.body, false)), 201);
            }));
  http.Get("/api/runs", wrap([this](const auto&, auto& res) { send_json(res, api.list_runs()); }));
  http.Get("/api/runs/:id", wrap([this](const auto& req, auto& res) {
             send_json(res, api.get_run(param(req, "id")));
           }));

  http.Post("/api/runs/:id/instances", wrap([this](const auto& req, auto& res) {
              send_json(res, api.add_instances(param(req, "id"), parse_body(req.body, false)));
            }));

  http.Post("/api/runs/:id/ingest", wrap([this](const auto& req, auto& res) {
              json spec;
              std::vector<std::string> files;
              bool dry_run = req.has_param("dry_run") && flag_param(req.get_param_value("dry_run"));
              if (req.is_multipart_form_data()) {
                if (!req.has_file("spec")) {
                  throw Error(ErrorCode::kBadRequest, "multipart upload needs a 'spec' field",
                              {{"field", "spec"}});
                }
                spec = parse_body(req.get_file_value("spec").content, false);
                files = uploaded_files(req);
                if (req.has_file("dry_run")) {
                  dry_run = flag_param(req.get_file_value("dry_run").content);
                }
              } else {
                // {"spec": {...}, "files": ["contents", ...], "dry_run": bool}
                const json body = parse_body(req.body, false);
                if (!body.is_object() || !body.contains("files") || !body["files"].is_array()) {
                  throw Error(ErrorCode::kBadRequest, "field 'files' must be a list of strings",
                              {{"field", "files"}});
                }
                spec = body.value("spec", json());
                for (const auto& f : body["files"]) {
                  if (!f.is_string()) {
                    throw Error(ErrorCode::kBadRequest, "field 'files' must be a list of strings",
                                {{"field", "files"}});
                  }
                  files.push_back(f.get<std::string>());
                }
                if (body.contains("dry_run") && body["dry_run"].is_boolean()) {
                  dry_run = body["dry_run"].get<bool>();
                }
              }
              send_json(res, api.ingest(param(req, "id"), spec, files, dry_run));
            }));

  http.Post("/api/runs/:id/annotations", wrap([this](const auto& req, auto& res) {
              std::string origin = req.has_param("origin") ? req.get_param_value("origin") : "";
              std::string stream;
              if (req.is_multipart_form_data()) {
                for (const auto& f : uploaded_files(req)) stream += f + "\n";
                if (req.has_file("origin")) origin = req.get_file_value("origin").content;
              } else {
                stream = req.body;
              }
              send_json(res, api.upload_annotations(param(req, "id"), stream, origin));
            }));

  http.Post("/api/runs/:id/import", wrap([this](const auto& req, auto& res) {
              send_json(res, api.import_run(param(req, "id"), req.body));
            }));

  http.Post("/api/runs/:id/evaluate", wrap([this](const auto& req, auto& res) {
              send_json(res, api.evaluate(param(req, "id"), parse_body(req.body, true)), 202);
            }));
  http.Get("/api/jobs/:id", wrap([this](const auto& req, auto& res) {
             send_json(res, api.job(param(req, "id")));
           }));

  http.Post("/api/search", wrap([this](const auto& req, auto& res) {
              send_json(res, api.search(parse_body(req.body, false)));
            }));
  http.Get("/api/runs/:id/summary", wrap([this](const auto& req, auto& res) {
             const long long bins = int_param(req, "bins", 20);
             if (bins < 1) {
               throw Error(ErrorCode::kInvalidBinCount, "bins must be at least 1",
                           {{"bin_count", bins}});
             }
             send_json(res, api.summary(param(req, "id"), static_cast<std::size_t>(bins)));
           }));
  http.Post("/api/dashboard/compare", wrap([this](const auto& req, auto& res) {
              send_json(res, api.compare(parse_body(req.body, false)));
            }));
  http.Get("/api/groups", wrap([this](const auto& req, auto& res) {
             const auto run_ids = split_csv(req.get_param_value("run_ids"));
             const auto page = PageRequest::make(int_param(req, "page", 1),
                                                 int_param(req, "page_size", kDefaultPageSize));
             send_json(res, api.groups(run_ids, page));
           }));

  http.Post("/api/feedback/ranking", wrap([this](const auto& req, auto& res) {
              send_json(res, api.submit_ranking(parse_body(req.body, false)));
            }));
  http.Delete("/api/feedback/:session", wrap([this](const auto& req, auto& res) {
                send_json(res, api.revoke_feedback(param(req, "session")));
              }));
  http.Get("/api/feedback/export", wrap([this](const auto&, auto& res) {
             res.set_content(api.export_feedback(), kNdjson);
           }));
  http.Get("/api/runs/:id/export", wrap([this](const auto& req, auto& res) {
             res.set_content(api.export_run(param(req, "id")), kNdjson);
           }));

  if (options.static_dir) http.set_mount_point("/", options.static_dir->string());

  http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const ErrorCode code = res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kBadRequest;
    const Error e(code, res.status == 404 ? "no route for " + req.method + " " + req.path
                                          : httplib::status_message(res.status),
                  {{"path", req.path}, {"method", req.method}});
    res.set_content(e.to_json().dump(), kJson);
    return httplib::Server::HandlerResponse::Handled;
  });
}

Server::Server(Api& api, ServerOptions options)
    : impl_(std::make_unique<Impl>(api, std::move(options))) {
  // Without SO_REUSEPORT so a second server on a busy port fails to bind.
  impl_->http.set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl_->routes();
}

Server::~Server() { stop(); }

int Server::start() {
  auto& http = impl_->http;
  const auto& opt = impl_->options;
  if (opt.port == 0) {
    impl_->port = http.bind_to_any_port(opt.host);
  } else {
    impl_->port = http.bind_to_port(opt.host, opt.port) ? opt.port : -1;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::kPortInUse, "cannot bind " + opt.host + ":" + std::to_string(opt.port),
                {{"host", opt.host}, {"port", opt.port}});
  }
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  http.wait_until_ready();
  return impl_->port;
}

void Server::wait() {
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait(lock, [this] { return impl_->stopped || !impl_->thread.joinable(); });
}

void Server::stop() {
  std::lock_guard lock(impl_->mu);
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->stopped = true;
  impl_->cv.notify_all();
}

int Server::port() const { return impl_->port; }

}  // namespace mtwb
