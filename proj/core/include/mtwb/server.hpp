#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "mtwb/api.hpp"

namespace mtwb {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8787;  // 0 picks a free port
  // Built UI bundle served at "/" when set.
  std::optional<std::filesystem::path> static_dir;
};

// HTTP front end over Api. Requests are handled on a thread pool; long
// evaluations return a job handle immediately.
class Server {
 public:
  Server(Api& api, ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving in the background; returns the bound port.
  // Throws kPortInUse.
  int start();
  // Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mtwb
