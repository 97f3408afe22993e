#ifndef IDPF_DEMO_SERVER_H_
#define IDPF_DEMO_SERVER_H_

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "idpf/demo/wire.h"
#include "idpf/dpf.h"

namespace idpf::demo {

// Per-connection state. The key slot is written once and read-only after.
struct Session {
  std::optional<DpfKey> key;
};

// One of the 2n evaluation servers. Holds public artifacts plus an optional
// database replica; each connection carries its own uploaded key.
class DemoServer {
 public:
  DemoServer(std::size_t index, Dpf dpf,
             std::optional<std::vector<std::uint32_t>> db = std::nullopt);
  ~DemoServer();

  DemoServer(const DemoServer&) = delete;
  DemoServer& operator=(const DemoServer&) = delete;

  // Protocol state machine, independent of sockets.
  Message Handle(Session& session, const Message& request) const;

  // Binds and listens; port 0 picks an ephemeral port. Returns the port.
  std::uint16_t Listen(const std::string& host, std::uint16_t port);
  // Accept loop; returns after Stop().
  void Serve();
  void Stop();

  std::size_t index() const { return index_; }
  const std::string& db_digest() const { return db_digest_hex_; }

 private:
  void HandleConnection(Socket conn);

  std::size_t index_;
  Dpf dpf_;
  std::optional<std::vector<std::uint32_t>> db_;
  std::string db_digest_hex_;
  std::vector<std::uint8_t> db_digest_raw_;

  Socket listener_;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::vector<std::thread> workers_;
  std::vector<int> open_fds_;
};

}  // namespace idpf::demo

#endif  // IDPF_DEMO_SERVER_H_
