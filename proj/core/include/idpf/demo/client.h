#ifndef IDPF_DEMO_CLIENT_H_
#define IDPF_DEMO_CLIENT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idpf/demo/wire.h"
#include "idpf/dpf.h"
#include "idpf/errors.h"

namespace idpf::demo {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

// "host:port,host:port,..."
std::vector<Endpoint> ParseEndpoints(const std::string& list);

// A server answered with an ERROR frame.
class ServerError : public Error {
 public:
  ServerError(std::size_t server, ErrorCode code, const std::string& detail)
      : Error("server " + std::to_string(server) + ": " + ErrorCodeName(code) +
              " " + detail),
        server_(server),
        code_(code) {}

  std::size_t server() const { return server_; }
  ErrorCode code() const { return code_; }

 private:
  std::size_t server_;
  ErrorCode code_;
};

struct QueryResult {
  std::uint32_t value = 0;
  std::vector<std::uint32_t> responses;  // per server i
  std::string db_digest;                 // PIR only, hex
};

// Generates keys for f_{alpha,beta}, uploads k_i to endpoint i and sums the
// responses mod p. All 2n connections are opened before any key leaves the
// client. With pir_digest set, issues PIR_REQ (empty digest = no check) and
// requires every replica to echo the same database digest.
QueryResult ClientQuery(const Dpf& dpf, const std::vector<Endpoint>& servers,
                        std::uint64_t alpha, std::uint32_t beta,
                        std::uint64_t seed, std::optional<std::uint64_t> x,
                        std::optional<std::string> pir_digest_hex);

// The exact frames server i receives for one evaluation query.
std::vector<std::uint8_t> ServerTranscript(const FieldCtx& ctx,
                                           const DpfKey& key,
                                           const Message& request);

}  // namespace idpf::demo

#endif  // IDPF_DEMO_CLIENT_H_
