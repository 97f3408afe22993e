#include "idpf/demo/server.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "idpf/artifacts.h"
#include "idpf/digest.h"
#include "idpf/errors.h"
#include "idpf/key_codec.h"

namespace idpf::demo {

namespace {

bool IsType(const Message& m, MessageType t) {
  return m.type == static_cast<std::uint8_t>(t);
}

}  // namespace

DemoServer::DemoServer(std::size_t index, Dpf dpf,
                       std::optional<std::vector<std::uint32_t>> db)
    : index_(index), dpf_(std::move(dpf)), db_(std::move(db)) {
  if (index_ >= dpf_.num_keys()) {
    throw InputError("server index " + std::to_string(index_) +
                     " outside [0, " + std::to_string(dpf_.num_keys()) + ")");
  }
  if (db_) {
    if (db_->size() != dpf_.N()) {
      throw InputError("database has " + std::to_string(db_->size()) +
                       " entries; domain size is " + std::to_string(dpf_.N()));
    }
    for (auto v : *db_) {
      if (v >= dpf_.params().p) throw InputError("db entry not reduced mod p");
    }
    const Sha256Digest digest = Sha256(DbCanonicalText(*db_));
    db_digest_raw_.assign(digest.begin(), digest.end());
    db_digest_hex_ = ToHex(digest);
  }
}

DemoServer::~DemoServer() {
  Stop();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mu_);
    workers.swap(workers_);
  }
  for (auto& t : workers) {
    if (t.joinable()) t.join();
  }
}

Message DemoServer::Handle(Session& session, const Message& request) const {
  if (IsType(request, MessageType::kKeyUpload)) {
    if (session.key) {
      return MakeError(ErrorCode::kKeyAlreadySet, "key already uploaded");
    }
    DpfKey key;
    try {
      key = DecodeKey(dpf_.params().ctx, dpf_.h(), dpf_.n(), request.payload);
      dpf_.ValidateKey(key);
    } catch (const Error& e) {
      return MakeError(ErrorCode::kKeyParse, e.what());
    }
    if (key.i != index_) {
      return MakeError(ErrorCode::kKeyIndex,
                       "key " + std::to_string(key.i) + " sent to server " +
                           std::to_string(index_));
    }
    session.key = std::move(key);
    return {.type = static_cast<std::uint8_t>(MessageType::kKeyUpload),
            .payload = {}};
  }
  if (IsType(request, MessageType::kEvalReq)) {
    if (!session.key) return MakeError(ErrorCode::kNoKey, "no key uploaded");
    if (request.payload.size() != 4) {
      return MakeError(ErrorCode::kMalformed, "EVAL_REQ needs a 4-byte x");
    }
    const std::uint64_t x = GetU32(request.payload);
    if (x < 1 || x > dpf_.N()) {
      return MakeError(ErrorCode::kBadX, "x outside [1, N]");
    }
    return MakeEvalResponse(dpf_.Eval(*session.key, x));
  }
  if (IsType(request, MessageType::kPirReq)) {
    if (!session.key) return MakeError(ErrorCode::kNoKey, "no key uploaded");
    if (!db_) return MakeError(ErrorCode::kNoDb, "server has no database");
    if (!request.payload.empty()) {
      if (request.payload.size() != db_digest_raw_.size() ||
          !std::equal(request.payload.begin(), request.payload.end(),
                      db_digest_raw_.begin())) {
        return MakeError(ErrorCode::kDbDigest,
                         "database digest mismatch; replica is " +
                             db_digest_hex_);
      }
    }
    const auto values = dpf_.FullEval(*session.key);
    std::uint64_t acc = 0;
    for (std::size_t x = 0; x < values.size(); ++x) {
      acc = (acc + std::uint64_t{values[x]} * (*db_)[x]) % dpf_.params().p;
    }
    return MakePirResponse(static_cast<std::uint32_t>(acc), db_digest_raw_);
  }
  if (request.type >= 1 && request.type <= 6) {
    return MakeError(ErrorCode::kUnexpected,
                     "message type " + std::to_string(request.type) +
                         " is not a request");
  }
  return MakeError(ErrorCode::kUnknownType,
                   "unknown message type " + std::to_string(request.type));
}

std::uint16_t DemoServer::Listen(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &result);
      rc != 0) {
    throw InputError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  Socket sock(::socket(result->ai_family, result->ai_socktype,
                       result->ai_protocol));
  const int one = 1;
  ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  const int rc = ::bind(sock.fd(), result->ai_addr, result->ai_addrlen);
  ::freeaddrinfo(result);
  if (rc != 0 || ::listen(sock.fd(), 64) != 0) {
    throw InputError("cannot listen on " + host + ":" + service + ": " +
                     std::strerror(errno));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(sock.fd(), reinterpret_cast<sockaddr*>(&bound), &len);
  listener_ = std::move(sock);
  return ntohs(bound.sin_port);
}

void DemoServer::Serve() {
  while (!stopping_.load()) {
    const int fd = ::accept(listener_.fd(), nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (stopping_.load()) {
      ::close(fd);
      break;
    }
    open_fds_.push_back(fd);
    workers_.emplace_back(
        [this, fd] { HandleConnection(Socket(fd)); });
  }
}

void DemoServer::HandleConnection(Socket conn) {
  Session session;
  try {
    while (auto request = RecvMessage(conn.fd())) {
      SendMessage(conn.fd(), Handle(session, *request));
    }
  } catch (const ParseError& e) {
    // Framing is lost; report and drop the connection.
    try {
      SendMessage(conn.fd(), MakeError(ErrorCode::kMalformed, e.what()));
    } catch (const Error&) {
    }
  } catch (const Error&) {
  }
  std::lock_guard<std::mutex> lock(mu_);
  std::erase(open_fds_, conn.fd());
}

void DemoServer::Stop() {
  if (stopping_.exchange(true)) return;
  if (listener_.valid()) ::shutdown(listener_.fd(), SHUT_RDWR);
  std::lock_guard<std::mutex> lock(mu_);
  for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
}

}  // namespace idpf::demo
