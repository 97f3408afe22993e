#include "idpf/demo/wire.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "idpf/errors.h"

namespace idpf::demo {

std::string ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "MALFORMED";
    case ErrorCode::kUnknownType: return "UNKNOWN_TYPE";
    case ErrorCode::kNoKey: return "NO_KEY";
    case ErrorCode::kKeyIndex: return "KEY_INDEX";
    case ErrorCode::kKeyParse: return "KEY_PARSE";
    case ErrorCode::kBadX: return "BAD_X";
    case ErrorCode::kNoDb: return "NO_DB";
    case ErrorCode::kDbDigest: return "DB_DIGEST";
    case ErrorCode::kKeyAlreadySet: return "KEY_ALREADY_SET";
    case ErrorCode::kUnexpected: return "UNEXPECTED";
  }
  return "UNKNOWN(" + std::to_string(static_cast<int>(code)) + ")";
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t GetU32(std::span<const std::uint8_t> in) {
  if (in.size() < 4) throw ParseError("expected 4-byte integer", 0);
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) |
         (std::uint32_t{in[2]} << 8) | std::uint32_t{in[3]};
}

std::vector<std::uint8_t> EncodeFrame(const Message& message) {
  if (message.payload.size() > kMaxPayloadBytes) {
    throw InputError("payload too large");
  }
  std::vector<std::uint8_t> out = {'I', 'D', 'P', 'F', kWireVersion,
                                   message.type};
  PutU32(out, static_cast<std::uint32_t>(message.payload.size()));
  out.insert(out.end(), message.payload.begin(), message.payload.end());
  return out;
}

FrameHeader DecodeFrameHeader(std::span<const std::uint8_t> header) {
  if (header.size() < kFrameHeaderBytes) {
    throw ParseError("truncated frame header", header.size());
  }
  if (header[0] != 'I' || header[1] != 'D' || header[2] != 'P' ||
      header[3] != 'F') {
    throw ParseError("bad frame magic", 0);
  }
  if (header[4] != kWireVersion) throw ParseError("bad frame version", 4);
  const std::uint32_t length = GetU32(header.subspan(6, 4));
  if (length > kMaxPayloadBytes) throw ParseError("payload too large", 6);
  return {.type = header[5], .length = length};
}

Message DecodeFrame(std::span<const std::uint8_t> bytes) {
  const FrameHeader header = DecodeFrameHeader(bytes);
  if (bytes.size() != kFrameHeaderBytes + header.length) {
    throw ParseError("frame length does not match payload",
                     kFrameHeaderBytes);
  }
  return {.type = header.type,
          .payload = {bytes.begin() + kFrameHeaderBytes, bytes.end()}};
}

Message MakeError(ErrorCode code, const std::string& detail) {
  Message m{.type = static_cast<std::uint8_t>(MessageType::kError),
            .payload = {static_cast<std::uint8_t>(code)}};
  m.payload.insert(m.payload.end(), detail.begin(), detail.end());
  return m;
}

Message MakeEvalRequest(std::uint64_t x) {
  if (x > UINT32_MAX) throw InputError("x does not fit the wire format");
  Message m{.type = static_cast<std::uint8_t>(MessageType::kEvalReq),
            .payload = {}};
  PutU32(m.payload, static_cast<std::uint32_t>(x));
  return m;
}

Message MakeEvalResponse(std::uint32_t y) {
  Message m{.type = static_cast<std::uint8_t>(MessageType::kEvalResp),
            .payload = {}};
  PutU32(m.payload, y);
  return m;
}

Message MakePirRequest(std::span<const std::uint8_t> expected_digest) {
  return {.type = static_cast<std::uint8_t>(MessageType::kPirReq),
          .payload = {expected_digest.begin(), expected_digest.end()}};
}

Message MakePirResponse(std::uint32_t y, std::span<const std::uint8_t> digest) {
  Message m{.type = static_cast<std::uint8_t>(MessageType::kPirResp),
            .payload = {}};
  PutU32(m.payload, y);
  m.payload.insert(m.payload.end(), digest.begin(), digest.end());
  return m;
}

namespace {

void SendAll(int fd, const std::uint8_t* data, std::size_t size) {
  while (size > 0) {
    const ssize_t sent = ::send(fd, data, size, MSG_NOSIGNAL);
    if (sent < 0) {
      if (errno == EINTR) continue;
      throw InputError(std::string("send failed: ") + std::strerror(errno));
    }
    data += sent;
    size -= static_cast<std::size_t>(sent);
  }
}

// Reads exactly size bytes; returns the count read before EOF.
std::size_t RecvAll(int fd, std::uint8_t* data, std::size_t size) {
  std::size_t got = 0;
  while (got < size) {
    const ssize_t n = ::recv(fd, data + got, size - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw InputError(std::string("recv failed: ") + std::strerror(errno));
    }
    if (n == 0) break;
    got += static_cast<std::size_t>(n);
  }
  return got;
}

}  // namespace

void SendMessage(int fd, const Message& message) {
  const auto frame = EncodeFrame(message);
  SendAll(fd, frame.data(), frame.size());
}

std::optional<Message> RecvMessage(int fd) {
  std::uint8_t header[kFrameHeaderBytes];
  const std::size_t got = RecvAll(fd, header, sizeof(header));
  if (got == 0) return std::nullopt;
  if (got < sizeof(header)) throw ParseError("truncated frame header", got);
  const FrameHeader fh = DecodeFrameHeader(header);
  Message m{.type = fh.type, .payload = std::vector<std::uint8_t>(fh.length)};
  if (RecvAll(fd, m.payload.data(), fh.length) != fh.length) {
    throw ParseError("truncated frame payload", kFrameHeaderBytes);
  }
  return m;
}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.release();
  }
  return *this;
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

int Socket::release() {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

Socket ConnectTcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &result);
      rc != 0) {
    throw InputError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  Socket sock;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    Socket candidate(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!candidate.valid()) continue;
    if (::connect(candidate.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
      sock = std::move(candidate);
      break;
    }
  }
  ::freeaddrinfo(result);
  if (!sock.valid()) {
    throw InputError("cannot connect to " + host + ":" + service);
  }
  const int one = 1;
  ::setsockopt(sock.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return sock;
}

}  // namespace idpf::demo
