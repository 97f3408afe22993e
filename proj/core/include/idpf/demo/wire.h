#ifndef IDPF_DEMO_WIRE_H_
#define IDPF_DEMO_WIRE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Framing for the multi-server demo:
//   "IDPF" | version (1) | type (1) | payload length (4, big-endian) | payload
namespace idpf::demo {

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kFrameHeaderBytes = 4 + 1 + 1 + 4;
inline constexpr std::uint32_t kMaxPayloadBytes = 1u << 20;

enum class MessageType : std::uint8_t {
  kKeyUpload = 1,
  kEvalReq = 2,
  kEvalResp = 3,
  kPirReq = 4,
  kPirResp = 5,
  kError = 6,
};

enum class ErrorCode : std::uint8_t {
  kMalformed = 1,
  kUnknownType = 2,
  kNoKey = 3,
  kKeyIndex = 4,
  kKeyParse = 5,
  kBadX = 6,
  kNoDb = 7,
  kDbDigest = 8,
  kKeyAlreadySet = 9,
  kUnexpected = 10,
};

std::string ErrorCodeName(ErrorCode code);

struct Message {
  std::uint8_t type = 0;  // raw, so unknown types survive decoding
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Message&, const Message&) = default;
};

std::vector<std::uint8_t> EncodeFrame(const Message& message);

struct FrameHeader {
  std::uint8_t type;
  std::uint32_t length;
};
// Throws ParseError on bad magic, version or an oversized length.
FrameHeader DecodeFrameHeader(std::span<const std::uint8_t> header);

// Whole-frame decode for tests and in-memory use.
Message DecodeFrame(std::span<const std::uint8_t> bytes);

Message MakeError(ErrorCode code, const std::string& detail);
Message MakeEvalRequest(std::uint64_t x);
Message MakeEvalResponse(std::uint32_t y);
// digest is empty (no check) or 32 raw bytes.
Message MakePirRequest(std::span<const std::uint8_t> expected_digest);
Message MakePirResponse(std::uint32_t y, std::span<const std::uint8_t> digest);

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v);
std::uint32_t GetU32(std::span<const std::uint8_t> in);

// Blocking socket I/O on a connected fd. Recv returns nullopt on a clean EOF
// before any header byte, and throws on errors or truncated frames.
void SendMessage(int fd, const Message& message);
std::optional<Message> RecvMessage(int fd);

// RAII wrapper around a socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  ~Socket();

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();

 private:
  int fd_ = -1;
};

// Connects over TCP; throws InputError when the server is unreachable.
Socket ConnectTcp(const std::string& host, std::uint16_t port);

}  // namespace idpf::demo

#endif  // IDPF_DEMO_WIRE_H_
