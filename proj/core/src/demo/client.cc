#include "idpf/demo/client.h"

#include <charconv>
#include <future>

#include "idpf/digest.h"
#include "idpf/errors.h"
#include "idpf/key_codec.h"

namespace idpf::demo {

namespace {

std::vector<std::uint8_t> HexToBytes(const std::string& hex) {
  if (hex.size() % 2 != 0) throw InputError("odd-length hex digest");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(
        std::stoul(hex.substr(i, 2), nullptr, 16)));
  }
  return out;
}

Message Exchange(std::size_t server, int fd, const Message& request) {
  SendMessage(fd, request);
  auto reply = RecvMessage(fd);
  if (!reply) {
    throw InputError("server " + std::to_string(server) + " closed the connection");
  }
  if (reply->type == static_cast<std::uint8_t>(MessageType::kError)) {
    const auto code = reply->payload.empty()
                          ? ErrorCode::kMalformed
                          : static_cast<ErrorCode>(reply->payload[0]);
    const std::string detail(reply->payload.begin() + (reply->payload.empty() ? 0 : 1),
                             reply->payload.end());
    throw ServerError(server, code, detail);
  }
  return *reply;
}

}  // namespace

std::vector<Endpoint> ParseEndpoints(const std::string& list) {
  std::vector<Endpoint> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t end = list.find(',', pos);
    if (end == std::string::npos) end = list.size();
    const std::string item = list.substr(pos, end - pos);
    const std::size_t colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw InputError("endpoint '" + item + "' is not host:port");
    }
    const std::string digits = item.substr(colon + 1);
    unsigned long port = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || port == 0 ||
        port > 65535) {
      throw InputError("bad port in " + item);
    }
    out.push_back({item.substr(0, colon), static_cast<std::uint16_t>(port)});
    pos = end + 1;
  }
  return out;
}

std::vector<std::uint8_t> ServerTranscript(const FieldCtx& ctx,
                                           const DpfKey& key,
                                           const Message& request) {
  std::vector<std::uint8_t> out = EncodeFrame(
      {.type = static_cast<std::uint8_t>(MessageType::kKeyUpload),
       .payload = EncodeKey(ctx, key)});
  const auto req = EncodeFrame(request);
  out.insert(out.end(), req.begin(), req.end());
  return out;
}

QueryResult ClientQuery(const Dpf& dpf, const std::vector<Endpoint>& servers,
                        std::uint64_t alpha, std::uint32_t beta,
                        std::uint64_t seed, std::optional<std::uint64_t> x,
                        std::optional<std::string> pir_digest_hex) {
  if (servers.size() != dpf.num_keys()) {
    throw InputError("need exactly " + std::to_string(dpf.num_keys()) +
                     " servers, got " + std::to_string(servers.size()));
  }
  if (x.has_value() == pir_digest_hex.has_value()) {
    throw InputError("query needs exactly one of x or a PIR digest");
  }
  const PointFunction f = dpf.MakePointFunction(alpha, beta);
  Message request;
  if (x) {
    if (*x < 1 || *x > dpf.N()) throw InputError("x outside [1, N]");
    request = MakeEvalRequest(*x);
  } else {
    request = MakePirRequest(HexToBytes(*pir_digest_hex));
  }

  // Every connection first; no key is sent unless all servers are reachable.
  std::vector<Socket> conns;
  conns.reserve(servers.size());
  for (const auto& ep : servers) conns.push_back(ConnectTcp(ep.host, ep.port));

  Rng rng(seed);
  const auto keys = dpf.Gen(f, rng);
  const auto& ctx = dpf.params().ctx;

  std::vector<std::future<Message>> pending;
  for (std::size_t i = 0; i < conns.size(); ++i) {
    pending.push_back(std::async(std::launch::async, [&, i] {
      Exchange(i, conns[i].fd(),
               {.type = static_cast<std::uint8_t>(MessageType::kKeyUpload),
                .payload = EncodeKey(ctx, keys[i])});
      return Exchange(i, conns[i].fd(), request);
    }));
  }

  QueryResult result;
  std::uint64_t sum = 0;
  std::optional<std::vector<std::uint8_t>> digest;
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Message reply;
    try {
      reply = pending[i].get();
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
      continue;
    }
    const auto want = x ? MessageType::kEvalResp : MessageType::kPirResp;
    if (reply.type != static_cast<std::uint8_t>(want) || reply.payload.size() < 4) {
      if (!first_error) {
        first_error = std::make_exception_ptr(
            InputError("server " + std::to_string(i) + " sent an unexpected reply"));
      }
      continue;
    }
    const std::uint32_t y = GetU32(reply.payload);
    result.responses.push_back(y);
    sum += y;
    if (!x) {
      std::vector<std::uint8_t> d(reply.payload.begin() + 4, reply.payload.end());
      if (digest && *digest != d) {
        if (!first_error) {
          first_error = std::make_exception_ptr(ServerError(
              i, ErrorCode::kDbDigest, "replicas disagree on the database"));
        }
      }
      digest = std::move(d);
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  result.value = static_cast<std::uint32_t>(sum % dpf.params().p);
  if (digest) result.db_digest = ToHex(*digest);
  return result;
}

}  // namespace idpf::demo
