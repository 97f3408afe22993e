#include <arpa/inet.h>
#include <gtest/gtest.h>
#include <netinet/in.h>
#include <sys/socket.h>

#include <algorithm>
#include <memory>
#include <thread>

#include "fixtures.h"
#include "idpf/artifacts.h"
#include "idpf/demo/client.h"
#include "idpf/demo/server.h"
#include "idpf/demo/wire.h"
#include "idpf/errors.h"
#include "idpf/key_codec.h"

namespace idpf::demo {
namespace {

std::uint8_t Type(MessageType t) { return static_cast<std::uint8_t>(t); }

ErrorCode CodeOf(const Message& m) {
  EXPECT_EQ(m.type, Type(MessageType::kError));
  EXPECT_FALSE(m.payload.empty());
  return static_cast<ErrorCode>(m.payload.at(0));
}

Message Upload(const Dpf& dpf, const DpfKey& key) {
  return {.type = Type(MessageType::kKeyUpload), .payload = EncodeKey(dpf.params().ctx, key)};
}

std::vector<std::uint8_t> DigestBytes(const std::vector<std::uint32_t>& db) {
  const std::string hex = DbDigest(db);
  std::vector<std::uint8_t> out;
  for (std::size_t k = 0; k < hex.size(); k += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(hex.substr(k, 2), nullptr, 16)));
  }
  return out;
}

class Cluster {
 public:
  Cluster(const Dpf& dpf, std::optional<std::vector<std::uint32_t>> db) {
    for (std::size_t i = 0; i < dpf.num_keys(); ++i) {
      auto server = std::make_unique<DemoServer>(i, dpf, db);
      endpoints_.push_back({"127.0.0.1", server->Listen("127.0.0.1", 0)});
      threads_.emplace_back([s = server.get()] { s->Serve(); });
      servers_.push_back(std::move(server));
    }
  }
  ~Cluster() {
    for (auto& s : servers_) s->Stop();
    for (auto& t : threads_) t.join();
  }
  const std::vector<Endpoint>& endpoints() const { return endpoints_; }
  DemoServer& server(std::size_t i) { return *servers_[i]; }

 private:
  std::vector<std::unique_ptr<DemoServer>> servers_;
  std::vector<std::thread> threads_;
  std::vector<Endpoint> endpoints_;
};

TEST(WireTest, FrameRoundTrip) {
  const Message m = MakeEvalRequest(0x01020304);
  const auto bytes = EncodeFrame(m);
  ASSERT_EQ(bytes.size(), kFrameHeaderBytes + 4);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 10),
            (std::vector<std::uint8_t>{'I', 'D', 'P', 'F', 1, 2, 0, 0, 0, 4}));
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 10, bytes.end()),
            (std::vector<std::uint8_t>{1, 2, 3, 4}));
  EXPECT_EQ(DecodeFrame(bytes), m);

  const Message unknown{.type = 99, .payload = {7}};
  EXPECT_EQ(DecodeFrame(EncodeFrame(unknown)), unknown);
}

TEST(WireTest, HeaderErrors) {
  auto bytes = EncodeFrame(MakeEvalResponse(5));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(DecodeFrameHeader(bad_magic), ParseError);
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_THROW(DecodeFrameHeader(bad_version), ParseError);
  auto huge = bytes;
  huge[6] = 0xff;
  EXPECT_THROW(DecodeFrameHeader(huge), ParseError);
  EXPECT_THROW(DecodeFrame(std::span(bytes).first(bytes.size() - 1)), ParseError);
  EXPECT_THROW(DecodeFrame(std::span(bytes).first(5)), ParseError);
}

TEST(WireTest, ErrorPayload) {
  const Message e = MakeError(ErrorCode::kBadX, "x");
  EXPECT_EQ(e.payload, (std::vector<std::uint8_t>{6, 'x'}));
  EXPECT_EQ(ErrorCodeName(ErrorCode::kKeyAlreadySet), "KEY_ALREADY_SET");
}

TEST(WireTest, Endpoints) {
  const auto eps = ParseEndpoints("127.0.0.1:80,localhost:65535");
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_EQ(eps[1].host, "localhost");
  EXPECT_EQ(eps[1].port, 65535);
  EXPECT_THROW(ParseEndpoints("host"), InputError);
  EXPECT_THROW(ParseEndpoints("host:99999"), InputError);
  EXPECT_THROW(ParseEndpoints("host:"), InputError);
  EXPECT_THROW(ParseEndpoints("host:80x"), InputError);
  EXPECT_THROW(ParseEndpoints("a:1,"), InputError);
}

TEST(ServerTest, StateMachine) {
  const Dpf dpf = testing::Dpf6(4);
  const std::vector<std::uint32_t> db = {1, 2, 3, 4};
  Rng rng(9);
  const auto keys = dpf.Gen(dpf.MakePointFunction(3, 2), rng);
  const DemoServer server(1, dpf, db);
  const DemoServer no_db(1, dpf);

  Session s;
  EXPECT_EQ(CodeOf(server.Handle(s, MakeEvalRequest(1))), ErrorCode::kNoKey);
  EXPECT_EQ(CodeOf(server.Handle(s, MakePirRequest({}))), ErrorCode::kNoKey);
  EXPECT_EQ(CodeOf(server.Handle(s, Upload(dpf, keys[2]))), ErrorCode::kKeyIndex);
  EXPECT_EQ(CodeOf(server.Handle(s, Message{.type = 1, .payload = {1, 2, 3}})),
            ErrorCode::kKeyParse);
  EXPECT_EQ(CodeOf(server.Handle(s, Message{.type = 42, .payload = {}})),
            ErrorCode::kUnknownType);
  EXPECT_EQ(CodeOf(server.Handle(s, MakeEvalResponse(1))), ErrorCode::kUnexpected);

  const Message ack = server.Handle(s, Upload(dpf, keys[1]));
  EXPECT_EQ(ack.type, Type(MessageType::kKeyUpload));
  EXPECT_TRUE(ack.payload.empty());
  EXPECT_EQ(CodeOf(server.Handle(s, Upload(dpf, keys[1]))), ErrorCode::kKeyAlreadySet);

  EXPECT_EQ(CodeOf(server.Handle(s, MakeEvalRequest(0))), ErrorCode::kBadX);
  EXPECT_EQ(CodeOf(server.Handle(s, MakeEvalRequest(5))), ErrorCode::kBadX);
  EXPECT_EQ(CodeOf(server.Handle(s, Message{.type = 2, .payload = {1}})),
            ErrorCode::kMalformed);
  const Message y = server.Handle(s, MakeEvalRequest(3));
  EXPECT_EQ(y, MakeEvalResponse(dpf.Eval(keys[1], 3)));

  const std::vector<std::uint8_t> wrong(32, 0);
  EXPECT_EQ(CodeOf(server.Handle(s, MakePirRequest(wrong))), ErrorCode::kDbDigest);
  const Message pir = server.Handle(s, MakePirRequest(DigestBytes(db)));
  EXPECT_EQ(pir.type, Type(MessageType::kPirResp));
  EXPECT_EQ(std::vector<std::uint8_t>(pir.payload.begin() + 4, pir.payload.end()),
            DigestBytes(db));

  Session t;
  no_db.Handle(t, Upload(dpf, keys[1]));
  EXPECT_EQ(CodeOf(no_db.Handle(t, MakePirRequest({}))), ErrorCode::kNoDb);

  // A fresh connection has no key even after another session uploaded one.
  Session fresh;
  EXPECT_EQ(CodeOf(server.Handle(fresh, MakeEvalRequest(1))), ErrorCode::kNoKey);
}

TEST(ServerTest, ConstructorChecks) {
  const Dpf dpf = testing::Dpf6(4);
  EXPECT_THROW(DemoServer(8, dpf), InputError);
  EXPECT_THROW(DemoServer(0, dpf, std::vector<std::uint32_t>{1, 2, 3}), InputError);
  EXPECT_THROW(DemoServer(0, dpf, std::vector<std::uint32_t>{1, 2, 3, 5}), InputError);
}

TEST(ClusterTest, EvalAndPir) {
  const Dpf dpf = testing::Dpf6(6);
  const std::vector<std::uint32_t> db = {4, 0, 3, 1, 2, 2};
  Cluster cluster(dpf, db);
  for (std::uint64_t x = 1; x <= 6; ++x) {
    const auto r = ClientQuery(dpf, cluster.endpoints(), 5, 3, x, x, std::nullopt);
    EXPECT_EQ(r.value, x == 5 ? 3u : 0u);
    EXPECT_EQ(r.responses.size(), 8u);
  }
  for (std::uint64_t alpha = 1; alpha <= 6; ++alpha) {
    const auto r = ClientQuery(dpf, cluster.endpoints(), alpha, 1, 100 + alpha, std::nullopt,
                               DbDigest(db));
    EXPECT_EQ(r.value, db[alpha - 1]);
    EXPECT_EQ(r.db_digest, DbDigest(db));
    const auto scaled = ClientQuery(dpf, cluster.endpoints(), alpha, 2, alpha, std::nullopt, "");
    EXPECT_EQ(scaled.value, 2 * db[alpha - 1] % 5);
  }
  try {
    ClientQuery(dpf, cluster.endpoints(), 1, 1, 1, std::nullopt, std::string(64, '0'));
    FAIL() << "digest mismatch accepted";
  } catch (const ServerError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDbDigest);
  }
}

TEST(ClusterTest, Fixture511) {
  const Dpf dpf = testing::Dpf511(16);
  std::vector<std::uint32_t> db(16);
  for (std::size_t k = 0; k < 16; ++k) db[k] = (k * 7 + 3) % 5 % 2;
  Cluster cluster(dpf, db);
  for (std::uint64_t alpha = 1; alpha <= 16; ++alpha) {
    const auto r = ClientQuery(dpf, cluster.endpoints(), alpha, 1, alpha, std::nullopt,
                               DbDigest(db));
    EXPECT_EQ(r.value, db[alpha - 1]) << alpha;
  }
}

TEST(ClusterTest, ReplicasDisagree) {
  const Dpf dpf = testing::Dpf6(4);
  Cluster a(dpf, std::vector<std::uint32_t>{1, 2, 3, 4});
  Cluster b(dpf, std::vector<std::uint32_t>{1, 2, 3, 0});
  auto mixed = a.endpoints();
  mixed[7] = b.endpoints()[7];
  try {
    ClientQuery(dpf, mixed, 1, 1, 1, std::nullopt, "");
    FAIL() << "inconsistent replicas accepted";
  } catch (const ServerError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDbDigest);
  }
}

// Accepts one connection and counts the bytes received until EOF.
class RecordingListener {
 public:
  RecordingListener() : fd_(::socket(AF_INET, SOCK_STREAM, 0)) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    socklen_t len = sizeof(addr);
    EXPECT_EQ(::bind(fd_.fd(), reinterpret_cast<sockaddr*>(&addr), len), 0);
    EXPECT_EQ(::listen(fd_.fd(), 4), 0);
    ::getsockname(fd_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] {
      Socket conn(::accept(fd_.fd(), nullptr, nullptr));
      char buf[256];
      ssize_t got;
      while ((got = ::recv(conn.fd(), buf, sizeof(buf), 0)) > 0) received_ += got;
    });
  }
  ~RecordingListener() {
    ::shutdown(fd_.fd(), SHUT_RDWR);
    if (thread_.joinable()) thread_.join();
  }
  std::uint16_t port() const { return port_; }
  std::size_t Finish() {
    thread_.join();
    return received_;
  }

 private:
  Socket fd_;
  std::uint16_t port_ = 0;
  std::size_t received_ = 0;
  std::thread thread_;
};

TEST(ClusterTest, UnreachableServerAbortsBeforeUpload) {
  const Dpf dpf = testing::Dpf6(4);
  Cluster cluster(dpf, std::nullopt);
  auto endpoints = cluster.endpoints();
  RecordingListener recorder;
  endpoints[0].port = recorder.port();
  // A port that was just released has no listener.
  {
    DemoServer probe(0, dpf);
    endpoints[5].port = probe.Listen("127.0.0.1", 0);
  }
  EXPECT_THROW(ClientQuery(dpf, endpoints, 1, 1, 1, 1, std::nullopt), InputError);
  EXPECT_EQ(recorder.Finish(), 0u);

  const auto r = ClientQuery(dpf, cluster.endpoints(), 2, 4, 3, 2, std::nullopt);
  EXPECT_EQ(r.value, 4u);
}

TEST(ClusterTest, WrongServerOrderIsRejected) {
  const Dpf dpf = testing::Dpf6(4);
  Cluster cluster(dpf, std::nullopt);
  auto swapped = cluster.endpoints();
  std::swap(swapped[0], swapped[1]);
  try {
    ClientQuery(dpf, swapped, 1, 1, 1, 1, std::nullopt);
    FAIL();
  } catch (const ServerError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKeyIndex);
  }
  EXPECT_THROW(ClientQuery(dpf, {cluster.endpoints()[0]}, 1, 1, 1, 1, std::nullopt),
               InputError);
  EXPECT_THROW(ClientQuery(dpf, cluster.endpoints(), 1, 1, 1, std::nullopt, std::nullopt),
               InputError);
  EXPECT_THROW(ClientQuery(dpf, cluster.endpoints(), 1, 1, 1, 9, std::nullopt), InputError);
}

TEST(ClusterTest, DeterministicAcrossRestart) {
  const Dpf dpf = testing::Dpf6(4);
  const std::vector<std::uint32_t> db = {1, 4, 0, 2};
  QueryResult first;
  {
    Cluster cluster(dpf, db);
    first = ClientQuery(dpf, cluster.endpoints(), 2, 1, 55, std::nullopt, DbDigest(db));
  }
  Cluster again(dpf, db);
  const auto second = ClientQuery(dpf, again.endpoints(), 2, 1, 55, std::nullopt, DbDigest(db));
  EXPECT_EQ(first.responses, second.responses);
  EXPECT_EQ(second.value, 4u);
}

std::uint64_t Fnv(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : bytes) h = (h ^ b) * 1099511628211ull;
  return h;
}

// Everything server i sees is its key frame and the request frame. Over all
// of Gen's randomness those transcripts form the same multiset for any two
// point functions.
TEST(TranscriptTest, SingleServerViewIsIndependentOfAlpha) {
  const Dpf dpf = testing::Dpf6(2);
  const auto& ctx = dpf.params().ctx;
  const auto& H = dpf.params().H;
  const std::uint64_t q = 25;
  const Message request = MakeEvalRequest(2);
  auto collect = [&](const PointFunction& f) {
    std::vector<std::vector<std::uint64_t>> views(dpf.num_keys());
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        const FieldVector w = {H[a], H[b]};
        for (std::uint64_t code = 0; code < q * q * q; ++code) {
          const FieldVector omega0 = {ctx.ElementAtRank(code % q), ctx.ElementAtRank(code / q % q),
                                      ctx.ElementAtRank(code / q / q)};
          for (const auto& k : dpf.GenWith(f, w, omega0)) {
            views[k.i].push_back(Fnv(ServerTranscript(ctx, k, request)));
          }
        }
      }
    }
    for (auto& v : views) std::sort(v.begin(), v.end());
    return views;
  };
  const auto v0 = collect(dpf.MakePointFunction(1, 1));
  const auto v1 = collect(dpf.MakePointFunction(2, 4));
  for (std::size_t i = 0; i < dpf.num_keys(); ++i) {
    EXPECT_TRUE(v0[i] == v1[i]) << "server " << i;
  }
}

TEST(TranscriptTest, FrameLayout) {
  const Dpf dpf = testing::Dpf6(2);
  Rng rng(1);
  const auto keys = dpf.Gen(dpf.MakePointFunction(1, 1), rng);
  const Message request = MakeEvalRequest(1);
  const auto t = ServerTranscript(dpf.params().ctx, keys[3], request);
  auto expect = EncodeFrame(Upload(dpf, keys[3]));
  const auto req = EncodeFrame(request);
  expect.insert(expect.end(), req.begin(), req.end());
  EXPECT_EQ(t, expect);
}

}  // namespace
}  // namespace idpf::demo
