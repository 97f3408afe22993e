#ifndef IDPF_TOOLS_COMMANDS_H_
#define IDPF_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "loaders.h"

// Each command prints a human summary and returns the JSON result that main
// writes as the final stdout line.
namespace idpf::cli {

// Non-zero verification outcome that is not an exception.
struct CommandResult {
  nlohmann::json summary;
  int exit_code = 0;
};

struct ParamsOptions {
  std::string primes;
  std::uint32_t p = 0;
  std::optional<int> tau;
  std::string out;
};
CommandResult RunParams(const ParamsOptions& o);

struct SchemeOptions {
  std::string params;
  std::optional<std::size_t> n_start;
  std::string out;
};
CommandResult RunScheme(const SchemeOptions& o);

struct FamilyOptions {
  std::string params;
  std::string kind = "trivial";
  std::size_t h = 16;
  std::size_t n_goal = 0;
  std::uint64_t seed = 1;
  std::uint64_t budget = 100000;
  std::string out;
};
CommandResult RunFamily(const FamilyOptions& o);

struct KeygenOptions {
  ArtifactPaths artifacts;
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  std::uint64_t seed = 1;
  std::string outdir;
};
CommandResult RunKeygen(const KeygenOptions& o);

struct EvalOptions {
  ArtifactPaths artifacts;
  std::string key;
  std::int64_t x = 0;
};
CommandResult RunEval(const EvalOptions& o);
CommandResult RunFullEval(const EvalOptions& o);

struct VerifyOptions {
  ArtifactPaths artifacts;
  std::optional<std::string> keys;
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> beta;
  bool exhaustive = false;
  std::size_t cases = 200;
  std::uint64_t seed = 1;
};
CommandResult RunVerify(const VerifyOptions& o);

struct BenchOptions {
  std::string params;
  std::string scheme;
  std::string hs = "2,4,8,16,32";
  std::size_t reps = 20;
};
CommandResult RunBench(const BenchOptions& o);

struct DemoOptions {
  std::string outdir = "idpf-demo";
  std::string primes = "7,73";
  std::uint32_t p = 2;
  std::size_t h = 16;
  std::int64_t alpha = 3;
  std::int64_t beta = 1;
  std::uint64_t seed = 1;
};
CommandResult RunDemo(const DemoOptions& o);

struct ServeOptions {
  ArtifactPaths artifacts;
  std::size_t index = 0;
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::optional<std::string> db;
  std::optional<std::string> port_file;
};
CommandResult RunServe(const ServeOptions& o);

struct QueryOptions {
  ArtifactPaths artifacts;
  std::string servers;
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> x;
  std::optional<std::string> pir;  // expected db digest, or "any"
  std::optional<std::string> db;   // local replica to derive the digest from
};
CommandResult RunQuery(const QueryOptions& o);

}  // namespace idpf::cli

#endif  // IDPF_TOOLS_COMMANDS_H_
