#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.h"
#include "idpf/errors.h"

namespace {

using idpf::cli::ArtifactPaths;
using idpf::cli::CommandResult;

constexpr int kExitUsage = 2;
constexpr int kExitImpossible = 3;
constexpr int kExitMismatch = 4;

void AddArtifacts(CLI::App* cmd, ArtifactPaths& paths) {
  cmd->add_option("--params", paths.params, "params JSON")->required();
  cmd->add_option("--scheme", paths.scheme, "scheme JSON")->required();
  cmd->add_option("--family", paths.family, "family JSON")->required();
}

int Fail(const std::string& command, int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::cout << nlohmann::json{{"command", command},
                              {"ok", false},
                              {"exit_code", code},
                              {"error", message}}
                   .dump()
            << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfectly secure multi-server distributed point functions"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  std::function<CommandResult()> run;
  std::string command;
  auto bind = [&](CLI::App* cmd, std::function<CommandResult()> fn) {
    cmd->callback([&, cmd, fn] {
      command = cmd->get_name();
      run = fn;
    });
  };

  idpf::cli::ParamsOptions params;
  auto* c_params = app.add_subcommand("params", "synthesize a parameter set");
  c_params->add_option("--primes", params.primes, "distinct primes of m, comma separated")
      ->required();
  c_params->add_option("--p", params.p, "output characteristic")->required();
  c_params->add_option("--tau", params.tau, "minimum extension degree");
  c_params->add_option("--out", params.out, "output path")->required();
  bind(c_params, [&] { return RunParams(params); });

  idpf::cli::SchemeOptions scheme;
  auto* c_scheme = app.add_subcommand("scheme", "search and certify an interpolation scheme");
  c_scheme->add_option("--params", scheme.params)->required();
  c_scheme->add_option("--n-start", scheme.n_start, "first point-set size tried");
  c_scheme->add_option("--out", scheme.out)->required();
  bind(c_scheme, [&] { return RunScheme(scheme); });

  idpf::cli::FamilyOptions family;
  auto* c_family = app.add_subcommand("family", "build a matching family");
  c_family->add_option("--params", family.params)->required();
  c_family->add_option("--kind", family.kind, "trivial or search")
      ->check(CLI::IsMember({"trivial", "search"}));
  c_family->add_option("--h", family.h, "vector length");
  c_family->add_option("--n-goal", family.n_goal, "search: target size (default h)");
  c_family->add_option("--seed", family.seed);
  c_family->add_option("--budget", family.budget, "search: candidate draws");
  c_family->add_option("--out", family.out)->required();
  bind(c_family, [&] { return RunFamily(family); });

  idpf::cli::KeygenOptions keygen;
  auto* c_keygen = app.add_subcommand("keygen", "generate the 2n keys of f_{alpha,beta}");
  AddArtifacts(c_keygen, keygen.artifacts);
  c_keygen->add_option("--alpha", keygen.alpha)->required();
  c_keygen->add_option("--beta", keygen.beta)->required();
  c_keygen->add_option("--seed", keygen.seed);
  c_keygen->add_option("--outdir", keygen.outdir)->required();
  bind(c_keygen, [&] { return RunKeygen(keygen); });

  idpf::cli::EvalOptions eval;
  auto* c_eval = app.add_subcommand("eval", "evaluate one key at x");
  AddArtifacts(c_eval, eval.artifacts);
  c_eval->add_option("--key", eval.key)->required();
  c_eval->add_option("--x", eval.x)->required();
  bind(c_eval, [&] { return RunEval(eval); });

  idpf::cli::EvalOptions fulleval;
  auto* c_fulleval = app.add_subcommand("fulleval", "evaluate one key on the whole domain");
  AddArtifacts(c_fulleval, fulleval.artifacts);
  c_fulleval->add_option("--key", fulleval.key)->required();
  bind(c_fulleval, [&] { return RunFullEval(fulleval); });

  idpf::cli::VerifyOptions verify;
  auto* c_verify = app.add_subcommand("verify", "run the verification oracles");
  AddArtifacts(c_verify, verify.artifacts);
  c_verify->add_option("--keys", verify.keys, "directory of key_<i>.json files");
  c_verify->add_option("--alpha", verify.alpha, "expected alpha of the key set");
  c_verify->add_option("--beta", verify.beta, "expected beta of the key set");
  c_verify->add_flag("--exhaustive", verify.exhaustive, "all (alpha, x) pairs and all beta");
  c_verify->add_option("--cases", verify.cases, "random oracle cases when not exhaustive");
  c_verify->add_option("--seed", verify.seed);
  bind(c_verify, [&] { return RunVerify(verify); });

  idpf::cli::BenchOptions bench;
  auto* c_bench = app.add_subcommand("bench", "key-size sweep over h");
  c_bench->add_option("--params", bench.params)->required();
  c_bench->add_option("--scheme", bench.scheme)->required();
  c_bench->add_option("--hs", bench.hs, "comma separated h values");
  c_bench->add_option("--reps", bench.reps, "timing repetitions");
  bind(c_bench, [&] { return RunBench(bench); });

  idpf::cli::DemoOptions demo;
  auto* c_demo = app.add_subcommand("demo", "run every stage on the default fixture");
  c_demo->add_option("--outdir", demo.outdir);
  c_demo->add_option("--primes", demo.primes);
  c_demo->add_option("--p", demo.p);
  c_demo->add_option("--h", demo.h);
  c_demo->add_option("--alpha", demo.alpha);
  c_demo->add_option("--beta", demo.beta);
  c_demo->add_option("--seed", demo.seed);
  bind(c_demo, [&] { return RunDemo(demo); });

  idpf::cli::ServeOptions serve;
  auto* c_serve = app.add_subcommand("serve", "run evaluation server i");
  AddArtifacts(c_serve, serve.artifacts);
  c_serve->add_option("--index", serve.index)->required();
  c_serve->add_option("--port", serve.port, "0 picks an ephemeral port");
  c_serve->add_option("--host", serve.host);
  c_serve->add_option("--db", serve.db, "database replica, one residue per line");
  c_serve->add_option("--port-file", serve.port_file, "write the bound port here");
  bind(c_serve, [&] { return RunServe(serve); });

  idpf::cli::QueryOptions query;
  auto* c_query = app.add_subcommand("query", "client: distribute keys and reconstruct");
  AddArtifacts(c_query, query.artifacts);
  c_query->add_option("--servers", query.servers, "host:port list in key order")->required();
  c_query->add_option("--alpha", query.alpha)->required();
  c_query->add_option("--beta", query.beta);
  c_query->add_option("--seed", query.seed);
  c_query->add_option("--x", query.x, "point query");
  c_query->add_option("--pir", query.pir, "PIR with this db digest (or 'any')");
  c_query->add_option("--db", query.db, "PIR, digest taken from a local replica");
  bind(c_query, [&] { return RunQuery(query); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Fail(command.empty() ? "idpf" : command, kExitUsage, e.what());
  }

  try {
    const CommandResult result = run();
    std::cout << result.summary.dump() << std::endl;
    return result.exit_code;
  } catch (const idpf::ImpossibleParams& e) {
    return Fail(command, kExitImpossible, e.what());
  } catch (const idpf::ParamError& e) {
    return Fail(command, kExitUsage, e.what());
  } catch (const idpf::InputError& e) {
    return Fail(command, kExitUsage, e.what());
  } catch (const idpf::ArtifactMismatch& e) {
    return Fail(command, kExitMismatch, e.what());
  } catch (const idpf::ParseError& e) {
    return Fail(command, kExitMismatch, e.what());
  } catch (const idpf::Error& e) {
    return Fail(command, kExitImpossible, e.what());
  } catch (const std::exception& e) {
    return Fail(command, kExitMismatch, e.what());
  }
}
