#include "commands.h"

#include <pthread.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "idpf/demo/client.h"
#include "idpf/demo/server.h"
#include "idpf/errors.h"
#include "idpf/key_codec.h"
#include "idpf/oracles.h"

namespace idpf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitImpossible = 3;
constexpr int kExitMismatch = 4;

std::uint64_t CheckedPoint(std::int64_t v, const Dpf& dpf, const char* name) {
  if (v < 1 || static_cast<std::uint64_t>(v) > dpf.N()) {
    throw InputError(std::string(name) + " = " + std::to_string(v) +
                     " outside [1, " + std::to_string(dpf.N()) + "]");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint32_t CheckedResidue(std::int64_t v, const Dpf& dpf, const char* name) {
  if (v < 0 || static_cast<std::uint64_t>(v) >= dpf.params().p) {
    throw InputError(std::string(name) + " = " + std::to_string(v) +
                     " outside [0, " + std::to_string(dpf.params().p) + ")");
  }
  return static_cast<std::uint32_t>(v);
}

void PrintReport(const oracles::CheckReport& r) {
  std::cout << "  " << std::left << std::setw(22) << r.check
            << (r.ok() ? "ok" : "FAIL") << "  cases=" << r.cases << "\n";
  const std::size_t shown = std::min<std::size_t>(r.failures.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    std::cout << "      " << r.failures[i] << "\n";
  }
  if (r.failures.size() > shown) {
    std::cout << "      ... " << r.failures.size() - shown << " more\n";
  }
}

oracles::CheckReport Named(const std::string& name) {
  oracles::CheckReport r;
  r.check = name;
  return r;
}

// Structural checks across a full key set plus reconstruction.
oracles::CheckReport CheckKeySet(const Dpf& dpf, const std::vector<DpfKey>& keys,
                                 std::optional<std::uint64_t> alpha,
                                 std::optional<std::uint32_t> beta) {
  auto r = Named("key_set");
  const std::size_t n = dpf.n();
  for (const auto& k : keys) {
    ++r.cases;
    const DpfKey& same_omega = keys[k.j * n];
    const DpfKey& same_share = keys[k.ell];
    if (k.omega != same_omega.omega) {
      r.failures.push_back("key " + std::to_string(k.i) + " omega differs from key " +
                           std::to_string(same_omega.i));
    }
    if (k.share != same_share.share) {
      r.failures.push_back("key " + std::to_string(k.i) + " share differs from key " +
                           std::to_string(same_share.i));
    }
  }
  std::vector<std::uint64_t> sum(dpf.N(), 0);
  for (const auto& k : keys) {
    const auto ys = dpf.FullEval(k);
    for (std::size_t x = 0; x < ys.size(); ++x) sum[x] += ys[x];
  }
  std::vector<std::uint64_t> support;
  for (std::size_t x = 0; x < sum.size(); ++x) {
    sum[x] %= dpf.params().p;
    if (sum[x] != 0) support.push_back(x + 1);
  }
  r.cases += sum.size();
  if (support.size() > 1) {
    r.failures.push_back("reconstruction has " + std::to_string(support.size()) +
                         " nonzero points; not a point function");
  }
  if (beta) {
    const bool zero_expected = *beta == 0;
    if (zero_expected && !support.empty()) {
      r.failures.push_back("beta = 0 but reconstruction is nonzero");
    }
    if (!zero_expected && alpha) {
      if (sum[*alpha - 1] != *beta) {
        r.failures.push_back("reconstruction at alpha = " + std::to_string(*alpha) +
                             " is " + std::to_string(sum[*alpha - 1]) +
                             ", expected " + std::to_string(*beta));
      }
    }
  }
  return r;
}

}  // namespace

CommandResult RunParams(const ParamsOptions& o) {
  const DpfParams params = BuildParams(ParseList(o.primes), o.p, o.tau);
  WriteJsonFile(o.out, ParamsToJson(params));
  const std::string n_target = NrValue(params.r()).str();
  std::cout << "m = " << params.m << ", M = " << params.M << ", p = " << params.p
            << ", tau = " << params.tau << "\n"
            << "|S_m| = " << params.S_m.size() << ", |S_M| = " << params.S_M.size()
            << ", n_target = " << n_target << "\n";
  return {{{"command", "params"},
           {"m", params.m},
           {"M", params.M},
           {"p", params.p},
           {"tau", params.tau},
           {"S_m_size", params.S_m.size()},
           {"S_M_size", params.S_M.size()},
           {"n_target", n_target},
           {"params_digest", ParamsDigest(params)},
           {"out", o.out}}};
}

CommandResult RunScheme(const SchemeOptions& o) {
  const DpfParams params = LoadParams(o.params);
  const std::size_t n_start =
      o.n_start.value_or(static_cast<std::size_t>(std::max<std::uint64_t>(1, params.n_target)));
  const SchemeBuild build = BuildScheme(params, n_start);
  WriteJsonFile(o.out, SchemeToJson(build.scheme));
  if (!build.exhausted.empty()) {
    std::cout << "no multiplicity-1 set of size";
    for (auto n : build.exhausted) std::cout << " " << n;
    std::cout << "; escalated to n = " << build.scheme.n() << "\n";
  }
  std::cout << "n = " << build.scheme.n() << ", servers = " << build.scheme.servers()
            << "\nB_logs =";
  for (auto l : build.scheme.B_logs) std::cout << " " << l;
  std::cout << "\n";
  return {{{"command", "scheme"},
           {"n", build.scheme.n()},
           {"servers", build.scheme.servers()},
           {"B_logs", build.scheme.B_logs},
           {"exhausted", build.exhausted},
           {"out", o.out}}};
}

CommandResult RunFamily(const FamilyOptions& o) {
  const DpfParams params = LoadParams(o.params);
  if (o.h == 0) throw ParamError("h must be positive");
  MatchingFamily family;
  if (o.kind == "trivial") {
    family = TrivialFamily(params.M, o.h);
  } else if (o.kind == "search") {
    family = SearchFamily(params, o.h, o.n_goal == 0 ? o.h : o.n_goal, o.seed, o.budget);
  } else {
    throw ParamError("family kind must be trivial or search");
  }
  const FamilyCertificate cert = VerifyFamily(family, params.S_M);
  if (!cert.ok) throw ImpossibleParams("constructed family fails: " + cert.message);
  WriteJsonFile(o.out, FamilyToJson(family, true));
  std::cout << o.kind << " family: h = " << family.h << ", N = " << family.N()
            << ", certified\n";
  return {{{"command", "family"},
           {"kind", o.kind},
           {"h", family.h},
           {"N", family.N()},
           {"certified", true},
           {"out", o.out}}};
}

CommandResult RunKeygen(const KeygenOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  const PointFunction f = a.dpf.MakePointFunction(
      CheckedPoint(o.alpha, a.dpf, "alpha"), CheckedResidue(o.beta, a.dpf, "beta"));
  Rng rng(o.seed);
  const auto keys = a.dpf.Gen(f, rng);
  fs::create_directories(o.outdir);
  json sizes = json::array();
  for (const auto& k : keys) {
    WriteJsonFile(KeyPath(o.outdir, k.i), KeyToJson(k, a.digest));
    const std::size_t bytes = EncodeKey(a.params.ctx, k).size();
    sizes.push_back(bytes);
    std::cout << "key " << k.i << " (j=" << k.j << ", ell=" << k.ell << "): "
              << bytes << " bytes\n";
  }
  return {{{"command", "keygen"},
           {"keys", keys.size()},
           {"key_bytes", sizes},
           {"outdir", o.outdir}}};
}

CommandResult RunEval(const EvalOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  const DpfKey key = KeyFromJson(ReadJsonFile(o.key), a.dpf);
  const std::uint64_t x = CheckedPoint(o.x, a.dpf, "x");
  const std::uint32_t y = a.dpf.Eval(key, x);
  std::cout << "y_" << key.i << "(" << x << ") = " << y << "\n";
  return {{{"command", "eval"}, {"i", key.i}, {"x", x}, {"y", y}}};
}

CommandResult RunFullEval(const EvalOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  const DpfKey key = KeyFromJson(ReadJsonFile(o.key), a.dpf);
  const auto ys = a.dpf.FullEval(key);
  std::cout << "y_" << key.i << " =";
  for (auto y : ys) std::cout << " " << y;
  std::cout << "\n";
  return {{{"command", "fulleval"}, {"i", key.i}, {"y", ys}}};
}

CommandResult RunVerify(const VerifyOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  const Dpf& dpf = a.dpf;
  const DpfParams& params = a.params;
  std::vector<oracles::CheckReport> reports;

  auto lift = Named("lift_condition");
  const LiftConditionReport lc = CheckLiftCondition(params);
  lift.cases = lc.witnesses.size();
  for (const auto& w : lc.witnesses) {
    if (!w.ok) lift.failures.push_back("s = " + std::to_string(w.s) + " outside the CRT image");
  }
  reports.push_back(lift);

  auto fam = Named("family_certificate");
  const FamilyCertificate cert = VerifyFamily(dpf.family(), params.S_M);
  fam.cases = dpf.N() * dpf.N();
  if (!cert.ok) fam.failures.push_back(cert.message);
  reports.push_back(fam);

  auto sch = Named("scheme_certificate");
  const SchemeReport sr = VerifyScheme(params, dpf.scheme(), 100, o.seed);
  sch.cases = params.S_M.size() + sr.random_checks;
  for (auto s : sr.violated_s) sch.failures.push_back("identity fails at s = " + std::to_string(s));
  if (sr.random_failures > 0) {
    sch.failures.push_back(std::to_string(sr.random_failures) + " random polynomials misrecovered");
  }
  reports.push_back(sch);

  auto deriv = Named("derivative_check");
  auto rho = Named("rho_identity");
  Rng rng(o.seed);
  auto run_case = [&](std::uint64_t alpha, std::uint64_t x) {
    const FieldVector w = oracles::RandomW(dpf, rng);
    deriv.Merge(oracles::DerivativeCheck(dpf, alpha, x, w));
    rho.Merge(oracles::RhoIdentity(dpf, alpha, x, w));
  };
  if (o.exhaustive) {
    for (std::uint64_t alpha = 1; alpha <= dpf.N(); ++alpha) {
      for (std::uint64_t x = 1; x <= dpf.N(); ++x) run_case(alpha, x);
    }
  } else {
    for (std::size_t c = 0; c < o.cases; ++c) {
      const std::uint64_t alpha = rng.Below(dpf.N()) + 1;
      run_case(alpha, rng.Below(dpf.N()) + 1);
    }
  }
  reports.push_back(deriv);
  reports.push_back(rho);

  std::vector<std::uint32_t> betas{1};
  std::vector<std::uint64_t> seeds{o.seed};
  if (o.exhaustive) {
    betas.clear();
    for (std::uint32_t b = 0; b < params.p; ++b) betas.push_back(b);
    seeds = {o.seed, o.seed + 1, o.seed + 2};
  }
  auto correct = oracles::ExhaustiveCorrectness(dpf, betas, seeds);
  correct.check = "correctness";
  reports.push_back(correct);

  auto dist = Named("distribution_equality");
  const auto f0 = dpf.MakePointFunction(1, 1 % params.p);
  const auto f1 = dpf.MakePointFunction(std::min<std::uint64_t>(2, dpf.N()), (params.p - 1) % params.p);
  const auto dr = oracles::CheckDistributionEquality(dpf, f0, f1, 100000);
  dist.cases = dr.enumerated_w;
  dist.failures = dr.failures;
  if (dr.skipped) {
    std::cout << "  distribution_equality skipped: m^h exceeds the enumeration budget\n";
  } else {
    reports.push_back(dist);
  }

  auto size = Named("key_size");
  const auto ks = oracles::MeasureKeySize(dpf);
  size.cases = 1;
  if (!ks.ok()) {
    size.failures.push_back("measured " + std::to_string(ks.measured_bytes) +
                            " bytes, formula " + std::to_string(ks.formula_bytes));
  }
  reports.push_back(size);

  bool public_ok = true;
  for (const auto& r : reports) public_ok = public_ok && r.ok();

  bool keys_ok = true;
  if (o.keys) {
    auto files = Named("key_files");
    std::vector<DpfKey> keys;
    try {
      keys = LoadKeys(*o.keys, a);
      files.cases = keys.size();
    } catch (const Error& e) {
      files.failures.push_back(e.what());
    }
    reports.push_back(files);
    if (files.ok()) {
      std::optional<std::uint64_t> alpha;
      std::optional<std::uint32_t> beta;
      if (o.alpha) alpha = CheckedPoint(*o.alpha, dpf, "alpha");
      if (o.beta) beta = CheckedResidue(*o.beta, dpf, "beta");
      reports.push_back(CheckKeySet(dpf, keys, alpha, beta));
    }
    keys_ok = reports.back().ok();
  }

  std::cout << "verify (params " << a.digest.substr(0, 16) << ")\n";
  json checks = json::array();
  for (const auto& r : reports) {
    PrintReport(r);
    checks.push_back(r.ToJson(a.digest));
  }
  int code = 0;
  if (!public_ok) {
    code = kExitImpossible;
  } else if (!keys_ok) {
    code = kExitMismatch;
  }
  std::vector<std::string> failed;
  for (const auto& r : reports) {
    if (!r.ok()) failed.push_back(r.check);
  }
  return {{{"command", "verify"},
           {"ok", code == 0},
           {"failed_checks", failed},
           {"params_digest", a.digest},
           {"checks", checks}},
          code};
}

CommandResult RunBench(const BenchOptions& o) {
  const DpfParams params = LoadParams(o.params);
  const InterpolationScheme scheme = SchemeFromJson(ReadJsonFile(o.scheme), params);
  std::vector<std::size_t> hs;
  for (auto h : ParseList(o.hs)) {
    if (h == 0) throw ParamError("h must be positive");
    hs.push_back(h);
  }
  const auto sweep = oracles::SweepKeySize(params, scheme, hs);

  std::cout << std::left << std::setw(6) << "h" << std::setw(12) << "key_bytes"
            << std::setw(12) << "formula" << std::setw(12) << "payload"
            << std::setw(14) << "gen_us" << "eval_us\n";
  json rows = json::array();
  for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
    const auto& row = sweep.rows[r];
    const Dpf dpf(params, TrivialFamily(params.M, row.h), scheme);
    const auto f = dpf.MakePointFunction(1, 1);
    Rng rng(1);
    std::vector<DpfKey> keys;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < o.reps; ++k) keys = dpf.Gen(f, rng);
    const auto t1 = std::chrono::steady_clock::now();
    std::uint64_t sink = 0;
    for (std::size_t k = 0; k < o.reps; ++k) sink += dpf.Eval(keys[0], 1 + k % dpf.N());
    const auto t2 = std::chrono::steady_clock::now();
    const double reps = static_cast<double>(std::max<std::size_t>(o.reps, 1));
    const double gen_us = std::chrono::duration<double, std::micro>(t1 - t0).count() / reps;
    const double eval_us = std::chrono::duration<double, std::micro>(t2 - t1).count() / reps;
    (void)sink;
    std::cout << std::setw(6) << row.h << std::setw(12) << row.measured_bytes
              << std::setw(12) << row.formula_bytes << std::setw(12) << row.payload_bytes
              << std::setw(14) << std::fixed << std::setprecision(1) << gen_us
              << std::setw(14) << eval_us << "\n";
    rows.push_back({{"h", row.h},
                    {"key_bytes", row.measured_bytes},
                    {"formula_bytes", row.formula_bytes},
                    {"payload_bytes", row.payload_bytes},
                    {"gen_us", gen_us},
                    {"eval_us", eval_us}});
  }
  std::cout << "key_bytes = " << sweep.slope << " * h + " << sweep.intercept
            << ", max residual " << sweep.max_residual << "\n";
  return {{{"command", "bench"},
           {"rows", rows},
           {"slope", sweep.slope},
           {"intercept", sweep.intercept},
           {"max_residual", sweep.max_residual},
           {"ok", sweep.ok}},
          sweep.ok ? 0 : kExitImpossible};
}

CommandResult RunDemo(const DemoOptions& o) {
  const fs::path dir = o.outdir;
  fs::create_directories(dir);
  const ArtifactPaths paths{(dir / "params.json").string(), (dir / "scheme.json").string(),
                            (dir / "family.json").string()};
  std::cout << "[params]\n";
  RunParams({.primes = o.primes, .p = o.p, .tau = std::nullopt, .out = paths.params});
  std::cout << "[scheme]\n";
  RunScheme({.params = paths.params, .n_start = std::nullopt, .out = paths.scheme});
  std::cout << "[family]\n";
  RunFamily({.params = paths.params, .kind = "trivial", .h = o.h, .out = paths.family});
  std::cout << "[keygen]\n";
  const std::string keydir = (dir / "keys").string();
  RunKeygen({.artifacts = paths, .alpha = o.alpha, .beta = o.beta, .seed = o.seed,
             .outdir = keydir});
  std::cout << "[verify]\n";
  const auto verified = RunVerify({.artifacts = paths, .keys = keydir, .alpha = o.alpha,
                                   .beta = o.beta, .seed = o.seed});
  if (verified.exit_code != 0) return verified;

  std::cout << "[servers]\n";
  const Loaded a = LoadAll(paths);
  Rng db_rng(o.seed);
  std::vector<std::uint32_t> db(a.dpf.N());
  for (auto& v : db) v = static_cast<std::uint32_t>(db_rng.Below(a.params.p));
  WriteFile(dir / "db.txt", DbCanonicalText(db));

  std::vector<std::unique_ptr<demo::DemoServer>> servers;
  std::vector<demo::Endpoint> endpoints;
  std::vector<std::thread> loops;
  for (std::size_t i = 0; i < a.dpf.num_keys(); ++i) {
    servers.push_back(std::make_unique<demo::DemoServer>(i, a.dpf, db));
    endpoints.push_back({"127.0.0.1", servers.back()->Listen("127.0.0.1", 0)});
    loops.emplace_back([s = servers.back().get()] { s->Serve(); });
    std::cout << "server " << i << " on port " << endpoints.back().port << "\n";
  }
  const std::uint64_t alpha = CheckedPoint(o.alpha, a.dpf, "alpha");
  const std::uint32_t beta = CheckedResidue(o.beta, a.dpf, "beta");
  auto shutdown = [&] {
    for (auto& s : servers) s->Stop();
    for (auto& t : loops) t.join();
  };
  demo::QueryResult point, pir;
  try {
    point = demo::ClientQuery(a.dpf, endpoints, alpha, beta, o.seed, alpha, std::nullopt);
    pir = demo::ClientQuery(a.dpf, endpoints, alpha, 1, o.seed + 1, std::nullopt, DbDigest(db));
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();

  std::cout << "eval at x = alpha: " << point.value << " (beta = " << beta << ")\n"
            << "pir db[" << alpha << "] = " << pir.value << " (expected "
            << db[alpha - 1] << ")\n";
  const bool ok = point.value == beta && pir.value == db[alpha - 1];
  return {{{"command", "demo"},
           {"ok", ok},
           {"servers", endpoints.size()},
           {"eval", point.value},
           {"pir", pir.value},
           {"expected_pir", db[alpha - 1]},
           {"db_digest", pir.db_digest},
           {"outdir", o.outdir}},
          ok ? 0 : kExitImpossible};
}

CommandResult RunServe(const ServeOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  if (o.index >= a.dpf.num_keys()) {
    throw InputError("index " + std::to_string(o.index) + " outside [0, " +
                     std::to_string(a.dpf.num_keys()) + ")");
  }
  std::optional<std::vector<std::uint32_t>> db;
  if (o.db) db = ParseDb(ReadFile(*o.db), a.params.p);

  // Worker threads inherit the mask; only the signal thread receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  demo::DemoServer server(o.index, a.dpf, db);
  const std::uint16_t port = server.Listen(o.host, o.port);
  if (o.port_file) {
    const fs::path tmp = *o.port_file + ".tmp";
    WriteFile(tmp, std::to_string(port) + "\n");
    fs::rename(tmp, *o.port_file);
  }
  std::cout << "server " << o.index << " listening on " << o.host << ":" << port
            << (db ? " with db " + server.db_digest().substr(0, 16) : std::string())
            << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  server.Serve();
  waiter.join();
  return {{{"command", "serve"}, {"index", o.index}, {"port", port}, {"stopped", true}}};
}

CommandResult RunQuery(const QueryOptions& o) {
  const Loaded a = LoadAll(o.artifacts);
  const auto endpoints = demo::ParseEndpoints(o.servers);
  const std::uint64_t alpha = CheckedPoint(o.alpha, a.dpf, "alpha");
  const std::uint32_t beta = CheckedResidue(o.beta, a.dpf, "beta");

  std::optional<std::uint64_t> x;
  std::optional<std::string> digest;
  if (o.x) x = CheckedPoint(*o.x, a.dpf, "x");
  if (o.db) digest = DbDigest(ParseDb(ReadFile(*o.db), a.params.p));
  if (o.pir) {
    if (digest && *o.pir != "any" && *o.pir != *digest) {
      throw ArtifactMismatch("--pir digest does not match --db");
    }
    if (!digest) digest = *o.pir == "any" ? std::string() : *o.pir;
  }
  if (x.has_value() == digest.has_value()) {
    throw InputError("query needs exactly one of --x or --pir/--db");
  }
  const auto result = demo::ClientQuery(a.dpf, endpoints, alpha, beta, o.seed, x, digest);
  std::cout << (x ? "f(" + std::to_string(*x) + ")" : "db[alpha]") << " = " << result.value
            << "\n";
  json out = {{"command", "query"},
              {"mode", x ? "eval" : "pir"},
              {"value", result.value},
              {"responses", result.responses}};
  if (!x) out["db_digest"] = result.db_digest;
  return {out};
}

}  // namespace idpf::cli
