#include "idpf/interpolation.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "idpf/errors.h"
#include "idpf/linear_solver.h"
#include "idpf/rng.h"

namespace idpf {

unsigned WorkerCount() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("IDPF_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

FieldElement HasseMonomial(const DpfParams& params, std::uint64_t s, int k,
                           const FieldElement& b) {
  const auto& ctx = params.ctx;
  const std::int64_t m = static_cast<std::int64_t>(params.m);
  const std::int64_t sm = static_cast<std::int64_t>(s % params.m);
  switch (k) {
    case 0:
      return ctx.Pow(b, sm);
    case 1: {
      const std::uint64_t multiplier = s % params.p;
      if (multiplier == 0) return ctx.Zero();
      return ctx.MulScalar(ctx.Pow(b, (sm - 1 + m) % m), multiplier);
    }
    default:
      throw InputError("unsupported Hasse derivative order " +
                       std::to_string(k));
  }
}

namespace {

// b^s for b = gamma^log, using the subgroup table.
const FieldElement& SubgroupPower(const DpfParams& params, std::uint64_t log,
                                  std::uint64_t s) {
  return params.H[static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(log) * (s % params.m) % params.m)];
}

std::optional<std::vector<FieldElement>> SolveMult1(
    const DpfParams& params, const std::vector<std::uint64_t>& logs) {
  const auto& ctx = params.ctx;
  FieldMatrix rows;
  std::vector<FieldElement> rhs;
  rows.reserve(params.S_m.size());
  for (auto s : params.S_m) {
    std::vector<FieldElement> row;
    row.reserve(logs.size());
    for (auto log : logs) row.push_back(SubgroupPower(params, log, s));
    rows.push_back(std::move(row));
    rhs.push_back(s == 0 ? ctx.One() : ctx.Zero());
  }
  return SolveLinearSystem(ctx, std::move(rows), std::move(rhs));
}

// Advances a sorted combination of size n over [0, m); false at the end.
bool NextCombination(std::vector<std::uint64_t>& c, std::uint64_t m,
                     std::size_t fixed_prefix) {
  const std::size_t n = c.size();
  for (std::size_t i = n; i-- > fixed_prefix;) {
    if (c[i] < m - (n - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Mult1Scheme> FindMult1SchemeOfSize(const DpfParams& params,
                                                 std::size_t n) {
  const std::uint64_t m = params.m;
  if (n == 0 || n > m) return std::nullopt;

  // Work is split by the smallest element of the subset. Each first element
  // is scanned in lexicographic order, so the lowest first element with a
  // solution yields the globally first subset.
  std::atomic<std::uint64_t> best_first{m};
  std::mutex mu;
  std::optional<Mult1Scheme> best;

  auto scan_first = [&](std::uint64_t first) {
    std::vector<std::uint64_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = first + i;
    if (c.back() >= m) return;
    do {
      if (best_first.load() < first) return;
      if (auto coeffs = SolveMult1(params, c)) {
        std::lock_guard<std::mutex> lock(mu);
        if (first < best_first.load()) {
          best_first.store(first);
          best = Mult1Scheme{.B_logs = c, .coeffs = std::move(*coeffs)};
        }
        return;
      }
    } while (NextCombination(c, m, 1));
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(WorkerCount(), m));
  if (workers <= 1) {
    for (std::uint64_t first = 0; first < m && !best; ++first) {
      scan_first(first);
    }
    return best;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t first = t; first < m; first += workers) {
        if (best_first.load() < first) return;
        scan_first(first);
      }
    });
  }
  for (auto& th : pool) th.join();
  return best;
}

Mult1Search FindMult1Scheme(const DpfParams& params, std::size_t n_start) {
  if (n_start == 0) throw InputError("n_start must be at least 1");
  Mult1Search search;
  for (std::size_t n = n_start; n <= params.m; ++n) {
    if (auto found = FindMult1SchemeOfSize(params, n)) {
      search.scheme = std::move(*found);
      search.n = n;
      return search;
    }
    search.exhausted.push_back(n);
  }
  throw ImpossibleParams("no 0-interpolating subset of H_m for S_m");
}

std::vector<std::array<FieldElement, 2>> LiftToMult2(
    const DpfParams& params, const std::vector<std::uint64_t>& B_logs) {
  const auto& ctx = params.ctx;
  const std::uint64_t m = params.m;
  FieldMatrix rows;
  std::vector<FieldElement> rhs;
  for (auto s : params.S_M) {
    std::vector<FieldElement> row;
    for (auto log : B_logs) {
      row.push_back(SubgroupPower(params, log, s % m));
      const std::uint64_t multiplier = s % params.p;
      row.push_back(multiplier == 0
                        ? ctx.Zero()
                        : ctx.MulScalar(
                              SubgroupPower(params, log, (s % m + m - 1) % m),
                              multiplier));
    }
    rows.push_back(std::move(row));
    rhs.push_back(s == 0 ? ctx.One() : ctx.Zero());
  }
  auto solution = SolveLinearSystem(ctx, std::move(rows), std::move(rhs));
  if (!solution) {
    throw LiftFailure(
        "multiplicity-2 system over S_M is inconsistent for a certified "
        "multiplicity-1 set; parameters or implementation are broken");
  }
  std::vector<std::array<FieldElement, 2>> A;
  for (std::size_t l = 0; l < B_logs.size(); ++l) {
    A.push_back({(*solution)[2 * l], (*solution)[2 * l + 1]});
  }
  return A;
}

SchemeReport VerifyScheme(const DpfParams& params,
                          const InterpolationScheme& scheme,
                          std::size_t random_polys, std::uint64_t seed) {
  const auto& ctx = params.ctx;
  SchemeReport report;
  if (scheme.A.size() != scheme.B.size()) {
    report.ok = false;
    return report;
  }
  for (auto s : params.S_M) {
    FieldElement acc = ctx.Zero();
    for (std::size_t l = 0; l < scheme.n(); ++l) {
      for (int k = 0; k < 2; ++k) {
        acc = ctx.Add(acc, ctx.Mul(scheme.A[l][k],
                                   HasseMonomial(params, s, k, scheme.B[l])));
      }
    }
    if (acc != (s == 0 ? ctx.One() : ctx.Zero())) {
      report.ok = false;
      report.violated_s.push_back(s);
    }
  }

  // Dense evaluation: R(b) and R'(b) by Horner over all M coefficients, with
  // exponents left unreduced.
  Rng rng(seed);
  const std::uint64_t M = params.M;
  for (std::size_t trial = 0; trial < random_polys; ++trial) {
    std::vector<FieldElement> coeffs(M, ctx.Zero());
    for (auto s : params.S_M) {
      std::vector<std::uint32_t> c(params.tau);
      for (auto& x : c) x = static_cast<std::uint32_t>(rng.Below(params.p));
      coeffs[s] = ctx.FromCoeffs(c);
    }
    FieldElement recovered = ctx.Zero();
    for (std::size_t l = 0; l < scheme.n(); ++l) {
      const FieldElement& b = scheme.B[l];
      FieldElement value = ctx.Zero();
      FieldElement deriv = ctx.Zero();
      for (std::uint64_t s = M; s-- > 0;) {
        value = ctx.Add(ctx.Mul(value, b), coeffs[s]);
        if (s >= 1) {
          deriv = ctx.Add(ctx.Mul(deriv, b), ctx.MulScalar(coeffs[s], s));
        }
      }
      recovered = ctx.Add(recovered, ctx.Add(ctx.Mul(scheme.A[l][0], value),
                                             ctx.Mul(scheme.A[l][1], deriv)));
    }
    ++report.random_checks;
    if (recovered != coeffs[0]) {
      ++report.random_failures;
      report.ok = false;
    }
  }
  return report;
}

SchemeBuild BuildScheme(const DpfParams& params, std::size_t n_start) {
  Mult1Search search = FindMult1Scheme(params, n_start);
  InterpolationScheme scheme;
  scheme.B_logs = search.scheme.B_logs;
  for (auto log : scheme.B_logs) scheme.B.push_back(params.H[log]);
  scheme.mult1 = search.scheme.coeffs;
  scheme.A = LiftToMult2(params, scheme.B_logs);
  const SchemeReport report = VerifyScheme(params, scheme);
  if (!report.ok) {
    throw LiftFailure("lifted scheme failed its independent certificate");
  }
  return {.scheme = std::move(scheme), .exhausted = std::move(search.exhausted)};
}

}  // namespace idpf
