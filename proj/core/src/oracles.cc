#include "idpf/oracles.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "idpf/errors.h"
#include "idpf/key_codec.h"

namespace idpf::oracles {

namespace {

std::uint64_t RankOf(const FieldCtx& ctx, const FieldElement& z) {
  std::uint64_t rank = 0;
  for (auto c : z.coeffs()) rank = rank * ctx.p() + c;
  return rank;
}

// w^{u} with exponents reduced mod m, recomputed here rather than borrowed
// from Dpf.
FieldElement MonomialAt(const DpfParams& params, const FieldVector& w,
                        const ExponentVector& u, bool negate) {
  const auto& ctx = params.ctx;
  FieldElement acc = ctx.One();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto e = static_cast<std::int64_t>(u[i] % params.m);
    acc = ctx.Mul(acc, ctx.Pow(w[i], negate ? -e : e));
  }
  return acc;
}

FieldElement TableValue(const FieldCtx& ctx, const CoefficientTable& table,
                        const FieldElement& b) {
  FieldElement acc = ctx.Zero();
  for (const auto& [s, coeff] : table) {
    acc = ctx.Add(acc, ctx.Mul(coeff, ctx.Pow(b, static_cast<std::int64_t>(s))));
  }
  return acc;
}

FieldElement TableDerivative(const FieldCtx& ctx, const CoefficientTable& table,
                             const FieldElement& b) {
  FieldElement acc = ctx.Zero();
  for (const auto& [s, coeff] : table) {
    if (s == 0) continue;
    const FieldElement term =
        ctx.Mul(coeff, ctx.Pow(b, static_cast<std::int64_t>(s - 1)));
    acc = ctx.Add(acc, ctx.MulScalar(term, s));
  }
  return acc;
}

std::string Describe(std::uint64_t alpha, std::uint64_t x) {
  return "alpha=" + std::to_string(alpha) + " x=" + std::to_string(x);
}

}  // namespace

void CheckReport::Merge(const CheckReport& other) {
  cases += other.cases;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

nlohmann::json CheckReport::ToJson(const std::string& params_digest) const {
  return {{"check", check},
          {"params_digest", params_digest},
          {"cases", cases},
          {"failures", failures}};
}

CoefficientTable ReducedPoly(const Dpf& dpf, std::uint64_t alpha,
                             std::uint64_t x, const FieldVector& w) {
  const DpfParams& params = dpf.params();
  const MatchingFamily& family = dpf.family();
  const auto& ctx = params.ctx;
  const ExponentVector& v_alpha = family.v(alpha);
  CoefficientTable table;
  for (std::uint64_t j = 1; j <= family.N(); ++j) {
    const std::uint64_t s = DotMod(v_alpha, family.u(j), params.M);
    if (!std::binary_search(params.S_M.begin(), params.S_M.end(), s)) {
      throw ArtifactMismatch("v_alpha . u_j = " + std::to_string(s) +
                             " lies outside S_M (j=" + std::to_string(j) + ")");
    }
    if (j != x) continue;  // f_{j,1}(x) = 0
    const FieldElement term = MonomialAt(params, w, family.u(j), false);
    auto [it, inserted] = table.try_emplace(s, term);
    if (!inserted) it->second = ctx.Add(it->second, term);
  }
  std::erase_if(table, [](const auto& kv) { return kv.second.IsZero(); });
  return table;
}

FieldVector RandomW(const Dpf& dpf, Rng& rng) {
  FieldVector w;
  for (std::size_t i = 0; i < dpf.h(); ++i) {
    w.push_back(dpf.params().H[rng.Below(dpf.params().m)]);
  }
  return w;
}

CheckReport DerivativeCheck(const Dpf& dpf, std::uint64_t alpha,
                            std::uint64_t x, const FieldVector& w) {
  CheckReport report{.check = "derivative", .cases = 0, .failures = {}};
  const auto& ctx = dpf.params().ctx;
  CoefficientTable table;
  try {
    table = ReducedPoly(dpf, alpha, x, w);
  } catch (const ArtifactMismatch& e) {
    report.cases = 1;
    report.failures.push_back(Describe(alpha, x) + ": " + e.what());
    return report;
  }
  const std::vector<Share1> shares = dpf.Share(alpha, w);
  const ExponentVector& v_alpha = dpf.family().v(alpha);
  for (std::size_t l = 0; l < dpf.n(); ++l) {
    const FieldElement& b = dpf.scheme().B[l];
    const Share1& share = shares[l];
    ++report.cases;
    if (TableValue(ctx, table, b) != dpf.LineValue(x, share)) {
      report.failures.push_back(Describe(alpha, x) + " l=" + std::to_string(l) +
                                ": D~_x(b) != D_x(b)");
    }
    // <grad F_x(C(b)), b^{-1} C(b) (.) v_alpha>
    const FieldVector grad = dpf.Gradient(x, share);
    const FieldElement b_inv = ctx.Inv(b);
    FieldElement chain = ctx.Zero();
    for (std::size_t i = 0; i < dpf.h(); ++i) {
      const FieldElement c1 =
          ctx.MulScalar(ctx.Mul(b_inv, share.c[i]), v_alpha[i]);
      chain = ctx.Add(chain, ctx.Mul(grad[i], c1));
    }
    if (TableDerivative(ctx, table, b) != chain) {
      report.failures.push_back(Describe(alpha, x) + " l=" + std::to_string(l) +
                                ": derivative mismatch");
    }
  }
  return report;
}

CheckReport RhoIdentity(const Dpf& dpf, std::uint64_t alpha, std::uint64_t x,
                        const FieldVector& w) {
  CheckReport report{.check = "rho_identity", .cases = 1, .failures = {}};
  const DpfParams& params = dpf.params();
  const auto& ctx = params.ctx;
  CoefficientTable table;
  try {
    table = ReducedPoly(dpf, alpha, x, w);
  } catch (const ArtifactMismatch& e) {
    report.failures.push_back(Describe(alpha, x) + ": " + e.what());
    return report;
  }
  const std::vector<Share1> shares = dpf.Share(alpha, w);
  FieldVector s2(dpf.h() + 1, ctx.Zero());
  for (std::size_t l = 0; l < dpf.n(); ++l) {
    const ConvertedShare conv = dpf.Conv(l, x, shares[l]);
    for (std::size_t i = 0; i <= dpf.h(); ++i) s2[i] = ctx.Add(s2[i], conv[i]);
  }
  const ExponentVector& v_alpha = dpf.family().v(alpha);
  FieldElement rho = s2[0];
  for (std::size_t i = 0; i < dpf.h(); ++i) {
    rho = ctx.Add(rho, ctx.MulScalar(s2[i + 1], v_alpha[i]));
  }
  const auto constant = table.find(0);
  const FieldElement expected_rho =
      constant == table.end() ? ctx.Zero() : constant->second;
  if (rho != expected_rho) {
    report.failures.push_back(Describe(alpha, x) + ": rho != D~_x(0)");
  }
  const FieldElement sigma =
      MonomialAt(params, w, dpf.family().u(alpha), true);
  const std::uint32_t delta = ctx.Phi(ctx.Mul(rho, sigma));
  if (delta != (x == alpha ? 1u : 0u)) {
    report.failures.push_back(Describe(alpha, x) +
                              ": phi(rho * sigma) = " + std::to_string(delta));
  }
  return report;
}

DistributionReport CheckDistributionEquality(const Dpf& dpf,
                                             const PointFunction& f0,
                                             const PointFunction& f1,
                                             std::uint64_t enumeration_budget,
                                             std::uint64_t omega_budget) {
  DistributionReport report;
  const DpfParams& params = dpf.params();
  const auto& ctx = params.ctx;
  const std::size_t h = dpf.h();

  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < h; ++i) {
    total *= params.m;
    if (total > enumeration_budget) {
      report.skipped = true;
      report.failures.push_back("m^h exceeds the enumeration budget");
      return report;
    }
  }
  const auto count = static_cast<std::uint64_t>(total);
  report.enumerated_w = count;

  // Multisets of share ranks, one per (function, slot).
  using Multiset = std::vector<std::vector<std::uint64_t>>;
  std::vector<Multiset> seen0(dpf.n()), seen1(dpf.n());
  std::vector<std::uint64_t> digits(h, 0);
  FieldVector w(h);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < h; ++i) {
      digits[i] = rest % params.m;
      rest /= params.m;
      w[i] = params.H[digits[i]];
    }
    const auto shares0 = dpf.Share(f0.alpha, w);
    const auto shares1 = dpf.Share(f1.alpha, w);
    for (std::size_t l = 0; l < dpf.n(); ++l) {
      std::vector<std::uint64_t> r0, r1;
      for (std::size_t i = 0; i < h; ++i) {
        r0.push_back(RankOf(ctx, shares0[l].c[i]));
        r1.push_back(RankOf(ctx, shares1[l].c[i]));
      }
      seen0[l].push_back(std::move(r0));
      seen1[l].push_back(std::move(r1));
    }
  }
  for (std::size_t l = 0; l < dpf.n(); ++l) {
    std::sort(seen0[l].begin(), seen0[l].end());
    std::sort(seen1[l].begin(), seen1[l].end());
    if (seen0[l] != seen1[l]) {
      report.shares_identical = false;
      report.failures.push_back("c_" + std::to_string(l) +
                                " multisets differ between f0 and f1");
    }
    // Each share must be hit exactly once: a bijection of H_m^h.
    if (std::adjacent_find(seen0[l].begin(), seen0[l].end()) != seen0[l].end()) {
      report.shares_identical = false;
      report.failures.push_back("w -> c_" + std::to_string(l) +
                                " is not injective");
    }
  }

  // omega_1 = t - omega_0 for t = sigma * beta * psi(alpha).
  const std::size_t width = h + 1;
  const std::uint64_t field_size = *ctx.group_order() + 1;
  unsigned __int128 space = 1;
  for (std::size_t i = 0; i < width && space <= omega_budget; ++i) {
    space *= field_size;
  }
  for (const PointFunction* f : {&f0, &f1}) {
    // A handful of fixed w: the all-ones vector and a few spread indices.
    for (std::uint64_t sample = 0; sample < 3; ++sample) {
      for (std::size_t i = 0; i < h; ++i) {
        w[i] = params.H[(sample * (i + 1)) % params.m];
      }
      const FieldElement scalar =
          ctx.Mul(dpf.Sigma(f->alpha, w), ctx.Constant(f->beta));
      const FieldVector psi = dpf.Psi(f->alpha);
      FieldVector t;
      for (const auto& z : psi) t.push_back(ctx.Mul(scalar, z));

      auto image_rank = [&](std::uint64_t omega_rank) {
        std::uint64_t out = 0;
        std::uint64_t rest = omega_rank;
        std::vector<FieldElement> omega(width);
        for (std::size_t i = width; i-- > 0;) {
          omega[i] = ctx.ElementAtRank(rest % field_size);
          rest /= field_size;
        }
        for (std::size_t i = 0; i < width; ++i) {
          out = out * field_size + RankOf(ctx, ctx.Sub(t[i], omega[i]));
        }
        return out;
      };

      if (space <= omega_budget) {
        const auto size = static_cast<std::uint64_t>(space);
        std::vector<bool> hit(size, false);
        for (std::uint64_t r = 0; r < size; ++r) {
          const std::uint64_t img = image_rank(r);
          if (hit[img]) {
            report.omega_bijective = false;
            break;
          }
          hit[img] = true;
        }
      } else {
        // Injective on a sample; a translation of a finite set is then
        // surjective by cardinality.
        std::set<std::uint64_t> images;
        const std::uint64_t limit =
            space > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(space);
        Rng rng(sample + 1);
        std::set<std::uint64_t> drawn;
        for (int k = 0; k < 2000; ++k) {
          const std::uint64_t r = rng.Below(limit);
          if (!drawn.insert(r).second) continue;
          if (!images.insert(image_rank(r)).second) {
            report.omega_bijective = false;
          }
        }
      }
    }
  }
  if (!report.omega_bijective) {
    report.failures.push_back("omega_0 -> omega_1 is not a bijection");
  }
  return report;
}

KeySizeReport MeasureKeySize(const Dpf& dpf) {
  const auto& ctx = dpf.params().ctx;
  Rng rng(7);
  const auto keys = dpf.Gen(dpf.MakePointFunction(1, 0), rng);
  const auto bytes = EncodeKey(ctx, keys.back());
  std::size_t slot = 1;
  while ((std::uint64_t{1} << (8 * slot)) < ctx.p()) ++slot;
  KeySizeReport report;
  report.h = dpf.h();
  report.measured_bytes = bytes.size();
  report.header_bytes = 4 + 1 + 2;
  report.payload_bytes = 2 * (dpf.h() + 1) * ctx.tau() * slot;
  report.formula_bytes = report.header_bytes + report.payload_bytes;
  return report;
}

KeySizeSweep SweepKeySize(const DpfParams& params,
                          const InterpolationScheme& scheme,
                          const std::vector<std::size_t>& hs) {
  KeySizeSweep sweep;
  for (auto h : hs) {
    Dpf dpf(params, TrivialFamily(params.M, h), scheme);
    sweep.rows.push_back(MeasureKeySize(dpf));
    sweep.ok = sweep.ok && sweep.rows.back().ok();
  }
  const double n = static_cast<double>(sweep.rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : sweep.rows) {
    const double x = static_cast<double>(row.h);
    const double y = static_cast<double>(row.measured_bytes);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (sweep.rows.size() >= 2 && denom != 0) {
    sweep.slope = (n * sxy - sx * sy) / denom;
    sweep.intercept = (sy - sweep.slope * sx) / n;
    for (const auto& row : sweep.rows) {
      const double fit = sweep.slope * static_cast<double>(row.h) + sweep.intercept;
      sweep.max_residual = std::max(
          sweep.max_residual,
          std::abs(fit - static_cast<double>(row.measured_bytes)));
    }
  }
  return sweep;
}

std::uint32_t Reconstruct(const Dpf& dpf, const std::vector<DpfKey>& keys,
                          std::uint64_t x) {
  std::uint64_t sum = 0;
  for (const auto& key : keys) sum += dpf.Eval(key, x);
  return static_cast<std::uint32_t>(sum % dpf.params().p);
}

CheckReport ExhaustiveCorrectness(const Dpf& dpf,
                                  const std::vector<std::uint32_t>& betas,
                                  const std::vector<std::uint64_t>& seeds) {
  CheckReport report{.check = "correctness", .cases = 0, .failures = {}};
  for (auto seed : seeds) {
    for (std::uint64_t alpha = 1; alpha <= dpf.N(); ++alpha) {
      for (auto beta : betas) {
        Rng rng(seed);
        const PointFunction f = dpf.MakePointFunction(alpha, beta);
        const auto keys = dpf.Gen(f, rng);
        for (std::uint64_t x = 1; x <= dpf.N(); ++x) {
          ++report.cases;
          const std::uint32_t got = Reconstruct(dpf, keys, x);
          if (got != f(x)) {
            report.failures.push_back(
                "seed=" + std::to_string(seed) + " " + Describe(alpha, x) +
                " beta=" + std::to_string(beta) + ": got " + std::to_string(got));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace idpf::oracles
