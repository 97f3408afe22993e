#include "idpf/dpf.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "idpf/errors.h"
#include "fixtures.h"

namespace idpf {
namespace {

using testing::Dpf511;
using testing::Dpf6;
using testing::SumFullEval;

FieldVector Ones(const Dpf& dpf) { return FieldVector(dpf.h(), dpf.params().ctx.One()); }

FieldVector SpreadW(const Dpf& dpf, std::uint64_t salt) {
  FieldVector w;
  for (std::size_t i = 0; i < dpf.h(); ++i) {
    w.push_back(dpf.params().H[(salt * 31 + i * 7 + 1) % dpf.params().m]);
  }
  return w;
}

std::uint64_t Rank(const FieldCtx& ctx, const FieldElement& z) {
  std::uint64_t r = 0;
  for (auto c : z.coeffs()) r = r * ctx.p() + c;
  return r;
}

TEST(DpfTest, ZeroVAlphaGivesPlainW) {
  // h = 1: v_1 = 1 - e_1 is the zero vector.
  const Dpf dpf = Dpf6(1);
  const FieldVector w = {dpf.params().H[5]};
  for (const auto& share : dpf.Share(1, w)) {
    EXPECT_EQ(share.c[0], w[0]);
    EXPECT_EQ(share.c[1], dpf.scheme().B[share.ell]);
  }
}

TEST(DpfTest, ShareEntriesMatchDirectExponentiation) {
  const Dpf dpf = Dpf6(3);
  const auto& ctx = dpf.params().ctx;
  const auto shares = dpf.Share(2, Ones(dpf));
  // v_2 = (1, 0, 1).
  for (const auto& share : shares) {
    const FieldElement& b = dpf.scheme().B[share.ell];
    EXPECT_EQ(share.c[0], b);
    EXPECT_EQ(share.c[1], ctx.One());
    EXPECT_EQ(share.c[2], b);
  }
  const FieldVector w = SpreadW(dpf, 4);
  for (const auto& share : dpf.Share(3, w)) {
    const FieldElement& b = dpf.scheme().B[share.ell];
    EXPECT_EQ(share.c[0], ctx.Mul(w[0], b));
    EXPECT_EQ(share.c[1], ctx.Mul(w[1], b));
    EXPECT_EQ(share.c[2], w[2]);
  }
}

TEST(DpfTest, ShareRejectsBadW) {
  const Dpf dpf = Dpf6(2);
  const auto& ctx = dpf.params().ctx;
  EXPECT_THROW(dpf.Share(1, {ctx.One()}), InputError);
  EXPECT_THROW(dpf.Share(1, {ctx.One(), ctx.Constant(2)}), InputError);
  EXPECT_THROW(dpf.Share(3, Ones(dpf)), InputError);
}

TEST(DpfTest, TrivialFamilyConv) {
  const Dpf dpf = Dpf511(5);
  const auto& ctx = dpf.params().ctx;
  const FieldVector w = SpreadW(dpf, 2);
  const auto shares = dpf.Share(4, w);
  for (std::uint64_t x = 1; x <= dpf.N(); ++x) {
    for (const auto& share : shares) {
      EXPECT_EQ(dpf.LineValue(x, share), share.c[x - 1]);
      const FieldVector grad = dpf.Gradient(x, share);
      for (std::size_t i = 0; i < dpf.h(); ++i) {
        EXPECT_EQ(grad[i], i + 1 == x ? ctx.One() : ctx.Zero());
      }
      const auto conv = dpf.Conv(share.ell, x, share);
      const auto& a = dpf.scheme().A[share.ell];
      EXPECT_EQ(conv[0], ctx.Mul(a[0], share.c[x - 1]));
      EXPECT_EQ(conv[x], ctx.Mul(ctx.Mul(a[1], ctx.Inv(dpf.scheme().B[share.ell])),
                                 share.c[x - 1]));
    }
  }
  EXPECT_THROW(dpf.Conv(1, 1, shares[0]), InputError);
  EXPECT_THROW(dpf.Conv(0, 6, shares[0]), InputError);
}

TEST(DpfTest, ExhaustiveCorrectness511) {
  const Dpf dpf = Dpf511(16);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (std::uint64_t alpha = 1; alpha <= 16; ++alpha) {
      Rng rng(seed * 1000 + alpha);
      const auto keys = dpf.Gen(dpf.MakePointFunction(alpha, 1), rng);
      ASSERT_EQ(keys.size(), 6u);
      const auto sum = SumFullEval(dpf, keys);
      for (std::uint64_t x = 1; x <= 16; ++x) {
        ASSERT_EQ(sum[x - 1], x == alpha ? 1u : 0u) << "alpha=" << alpha << " x=" << x;
      }
    }
  }
}

TEST(DpfTest, ExhaustiveCorrectness6) {
  const Dpf dpf = Dpf6(8);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (std::uint64_t alpha = 1; alpha <= 8; ++alpha) {
      for (std::uint32_t beta = 0; beta < 5; ++beta) {
        Rng rng(seed * 7919 + alpha * 5 + beta);
        const auto keys = dpf.Gen(dpf.MakePointFunction(alpha, beta), rng);
        ASSERT_EQ(keys.size(), 8u);
        const auto sum = SumFullEval(dpf, keys);
        for (std::uint64_t x = 1; x <= 8; ++x) {
          ASSERT_EQ(sum[x - 1], x == alpha ? beta : 0u)
              << "alpha=" << alpha << " beta=" << beta << " x=" << x;
        }
      }
    }
  }
}

TEST(DpfTest, KeyLayout) {
  const Dpf dpf = Dpf6(4);
  Rng rng(3);
  const auto keys = dpf.Gen(dpf.MakePointFunction(2, 3), rng);
  for (const auto& k : keys) {
    EXPECT_EQ(k.j, k.i / dpf.n());
    EXPECT_EQ(k.ell, k.i % dpf.n());
    EXPECT_EQ(k.share.ell, k.ell);
    EXPECT_EQ(k.omega, keys[k.j * dpf.n()].omega);
    EXPECT_EQ(k.share, keys[k.ell].share);
    EXPECT_EQ(k.share.c.back(), dpf.scheme().B[k.ell]);
    EXPECT_NO_THROW(dpf.ValidateKey(k));
  }
}

TEST(DpfTest, OmegaSumIsSigmaBetaPsi) {
  const Dpf dpf = Dpf6(4);
  const auto& ctx = dpf.params().ctx;
  const FieldVector w = SpreadW(dpf, 1);
  FieldVector omega0;
  for (std::size_t i = 0; i <= dpf.h(); ++i) omega0.push_back(ctx.ElementAtRank(3 * i + 2));
  const auto f = dpf.MakePointFunction(3, 2);
  const auto keys = dpf.GenWith(f, w, omega0);
  const FieldVector psi = dpf.Psi(3);
  EXPECT_EQ(psi[0], ctx.One());
  const FieldElement sigma = dpf.Sigma(3, w);
  // Trivial family: u_3 = e_3, so sigma = w_3^{-1}.
  EXPECT_EQ(sigma, ctx.Inv(w[2]));
  for (std::size_t i = 0; i <= dpf.h(); ++i) {
    EXPECT_EQ(ctx.Add(keys[0].omega[i], keys[dpf.n()].omega[i]),
              ctx.Mul(ctx.Mul(sigma, ctx.Constant(2)), psi[i]));
  }
  EXPECT_EQ(keys[0].omega, omega0);
}

TEST(DpfTest, ZeroBetaIsZeroFunction) {
  const Dpf dpf = Dpf511(16);
  Rng rng(11);
  const auto keys = dpf.Gen(dpf.MakePointFunction(7, 0), rng);
  const auto& ctx = dpf.params().ctx;
  for (std::size_t i = 0; i <= dpf.h(); ++i) {
    EXPECT_TRUE(ctx.Add(keys[0].omega[i], keys[dpf.n()].omega[i]).IsZero());
  }
  for (auto y : SumFullEval(dpf, keys)) EXPECT_EQ(y, 0u);
}

TEST(DpfTest, BilinearRegrouping) {
  for (const Dpf& dpf : {Dpf511(8), Dpf6(6)}) {
    const auto& ctx = dpf.params().ctx;
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      const std::uint64_t alpha = rng.Below(dpf.N()) + 1;
      const auto beta = static_cast<std::uint32_t>(rng.Below(dpf.params().p));
      const auto keys = dpf.Gen(dpf.MakePointFunction(alpha, beta), rng);
      FieldVector omega_sum;
      for (std::size_t i = 0; i <= dpf.h(); ++i) {
        omega_sum.push_back(ctx.Add(keys[0].omega[i], keys[dpf.n()].omega[i]));
      }
      for (std::uint64_t x = 1; x <= dpf.N(); ++x) {
        FieldVector conv_sum(dpf.h() + 1, ctx.Zero());
        for (std::size_t l = 0; l < dpf.n(); ++l) {
          const auto conv = dpf.Conv(l, x, keys[l].share);
          for (std::size_t i = 0; i <= dpf.h(); ++i) conv_sum[i] = ctx.Add(conv_sum[i], conv[i]);
        }
        std::uint64_t total = 0;
        for (const auto& k : keys) total += dpf.Eval(k, x);
        EXPECT_EQ(total % dpf.params().p, ctx.Phi(dpf.Inner(omega_sum, conv_sum)));
      }
    }
  }
}

TEST(DpfTest, SingleShareIsBijectionOfSubgroupPower) {
  const Dpf dpf = Dpf6(2);
  const auto& H = dpf.params().H;
  const std::size_t m = dpf.params().m;
  for (std::uint64_t alpha = 1; alpha <= dpf.N(); ++alpha) {
    std::map<std::size_t, std::set<std::vector<std::string>>> images;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        for (const auto& share : dpf.Share(alpha, {H[a], H[b]})) {
          images[share.ell].insert({share.c[0].ToString(), share.c[1].ToString()});
          EXPECT_TRUE(dpf.InSubgroup(share.c[0]));
          EXPECT_TRUE(dpf.InSubgroup(share.c[1]));
        }
      }
    }
    for (const auto& [ell, image] : images) EXPECT_EQ(image.size(), m * m) << ell;
  }
}

// Exact multiset of key i over all (w, omega_0) for f0 and f1.
TEST(DpfTest, KeyDistributionIndependentOfFunction) {
  const Dpf dpf = Dpf6(2);
  const auto& ctx = dpf.params().ctx;
  const auto& H = dpf.params().H;
  const std::uint64_t q = *ctx.group_order() + 1;
  const std::uint64_t omegas = q * q * q;

  auto collect = [&](const PointFunction& f) {
    std::vector<std::vector<std::uint64_t>> per_index(dpf.num_keys());
    for (auto& v : per_index) v.reserve(36 * omegas);
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        const FieldVector w = {H[a], H[b]};
        for (std::uint64_t code = 0; code < omegas; ++code) {
          const FieldVector omega0 = {ctx.ElementAtRank(code % q), ctx.ElementAtRank(code / q % q),
                                      ctx.ElementAtRank(code / q / q)};
          for (const auto& k : dpf.GenWith(f, w, omega0)) {
            std::uint64_t enc = 0;
            for (const auto& z : k.omega) enc = enc * q + Rank(ctx, z);
            for (const auto& z : k.share.c) enc = enc * q + Rank(ctx, z);
            per_index[k.i].push_back(enc);
          }
        }
      }
    }
    for (auto& v : per_index) std::sort(v.begin(), v.end());
    return per_index;
  };
  const auto k0 = collect(dpf.MakePointFunction(1, 1));
  const auto k1 = collect(dpf.MakePointFunction(2, 3));
  for (std::size_t i = 0; i < dpf.num_keys(); ++i) {
    EXPECT_EQ(k0[i].size(), 36 * omegas);
    EXPECT_TRUE(k0[i] == k1[i]) << "key " << i;
  }
}

TEST(DpfTest, ExponentShiftByMIsInvisible) {
  const DpfParams& params = testing::Params6();
  const MatchingFamily base = TrivialFamily(params.M, 4);
  MatchingFamily shifted = base;
  for (auto& u : shifted.U) {
    for (auto& e : u) e += params.M;
  }
  for (auto& v : shifted.V) {
    for (auto& e : v) e += 3 * params.M;
  }
  const Dpf a(params, base, testing::Scheme6());
  const Dpf b = Dpf::Unchecked(params, shifted, testing::Scheme6());
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    FieldVector w;
    for (std::size_t i = 0; i < 4; ++i) w.push_back(params.H[rng.Below(params.m)]);
    const std::uint64_t alpha = rng.Below(4) + 1;
    const auto sa = a.Share(alpha, w);
    EXPECT_EQ(sa, b.Share(alpha, w));
    EXPECT_EQ(a.Sigma(alpha, w), b.Sigma(alpha, w));
    EXPECT_EQ(a.Psi(alpha), b.Psi(alpha));
    for (std::uint64_t x = 1; x <= 4; ++x) {
      for (const auto& s : sa) EXPECT_EQ(a.Conv(s.ell, x, s), b.Conv(s.ell, x, s));
    }
  }
}

TEST(DpfTest, GenDrawsWThenOmega) {
  const Dpf dpf = Dpf6(3);
  const auto& params = dpf.params();
  Rng rng(77);
  const auto f = dpf.MakePointFunction(2, 4);
  const auto keys = dpf.Gen(f, rng);

  Rng replay(77);
  FieldVector w;
  for (std::size_t i = 0; i < 3; ++i) w.push_back(params.H[replay.Below(params.m)]);
  FieldVector omega0;
  for (std::size_t i = 0; i <= 3; ++i) {
    std::vector<std::uint32_t> coeffs(params.tau);
    for (auto& c : coeffs) c = static_cast<std::uint32_t>(replay.Below(params.p));
    omega0.push_back(params.ctx.FromCoeffs(coeffs));
  }
  EXPECT_EQ(keys, dpf.GenWith(f, w, omega0));

  Rng again(77);
  EXPECT_EQ(keys, dpf.Gen(f, again));
}

TEST(DpfTest, EvalEdges) {
  const Dpf dpf = Dpf6(4);
  Rng rng(2);
  auto keys = dpf.Gen(dpf.MakePointFunction(1, 1), rng);
  EXPECT_THROW(dpf.Eval(keys[0], 0), InputError);
  EXPECT_THROW(dpf.Eval(keys[0], 5), InputError);
  DpfKey zero = keys[0];
  for (auto& o : zero.omega) o = dpf.params().ctx.Zero();
  for (auto y : dpf.FullEval(zero)) EXPECT_EQ(y, 0u);
  EXPECT_EQ(dpf.FullEval(keys[1]), dpf.FullEval(keys[1]));

  const Dpf single = Dpf6(1);
  Rng r1(1);
  const auto k1 = single.Gen(single.MakePointFunction(1, 3), r1);
  EXPECT_EQ(single.FullEval(k1[0]), std::vector<std::uint32_t>{single.Eval(k1[0], 1)});
  EXPECT_EQ(SumFullEval(single, k1), std::vector<std::uint32_t>{3});
}

TEST(DpfTest, PointFunctionValidation) {
  const Dpf dpf = Dpf6(4);
  EXPECT_THROW(dpf.MakePointFunction(0, 1), InputError);
  EXPECT_THROW(dpf.MakePointFunction(5, 1), InputError);
  EXPECT_THROW(dpf.MakePointFunction(1, 5), InputError);
  const auto f = dpf.MakePointFunction(2, 4);
  EXPECT_EQ(f(2), 4u);
  EXPECT_EQ(f(3), 0u);
}

TEST(DpfTest, ValidateKeyRejectsTampering) {
  const Dpf dpf = Dpf6(4);
  const auto& ctx = dpf.params().ctx;
  Rng rng(8);
  const auto keys = dpf.Gen(dpf.MakePointFunction(2, 1), rng);

  DpfKey k = keys[1];
  k.share.c.back() = ctx.One();
  EXPECT_THROW(dpf.ValidateKey(k), ArtifactMismatch);

  k = keys[1];
  k.share.c[0] = ctx.Parse("2,0");  // 2 has order 4, outside H_6
  EXPECT_THROW(dpf.ValidateKey(k), ArtifactMismatch);

  k = keys[1];
  k.j = 1;
  EXPECT_THROW(dpf.ValidateKey(k), ArtifactMismatch);

  k = keys[1];
  k.omega.pop_back();
  EXPECT_THROW(dpf.ValidateKey(k), ArtifactMismatch);
}

TEST(DpfTest, ConstructorChecksCompatibility) {
  const DpfParams& p = testing::Params6();
  EXPECT_THROW(Dpf(p, TrivialFamily(p.M + 1, 4), testing::Scheme6()), ArtifactMismatch);
  auto bad_family = TrivialFamily(p.M, 4);
  bad_family.V[0][1] = 2;
  EXPECT_THROW(Dpf(p, bad_family, testing::Scheme6()), ArtifactMismatch);
  auto bad_scheme = testing::Scheme6();
  bad_scheme.A[0][0] = p.ctx.Add(bad_scheme.A[0][0], p.ctx.One());
  EXPECT_THROW(Dpf(p, TrivialFamily(p.M, 4), bad_scheme), ArtifactMismatch);
  auto moved = testing::Scheme6();
  moved.B[1] = moved.B[2];
  EXPECT_THROW(Dpf(p, TrivialFamily(p.M, 4), moved), ArtifactMismatch);
}

}  // namespace
}  // namespace idpf
