#include "idpf/dpf.h"

#include <string>

#include "idpf/errors.h"

namespace idpf {

Dpf::Dpf(UncheckedTag, DpfParams params, MatchingFamily family,
         InterpolationScheme scheme)
    : params_(std::move(params)),
      family_(std::move(family)),
      scheme_(std::move(scheme)) {}

Dpf Dpf::Unchecked(DpfParams params, MatchingFamily family,
                   InterpolationScheme scheme) {
  return Dpf(UncheckedTag{}, std::move(params), std::move(family),
             std::move(scheme));
}

Dpf::Dpf(DpfParams params, MatchingFamily family, InterpolationScheme scheme)
    : Dpf(UncheckedTag{}, std::move(params), std::move(family),
          std::move(scheme)) {
  if (family_.M != params_.M) {
    throw ArtifactMismatch("family modulus " + std::to_string(family_.M) +
                           " != M = " + std::to_string(params_.M));
  }
  if (family_.N() == 0) throw ArtifactMismatch("empty matching family");
  const FamilyCertificate cert = VerifyFamily(family_, params_.S_M);
  if (!cert.ok) {
    throw ArtifactMismatch("matching family rejected: " + cert.message);
  }
  if (scheme_.n() == 0 || scheme_.B_logs.size() != scheme_.n() ||
      scheme_.A.size() != scheme_.n()) {
    throw ArtifactMismatch("malformed interpolation scheme");
  }
  for (std::size_t l = 0; l < scheme_.n(); ++l) {
    if (scheme_.B_logs[l] >= params_.m ||
        params_.H[scheme_.B_logs[l]] != scheme_.B[l]) {
      throw ArtifactMismatch("scheme point b_" + std::to_string(l) +
                             " is not gamma^log");
    }
  }
  const SchemeReport report = VerifyScheme(params_, scheme_, 0);
  if (!report.ok) {
    throw ArtifactMismatch("interpolation scheme fails the S_M identity");
  }
}

PointFunction Dpf::MakePointFunction(std::uint64_t alpha,
                                     std::uint32_t beta) const {
  CheckPoint(alpha);
  if (beta >= params_.p) {
    throw InputError("beta = " + std::to_string(beta) + " is not below p = " +
                     std::to_string(params_.p));
  }
  return {.N = N(), .p = params_.p, .alpha = alpha, .beta = beta};
}

void Dpf::CheckPoint(std::uint64_t x) const {
  if (x < 1 || x > N()) {
    throw InputError("point " + std::to_string(x) + " outside [1, " +
                     std::to_string(N()) + "]");
  }
}

bool Dpf::InSubgroup(const FieldElement& z) const {
  const auto& ctx = params_.ctx;
  if (!ctx.Contains(z) || z.IsZero()) return false;
  return ctx.Pow(z, static_cast<std::int64_t>(params_.m)) == ctx.One();
}

FieldElement Dpf::Inner(const FieldVector& a, const FieldVector& b) const {
  if (a.size() != b.size()) throw InputError("inner product length mismatch");
  const auto& ctx = params_.ctx;
  FieldElement acc = ctx.Zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = ctx.Add(acc, ctx.Mul(a[i], b[i]));
  }
  return acc;
}

std::vector<Share1> Dpf::Share(std::uint64_t alpha,
                               const FieldVector& w) const {
  CheckPoint(alpha);
  if (w.size() != h()) throw InputError("w must have h entries");
  for (const auto& wi : w) {
    if (!InSubgroup(wi)) throw InputError("w entry outside H_m");
  }
  const auto& ctx = params_.ctx;
  const ExponentVector& v = family_.v(alpha);
  std::vector<Share1> shares;
  for (std::size_t l = 0; l < n(); ++l) {
    Share1 share{.ell = l, .c = {}};
    share.c.reserve(h() + 1);
    for (std::size_t i = 0; i < h(); ++i) {
      const auto exponent = static_cast<std::int64_t>(v[i] % params_.m);
      share.c.push_back(ctx.Mul(w[i], ctx.Pow(scheme_.B[l], exponent)));
    }
    share.c.push_back(scheme_.B[l]);
    shares.push_back(std::move(share));
  }
  return shares;
}

void Dpf::CheckShare(const Share1& share) const {
  if (share.ell >= n() || share.c.size() != h() + 1) {
    throw InputError("share does not fit this scheme");
  }
  for (std::size_t i = 0; i < h(); ++i) {
    if (share.c[i].IsZero()) throw InputError("share entry is zero");
  }
}

FieldElement Dpf::LineValue(std::uint64_t x, const Share1& share) const {
  CheckPoint(x);
  CheckShare(share);
  const auto& ctx = params_.ctx;
  const ExponentVector& u = family_.u(x);
  // F_x(z) = z^{u_x}: the encoding of the indicator database of x.
  FieldElement d = ctx.One();
  for (std::size_t i = 0; i < h(); ++i) {
    d = ctx.Mul(d, ctx.Pow(share.c[i],
                           static_cast<std::int64_t>(u[i] % params_.m)));
  }
  return d;
}

FieldVector Dpf::Gradient(std::uint64_t x, const Share1& share) const {
  return GradientFrom(x, share, LineValue(x, share));
}

FieldVector Dpf::GradientFrom(std::uint64_t x, const Share1& share,
                              const FieldElement& d) const {
  const auto& ctx = params_.ctx;
  const ExponentVector& u = family_.u(x);
  FieldVector grad;
  grad.reserve(h());
  for (std::size_t i = 0; i < h(); ++i) {
    // d/dz_i z^u = (u_i mod p) z^{u - e_i}; on H_m, z^{u - e_i} = z^u / z_i.
    const std::uint64_t multiplier = u[i] % params_.p;
    if (multiplier == 0) {
      grad.push_back(ctx.Zero());
      continue;
    }
    grad.push_back(ctx.MulScalar(ctx.Mul(d, ctx.Inv(share.c[i])), multiplier));
  }
  return grad;
}

ConvertedShare Dpf::Conv(std::size_t ell, std::uint64_t x,
                         const Share1& share) const {
  if (ell >= n() || share.ell != ell) {
    throw InputError("share does not belong to server slot " +
                     std::to_string(ell));
  }
  const auto& ctx = params_.ctx;
  const FieldElement d = LineValue(x, share);
  const FieldVector grad = GradientFrom(x, share, d);

  ConvertedShare out;
  out.reserve(h() + 1);
  out.push_back(ctx.Mul(scheme_.A[ell][0], d));
  const FieldElement scale = ctx.Mul(scheme_.A[ell][1], ctx.Inv(scheme_.B[ell]));
  for (std::size_t i = 0; i < h(); ++i) {
    out.push_back(ctx.Mul(scale, ctx.Mul(share.c[i], grad[i])));
  }
  return out;
}

FieldElement Dpf::Sigma(std::uint64_t alpha, const FieldVector& w) const {
  CheckPoint(alpha);
  const auto& ctx = params_.ctx;
  const ExponentVector& u = family_.u(alpha);
  FieldElement sigma = ctx.One();
  for (std::size_t i = 0; i < h(); ++i) {
    sigma = ctx.Mul(
        sigma, ctx.Pow(w[i], -static_cast<std::int64_t>(u[i] % params_.m)));
  }
  return sigma;
}

FieldVector Dpf::Psi(std::uint64_t alpha) const {
  CheckPoint(alpha);
  const auto& ctx = params_.ctx;
  FieldVector psi;
  psi.reserve(h() + 1);
  psi.push_back(ctx.One());
  for (auto vi : family_.v(alpha)) {
    psi.push_back(ctx.Constant(static_cast<std::int64_t>(vi % params_.p)));
  }
  return psi;
}

std::vector<DpfKey> Dpf::GenWith(const PointFunction& f, const FieldVector& w,
                                 const FieldVector& omega0) const {
  if (f.N != N() || f.p != params_.p || f.beta >= params_.p) {
    throw InputError("point function does not match this scheme");
  }
  const auto& ctx = params_.ctx;
  if (omega0.size() != h() + 1) throw InputError("omega_0 must have h+1 entries");
  for (const auto& o : omega0) {
    if (!ctx.Contains(o)) throw InputError("omega_0 entry outside F");
  }
  std::vector<Share1> shares = Share(f.alpha, w);

  const FieldElement scalar =
      ctx.Mul(Sigma(f.alpha, w), ctx.Constant(f.beta));
  FieldVector omega1;
  omega1.reserve(h() + 1);
  const FieldVector psi = Psi(f.alpha);
  for (std::size_t i = 0; i <= h(); ++i) {
    omega1.push_back(ctx.Sub(ctx.Mul(scalar, psi[i]), omega0[i]));
  }

  std::vector<DpfKey> keys;
  keys.reserve(num_keys());
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t l = 0; l < n(); ++l) {
      keys.push_back(DpfKey{.i = n() * j + l,
                            .j = j,
                            .ell = l,
                            .omega = j == 0 ? omega0 : omega1,
                            .share = shares[l]});
    }
  }
  return keys;
}

std::vector<DpfKey> Dpf::Gen(const PointFunction& f, Rng& rng) const {
  const auto& ctx = params_.ctx;
  FieldVector w;
  w.reserve(h());
  for (std::size_t i = 0; i < h(); ++i) {
    w.push_back(params_.H[rng.Below(params_.m)]);
  }
  FieldVector omega0;
  omega0.reserve(h() + 1);
  std::vector<std::uint32_t> coeffs(params_.tau);
  for (std::size_t i = 0; i <= h(); ++i) {
    for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.Below(params_.p));
    omega0.push_back(ctx.FromCoeffs(coeffs));
  }
  return GenWith(f, w, omega0);
}

std::uint32_t Dpf::Eval(const DpfKey& key, std::uint64_t x) const {
  if (key.omega.size() != h() + 1) throw InputError("omega has wrong length");
  return params_.ctx.Phi(Inner(key.omega, Conv(key.ell, x, key.share)));
}

std::vector<std::uint32_t> Dpf::FullEval(const DpfKey& key) const {
  std::vector<std::uint32_t> out;
  out.reserve(N());
  for (std::uint64_t x = 1; x <= N(); ++x) out.push_back(Eval(key, x));
  return out;
}

void Dpf::ValidateKey(const DpfKey& key) const {
  const auto& ctx = params_.ctx;
  if (key.i >= num_keys() || key.j != key.i / n() || key.ell != key.i % n()) {
    throw ArtifactMismatch("key index decomposition is inconsistent");
  }
  if (key.share.ell != key.ell) {
    throw ArtifactMismatch("share slot does not match key slot");
  }
  if (key.omega.size() != h() + 1 || key.share.c.size() != h() + 1) {
    throw ArtifactMismatch("key vectors must have h+1 entries");
  }
  for (const auto& o : key.omega) {
    if (!ctx.Contains(o)) throw ArtifactMismatch("omega entry outside F");
  }
  if (key.share.c[h()] != scheme_.B[key.ell]) {
    throw ArtifactMismatch("share's last entry is not b_ell");
  }
  for (std::size_t i = 0; i < h(); ++i) {
    if (!InSubgroup(key.share.c[i])) {
      throw ArtifactMismatch("share entry " + std::to_string(i) +
                             " is outside H_m");
    }
  }
}

}  // namespace idpf
