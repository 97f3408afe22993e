#include "idpf/field.h"

#include <charconv>

#include "idpf/errors.h"
#include "idpf/zp_poly.h"

namespace idpf {

namespace {

FieldElement PowUnsigned(const FieldCtx& ctx, FieldElement base,
                         std::uint64_t e) {
  FieldElement result = ctx.One();
  while (e > 0) {
    if (e & 1) result = ctx.Mul(result, base);
    e >>= 1;
    if (e > 0) base = ctx.Mul(base, base);
  }
  return result;
}

}  // namespace

bool FieldElement::IsZero() const {
  for (int i = 0; i < tau_; ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

std::string FieldElement::ToString() const {
  std::string out;
  for (int i = 0; i < tau_; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  if (auto c = a.tau_ <=> b.tau_; c != 0) return c;
  for (int i = 0; i < a.tau_; ++i) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> zeta)
    : p_(p), zeta_(std::move(zeta)) {
  if (p_ > kMaxCharacteristic || !zp_poly::IsPrime(p_)) {
    throw ParamError("field characteristic " + std::to_string(p_) +
                     " is not a prime <= 2^16");
  }
  const int degree = zp_poly::Degree(zeta_);
  if (degree < 1 || degree > kMaxExtensionDegree ||
      zeta_.size() != static_cast<std::size_t>(degree) + 1) {
    throw ParamError("zeta must have degree 1..32 with no trailing zeros");
  }
  if (zeta_.back() != 1) throw ParamError("zeta must be monic");
  for (auto c : zeta_) {
    if (c >= p_) throw ParamError("zeta coefficient out of range");
  }
  if (!zp_poly::IsIrreducible(zeta_, p_)) {
    throw ParamError("zeta is reducible over Z_p");
  }
  tau_ = degree;
  unsigned __int128 q = 1;
  bool fits = true;
  for (int i = 0; i < tau_ && fits; ++i) {
    q *= p_;
    if (q > UINT64_MAX) fits = false;
  }
  if (fits) group_order_ = static_cast<std::uint64_t>(q - 1);
}

void FieldCtx::Check(const FieldElement& a) const {
  if (a.tau_ != tau_) {
    throw ParamError("field element of degree " + std::to_string(a.tau_) +
                     " used in a degree " + std::to_string(tau_) + " field");
  }
}

bool FieldCtx::Contains(const FieldElement& a) const {
  if (a.tau_ != tau_) return false;
  for (int i = 0; i < tau_; ++i) {
    if (a.coeffs_[i] >= p_) return false;
  }
  return true;
}

FieldElement FieldCtx::Zero() const {
  FieldElement z;
  z.tau_ = static_cast<std::uint8_t>(tau_);
  return z;
}

FieldElement FieldCtx::One() const { return Constant(1); }

FieldElement FieldCtx::Constant(std::int64_t c) const {
  FieldElement z = Zero();
  std::int64_t r = c % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  z.coeffs_[0] = static_cast<std::uint16_t>(r);
  return z;
}

FieldElement FieldCtx::FromCoeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(tau_)) {
    throw ParamError("expected " + std::to_string(tau_) + " coefficients");
  }
  FieldElement z = Zero();
  for (int i = 0; i < tau_; ++i) {
    if (coeffs[i] >= p_) throw ParamError("coefficient out of range");
    z.coeffs_[i] = static_cast<std::uint16_t>(coeffs[i]);
  }
  return z;
}

FieldElement FieldCtx::Parse(std::string_view text) const {
  FieldElement z = Zero();
  std::size_t pos = 0;
  for (int i = 0; i < tau_; ++i) {
    if (i > 0) {
      if (pos >= text.size() || text[pos] != ',') {
        throw ParseError("expected ',' in field element", pos);
      }
      ++pos;
    }
    std::uint32_t value = 0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) {
      throw ParseError("expected decimal coefficient", pos);
    }
    if (value >= p_) throw ParseError("coefficient not reduced mod p", pos);
    z.coeffs_[i] = static_cast<std::uint16_t>(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  if (pos != text.size()) {
    throw ParseError("trailing characters in field element", pos);
  }
  return z;
}

FieldElement FieldCtx::Add(const FieldElement& a, const FieldElement& b) const {
  Check(a);
  Check(b);
  FieldElement z = Zero();
  for (int i = 0; i < tau_; ++i) {
    z.coeffs_[i] = static_cast<std::uint16_t>(
        (std::uint32_t{a.coeffs_[i]} + b.coeffs_[i]) % p_);
  }
  return z;
}

FieldElement FieldCtx::Neg(const FieldElement& a) const {
  Check(a);
  FieldElement z = Zero();
  for (int i = 0; i < tau_; ++i) {
    z.coeffs_[i] = static_cast<std::uint16_t>((p_ - a.coeffs_[i]) % p_);
  }
  return z;
}

FieldElement FieldCtx::Sub(const FieldElement& a, const FieldElement& b) const {
  return Add(a, Neg(b));
}

FieldElement FieldCtx::MulScalar(const FieldElement& a, std::uint64_t c) const {
  Check(a);
  const std::uint64_t s = c % p_;
  FieldElement z = Zero();
  for (int i = 0; i < tau_; ++i) {
    z.coeffs_[i] = static_cast<std::uint16_t>(a.coeffs_[i] * s % p_);
  }
  return z;
}

FieldElement FieldCtx::Mul(const FieldElement& a, const FieldElement& b) const {
  Check(a);
  Check(b);
  std::array<std::uint64_t, 2 * kMaxExtensionDegree> acc{};
  for (int i = 0; i < tau_; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < tau_; ++j) {
      acc[i + j] += std::uint64_t{a.coeffs_[i]} * b.coeffs_[j];
    }
  }
  // X^tau = -(zeta_0 + ... + zeta_{tau-1} X^{tau-1}).
  for (int k = 2 * tau_ - 2; k >= tau_; --k) {
    const std::uint64_t c = acc[k] % p_;
    if (c == 0) continue;
    for (int t = 0; t < tau_; ++t) {
      acc[k - tau_ + t] += c * ((p_ - zeta_[t]) % p_);
    }
  }
  FieldElement z = Zero();
  for (int i = 0; i < tau_; ++i) {
    z.coeffs_[i] = static_cast<std::uint16_t>(acc[i] % p_);
  }
  return z;
}

FieldElement FieldCtx::Inv(const FieldElement& a) const {
  Check(a);
  if (a.IsZero()) throw DivisionByZero("inverse of the zero field element");
  using zp_poly::Poly;
  // Extended Euclid: maintain s with s * a == r (mod zeta).
  Poly r0 = zeta_, r1(a.coeffs_.begin(), a.coeffs_.begin() + tau_);
  zp_poly::Normalize(r1);
  Poly s0, s1{1};
  while (zp_poly::Degree(r1) > 0) {
    auto [q, rem] = zp_poly::DivMod(r0, r1, p_);
    Poly s2 = zp_poly::Sub(s0, zp_poly::Mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since zeta is irreducible.
  Poly inv = zp_poly::Scale(s1, zp_poly::InvMod(r1[0], p_), p_);
  inv = zp_poly::Mod(inv, zeta_, p_);
  FieldElement z = Zero();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    z.coeffs_[i] = static_cast<std::uint16_t>(inv[i]);
  }
  return z;
}

FieldElement FieldCtx::Pow(const FieldElement& a, std::int64_t k) const {
  Check(a);
  if (k == 0) return One();
  if (a.IsZero()) {
    if (k < 0) throw DivisionByZero("zero raised to a negative power");
    return Zero();
  }
  FieldElement base = k < 0 ? Inv(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1
                          : static_cast<std::uint64_t>(k);
  if (group_order_) e %= *group_order_;
  return PowUnsigned(*this, base, e);
}

FieldElement FieldCtx::ElementAtRank(std::uint64_t rank) const {
  FieldElement z = Zero();
  for (int i = tau_ - 1; i >= 0; --i) {
    z.coeffs_[i] = static_cast<std::uint16_t>(rank % p_);
    rank /= p_;
  }
  if (rank != 0) throw InputError("element rank exceeds field size");
  return z;
}

std::vector<std::uint64_t> PrimeFactors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> FindIrreducible(std::uint32_t p, int tau) {
  if (!zp_poly::IsPrime(p)) throw ParamError("p is not prime");
  if (tau < 1 || tau > kMaxExtensionDegree) {
    throw ParamError("extension degree out of range");
  }
  // Odometer over (c0, ..., c_{tau-1}) with c0 most significant.
  std::vector<std::uint32_t> candidate(tau + 1, 0);
  candidate[tau] = 1;
  while (true) {
    if (zp_poly::IsIrreducible(candidate, p)) return candidate;
    int i = tau - 1;
    while (i >= 0 && ++candidate[i] == p) candidate[i--] = 0;
    if (i < 0) break;
  }
  throw ImpossibleParams("no irreducible polynomial found");
}

std::uint64_t ElementOrder(const FieldCtx& ctx, const FieldElement& a) {
  if (a.IsZero()) throw InputError("zero has no multiplicative order");
  if (!ctx.group_order()) throw ParamError("field too large for order queries");
  std::uint64_t order = *ctx.group_order();
  for (std::uint64_t q : PrimeFactors(order)) {
    while (order % q == 0 && PowUnsigned(ctx, a, order / q) == ctx.One()) {
      order /= q;
    }
  }
  return order;
}

FieldElement FindRootOfUnity(const FieldCtx& ctx, std::uint64_t m) {
  if (!ctx.group_order()) throw ParamError("field too large for order queries");
  const std::uint64_t q1 = *ctx.group_order();
  if (m == 0 || q1 % m != 0) {
    throw ParamError("incompatible parameters: m = " + std::to_string(m) +
                     " does not divide p^tau - 1 = " + std::to_string(q1));
  }
  const auto factors = PrimeFactors(q1);
  for (std::uint64_t rank = 1; rank <= q1; ++rank) {
    const FieldElement g = ctx.ElementAtRank(rank);
    bool generator = true;
    for (std::uint64_t f : factors) {
      if (PowUnsigned(ctx, g, q1 / f) == ctx.One()) {
        generator = false;
        break;
      }
    }
    if (generator) return PowUnsigned(ctx, g, q1 / m);
  }
  throw ImpossibleParams("multiplicative group has no generator");
}

std::vector<FieldElement> Subgroup(const FieldCtx& ctx,
                                   const FieldElement& gamma, std::uint64_t m) {
  if (gamma.IsZero() || ElementOrder(ctx, gamma) != m) {
    throw ParamError("gamma does not have order " + std::to_string(m));
  }
  std::vector<FieldElement> out;
  out.reserve(m);
  FieldElement cur = ctx.One();
  for (std::uint64_t k = 0; k < m; ++k) {
    out.push_back(cur);
    cur = ctx.Mul(cur, gamma);
  }
  return out;
}

}  // namespace idpf
