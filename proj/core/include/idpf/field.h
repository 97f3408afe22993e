#ifndef IDPF_FIELD_H_
#define IDPF_FIELD_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idpf {

inline constexpr int kMaxExtensionDegree = 32;
inline constexpr std::uint32_t kMaxCharacteristic = 1u << 16;

// An element of F_{p^tau} = Z_p[X]/(zeta): tau residues, coefficient of X^i
// at index i. Always kept reduced, so equality is structural. The value knows
// its degree but not its modulus; every operation goes through a FieldCtx.
class FieldElement {
 public:
  FieldElement() = default;

  int tau() const { return tau_; }
  std::uint32_t coeff(int i) const { return coeffs_[i]; }
  std::span<const std::uint16_t> coeffs() const {
    return {coeffs_.data(), static_cast<std::size_t>(tau_)};
  }
  bool IsZero() const;

  // "c0,c1,...,c_{tau-1}"
  std::string ToString() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  // Lexicographic on the constant-first coefficient list.
  friend std::strong_ordering operator<=>(const FieldElement& a,
                                          const FieldElement& b);

 private:
  friend class FieldCtx;
  std::array<std::uint16_t, kMaxExtensionDegree> coeffs_{};
  std::uint8_t tau_ = 0;
};

class FieldCtx {
 public:
  // zeta is the full monic modulus, constant term first, leading 1 included.
  // Throws ParamError unless p is prime, p <= 2^16, and zeta is monic,
  // irreducible and of degree 1..32.
  FieldCtx(std::uint32_t p, std::vector<std::uint32_t> zeta);

  std::uint32_t p() const { return p_; }
  int tau() const { return tau_; }
  const std::vector<std::uint32_t>& zeta() const { return zeta_; }
  // p^tau - 1, when it fits in 64 bits.
  std::optional<std::uint64_t> group_order() const { return group_order_; }

  FieldElement Zero() const;
  FieldElement One() const;
  // Image of an integer in the prime subfield.
  FieldElement Constant(std::int64_t c) const;
  FieldElement FromCoeffs(std::span<const std::uint32_t> coeffs) const;
  FieldElement Parse(std::string_view text) const;

  FieldElement Add(const FieldElement& a, const FieldElement& b) const;
  FieldElement Sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement Neg(const FieldElement& a) const;
  FieldElement Mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement MulScalar(const FieldElement& a, std::uint64_t c) const;
  FieldElement Inv(const FieldElement& a) const;
  FieldElement Pow(const FieldElement& a, std::int64_t k) const;

  // Output homomorphism onto Z_p: the constant coefficient.
  std::uint32_t Phi(const FieldElement& y) const { return y.coeffs_[0]; }

  // True when a has tau coefficients, each in [0, p).
  bool Contains(const FieldElement& a) const;

  // Element with the given rank in the lexicographic order (c0 most
  // significant); rank must be below p^tau.
  FieldElement ElementAtRank(std::uint64_t rank) const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.zeta_ == b.zeta_;
  }

 private:
  void Check(const FieldElement& a) const;

  std::uint32_t p_;
  int tau_;
  std::vector<std::uint32_t> zeta_;
  std::optional<std::uint64_t> group_order_;
};

// Lexicographically smallest monic irreducible of degree tau over Z_p,
// ordered on the constant-first coefficient list.
std::vector<std::uint32_t> FindIrreducible(std::uint32_t p, int tau);

// gamma = g^{(q-1)/m} for the smallest generator g of F* in rank order.
// Throws ParamError (incompatible parameters) unless m | p^tau - 1.
FieldElement FindRootOfUnity(const FieldCtx& ctx, std::uint64_t m);

// [gamma^0, ..., gamma^{m-1}]; throws ParamError unless gamma has order m.
std::vector<FieldElement> Subgroup(const FieldCtx& ctx,
                                   const FieldElement& gamma, std::uint64_t m);

// Multiplicative order of a nonzero element (requires group_order()).
std::uint64_t ElementOrder(const FieldCtx& ctx, const FieldElement& a);

std::vector<std::uint64_t> PrimeFactors(std::uint64_t n);

}  // namespace idpf

#endif  // IDPF_FIELD_H_
