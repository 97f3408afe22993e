#ifndef IDPF_ZP_POLY_H_
#define IDPF_ZP_POLY_H_

#include <cstdint>
#include <utility>
#include <vector>

// Dense univariate polynomials over the prime field Z_p. Coefficients are
// stored constant term first; a normalized polynomial has no trailing zeros,
// so the zero polynomial is the empty vector.
namespace idpf::zp_poly {

using Poly = std::vector<std::uint32_t>;

bool IsPrime(std::uint64_t n);

void Normalize(Poly& a);
int Degree(const Poly& a);  // -1 for the zero polynomial

Poly Add(const Poly& a, const Poly& b, std::uint32_t p);
Poly Sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly Mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly Scale(const Poly& a, std::uint32_t c, std::uint32_t p);

// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> DivMod(const Poly& a, const Poly& b, std::uint32_t p);
Poly Mod(const Poly& a, const Poly& b, std::uint32_t p);

// Monic gcd; Gcd(0, 0) = 0.
Poly Gcd(Poly a, Poly b, std::uint32_t p);

// base^e mod modulus by square-and-multiply.
Poly PowMod(const Poly& base, std::uint64_t e, const Poly& modulus,
            std::uint32_t p);

Poly MakeMonic(const Poly& a, std::uint32_t p);

bool HasRoot(const Poly& a, std::uint32_t p);

// Monic irreducibility test: a root scan for degree <= 3, otherwise
// gcd(X^{p^k} - X, f) = 1 for every k <= deg/2.
bool IsIrreducible(const Poly& f, std::uint32_t p);

std::uint32_t InvMod(std::uint32_t a, std::uint32_t p);

}  // namespace idpf::zp_poly

#endif  // IDPF_ZP_POLY_H_
