#ifndef IDPF_INTERPOLATION_H_
#define IDPF_INTERPOLATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "idpf/params.h"

namespace idpf {

// A point set B in H_m with recovery coefficients a_{l,k}: for every
// polynomial R supported on S_M,
//   R(0) = sum_l a_{l,0} R(b_l) + a_{l,1} R'(b_l).
struct InterpolationScheme {
  std::vector<std::uint64_t> B_logs;  // discrete logs base gamma, ascending
  std::vector<FieldElement> B;
  std::vector<std::array<FieldElement, 2>> A;  // A[l][k]
  std::vector<FieldElement> mult1;             // multiplicity-1 coefficients

  std::size_t n() const { return B.size(); }
  std::size_t servers() const { return 2 * B.size(); }
};

// Order-k Hasse derivative of Z^s at b in H_m, k in {0, 1}:
//   k = 0: b^{s mod m};  k = 1: (s mod p) * b^{(s - 1) mod m}.
FieldElement HasseMonomial(const DpfParams& params, std::uint64_t s, int k,
                           const FieldElement& b);

struct Mult1Scheme {
  std::vector<std::uint64_t> B_logs;
  std::vector<FieldElement> coeffs;
};

// First n-subset of H_m (lexicographic in discrete logs) admitting
// sum_l a_l b_l^s = [s == 0] for all s in S_m, or nullopt when none does.
std::optional<Mult1Scheme> FindMult1SchemeOfSize(const DpfParams& params,
                                                 std::size_t n);

struct Mult1Search {
  Mult1Scheme scheme;
  std::size_t n = 0;
  std::vector<std::size_t> exhausted;  // sizes scanned without a solution
};

// Escalates n = n_start, n_start + 1, ... up to m.
Mult1Search FindMult1Scheme(const DpfParams& params, std::size_t n_start);

// Solves the multiplicity-2 system over S_M for a multiplicity-1 set B.
// Unknowns are ordered a_{0,0}, a_{0,1}, a_{1,0}, ... Throws LiftFailure when
// the system is inconsistent.
std::vector<std::array<FieldElement, 2>> LiftToMult2(
    const DpfParams& params, const std::vector<std::uint64_t>& B_logs);

struct SchemeReport {
  bool ok = true;
  std::vector<std::uint64_t> violated_s;
  std::size_t random_checks = 0;
  std::size_t random_failures = 0;
};

// Re-checks the multiplicity-2 identity monomial by monomial through
// HasseMonomial, then evaluates random S_M-supported polynomials densely
// (Horner over all M coefficients) and compares E(data) with R(0).
SchemeReport VerifyScheme(const DpfParams& params,
                          const InterpolationScheme& scheme,
                          std::size_t random_polys = 100,
                          std::uint64_t seed = 1);

// find -> lift -> verify. Throws LiftFailure on a failed lift or a failed
// certificate.
struct SchemeBuild {
  InterpolationScheme scheme;
  std::vector<std::size_t> exhausted;
};
SchemeBuild BuildScheme(const DpfParams& params, std::size_t n_start);

// Number of worker threads: IDPF_THREADS when set, else the hardware count.
unsigned WorkerCount();

}  // namespace idpf

#endif  // IDPF_INTERPOLATION_H_
