#ifndef IDPF_MATCHING_FAMILY_H_
#define IDPF_MATCHING_FAMILY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idpf/params.h"

namespace idpf {

using ExponentVector = std::vector<std::uint64_t>;  // entries in Z_M

// Pairs (u_i, v_i) in Z_M^h with u_i.v_i = 0 and u_i.v_j in S_M \ {0}.
// Domain points are 1-based at the API surface; u[0] is the vector of
// point 1.
struct MatchingFamily {
  std::uint64_t M = 0;
  std::size_t h = 0;
  std::vector<ExponentVector> U;
  std::vector<ExponentVector> V;

  std::size_t N() const { return U.size(); }
  const ExponentVector& u(std::uint64_t point) const { return U.at(point - 1); }
  const ExponentVector& v(std::uint64_t point) const { return V.at(point - 1); }
};

// u.v mod M with wide accumulation.
std::uint64_t DotMod(const ExponentVector& a, const ExponentVector& b,
                     std::uint64_t modulus);

// u_i = e_i, v_j = all-ones minus e_j: N = h, cross products all 1.
MatchingFamily TrivialFamily(std::uint64_t M, std::size_t h);

// Randomized greedy search for up to n_goal pairs in Z_M^h. Always returns a
// certified family, possibly smaller than requested.
MatchingFamily SearchFamily(const DpfParams& params, std::size_t h,
                            std::size_t n_goal, std::uint64_t seed,
                            std::uint64_t budget);

struct FamilyCertificate {
  bool ok = true;
  // First violating ordered pair, 1-based.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  std::uint64_t violating_product = 0;
  std::string message;
};

FamilyCertificate VerifyFamily(const MatchingFamily& family,
                               const std::vector<std::uint64_t>& S_M);

}  // namespace idpf

#endif  // IDPF_MATCHING_FAMILY_H_
