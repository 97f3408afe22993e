#ifndef IDPF_PARAMS_H_
#define IDPF_PARAMS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "idpf/field.h"

namespace idpf {

// The compatible parameter tuple shared by every other component. Built only
// through BuildParams (or the params-file loader, which rebuilds and compares).
struct DpfParams {
  std::vector<std::uint64_t> primes;  // distinct prime factors of m, sorted
  std::uint64_t m = 0;
  std::uint32_t p = 0;  // output characteristic
  std::uint64_t M = 0;  // m * p
  int tau = 0;
  FieldCtx ctx;
  FieldElement gamma;
  std::vector<FieldElement> H;  // H[k] = gamma^k
  std::vector<std::uint64_t> S_m;
  std::vector<std::uint64_t> S_M;
  int e = 2;
  std::uint64_t n_target = 0;

  int r() const { return static_cast<int>(primes.size()); }
};

// All residues s in [0, modulus) with s mod q in {0, 1} for every factor q.
std::vector<std::uint64_t> CanonicalSet(
    std::uint64_t modulus, const std::vector<std::uint64_t>& prime_factors);

// Server-count target n_r for r prime factors (advisory only).
boost::multiprecision::cpp_int NrValue(int r);

// Throws ParamError naming the violated constraint.
DpfParams BuildParams(std::vector<std::uint64_t> primes, std::uint32_t p,
                      std::optional<int> tau_hint = std::nullopt);

struct LiftWitness {
  std::uint64_t s;
  std::uint64_t residue_m;  // s mod m
  std::uint64_t residue_p;  // s mod p
  bool ok;
};

struct LiftConditionReport {
  bool ok = true;
  std::vector<LiftWitness> witnesses;
};

// S_M must sit inside CRT(S_m x {0, ..., e-1}).
LiftConditionReport CheckLiftCondition(const DpfParams& params);

}  // namespace idpf

#endif  // IDPF_PARAMS_H_
