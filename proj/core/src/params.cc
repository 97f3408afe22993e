#include "idpf/params.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "idpf/errors.h"
#include "idpf/zp_poly.h"

namespace idpf {

namespace {

void CheckFactors(std::uint64_t modulus,
                  const std::vector<std::uint64_t>& factors) {
  std::vector<std::uint64_t> sorted = factors;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParamError("repeated prime factor");
  }
  unsigned __int128 product = 1;
  for (auto q : sorted) {
    if (!zp_poly::IsPrime(q)) {
      throw ParamError(std::to_string(q) + " is not prime");
    }
    product *= q;
    if (product > modulus) break;
  }
  if (product != modulus) {
    throw ParamError("modulus is not the product of the given primes");
  }
}

std::uint64_t MulModU64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

}  // namespace

std::vector<std::uint64_t> CanonicalSet(
    std::uint64_t modulus, const std::vector<std::uint64_t>& prime_factors) {
  CheckFactors(modulus, prime_factors);
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < modulus; ++s) {
    bool member = true;
    for (auto q : prime_factors) {
      if (s % q > 1) {
        member = false;
        break;
      }
    }
    if (member) out.push_back(s);
  }
  return out;
}

boost::multiprecision::cpp_int NrValue(int r) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::pow;
  if (r < 1) throw ParamError("r must be at least 1");
  if (r == 1) return 2;
  if (r <= 103) {
    if (r % 2 == 0) return pow(cpp_int(3), r / 2);
    return 8 * pow(cpp_int(3), (r - 3) / 2);
  }
  // (3/4)^51 * 2^r = 3^51 * 2^(r - 102), an integer for r >= 104.
  return pow(cpp_int(3), 51) << (r - 102);
}

DpfParams BuildParams(std::vector<std::uint64_t> primes, std::uint32_t p,
                      std::optional<int> tau_hint) {
  if (primes.empty()) throw ParamError("at least one prime factor of m");
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
    throw ParamError("prime factors of m must be distinct");
  }
  std::uint64_t m = 1;
  for (auto q : primes) {
    if (!zp_poly::IsPrime(q)) {
      throw ParamError("factor " + std::to_string(q) + " of m is not prime");
    }
    if (m > UINT32_MAX / q) throw ParamError("m too large");
    m *= q;
  }
  if (!zp_poly::IsPrime(p)) {
    throw ParamError("p = " + std::to_string(p) + " is not prime");
  }
  if (p > kMaxCharacteristic) throw ParamError("p exceeds 2^16");
  if (std::gcd(m, std::uint64_t{p}) != 1) {
    throw ParamError("gcd(m, p) != 1: p must not divide m");
  }
  const int min_tau = tau_hint.value_or(1);
  if (min_tau < 1) throw ParamError("tau hint must be positive");

  // Smallest tau >= min_tau with p^tau == 1 (mod m).
  int tau = 0;
  std::uint64_t power = 1 % m;
  for (int t = 1; t <= kMaxExtensionDegree; ++t) {
    power = MulModU64(power, p, m);
    if (t >= min_tau && power == 1 % m) {
      tau = t;
      break;
    }
  }
  if (tau == 0) {
    throw ParamError("no extension degree <= 32 with m | p^tau - 1");
  }

  FieldCtx ctx(p, FindIrreducible(p, tau));
  if (!ctx.group_order()) throw ParamError("field too large");
  FieldElement gamma = FindRootOfUnity(ctx, m);
  std::vector<FieldElement> H = Subgroup(ctx, gamma, m);

  std::vector<std::uint64_t> all_factors = primes;
  all_factors.push_back(p);
  std::sort(all_factors.begin(), all_factors.end());

  DpfParams params{
      .primes = primes,
      .m = m,
      .p = p,
      .M = m * p,
      .tau = tau,
      .ctx = ctx,
      .gamma = gamma,
      .H = std::move(H),
      .S_m = CanonicalSet(m, primes),
      .S_M = CanonicalSet(m * p, all_factors),
      .e = 2,
      .n_target = 0,
  };
  const auto n_target = NrValue(params.r());
  params.n_target =
      n_target > UINT64_MAX ? UINT64_MAX : n_target.convert_to<std::uint64_t>();
  return params;
}

LiftConditionReport CheckLiftCondition(const DpfParams& params) {
  LiftConditionReport report;
  for (auto s : params.S_M) {
    LiftWitness w{.s = s,
                  .residue_m = s % params.m,
                  .residue_p = s % params.p,
                  .ok = false};
    w.ok = std::binary_search(params.S_m.begin(), params.S_m.end(),
                              w.residue_m) &&
           w.residue_p < static_cast<std::uint64_t>(params.e);
    report.ok = report.ok && w.ok;
    report.witnesses.push_back(w);
  }
  return report;
}

}  // namespace idpf
