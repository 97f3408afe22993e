#include "idpf/matching_family.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "idpf/errors.h"
#include "idpf/rng.h"

namespace idpf {

std::uint64_t DotMod(const ExponentVector& a, const ExponentVector& b,
                     std::uint64_t modulus) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<unsigned __int128>(a[i] % modulus) * (b[i] % modulus);
  }
  return static_cast<std::uint64_t>(acc % modulus);
}

MatchingFamily TrivialFamily(std::uint64_t M, std::size_t h) {
  if (h == 0) throw ParamError("h must be at least 1");
  if (M < 2) throw ParamError("modulus must be at least 2");
  MatchingFamily family{.M = M, .h = h, .U = {}, .V = {}};
  for (std::size_t i = 0; i < h; ++i) {
    ExponentVector u(h, 0), v(h, 1);
    u[i] = 1;
    v[i] = 0;
    family.U.push_back(std::move(u));
    family.V.push_back(std::move(v));
  }
  return family;
}

namespace {

bool InSetNonzero(std::uint64_t s, const std::vector<std::uint64_t>& S) {
  return s != 0 && std::binary_search(S.begin(), S.end(), s);
}

}  // namespace

MatchingFamily SearchFamily(const DpfParams& params, std::size_t h,
                            std::size_t n_goal, std::uint64_t seed,
                            std::uint64_t budget) {
  if (h == 0) throw ParamError("h must be at least 1");
  if (n_goal == 0 || budget == 0) {
    throw ParamError("n_goal and budget must be positive");
  }
  const std::uint64_t M = params.M;
  Rng rng(seed);
  MatchingFamily family{.M = M, .h = h, .U = {}, .V = {}};
  for (std::uint64_t attempt = 0;
       attempt < budget && family.N() < n_goal; ++attempt) {
    ExponentVector u(h), v(h);
    for (auto& x : u) x = rng.Below(M);
    // Solve for one coordinate of v that is a unit of u so u.v = 0.
    std::vector<std::size_t> units;
    for (std::size_t i = 0; i < h; ++i) {
      if (std::gcd(u[i], M) == 1) units.push_back(i);
    }
    if (units.empty()) continue;
    const std::size_t k = units[rng.Below(units.size())];
    for (auto& x : v) x = rng.Below(M);
    v[k] = 0;
    const std::uint64_t partial = DotMod(u, v, M);
    // Modular inverse of u[k] mod M.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(M);
    std::int64_t new_r = static_cast<std::int64_t>(u[k]);
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
      std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    const std::uint64_t inv =
        static_cast<std::uint64_t>((t % static_cast<std::int64_t>(M) +
                                    static_cast<std::int64_t>(M)) %
                                   static_cast<std::int64_t>(M));
    v[k] = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>((M - partial) % M) * inv % M);

    bool compatible = true;
    for (std::size_t j = 0; j < family.N() && compatible; ++j) {
      compatible = InSetNonzero(DotMod(u, family.V[j], M), params.S_M) &&
                   InSetNonzero(DotMod(family.U[j], v, M), params.S_M);
    }
    if (!compatible) continue;
    family.U.push_back(std::move(u));
    family.V.push_back(std::move(v));
  }
  return family;
}

FamilyCertificate VerifyFamily(const MatchingFamily& family,
                               const std::vector<std::uint64_t>& S_M) {
  FamilyCertificate cert;
  if (family.U.size() != family.V.size()) {
    cert.ok = false;
    cert.message = "U and V differ in size";
    return cert;
  }
  for (std::size_t i = 0; i < family.N(); ++i) {
    if (family.U[i].size() != family.h || family.V[i].size() != family.h) {
      cert.ok = false;
      cert.message = "vector of wrong length at index " + std::to_string(i + 1);
      return cert;
    }
  }
  for (std::size_t i = 0; i < family.N(); ++i) {
    for (std::size_t j = 0; j < family.N(); ++j) {
      const std::uint64_t s = DotMod(family.U[i], family.V[j], family.M);
      const bool good = i == j ? s == 0 : InSetNonzero(s, S_M);
      if (!good) {
        cert.ok = false;
        cert.violation = std::make_pair(i + 1, j + 1);
        cert.violating_product = s;
        cert.message = "u_" + std::to_string(i + 1) + " . v_" +
                       std::to_string(j + 1) + " = " + std::to_string(s) +
                       (i == j ? " (expected 0)" : " (not in S_M \\ {0})");
        return cert;
      }
    }
  }
  return cert;
}

}  // namespace idpf
