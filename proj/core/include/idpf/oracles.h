#ifndef IDPF_ORACLES_H_
#define IDPF_ORACLES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idpf/dpf.h"

// Brute-force checks of the construction's algebra. Each oracle rebuilds the
// quantity it checks from an explicit sparse coefficient table of the reduced
// line polynomial instead of the monomial products used by Dpf::Conv.
namespace idpf::oracles {

// Reduced line polynomial D~_x(Z) = sum_s k_s Z^s with s in Z_M.
using CoefficientTable = std::map<std::uint64_t, FieldElement>;

// Builds the table over all j in [N]; throws ArtifactMismatch if a nonzero
// coefficient lands outside S_M.
CoefficientTable ReducedPoly(const Dpf& dpf, std::uint64_t alpha,
                             std::uint64_t x, const FieldVector& w);

struct CheckReport {
  std::string check;
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void Merge(const CheckReport& other);
  nlohmann::json ToJson(const std::string& params_digest) const;
};

// Table value and first derivative at every b_l against D_x(b_l) from the
// monomial product and the chain rule <grad F_x(C(b_l)), C'(b_l)>.
CheckReport DerivativeCheck(const Dpf& dpf, std::uint64_t alpha,
                            std::uint64_t x, const FieldVector& w);

// rho = <(1, v_alpha), sum_l Conv(l, x, c_l)> must equal D~_x(0), and
// phi(rho * w^{-u_alpha}) must equal [x == alpha].
CheckReport RhoIdentity(const Dpf& dpf, std::uint64_t alpha, std::uint64_t x,
                        const FieldVector& w);

// w drawn uniformly from H_m^h.
FieldVector RandomW(const Dpf& dpf, Rng& rng);

// For every slot ell: the multisets {c_ell(w)} over all w in H_m^h agree for
// f0 and f1, and omega_0 -> sigma*beta*psi(alpha) - omega_0 is a bijection of
// F^{h+1} (exhaustive when |F|^{h+1} <= omega_budget, else sampled
// injectivity plus the cardinality argument). Skipped when m^h > budget.
struct DistributionReport {
  bool skipped = false;
  bool shares_identical = true;
  bool omega_bijective = true;
  std::size_t enumerated_w = 0;
  std::vector<std::string> failures;

  bool ok() const { return !skipped && failures.empty(); }
};
DistributionReport CheckDistributionEquality(
    const Dpf& dpf, const PointFunction& f0, const PointFunction& f1,
    std::uint64_t enumeration_budget, std::uint64_t omega_budget = 1000000);

struct KeySizeReport {
  std::size_t h = 0;
  std::size_t measured_bytes = 0;
  std::size_t formula_bytes = 0;
  std::size_t header_bytes = 0;
  std::size_t payload_bytes = 0;
  bool ok() const { return measured_bytes == formula_bytes; }
};
// Serializes a freshly generated key and compares with
// header + 2 (h+1) tau slot.
KeySizeReport MeasureKeySize(const Dpf& dpf);

struct KeySizeSweep {
  std::vector<KeySizeReport> rows;
  // Least-squares fit key bytes = slope * h + intercept and its largest
  // absolute residual (exactly 0 when the sizes are affine in h).
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
  bool ok = true;
};
// Trivial families of every requested h over the same params and scheme.
KeySizeSweep SweepKeySize(const DpfParams& params,
                          const InterpolationScheme& scheme,
                          const std::vector<std::size_t>& hs);

// Sum over all keys of Eval at x, reconstructed mod p.
std::uint32_t Reconstruct(const Dpf& dpf, const std::vector<DpfKey>& keys,
                          std::uint64_t x);

// Exhaustive correctness: every alpha, x, beta in betas, seed in seeds.
CheckReport ExhaustiveCorrectness(const Dpf& dpf,
                                  const std::vector<std::uint32_t>& betas,
                                  const std::vector<std::uint64_t>& seeds);

}  // namespace idpf::oracles

#endif  // IDPF_ORACLES_H_
