#ifndef IDPF_DPF_H_
#define IDPF_DPF_H_

#include <cstdint>
#include <vector>

#include "idpf/field.h"
#include "idpf/interpolation.h"
#include "idpf/matching_family.h"
#include "idpf/params.h"
#include "idpf/rng.h"

namespace idpf {

// f(x) = beta if x == alpha else 0, over the 1-based domain [N].
struct PointFunction {
  std::uint64_t N = 0;
  std::uint32_t p = 0;
  std::uint64_t alpha = 1;
  std::uint32_t beta = 0;

  std::uint32_t operator()(std::uint64_t x) const { return x == alpha ? beta : 0; }
};

using FieldVector = std::vector<FieldElement>;

// c_l = (w (.) b_l^{v_alpha}, b_l): h entries in H_m followed by b_l.
struct Share1 {
  std::size_t ell = 0;
  FieldVector c;

  friend bool operator==(const Share1&, const Share1&) = default;
};

// Key i = n*j + ell holds (omega_j, c_ell).
struct DpfKey {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t ell = 0;
  FieldVector omega;
  Share1 share;

  friend bool operator==(const DpfKey&, const DpfKey&) = default;
};

// (a_{l,0} D_x(b_l), a_{l,1} (C(b_l)/b_l) (.) grad F_x(C(b_l)))
using ConvertedShare = FieldVector;

// The 1-private 2n-server scheme over a fixed (params, family, scheme). The
// constructor checks that the three artifacts fit together; the object is
// immutable afterwards and safe to share between threads.
class Dpf {
 public:
  Dpf(DpfParams params, MatchingFamily family, InterpolationScheme scheme);

  // Skips the compatibility checks. Only for mutation tests that need a
  // deliberately broken family or scheme.
  static Dpf Unchecked(DpfParams params, MatchingFamily family,
                       InterpolationScheme scheme);

  const DpfParams& params() const { return params_; }
  const MatchingFamily& family() const { return family_; }
  const InterpolationScheme& scheme() const { return scheme_; }
  std::size_t N() const { return family_.N(); }
  std::size_t h() const { return family_.h; }
  std::size_t n() const { return scheme_.n(); }
  std::size_t num_keys() const { return 2 * scheme_.n(); }

  PointFunction MakePointFunction(std::uint64_t alpha,
                                  std::uint32_t beta) const;

  // Shares of alpha under randomness w in H_m^h.
  std::vector<Share1> Share(std::uint64_t alpha, const FieldVector& w) const;

  // D_x(b_ell) = F_x(C(b_ell)) from the share's first h entries.
  FieldElement LineValue(std::uint64_t x, const Share1& share) const;
  // grad F_x at C(b_ell).
  FieldVector Gradient(std::uint64_t x, const Share1& share) const;

  ConvertedShare Conv(std::size_t ell, std::uint64_t x,
                      const Share1& share) const;

  // Draws w (h subgroup indices) and then omega_0 ((h+1)*tau coefficients),
  // in that order, from rng.
  std::vector<DpfKey> Gen(const PointFunction& f, Rng& rng) const;

  // Gen with explicit randomness; omega0 must come from F^{h+1}.
  std::vector<DpfKey> GenWith(const PointFunction& f, const FieldVector& w,
                              const FieldVector& omega0) const;

  std::uint32_t Eval(const DpfKey& key, std::uint64_t x) const;
  std::vector<std::uint32_t> FullEval(const DpfKey& key) const;

  // sigma = w^{-u_alpha}
  FieldElement Sigma(std::uint64_t alpha, const FieldVector& w) const;
  // psi(alpha) = (1, v_alpha mod p) in the prime subfield.
  FieldVector Psi(std::uint64_t alpha) const;

  FieldElement Inner(const FieldVector& a, const FieldVector& b) const;

  // Structural checks on a key: index decomposition, c_ell's last entry is
  // b_ell and its first h entries lie in H_m, vector lengths.
  void ValidateKey(const DpfKey& key) const;

  bool InSubgroup(const FieldElement& z) const;

 private:
  struct UncheckedTag {};
  Dpf(UncheckedTag, DpfParams params, MatchingFamily family,
      InterpolationScheme scheme);

  void CheckPoint(std::uint64_t x) const;
  void CheckShare(const Share1& share) const;
  FieldVector GradientFrom(std::uint64_t x, const Share1& share,
                           const FieldElement& d) const;

  DpfParams params_;
  MatchingFamily family_;
  InterpolationScheme scheme_;
};

}  // namespace idpf

#endif  // IDPF_DPF_H_
