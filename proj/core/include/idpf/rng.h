#ifndef IDPF_RNG_H_
#define IDPF_RNG_H_

#include <cstdint>
#include <random>

namespace idpf {

// Seedable generator with a platform-independent bounded draw. The standard
// distributions are implementation-defined, so keys generated from a seed
// would otherwise differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace idpf

#endif  // IDPF_RNG_H_
