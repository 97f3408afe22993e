#include "fixtures.h"

#include "idpf/matching_family.h"

namespace idpf::testing {

const DpfParams& Params511() {
  static const DpfParams params = BuildParams({7, 73}, 2);
  return params;
}

const InterpolationScheme& Scheme511() {
  static const InterpolationScheme scheme = BuildScheme(Params511(), 3).scheme;
  return scheme;
}

const DpfParams& Params6() {
  static const DpfParams params = BuildParams({2, 3}, 5);
  return params;
}

const InterpolationScheme& Scheme6() {
  static const InterpolationScheme scheme = BuildScheme(Params6(), 3).scheme;
  return scheme;
}

Dpf Dpf511(std::size_t h) {
  return Dpf(Params511(), TrivialFamily(Params511().M, h), Scheme511());
}

Dpf Dpf6(std::size_t h) {
  return Dpf(Params6(), TrivialFamily(Params6().M, h), Scheme6());
}

std::vector<std::uint32_t> SumFullEval(const Dpf& dpf, const std::vector<DpfKey>& keys) {
  std::vector<std::uint64_t> acc(dpf.N(), 0);
  for (const auto& k : keys) {
    const auto ys = dpf.FullEval(k);
    for (std::size_t x = 0; x < ys.size(); ++x) acc[x] += ys[x];
  }
  std::vector<std::uint32_t> out;
  for (auto v : acc) out.push_back(static_cast<std::uint32_t>(v % dpf.params().p));
  return out;
}

}  // namespace idpf::testing
