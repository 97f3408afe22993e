#ifndef IDPF_TESTS_FIXTURES_H_
#define IDPF_TESTS_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "idpf/dpf.h"
#include "idpf/interpolation.h"
#include "idpf/params.h"

namespace idpf::testing {

// m = 511 = 7 * 73, p = 2, tau = 9.
const DpfParams& Params511();
const InterpolationScheme& Scheme511();
// m = 6 = 2 * 3, p = 5, tau = 2.
const DpfParams& Params6();
const InterpolationScheme& Scheme6();

Dpf Dpf511(std::size_t h = 16);
Dpf Dpf6(std::size_t h = 8);

std::vector<std::uint32_t> SumFullEval(const Dpf& dpf, const std::vector<DpfKey>& keys);

}  // namespace idpf::testing

#endif  // IDPF_TESTS_FIXTURES_H_
