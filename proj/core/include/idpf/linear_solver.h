#ifndef IDPF_LINEAR_SOLVER_H_
#define IDPF_LINEAR_SOLVER_H_

#include <optional>
#include <vector>

#include "idpf/field.h"

namespace idpf {

using FieldMatrix = std::vector<std::vector<FieldElement>>;

// Solves rows * x = rhs over F by Gauss-Jordan elimination. Columns are
// scanned left to right and the pivot is the first nonzero entry at or below
// the current row; free variables are set to zero. The result is therefore a
// deterministic function of the system. Returns nullopt when inconsistent.
std::optional<std::vector<FieldElement>> SolveLinearSystem(
    const FieldCtx& ctx, FieldMatrix rows, std::vector<FieldElement> rhs);

}  // namespace idpf

#endif  // IDPF_LINEAR_SOLVER_H_
