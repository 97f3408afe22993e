#include "idpf/linear_solver.h"

#include "idpf/errors.h"

namespace idpf {

std::optional<std::vector<FieldElement>> SolveLinearSystem(
    const FieldCtx& ctx, FieldMatrix rows, std::vector<FieldElement> rhs) {
  if (rows.size() != rhs.size()) throw InputError("rhs length mismatch");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows[0].size();
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw InputError("ragged matrix");
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_cols && rank < n_rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_rows && rows[pivot][col].IsZero()) ++pivot;
    if (pivot == n_rows) continue;
    std::swap(rows[pivot], rows[rank]);
    std::swap(rhs[pivot], rhs[rank]);

    const FieldElement inv = ctx.Inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = ctx.Mul(x, inv);
    rhs[rank] = ctx.Mul(rhs[rank], inv);

    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == rank || rows[r][col].IsZero()) continue;
      const FieldElement factor = rows[r][col];
      for (std::size_t c = col; c < n_cols; ++c) {
        rows[r][c] = ctx.Sub(rows[r][c], ctx.Mul(factor, rows[rank][c]));
      }
      rhs[r] = ctx.Sub(rhs[r], ctx.Mul(factor, rhs[rank]));
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < n_rows; ++r) {
    if (!rhs[r].IsZero()) return std::nullopt;
  }
  std::vector<FieldElement> x(n_cols, ctx.Zero());
  for (std::size_t r = 0; r < rank; ++r) x[pivot_cols[r]] = rhs[r];
  return x;
}

}  // namespace idpf
