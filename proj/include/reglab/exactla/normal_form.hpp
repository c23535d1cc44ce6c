#pragma once

#include <optional>
#include <vector>

#include "reglab/exactla/int_matrix.hpp"

namespace reglab {

/// Smith normal form U·A·V = S with unimodular U, V.
///
/// Pivoting always takes the smallest nonzero absolute value in the remaining
/// submatrix (ties: lowest row, then lowest column), so the transforms are a
/// deterministic function of A. `U_inv` is U⁻¹, maintained alongside U.
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;
  /// Nonzero diagonal entries of S, positive, each dividing the next.
  IntVector divisors;
  std::size_t rank() const { return divisors.size(); }
};

SmithForm smith_normal_form(const IntMatrix& A);

/// Nonzero elementary divisors of A (including unit divisors), without transforms.
IntVector elementary_divisors(const IntMatrix& A);

/// Column Hermite normal form of the column span of `generators`.
///
/// The result has full column rank r; column j has its first nonzero entry
/// (the pivot, positive) in row p_j with p_0 < p_1 < ..., and every entry left
/// of a pivot in its row lies in [0, pivot).
IntMatrix hermite_basis(const IntMatrix& generators);

/// Basis (as columns, in Hermite form) of {x ∈ Zⁿ : A·x = 0}.
IntMatrix kernel_basis(const IntMatrix& A);

/// Solves H·x = b for integral x, with H in the form produced by hermite_basis.
std::optional<IntVector> solve_hermite(const IntMatrix& H, const IntVector& b);

/// Pivot rows of a matrix produced by hermite_basis.
std::vector<std::size_t> hermite_pivot_rows(const IntMatrix& H);

Int determinant(const IntMatrix& A);
std::size_t matrix_rank(const IntMatrix& A);

/// Maximum matrix width accepted by the heavy routines (REGLAB_LIMIT_COLS, default 4000).
std::size_t column_limit();
/// Throws ResourceLimitError when `cols` exceeds column_limit().
void check_column_limit(std::size_t cols, const char* what);

}  // namespace reglab
