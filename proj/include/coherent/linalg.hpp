#pragma once

#include <cstddef>
#include <vector>

#include "coherent/rational.hpp"

namespace coherent {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form by exact Gauss-Jordan elimination.
/// Returns the pivot column of each nonzero row; the rank is the size of
/// the returned vector.
std::vector<std::size_t> reduced_row_echelon(RationalMatrix& mat);

/// Basis of the right null space of an m x n matrix, one vector per free
/// column. Exact; empty when the matrix has full column rank.
std::vector<std::vector<Rational>> null_space_basis(RationalMatrix mat, std::size_t num_cols);

}  // namespace coherent
