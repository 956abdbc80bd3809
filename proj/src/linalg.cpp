#include "coherent/linalg.hpp"

#include <algorithm>

namespace coherent {

std::vector<std::size_t> reduced_row_echelon(RationalMatrix& mat) {
    std::vector<std::size_t> pivots;
    if (mat.empty()) return pivots;
    const std::size_t rows = mat.size();
    const std::size_t cols = mat[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && mat[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(mat[sel], mat[row]);
        const Rational inv = Rational(1) / mat[row][col];
        for (std::size_t j = col; j < cols; ++j)
            if (!mat[row][j].is_zero()) mat[row][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || mat[i][col].is_zero()) continue;
            const Rational f = mat[i][col];
            for (std::size_t j = col; j < cols; ++j)
                if (!mat[row][j].is_zero()) mat[i][j] -= f * mat[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rational>> null_space_basis(RationalMatrix mat, std::size_t num_cols) {
    for (auto& r : mat) r.resize(num_cols);
    const std::vector<std::size_t> pivots = reduced_row_echelon(mat);

    std::vector<bool> is_pivot(num_cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < num_cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(num_cols);
        v[free_col] = Rational(1);
        // pivot row i solves x[pivots[i]] = -sum over free columns
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -mat[i][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace coherent
