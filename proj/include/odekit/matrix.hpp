#ifndef ODEKIT_MATRIX_HPP
#define ODEKIT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "odekit/rational.hpp"

namespace odekit {

using RationalVector = std::vector<Rational>;

/// Dense rows x cols matrix over the rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static ExactMatrix from_rows(const std::vector<RationalVector> &rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector apply(const RationalVector &v) const;

    friend bool operator==(const ExactMatrix &, const ExactMatrix &) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Row echelon data produced by fraction-free elimination.
struct Echelon {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

std::size_t rank(const ExactMatrix &m);

/// Exact basis of the right nullspace. Each vector is scaled to integers with
/// content 1 and a positive first nonzero entry; there are cols - rank of them.
std::vector<RationalVector> nullspace(const ExactMatrix &m);

/// Coefficients c with sum_i c_i * basis[i] == target, if target is in the span.
/// The basis vectors must be linearly independent.
std::optional<RationalVector> solve_in_span(const std::vector<RationalVector> &basis, const RationalVector &target);

/// Integer-clears v, removes content, and makes the entry at `lead` positive
/// (first nonzero entry when lead is npos).
RationalVector normalize_vector(RationalVector v, std::size_t lead = static_cast<std::size_t>(-1));

/// Reduced row echelon form of the given rows (fraction-free elimination followed
/// by exact back-substitution). Zero rows are dropped.
std::vector<RationalVector> reduced_row_echelon(const std::vector<RationalVector> &rows, std::size_t cols);

} // namespace odekit

#endif
