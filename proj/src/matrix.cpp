#include "odekit/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace odekit {

ExactMatrix ExactMatrix::from_rows(const std::vector<RationalVector> &rows, std::size_t cols) {
    ExactMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalVector ExactMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector ExactMatrix::apply(const RationalVector &v) const {
    if (v.size() != cols_) throw Error("dimension mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
}

namespace {

using IntRows = std::vector<std::vector<BigInt>>;

IntRows integer_rows(const ExactMatrix &m) {
    IntRows a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt den = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) den = lcm(den, m(r, c).den());
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).num() * (den / m(r, c).den());
    }
    return a;
}

// Bareiss fraction-free forward elimination with row pivoting. Every division
// by the previous pivot is exact; entries stay minors of the input.
Echelon bareiss(IntRows &a, std::size_t cols) {
    Echelon e;
    BigInt prev = 1;
    const std::size_t rows = a.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                if (prev != 1) {
                    if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
                        throw std::logic_error("bareiss: inexact division");
                    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                a[i][j] = std::move(t);
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    return e;
}

} // namespace

std::size_t rank(const ExactMatrix &m) {
    IntRows a = integer_rows(m);
    return bareiss(a, m.cols()).rank;
}

RationalVector normalize_vector(RationalVector v, std::size_t lead) {
    BigInt den = 1;
    for (const auto &x : v) den = lcm(den, x.den());
    BigInt content = 0;
    for (const auto &x : v)
        if (!x.is_zero()) content = gcd(content, (x * Rational(den, 1)).num());
    if (content == 0) return v;
    const Rational scale(den, content);
    for (auto &x : v) x *= scale;
    if (lead == static_cast<std::size_t>(-1)) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                lead = i;
                break;
            }
    }
    if (v[lead].sign() < 0)
        for (auto &x : v) x = -x;
    return v;
}

std::vector<RationalVector> nullspace(const ExactMatrix &m) {
    IntRows a = integer_rows(m);
    const Echelon e = bareiss(a, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols());
        v[f] = Rational(1);
        for (std::size_t r = e.rank; r-- > 0;) {
            const std::size_t pc = e.pivot_cols[r];
            Rational sum;
            for (std::size_t j = pc + 1; j < m.cols(); ++j)
                if (!v[j].is_zero() && a[r][j] != 0) sum += Rational(a[r][j], 1) * v[j];
            v[pc] = -sum / Rational(a[r][pc], 1);
        }
        basis.push_back(normalize_vector(std::move(v)));
    }
    return basis;
}

std::vector<RationalVector> reduced_row_echelon(const std::vector<RationalVector> &rows, std::size_t cols) {
    IntRows a = integer_rows(ExactMatrix::from_rows(rows, cols));
    const Echelon e = bareiss(a, cols);
    std::vector<RationalVector> out(e.rank, RationalVector(cols));
    for (std::size_t r = 0; r < e.rank; ++r) {
        const Rational piv(a[r][e.pivot_cols[r]], 1);
        for (std::size_t c = 0; c < cols; ++c) out[r][c] = Rational(a[r][c], 1) / piv;
    }
    for (std::size_t r = e.rank; r-- > 0;) {
        const std::size_t pc = e.pivot_cols[r];
        for (std::size_t i = 0; i < r; ++i) {
            const Rational f = out[i][pc];
            if (f.is_zero()) continue;
            for (std::size_t c = pc; c < cols; ++c) out[i][c] -= f * out[r][c];
        }
    }
    return out;
}

std::optional<RationalVector> solve_in_span(const std::vector<RationalVector> &basis, const RationalVector &target) {
    const std::size_t k = basis.size();
    ExactMatrix m(target.size(), k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        if (basis[i].size() != target.size()) throw Error("dimension mismatch");
        for (std::size_t r = 0; r < target.size(); ++r) m(r, i) = basis[i][r];
    }
    for (std::size_t r = 0; r < target.size(); ++r) m(r, k) = target[r];
    for (const auto &v : nullspace(m)) {
        if (v[k].is_zero()) continue;
        RationalVector c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = -v[i] / v[k];
        return c;
    }
    return std::nullopt;
}

} // namespace odekit
