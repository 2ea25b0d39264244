#ifndef ODEKIT_UPOLY_HPP
#define ODEKIT_UPOLY_HPP

#include <string>
#include <vector>

#include "odekit/poly.hpp"
#include "odekit/rational.hpp"

namespace odekit {

/// Dense univariate polynomial; coeffs[i] multiplies t^i. Trailing zeros are trimmed.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    /// Extracts a univariate polynomial in v; fails if p has other variables.
    static UPoly from_poly(const Poly &p, Var v);

    const std::vector<Rational> &coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational operator()(const Rational &t) const;
    Poly to_poly(Var v) const;
    std::string to_string(const std::string &var = "s") const;

    friend bool operator==(const UPoly &, const UPoly &) = default;

private:
    std::vector<Rational> coeffs_;
};

struct RationalRoot {
    Rational value;
    unsigned multiplicity = 1;

    friend bool operator==(const RationalRoot &, const RationalRoot &) = default;
};

struct RootSet {
    std::vector<RationalRoot> roots; ///< ascending by value
    int residual_degree = 0;         ///< degree of the factor without rational roots
};

/// All rational roots with multiplicity. Candidates come from the rational
/// root theorem applied to the integer-cleared polynomial and each one is
/// confirmed by exact evaluation and deflation.
RootSet rational_roots(const UPoly &q);

/// Falling factorial t (t-1) ... (t-k+1) as a polynomial in t.
UPoly falling_factorial(unsigned k);
/// Falling factorial evaluated at a rational.
Rational falling_factorial(const Rational &t, unsigned k);

} // namespace odekit

#endif
