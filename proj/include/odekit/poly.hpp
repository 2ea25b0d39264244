#ifndef ODEKIT_POLY_HPP
#define ODEKIT_POLY_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "odekit/rational.hpp"

namespace odekit {

/// Variable identifier. The numbering doubles as the ranking used by the
/// term order: x < y < y' < y'' < ... < series constants < auxiliaries.
using Var = std::uint32_t;

namespace vars {
inline constexpr Var x = 0;
inline constexpr Var y = 1;
inline constexpr Var kParamBase = 1u << 16;
inline constexpr Var kAuxBase = 1u << 24;
/// Auxiliary variable used for exponent offsets (resonance polynomials).
inline constexpr Var s = kAuxBase;
/// Auxiliary variable used for leading exponents.
inline constexpr Var p = kAuxBase + 1;

/// y^(k); deriv(0) == y.
constexpr Var deriv(unsigned k) { return y + k; }
constexpr bool is_deriv(Var v) { return v >= y && v < kParamBase; }
constexpr unsigned deriv_order(Var v) { return v - y; }
/// Series constant a_i.
constexpr Var param(unsigned i) { return kParamBase + i; }
constexpr bool is_param(Var v) { return v >= kParamBase && v < kAuxBase; }
constexpr unsigned param_index(Var v) { return v - kParamBase; }
} // namespace vars

/// Display names for the independent and dependent variable.
struct VarNames {
    std::string indep = "x";
    std::string dep = "y";

    std::string name(Var v) const;
};

/// Power product, stored sparsely as (variable, exponent) pairs sorted by variable.
class Monomial {
public:
    using Factor = std::pair<Var, unsigned>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial of(Var v, unsigned e = 1);

    const std::vector<Factor> &factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    unsigned degree() const { return degree_; }
    unsigned exponent(Var v) const;
    /// Removes all powers of v.
    Monomial without(Var v) const;

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    friend bool operator==(const Monomial &a, const Monomial &b) = default;

private:
    std::vector<Factor> factors_;
    unsigned degree_ = 0;
};

/// Graded lexicographic comparison (-1, 0, +1). Lex ties are broken from the
/// highest-ranked variable downwards, so y' outranks y and y outranks x.
int grlex_compare(const Monomial &a, const Monomial &b);

/// Map ordering used for storage and printing: ascending total degree, and
/// within one degree the grlex-larger monomial first.
struct TermOrder {
    bool operator()(const Monomial &a, const Monomial &b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return grlex_compare(a, b) > 0;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, TermOrder>;

    Poly() = default;
    Poly(const Rational &c);
    Poly(long c) : Poly(Rational(c)) {}
    static Poly var(Var v, unsigned e = 1);
    static Poly term(const Monomial &m, const Rational &c);

    const Terms &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;
    Rational coefficient(const Monomial &m) const;

    unsigned degree() const;
    unsigned degree_in(Var v) const;
    /// Coefficient of v^k, as a polynomial free of v.
    Poly coefficient_in(Var v, unsigned k) const;
    std::set<Var> variables() const;
    bool contains(Var v) const { return degree_in(v) > 0; }
    /// Highest k with y^(k) present, or -1.
    int max_deriv_order() const;

    /// Grlex-greatest monomial; the polynomial must be nonzero.
    const Monomial &leading_monomial() const;
    const Rational &leading_coefficient() const;

    Poly diff(Var v) const;
    Poly pow(unsigned e) const;
    /// Replaces variables by rational values; unbound variables stay symbolic.
    Poly evaluate(const std::map<Var, Rational> &values) const;
    /// Replaces one variable by a polynomial.
    Poly compose(Var v, const Poly &replacement) const;
    /// Exact division by a monomial; returns false if some term is not divisible.
    bool divide_by_monomial(const Monomial &m, Poly &quotient) const;

    void add_term(const Monomial &m, const Rational &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Rational &c);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator-(const Poly &a);
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
    friend Poly operator*(const Rational &c, Poly a) { return a *= c; }
    friend bool operator==(const Poly &a, const Poly &b) = default;

    std::string to_string(const VarNames &names = {}) const;

private:
    Terms terms_;
};

/// Numerator/denominator pair used for substitution bindings.
struct Fraction {
    Poly num;
    Poly den{1};
};

/// Result of substituting fractions: numerator / prod(binding denominator ^ power).
struct Substituted {
    Poly numerator;
    std::vector<std::pair<Var, unsigned>> denominator_powers;
};

/// Substitutes each bound variable by its fraction, bringing the result to a
/// single fraction whose denominator is a tracked power product of the
/// binding denominators (the power of each is the variable's degree in p).
Substituted substitute(const Poly &p, const std::map<Var, Fraction> &bindings);

} // namespace odekit

#endif
