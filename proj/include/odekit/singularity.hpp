#ifndef ODEKIT_SINGULARITY_HPP
#define ODEKIT_SINGULARITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "odekit/diff_poly.hpp"
#include "odekit/poly.hpp"
#include "odekit/upoly.hpp"

namespace odekit {

/// Series coefficient: a polynomial in the arbitrary constants a0, a1, ...
/// divided by a power of a0. Only used with a0 arbitrary, where a0 != 0 holds
/// by construction of the leading term.
struct ParamPoly {
    Poly num;
    unsigned a0_power = 0; ///< value == num / a0^a0_power

    ParamPoly() = default;
    ParamPoly(Poly n, unsigned k = 0);

    bool is_zero() const { return num.is_zero(); }
    std::string to_string() const;

    friend ParamPoly operator+(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator-(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b);
    friend bool operator==(const ParamPoly &, const ParamPoly &) = default;
};

/// Dominant balance: a leading exponent and the terms that balance there.
/// When the only balances are irrational roots of the exponent polynomial,
/// p is empty and p_poly holds the unresolved factor.
struct DominantBalance {
    std::optional<Rational> p;
    UPoly p_poly;
    std::vector<std::size_t> terms; ///< indices into the equation's terms
};

/// Affine exponent of a term under y = a0 chi^p: weight * p - order_sum.
struct TermExponent {
    unsigned weight = 0;
    unsigned order_sum = 0;

    Rational at(const Rational &p) const { return Rational(weight) * p - Rational(order_sum); }
};

std::vector<TermExponent> term_exponents(const DiffPoly &eq);

/// Candidate leading exponents in ascending order, unresolved ones last.
std::vector<DominantBalance> dominant_exponents(const OdeProblem &ode);

struct LeadingCoefficient {
    enum class Kind { value, arbitrary, unresolved };
    Kind kind = Kind::value;
    Rational value;
    UPoly unresolved; ///< factor without rational roots, in a0

    std::string to_string() const;
};

/// Nonzero rational roots of the balance polynomial, "arbitrary" when it
/// vanishes identically, or the unresolved factor.
std::vector<LeadingCoefficient> leading_coefficients(const OdeProblem &ode, const Rational &p,
                                                     const std::vector<std::size_t> &terms);

/// Polynomial in a0 whose roots are the leading coefficients.
UPoly balance_polynomial(const OdeProblem &ode, const Rational &p, const std::vector<std::size_t> &terms);

/// Coefficient of the part linear in mu when a0 chi^p + mu chi^(p+s) is
/// substituted into the dominant terms, as a polynomial in s and a0.
Poly resonance_polynomial(const OdeProblem &ode, const Rational &p, const std::vector<std::size_t> &terms);

enum class Direction { right, left, mixed };
std::string to_string(Direction d);

struct Verdict {
    enum class Kind { pass, weak_pass, fail, inconclusive };
    Kind kind = Kind::pass;
    std::string reason;

    bool passing() const { return kind == Kind::pass || kind == Kind::weak_pass; }
    std::string to_string() const;
};

struct PuiseuxSeries {
    Rational p;
    Rational delta;
    std::vector<ParamPoly> coefficients; ///< coefficients[i] multiplies chi^(p + i delta)
    std::vector<unsigned> free_levels;   ///< levels that introduced an arbitrary constant

    unsigned order() const { return coefficients.empty() ? 0 : static_cast<unsigned>(coefficients.size() - 1); }
};

struct Branch {
    std::optional<Rational> p;
    UPoly p_poly; ///< set when p is unresolved
    LeadingCoefficient a0;
    std::vector<std::size_t> dominant_terms;
    Poly resonance_poly;                    ///< in s and a0; empty until computed
    std::vector<Rational> resonances;       ///< -1 first, then by magnitude; repeats kept
    int resonance_residual_degree = 0;
    std::optional<Direction> direction; ///< set once resonances are admissible
    Rational delta;
    Verdict verdict;
    std::optional<PuiseuxSeries> series;
    unsigned arbitrary_constants = 0; ///< fresh series constants plus x0

    std::string p_string() const;
};

/// Resonances, direction, step and series for one branch. orders overrides the
/// default truncation (max |resonance| * q + 5).
void analyze_branch(const OdeProblem &ode, Branch &b, std::optional<unsigned> orders = {});

/// Expands the series of a branch whose resonances and step are set. Sets the
/// verdict to fail or inconclusive when the expansion breaks down.
PuiseuxSeries expand_series(const OdeProblem &ode, Branch &b, unsigned M);

struct PainleveOptions {
    std::optional<unsigned> orders;
    bool lenient = false;
    unsigned threads = 0;
};

struct PainleveReport {
    std::vector<Branch> branches;
    std::string overall; ///< passes, weak, fails, inconclusive, no-branches
    std::string reason;
    bool generic_branch_found = false;
};

PainleveReport painleve_test(const OdeProblem &ode, const PainleveOptions &opts = {});

} // namespace odekit

#endif
