#ifndef ODEKIT_DIFF_POLY_HPP
#define ODEKIT_DIFF_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "odekit/expr.hpp"
#include "odekit/poly.hpp"

namespace odekit {

/// Controls how identifiers in the source text are interpreted.
struct ExpandOptions {
    std::optional<std::string> dep;        ///< inferred from primes / D(.,k) when unset, else "y"
    std::string indep = "x";
    std::map<std::string, Rational> params; ///< numeric values for named equation constants
};

/// Differential polynomial f(x, y, y', ..., y^(n)) with rational coefficients,
/// the canonical form of an equation f = 0.
class DiffPoly {
public:
    /// Validates: nonzero, only x and y^(k) variables, order >= 1.
    DiffPoly(Poly poly, VarNames names);

    const Poly &poly() const { return poly_; }
    const VarNames &names() const { return names_; }
    unsigned order() const { return order_; }
    bool quasi_linear() const { return poly_.degree_in(vars::deriv(order_)) == 1; }
    bool autonomous() const { return !poly_.contains(vars::x); }

    friend bool operator==(const DiffPoly &a, const DiffPoly &b) { return a.poly_ == b.poly_; }

private:
    Poly poly_;
    VarNames names_;
    unsigned order_ = 0;
};

/// A parsed equation together with its provenance.
struct OdeProblem {
    DiffPoly equation;
    std::string source;
    bool quasi_linear = false;

    explicit OdeProblem(DiffPoly eq, std::string src = {})
        : equation(std::move(eq)), source(std::move(src)), quasi_linear(equation.quasi_linear()) {}
};

/// Expands a source tree to a collected polynomial. Identifiers resolve to the
/// independent variable, the dependent variable, or a named parameter.
Poly expand(const SourceExpr &e, const ExpandOptions &opts, VarNames *names_out = nullptr);

DiffPoly to_diff_poly(const SourceExpr &e, const ExpandOptions &opts = {});

/// parse + to_diff_poly.
OdeProblem make_problem(std::string_view text, const ExpandOptions &opts = {});

/// Polynomial in x and y only (vector field components).
Poly parse_xy_poly(std::string_view text);

std::string format(const DiffPoly &p);
std::string format(const Poly &p, const VarNames &names = {});

} // namespace odekit

#endif
