#ifndef ODEKIT_LIE_HPP
#define ODEKIT_LIE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "odekit/diff_poly.hpp"
#include "odekit/matrix.hpp"
#include "odekit/poly.hpp"

namespace odekit {

/// Point generator G = xi d/dx + eta d/dy with polynomial coefficients in (x, y).
/// The zero field is representable (it is what commuting brackets return).
struct VectorField {
    Poly xi;
    Poly eta;

    VectorField() = default;
    VectorField(Poly xi_, Poly eta_);

    /// Parses "xi,eta", each component a polynomial in x and y.
    static VectorField parse(std::string_view text);

    bool is_zero() const { return xi.is_zero() && eta.is_zero(); }
    /// "xi, eta" in canonical form; round-trips through parse().
    std::string to_string() const;

    /// G(f) = xi f_x + eta f_y.
    Poly apply(const Poly &f) const;

    friend VectorField operator+(const VectorField &a, const VectorField &b) { return {a.xi + b.xi, a.eta + b.eta}; }
    friend VectorField operator-(const VectorField &a, const VectorField &b) { return {a.xi - b.xi, a.eta - b.eta}; }
    friend VectorField operator*(const Rational &c, const VectorField &g) { return {c * g.xi, c * g.eta}; }
    friend bool operator==(const VectorField &, const VectorField &) = default;
};

/// Total derivative d/dx along solutions: f_x + sum_{k < max_order} y^(k+1) f_{y^(k)}.
/// f may involve derivatives of order < max_order only.
Poly total_derivative(const Poly &f, unsigned max_order);
/// Uses max_order = (highest derivative in f) + 1.
Poly total_derivative(const Poly &f);

/// n-th extension G^[n]: the base field plus eta^[1..n].
struct ExtendedField {
    VectorField base;
    std::vector<Poly> coefficients; ///< coefficients[k-1] == eta^[k]

    unsigned order() const { return static_cast<unsigned>(coefficients.size()); }
    /// G^[n] f = xi f_x + eta f_y + sum_k eta^[k] f_{y^(k)}.
    Poly apply(const Poly &f) const;
};

/// Extension by the recursion eta^[k] = D(eta^[k-1]) - y^(k) D(xi). Debug builds
/// cross-check every coefficient against prolong_binomial().
ExtendedField prolong(const VectorField &g, unsigned n);

/// Closed form eta^[k] = D^k eta - sum_{i<k} C(k, i+1) y^(k-i) D^(i+1) xi, k = 1..n.
std::vector<Poly> prolong_binomial(const VectorField &g, unsigned n);

/// Restriction to solutions of a quasi-linear equation A y^(n) + B = 0.
/// Derivatives y^(m), m >= n, are replaced by fractions over powers of A.
class OnShell {
public:
    explicit OnShell(const DiffPoly &eq);

    struct Reduced {
        Poly numerator;
        unsigned power = 0; ///< result == numerator / A^power
    };

    /// Smallest power of A that clears the denominators of p after substitution.
    unsigned required_power(const Poly &p) const;
    /// Substitutes on shell and clears denominators with A^max(required, min_power).
    Reduced reduce(const Poly &p, unsigned min_power = 0) const;

    const Poly &leading() const { return a_; }
    unsigned order() const { return n_; }

private:
    const Reduced &fraction_for(unsigned m) const;

    unsigned n_;
    Poly a_, b_;
    mutable std::vector<Reduced> fractions_; ///< fractions_[j] is y^(n+j) on shell
};

struct SymmetryCheck {
    bool holds = false;
    Poly residual; ///< numerator of G^[n] f on shell
};

/// Lie point symmetry condition G^[n] f |_{f=0} = 0.
SymmetryCheck is_symmetry(const VectorField &g, const OdeProblem &ode);

/// Contact condition d(eta)/dy' == y' d(xi)/dy' for coefficients in (x, y, y').
bool check_contact_condition(const Poly &xi, const Poly &eta);

/// [g1, g2] = (g1(xi2) - g2(xi1)) d/dx + (g1(eta2) - g2(eta1)) d/dy.
VectorField lie_bracket(const VectorField &g1, const VectorField &g2);

/// Coordinates of fields over shared (monomial, component) columns. Columns run
/// from the grlex-largest monomial down, xi before eta, so the first nonzero
/// coordinate of a field is its leading term.
class FieldCoords {
public:
    explicit FieldCoords(const std::vector<VectorField> &fields);

    std::size_t size() const { return cols_.size(); }
    RationalVector to_vector(const VectorField &g) const;
    VectorField from_vector(const RationalVector &v) const;

private:
    std::vector<std::pair<Monomial, int>> cols_;
};

/// Rank of a set of fields over the rationals.
std::size_t field_rank(const std::vector<VectorField> &fields);
/// Exact membership test by rank comparison.
bool span_contains(const std::vector<VectorField> &basis, const VectorField &g);
/// Integer coefficients with content 1 and positive leading coefficient.
VectorField normalize_field(const VectorField &g);

struct StructureTable {
    std::vector<VectorField> basis;
    /// constants[i][j][k]: [G_i, G_j] = sum_k constants[i][j][k] G_k
    std::vector<std::vector<std::vector<Rational>>> constants;

    bool antisymmetric() const;
    bool satisfies_jacobi() const;
};

StructureTable structure_constants(const std::vector<VectorField> &basis);

enum class AlgebraType { I, II, III, IV };
std::string to_string(AlgebraType t);

struct PairClassification {
    AlgebraType type;
    VectorField g1, g2; ///< for III/IV normalized so that [g1, g2] == g1
};

/// Two-dimensional algebra type of the span of (g1, g2) in Lie's classification.
PairClassification classify_pair(const VectorField &g1, const VectorField &g2);

} // namespace odekit

#endif
