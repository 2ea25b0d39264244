#include "odekit/lie.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace odekit {

VectorField::VectorField(Poly xi_, Poly eta_) : xi(std::move(xi_)), eta(std::move(eta_)) {
    for (const Poly *p : {&xi, &eta})
        for (Var v : p->variables())
            if (v != vars::x && v != vars::y) throw Error("point field coefficients may depend on x and y only");
}

VectorField VectorField::parse(std::string_view text) {
    // top-level comma; D(y,k) cannot occur in a point field
    int depth = 0;
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == ',' && depth == 0) {
            if (split != std::string_view::npos) throw Error("field must be given as \"xi,eta\"");
            split = i;
        }
    }
    if (split == std::string_view::npos) throw Error("field must be given as \"xi,eta\"");
    return VectorField(parse_xy_poly(text.substr(0, split)), parse_xy_poly(text.substr(split + 1)));
}

std::string VectorField::to_string() const { return xi.to_string() + ", " + eta.to_string(); }

Poly VectorField::apply(const Poly &f) const { return xi * f.diff(vars::x) + eta * f.diff(vars::y); }

// ---------------------------------------------------------------------------

Poly total_derivative(const Poly &f, unsigned max_order) {
    const int have = f.max_deriv_order();
    if (have >= static_cast<int>(max_order))
        throw Error("total_derivative: expression has derivatives of order >= max_order");
    Poly r = f.diff(vars::x);
    for (unsigned k = 0; k < max_order; ++k) {
        const Poly fk = f.diff(vars::deriv(k));
        if (!fk.is_zero()) r += Poly::var(vars::deriv(k + 1)) * fk;
    }
    return r;
}

Poly total_derivative(const Poly &f) {
    return total_derivative(f, static_cast<unsigned>(std::max(f.max_deriv_order(), 0) + 1));
}

Poly ExtendedField::apply(const Poly &f) const {
    Poly r = base.apply(f);
    for (unsigned k = 1; k <= order(); ++k) {
        const Poly fk = f.diff(vars::deriv(k));
        if (!fk.is_zero()) r += coefficients[k - 1] * fk;
    }
    return r;
}

std::vector<Poly> prolong_binomial(const VectorField &g, unsigned n) {
    std::vector<Poly> dxi{g.xi}, deta{g.eta};
    for (unsigned i = 1; i <= n; ++i) {
        dxi.push_back(total_derivative(dxi.back()));
        deta.push_back(total_derivative(deta.back()));
    }
    std::vector<Poly> out;
    for (unsigned k = 1; k <= n; ++k) {
        Poly c = deta[k];
        Rational binom(1); // C(k, i+1)
        for (unsigned i = 0; i < k; ++i) {
            binom = binom * Rational(static_cast<long>(k - i)) / Rational(static_cast<long>(i + 1));
            if (!dxi[i + 1].is_zero()) c -= binom * (Poly::var(vars::deriv(k - i)) * dxi[i + 1]);
        }
        out.push_back(std::move(c));
    }
    return out;
}

ExtendedField prolong(const VectorField &g, unsigned n) {
    if (n < 1) throw Error("prolongation order must be at least 1");
    ExtendedField ext{g, {}};
    const Poly dxi = total_derivative(g.xi, 1);
    Poly prev = g.eta;
    for (unsigned k = 1; k <= n; ++k) {
        Poly next = total_derivative(prev, k);
        if (!dxi.is_zero()) next -= Poly::var(vars::deriv(k)) * dxi;
        ext.coefficients.push_back(next);
        prev = std::move(next);
    }
#ifndef NDEBUG
    if (prolong_binomial(g, n) != ext.coefficients)
        throw std::logic_error("prolongation recursion disagrees with binomial form");
#endif
    return ext;
}

// ---------------------------------------------------------------------------

OnShell::OnShell(const DiffPoly &eq) : n_(eq.order()) {
    if (!eq.quasi_linear()) throw Error("cannot solve for highest derivative");
    const Var top = vars::deriv(n_);
    a_ = eq.poly().coefficient_in(top, 1);
    b_ = eq.poly().coefficient_in(top, 0);
}

const OnShell::Reduced &OnShell::fraction_for(unsigned m) const {
    if (fractions_.empty()) fractions_.push_back({-b_, 1});
    while (fractions_.size() <= m - n_) {
        // D(N / A^e) = (D(N) A - e N D(A)) / A^(e+1)
        const Poly num = fractions_.back().numerator;
        const unsigned e = fractions_.back().power;
        const unsigned order = static_cast<unsigned>(n_ + fractions_.size());
        Poly g = total_derivative(num, order) * a_ - Rational(static_cast<long>(e)) * num * total_derivative(a_, order);
        Reduced r = reduce(g);
        fractions_.push_back({std::move(r.numerator), e + 1 + r.power});
    }
    return fractions_[m - n_];
}

unsigned OnShell::required_power(const Poly &p) const {
    unsigned total = 0;
    const int top = p.max_deriv_order();
    for (int m = static_cast<int>(n_); m <= top; ++m) {
        const unsigned deg = p.degree_in(vars::deriv(static_cast<unsigned>(m)));
        if (deg) total += deg * fraction_for(static_cast<unsigned>(m)).power;
    }
    return total;
}

OnShell::Reduced OnShell::reduce(const Poly &p, unsigned min_power) const {
    std::map<Var, Fraction> bindings;
    const int top = p.max_deriv_order();
    for (int m = static_cast<int>(n_); m <= top; ++m) {
        const Var v = vars::deriv(static_cast<unsigned>(m));
        if (!p.contains(v)) continue;
        const Reduced &f = fraction_for(static_cast<unsigned>(m));
        bindings.emplace(v, Fraction{f.numerator, a_.pow(f.power)});
    }
    Reduced out;
    if (bindings.empty()) {
        out.numerator = p;
    } else {
        Substituted s = substitute(p, bindings);
        out.numerator = std::move(s.numerator);
        for (const auto &[v, k] : s.denominator_powers)
            out.power += k * fraction_for(vars::deriv_order(v)).power;
    }
    if (min_power > out.power) {
        out.numerator = out.numerator * a_.pow(min_power - out.power);
        out.power = min_power;
    }
    return out;
}

SymmetryCheck is_symmetry(const VectorField &g, const OdeProblem &ode) {
    const OnShell shell(ode.equation);
    const ExtendedField ext = prolong(g, ode.equation.order());
    OnShell::Reduced r = shell.reduce(ext.apply(ode.equation.poly()));
    return {r.numerator.is_zero(), std::move(r.numerator)};
}

bool check_contact_condition(const Poly &xi, const Poly &eta) {
    const Var y1 = vars::deriv(1);
    for (const Poly *p : {&xi, &eta})
        if (p->max_deriv_order() > 1) throw Error("contact coefficients may depend on x, y, y' only");
    return eta.diff(y1) == Poly::var(y1) * xi.diff(y1);
}

VectorField lie_bracket(const VectorField &g1, const VectorField &g2) {
    return {g1.apply(g2.xi) - g2.apply(g1.xi), g1.apply(g2.eta) - g2.apply(g1.eta)};
}

// ---------------------------------------------------------------------------

FieldCoords::FieldCoords(const std::vector<VectorField> &fields) {
    std::set<std::pair<Monomial, int>, bool (*)(const std::pair<Monomial, int> &, const std::pair<Monomial, int> &)>
        cols([](const std::pair<Monomial, int> &a, const std::pair<Monomial, int> &b) {
            const int c = grlex_compare(a.first, b.first);
            if (c != 0) return c > 0;
            return a.second < b.second;
        });
    for (const auto &g : fields) {
        for (const auto &[m, c] : g.xi.terms()) cols.emplace(m, 0);
        for (const auto &[m, c] : g.eta.terms()) cols.emplace(m, 1);
    }
    cols_.assign(cols.begin(), cols.end());
}

RationalVector FieldCoords::to_vector(const VectorField &g) const {
    RationalVector v(cols_.size());
    std::size_t used = 0;
    for (std::size_t i = 0; i < cols_.size(); ++i) {
        const Poly &comp = cols_[i].second == 0 ? g.xi : g.eta;
        v[i] = comp.coefficient(cols_[i].first);
        if (!v[i].is_zero()) ++used;
    }
    if (used != g.xi.size() + g.eta.size()) throw Error("field has terms outside the coordinate system");
    return v;
}

VectorField FieldCoords::from_vector(const RationalVector &v) const {
    VectorField g;
    for (std::size_t i = 0; i < cols_.size(); ++i)
        (cols_[i].second == 0 ? g.xi : g.eta).add_term(cols_[i].first, v[i]);
    return g;
}

std::size_t field_rank(const std::vector<VectorField> &fields) {
    if (fields.empty()) return 0;
    const FieldCoords coords(fields);
    std::vector<RationalVector> rows;
    for (const auto &g : fields) rows.push_back(coords.to_vector(g));
    return rank(ExactMatrix::from_rows(rows, coords.size()));
}

bool span_contains(const std::vector<VectorField> &basis, const VectorField &g) {
    std::vector<VectorField> extended = basis;
    extended.push_back(g);
    return field_rank(extended) == field_rank(basis);
}

VectorField normalize_field(const VectorField &g) {
    if (g.is_zero()) return g;
    const FieldCoords coords({g});
    return coords.from_vector(normalize_vector(coords.to_vector(g)));
}

// ---------------------------------------------------------------------------

bool StructureTable::antisymmetric() const {
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (constants[i][j][k] != -constants[j][i][k]) return false;
    return true;
}

bool StructureTable::satisfies_jacobi() const {
    const std::size_t n = basis.size();
    const auto &c = constants;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Rational sum;
                    for (std::size_t m = 0; m < n; ++m)
                        sum += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
                    if (!sum.is_zero()) return false;
                }
    return true;
}

StructureTable structure_constants(const std::vector<VectorField> &basis) {
    const std::size_t n = basis.size();
    if (field_rank(basis) != n) throw Error("dependent basis");

    std::vector<VectorField> brackets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) brackets.push_back(lie_bracket(basis[i], basis[j]));
    std::vector<VectorField> all = basis;
    all.insert(all.end(), brackets.begin(), brackets.end());
    const FieldCoords coords(all);
    std::vector<RationalVector> vecs;
    for (const auto &g : basis) vecs.push_back(coords.to_vector(g));

    StructureTable table{basis, std::vector(n, std::vector(n, std::vector<Rational>(n)))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto c = solve_in_span(vecs, coords.to_vector(brackets[i * n + j]));
            if (!c)
                throw Error("not closed under bracket: [G" + std::to_string(i + 1) + ", G" + std::to_string(j + 1) +
                            "]");
            for (std::size_t k = 0; k < n; ++k) {
                table.constants[i][j][k] = (*c)[k];
                table.constants[j][i][k] = -(*c)[k];
            }
        }
    return table;
}

std::string to_string(AlgebraType t) {
    switch (t) {
    case AlgebraType::I: return "I";
    case AlgebraType::II: return "II";
    case AlgebraType::III: return "III";
    case AlgebraType::IV: return "IV";
    }
    return "?";
}

namespace {

VectorField unit_leading(const VectorField &g) {
    const FieldCoords coords({g});
    RationalVector v = coords.to_vector(g);
    const auto lead = std::find_if(v.begin(), v.end(), [](const Rational &r) { return !r.is_zero(); });
    const Rational scale = lead->inverse();
    for (auto &x : v) x *= scale;
    return coords.from_vector(v);
}

} // namespace

PairClassification classify_pair(const VectorField &g1, const VectorField &g2) {
    const char *not_2d = "pair does not span a two-dimensional algebra";
    if (field_rank({g1, g2}) != 2) throw Error(not_2d);
    const VectorField b = lie_bracket(g1, g2);

    if (b.is_zero()) {
        const bool generic = !(g1.xi * g2.eta - g2.xi * g1.eta).is_zero();
        return {generic ? AlgebraType::I : AlgebraType::II, unit_leading(g1), unit_leading(g2)};
    }

    const FieldCoords coords({g1, g2, b});
    const auto ab = solve_in_span({coords.to_vector(g1), coords.to_vector(g2)}, coords.to_vector(b));
    if (!ab) throw Error(not_2d);
    const Rational &alpha = (*ab)[0], &beta = (*ab)[1];

    // [b, u g1 + v g2] = (alpha v - beta u) b; pick alpha v - beta u = 1.
    VectorField second = !alpha.is_zero() ? alpha.inverse() * g2 : (-beta.inverse()) * g1;
    VectorField first = unit_leading(b);
    const bool generic = !(first.xi * second.eta - second.xi * first.eta).is_zero();
    return {generic ? AlgebraType::III : AlgebraType::IV, std::move(first), std::move(second)};
}

} // namespace odekit
