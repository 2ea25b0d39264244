#include "properties.hpp"

#include <fstream>
#include <map>

#include "odekit/corpus.hpp"
#include "odekit/diff_poly.hpp"
#include "odekit/symmetry_solver.hpp"

namespace odekit::testing {

Rational random_rational(Rng &rng, long range) {
    std::uniform_int_distribution<long> num(-range, range), den(1, 3);
    return Rational(num(rng)) / Rational(den(rng));
}

Poly random_poly(Rng &rng, const std::vector<Var> &vars, unsigned max_degree, unsigned max_terms) {
    std::uniform_int_distribution<unsigned> nterms(0, max_terms), exp(0, max_degree);
    Poly p;
    const unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        std::vector<Monomial::Factor> f;
        unsigned left = max_degree;
        for (Var v : vars) {
            const unsigned e = std::min(exp(rng), left);
            left -= e;
            if (e) f.push_back({v, e});
        }
        p.add_term(Monomial(std::move(f)), random_rational(rng));
    }
    return p;
}

VectorField random_field(Rng &rng, unsigned max_degree, unsigned max_terms) {
    const std::vector<Var> xy{vars::x, vars::y};
    return {random_poly(rng, xy, max_degree, max_terms), random_poly(rng, xy, max_degree, max_terms)};
}

PropertyResult prolongation_matches_binomial(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
        const VectorField g = random_field(rng, 3, 4);
        const unsigned n = 1 + static_cast<unsigned>(i % 4);
        if (prolong(g, n).coefficients != prolong_binomial(g, n))
            r.fail("order " + std::to_string(n) + " for field " + g.to_string());
    }
    return r;
}

PropertyResult bracket_laws(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
        const VectorField a = random_field(rng), b = random_field(rng), c = random_field(rng);
        if (!(lie_bracket(a, b) + lie_bracket(b, a)).is_zero())
            r.fail("antisymmetry: " + a.to_string() + " / " + b.to_string());
        const VectorField jac =
            lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) + lie_bracket(c, lie_bracket(a, b));
        if (!jac.is_zero()) r.fail("jacobi: " + a.to_string() + " / " + b.to_string() + " / " + c.to_string());
    }
    return r;
}

namespace {

// Total derivative for functions of (x, y, y'), written out for order two.
Poly d_total(const Poly &f) {
    return f.diff(vars::x) + Poly::var(vars::deriv(1)) * f.diff(vars::y) +
           Poly::var(vars::deriv(2)) * f.diff(vars::deriv(1));
}

bool second_order_condition(const VectorField &g, const Poly &F) {
    const Poly y1 = Poly::var(vars::deriv(1)), y2 = Poly::var(vars::deriv(2));
    const Poly dxi = d_total(g.xi);
    const Poly eta1 = d_total(g.eta) - y1 * dxi;
    const Poly eta2 = d_total(eta1) - y2 * dxi;
    const Poly cond = eta2 - g.xi * F.diff(vars::x) - g.eta * F.diff(vars::y) - eta1 * F.diff(vars::deriv(1));
    return cond.compose(vars::deriv(2), F).is_zero();
}

using Series = std::map<Rational, Rational>;

Series derivative(const Series &s) {
    Series out;
    for (const auto &[e, c] : s)
        if (!e.is_zero()) out[e - Rational(1)] = out[e - Rational(1)] + c * e;
    return out;
}

Series multiply(const Series &a, const Series &b) {
    Series out;
    for (const auto &[ea, ca] : a)
        for (const auto &[eb, cb] : b) out[ea + eb] = out[ea + eb] + ca * cb;
    return out;
}

} // namespace

PropertyResult solver_fields_are_symmetries(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r;
    std::size_t fields = 0;
    const std::vector<Var> vs{vars::x, vars::y, vars::deriv(1)};
    const std::vector<Var> autonomous{vars::y, vars::deriv(1)};
    while (r.cases < cases) {
        const Poly F = random_poly(rng, r.cases % 3 == 0 ? vs : autonomous, 3, 3);
        const OdeProblem ode(DiffPoly(Poly::var(vars::deriv(2)) - F, {}));
        const unsigned degree = 1 + static_cast<unsigned>(r.cases % 2);
        const auto basis = solve_point_symmetries(ode, degree, 1);
        for (const auto &g : basis.fields) {
            ++fields;
            if (!second_order_condition(g, F))
                r.fail("field " + g.to_string() + " of y'' = " + F.to_string());
        }
        ++r.cases;
    }
    if (fields == 0) r.fail("no fields were produced at all");
    return r;
}

bool series_residual_vanishes(const OdeProblem &ode, const Branch &b, Rng &rng, std::string *why) {
    const PuiseuxSeries &ser = *b.series;
    std::map<Var, Rational> values;
    for (unsigned L : ser.free_levels) {
        Rational v = random_rational(rng, 7);
        if (v.is_zero()) v = Rational(L + 2);
        values[vars::param(L)] = v;
    }
    Series y;
    for (std::size_t i = 0; i < ser.coefficients.size(); ++i) {
        const ParamPoly &c = ser.coefficients[i];
        Rational v = c.num.evaluate(values).constant_term();
        if (c.a0_power) v = v / values.at(vars::param(0)).pow(c.a0_power);
        if (!v.is_zero()) y[ser.p + Rational(static_cast<long>(i)) * ser.delta] = v;
    }

    std::vector<Series> derivs{y};
    Series total;
    Rational base;
    bool first = true;
    for (const auto &[m, coeff] : ode.equation.poly().terms()) {
        Series term{{Rational(0), coeff}};
        Rational e;
        for (const auto &[v, k] : m.factors()) {
            const unsigned order = vars::deriv_order(v);
            while (derivs.size() <= order) derivs.push_back(derivative(derivs.back()));
            for (unsigned j = 0; j < k; ++j) term = multiply(term, derivs[order]);
            e = e + Rational(k) * (ser.p - Rational(order));
        }
        base = first ? e : std::min(base, e);
        first = false;
        for (const auto &[ex, c] : term) total[ex] = total[ex] + c;
    }

    const Rational edge = base + Rational(static_cast<long>(ser.order())) * ser.delta;
    for (const auto &[ex, c] : total) {
        const bool inside = ser.delta.sign() > 0 ? ex <= edge : ex >= edge;
        if (inside && !c.is_zero()) {
            if (why) *why = "coefficient of chi^(" + ex.to_string() + ") is " + c.to_string();
            return false;
        }
    }
    return true;
}

PropertyResult series_residual_cancels(const std::string &corpus_path, std::size_t cases, std::uint64_t seed) {
    PropertyResult r;
    std::vector<std::pair<OdeProblem, Branch>> branches;
    auto collect = [&](const OdeProblem &ode) {
        for (auto &b : painleve_test(ode).branches)
            if (b.verdict.passing() && b.series) branches.emplace_back(ode, std::move(b));
    };

    std::ifstream in(corpus_path);
    if (!in) {
        r.fail("cannot open " + corpus_path);
        return r;
    }
    for (const auto &e : parse_corpus(in)) {
        if (!e.wants_painleve()) continue;
        ExpandOptions opts;
        opts.params = e.params;
        const OdeProblem ode = make_problem(e.equation, opts);
        collect(ode);
    }
    for (const char *extra : {"y'' - 6*y^2", "y'' - 2*y^3", "y'' + y*y'", "y''' + 12*y*y' + 6*y^3"})
        collect(make_problem(extra));
    if (branches.empty()) {
        r.fail("no passing branches");
        return r;
    }

    Rng rng(seed);
    for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
        const auto &[ode, b] = branches[i % branches.size()];
        std::string why;
        if (!series_residual_vanishes(ode, b, rng, &why))
            r.fail(format(ode.equation) + ", branch p=" + b.p_string() + " a0=" + b.a0.to_string() + ": " + why);
    }
    return r;
}

} // namespace odekit::testing
