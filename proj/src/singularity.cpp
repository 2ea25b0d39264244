#include "odekit/singularity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "odekit/parallel.hpp"

namespace odekit {

namespace {

const Var kA0 = vars::param(0);

// Removes a common factor a0^m from numerator and denominator.
void cancel_a0(ParamPoly &v) {
    if (v.num.is_zero()) {
        v.a0_power = 0;
        return;
    }
    unsigned m = v.a0_power;
    for (const auto &[mono, c] : v.num.terms()) m = std::min(m, mono.exponent(kA0));
    if (m == 0) return;
    Poly q;
    v.num.divide_by_monomial(Monomial::of(kA0, m), q);
    v.num = std::move(q);
    v.a0_power -= m;
}

Poly a0_pow(unsigned k) { return k ? Poly::var(kA0, k) : Poly(1); }

// Divides out (t - r)^mult for every listed root.
UPoly deflate(UPoly q, const std::vector<RationalRoot> &roots) {
    for (const auto &r : roots)
        for (unsigned m = 0; m < r.multiplicity; ++m) {
            const auto &c = q.coeffs();
            const int n = q.degree();
            std::vector<Rational> out(static_cast<std::size_t>(n));
            Rational carry;
            for (int i = n; i >= 1; --i) {
                carry = c[static_cast<std::size_t>(i)] + carry * r.value;
                out[static_cast<std::size_t>(i - 1)] = carry;
            }
            q = UPoly(std::move(out));
        }
    return q;
}

// Integer coefficients, content 1, positive leading coefficient.
UPoly primitive(const UPoly &q) {
    if (q.is_zero()) return q;
    BigInt l = 1, g = 0;
    for (const auto &c : q.coeffs()) l = lcm(l, c.den());
    std::vector<Rational> out;
    for (const auto &c : q.coeffs()) {
        out.push_back(c * Rational(l, BigInt(1)));
        g = gcd(g, out.back().num());
    }
    if (q.coeffs().back().sign() < 0) g = -g;
    for (auto &c : out) c = c * Rational(BigInt(1), g);
    return UPoly(std::move(out));
}

std::vector<std::pair<Monomial, Rational>> indexed_terms(const DiffPoly &eq) {
    return {eq.poly().terms().begin(), eq.poly().terms().end()};
}

// Product over factors of [p]_k^e, the coefficient of a0^w chi^(e_t(p)).
Rational balance_factor(const Monomial &m, const Rational &p) {
    Rational r(1);
    for (const auto &[v, e] : m.factors()) r = r * falling_factorial(p, vars::deriv_order(v)).pow(e);
    return r;
}

} // namespace

ParamPoly::ParamPoly(Poly n, unsigned k) : num(std::move(n)), a0_power(k) { cancel_a0(*this); }

std::string ParamPoly::to_string() const {
    std::string s = num.to_string();
    if (a0_power == 0) return s;
    if (num.size() > 1) s = "(" + s + ")";
    return s + "/a0" + (a0_power > 1 ? "^" + std::to_string(a0_power) : "");
}

ParamPoly operator+(const ParamPoly &a, const ParamPoly &b) {
    const unsigned k = std::max(a.a0_power, b.a0_power);
    return {a.num * a0_pow(k - a.a0_power) + b.num * a0_pow(k - b.a0_power), k};
}

ParamPoly operator-(const ParamPoly &a, const ParamPoly &b) {
    const unsigned k = std::max(a.a0_power, b.a0_power);
    return {a.num * a0_pow(k - a.a0_power) - b.num * a0_pow(k - b.a0_power), k};
}

ParamPoly operator*(const ParamPoly &a, const ParamPoly &b) { return {a.num * b.num, a.a0_power + b.a0_power}; }

std::vector<TermExponent> term_exponents(const DiffPoly &eq) {
    std::vector<TermExponent> out;
    for (const auto &[m, c] : eq.poly().terms()) {
        TermExponent t;
        for (const auto &[v, e] : m.factors()) {
            t.weight += e;
            t.order_sum += e * vars::deriv_order(v);
        }
        out.push_back(t);
    }
    return out;
}

std::vector<DominantBalance> dominant_exponents(const OdeProblem &ode) {
    const DiffPoly &eq = ode.equation;
    if (!eq.autonomous()) throw Error("autonomous equations only");
    const auto exps = term_exponents(eq);
    const auto terms = indexed_terms(eq);
    const std::size_t n = exps.size();

    std::set<Rational> candidates;
    std::map<std::pair<unsigned, unsigned>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        groups[{exps[i].weight, exps[i].order_sum}].push_back(i);
        for (std::size_t j = i + 1; j < n; ++j)
            if (exps[i].weight != exps[j].weight)
                candidates.insert(Rational(static_cast<long>(exps[i].order_sum) - static_cast<long>(exps[j].order_sum)) /
                                  Rational(static_cast<long>(exps[i].weight) - static_cast<long>(exps[j].weight)));
    }

    // Terms sharing one exponent function balance only where their combined
    // coefficient, a polynomial in p, vanishes.
    std::vector<DominantBalance> unresolved;
    for (const auto &[key, members] : groups) {
        if (members.size() < 2) continue;
        Poly in_p;
        for (std::size_t i : members) {
            Poly f(terms[i].second);
            for (const auto &[v, e] : terms[i].first.factors())
                f = f * falling_factorial(vars::deriv_order(v)).to_poly(vars::p).pow(e);
            in_p += f;
        }
        const UPoly q = UPoly::from_poly(in_p, vars::p);
        if (q.is_zero()) continue;
        const RootSet roots = rational_roots(q);
        for (const auto &r : roots.roots) candidates.insert(r.value);
        if (roots.residual_degree > 0) unresolved.push_back({std::nullopt, primitive(deflate(q, roots.roots)), members});
    }

    std::vector<DominantBalance> out;
    for (const Rational &p : candidates) {
        if (p.is_zero() || (p.is_integer() && p.sign() > 0)) continue;
        Rational lo = exps[0].at(p);
        for (const auto &e : exps) lo = std::min(lo, e.at(p));
        DominantBalance b{p, {}, {}};
        for (std::size_t i = 0; i < n; ++i)
            if (exps[i].at(p) == lo) b.terms.push_back(i);
        if (b.terms.size() >= 2) out.push_back(std::move(b));
    }
    for (auto &u : unresolved) out.push_back(std::move(u));
    return out;
}

UPoly balance_polynomial(const OdeProblem &ode, const Rational &p, const std::vector<std::size_t> &terms) {
    const auto all = indexed_terms(ode.equation);
    const auto exps = term_exponents(ode.equation);
    std::vector<Rational> coeffs;
    for (std::size_t i : terms) {
        const unsigned w = exps[i].weight;
        if (coeffs.size() <= w) coeffs.resize(w + 1);
        coeffs[w] = coeffs[w] + all[i].second * balance_factor(all[i].first, p);
    }
    return UPoly(std::move(coeffs));
}

std::string LeadingCoefficient::to_string() const {
    switch (kind) {
    case Kind::value: return value.to_string();
    case Kind::arbitrary: return "arbitrary";
    case Kind::unresolved: return unresolved.is_zero() ? "unresolved" : "unresolved(" + unresolved.to_string("a0") + ")";
    }
    return {};
}

std::vector<LeadingCoefficient> leading_coefficients(const OdeProblem &ode, const Rational &p,
                                                     const std::vector<std::size_t> &terms) {
    const UPoly q = balance_polynomial(ode, p, terms);
    if (q.is_zero()) return {{LeadingCoefficient::Kind::arbitrary, {}, {}}};
    const RootSet roots = rational_roots(q);
    std::vector<LeadingCoefficient> out;
    for (const auto &r : roots.roots)
        if (!r.value.is_zero()) out.push_back({LeadingCoefficient::Kind::value, r.value, {}});
    if (roots.residual_degree > 0)
        out.push_back({LeadingCoefficient::Kind::unresolved, {}, primitive(deflate(q, roots.roots))});
    return out;
}

Poly resonance_polynomial(const OdeProblem &ode, const Rational &p, const std::vector<std::size_t> &terms) {
    const auto all = indexed_terms(ode.equation);
    const Poly shifted = Poly::var(vars::s) + Poly(p);
    Poly q;
    for (std::size_t i : terms) {
        const auto &[m, c] = all[i];
        unsigned w = 0;
        for (const auto &f : m.factors()) w += f.second;
        for (const auto &[v, e] : m.factors()) {
            const unsigned k = vars::deriv_order(v);
            Rational rest = Rational(e) * falling_factorial(p, k).pow(e - 1);
            for (const auto &[v2, e2] : m.factors())
                if (v2 != v) rest = rest * falling_factorial(p, vars::deriv_order(v2)).pow(e2);
            const Poly perturbed = falling_factorial(k).to_poly(vars::s).compose(vars::s, shifted);
            q += (c * rest) * perturbed * a0_pow(w - 1);
        }
    }
    return q;
}

std::string to_string(Direction d) {
    switch (d) {
    case Direction::right: return "right";
    case Direction::left: return "left";
    case Direction::mixed: return "mixed";
    }
    return {};
}

std::string Verdict::to_string() const {
    switch (kind) {
    case Kind::pass: return "pass";
    case Kind::weak_pass: return "weak-pass";
    case Kind::fail: return "fail(" + reason + ")";
    case Kind::inconclusive: return "inconclusive(" + reason + ")";
    }
    return {};
}

std::string Branch::p_string() const { return p ? p->to_string() : "unresolved(" + p_poly.to_string("p") + ")"; }

PuiseuxSeries expand_series(const OdeProblem &ode, Branch &b, unsigned M) {
    const Rational p = *b.p;
    const Rational delta = b.delta;
    const auto all = indexed_terms(ode.equation);
    const auto exps = term_exponents(ode.equation);
    const bool arbitrary = b.a0.kind == LeadingCoefficient::Kind::arbitrary;

    Rational base = exps[b.dominant_terms.front()].at(p);
    const Rational step = delta.abs();
    std::vector<long> offset(all.size());
    for (std::size_t t = 0; t < all.size(); ++t) {
        const Rational gap = (exps[t].at(p) - base) / step;
        if (!gap.is_integer()) throw std::logic_error("subdominant term off the series grid");
        offset[t] = gap.num().get_si();
    }

    PuiseuxSeries ser{p, delta, {}, {}};
    ser.coefficients.push_back(arbitrary ? ParamPoly(Poly::var(kA0)) : ParamPoly(Poly(b.a0.value)));
    if (arbitrary) ser.free_levels.push_back(0);

    const Poly &Q = b.resonance_poly;
    for (unsigned L = 1; L <= M; ++L) {
        // Forcing term: coefficient of chi^(base + L delta) with a_L set to zero.
        ParamPoly F;
        for (std::size_t t = 0; t < all.size(); ++t) {
            if (offset[t] > static_cast<long>(L)) continue;
            const std::size_t len = L - static_cast<std::size_t>(offset[t]) + 1;
            std::vector<ParamPoly> prod(len);
            prod[0] = ParamPoly(Poly(1));
            for (const auto &[v, e] : all[t].first.factors()) {
                const unsigned k = vars::deriv_order(v);
                std::vector<ParamPoly> fac(len);
                for (std::size_t i = 0; i < len && i < L; ++i)
                    fac[i] = ser.coefficients[i] *
                             ParamPoly(Poly(falling_factorial(p + Rational(static_cast<long>(i)) * delta, k)));
                for (unsigned r = 0; r < e; ++r) {
                    std::vector<ParamPoly> next(len);
                    for (std::size_t i = 0; i < len; ++i) {
                        if (prod[i].is_zero()) continue;
                        for (std::size_t j = 0; i + j < len; ++j)
                            if (!fac[j].is_zero()) next[i + j] = next[i + j] + prod[i] * fac[j];
                    }
                    prod = std::move(next);
                }
            }
            F = F + ParamPoly(all[t].second * prod[len - 1].num, prod[len - 1].a0_power);
        }

        const Rational s = Rational(static_cast<long>(L)) * delta;
        Poly D = Q.evaluate({{vars::s, s}});
        if (!arbitrary) D = D.evaluate({{kA0, b.a0.value}});
        if (D.is_zero()) {
            if (!F.is_zero()) {
                b.verdict = {Verdict::Kind::fail, "resonance condition violated at s = " + s.to_string()};
                return ser;
            }
            ser.coefficients.push_back(ParamPoly(Poly::var(vars::param(L))));
            ser.free_levels.push_back(L);
            continue;
        }
        if (D.size() != 1) {
            b.verdict = {Verdict::Kind::inconclusive, "division by an expression in a0"};
            return ser;
        }
        const auto &[dm, dc] = *D.terms().begin();
        ser.coefficients.push_back(ParamPoly(F.num * (-dc.inverse()), F.a0_power + dm.exponent(kA0)));
    }
    return ser;
}

void analyze_branch(const OdeProblem &ode, Branch &b, std::optional<unsigned> orders) {
    using K = Verdict::Kind;
    if (!b.p) {
        b.verdict = {K::fail, "unresolved leading coefficient"};
        return;
    }
    if (b.a0.kind == LeadingCoefficient::Kind::unresolved) {
        b.verdict = {K::inconclusive, "unresolved leading coefficient"};
        return;
    }
    const Rational p = *b.p;
    const bool arbitrary = b.a0.kind == LeadingCoefficient::Kind::arbitrary;
    Poly Q = resonance_polynomial(ode, p, b.dominant_terms);
    if (!arbitrary) Q = Q.evaluate({{kA0, b.a0.value}});
    b.resonance_poly = Q;

    // Q must factor as a0^k Q0(s) so that its roots do not depend on a0.
    unsigned k = 0;
    if (!Q.is_zero()) {
        k = Q.terms().begin()->first.exponent(kA0);
        for (const auto &[m, c] : Q.terms())
            if (m.exponent(kA0) != k) {
                b.verdict = {K::inconclusive, "resonance polynomial depends on a0"};
                return;
            }
    }
    Poly q0;
    Q.divide_by_monomial(Monomial::of(kA0, k), q0);
    const UPoly Q0 = UPoly::from_poly(q0, vars::s);
    if (Q0.is_zero()) {
        b.verdict = {K::inconclusive, "degenerate resonance polynomial"};
        return;
    }

    const RootSet roots = rational_roots(Q0);
    b.resonance_residual_degree = roots.residual_degree;
    bool generic = false, repeated = false;
    std::vector<Rational> others;
    for (const auto &r : roots.roots) {
        repeated = repeated || r.multiplicity > 1;
        for (unsigned m = 0; m < r.multiplicity; ++m) {
            if (r.value == Rational(-1) && !generic)
                generic = true;
            else
                others.push_back(r.value);
        }
    }
    std::stable_sort(others.begin(), others.end(),
                     [](const Rational &a, const Rational &c) { return a.abs() < c.abs(); });
    if (generic) b.resonances.push_back(Rational(-1));
    b.resonances.insert(b.resonances.end(), others.begin(), others.end());

    if (roots.residual_degree > 0) {
        b.verdict = {K::fail, "irrational resonance"};
        return;
    }
    if (!generic) {
        b.verdict = {K::fail, "missing generic resonance"};
        return;
    }
    if (repeated) {
        b.verdict = {K::fail, "repeated resonance"};
        return;
    }

    const bool nonneg = std::all_of(others.begin(), others.end(), [](const Rational &r) { return r.sign() >= 0; });
    const bool nonpos = std::all_of(others.begin(), others.end(), [](const Rational &r) { return r.sign() <= 0; });
    b.direction = nonneg ? Direction::right : nonpos ? Direction::left : Direction::mixed;
    if (*b.direction == Direction::mixed) {
        b.verdict = {K::inconclusive, "annulus expansion not implemented"};
        return;
    }

    const auto exps = term_exponents(ode.equation);
    const Rational base = exps[b.dominant_terms.front()].at(p);
    BigInt q = p.den();
    for (const auto &r : b.resonances) q = lcm(q, r.den());
    bool subdominant = false;
    for (const auto &e : exps) {
        const Rational gap = e.at(p) - base;
        if (gap.is_zero()) continue;
        subdominant = true;
        q = lcm(q, gap.den());
    }
    if (b.direction == Direction::left && subdominant) {
        b.verdict = {K::inconclusive, "left series with subdominant terms"};
        return;
    }
    b.delta = Rational(BigInt(b.direction == Direction::right ? 1 : -1), q);

    Rational widest;
    for (const auto &r : b.resonances) widest = std::max(widest, r.abs());
    const unsigned M = orders ? *orders : static_cast<unsigned>((widest * Rational(q, BigInt(1))).num().get_ui()) + 5;

    b.verdict = {K::pass, {}};
    b.series = expand_series(ode, b, M);
    if (!b.verdict.passing()) return;
    b.arbitrary_constants = static_cast<unsigned>(b.series->free_levels.size()) + 1;

    bool fractional = !p.is_integer();
    for (const auto &r : b.resonances) fractional = fractional || !r.is_integer();
    if (fractional) b.verdict.kind = K::weak_pass;
}

PainleveReport painleve_test(const OdeProblem &ode, const PainleveOptions &opts) {
    PainleveReport rep;
    for (const auto &bal : dominant_exponents(ode)) {
        if (!bal.p) {
            Branch b;
            b.p_poly = bal.p_poly;
            b.a0.kind = LeadingCoefficient::Kind::unresolved;
            b.dominant_terms = bal.terms;
            rep.branches.push_back(std::move(b));
            continue;
        }
        for (auto &a0 : leading_coefficients(ode, *bal.p, bal.terms)) {
            Branch b;
            b.p = bal.p;
            b.a0 = std::move(a0);
            b.dominant_terms = bal.terms;
            rep.branches.push_back(std::move(b));
        }
    }
    if (rep.branches.empty()) {
        rep.overall = "no-branches";
        return rep;
    }

    parallel_for(rep.branches.size(), opts.threads,
                 [&](std::size_t i) { analyze_branch(ode, rep.branches[i], opts.orders); });

    const unsigned order = ode.equation.order();
    auto is_generic = [&](const Branch &b) { return b.verdict.passing() && b.arbitrary_constants == order; };
    rep.generic_branch_found = std::any_of(rep.branches.begin(), rep.branches.end(), is_generic);

    auto strong = [](const Branch &b) {
        return b.verdict.kind == Verdict::Kind::pass && b.p->is_integer() && b.p->sign() < 0;
    };
    if (opts.lenient && rep.generic_branch_found) {
        const bool any_strong = std::any_of(rep.branches.begin(), rep.branches.end(),
                                            [&](const Branch &b) { return is_generic(b) && strong(b); });
        rep.overall = any_strong ? "passes" : "weak";
        return rep;
    }
    for (auto kind : {Verdict::Kind::fail, Verdict::Kind::inconclusive}) {
        auto it = std::find_if(rep.branches.begin(), rep.branches.end(),
                               [&](const Branch &b) { return b.verdict.kind == kind; });
        if (it != rep.branches.end()) {
            rep.overall = kind == Verdict::Kind::fail ? "fails" : "inconclusive";
            rep.reason = it->verdict.reason;
            return rep;
        }
    }
    if (!rep.generic_branch_found) {
        rep.overall = "fails";
        rep.reason = "no generic branch";
        return rep;
    }
    rep.overall = std::all_of(rep.branches.begin(), rep.branches.end(), strong) ? "passes" : "weak";
    return rep;
}

} // namespace odekit
