#include "odekit/upoly.hpp"

#include <algorithm>
#include <set>

namespace odekit {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UPoly UPoly::from_poly(const Poly &p, Var v) {
    std::vector<Rational> c(p.degree_in(v) + 1);
    for (const auto &[m, coeff] : p.terms()) {
        if (m.degree() != m.exponent(v)) throw Error("polynomial is not univariate");
        c[m.exponent(v)] += coeff;
    }
    return UPoly(std::move(c));
}

Rational UPoly::operator()(const Rational &t) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Poly UPoly::to_poly(Var v) const {
    Poly r;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r.add_term(i == 0 ? Monomial() : Monomial::of(v, static_cast<unsigned>(i)), coeffs_[i]);
    return r;
}

std::string UPoly::to_string(const std::string &var) const {
    VarNames names;
    names.indep = var;
    return to_poly(vars::x).to_string(names);
}

namespace {

std::vector<BigInt> positive_divisors(BigInt n) {
    if (n < 0) n = -n;
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Synthetic division by (t - r); the remainder must be zero.
std::vector<Rational> deflate(const std::vector<Rational> &c, const Rational &r) {
    std::vector<Rational> out(c.size() - 1);
    Rational carry;
    for (std::size_t i = c.size() - 1; i >= 1; --i) {
        carry = c[i] + carry * r;
        out[i - 1] = carry;
    }
    return out;
}

} // namespace

RootSet rational_roots(const UPoly &q) {
    if (q.is_zero()) throw Error("identically zero");
    std::vector<Rational> c = q.coeffs();
    RootSet out;

    unsigned zero_mult = 0;
    while (c.front().is_zero()) {
        c.erase(c.begin());
        ++zero_mult;
    }
    if (zero_mult) out.roots.push_back({Rational(0), zero_mult});

    // integer-clear
    BigInt den = 1;
    for (const auto &x : c) den = lcm(den, x.den());
    std::vector<BigInt> ints;
    for (const auto &x : c) ints.push_back((x * Rational(den, 1)).num());

    std::set<Rational> candidates;
    const auto ps = positive_divisors(ints.front());
    const auto qs = positive_divisors(ints.back());
    for (const auto &pd : ps)
        for (const auto &qd : qs) {
            candidates.insert(Rational(pd, qd));
            candidates.insert(-Rational(pd, qd));
        }

    for (const auto &r : candidates) {
        unsigned mult = 0;
        while (c.size() > 1 && UPoly(c)(r).is_zero()) {
            c = deflate(c, r);
            ++mult;
        }
        if (mult) out.roots.push_back({r, mult});
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RationalRoot &a, const RationalRoot &b) { return a.value < b.value; });
    out.residual_degree = static_cast<int>(c.size()) - 1;
    return out;
}

UPoly falling_factorial(unsigned k) {
    Poly t = Poly::var(vars::x), r(1);
    for (unsigned i = 0; i < k; ++i) r = r * (t - Poly(static_cast<long>(i)));
    return UPoly::from_poly(r, vars::x);
}

Rational falling_factorial(const Rational &t, unsigned k) {
    Rational r(1);
    for (unsigned i = 0; i < k; ++i) r *= t - Rational(static_cast<long>(i));
    return r;
}

} // namespace odekit
