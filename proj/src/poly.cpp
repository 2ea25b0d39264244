#include "odekit/poly.hpp"

#include <algorithm>
#include <sstream>

namespace odekit {

std::string VarNames::name(Var v) const {
    if (v == vars::x) return indep;
    if (vars::is_deriv(v)) {
        const unsigned k = vars::deriv_order(v);
        if (k <= 3) return dep + std::string(k, '\'');
        return "D(" + dep + "," + std::to_string(k) + ")";
    }
    if (vars::is_param(v)) return "a" + std::to_string(vars::param_index(v));
    if (v == vars::s) return "s";
    if (v == vars::p) return "p";
    return "v" + std::to_string(v);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (const auto &[v, e] : factors) {
        if (e == 0) continue;
        if (!factors_.empty() && factors_.back().first == v)
            factors_.back().second += e;
        else
            factors_.emplace_back(v, e);
        degree_ += e;
    }
}

Monomial Monomial::of(Var v, unsigned e) { return Monomial({{v, e}}); }

unsigned Monomial::exponent(Var v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
    return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::without(Var v) const {
    std::vector<Factor> f;
    f.reserve(factors_.size());
    for (const auto &fe : factors_)
        if (fe.first != v) f.push_back(fe);
    return Monomial(std::move(f));
}

Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
        if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
            r.factors_.push_back(*ia++);
        } else if (ia == a.factors_.end() || ib->first < ia->first) {
            r.factors_.push_back(*ib++);
        } else {
            r.factors_.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

int grlex_compare(const Monomial &a, const Monomial &b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    auto ia = a.factors().rbegin(), ib = b.factors().rbegin();
    for (; ia != a.factors().rend() && ib != b.factors().rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first > ib->first ? 1 : -1;
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    }
    if (ia == a.factors().rend() && ib == b.factors().rend()) return 0;
    return ia == a.factors().rend() ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational &c) {
    if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

Poly Poly::var(Var v, unsigned e) { return term(Monomial::of(v, e), Rational(1)); }

Poly Poly::term(const Monomial &m, const Rational &c) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coefficient(Monomial()); }

Rational Poly::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto &[m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

unsigned Poly::degree_in(Var v) const {
    unsigned d = 0;
    for (const auto &[m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
}

Poly Poly::coefficient_in(Var v, unsigned k) const {
    Poly r;
    for (const auto &[m, c] : terms_)
        if (m.exponent(v) == k) r.add_term(m.without(v), c);
    return r;
}

std::set<Var> Poly::variables() const {
    std::set<Var> vs;
    for (const auto &[m, c] : terms_)
        for (const auto &f : m.factors()) vs.insert(f.first);
    return vs;
}

int Poly::max_deriv_order() const {
    int best = -1;
    for (const auto &[m, c] : terms_)
        for (const auto &f : m.factors())
            if (vars::is_deriv(f.first)) best = std::max(best, static_cast<int>(vars::deriv_order(f.first)));
    return best;
}

const Monomial &Poly::leading_monomial() const {
    if (terms_.empty()) throw Error("leading monomial of zero polynomial");
    const Monomial *best = &terms_.begin()->first;
    for (const auto &[m, c] : terms_)
        if (grlex_compare(m, *best) > 0) best = &m;
    return *best;
}

const Rational &Poly::leading_coefficient() const { return terms_.at(leading_monomial()); }

void Poly::add_term(const Monomial &m, const Rational &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly &Poly::operator+=(const Poly &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly &Poly::operator-=(const Poly &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly &Poly::operator*=(const Rational &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, coeff] : terms_) coeff *= c;
    return *this;
}

Poly operator-(const Poly &a) {
    Poly r = a;
    for (auto &[m, c] : r.terms_) c = -c;
    return r;
}

Poly operator*(const Poly &a, const Poly &b) {
    Poly r;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::diff(Var v) const {
    Poly r;
    for (const auto &[m, c] : terms_) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        std::vector<Monomial::Factor> f = m.without(v).factors();
        if (e > 1) f.emplace_back(v, e - 1);
        r.add_term(Monomial(std::move(f)), c * Rational(static_cast<long>(e)));
    }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result(1), base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::evaluate(const std::map<Var, Rational> &values) const {
    Poly r;
    for (const auto &[m, c] : terms_) {
        Rational coeff = c;
        std::vector<Monomial::Factor> rest;
        for (const auto &[v, e] : m.factors()) {
            auto it = values.find(v);
            if (it == values.end())
                rest.emplace_back(v, e);
            else
                coeff *= it->second.pow(e);
        }
        r.add_term(Monomial(std::move(rest)), coeff);
    }
    return r;
}

Poly Poly::compose(Var v, const Poly &replacement) const {
    Poly r;
    std::vector<Poly> powers{Poly(1)};
    for (const auto &[m, c] : terms_) {
        const unsigned e = m.exponent(v);
        while (powers.size() <= e) powers.push_back(powers.back() * replacement);
        r += Poly::term(m.without(v), c) * powers[e];
    }
    return r;
}

bool Poly::divide_by_monomial(const Monomial &d, Poly &quotient) const {
    Poly q;
    for (const auto &[m, c] : terms_) {
        std::vector<Monomial::Factor> f;
        for (const auto &[v, e] : m.factors()) f.emplace_back(v, e);
        for (const auto &[v, e] : d.factors()) {
            const unsigned have = m.exponent(v);
            if (have < e) return false;
            for (auto &fe : f)
                if (fe.first == v) fe.second -= e;
        }
        q.add_term(Monomial(std::move(f)), c);
    }
    quotient = std::move(q);
    return true;
}

std::string Poly::to_string(const VarNames &names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        const bool negative = c.sign() < 0;
        const Rational mag = c.abs();
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (!mag.is_one() || m.is_one()) {
            os << mag.to_string();
            need_star = true;
        }
        // factors in ascending rank: "x*y*y'"
        for (const auto &[v, e] : m.factors()) {
            if (need_star) os << '*';
            os << names.name(v);
            if (e > 1) os << '^' << e;
            need_star = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Substitution

Substituted substitute(const Poly &p, const std::map<Var, Fraction> &bindings) {
    struct Powers {
        const Fraction *frac;
        unsigned max_degree;
        std::vector<Poly> num_pow, den_pow;
    };
    std::map<Var, Powers> table;
    for (const auto &[v, frac] : bindings) {
        if (frac.den.is_zero()) throw Error("division by zero polynomial");
        table.emplace(v, Powers{&frac, p.degree_in(v), {Poly(1)}, {Poly(1)}});
    }
    auto power_of = [](std::vector<Poly> &cache, const Poly &base, unsigned e) -> const Poly & {
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };

    Substituted out;
    for (const auto &[m, c] : p.terms()) {
        Poly term(c);
        std::vector<Monomial::Factor> rest;
        std::map<Var, unsigned> used;
        for (const auto &[v, e] : m.factors()) {
            if (table.count(v))
                used[v] = e;
            else
                rest.emplace_back(v, e);
        }
        term = Poly::term(Monomial(std::move(rest)), c);
        for (auto &[v, pw] : table) {
            const unsigned e = used.count(v) ? used[v] : 0;
            term = term * power_of(pw.num_pow, pw.frac->num, e);
            term = term * power_of(pw.den_pow, pw.frac->den, pw.max_degree - e);
        }
        out.numerator += term;
    }
    for (const auto &[v, pw] : table)
        if (pw.max_degree > 0) out.denominator_powers.emplace_back(v, pw.max_degree);
    return out;
}

} // namespace odekit
