#include "odekit/diff_poly.hpp"

#include <set>

namespace odekit {

DiffPoly::DiffPoly(Poly poly, VarNames names) : poly_(std::move(poly)), names_(std::move(names)) {
    if (poly_.is_zero()) throw Error("zero equation");
    for (Var v : poly_.variables())
        if (v != vars::x && !vars::is_deriv(v)) throw Error("equation contains a non-differential symbol");
    const int n = poly_.max_deriv_order();
    if (n < 1) throw Error("equation contains no derivative of " + names_.dep);
    order_ = static_cast<unsigned>(n);
}

namespace {

void collect_derivative_names(const SourceExpr &e, std::set<std::string> &out) {
    if (e.kind == SourceExpr::Kind::Derivative) out.insert(e.name);
    for (const auto &a : e.args) collect_derivative_names(a, out);
}

Poly expand_node(const SourceExpr &e, const ExpandOptions &opts, const std::string &dep) {
    using K = SourceExpr::Kind;
    switch (e.kind) {
    case K::Number: return Poly(e.value);
    case K::Symbol:
        if (e.name == dep) return Poly::var(vars::y);
        if (e.name == opts.indep) return Poly::var(vars::x);
        if (auto it = opts.params.find(e.name); it != opts.params.end()) return Poly(it->second);
        throw Error("unknown symbol '" + e.name + "' at offset " + std::to_string(e.offset));
    case K::Derivative:
        if (e.name != dep)
            throw Error("derivative of '" + e.name + "' but the dependent variable is '" + dep + "'");
        return Poly::var(vars::deriv(e.order));
    case K::Neg: return -expand_node(e.args[0], opts, dep);
    case K::Sum: {
        Poly acc;
        for (const auto &a : e.args) acc += expand_node(a, opts, dep);
        return acc;
    }
    case K::Product: {
        Poly acc(1);
        for (const auto &a : e.args) acc = acc * expand_node(a, opts, dep);
        return acc;
    }
    case K::Power:
        if (e.exponent < 0) throw Error("non-polynomial: negative power at offset " + std::to_string(e.offset));
        return expand_node(e.args[0], opts, dep).pow(static_cast<unsigned>(e.exponent));
    }
    return {};
}

} // namespace

Poly expand(const SourceExpr &e, const ExpandOptions &opts, VarNames *names_out) {
    std::string dep;
    if (opts.dep) {
        dep = *opts.dep;
    } else {
        std::set<std::string> names;
        collect_derivative_names(e, names);
        if (names.size() > 1) throw Error("more than one dependent variable");
        dep = names.empty() ? "y" : *names.begin();
    }
    if (dep == opts.indep) throw Error("dependent and independent variable share the name '" + dep + "'");
    if (names_out) {
        names_out->dep = dep;
        names_out->indep = opts.indep;
    }
    return expand_node(e, opts, dep);
}

DiffPoly to_diff_poly(const SourceExpr &e, const ExpandOptions &opts) {
    VarNames names;
    Poly p = expand(e, opts, &names);
    return DiffPoly(std::move(p), std::move(names));
}

OdeProblem make_problem(std::string_view text, const ExpandOptions &opts) {
    return OdeProblem(to_diff_poly(parse(text), opts), std::string(text));
}

Poly parse_xy_poly(std::string_view text) {
    ExpandOptions opts;
    opts.dep = "y";
    Poly p = expand(parse(text), opts);
    if (p.max_deriv_order() > 0) throw Error("field component may depend on x and y only");
    return p;
}

std::string format(const DiffPoly &p) { return p.poly().to_string(p.names()); }

std::string format(const Poly &p, const VarNames &names) { return p.to_string(names); }

} // namespace odekit
