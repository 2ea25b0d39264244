#include "odekit/symmetry_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "odekit/parallel.hpp"

namespace odekit {

Ansatz::Ansatz(unsigned d) : degree(d) {
    for (unsigned i = 0; i <= d; ++i)
        for (unsigned j = 0; j <= d; ++j) monomials.push_back(Monomial({{vars::x, i}, {vars::y, j}}));
}

VectorField Ansatz::unit_field(std::size_t k) const {
    const std::size_t m = monomials.size();
    if (k < m) return {Poly::term(monomials[k], 1), Poly()};
    return {Poly(), Poly::term(monomials[k - m], 1)};
}

VectorField Ansatz::combine(const RationalVector &coeffs) const {
    VectorField g;
    const std::size_t m = monomials.size();
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        (k < m ? g.xi : g.eta).add_term(monomials[k % m], coeffs[k]);
    return g;
}

DeterminingSystem determining_system(const OdeProblem &ode, unsigned degree, unsigned threads) {
    const DiffPoly &eq = ode.equation;
    if (!eq.quasi_linear()) throw Error("cannot solve for highest derivative");
    Ansatz ansatz(degree);
    const std::size_t cols = ansatz.unknown_count();
    const unsigned n = eq.order();

    // G^[n] f is linear in the field, so each unknown contributes one column.
    std::vector<Poly> raw(cols);
    parallel_for(cols, threads, [&](std::size_t k) { raw[k] = prolong(ansatz.unit_field(k), n).apply(eq.poly()); });

    const OnShell probe(eq);
    unsigned power = 0;
    for (const auto &r : raw) power = std::max(power, probe.required_power(r));

    std::vector<Poly> reduced(cols);
    parallel_for(cols, threads, [&](std::size_t k) {
        const OnShell shell(eq);
        reduced[k] = shell.reduce(raw[k], power).numerator;
    });

    std::map<Monomial, RationalVector, TermOrder> rows;
    for (std::size_t k = 0; k < cols; ++k)
        for (const auto &[m, c] : reduced[k].terms()) {
            auto [it, inserted] = rows.try_emplace(m, RationalVector(cols));
            it->second[k] = c;
        }

    DeterminingSystem sys{std::move(ansatz), ExactMatrix(rows.size(), cols), {}, power};
    std::size_t r = 0;
    for (const auto &[m, vec] : rows) {
        sys.row_keys.push_back(m);
        for (std::size_t c = 0; c < cols; ++c) sys.matrix(r, c) = vec[c];
        ++r;
    }
    return sys;
}

SymmetryBasis solve_point_symmetries(const OdeProblem &ode, unsigned degree, unsigned threads) {
    DeterminingSystem sys = determining_system(ode, degree, threads);
    std::vector<VectorField> raw;
    for (const auto &v : nullspace(sys.matrix)) raw.push_back(sys.ansatz.combine(v));

    SymmetryBasis basis{std::move(sys.ansatz), {}};
    if (raw.empty()) return basis;

    // Reduced echelon form over the leading-term-first coordinates gives each
    // field a distinct leading monomial.
    const FieldCoords coords(raw);
    std::vector<RationalVector> vecs;
    for (const auto &g : raw) vecs.push_back(coords.to_vector(g));
    auto rref = reduced_row_echelon(vecs, coords.size());
    std::reverse(rref.begin(), rref.end());
    for (auto &v : rref) basis.fields.push_back(coords.from_vector(normalize_vector(std::move(v))));

    for (std::size_t i = 0; i < basis.fields.size(); ++i)
        if (!is_symmetry(basis.fields[i], ode).holds)
            throw std::logic_error("solver returned a field that fails the symmetry condition: " +
                                   basis.fields[i].to_string());
    return basis;
}

} // namespace odekit
