#ifndef ODEKIT_SYMMETRY_SOLVER_HPP
#define ODEKIT_SYMMETRY_SOLVER_HPP

#include <vector>

#include "odekit/diff_poly.hpp"
#include "odekit/lie.hpp"
#include "odekit/matrix.hpp"

namespace odekit {

/// Polynomial ansatz for xi and eta: every monomial x^i y^j with i <= d and
/// j <= d, once for each component.
struct Ansatz {
    unsigned degree = 0;
    std::vector<Monomial> monomials; ///< shared by xi and eta

    explicit Ansatz(unsigned d);

    std::size_t unknown_count() const { return 2 * monomials.size(); }
    /// Field whose only nonzero unknown is k (xi unknowns first).
    VectorField unit_field(std::size_t k) const;
    VectorField combine(const RationalVector &coeffs) const;
};

/// Linear system whose nullspace is the set of ansatz coefficients solving the
/// determining equations. One row per monomial in (x, y, y', ..., y^(n-1)).
struct DeterminingSystem {
    Ansatz ansatz;
    ExactMatrix matrix;
    std::vector<Monomial> row_keys;     ///< sorted by the term order
    unsigned denominator_power = 0;     ///< every column was cleared with A^power
};

/// threads == 0 picks the hardware concurrency. The output does not depend on it.
DeterminingSystem determining_system(const OdeProblem &ode, unsigned degree, unsigned threads = 0);

struct SymmetryBasis {
    Ansatz ansatz;
    std::vector<VectorField> fields;

    std::size_t dimension() const { return fields.size(); }
};

/// Solves the determining system and returns a reduced, normalized basis. Every
/// field is re-verified with is_symmetry; a failure there is a logic error.
SymmetryBasis solve_point_symmetries(const OdeProblem &ode, unsigned degree, unsigned threads = 0);

} // namespace odekit

#endif
