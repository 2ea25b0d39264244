#ifndef ODEKIT_TESTS_PROPERTIES_HPP
#define ODEKIT_TESTS_PROPERTIES_HPP

#include <cstdint>
#include <random>
#include <string>

#include "odekit/lie.hpp"
#include "odekit/poly.hpp"
#include "odekit/singularity.hpp"

namespace odekit::testing {

struct PropertyResult {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok(std::size_t min_cases) const { return failures == 0 && cases >= min_cases; }
    void fail(const std::string &what) {
        if (failures++ == 0) first_failure = what;
    }
};

using Rng = std::mt19937_64;

Rational random_rational(Rng &rng, long range = 5);
Poly random_poly(Rng &rng, const std::vector<Var> &vars, unsigned max_degree, unsigned max_terms);
VectorField random_field(Rng &rng, unsigned max_degree = 2, unsigned max_terms = 3);

/// Recursive extension equals the binomial closed form, orders 1..4.
PropertyResult prolongation_matches_binomial(std::size_t cases, std::uint64_t seed);

/// [a, b] == -[b, a] and the Jacobi identity on random fields.
PropertyResult bracket_laws(std::size_t cases, std::uint64_t seed);

/// Every solver field of a random explicit equation y'' = F(x, y, y') satisfies
/// the symmetry condition, checked by a direct second-order prolongation.
PropertyResult solver_fields_are_symmetries(std::size_t cases, std::uint64_t seed);

/// Substituting the truncated series (free constants drawn at random) into the
/// equation cancels every power up to the truncation order. Uses naive
/// exponent-keyed series arithmetic, independent of the engine's recurrence.
bool series_residual_vanishes(const OdeProblem &ode, const Branch &b, Rng &rng, std::string *why = nullptr);

/// Runs series_residual_vanishes over every passing branch of the corpus
/// equations plus a few extra Painleve-type equations until `cases` draws.
PropertyResult series_residual_cancels(const std::string &corpus_path, std::size_t cases, std::uint64_t seed);

} // namespace odekit::testing

#endif
