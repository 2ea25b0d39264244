#include <doctest.h>

#include "odekit/diff_poly.hpp"
#include "odekit/lie.hpp"
#include "properties.hpp"

using namespace odekit;

namespace {

Poly P(const char *text) { return to_diff_poly(parse(text)).poly(); }
Poly XY(const char *text) { return parse_xy_poly(text); }
VectorField F(const char *text) { return VectorField::parse(text); }

const Poly dy1 = Poly::var(vars::deriv(1));
const Poly dy2 = Poly::var(vars::deriv(2));

} // namespace

TEST_CASE("total derivative") {
    CHECK(total_derivative(Poly::var(vars::y)) == dy1);
    CHECK(total_derivative(XY("x*y")) == Poly::var(vars::y) + Poly::var(vars::x) * dy1);
    CHECK(total_derivative(XY("y^2")) == Poly(2) * Poly::var(vars::y) * dy1);
    CHECK(total_derivative(dy1 * dy1, 2) == Poly(2) * dy1 * dy2);
    CHECK_THROWS_AS(total_derivative(dy2, 2), Error);
}

TEST_CASE("prolongation examples") {
    auto eta = [](const char *g, unsigned n) { return prolong(F(g), n).coefficients; };
    const auto a = eta("0, y", 2);
    CHECK(a[0] == dy1);
    CHECK(a[1] == dy2);
    const auto b = eta("x, 0", 2);
    CHECK(b[0] == -dy1);
    CHECK(b[1] == Poly(-2) * dy2);
    const auto c = eta("-x, y", 2);
    CHECK(c[0] == Poly(2) * dy1);
    CHECK(c[1] == Poly(3) * dy2);
    // projective field x^2 d/dx + x y d/dy: eta1 = y - x y', eta2 = -3 x y''
    const auto d = eta("x^2, x*y", 2);
    CHECK(d[0] == XY("y") - Poly::var(vars::x) * dy1);
    CHECK(d[1] == Poly(-3) * Poly::var(vars::x) * dy2);
}

TEST_CASE("prolongation recursion equals the binomial form") {
    const auto r = odekit::testing::prolongation_matches_binomial(400, 101);
    INFO(r.first_failure);
    CHECK(r.ok(200));
}

TEST_CASE("symmetry condition") {
    const OdeProblem pi = make_problem("y'' + 3*y*y' + y^3");
    CHECK(is_symmetry(F("1, 0"), pi).holds);
    CHECK(is_symmetry(F("y, -y^3"), pi).holds);
    const auto r = is_symmetry(F("0, 1"), pi);
    CHECK_FALSE(r.holds);
    CHECK(r.residual == P("3*y' + 3*y^2"));
    CHECK_THROWS_WITH(is_symmetry(F("1, 0"), make_problem("y''^2 - y")), "cannot solve for highest derivative");

    // third order, leading coefficient 2 y'
    const OdeProblem ks = make_problem("2*y'*y''' - 3*y''^2");
    for (const char *g : {"1, 0", "x, 0", "x^2, 0", "0, 1", "0, y", "0, y^2"}) CHECK(is_symmetry(F(g), ks).holds);
    CHECK_FALSE(is_symmetry(F("y, 0"), ks).holds);
}

TEST_CASE("symmetry condition is invariant under rescaling") {
    odekit::testing::Rng rng(23);
    const OdeProblem pi = make_problem("y'' + 3*y*y' + y^3");
    for (int i = 0; i < 200; ++i) {
        const VectorField g = odekit::testing::random_field(rng);
        Rational c = odekit::testing::random_rational(rng);
        if (c.is_zero()) c = Rational(3);
        const auto a = is_symmetry(g, pi), b = is_symmetry(c * g, pi);
        CHECK(a.holds == b.holds);
        CHECK(b.residual == c * a.residual);
    }
}

TEST_CASE("contact condition") {
    CHECK(check_contact_condition(XY("x*y"), XY("y^2")));
    CHECK(check_contact_condition(dy1, Rational(BigInt(1), BigInt(2)) * dy1 * dy1));
    CHECK_FALSE(check_contact_condition(Poly(), dy1));
}

TEST_CASE("lie bracket") {
    CHECK(lie_bracket(F("0, 1"), F("0, y")) == F("0, 1"));
    CHECK(lie_bracket(F("1, 0"), F("x, 0")) == F("1, 0"));
    CHECK(lie_bracket(F("1, 0"), F("x^2, 0")) == F("2*x, 0"));
    CHECK(lie_bracket(F("x, 0"), F("x^2, 0")) == F("x^2, 0"));
    CHECK(lie_bracket(F("1, 0"), F("-x, y")) == F("-1, 0"));
    CHECK(lie_bracket(F("1, 0"), F("0, 1")).is_zero());
}

TEST_CASE("bracket antisymmetry and Jacobi identity") {
    const auto r = odekit::testing::bracket_laws(300, 202);
    INFO(r.first_failure);
    CHECK(r.ok(200));
}

TEST_CASE("structure constants") {
    SUBCASE("two commuting sl(2) copies") {
        const std::vector<VectorField> basis{F("1, 0"), F("x, 0"), F("x^2, 0"), F("0, 1"), F("0, y"), F("0, y^2")};
        const StructureTable t = structure_constants(basis);
        CHECK(t.antisymmetric());
        CHECK(t.satisfies_jacobi());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 3; j < 6; ++j)
                for (std::size_t k = 0; k < 6; ++k) CHECK(t.constants[i][j][k].is_zero());
        CHECK(t.constants[0][1][0] == Rational(1));
        CHECK(t.constants[0][2][1] == Rational(2));
        CHECK(t.constants[1][2][2] == Rational(1));
    }
    SUBCASE("abelian") {
        const StructureTable t = structure_constants({F("1, 0"), F("0, 1")});
        for (const auto &row : t.constants)
            for (const auto &v : row)
                for (const auto &c : v) CHECK(c.is_zero());
    }
    SUBCASE("commuting pair with one field of degree one") {
        const StructureTable t = structure_constants({F("0, 1"), F("x, 0")});
        CHECK(t.constants[0][1][0].is_zero());
        CHECK(t.constants[0][1][1].is_zero());
    }
    CHECK_THROWS_WITH(structure_constants({F("1, 0"), F("x^2, 0")}), doctest::Contains("not closed under bracket"));
    CHECK_THROWS_WITH(structure_constants({F("1, 0"), F("2, 0")}), doctest::Contains("dependent basis"));
}

TEST_CASE("two-dimensional algebra types") {
    CHECK(classify_pair(F("1, 0"), F("0, 1")).type == AlgebraType::I);
    CHECK(classify_pair(F("0, 1"), F("0, x")).type == AlgebraType::II);
    CHECK(classify_pair(F("0, 1"), F("x, y")).type == AlgebraType::III);
    const auto iv = classify_pair(F("0, 1"), F("0, y"));
    CHECK(iv.type == AlgebraType::IV);
    CHECK(lie_bracket(iv.g1, iv.g2) == iv.g1);
    const auto swapped = classify_pair(F("0, y"), F("0, 1"));
    CHECK(swapped.type == AlgebraType::IV);
    CHECK(lie_bracket(swapped.g1, swapped.g2) == swapped.g1);
    CHECK(to_string(AlgebraType::IV) == "IV");
    CHECK_THROWS_WITH(classify_pair(F("1, 0"), F("2, 0")), "pair does not span a two-dimensional algebra");
    CHECK_THROWS_WITH(classify_pair(F("1, 0"), F("x^2, 0")), "pair does not span a two-dimensional algebra");
}

TEST_CASE("field parsing") {
    CHECK(F("1/2*x^2*y, x*y^2 - y").to_string() == "1/2*x^2*y, -y + x*y^2");
    CHECK(VectorField::parse(F("x, y").to_string()) == F("x, y"));
    CHECK_THROWS_AS(F("x"), Error);
    CHECK_THROWS_AS(F("x, y, 1"), Error);
    CHECK_THROWS_AS(F("y', 0"), Error);
}
