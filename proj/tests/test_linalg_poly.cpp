#include "difflab/linalg.hpp"
#include "difflab/poly.hpp"

#include <doctest.h>

using namespace difflab;

TEST_CASE("rational strings round-trip") {
    for (const char* s : {"0", "1", "-3", "1/4", "-7/12", "355/113"}) {
        Rational r = rat_parse(s);
        CHECK(rat_string(r) == s);
    }
    CHECK(rat_parse("2/4") == Rational(1, 2));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("abc"), std::invalid_argument);
}

TEST_CASE("exact solve and kernel") {
    RatMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 3;
    auto x = solve(a, RatVec{Rational(5), Rational(10)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 3);

    RatMat singular(2, 2);
    singular.at(0, 0) = 1;
    singular.at(0, 1) = 2;
    singular.at(1, 0) = 2;
    singular.at(1, 1) = 4;
    CHECK_FALSE(solve(singular, RatVec{Rational(1), Rational(1)}).has_value());

    auto basis = kernel_basis(singular);
    REQUIRE(basis.size() == 1);
    CHECK(matvec(singular, basis[0]) == RatVec(2, Rational(0)));
}

TEST_CASE("polynomial arithmetic and evaluation") {
    Poly p(RatVec{Rational(-1), Rational(0), Rational(1)});  // x^2 - 1
    Poly q(RatVec{Rational(1), Rational(1)});                // x + 1
    CHECK((p * q).degree() == 3);
    CHECK(p.eval(Rational(3)) == 8);
    CHECK(poly_rem(p, q).is_zero());
    CHECK(poly_div_exact(p, q) == Poly(RatVec{Rational(-1), Rational(1)}));
    CHECK(derivative(p) == Poly(RatVec{Rational(0), Rational(2)}));
}

TEST_CASE("Sturm root counting") {
    // (x^2 - 2)(x - 3): roots -sqrt2, sqrt2, 3
    Poly p(RatVec{Rational(6), Rational(-2), Rational(-3), Rational(1)});
    auto chain = sturm_chain(p);
    CHECK(count_real_roots(chain, Rational(-10), Rational(10)) == 3);
    CHECK(count_real_roots(chain, Rational(0), Rational(2)) == 1);
    CHECK(count_real_roots(chain, Rational(2), Rational(10)) == 1);
}

TEST_CASE("rational root extraction with multiplicities") {
    // (x - 1/2)^2 (x + 3)
    Poly lin1(RatVec{Rational(-1, 2), Rational(1)});
    Poly p = lin1 * lin1 * Poly(RatVec{Rational(3), Rational(1)});
    Poly cofactor;
    auto roots = rational_roots(p, &cofactor);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].first == -3);
    CHECK(roots[0].second == 1);
    CHECK(roots[1].first == Rational(1, 2));
    CHECK(roots[1].second == 2);
    CHECK(cofactor.degree() == 0);

    // x^2 - 2 has no rational roots
    Poly irr(RatVec{Rational(-2), Rational(0), Rational(1)});
    CHECK(rational_roots(irr).empty());
}

TEST_CASE("polynomial determinant") {
    // det [[x, 1], [1, x]] = x^2 - 1
    std::vector<Poly> m{Poly(RatVec{Rational(0), Rational(1)}), Poly::constant(1),
                        Poly::constant(1), Poly(RatVec{Rational(0), Rational(1)})};
    CHECK(poly_det(m, 2) == Poly(RatVec{Rational(-1), Rational(0), Rational(1)}));
}
