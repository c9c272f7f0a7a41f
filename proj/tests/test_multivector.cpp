#include <doctest.h>

#include <random>

#include "epr/direction.hpp"
#include "epr/multivector.hpp"
#include "test_util.hpp"

using namespace epr;

namespace {

constexpr double kTol = 1e-12;

// Independent structure-constant oracle: Bj Bk = -delta_jk - sigma eps_jkl Bl
// built directly from delta and eps, not from the product routine.
EvenMultivector table_oracle(int j, int k, int sigma) {
    static const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                     {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                     {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    EvenMultivector out;
    out.s = (j == k) ? -1.0 : 0.0;
    for (int l = 0; l < 3; ++l) out.b[l] = -sigma * eps[j][k][l];
    return out;
}

bool close(const EvenMultivector& x, const EvenMultivector& y, double tol = kTol) {
    return std::abs(x.s - y.s) <= tol && std::abs(x.b[0] - y.b[0]) <= tol &&
           std::abs(x.b[1] - y.b[1]) <= tol && std::abs(x.b[2] - y.b[2]) <= tol;
}

EvenMultivector basis(int j) {
    EvenMultivector v;
    v.b[j] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("multiplication table matches structure constants for both signs") {
    for (int sg : {1, -1}) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const auto p = geometric_product(basis(j), basis(k), CrossSign(sg));
                const auto expect = table_oracle(j, k, sg);
                CAPTURE(sg);
                CAPTURE(j);
                CAPTURE(k);
                CHECK(p.s == expect.s);
                CHECK(p.b[0] == expect.b[0]);
                CHECK(p.b[1] == expect.b[1]);
                CHECK(p.b[2] == expect.b[2]);
            }
        }
    }
}

TEST_CASE("product examples") {
    const auto plus = CrossSign::plus();
    CHECK(close(geometric_product(basis(0), basis(1), plus),
                EvenMultivector::bivector(0, 0, -1)));
    CHECK(close(geometric_product(basis(0), basis(0), plus), EvenMultivector::scalar(-1)));
    CHECK(close(geometric_product(basis(0), basis(1), CrossSign::minus()),
                EvenMultivector::bivector(0, 0, 1)));
    std::mt19937_64 rng(7);
    const auto x = testutil::random_multivector(rng);
    CHECK(close(geometric_product(EvenMultivector::scalar(1), x, plus), x));
    CHECK(close(geometric_product(x, EvenMultivector::scalar(1), plus), x));
}

TEST_CASE("grade projections and reversal") {
    const EvenMultivector x{-0.5, {0.25, 0.0, 0.0}};
    CHECK(scalar_part(x) == -0.5);
    CHECK(scalar_part(EvenMultivector::bivector(0, 0, 1)) == 0.0);
    CHECK(bivector_part(EvenMultivector::scalar(7.0)) == std::array<double, 3>{0, 0, 0});
    CHECK(bivector_part(EvenMultivector{2.0, {0, 0, -3.0}}) ==
          std::array<double, 3>{0, 0, -3.0});
    const EvenMultivector y{2.0, {0, 1.0, 0}};
    CHECK(close(reverse(y), EvenMultivector{2.0, {0, -1.0, 0}}));
    CHECK(close(reverse(reverse(y)), y));
}

TEST_CASE("associativity, bilinearity, norm multiplicativity") {
    std::mt19937_64 rng(11);
    for (int sg : {1, -1}) {
        const CrossSign sigma(sg);
        for (int i = 0; i < 10000; ++i) {
            const auto x = testutil::random_multivector(rng);
            const auto y = testutil::random_multivector(rng);
            const auto z = testutil::random_multivector(rng);
            const auto lhs = geometric_product(geometric_product(x, y, sigma), z, sigma);
            const auto rhs = geometric_product(x, geometric_product(y, z, sigma), sigma);
            REQUIRE(close(lhs, rhs));
            const auto dist = geometric_product(x, y + z, sigma);
            REQUIRE(close(dist, geometric_product(x, y, sigma) + geometric_product(x, z, sigma)));
            const auto p = geometric_product(x, y, sigma);
            REQUIRE(std::abs(norm(p) - norm(x) * norm(y)) <= kTol);
        }
    }
}

TEST_CASE("inverse contract") {
    std::mt19937_64 rng(13);
    const auto one = EvenMultivector::scalar(1.0);
    CHECK(close(inverse(one), one));
    CHECK(close(inverse(EvenMultivector::bivector(0, 0, 1)),
                EvenMultivector::bivector(0, 0, -1)));
    int checked = 0;
    while (checked < 10000) {
        const auto x = testutil::random_multivector(rng);
        if (norm(x) < 0.1) continue;
        ++checked;
        const auto xi = inverse(x);
        for (int sg : {1, -1}) {
            const CrossSign sigma(sg);
            REQUIRE(close(geometric_product(x, xi, sigma), one));
            REQUIRE(close(geometric_product(xi, x, sigma), one));
        }
    }
    CHECK_THROWS_AS(inverse(EvenMultivector{}), SingularElementError);
    CHECK_THROWS_AS(inverse(EvenMultivector::scalar(1e-10)), SingularElementError);
}

TEST_CASE("inverse of -a.b - (a x b).B is its reverse") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const auto a = testutil::random_unit(rng);
        const auto b = testutil::random_unit(rng);
        const auto c = cross(a, b);
        const EvenMultivector x{-dot(a, b), {-c[0], -c[1], -c[2]}};
        const EvenMultivector expect{-dot(a, b), {c[0], c[1], c[2]}};
        REQUIRE(close(inverse(x), expect, 1e-12));
        REQUIRE(close(geometric_product(x, expect, CrossSign::plus()),
                      EvenMultivector::scalar(1.0)));
    }
}

TEST_CASE("direction bivector squares to -1") {
    CHECK(close(direction_bivector(Direction(0, 0, 1)), EvenMultivector::bivector(0, 0, 1)));
    CHECK(close(direction_bivector(Direction(1, 0, 0)), EvenMultivector::bivector(1, 0, 0)));
    const double r = 1.0 / std::sqrt(3.0);
    const auto d = direction_bivector(Direction(r, r, r));
    CHECK(close(geometric_product(d, d, CrossSign::plus()), EvenMultivector::scalar(-1.0)));
    std::mt19937_64 rng(19);
    for (int i = 0; i < 10000; ++i) {
        const auto biv = direction_bivector(testutil::random_unit(rng));
        REQUIRE(close(geometric_product(biv, biv, CrossSign::plus()),
                      EvenMultivector::scalar(-1.0)));
    }
    CHECK_THROWS_AS(Direction(1.0, 1.0, 0.0), std::invalid_argument);
}
