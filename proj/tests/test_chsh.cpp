#include <doctest.h>

#include <random>

#include "epr/chsh.hpp"
#include "epr/correlation.hpp"
#include "test_util.hpp"

using namespace epr;

namespace {

const CorrelationFn singlet = [](const Direction& a, const Direction& b) {
    return -dot(a, b);
};
const CorrelationFn zero = [](const Direction&, const Direction&) { return 0.0; };
const CorrelationFn naive = [](const Direction&, const Direction&) { return -1.0; };

}  // namespace

TEST_CASE("chsh_S examples") {
    const Direction ex(1, 0, 0);
    const Direction ey(0, 1, 0);
    const double r = 1.0 / std::sqrt(2.0);

    const ChshConfig degenerate{ex, ex, ey, ey};
    CHECK(chsh_S(singlet, degenerate) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chsh_S(zero, degenerate) == 0.0);

    // Extremal planar configuration.
    const ChshConfig extremal{ex, ey, Direction(-r, -r, 0), Direction(-r, r, 0)};
    CHECK(chsh_S(singlet, extremal) == doctest::Approx(kTsirelson).epsilon(1e-12));
}

TEST_CASE("paper bound examples and range") {
    const Direction ex(1, 0, 0);
    const Direction ey(0, 1, 0);
    const auto [v1, v2] = paper_bound({ex, ex, ey, Direction(0, 0, 1)});
    CHECK(v1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(v2 == doctest::Approx(2.0).epsilon(1e-12));

    // At the extremal planar config a x a' = e_z and b' x b = +e_z, so the
    // forward bound collapses to 0 while the flipped orientation gives 2*sqrt(2).
    const double r = 1.0 / std::sqrt(2.0);
    const auto [f1, f2] = paper_bound({ex, ey, Direction(-r, -r, 0), Direction(-r, r, 0)});
    CHECK(f1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
    CHECK(f2 == doctest::Approx(kTsirelson).epsilon(1e-12));

    std::mt19937_64 rng(53);
    for (int i = 0; i < 100000; ++i) {
        const ChshConfig cfg{testutil::random_unit(rng), testutil::random_unit(rng),
                             testutil::random_unit(rng), testutil::random_unit(rng)};
        const auto [a, b] = paper_bound(cfg);
        REQUIRE(a >= 0.0);
        REQUIRE(a <= kTsirelson + 1e-12);
        REQUIRE(b >= 0.0);
        REQUIRE(b <= kTsirelson + 1e-12);
    }
}

TEST_CASE("chsh_S never exceeds 4 for bounded correlations") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 1000; ++i) {
        const ChshConfig cfg{testutil::random_unit(rng), testutil::random_unit(rng),
                             testutil::random_unit(rng), testutil::random_unit(rng)};
        REQUIRE(chsh_S(singlet, cfg) <= 4.0);
        REQUIRE(chsh_S(naive, cfg) <= 4.0);
    }
}

TEST_CASE("exchange symmetry of the CHSH string") {
    // Swapping a<->a' and b<->b' maps the string to |E(a',b') + E(a',b) + E(a,b') - E(a,b)|;
    // check both against direct evaluation.
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        const auto a = testutil::random_unit(rng);
        const auto a2 = testutil::random_unit(rng);
        const auto b = testutil::random_unit(rng);
        const auto b2 = testutil::random_unit(rng);
        const double swapped = chsh_S(singlet, {a2, a, b2, b});
        const double direct = std::abs(singlet(a2, b2) + singlet(a2, b) + singlet(a, b2) -
                                       singlet(a, b));
        REQUIRE(swapped == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("maximize_S reaches the Tsirelson value for the singlet correlation") {
    const auto [cfg, S] = maximize_S(singlet, 15.0, 200);
    CHECK(S >= kTsirelson - 1e-6);
    CHECK(S <= kTsirelson + 1e-9);
    const auto rep = chsh_report(singlet, cfg);
    CHECK(rep.S == doctest::Approx(S).epsilon(1e-12));
    CHECK(rep.within_tsirelson);
}

TEST_CASE("maximize_S on the naive constant correlation returns exactly 2") {
    const auto [cfg, S] = maximize_S(naive, 30.0, 10);
    CHECK(S == 2.0);
}

TEST_CASE("degenerate singlet maximization: a fixed equal to a' caps at 2") {
    // With a = a' the string collapses to |2 E(a,b)| <= 2.
    std::mt19937_64 rng(67);
    for (int i = 0; i < 1000; ++i) {
        const auto a = testutil::random_unit(rng);
        const auto b = testutil::random_unit(rng);
        const auto b2 = testutil::random_unit(rng);
        REQUIRE(chsh_S(singlet, {a, a, b, b2}) <= 2.0 + 1e-12);
    }
}

TEST_CASE("sweep curve matches -cos theta under the exact lambda-structure oracle") {
    const CorrelationFn exact_lambda = [](const Direction& a, const Direction& b) {
        return correlation_exact(a, b, ProductConvention::LambdaStructure).scalar_estimate;
    };
    const auto pts = sweep_curve(Direction(0, 0, 1), 5.0, exact_lambda);
    CHECK(pts.size() == 37);
    CHECK(pts.front().theta_deg == 0.0);
    CHECK(pts.front().value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pts.back().theta_deg == 180.0);
    for (const auto& p : pts) REQUIRE(std::abs(p.value - p.reference) <= 1e-12);
    CHECK_THROWS_AS(sweep_curve(Direction(0, 0, 1), 0.0, exact_lambda),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_curve(Direction(0, 0, 1), 91.0, exact_lambda),
                    std::invalid_argument);
}
