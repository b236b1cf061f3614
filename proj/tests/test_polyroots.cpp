#include <doctest.h>

#include "qbounce/classical.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/polyroots.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <random>

using namespace qbounce;

namespace {

std::vector<double> from_roots(std::vector<double> roots, double lead)
{
    std::vector<double> c{lead};
    for (const double r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i) {
            c[i] -= r * c[i - 1];
        }
    }
    return c;
}

}  // namespace

TEST_CASE("quadratic with known factors")
{
    const std::vector<double> c{1.0, 0.0, -1.0};
    const auto roots = poly::real_roots(c);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("vanishing leading coefficient lowers the degree")
{
    const std::vector<double> c{0.0, 1.0, -2.0};
    CHECK(poly::effective_degree(c) == 1);
    const auto roots = poly::real_roots(c);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0));

    const std::vector<double> tiny{1e-14, 0.0, 1.0, -2.0};
    CHECK(poly::effective_degree(tiny) == 1);
}

TEST_CASE("all-zero coefficients are rejected")
{
    const std::vector<double> c{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(poly::real_roots(c), DegeneratePolynomialError);
}

TEST_CASE("zero-bounce polynomial has the single double root (1 + b - a) / 2")
{
    const auto c = classical::bounce_poly(0, 4.0, 3.0);
    const auto roots = poly::real_roots(c);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(0.0).epsilon(1e-12));

    const auto c2 = classical::bounce_poly(0, 0.3, 0.9);
    const auto r2 = poly::real_roots(c2);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("quartics built from chosen roots give those roots back")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> root(-5.0, 5.0);
    std::uniform_real_distribution<double> lead(0.5, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> chosen(4);
        for (auto& r : chosen) {
            r = root(rng);
        }
        std::sort(chosen.begin(), chosen.end());
        bool separated = true;
        for (std::size_t i = 1; i < chosen.size(); ++i) {
            separated = separated && chosen[i] - chosen[i - 1] > 0.05;
        }
        if (!separated) {
            continue;
        }
        const auto c = from_roots(chosen, lead(rng));
        const auto got = poly::real_roots(c);
        REQUIRE(got.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(got[i] - chosen[i]) <= 1e-10);
        }
    }
}

TEST_CASE("cubic with a complex pair returns its one real root")
{
    // (x - 2)(x^2 + 1)
    const std::vector<double> c{1.0, -2.0, 1.0, -2.0};
    const auto roots = poly::real_roots(c);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("double roots are reported once")
{
    // (x - 1)^2 (x + 3)^2
    const auto c = from_roots({1.0, 1.0, -3.0, -3.0}, 1.0);
    const auto roots = poly::real_roots(c);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-3.0).epsilon(1e-7));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("random polynomials agree with a bisection scan")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coefficient(-10.0, 10.0);
    std::uniform_int_distribution<int> degree(2, 4);
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(degree(rng)) + 1);
        for (auto& k : c) {
            k = coefficient(rng);
        }
        const auto got = poly::real_roots(c);
        for (const double r : got) {
            CHECK(std::abs(poly::evaluate(c, r)) <= poly::residual_tolerance(c, r));
        }
        CHECK(std::is_sorted(got.begin(), got.end()));

        double bound = 0.0;
        for (std::size_t i = 1; i < c.size(); ++i) {
            bound = std::max(bound, std::abs(c[i] / c[0]));
        }
        auto p = [&](double x) { return poly::evaluate(c, x); };
        auto reference = oracle_support::scan_roots_descending(p, -bound - 1.0, bound + 1.0, 100000);
        std::sort(reference.begin(), reference.end());
        // Tangential roots have no sign change; leave those cases out.
        if (reference.size() != got.size()) {
            bool near_double = false;
            for (std::size_t i = 1; i < got.size(); ++i) {
                near_double = near_double || got[i] - got[i - 1] < 1e-3;
            }
            CHECK_MESSAGE(near_double, "root count differs from the scan at trial ", trial);
            continue;
        }
        ++compared;
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(std::abs(got[i] - reference[i]) <= 1e-8 * std::max(1.0, std::abs(reference[i])));
        }
    }
    CHECK(compared > 990);
}

TEST_CASE("even degree yields an even number of simple roots")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coefficient(-10.0, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> c(5);
        for (auto& k : c) {
            k = coefficient(rng);
        }
        const auto got = poly::real_roots(c);
        bool near_double = false;
        for (std::size_t i = 1; i < got.size(); ++i) {
            near_double = near_double || got[i] - got[i - 1] < 1e-6;
        }
        if (!near_double) {
            CHECK(got.size() % 2 == 0);
        }
    }
}
