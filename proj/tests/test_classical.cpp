#include <doctest.h>

#include "qbounce/classical.hpp"
#include "qbounce/errors.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace qbounce;

namespace {

const PhysicalParams unit{};

std::vector<int> bounce_counts(const PathSet& set)
{
    std::vector<int> n;
    for (const auto& path : set.paths) {
        n.push_back(path.n);
    }
    std::sort(n.begin(), n.end());
    return n;
}

// Random endpoint triples; symmetric ones get random signs.
std::vector<std::pair<Endpoints, Model>> random_cases(int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> x(0.1, 30.0);
    std::uniform_real_distribution<double> t(0.1, 30.0);
    std::bernoulli_distribution flip(0.5);
    std::vector<std::pair<Endpoints, Model>> cases;
    for (int i = 0; i < count; ++i) {
        Endpoints e{x(rng), x(rng), t(rng)};
        Model model = Model::OneSided;
        if (i % 2) {
            model = Model::Symmetric;
            e.x_i *= flip(rng) ? -1.0 : 1.0;
            e.x_f *= flip(rng) ? -1.0 : 1.0;
        }
        cases.emplace_back(e, model);
    }
    return cases;
}

}  // namespace

TEST_CASE("physical parameters must be positive and finite")
{
    CHECK_NOTHROW(unit.validate());
    CHECK_THROWS_AS((PhysicalParams{0.0, 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PhysicalParams{1.0, -1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PhysicalParams{1.0, 1.0, std::numeric_limits<double>::infinity()}.validate()),
                    std::invalid_argument);
}

TEST_CASE("natural units")
{
    const PhysicalParams p{2.0, 3.0, 0.5};
    const auto u = NaturalUnits::from(p);
    CHECK(u.energy == doctest::Approx(std::cbrt(0.25 * 9.0 * 2.0)).epsilon(1e-15));
    CHECK(u.length == doctest::Approx(std::cbrt(0.25 / (3.0 * 4.0))).epsilon(1e-15));
    CHECK(u.time == doctest::Approx(std::cbrt(0.5 / (2.0 * 9.0))).epsilon(1e-15));
    CHECK(u.gamma == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));

    const auto one = NaturalUnits::from(unit);
    CHECK(one.energy == 1.0);
    CHECK(one.length == 1.0);
    CHECK(one.time == 1.0);
}

TEST_CASE("model names")
{
    CHECK(parse_model("1sb") == Model::OneSided);
    CHECK(parse_model("sb") == Model::Symmetric);
    CHECK(to_string(Model::Symmetric) == "sb");
    CHECK_THROWS_AS(parse_model("bouncer"), std::invalid_argument);
}

TEST_CASE("dimensionless endpoints reproduce the physical ones")
{
    const PhysicalParams p{1.5, 2.5, 1.0};
    const Endpoints e{3.0, 7.0, 1.7};
    const auto d = DimensionlessEndpoints::from(e, p);
    CHECK(d.a == doctest::Approx(2.0 * 3.0 / (2.5 * 1.7 * 1.7)));
    const auto back = d.restore(e.T, p);
    CHECK(back.x_i == doctest::Approx(e.x_i).epsilon(1e-15));
    CHECK(back.x_f == doctest::Approx(e.x_f).epsilon(1e-15));
}

TEST_CASE("discriminant vanishes identically for n = 0")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        CHECK(classical::discriminant(0, u(rng), u(rng)) == 0.0);
    }
}

TEST_CASE("discriminant kink identities")
{
    for (int n = 2; n <= 6; ++n) {
        const double a_edge = 1.0 / (4.0 * n * (n - 1));
        const double a_diag = 1.0 / (4.0 * (n * n - 1));
        for (const auto [a, b] : {std::pair{a_edge, 0.0}, std::pair{a_diag, a_diag}}) {
            const auto c = classical::bounce_poly(n, a, b);
            const auto scale = oracle_support::quartic_discriminant_scale(c[0], c[1], c[2], c[3], c[4]);
            CHECK_MESSAGE(std::abs(classical::discriminant(n, a, b)) <= 1e-9 * static_cast<double>(scale), "n = ", n,
                          " a = ", a, " b = ", b);
        }
    }
}

TEST_CASE("discriminant equals the coefficient-based quartic discriminant")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 1 + trial % 6;
        const double a = u(rng);
        const double b = u(rng);
        const auto c = classical::bounce_poly(n, a, b);
        const long double want = oracle_support::quartic_discriminant(c[0], c[1], c[2], c[3], c[4]);
        const double got = classical::discriminant(n, a, b);
        CHECK(std::abs(got - static_cast<double>(want)) <= 1e-9 * std::abs(static_cast<double>(want)));
    }
}

TEST_CASE("discriminant sign classifies the real-root count")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 0.6);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + trial % 5;
        const double a = u(rng) * u(rng);
        const double b = u(rng) * u(rng);
        const double d = classical::discriminant(n, a, b);
        const double nearby = std::abs(classical::discriminant(n, a * 1.001 + 1e-6, b));
        if (std::abs(d) < 1e-6 * nearby) {
            continue;
        }
        ++checked;
        const auto roots = poly::real_roots(classical::bounce_poly(n, a, b));
        if (n == 1) {
            CHECK(roots.size() == (d < 0.0 ? 1u : 3u));
        } else if (d < 0.0) {
            CHECK(roots.size() == 2u);
        } else {
            CHECK((roots.size() == 0u || roots.size() == 4u));
        }
    }
    CHECK(checked > 2900);
}

TEST_CASE("bounce bound")
{
    CHECK(classical::max_bounces(10.0, 10.0) == 2);
    CHECK(classical::max_bounces(0.05, 0.05) == 3);
    CHECK(classical::max_bounces(0.1, 0.0) == 3);
    CHECK_THROWS_AS(classical::max_bounces(0.0, 0.0), UnboundedBouncesError);
}

TEST_CASE("bounce polynomial coefficients")
{
    const double a = 0.7;
    const double b = 0.2;
    const auto zero = classical::bounce_poly(0, a, b);
    REQUIRE(zero.size() == 5);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    CHECK(zero[2] == doctest::Approx(4.0));
    CHECK(zero[3] == doctest::Approx(4.0 * (a - b - 1.0)));
    CHECK(zero[4] == doctest::Approx((1.0 + b - a) * (1.0 + b - a)));

    CHECK(classical::bounce_poly(1, a, b)[0] == 0.0);
    CHECK(classical::bounce_poly(2, a, b)[0] == doctest::Approx(16.0 * 4.0 * 3.0));

    const double d = classical::discriminant(2, 0.04, 0.04);
    const auto roots = poly::real_roots(classical::bounce_poly(2, 0.04, 0.04));
    if (d < 0.0) {
        CHECK(roots.size() == 2u);
    } else {
        CHECK((roots.size() == 0u || roots.size() == 4u));
    }
}

TEST_CASE("free drop is the zero-bounce path")
{
    const auto paths = classical::solve_paths_for_n({2.0, 1.5, 1.0}, 0, unit);
    REQUIRE(paths.size() == 1);
    const auto& drop = paths[0];
    CHECK(std::abs(drop.v_i) <= 1e-12);
    CHECK(drop.v_f == doctest::Approx(-1.0));
    CHECK(drop.v_m * drop.v_m == doctest::Approx(4.0));
    for (double t = 0.0; t <= 1.0; t += 0.125) {
        CHECK(classical::path_position(drop, t, unit) == doctest::Approx(2.0 - 0.5 * t * t).epsilon(1e-12));
    }
}

TEST_CASE("path counts at reference endpoints")
{
    const auto falling = classical::enumerate_paths({10.0, 9.0, 11.0}, unit, Model::OneSided);
    CHECK(bounce_counts(falling) == std::vector<int>{0, 1, 1, 1});
    CHECK(classical::solve_paths_for_n({10.0, 9.0, 11.0}, 0, unit).size() == 1);
    CHECK(classical::solve_paths_for_n({10.0, 9.0, 11.0}, 1, unit).size() == 3);

    const auto rising = classical::enumerate_paths({3.0, 6.0, 10.0}, unit, Model::OneSided);
    CHECK(bounce_counts(rising) == std::vector<int>{0, 1, 1, 1});

    const auto symmetric = classical::enumerate_paths({3.0, 6.0, 20.0}, unit, Model::Symmetric);
    CHECK(symmetric.count() == 5);
    for (const auto& path : symmetric.paths) {
        CHECK(path.n % 2 == 0);
    }
}

TEST_CASE("opposite-side symmetric endpoints need an odd number of crossings")
{
    for (const double T : {0.5, 3.0, 11.0, 20.0, 29.0}) {
        const auto set = classical::enumerate_paths({3.0, -6.0, T}, unit, Model::Symmetric);
        CHECK(set.count() > 0);
        for (const auto& path : set.paths) {
            CHECK(path.n % 2 == 1);
        }
    }
}

TEST_CASE("symmetric endpoints on the boundary are rejected")
{
    CHECK_THROWS_AS(classical::enumerate_paths({0.0, 2.0, 1.0}, unit, Model::Symmetric), BoundaryEndpointError);
    CHECK_THROWS_AS(classical::enumerate_paths({0.0, 0.0, 1.0}, unit, Model::OneSided), UnboundedBouncesError);
    CHECK_THROWS_AS(classical::enumerate_paths({-1.0, 2.0, 1.0}, unit, Model::OneSided), DomainError);
}

TEST_CASE("enumerated paths satisfy the kinematic invariants")
{
    const PhysicalParams p{1.3, 0.8, 1.0};
    for (const auto& [e, model] : random_cases(400, 21)) {
        const auto set = classical::enumerate_paths(e, p, model);
        for (const auto& path : set.paths) {
            const auto& im = path.image;
            const double vm2 = path.v_m * path.v_m;
            CHECK(im.v_i * im.v_i + 2.0 * p.g * im.x_i == doctest::Approx(vm2).epsilon(1e-9));
            CHECK(im.v_f * im.v_f + 2.0 * p.g * im.x_f == doctest::Approx(vm2).epsilon(1e-9));
            CHECK(std::abs(im.v_f - (im.v_i - p.g * e.T + 2.0 * path.n * path.v_m))
                  <= 1e-9 * (std::abs(im.v_i) + p.g * e.T + 2.0 * path.n * path.v_m));
            CHECK(path.t_b == doctest::Approx(2.0 * path.v_m / p.g));
            CHECK(path.x_m == doctest::Approx(vm2 / (2.0 * p.g)));

            REQUIRE(path.tau.size() == static_cast<std::size_t>(path.n));
            double previous = -1e-12 * e.T;
            for (const double t : path.tau) {
                CHECK(t > previous);
                CHECK(t <= e.T * (1.0 + 1e-12));
                CHECK(std::abs(classical::path_position(path, std::clamp(t, 0.0, e.T), p))
                      <= 1e-9 * std::max(1.0, path.x_m));
                previous = t;
            }
            for (const double t : path.tau_half) {
                if (t >= 0.0 && t <= e.T) {
                    CHECK(std::abs(classical::path_position(path, t, p)) == doctest::Approx(path.x_m).epsilon(1e-9));
                }
            }

            const double scale = std::max({1.0, std::abs(e.x_i), std::abs(e.x_f)});
            CHECK(std::abs(classical::path_position(path, 0.0, p) - e.x_i) <= 1e-9 * scale);
            CHECK(std::abs(classical::path_position(path, e.T, p) - e.x_f) <= 1e-9 * scale);
            CHECK(path.morse >= 1);
        }
    }
}

TEST_CASE("trajectories have exactly n floor contacts")
{
    for (const auto& [e, model] : random_cases(200, 22)) {
        for (const auto& path : classical::enumerate_paths(e, unit, model).paths) {
            if (model == Model::OneSided) {
                // A 1SB path touches the floor without changing sign: check the
                // height stays nonnegative and count the contacts.
                double lowest = std::numeric_limits<double>::infinity();
                for (int k = 0; k <= 10000; ++k) {
                    lowest = std::min(lowest, classical::path_position(path, e.T * (k / 10000.0), unit));
                }
                CHECK(lowest >= -1e-9 * std::max(1.0, path.x_m));
                CHECK(classical::bounces_before(path, e.T, unit) == path.n);
            } else {
                int changes = 0;
                double previous = classical::path_position(path, 0.0, unit);
                for (int k = 1; k <= 10000; ++k) {
                    const double x = classical::path_position(path, e.T * (k / 10000.0), unit);
                    if ((x < 0.0) != (previous < 0.0) && x != 0.0 && previous != 0.0) {
                        ++changes;
                    }
                    previous = x;
                }
                // Crossings closer together than the sampling step pair up;
                // grazing tangencies are impossible since the speed at the
                // floor is v_m > 0.
                CHECK(changes == path.n);
            }
        }
    }
}

TEST_CASE("zero-bounce action")
{
    const auto drop = classical::solve_paths_for_n({2.0, 1.5, 1.0}, 0, unit).at(0);
    CHECK(drop.action == doctest::Approx(-5.0 / 3.0).epsilon(1e-12));

    const PhysicalParams p{1.7, 2.3, 0.9};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(0.1, 30.0);
    std::uniform_real_distribution<double> t(0.1, 30.0);
    for (int i = 0; i < 200; ++i) {
        const Endpoints e{x(rng), x(rng), t(rng)};
        const auto paths = classical::solve_paths_for_n(e, 0, p);
        REQUIRE(paths.size() == 1);
        const double T = e.T;
        const double want = p.mass * (e.x_f - e.x_i) * (e.x_f - e.x_i) / (2.0 * T)
                            - p.mass * p.g * T * (e.x_f + e.x_i) / 2.0 - p.mass * p.g * p.g * T * T * T / 24.0;
        const double scale = p.mass * (e.x_f - e.x_i) * (e.x_f - e.x_i) / (2.0 * T)
                             + p.mass * p.g * T * (e.x_f + e.x_i) / 2.0 + p.mass * p.g * p.g * T * T * T / 24.0;
        CHECK(std::abs(paths[0].action - want) <= 1e-12 * scale);
    }
}

TEST_CASE("zero-bounce van Vleck determinant is -M/T")
{
    const auto one = classical::solve_paths_for_n({1.0, 1.0, 1.0}, 0, unit).at(0);
    CHECK(one.vvd == doctest::Approx(-1.0).epsilon(1e-14));

    const PhysicalParams p{2.5, 1.5, 1.0};
    for (const double T : {0.3, 1.0, 4.0, 17.0}) {
        const Endpoints e{4.0, 9.0, T};
        const auto path = classical::solve_paths_for_n(e, 0, p).at(0);
        CHECK(classical::vvd(path, e, p) == doctest::Approx(-p.mass / T).epsilon(1e-12));
    }
}

TEST_CASE("divergence function and the determinant")
{
    const PhysicalParams p{1.4, 0.7, 1.0};
    for (const auto& [e, model] : random_cases(400, 23)) {
        for (const auto& path : classical::enumerate_paths(e, p, model).paths) {
            CHECK(classical::path_divergence(path, 1e-9 * e.T, p) == doctest::Approx(1e-9 * e.T).epsilon(1e-12));
            if (path.n >= 1) {
                const double t1 = path.tau[0];
                const double f1 = classical::path_divergence(path, t1, p);
                CHECK(std::abs(f1) == doctest::Approx((path.v_m + path.image.v_i) / p.g).epsilon(1e-9));
            }
            const double f_end = classical::path_divergence(path, e.T, p);
            CHECK(f_end == doctest::Approx(classical::path_divergence_at_end(path)).epsilon(1e-8));
            if (!path.caustic) {
                CHECK(path.vvd * f_end / p.mass == doctest::Approx(-1.0).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("endpoint on a focus")
{
    // Launch, then stop exactly at the first interior focus.
    const auto full = classical::path_from_initial(2.0, -0.45, 30.0, unit, Model::Symmetric);
    REQUIRE(full.focal_times.size() >= 2);
    const double t_focus = full.focal_times[1];
    const auto stopped = classical::path_from_initial(2.0, -0.45, t_focus, unit, Model::Symmetric);
    CHECK(stopped.caustic);
    CHECK_THROWS_AS(classical::vvd(stopped, stopped.ends, unit), FocusAtEndpointError);
}

TEST_CASE("mapping between symmetric and one-sided endpoints")
{
    const auto m = classical::map_sb_to_1sb(-3.0, 6.0, 1);
    CHECK(m.x_i == 3.0);
    CHECK(m.x_f == 6.0);
    CHECK(m.sign == -1);
    CHECK_THROWS_AS(classical::map_sb_to_1sb(3.0, 6.0, 1), ParityMismatchError);
    CHECK_THROWS_AS(classical::map_sb_to_1sb(0.0, 6.0, 2), BoundaryEndpointError);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> x(0.1, 20.0);
    std::uniform_real_distribution<double> v(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const int n = i % 5;
        const int sign = (i / 5) % 2 ? 1 : -1;
        const double x_i = x(rng);
        const double x_f = x(rng);
        const double v_i = v(rng);
        const auto s = classical::map_1sb_to_sb(x_i, x_f, v_i, n, sign);
        const auto back = classical::map_sb_to_1sb(s.x_i, s.x_f, n);
        CHECK(back.x_i == x_i);
        CHECK(back.x_f == x_f);
        CHECK(s.v_i * back.sign == v_i);
    }
}

TEST_CASE("symmetric paths share action and determinant with their one-sided images")
{
    for (const auto& [e, model] : random_cases(300, 24)) {
        if (model != Model::Symmetric) {
            continue;
        }
        const auto sb = classical::enumerate_paths(e, unit, Model::Symmetric);
        for (const auto& path : sb.paths) {
            const auto mapped = classical::map_sb_to_1sb(e.x_i, e.x_f, path.n);
            const auto images = classical::solve_paths_for_n({mapped.x_i, mapped.x_f, e.T}, path.n, unit);
            const auto match = std::find_if(images.begin(), images.end(), [&](const ClassicalPath& q) {
                return std::abs(q.v_i - path.v_i * mapped.sign) <= 1e-12 * std::max(1.0, std::abs(q.v_i));
            });
            REQUIRE(match != images.end());
            CHECK(match->action == path.action);
            CHECK(std::abs(match->vvd) == doctest::Approx(std::abs(path.vvd)).epsilon(1e-12));
            CHECK(match->morse == path.morse + 2 * path.n);
        }
    }
}

TEST_CASE("phase diagram")
{
    const std::vector<double> T{11.0};
    const std::vector<double> xf{9.0};
    CHECK(classical::phase_diagram(10.0, T, xf, unit).at(0) == 4);

    // Near T = 0 only the direct and the single-bounce path survive.
    const std::vector<double> short_T{0.02, 0.05, 0.1};
    const std::vector<double> heights{1.0, 5.0, 10.0, 20.0, 25.0};
    for (const int count : classical::phase_diagram(10.0, short_T, heights, unit)) {
        CHECK(count == 2);
    }
}

TEST_CASE("path counts change only where a discriminant changes sign")
{
    // With x_f > 0 no bounce can sit on an endpoint, so the only way for the
    // n-bounce count to change between neighboring nodes is a real-root
    // pair appearing or vanishing.
    const double x_i = 10.0;
    std::vector<double> T_grid;
    std::vector<double> xf_grid;
    for (int k = 0; k < 80; ++k) {
        T_grid.push_back(0.5 + 11.5 * k / 79.0);
        xf_grid.push_back(0.1 + 24.9 * k / 79.0);
    }
    auto count = [&](double T, double x_f, int n) {
        return classical::solve_paths_for_n({x_i, x_f, T}, n, unit).size();
    };
    int transitions = 0;
    for (std::size_t i = 0; i + 1 < T_grid.size(); ++i) {
        for (std::size_t j = 0; j + 1 < xf_grid.size(); ++j) {
            for (const auto [i2, j2] : {std::pair{i + 1, j}, std::pair{i, j + 1}}) {
                for (int n = 0; n <= 6; ++n) {
                    if (count(T_grid[i], xf_grid[j], n) == count(T_grid[i2], xf_grid[j2], n)) {
                        continue;
                    }
                    ++transitions;
                    const auto d1 = DimensionlessEndpoints::from({x_i, xf_grid[j], T_grid[i]}, unit);
                    const auto d2 = DimensionlessEndpoints::from({x_i, xf_grid[j2], T_grid[i2]}, unit);
                    const double s1 = classical::discriminant(n, d1.a, d1.b);
                    const double s2 = classical::discriminant(n, d2.a, d2.b);
                    CHECK((s1 < 0.0) != (s2 < 0.0));
                }
            }
        }
    }
    CHECK(transitions > 20);
}
