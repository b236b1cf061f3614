#include "qbounce/verify.hpp"

#include "qbounce/oracle.hpp"
#include "qbounce/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

namespace qbounce::verify {
namespace {

struct Case {
    Endpoints one_sided;
    Endpoints symmetric;
};

std::vector<Case> endpoint_cases(std::size_t trials, std::uint64_t seed, const Sampling& s)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> x(s.x_min, s.x_max);
    std::uniform_real_distribution<double> t(s.T_min, s.T_max);
    std::bernoulli_distribution flip(0.5);
    std::vector<Case> cases(trials);
    for (auto& c : cases) {
        c.one_sided = {x(rng), x(rng), t(rng)};
        c.symmetric = c.one_sided;
        if (flip(rng)) {
            c.symmetric.x_i = -c.symmetric.x_i;
        }
        if (flip(rng)) {
            c.symmetric.x_f = -c.symmetric.x_f;
        }
    }
    return cases;
}

std::string describe(const Endpoints& e, Model model)
{
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "%s x_i=%.17g x_f=%.17g T=%.17g", std::string(to_string(model)).c_str(),
                  e.x_i, e.x_f, e.T);
    return buffer;
}

// Runs `check` on every trial in parallel, then merges the per-trial
// reports in trial order.
Report run(std::size_t trials, const std::function<void(std::size_t, Report&)>& check)
{
    std::vector<Report> parts(trials);
    parallel_for(trials, [&](std::size_t i) { check(i, parts[i]); });
    Report total;
    total.trials = trials;
    for (const auto& part : parts) {
        total.checks += part.checks;
        total.failures += part.failures;
        total.skipped += part.skipped;
        total.worst = std::max(total.worst, part.worst);
        if (total.first_failure.empty()) {
            total.first_failure = part.first_failure;
        }
    }
    return total;
}

void fail(Report& r, const std::string& what)
{
    ++r.failures;
    if (r.first_failure.empty()) {
        r.first_failure = what;
    }
}

}  // namespace

std::string Report::summary() const
{
    char buffer[200];
    std::snprintf(buffer, sizeof buffer, "trials=%zu checks=%zu failures=%zu skipped=%zu worst=%.3g", trials, checks,
                  failures, skipped, worst);
    std::string out = buffer;
    if (!first_failure.empty()) {
        out += " first_failure=[" + first_failure + "]";
    }
    return out;
}

Report paths(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s)
{
    const auto cases = endpoint_cases(trials, seed, s);
    return run(trials, [&](std::size_t i, Report& r) {
        for (const Model model : {Model::OneSided, Model::Symmetric}) {
            const Endpoints& e = model == Model::OneSided ? cases[i].one_sided : cases[i].symmetric;
            std::vector<double> closed;
            for (const auto& path : classical::enumerate_paths(e, p, model).paths) {
                closed.push_back(path.v_i);
            }
            std::sort(closed.begin(), closed.end());
            const auto shot = oracle::shoot_paths(e, p, model);
            ++r.checks;
            if (shot.roots.size() != closed.size()) {
                fail(r, describe(e, model) + " count " + std::to_string(closed.size()) + " vs shooting "
                            + std::to_string(shot.roots.size()));
                continue;
            }
            for (std::size_t k = 0; k < closed.size(); ++k) {
                const double gap = std::abs(closed[k] - shot.roots[k]);
                r.worst = std::max(r.worst, gap);
                if (!(gap <= 1e-6)) {
                    fail(r, describe(e, model) + " v_i mismatch");
                    break;
                }
            }
        }
    });
}

Report action(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s)
{
    const auto cases = endpoint_cases(trials, seed, s);
    return run(trials, [&](std::size_t i, Report& r) {
        for (const Model model : {Model::OneSided, Model::Symmetric}) {
            const Endpoints& e = model == Model::OneSided ? cases[i].one_sided : cases[i].symmetric;
            for (const auto& path : classical::enumerate_paths(e, p, model).paths) {
                ++r.checks;
                const double rel = std::abs(oracle::action_quadrature(path, p).value - path.action) / std::abs(path.action);
                r.worst = std::max(r.worst, rel);
                if (!(rel <= 1e-7)) {
                    fail(r, describe(e, model) + " n=" + std::to_string(path.n));
                }
            }
        }
    });
}

Report vvd(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s)
{
    const auto cases = endpoint_cases(trials, seed, s);
    return run(trials, [&](std::size_t i, Report& r) {
        for (const Model model : {Model::OneSided, Model::Symmetric}) {
            const Endpoints& e = model == Model::OneSided ? cases[i].one_sided : cases[i].symmetric;
            for (const auto& path : classical::enumerate_paths(e, p, model).paths) {
                ++r.checks;
                const double product = path.vvd * classical::path_divergence(path, e.T, p) / p.mass;
                if (!(std::abs(product + 1.0) <= 1e-8)) {
                    fail(r, describe(e, model) + " D f(T) = " + std::to_string(product));
                }
                const auto fd = oracle::vvd_fd(e, path, p);
                if (fd.skipped) {
                    ++r.skipped;
                    continue;
                }
                const double rel = std::abs(fd.value - path.vvd) / std::abs(path.vvd);
                r.worst = std::max(r.worst, rel);
                if (!(rel <= 1e-4)) {
                    fail(r, describe(e, model) + " n=" + std::to_string(path.n) + " finite difference");
                }
            }
        }
    });
}

Report morse(std::size_t trials, std::uint64_t seed, const PhysicalParams& p, const Sampling& s)
{
    struct Launch {
        double x_i, v_i, T;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> x(s.x_min, s.x_max);
    std::uniform_real_distribution<double> v(-s.v_max, s.v_max);
    std::uniform_real_distribution<double> t(s.T_min, s.T_max);
    std::vector<Launch> launches(trials);
    for (auto& l : launches) {
        l = {x(rng), v(rng), t(rng)};
    }
    return run(trials, [&](std::size_t i, Report& r) {
        const auto [x_i, v_i, T] = launches[i];
        char where[120];
        std::snprintf(where, sizeof where, "x_i=%.17g v_i=%.17g T=%.17g", x_i, v_i, T);

        const auto sb = classical::path_from_initial(x_i, v_i, T, p, Model::Symmetric);
        const int closed = classical::morse_index_sb(x_i, v_i, T, p);
        const int numeric = oracle::morse_count_numeric(sb, p);
        const int listed = static_cast<int>(sb.focal_times.size());
        ++r.checks;
        if (closed != numeric || closed != listed || sb.morse != closed) {
            fail(r, std::string(where) + " sb closed=" + std::to_string(closed) + " numeric=" + std::to_string(numeric)
                        + " focal=" + std::to_string(listed));
        }

        const auto one = classical::path_from_initial(x_i, v_i, T, p, Model::OneSided);
        ++r.checks;
        if (one.morse - 2 * one.n != oracle::morse_count_numeric(one, p)
            || classical::morse_index_1sb(x_i, v_i, T, p) != one.morse) {
            fail(r, std::string(where) + " 1sb");
        }
    });
}

}  // namespace qbounce::verify
