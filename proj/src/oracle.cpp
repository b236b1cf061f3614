#include "qbounce/oracle.hpp"

#include "qbounce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qbounce::oracle {
namespace {

// Time until a particle at height x >= 0 with velocity v first reaches the
// floor, free of cancellation for either sign of v.
double first_arrival(double x, double v, double g)
{
    const double speed = std::sqrt(v * v + 2.0 * g * x);
    return v >= 0.0 ? (v + speed) / g : 2.0 * x / (speed - v);
}

// Simpson's rule on [a, b] with an even number of panels.
template <class F>
double simpson(const F& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

}  // namespace

double flight_position(double x_i, double v_i, double T, const PhysicalParams& p, Model model)
{
    double sign = 1.0;
    if (model == Model::Symmetric && (x_i < 0.0 || (x_i == 0.0 && v_i < 0.0))) {
        sign = -1.0;
        x_i = -x_i;
        v_i = -v_i;
    }
    if (x_i < 0.0) {
        throw DomainError("flight_position: one-sided start below the floor");
    }
    const double g = p.g;
    const double t1 = first_arrival(x_i, v_i, g);
    if (T <= t1) {
        return sign * (x_i + v_i * T - 0.5 * g * T * T);
    }
    // After the first arrival the motion repeats with the floor speed.
    const double speed = std::sqrt(v_i * v_i + 2.0 * g * x_i);
    const double period = 2.0 * speed / g;
    const double rest = T - t1;
    const double arcs = period > 0.0 ? std::floor(rest / period) : 0.0;
    const double s = period > 0.0 ? rest - arcs * period : 0.0;
    const double height = std::max(0.0, speed * s - 0.5 * g * s * s);
    if (model == Model::OneSided) {
        return height;
    }
    // Arc j (from 0) follows crossing j + 1; odd crossing counts sit below zero.
    const bool below = std::fmod(arcs, 2.0) == 0.0;
    return sign * (below ? -height : height);
}

double launch_speed_bound(const Endpoints& e, const PhysicalParams& p)
{
    const double xi = std::abs(e.x_i);
    const double xf = std::abs(e.x_f);
    const double gT = p.g * e.T;
    // Direct flight, repeated bounces (floor speed <= gT) and a single fast
    // bounce (time >= (x_i + x_f) / 2 v_m).
    return std::max({gT, 2.0 * (xi + xf) / e.T, std::abs(xf - xi) / e.T + 0.5 * gT});
}

ShootingResult shoot_paths(const Endpoints& e, const PhysicalParams& p, Model model, double v_lo, double v_hi,
                           std::size_t samples)
{
    if (samples < 2 || !(v_hi > v_lo)) {
        throw std::invalid_argument("shoot_paths: need at least two samples over a nonempty range");
    }
    ShootingResult result;
    result.samples = samples;
    result.tolerance = 1e-8 * std::max(1.0, std::abs(e.x_f));
    const auto miss = [&](double v) { return flight_position(e.x_i, v, e.T, p, model) - e.x_f; };

    double v_prev = v_lo;
    double f_prev = miss(v_prev);
    for (std::size_t j = 1; j < samples; ++j) {
        const double v = v_lo + (v_hi - v_lo) * static_cast<double>(j) / static_cast<double>(samples - 1);
        const double f = miss(v);
        if (f_prev == 0.0) {
            result.brackets.emplace_back(v_prev, v_prev);
            result.roots.push_back(v_prev);
        } else if ((f_prev < 0.0) != (f < 0.0) && f != 0.0) {
            double lo = v_prev, hi = v, f_lo = f_prev;
            for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = miss(mid);
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            const double root = std::abs(miss(lo)) <= std::abs(miss(hi)) ? lo : hi;
            result.brackets.emplace_back(v_prev, v);
            if (std::abs(miss(root)) <= result.tolerance) {
                result.roots.push_back(root);
            }
        }
        v_prev = v;
        f_prev = f;
    }
    if (f_prev == 0.0) {
        result.brackets.emplace_back(v_prev, v_prev);
        result.roots.push_back(v_prev);
    }
    return result;
}

ShootingResult shoot_paths(const Endpoints& e, const PhysicalParams& p, Model model)
{
    const double bound = 1.01 * launch_speed_bound(e, p);
    std::size_t samples = kDefaultSamples;
    ShootingResult previous = shoot_paths(e, p, model, -bound, bound, samples);
    for (int round = 0; round < 8; ++round) {
        samples *= 2;
        ShootingResult next = shoot_paths(e, p, model, -bound, bound, samples);
        if (next.roots.size() == previous.roots.size()) {
            return next;
        }
        previous = std::move(next);
    }
    return previous;
}

QuadratureResult action_quadrature(const ClassicalPath& path, const PhysicalParams& p, int steps)
{
    const double T = path.ends.T;
    const double M = p.mass;
    const double g = p.g;
    std::vector<double> cuts{0.0};
    for (const double t : path.tau) {
        if (t > cuts.back() && t < T) {
            cuts.push_back(t);
        }
    }
    cuts.push_back(T);

    QuadratureResult out{0.0, 0.0};
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s];
        const double b = cuts[s + 1];
        const double delta = (b - a) / 8.0;
        const auto X = [&](double t) { return classical::path_position(path, std::clamp(t, a, b), p); };
        // Second-order stencils kept inside the segment; exact on a parabola.
        const auto velocity = [&](double t) {
            if (t - delta >= a && t + delta <= b) {
                return (X(t + delta) - X(t - delta)) / (2.0 * delta);
            }
            if (t - delta < a) {
                return (-3.0 * X(t) + 4.0 * X(t + delta) - X(t + 2.0 * delta)) / (2.0 * delta);
            }
            return (3.0 * X(t) - 4.0 * X(t - delta) + X(t - 2.0 * delta)) / (2.0 * delta);
        };
        int panels = static_cast<int>(std::ceil(steps * (b - a) / T));
        panels = std::max(2, panels + panels % 2);
        if (!(b > a)) {
            continue;
        }
        const auto kinetic = [&](double t) {
            const double v = velocity(t);
            return 0.5 * M * v * v;
        };
        const auto potential = [&](double t) { return M * g * std::abs(X(t)); };
        const double K = simpson(kinetic, a, b, panels);
        const double V = simpson(potential, a, b, panels);
        out.value += K - V;
        out.magnitude += std::abs(K) + std::abs(V);
    }
    return out;
}

FiniteDifference vvd_fd(const Endpoints& e, const ClassicalPath& path, const PhysicalParams& p, double h)
{
    FiniteDifference out;
    if (h <= 0.0) {
        h = 1e-2 * std::max({1.0, std::abs(e.x_i), std::abs(e.x_f)});
    }
    if (path.caustic) {
        out.skipped = true;
        return out;
    }

    const auto same_branch = [&](const PathSet& set) {
        std::vector<double> v;
        for (const auto& q : set.paths) {
            if (q.n == path.n) {
                v.push_back(q.v_i);
            }
        }
        return v;
    };
    std::vector<double> original;
    try {
        original = same_branch(classical::enumerate_paths(e, p, path.model));
    } catch (const DomainError&) {
        out.skipped = true;
        return out;
    }
    // Half the distance to the nearest other branch with the same n.
    double window = std::numeric_limits<double>::infinity();
    for (const double v : original) {
        const double gap = std::abs(v - path.v_i);
        if (gap > 0.0) {
            window = std::min(window, 0.5 * gap);
        }
    }

    const auto action_at = [&](double x_i, double x_f, double& S) {
        if (path.model == Model::OneSided ? (x_i < 0.0 || x_f < 0.0)
                                          : (x_i * e.x_i <= 0.0 || x_f * e.x_f <= 0.0)) {
            return false;
        }
        PathSet set;
        try {
            set = classical::enumerate_paths({x_i, x_f, e.T}, p, path.model);
        } catch (const DomainError&) {
            return false;
        }
        const ClassicalPath* best = nullptr;
        std::size_t count = 0;
        for (const auto& q : set.paths) {
            if (q.n != path.n) {
                continue;
            }
            ++count;
            if (!best || std::abs(q.v_i - path.v_i) < std::abs(best->v_i - path.v_i)) {
                best = &q;
            }
        }
        if (!best || count != original.size() || !(std::abs(best->v_i - path.v_i) < window)) {
            return false;
        }
        S = best->action;
        return true;
    };

    const auto mixed = [&](double step, double& value) {
        double s_pp = 0.0, s_pm = 0.0, s_mp = 0.0, s_mm = 0.0;
        if (!action_at(e.x_i + step, e.x_f + step, s_pp) || !action_at(e.x_i + step, e.x_f - step, s_pm)
            || !action_at(e.x_i - step, e.x_f + step, s_mp) || !action_at(e.x_i - step, e.x_f - step, s_mm)) {
            return false;
        }
        value = ((s_pp - s_pm) - (s_mp - s_mm)) / (4.0 * step * step);
        return true;
    };
    // Ridders' extrapolation over steps h, h/1.4, h/1.4^2, ...: each level
    // removes the next even power of the step, and the table's own spread
    // estimates the error.
    constexpr int levels = 8;
    constexpr double shrink = 1.4;
    constexpr double ratio = shrink * shrink;
    double table[levels][levels] = {};
    double best_error = std::numeric_limits<double>::infinity();
    double step = h;
    int first = -1;
    for (int i = 0; i < levels; ++i, step /= shrink) {
        double value = 0.0;
        if (!mixed(step, value)) {
            if (first >= 0) {
                break;
            }
            continue;
        }
        if (first < 0) {
            first = i;
        }
        table[i][0] = value;
        double factor = ratio;
        for (int j = 1; j <= i - first; ++j, factor *= ratio) {
            table[i][j] = (table[i][j - 1] * factor - table[i - 1][j - 1]) / (factor - 1.0);
            const double error = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                          std::abs(table[i][j] - table[i - 1][j - 1]));
            if (error <= best_error) {
                best_error = error;
                out.value = table[i][j];
            }
        }
        if (i > first && std::abs(table[i][i - first] - table[i - 1][i - 1 - first]) >= 2.0 * best_error) {
            break;
        }
    }
    out.error = best_error;
    out.skipped = !std::isfinite(best_error) || best_error > kFdRelativeError * std::abs(out.value);
    return out;
}

int morse_count_numeric(const ClassicalPath& path, const PhysicalParams& p)
{
    const double g = p.g;
    const double T = path.ends.T;
    const double x_i = path.image.x_i;
    const double v_i = path.image.v_i;
    const double speed = std::sqrt(v_i * v_i + 2.0 * g * x_i);

    // f(0) = 0, f'(0) = 1; between crossings f is linear, and at a crossing
    // with speed |Xdot| = speed the linearized force -2 g delta(X) kicks the
    // slope by -2 g f / speed.
    double t = 0.0;
    double f = 0.0;
    double slope = 1.0;
    double crossing = first_arrival(x_i, v_i, g);
    const double period = 2.0 * speed / g;

    int changes = 0;
    int last_sign = 1;
    const auto record = [&](double value) {
        const int s = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
        if (s != 0 && s != last_sign) {
            ++changes;
            last_sign = s;
        }
    };
    while (crossing < T) {
        f += slope * (crossing - t);
        t = crossing;
        record(f);
        slope -= 2.0 * g * f / speed;
        crossing += period;
    }
    // A zero exactly at T is not counted (Theta(0) = 0).
    const double f_end = f + slope * (T - t);
    if (f_end != 0.0) {
        record(f_end);
    }
    return 1 + changes;
}

}  // namespace qbounce::oracle
