#include "qbounce/classical.hpp"

#include <algorithm>
#include <cmath>

namespace qbounce::classical {
namespace {

// (2k/g)(v_i^2 + v_m^2 + 2k v_i v_m) / (v_m + 2k v_i): zero of f between
// tau_k and tau_{k+1}.
double focal_time(int k, double v_i, double v_m, double g)
{
    const double kk = k;
    return 2.0 * kk / g * (v_i * v_i + v_m * v_m + 2.0 * kk * v_i * v_m) / (v_m + 2.0 * kk * v_i);
}

}  // namespace

std::vector<double> focal_times(const ClassicalPath& path, const PhysicalParams& p)
{
    const double g = p.g;
    const double x_i = path.image.x_i;
    const double v_i = path.image.v_i;
    const double v_m = path.v_m;
    const double T = path.ends.T;

    std::vector<double> times{0.0};
    // Foci lie one per inter-bounce interval, so at most n of them precede T.
    for (int k = 1; k <= path.n + 1; ++k) {
        const double threshold = -std::sqrt(g * x_i / (2.0 * k * (k + 1.0)));
        const int k_prime = v_i < threshold ? k + 1 : k;
        const double t = focal_time(k_prime, v_i, v_m, g);
        if (!std::isfinite(t) || t >= T) {
            break;
        }
        if (t > times.back()) {
            times.push_back(t);
        }
    }
    return times;
}

int morse_index_sb(double x_i, double v_i, double T, const PhysicalParams& p)
{
    const double g = p.g;
    const double v_m = std::sqrt(v_i * v_i + 2.0 * g * x_i);
    const int j = static_cast<int>(std::floor((g * T - v_i) / (2.0 * v_m))) + step(v_i);
    const int k = j + step(-std::sqrt(g * x_i) - std::sqrt(2.0 * j * (j + 1.0)) * v_i);
    return j + step(T - focal_time(k, v_i, v_m, g));
}

int morse_index_1sb(double x_i, double v_i, double T, const PhysicalParams& p)
{
    const double v_m = std::sqrt(v_i * v_i + 2.0 * p.g * x_i);
    // Bounces strictly before T; a bounce exactly at T is not counted
    // (Theta(0) = 0).
    const double y = (p.g * T - v_i) / (2.0 * v_m) + 0.5;
    const int n = std::max(0, static_cast<int>(std::ceil(y)) - 1);
    return morse_index_sb(x_i, v_i, T, p) + 2 * n;
}

}  // namespace qbounce::classical
