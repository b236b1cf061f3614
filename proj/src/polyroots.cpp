#include "qbounce/polyroots.hpp"

#include "qbounce/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace qbounce::poly {
namespace {

using cplx = std::complex<double>;

// Candidates with |Im z| below this (relative) are treated as perturbed
// real roots; the residual test decides whether they survive.
constexpr double kNearRealTolerance = 1e-6;
constexpr double kMultipleRootWindow = 1e-6;

std::array<cplx, 2> quadratic_roots(double a, double b, double c)
{
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) {
            return {cplx{0.0}, cplx{0.0}};
        }
        return {cplx{q / a}, cplx{c / q}};
    }
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
    return {cplx{re, -im}, cplx{re, im}};
}

// Monic cubic x^3 + a x^2 + b x + c.
std::array<cplx, 3> cubic_roots(double a, double b, double c)
{
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    const double shift = a / 3.0;
    const double q3 = q * q * q;
    if (r * r < q3) {
        const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
        const double scale = -2.0 * std::sqrt(q);
        constexpr double two_pi = 2.0 * std::numbers::pi;
        return {cplx{scale * std::cos(theta / 3.0) - shift},
                cplx{scale * std::cos((theta + two_pi) / 3.0) - shift},
                cplx{scale * std::cos((theta - two_pi) / 3.0) - shift}};
    }
    const double big_a = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
    const double big_b = big_a == 0.0 ? 0.0 : q / big_a;
    const double re = -0.5 * (big_a + big_b) - shift;
    const double im = 0.5 * std::sqrt(3.0) * (big_a - big_b);
    return {cplx{big_a + big_b - shift}, cplx{re, im}, cplx{re, -im}};
}

double largest_real_cubic_root(double a, double b, double c)
{
    const auto roots = cubic_roots(a, b, c);
    double best = roots[0].real();
    for (const auto& z : roots) {
        if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) {
            best = std::max(best, z.real());
        }
    }
    return best;
}

// Monic quartic x^4 + a x^3 + b x^2 + c x + d (Ferrari).
std::array<cplx, 4> quartic_roots(double a, double b, double c, double d)
{
    const double a2 = a * a;
    const double p = b - 3.0 * a2 / 8.0;
    const double q = c - a * b / 2.0 + a2 * a / 8.0;
    const double r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    const double shift = a / 4.0;

    const double m = largest_real_cubic_root(p, p * p / 4.0 - r, -q * q / 8.0);
    std::array<cplx, 4> out{};
    if (m <= 0.0) {
        // Biquadratic: y^4 + p y^2 + r.
        const auto z = quadratic_roots(1.0, p, r);
        for (int i = 0; i < 2; ++i) {
            const cplx y = std::sqrt(z[i]);
            out[2 * i] = y - shift;
            out[2 * i + 1] = -y - shift;
        }
        return out;
    }
    const double s = std::sqrt(2.0 * m);
    const auto lo = quadratic_roots(1.0, -s, p / 2.0 + m + q / (2.0 * s));
    const auto hi = quadratic_roots(1.0, s, p / 2.0 + m - q / (2.0 * s));
    out = {lo[0] - shift, lo[1] - shift, hi[0] - shift, hi[1] - shift};
    return out;
}

long double evaluate_ld(std::span<const double> c, long double x, long double& deriv)
{
    long double value = 0.0L;
    deriv = 0.0L;
    for (const double coeff : c) {
        deriv = deriv * x + value;
        value = value * x + static_cast<long double>(coeff);
    }
    return value;
}

// Damped Newton: a step is accepted only if it does not increase |p|.
double polish(std::span<const double> c, double start)
{
    long double x = start;
    long double deriv = 0.0L;
    long double value = evaluate_ld(c, x, deriv);
    for (int iter = 0; iter < 60 && value != 0.0L; ++iter) {
        if (deriv == 0.0L) {
            break;
        }
        long double step = value / deriv;
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving) {
            long double trial_deriv = 0.0L;
            const long double trial = x - step;
            const long double trial_value = evaluate_ld(c, trial, trial_deriv);
            if (std::abs(trial_value) <= std::abs(value)) {
                improved = trial != x;
                x = trial;
                value = trial_value;
                deriv = trial_deriv;
                break;
            }
            step *= 0.5L;
        }
        if (!improved || std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(x))) {
            break;
        }
    }
    return static_cast<double>(x);
}

// Critical point of p between lo and hi, by Newton on p'.
double critical_point(std::span<const double> poly, double lo, double hi)
{
    long double x = 0.5L * (static_cast<long double>(lo) + hi);
    for (int iter = 0; iter < 60; ++iter) {
        long double d1 = 0.0L, d2 = 0.0L;
        const int degree = static_cast<int>(poly.size()) - 1;
        for (int i = 0; i < degree; ++i) {
            const long double c = static_cast<long double>(poly[i]) * (degree - i);
            d2 = d2 * x + d1;
            d1 = d1 * x + c;
        }
        if (d2 == 0.0L) {
            break;
        }
        const long double next = std::clamp(x - d1 / d2, static_cast<long double>(lo), static_cast<long double>(hi));
        if (next == x) {
            break;
        }
        x = next;
    }
    return static_cast<double>(x);
}

}  // namespace

double evaluate(std::span<const double> coeffs, double x)
{
    double value = 0.0;
    for (const double c : coeffs) {
        value = value * x + c;
    }
    return value;
}

int effective_degree(std::span<const double> coeffs)
{
    double scale = 0.0;
    for (const double c : coeffs) {
        scale = std::max(scale, std::abs(c));
    }
    std::size_t lead = 0;
    while (lead < coeffs.size() && std::abs(coeffs[lead]) < kLeadingZeroThreshold * scale) {
        ++lead;
    }
    return static_cast<int>(coeffs.size() - lead) - 1;
}

double residual_tolerance(std::span<const double> coeffs, double root)
{
    double scale = 0.0;
    for (const double c : coeffs) {
        scale = std::max(scale, std::abs(c));
    }
    const int degree = std::max(effective_degree(coeffs), 0);
    return 1e-12 * scale * std::pow(std::max(1.0, std::abs(root)), degree);
}

RealRootSet real_roots(std::span<const double> coeffs)
{
    double scale = 0.0;
    for (const double c : coeffs) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("real_roots: non-finite coefficient");
        }
        scale = std::max(scale, std::abs(c));
    }
    if (coeffs.empty() || coeffs.size() > 5) {
        throw std::invalid_argument("real_roots: expected 1 to 5 coefficients");
    }
    if (scale == 0.0) {
        throw DegeneratePolynomialError("real_roots: all coefficients are zero");
    }

    const int degree = effective_degree(coeffs);
    const auto poly = coeffs.subspan(coeffs.size() - static_cast<std::size_t>(degree) - 1);
    if (degree <= 0) {
        return {};
    }

    const double lead = poly[0];
    std::vector<cplx> candidates;
    switch (degree) {
    case 1:
        candidates.emplace_back(-poly[1] / lead);
        break;
    case 2:
        for (const auto& z : quadratic_roots(lead, poly[1], poly[2])) {
            candidates.push_back(z);
        }
        break;
    case 3:
        for (const auto& z : cubic_roots(poly[1] / lead, poly[2] / lead, poly[3] / lead)) {
            candidates.push_back(z);
        }
        break;
    default:
        for (const auto& z :
             quartic_roots(poly[1] / lead, poly[2] / lead, poly[3] / lead, poly[4] / lead)) {
            candidates.push_back(z);
        }
        break;
    }

    RealRootSet roots;
    for (const auto& z : candidates) {
        const double im = std::abs(z.imag());
        if (im > kNearRealTolerance * std::max(1.0, std::abs(z.real()))) {
            continue;
        }
        // A near-real pair may be a split real pair; start the two copies
        // on either side so each can settle on its own root.
        const double start = z.imag() > 0.0 ? z.real() + im : z.real() - im;
        const double r = polish(poly, start);
        if (std::abs(evaluate(poly, r)) <= residual_tolerance(poly, r)) {
            roots.push_back(r);
        }
    }

    std::sort(roots.begin(), roots.end());
    // Collapse split copies of a multiple root: two nearby roots whose
    // separating critical point is itself a root within tolerance.
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double lo = roots[i];
        const double hi = roots[i + 1];
        if (hi - lo >= kMultipleRootWindow * std::max(1.0, std::abs(hi))) {
            continue;
        }
        const double c = critical_point(poly, lo, hi);
        if (std::abs(evaluate(poly, c)) <= residual_tolerance(poly, c)) {
            roots[i] = c;
            roots[i + 1] = c;
        }
    }
    RealRootSet merged;
    for (const double r : roots) {
        if (!merged.empty() && std::abs(r - merged.back()) < kMergeSeparation * std::max(1.0, std::abs(r))) {
            continue;
        }
        merged.push_back(r);
    }
    return merged;
}

}  // namespace qbounce::poly
