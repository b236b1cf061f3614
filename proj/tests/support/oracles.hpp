#pragma once

// Reference computations that share no code with the library: Airy values
// by Taylor marching of Ai'' = x Ai in long double, root brackets by
// bisection, the quartic discriminant from its coefficients, Simpson
// quadrature, and the half-line free propagator as a rotated Fourier
// integral.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle_support {

// Ai(0) = 3^(-2/3) / Gamma(2/3), Ai'(0) = -3^(-1/3) / Gamma(1/3).
inline constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
inline constexpr long double kAiPrime0 = -0.258819403792806798405183560189203963L;

struct AiryPair {
    long double value;
    long double slope;
};

// Integrates y'' = x y from x = 0 to `x` with Taylor steps of order 40.
inline AiryPair airy_by_taylor(double x, double step = 0.05)
{
    long double at = 0.0L;
    long double y = kAi0;
    long double dy = kAiPrime0;
    const int steps = static_cast<int>(std::ceil(std::abs(x) / step));
    const long double h = steps ? (static_cast<long double>(x) / steps) : 0.0L;
    constexpr int order = 40;
    for (int s = 0; s < steps; ++s) {
        // Coefficients of y about `at`: c[k+2] = (at c[k] + c[k-1]) / ((k+2)(k+1)).
        long double c[order + 3] = {};
        c[0] = y;
        c[1] = dy;
        c[2] = at * c[0] / 2.0L;
        for (int k = 1; k + 2 <= order + 2; ++k) {
            c[k + 2] = (at * c[k] + c[k - 1]) / static_cast<long double>((k + 2) * (k + 1));
        }
        long double ny = 0.0L;
        long double ndy = 0.0L;
        long double power = 1.0L;
        for (int k = 0; k <= order + 2; ++k) {
            ny += c[k] * power;
            if (k + 1 <= order + 2) {
                ndy += static_cast<long double>(k + 1) * c[k + 1] * power;
            }
            power *= h;
        }
        y = ny;
        dy = ndy;
        at += h;
    }
    return {y, dy};
}

// Root of f in [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200)
{
    double flo = f(lo);
    if (flo * f(hi) > 0.0) {
        throw std::invalid_argument("bisect: no sign change");
    }
    for (int i = 0; i < iterations && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All sign changes of f on [lo, hi] over `samples` intervals, each refined
// by bisection. Scans from hi down to lo so roots come out descending.
inline std::vector<double> scan_roots_descending(const std::function<double(double)>& f, double lo, double hi,
                                                 int samples)
{
    std::vector<double> roots;
    const double dx = (hi - lo) / samples;
    double right = hi;
    double f_right = f(right);
    for (int i = 1; i <= samples; ++i) {
        const double left = hi - i * dx;
        const double f_left = f(left);
        if (f_left == 0.0) {
            roots.push_back(left);
        } else if ((f_left < 0.0) != (f_right < 0.0) && f_right != 0.0) {
            roots.push_back(bisect(f, left, right));
        }
        right = left;
        f_right = f_left;
    }
    return roots;
}

// Discriminant of a x^4 + b x^3 + c x^2 + d x + e from the textbook
// coefficient formula.
inline long double quartic_discriminant(long double a, long double b, long double c, long double d, long double e)
{
    return 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e
           + 144 * a * a * c * d * d * e - 27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e
           - 6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e + 18 * a * b * c * d * d * d
           + 16 * a * c * c * c * c * e - 4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e
           + 18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e
           + b * b * c * c * d * d;
}

// Sum of the magnitudes of the products in the formula above, the natural
// scale for judging a discriminant residual.
inline long double quartic_discriminant_scale(long double a, long double b, long double c, long double d,
                                              long double e)
{
    using std::abs;
    return abs(256 * a * a * a * e * e * e) + abs(192 * a * a * b * d * e * e) + abs(128 * a * a * c * c * e * e)
           + abs(144 * a * a * c * d * d * e) + abs(27 * a * a * d * d * d * d) + abs(144 * a * b * b * c * e * e)
           + abs(6 * a * b * b * d * d * e) + abs(80 * a * b * c * c * d * e) + abs(18 * a * b * c * d * d * d)
           + abs(16 * a * c * c * c * c * e) + abs(4 * a * c * c * c * d * d) + abs(27 * b * b * b * b * e * e)
           + abs(18 * b * b * b * c * d * e) + abs(4 * b * b * b * d * d * d) + abs(4 * b * b * c * c * c * e)
           + abs(b * b * c * c * d * d);
}

template <class F>
auto simpson(F f, double lo, double hi, int intervals)
{
    if (intervals % 2) {
        ++intervals;
    }
    const double h = (hi - lo) / intervals;
    auto sum = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    }
    return sum * (h / 3.0);
}

// Free propagator on the half line x > 0 with a hard wall at 0,
// (2/pi) Int_0^inf sin(k x_f) sin(k x_i) exp(-i hbar k^2 T / 2M) dk, along
// the contour k = s e^(-i pi/4), where the Gaussian factor decays.
inline std::complex<double> half_line_free_propagator(double x_f, double x_i, double T, double mass = 1.0,
                                                      double hbar = 1.0)
{
    using C = std::complex<double>;
    const C rot = std::polar(1.0, -std::numbers::pi / 4.0);
    const double a = hbar * T / (2.0 * mass);
    const double growth = (x_f + x_i) / std::sqrt(2.0);
    // Upper limit where exp(-a s^2 + growth s) is below 1e-20 of its peak.
    const double s_peak = growth / (2.0 * a);
    const double upper = s_peak + std::sqrt((growth * s_peak + 46.0) / a) + 1.0;
    auto integrand = [&](double s) {
        const C k = s * rot;
        return std::sin(k * x_f) * std::sin(k * x_i) * std::exp(-a * s * s);
    };
    return (2.0 / std::numbers::pi) * rot * simpson(integrand, 0.0, upper, 200000);
}

}  // namespace oracle_support
