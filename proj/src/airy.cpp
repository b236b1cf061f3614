#include "qbounce/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qbounce::airy {
namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kMinusAiPrime0 = 0.258819403792806798405183560189203963L;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

constexpr double kSeriesMin = -8.0;
constexpr double kSeriesMax = 3.5;
constexpr double kAsymptoticMin = 9.0;
constexpr double kNodeSpacing = 0.25;

constexpr int kAsymptoticTerms = 60;

struct AsymptoticCoefficients {
    std::array<double, kAsymptoticTerms> u{};
    std::array<double, kAsymptoticTerms> v{};
};

const AsymptoticCoefficients& coefficients()
{
    static const AsymptoticCoefficients table = [] {
        AsymptoticCoefficients c;
        c.u[0] = 1.0;
        c.v[0] = 1.0;
        for (int k = 1; k < kAsymptoticTerms; ++k) {
            const double kk = k;
            c.u[k] = c.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
            c.v[k] = -(6 * kk + 1) / (6 * kk - 1) * c.u[k];
        }
        return c;
    }();
    return table;
}

AiryValue maclaurin(double xd)
{
    const long double x = xd;
    const long double x3 = x * x * x;
    long double t = 1.0L, s = x, d = 0.0L, e = 1.0L;
    long double f = t, g = s, fp = 0.0L, gp = e;
    for (int k = 1; k < 400; ++k) {
        const long double kk = k;
        t *= x3 / ((3 * kk - 1) * (3 * kk));
        s *= x3 / ((3 * kk) * (3 * kk + 1));
        d = (k == 1) ? x * x / 2.0L : d * x3 / ((3 * kk - 3) * (3 * kk - 1));
        e *= x3 / ((3 * kk) * (3 * kk - 2));
        f += t;
        g += s;
        fp += d;
        gp += e;
        const long double biggest = std::max({std::abs(t), std::abs(s), std::abs(d), std::abs(e)});
        const long double sums = std::max({std::abs(f), std::abs(g), std::abs(fp), std::abs(gp)});
        if (k > 2 && biggest < 1e-22L * sums) {
            break;
        }
    }
    return {static_cast<double>(kAi0 * f - kMinusAiPrime0 * g),
            static_cast<double>(kAi0 * fp - kMinusAiPrime0 * gp)};
}

// Sum of (-1)^k c_k / zeta^k stopping at the smallest term.
double alternating_series(const std::array<double, kAsymptoticTerms>& c, double zeta)
{
    double sum = 0.0;
    double power = 1.0;
    double previous = INFINITY;
    for (int k = 0; k < kAsymptoticTerms; ++k) {
        const double term = c[k] * power;
        if (std::abs(term) > previous) {
            break;
        }
        sum += (k % 2 == 0) ? term : -term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
        previous = std::abs(term);
        power /= zeta;
    }
    return sum;
}

AiryValue asymptotic_positive(double x)
{
    const auto& c = coefficients();
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double quarter = std::sqrt(std::sqrt(x));
    const double common = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    return {common / quarter * alternating_series(c.u, zeta),
            -common * quarter * alternating_series(c.v, zeta)};
}

AiryValue asymptotic_negative(double x)
{
    const auto& c = coefficients();
    const double z = -x;
    const long double zl = z;
    const long double zeta_l = 2.0L / 3.0L * zl * std::sqrt(zl);
    const double zeta = static_cast<double>(zeta_l);
    const long double theta = zeta_l - kPiL / 4.0L;
    const double cos_t = static_cast<double>(std::cos(theta));
    const double sin_t = static_cast<double>(std::sin(theta));

    // Even and odd parts of the series in 1/zeta.
    double pu = 0.0, qu = 0.0, pv = 0.0, qv = 0.0;
    double power = 1.0;
    double previous = INFINITY;
    for (int k = 0; k < kAsymptoticTerms; ++k) {
        const double tu = c.u[k] * power;
        const double tv = c.v[k] * power;
        const double size = std::max(std::abs(tu), std::abs(tv));
        if (size > previous) {
            break;
        }
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            pu += sign * tu;
            pv += sign * tv;
        } else {
            qu += sign * tu;
            qv += sign * tv;
        }
        if (size < 1e-17) {
            break;
        }
        previous = size;
        power /= zeta;
    }
    const double quarter = std::sqrt(std::sqrt(z));
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    return {inv_sqrt_pi / quarter * (cos_t * pu + sin_t * qu),
            inv_sqrt_pi * quarter * (sin_t * pv - cos_t * qv)};
}

struct TaylorValue {
    long double y;
    long double yp;
};

// Taylor expansion of a solution of y'' = x y about x0.
TaylorValue taylor_step(long double x0, long double y0, long double yp0, long double h)
{
    long double c_prev = 0.0L;  // c_{k-1}
    long double c_k = y0;
    long double c_next = yp0;
    long double y = y0 + yp0 * h;
    long double yp = yp0;
    long double hk = h;  // h^(k+1) for k = 0
    for (int k = 0; k < 60; ++k) {
        const long double c2 = (x0 * c_k + c_prev) / ((k + 2.0L) * (k + 1.0L));
        const long double term = c2 * hk * h;
        y += term;
        yp += (k + 2.0L) * c2 * hk;
        if (std::abs(term) < 1e-24L * std::abs(y) && k > 4) {
            break;
        }
        c_prev = c_k;
        c_k = c_next;
        c_next = c2;
        hk *= h;
    }
    return {y, yp};
}

constexpr int kNodeCount = static_cast<int>((kAsymptoticMin - kSeriesMax) / kNodeSpacing) + 1;

struct NodeTable {
    std::array<long double, kNodeCount> y{};
    std::array<long double, kNodeCount> yp{};
};

// Node values on [kSeriesMax, kAsymptoticMin], marched inward from the
// asymptotic anchor. Marching toward smaller x is the stable direction for
// the recessive solution Ai.
const NodeTable& nodes()
{
    static const NodeTable table = [] {
        NodeTable t;
        const AiryValue anchor = asymptotic_positive(kAsymptoticMin);
        long double y = anchor.ai;
        long double yp = anchor.ai_prime;
        t.y[kNodeCount - 1] = y;
        t.yp[kNodeCount - 1] = yp;
        for (int i = kNodeCount - 1; i > 0; --i) {
            const long double x0 = kSeriesMax + i * static_cast<long double>(kNodeSpacing);
            constexpr int substeps = 4;
            const long double h = -static_cast<long double>(kNodeSpacing) / substeps;
            for (int s = 0; s < substeps; ++s) {
                const auto next = taylor_step(x0 + s * h, y, yp, h);
                y = next.y;
                yp = next.yp;
            }
            t.y[i - 1] = y;
            t.yp[i - 1] = yp;
        }
        return t;
    }();
    return table;
}

AiryValue tabulated(double x)
{
    const auto& t = nodes();
    const int i = std::clamp(static_cast<int>(std::lround((x - kSeriesMax) / kNodeSpacing)), 0, kNodeCount - 1);
    const long double x0 = kSeriesMax + i * static_cast<long double>(kNodeSpacing);
    const auto value = taylor_step(x0, t.y[i], t.yp[i], static_cast<long double>(x) - x0);
    return {static_cast<double>(value.y), static_cast<double>(value.yp)};
}

}  // namespace

AiryValue airy(double x)
{
    if (std::isnan(x)) {
        return {x, x};
    }
    if (x < kSeriesMin) {
        return asymptotic_negative(x);
    }
    if (x <= kSeriesMax) {
        return maclaurin(x);
    }
    if (x < kAsymptoticMin) {
        return tabulated(x);
    }
    return asymptotic_positive(x);
}

double ai(double x) { return airy(x).ai; }

double ai_prime(double x) { return airy(x).ai_prime; }

AiryZeroTable::AiryZeroTable(std::size_t count)
{
    lambda_.reserve(count);
    mu_.reserve(count);
    ai_prime_at_lambda_.reserve(count);
    ai_at_mu_.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        const double nn = static_cast<double>(n);

        const double t_lambda = 3.0 * std::numbers::pi * (4.0 * nn - 1.0) / 8.0;
        const double tl2 = 1.0 / (t_lambda * t_lambda);
        double x = -std::cbrt(t_lambda * t_lambda) * (1.0 + 5.0 / 48.0 * tl2 - 5.0 / 36.0 * tl2 * tl2);
        AiryValue v = airy(x);
        for (int iter = 0; iter < 40; ++iter) {
            const double step = v.ai / v.ai_prime;
            x -= step;
            v = airy(x);
            if (std::abs(step) <= 4e-16 * std::abs(x)) {
                break;
            }
        }
        lambda_.push_back(x);
        ai_prime_at_lambda_.push_back(v.ai_prime);

        const double t_mu = 3.0 * std::numbers::pi * (4.0 * nn - 3.0) / 8.0;
        const double tm2 = 1.0 / (t_mu * t_mu);
        double y = -std::cbrt(t_mu * t_mu) * (1.0 - 7.0 / 48.0 * tm2 + 35.0 / 288.0 * tm2 * tm2);
        AiryValue w = airy(y);
        for (int iter = 0; iter < 40; ++iter) {
            // Ai'' = x Ai.
            const double step = w.ai_prime / (y * w.ai);
            y -= step;
            w = airy(y);
            if (std::abs(step) <= 4e-16 * std::abs(y)) {
                break;
            }
        }
        mu_.push_back(y);
        ai_at_mu_.push_back(w.ai);
    }
}

AiryZeroTable airy_zeros(std::size_t count) { return AiryZeroTable(count); }

}  // namespace qbounce::airy
