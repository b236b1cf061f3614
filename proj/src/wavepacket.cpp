#include "qbounce/propagator.hpp"

#include "qbounce/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbounce {
namespace {

// Coefficients below this fraction of the largest one are left out of the
// reconstruction; their total contribution is below double rounding.
constexpr double kNegligibleCoefficient = 1e-15;

}  // namespace

Complex WavePacket::value(double x, const PhysicalParams& p) const
{
    const double d = x - x_i;
    const double amplitude = std::pow(2.0 * std::numbers::pi, -0.25) / std::sqrt(sigma_x)
                             * std::exp(-d * d / (4.0 * sigma_x * sigma_x));
    if (p_i == 0.0) {
        return {amplitude, 0.0};
    }
    return std::polar(amplitude, p_i * x / p.hbar);
}

WavePacketEvolution wavepacket_evolve(const WavePacket& packet, const EigenBasis& basis,
                                      std::span<const double> x_grid, std::span<const double> t_grid)
{
    if (!(packet.sigma_x > 0.0)) {
        throw std::invalid_argument("wavepacket: sigma must be positive");
    }
    if (x_grid.empty() || t_grid.empty()) {
        throw std::invalid_argument("wavepacket: empty grid");
    }
    const PhysicalParams& p = basis.params();
    const bool one_sided = basis.model() == Model::OneSided;
    const double sigma = packet.sigma_x;

    // Quadrature window x_i +- 8 sigma, inside the domain. The spacing also
    // resolves the fastest eigenfunction oscillation in the window so that
    // high states are not aliased onto the packet.
    const double lo = one_sided ? std::max(0.0, packet.x_i - 8.0 * sigma) : packet.x_i - 8.0 * sigma;
    const double hi = packet.x_i + 8.0 * sigma;
    const double lowest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    const double e_max = *std::max_element(basis.energies().begin(), basis.energies().end());
    const double kinetic = std::max(0.0, e_max - p.mass * p.g * lowest);
    const double k_max = std::sqrt(2.0 * p.mass * kinetic) / p.hbar + std::abs(packet.p_i) / p.hbar;
    const double h = std::min(sigma / 20.0, 2.0 * std::numbers::pi / (k_max + 8.0 / sigma));
    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    const std::vector<double> nodes = linspace(lo, hi, steps + 1);
    const double dx = (hi - lo) / static_cast<double>(steps);

    std::vector<Complex> weighted(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double w = (j == 0 || j + 1 == nodes.size()) ? 0.5 * dx : dx;
        weighted[j] = w * packet.value(nodes[j], p);
    }

    WavePacketEvolution out;
    out.coefficients.assign(basis.size(), Complex{});
    parallel_for(basis.size(), [&](std::size_t n) {
        Complex sum{};
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            sum += basis.phi(n, nodes[j]) * weighted[j];
        }
        out.coefficients[n] = sum;
    });

    double largest = 0.0;
    for (const auto& c : out.coefficients) {
        out.captured_probability += std::norm(c);
        largest = std::max(largest, std::abs(c));
    }
    out.truncation_warning = out.captured_probability < 0.999;

    std::vector<std::size_t> active;
    for (std::size_t n = 0; n < basis.size(); ++n) {
        if (std::abs(out.coefficients[n]) > kNegligibleCoefficient * largest) {
            active.push_back(n);
        }
    }

    const auto nx = static_cast<Eigen::Index>(x_grid.size());
    const auto nt = static_cast<Eigen::Index>(t_grid.size());
    const auto na = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd phi(nx, na);
    Eigen::MatrixXd cr(na, nt);
    Eigen::MatrixXd ci(na, nt);
    const auto energies = basis.energies();
    parallel_for(active.size(), [&](std::size_t a) {
        const std::size_t n = active[a];
        const auto col = static_cast<Eigen::Index>(a);
        for (Eigen::Index i = 0; i < nx; ++i) {
            phi(i, col) = basis.phi(n, x_grid[static_cast<std::size_t>(i)]);
        }
        for (Eigen::Index k = 0; k < nt; ++k) {
            const Complex c = std::polar(1.0, -energies[n] * t_grid[static_cast<std::size_t>(k)] / p.hbar)
                              * out.coefficients[n];
            cr(col, k) = c.real();
            ci(col, k) = c.imag();
        }
    });
    const Eigen::MatrixXd re = phi * cr;
    const Eigen::MatrixXd im = phi * ci;

    out.psi = ComplexGrid({t_grid.begin(), t_grid.end()}, {x_grid.begin(), x_grid.end()});
    out.psi.model = basis.model();
    out.psi.method = "ee";
    out.psi.x_i = packet.x_i;
    out.psi.params = p;
    out.psi.terms = basis.terms();
    for (Eigen::Index k = 0; k < nt; ++k) {
        for (Eigen::Index i = 0; i < nx; ++i) {
            out.psi.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = {re(i, k), im(i, k)};
        }
    }
    return out;
}

}  // namespace qbounce
