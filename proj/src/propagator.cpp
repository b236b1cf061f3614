#include "qbounce/propagator.hpp"

#include "qbounce/errors.hpp"
#include "qbounce/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

namespace qbounce {
namespace {

// e^(i pi/4) / sqrt(2 pi hbar).
Complex sca_prefactor(const PhysicalParams& p)
{
    return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi * p.hbar), std::numbers::pi / 4.0);
}

// (-i)^m, exact for every integer m.
Complex maslov_phase(int m)
{
    switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

void check_axis(std::span<const double> axis, const char* name)
{
    if (axis.empty()) {
        throw std::invalid_argument(std::string(name) + ": empty axis");
    }
}

}  // namespace

ComplexGrid::ComplexGrid(std::vector<double> a1, std::vector<double> a2)
    : axis1(std::move(a1)), axis2(std::move(a2)), values(axis1.size() * axis2.size()),
      caustic(axis1.size() * axis2.size(), 0)
{
}

std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    if (count == 0) {
        throw std::invalid_argument("linspace: count must be positive");
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + step * static_cast<double>(i);
    }
    out.back() = hi;
    return out;
}

Complex sca_term(const ClassicalPath& path, const PhysicalParams& p)
{
    return std::sqrt(std::abs(path.vvd)) * std::polar(1.0, path.action / p.hbar) * maslov_phase(path.morse);
}

Complex sca_from_paths(const PathSet& paths, const PhysicalParams& p)
{
    Complex sum{0.0, 0.0};
    for (const auto& path : paths.paths) {
        if (path.caustic || !std::isfinite(path.vvd)) {
            throw CausticNodeError("sca_propagator: final point lies on a caustic");
        }
        sum += sca_term(path, p);
    }
    return sca_prefactor(p) * sum;
}

Complex sca_propagator(const Endpoints& e, const PhysicalParams& p, Model model)
{
    return sca_from_paths(classical::enumerate_paths(e, p, model), p);
}

double kvvd_envelope(const Endpoints& e, const PhysicalParams& p, Model model)
{
    double sum = 0.0;
    for (const auto& path : classical::enumerate_paths(e, p, model).paths) {
        if (path.caustic || !std::isfinite(path.vvd)) {
            throw CausticNodeError("kvvd_envelope: final point lies on a caustic");
        }
        sum += std::sqrt(std::abs(path.vvd));
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * p.hbar);
}

ComplexGrid sca_grid(double x_i, std::span<const double> T_list, std::span<const double> xf_list,
                     const PhysicalParams& p, Model model)
{
    check_axis(T_list, "sca_grid");
    check_axis(xf_list, "sca_grid");
    ComplexGrid grid({T_list.begin(), T_list.end()}, {xf_list.begin(), xf_list.end()});
    grid.model = model;
    grid.method = "sca";
    grid.x_i = x_i;
    grid.params = p;
    const Complex prefactor = sca_prefactor(p);
    parallel_for(grid.values.size(), [&](std::size_t idx) {
        const double T = T_list[idx / xf_list.size()];
        const double x_f = xf_list[idx % xf_list.size()];
        PathSet set;
        try {
            set = classical::enumerate_paths({x_i, x_f, T}, p, model);
        } catch (const DomainError&) {
            grid.values[idx] = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
            grid.caustic[idx] = 1;
            return;
        }
        Complex sum{0.0, 0.0};
        for (const auto& path : set.paths) {
            if (path.caustic) {
                grid.caustic[idx] = 1;
            }
            if (std::isfinite(path.vvd)) {
                sum += sca_term(path, p);
            }
        }
        grid.values[idx] = prefactor * sum;
    });
    return grid;
}

ComplexGrid ee_propagator(const EigenBasis& basis, double x_i, std::span<const double> xf_list,
                          std::span<const double> T_list)
{
    check_axis(T_list, "ee_propagator");
    check_axis(xf_list, "ee_propagator");
    const Eigen::Index nx = static_cast<Eigen::Index>(xf_list.size());
    const Eigen::Index nt = static_cast<Eigen::Index>(T_list.size());
    const Eigen::Index ns = static_cast<Eigen::Index>(basis.size());
    const double hbar = basis.params().hbar;
    const auto energies = basis.energies();

    // A(f, n) = phi_n(x_f) phi_n(x_i); phases C(n, k) = cos, S(n, k) = sin of E_n T_k / hbar.
    Eigen::MatrixXd A(nx, ns);
    Eigen::MatrixXd C(ns, nt);
    Eigen::MatrixXd S(ns, nt);
    parallel_for(static_cast<std::size_t>(ns), [&](std::size_t n) {
        const auto col = static_cast<Eigen::Index>(n);
        const double at_start = basis.phi(n, x_i);
        for (Eigen::Index f = 0; f < nx; ++f) {
            A(f, col) = basis.phi(n, xf_list[static_cast<std::size_t>(f)]) * at_start;
        }
        for (Eigen::Index k = 0; k < nt; ++k) {
            const double phase = energies[n] * T_list[static_cast<std::size_t>(k)] / hbar;
            C(col, k) = std::cos(phase);
            S(col, k) = std::sin(phase);
        }
    });
    const Eigen::MatrixXd re = A * C;
    const Eigen::MatrixXd im = A * S;

    ComplexGrid grid({T_list.begin(), T_list.end()}, {xf_list.begin(), xf_list.end()});
    grid.model = basis.model();
    grid.method = "ee";
    grid.x_i = x_i;
    grid.params = basis.params();
    grid.terms = basis.terms();
    for (Eigen::Index k = 0; k < nt; ++k) {
        for (Eigen::Index f = 0; f < nx; ++f) {
            grid.at(static_cast<std::size_t>(k), static_cast<std::size_t>(f)) = {re(f, k), -im(f, k)};
        }
    }
    return grid;
}

Complex goodman_subtract_sca(double x_f, double x_i, double T, const PhysicalParams& p)
{
    if (!(x_i > 0.0 && x_f > 0.0)) {
        throw DomainError("goodman_subtract: endpoints must be positive");
    }
    return sca_propagator({x_i, x_f, T}, p, Model::Symmetric) - sca_propagator({-x_i, x_f, T}, p, Model::Symmetric);
}

ComplexGrid goodman_subtract_ee(const EigenBasis& sb_basis, double x_i, std::span<const double> xf_list,
                                std::span<const double> T_list)
{
    if (sb_basis.model() != Model::Symmetric) {
        throw std::invalid_argument("goodman_subtract: needs a symmetric eigenbasis");
    }
    if (!(x_i > 0.0)) {
        throw DomainError("goodman_subtract: endpoints must be positive");
    }
    for (const double x_f : xf_list) {
        if (!(x_f > 0.0)) {
            throw DomainError("goodman_subtract: endpoints must be positive");
        }
    }
    ComplexGrid direct = ee_propagator(sb_basis, x_i, xf_list, T_list);
    const ComplexGrid image = ee_propagator(sb_basis, -x_i, xf_list, T_list);
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
        direct.values[i] -= image.values[i];
    }
    direct.method = "ee-goodman";
    return direct;
}

Complex linear_propagator(double x_f, double x_i, double T, const PhysicalParams& p)
{
    const double M = p.mass;
    const double g = p.g;
    const double dx = x_f - x_i;
    const double S0 = M * dx * dx / (2.0 * T) - M * g * T * (x_f + x_i) / 2.0 - M * g * g * T * T * T / 24.0;
    // sqrt(M / 2 pi i hbar T) on the principal branch.
    const Complex prefactor = std::polar(std::sqrt(M / (2.0 * std::numbers::pi * p.hbar * T)), -std::numbers::pi / 4.0);
    return prefactor * std::polar(1.0, S0 / p.hbar);
}

Complex hard_wall_reference(double x_f, double x_i, double T, const PhysicalParams& p)
{
    if (!(x_i > 0.0 && x_f > 0.0)) {
        throw DomainError("hard_wall_reference: endpoints must be positive");
    }
    return linear_propagator(x_f, x_i, T, p) - linear_propagator(x_f, -x_i, T, p);
}

}  // namespace qbounce
