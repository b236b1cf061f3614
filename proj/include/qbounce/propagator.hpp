#pragma once

#include "qbounce/airy.hpp"
#include "qbounce/classical.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qbounce {

using Complex = std::complex<double>;

// Values over a (T, x_f) or (t, x) raster, row-major with axis1 outer.
struct ComplexGrid {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<Complex> values;
    // Nonzero where the node lies within the caustic threshold of a focus.
    std::vector<std::uint8_t> caustic;

    Model model = Model::OneSided;
    std::string method;
    double x_i = 0.0;
    PhysicalParams params{};
    std::size_t terms = 0;

    ComplexGrid() = default;
    ComplexGrid(std::vector<double> a1, std::vector<double> a2);

    std::size_t rows() const { return axis1.size(); }
    std::size_t cols() const { return axis2.size(); }
    Complex& at(std::size_t i, std::size_t j) { return values[i * axis2.size() + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return values[i * axis2.size() + j]; }
};

// Energy eigenstates of the one-sided or symmetric bouncer. The one-sided
// basis holds N states (Airy zeros lambda_n). The symmetric basis holds N
// even states (zeros mu_m of Ai') and N odd states (zeros lambda_m),
// interleaved in order of energy, so that its odd half matches the
// one-sided basis of the same N term by term.
class EigenBasis {
public:
    EigenBasis(Model model, std::size_t terms, const PhysicalParams& p);

    Model model() const { return model_; }
    // N as requested; size() is N for the one-sided and 2N for the symmetric basis.
    std::size_t terms() const { return terms_; }
    std::size_t size() const { return energies_.size(); }
    const PhysicalParams& params() const { return params_; }
    const NaturalUnits& units() const { return units_; }
    const airy::AiryZeroTable& zeros() const { return zeros_; }

    std::span<const double> energies() const { return energies_; }
    // +1 for even, -1 for odd states (all -1 in the one-sided basis).
    std::span<const int> parity() const { return parity_; }

    // Eigenfunction `state` (0-based) at x.
    double phi(std::size_t state, double x) const;

private:
    Model model_;
    std::size_t terms_;
    PhysicalParams params_;
    NaturalUnits units_;
    airy::AiryZeroTable zeros_;
    std::vector<double> energies_;
    std::vector<double> shifts_;  // Airy argument offset (lambda or mu)
    std::vector<double> norms_;
    std::vector<int> parity_;
};

EigenBasis build_eigenbasis(Model model, std::size_t terms, const PhysicalParams& p);

// Contribution sqrt(|D|) exp i(S/hbar - pi m/2) of one path, without the
// common factor e^(i pi/4)/sqrt(2 pi hbar).
Complex sca_term(const ClassicalPath& path, const PhysicalParams& p);

// Semiclassical path sum. Throws CausticNodeError when any path's final
// point lies within the caustic threshold of a focus.
Complex sca_propagator(const Endpoints& e, const PhysicalParams& p, Model model);

// Same sum over an already enumerated path set.
Complex sca_from_paths(const PathSet& paths, const PhysicalParams& p);

// sqrt(1/2 pi hbar) sum sqrt(|D|).
double kvvd_envelope(const Endpoints& e, const PhysicalParams& p, Model model);

// Semiclassical grid over T_list x xf_list. Caustic nodes are computed
// anyway and flagged; symmetric nodes at x_f = 0 are flagged and set to NaN.
ComplexGrid sca_grid(double x_i, std::span<const double> T_list, std::span<const double> xf_list,
                     const PhysicalParams& p, Model model);

// Eigenfunction sum over T_list x xf_list, evaluated as a real matrix
// product of the eigenfunction table with cos/sin phase tables.
ComplexGrid ee_propagator(const EigenBasis& basis, double x_i, std::span<const double> xf_list,
                          std::span<const double> T_list);

// K_s(x_f, x_i, T) - K_s(x_f, -x_i, T) from the symmetric path sum.
Complex goodman_subtract_sca(double x_f, double x_i, double T, const PhysicalParams& p);

// The same difference from a symmetric eigenbasis, over a grid.
ComplexGrid goodman_subtract_ee(const EigenBasis& sb_basis, double x_i, std::span<const double> xf_list,
                                std::span<const double> T_list);

// Propagator of the unconstrained linear potential V = M g x.
Complex linear_propagator(double x_f, double x_i, double T, const PhysicalParams& p);

// Image-subtracted hard-wall propagator K_g(x_f, x_i, T) - K_g(x_f, -x_i, T).
Complex hard_wall_reference(double x_f, double x_i, double T, const PhysicalParams& p);

struct WavePacket {
    double x_i = 0.0;
    double sigma_x = 1.0;
    double p_i = 0.0;

    double sigma_p(const PhysicalParams& p) const { return p.hbar / (2.0 * sigma_x); }
    // (2 pi)^(-1/4) sigma^(-1/2) exp(-(x - x_i)^2 / 4 sigma^2) exp(i p_i x / hbar).
    Complex value(double x, const PhysicalParams& p) const;
};

struct WavePacketEvolution {
    ComplexGrid psi;               // axis1 = t, axis2 = x
    std::vector<Complex> coefficients;  // c_n(0)
    double captured_probability = 0.0;  // sum |c_n|^2
    bool truncation_warning = false;    // captured_probability < 0.999
};

// Projects the packet onto the basis by trapezoid quadrature and evolves
// the coefficients with their phases e^(-i E_n t / hbar).
WavePacketEvolution wavepacket_evolve(const WavePacket& packet, const EigenBasis& basis,
                                      std::span<const double> x_grid, std::span<const double> t_grid);

// Uniformly spaced values from lo to hi inclusive (count >= 1).
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace qbounce
