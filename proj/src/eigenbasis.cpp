#include "qbounce/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace qbounce {

EigenBasis::EigenBasis(Model model, std::size_t terms, const PhysicalParams& p)
    : model_(model), terms_(terms), params_(p), units_(NaturalUnits::from(p)), zeros_(terms)
{
    if (terms == 0) {
        throw std::invalid_argument("EigenBasis: need at least one term");
    }
    p.validate();
    const double gamma = units_.gamma;
    const double scale = gamma / units_.length;
    const auto lambda = zeros_.lambda();
    const auto mu = zeros_.mu();
    const auto d_lambda = zeros_.ai_prime_at_lambda();
    const auto a_mu = zeros_.ai_at_mu();

    const std::size_t count = model == Model::OneSided ? terms : 2 * terms;
    energies_.reserve(count);
    shifts_.reserve(count);
    norms_.reserve(count);
    parity_.reserve(count);
    for (std::size_t n = 0; n < terms; ++n) {
        if (model == Model::OneSided) {
            energies_.push_back(-lambda[n] * units_.energy / gamma);
            shifts_.push_back(lambda[n]);
            norms_.push_back(std::sqrt(scale) / d_lambda[n]);
            parity_.push_back(-1);
            continue;
        }
        energies_.push_back(-mu[n] * units_.energy / gamma);
        shifts_.push_back(mu[n]);
        norms_.push_back(std::sqrt(scale / (2.0 * -mu[n])) / a_mu[n]);
        parity_.push_back(1);

        energies_.push_back(-lambda[n] * units_.energy / gamma);
        shifts_.push_back(lambda[n]);
        norms_.push_back(std::sqrt(scale / 2.0) / d_lambda[n]);
        parity_.push_back(-1);
    }
}

double EigenBasis::phi(std::size_t state, double x) const
{
    const double gamma_over_x0 = units_.gamma / units_.length;
    if (model_ == Model::OneSided) {
        if (x < 0.0) {
            return 0.0;
        }
        return norms_[state] * airy::ai(gamma_over_x0 * x + shifts_[state]);
    }
    const double value = norms_[state] * airy::ai(gamma_over_x0 * std::abs(x) + shifts_[state]);
    if (parity_[state] > 0) {
        return value;
    }
    return x > 0.0 ? value : (x < 0.0 ? -value : 0.0);
}

EigenBasis build_eigenbasis(Model model, std::size_t terms, const PhysicalParams& p)
{
    return EigenBasis(model, terms, p);
}

}  // namespace qbounce
