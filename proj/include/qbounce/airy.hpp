#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qbounce::airy {

struct AiryValue {
    double ai;
    double ai_prime;
};

// Ai(x) and Ai'(x) for real x.
//
// Regimes: Maclaurin series (extended precision) on [-8, 3.5]; on (3.5, 9)
// a Taylor expansion of Ai'' = x Ai about tabulated nodes, the node table
// being marched inward from the large-x asymptotic series; asymptotic
// expansions beyond. Relative accuracy is better than 1e-10 away from
// zeros for |x| <= 100; far into the decaying tail the result underflows
// to zero.
AiryValue airy(double x);
double ai(double x);
double ai_prime(double x);

// First N zeros of Ai (lambda) and of Ai' (mu), both negative and
// descending: 0 > mu_1 > lambda_1 > mu_2 > lambda_2 > ...
class AiryZeroTable {
public:
    explicit AiryZeroTable(std::size_t count);

    std::size_t size() const { return lambda_.size(); }
    std::span<const double> lambda() const { return lambda_; }
    std::span<const double> mu() const { return mu_; }
    // 1-based, following the usual numbering of Airy zeros.
    double lambda(std::size_t n) const { return lambda_.at(n - 1); }
    double mu(std::size_t m) const { return mu_.at(m - 1); }
    // Ai'(lambda_n) and Ai(mu_m), needed for eigenfunction normalization.
    std::span<const double> ai_prime_at_lambda() const { return ai_prime_at_lambda_; }
    std::span<const double> ai_at_mu() const { return ai_at_mu_; }

private:
    std::vector<double> lambda_;
    std::vector<double> mu_;
    std::vector<double> ai_prime_at_lambda_;
    std::vector<double> ai_at_mu_;
};

AiryZeroTable airy_zeros(std::size_t count);

}  // namespace qbounce::airy
