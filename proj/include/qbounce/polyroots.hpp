#pragma once

#include <span>
#include <vector>

namespace qbounce::poly {

// Coefficients, highest degree first. Quadratic through quartic (3 to 5
// entries); leading entries may be zero.
using PolyCoeffs = std::vector<double>;

// Sorted, multiplicity-collapsed real roots.
using RealRootSet = std::vector<double>;

// Relative size below which a leading coefficient is dropped.
inline constexpr double kLeadingZeroThreshold = 1e-12;
// Roots closer than this are merged into one.
inline constexpr double kMergeSeparation = 1e-9;

double evaluate(std::span<const double> coeffs, double x);

// Degree after stripping leading coefficients below the relative threshold.
int effective_degree(std::span<const double> coeffs);

// Residual bound a polished root must meet:
// 1e-12 * max|c| * max(1, |r|)^degree.
double residual_tolerance(std::span<const double> coeffs, double root);

// All real roots of a polynomial of degree <= 4. Closed-form
// Cardano/Ferrari candidates are Newton-polished against the original
// coefficients. Throws DegeneratePolynomialError for an all-zero vector.
RealRootSet real_roots(std::span<const double> coeffs);

}  // namespace qbounce::poly
