#pragma once

#include "qbounce/classical.hpp"

#include <cstddef>
#include <utility>
#include <vector>

// Brute-force checks of the closed forms in classical. Each oracle avoids
// the formula it verifies: shooting uses only bounce kinematics, the action
// quadrature only the trajectory and the potential, the focus count only the
// linearized equation of motion.
namespace qbounce::oracle {

inline constexpr std::size_t kDefaultSamples = 4096;

struct ShootingResult {
    std::vector<double> roots;
    std::vector<std::pair<double, double>> brackets;
    double tolerance = 0.0;
    std::size_t samples = 0;
};

// Position at time T of a particle launched from (x_i, v_i), by exact
// piecewise-parabolic flight: reflection at x = 0 for the one-sided model,
// crossing into the mirrored potential for the symmetric one.
double flight_position(double x_i, double v_i, double T, const PhysicalParams& p, Model model);

// Initial speeds any path between the endpoints can have lie within this
// bound.
double launch_speed_bound(const Endpoints& e, const PhysicalParams& p);

// Scans X(T; v_i) - x_f over `samples` velocities in [v_lo, v_hi], brackets
// sign changes and bisects each to 1e-10.
ShootingResult shoot_paths(const Endpoints& e, const PhysicalParams& p, Model model, double v_lo, double v_hi,
                           std::size_t samples);

// As above over +-1.01 launch_speed_bound, starting at kDefaultSamples and
// doubling until the root count is the same for two successive densities.
ShootingResult shoot_paths(const Endpoints& e, const PhysicalParams& p, Model model = Model::OneSided);

struct QuadratureResult {
    double value;
    // Integral of |kinetic| + |potential|, a scale for relative errors.
    double magnitude;
};

// Composite Simpson integral of M Xdot^2 / 2 - V(X) along path_position,
// split at the bounce (crossing) times.
QuadratureResult action_quadrature(const ClassicalPath& path, const PhysicalParams& p, int steps = 1000);

// Estimated error above which vvd_fd reports its branch as untrackable.
inline constexpr double kFdRelativeError = 1e-6;

struct FiniteDifference {
    double value = 0.0;
    double error = 0.0;  // extrapolation error estimate
    bool skipped = false;
};

// Mixed central difference of the action in (x_i, x_f), re-identifying the
// branch at each perturbed endpoint pair as the path with the same bounce
// count and nearest v_i. Ridders' extrapolation over a shrinking sequence of
// steps starting at h; h <= 0 selects 1e-2 max(1, |x_i|, |x_f|). The branch
// is skipped when tracking fails at every step, or when the extrapolation
// does not settle within kFdRelativeError (the endpoint is so close to a
// caustic that the action is not smooth on the scale of the steps).
FiniteDifference vvd_fd(const Endpoints& e, const ClassicalPath& path, const PhysicalParams& p, double h = 0.0);

// 1 + sign changes on (0, T) of dX/dv_i, integrated through the crossings
// of the symmetric image path by the kick recursion.
int morse_count_numeric(const ClassicalPath& path, const PhysicalParams& p);

}  // namespace qbounce::oracle
