#pragma once

#include "qbounce/polyroots.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace qbounce {

enum class Model { OneSided, Symmetric };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

struct PhysicalParams {
    double mass = 1.0;
    double g = 1.0;
    double hbar = 1.0;

    // Throws std::invalid_argument unless all three are finite and positive.
    void validate() const;
};

// Natural units of the linear potential: energy (hbar^2 g^2 M)^(1/3),
// length (hbar^2 / g M^2)^(1/3), time (hbar / M g^2)^(1/3).
struct NaturalUnits {
    double energy;
    double length;
    double time;
    double gamma;  // 2^(1/3)

    static NaturalUnits from(const PhysicalParams& p);
};

struct Endpoints {
    double x_i;
    double x_f;
    double T;
};

// a = 2 x_i / g T^2, b = 2 x_f / g T^2.
struct DimensionlessEndpoints {
    double a;
    double b;

    static DimensionlessEndpoints from(const Endpoints& e, const PhysicalParams& p);
    Endpoints restore(double T, const PhysicalParams& p) const;
};

// One classical trajectory between fixed endpoints. Kinematic fields refer
// to the path's own frame (the symmetric-bouncer frame for Model::Symmetric);
// `image` holds the associated one-sided path, which carries the bounce
// structure for both models.
struct ClassicalPath {
    struct OneSidedImage {
        double x_i;
        double x_f;
        double v_i;
        double v_f;
    };

    Model model = Model::OneSided;
    Endpoints ends{};
    int n = 0;
    double v_i = 0.0;
    double v_f = 0.0;
    double v_m = 0.0;
    double t_b = 0.0;
    double x_m = 0.0;
    std::vector<double> tau;
    std::vector<double> tau_half;
    double action = 0.0;
    double vvd = 0.0;
    int morse = 1;
    std::vector<double> focal_times;
    std::optional<double> k0;
    // |f(T)| <= 1e-8 T: the final point is within 1e-8 of a focus.
    bool caustic = false;
    // sgn(x_i) for symmetric paths, +1 for one-sided paths.
    int frame_sign = 1;
    OneSidedImage image{};
};

struct PathSet {
    Model model = Model::OneSided;
    Endpoints ends{};
    std::vector<ClassicalPath> paths;

    std::size_t count() const { return paths.size(); }
};

namespace classical {

// Relative residual threshold of the unsquared path equation.
inline constexpr double kSpuriousRootThreshold = 1e-8;
// Relative distance to a focus below which a node is flagged as caustic.
inline constexpr double kCausticThreshold = 1e-8;

// Discriminant of the bounce polynomial, c = 4 n^2.
double discriminant(int n, double a, double b);

// ceil(sqrt(1 + 1/(2a + 2b))). Throws UnboundedBouncesError when a + b == 0.
int max_bounces(double a, double b);

// Coefficients of the n-bounce polynomial in u = v_i / gT, highest first.
poly::PolyCoeffs bounce_poly(int n, double a, double b);

// Left-hand side of the unsquared n-bounce equation and the sum of the
// magnitudes of its terms.
struct UnsquaredResidual {
    double value;
    double scale;
};
UnsquaredResidual unsquared_residual(int n, double a, double b, double u);

// One-sided paths with exactly n bounces.
std::vector<ClassicalPath> solve_paths_for_n(const Endpoints& e, int n, const PhysicalParams& p);

PathSet enumerate_paths(const Endpoints& e, const PhysicalParams& p, Model model);

// Builds the path launched from (x_i, v_i) and run for time T, with x_f
// following from the motion. For Model::Symmetric x_i may be negative.
ClassicalPath path_from_initial(double x_i, double v_i, double T, const PhysicalParams& p, Model model);

// Position on the path at 0 <= t <= T.
double path_position(const ClassicalPath& path, double t, const PhysicalParams& p);

// Number of bounces (zero crossings for Model::Symmetric) strictly before t.
int bounces_before(const ClassicalPath& path, double t, const PhysicalParams& p);

// S = (M/6g)[2(v_i^3 - v_f^3) - 3 v_m^2 (v_i - v_f) - 2 n v_m^3].
double action(const ClassicalPath& path, const PhysicalParams& p);

// T v_i v_f + 2(x_i v_f - x_f v_i), in the path's own frame.
double vvd_denominator(const ClassicalPath& path);

// D = M v_m^2 / [T v_i v_f + 2(x_i v_f - x_f v_i)]. Throws
// FocusAtEndpointError when the denominator vanishes to 1e-12 relative.
double vvd(const ClassicalPath& path, const Endpoints& e, const PhysicalParams& p);

// Node values f_k = (-1)^(k+1) [v_m + (2k-1) v_i] / g, k >= 1, using the
// one-sided image velocities.
double divergence_node(const ClassicalPath& path, int k, const PhysicalParams& p);

// Bounce time tau_k = [v_i + (2k-1) v_m] / g of the one-sided image, for any
// k (not limited to bounces inside [0, T]).
double bounce_time(const ClassicalPath& path, int k, const PhysicalParams& p);

// f(t) = dX(t)/dv_i. For symmetric paths this is the continuous
// piecewise-linear function through the nodes f_k; for one-sided paths its
// sign flips at every bounce. Either way D = -M / f(T).
double path_divergence(const ClassicalPath& path, double t, const PhysicalParams& p);

// f(T) from the endpoint data: -[T v_i v_f + 2(x_i v_f - x_f v_i)] / v_m^2.
double path_divergence_at_end(const ClassicalPath& path);

// {0} followed by the focal times in (0, T), ascending.
std::vector<double> focal_times(const ClassicalPath& path, const PhysicalParams& p);

// Unit step with Theta(0) = 0.
inline int step(double x) { return x > 0.0 ? 1 : 0; }

int morse_index_sb(double x_i, double v_i, double T, const PhysicalParams& p);
int morse_index_1sb(double x_i, double v_i, double T, const PhysicalParams& p);

struct OneSidedEndpoints {
    double x_i;
    double x_f;
    // sgn(x_i^s), multiplies velocities when mapping between frames.
    int sign;
};

// Symmetric-bouncer endpoints with n crossings to the associated one-sided
// problem. Throws ParityMismatchError when (-1)^n sgn(x_i x_f) <= 0 and
// BoundaryEndpointError when either endpoint is zero.
OneSidedEndpoints map_sb_to_1sb(double x_i_s, double x_f_s, int n);

// Forward mapping: one-sided path data to the symmetric path with initial
// sign `sign` (+1 or -1). Returns (x_i^s, x_f^s, v_i^s).
struct SymmetricEndpoints {
    double x_i;
    double x_f;
    double v_i;
};
SymmetricEndpoints map_1sb_to_sb(double x_i, double x_f, double v_i, int n, int sign);

// Path counts over a (T, x_f) grid; row-major with T as the outer index.
std::vector<int> phase_diagram(double x_i, std::span<const double> T_grid, std::span<const double> xf_grid,
                               const PhysicalParams& p, Model model = Model::OneSided);

}  // namespace classical
}  // namespace qbounce
