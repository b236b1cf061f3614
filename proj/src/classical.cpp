#include "qbounce/classical.hpp"

#include "qbounce/errors.hpp"
#include "qbounce/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qbounce {

std::string_view to_string(Model model)
{
    return model == Model::OneSided ? "1sb" : "sb";
}

Model parse_model(std::string_view text)
{
    if (text == "1sb") {
        return Model::OneSided;
    }
    if (text == "sb") {
        return Model::Symmetric;
    }
    throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected 1sb or sb)");
}

void PhysicalParams::validate() const
{
    for (const double v : {mass, g, hbar}) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument("physical parameters must be finite and positive");
        }
    }
}

NaturalUnits NaturalUnits::from(const PhysicalParams& p)
{
    return {std::cbrt(p.hbar * p.hbar * p.g * p.g * p.mass), std::cbrt(p.hbar * p.hbar / (p.g * p.mass * p.mass)),
            std::cbrt(p.hbar / (p.mass * p.g * p.g)), std::cbrt(2.0)};
}

DimensionlessEndpoints DimensionlessEndpoints::from(const Endpoints& e, const PhysicalParams& p)
{
    const double scale = 2.0 / (p.g * e.T * e.T);
    return {e.x_i * scale, e.x_f * scale};
}

Endpoints DimensionlessEndpoints::restore(double T, const PhysicalParams& p) const
{
    const double scale = p.g * T * T / 2.0;
    return {a * scale, b * scale, T};
}

namespace classical {
namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

void check_time(const ClassicalPath& path, double t)
{
    if (!(t >= 0.0 && t <= path.ends.T)) {
        throw DomainError("time " + std::to_string(t) + " outside [0, T]");
    }
}

// Fills every derived field from model, ends, n, frame_sign and image.
void finalize(ClassicalPath& path, const PhysicalParams& p)
{
    const auto& im = path.image;
    const double g = p.g;
    const double T = path.ends.T;
    path.v_m = std::sqrt(im.v_i * im.v_i + 2.0 * g * im.x_i);
    path.t_b = 2.0 * path.v_m / g;
    path.x_m = path.v_m * path.v_m / (2.0 * g);

    const double s = path.frame_sign;
    const double parity = (path.n % 2 == 0) ? 1.0 : -1.0;
    if (path.model == Model::OneSided) {
        path.v_i = im.v_i;
        path.v_f = im.v_f;
    } else {
        path.v_i = s * im.v_i;
        path.v_f = s * parity * im.v_f;
    }

    path.tau.clear();
    path.tau_half.clear();
    for (int k = 1; k <= path.n; ++k) {
        path.tau.push_back((im.v_i + (2.0 * k - 1.0) * path.v_m) / g);
    }
    for (int k = 0; k <= path.n; ++k) {
        path.tau_half.push_back((im.v_i + 2.0 * k * path.v_m) / g);
    }

    path.action = action(path, p);
    const double den = vvd_denominator(path);
    path.vvd = p.mass * path.v_m * path.v_m / den;
    path.caustic = std::abs(den) <= kCausticThreshold * T * path.v_m * path.v_m;
    // The one-sided count uses the path's own n, so a bounce landing exactly
    // on t = T is attributed consistently with the enumeration.
    path.morse = morse_index_sb(im.x_i, im.v_i, T, p) + (path.model == Model::OneSided ? 2 * path.n : 0);
    path.focal_times = focal_times(path, p);
    if (im.v_i != 0.0) {
        path.k0 = (1.0 - path.v_m / im.v_i) / 2.0;
    } else {
        path.k0.reset();
    }
}

ClassicalPath one_sided_path(const Endpoints& e, int n, double v_i, double v_f, const PhysicalParams& p)
{
    ClassicalPath path;
    path.model = Model::OneSided;
    path.ends = e;
    path.n = n;
    path.frame_sign = 1;
    path.image = {e.x_i, e.x_f, v_i, v_f};
    finalize(path, p);
    return path;
}

ClassicalPath to_symmetric(const ClassicalPath& one_sided, const Endpoints& sb_ends, int sign, const PhysicalParams& p)
{
    ClassicalPath path = one_sided;
    path.model = Model::Symmetric;
    path.ends = sb_ends;
    path.frame_sign = sign;
    finalize(path, p);
    return path;
}

}  // namespace

double discriminant(int n, double a, double b)
{
    if (n == 0) {
        return 0.0;
    }
    const double c = 4.0 * n * n;
    const double c2 = c * c;
    const double c3 = c2 * c;
    const double c4 = c2 * c2;
    const double s = a + b;
    const double ab = a * b;
    const double lead = b + (a + 1.0) * (c - 1.0);
    const double bracket = 1.0 + (2.0 - 2.0 * c) * s + (1.0 - 8.0 * c + c2) * s * s
                           + (-4.0 + 20.0 * c + 2.0 * c2) * ab + (-10.0 * c + 2.0 * c2) * s * s * s
                           + (40.0 * c - 2.0 * c2 - 2.0 * c3) * ab * s
                           + (-64.0 * c + 48.0 * c2 - 12.0 * c3 + c4) * ab * ab
                           + (32.0 * c - 16.0 * c2 + 2.0 * c3) * ab * s * s + (-4.0 * c + c2) * s * s * s * s;
    return 4096.0 * c2 * lead * lead * bracket;
}

int max_bounces(double a, double b)
{
    if (!(a + b > 0.0)) {
        throw UnboundedBouncesError("max_bounces: a + b must be positive");
    }
    return static_cast<int>(std::ceil(std::sqrt(1.0 + 1.0 / (2.0 * a + 2.0 * b))));
}

poly::PolyCoeffs bounce_poly(int n, double a, double b)
{
    const double n2 = static_cast<double>(n) * n;
    const double n4 = n2 * n2;
    return {16.0 * n2 * (n2 - 1.0), 16.0 * n2, 32.0 * n4 * a + 8.0 * n2 * (b - 1.0 - 3.0 * a) + 4.0,
            4.0 * (4.0 * n2 * a + a - b - 1.0),
            16.0 * n4 * a * a + 8.0 * n2 * a * (b - 1.0 - a) + (1.0 + b - a) * (1.0 + b - a)};
}

UnsquaredResidual unsquared_residual(int n, double a, double b, double u)
{
    const double n2 = static_cast<double>(n) * n;
    const double w = std::sqrt(u * u + a);
    const double terms[] = {4.0 * n * (u - 1.0) * w, 4.0 * n2 * u * u, -2.0 * u, (4.0 * n2 - 1.0) * a, b, 1.0};
    double value = 0.0;
    double scale = 0.0;
    for (const double t : terms) {
        value += t;
        scale += std::abs(t);
    }
    return {value, scale};
}

std::vector<ClassicalPath> solve_paths_for_n(const Endpoints& e, int n, const PhysicalParams& p)
{
    if (e.x_i < 0.0 || e.x_f < 0.0 || !(e.T > 0.0)) {
        throw DomainError("solve_paths_for_n: one-sided endpoints need x_i, x_f >= 0 and T > 0");
    }
    const auto [a, b] = DimensionlessEndpoints::from(e, p);
    const auto coeffs = bounce_poly(n, a, b);
    const double gT = p.g * e.T;
    const double slack = 1e-12 * e.T;

    std::vector<ClassicalPath> out;
    for (const double u : poly::real_roots(coeffs)) {
        const auto residual = unsquared_residual(n, a, b, u);
        if (std::abs(residual.value) > kSpuriousRootThreshold * residual.scale) {
            continue;
        }
        const double v_i = u * gT;
        const double v_m = std::sqrt(v_i * v_i + 2.0 * p.g * e.x_i);
        if (!(v_m > 0.0)) {
            continue;
        }
        if (n >= 1) {
            // Exactly n bounces inside the interval; a bounce on an endpoint
            // (endpoint on the floor) is admitted for both adjacent counts.
            const double first = (v_i + v_m) / p.g;
            const double last = (v_i + (2.0 * n - 1.0) * v_m) / p.g;
            if (first < -slack || last > e.T + slack) {
                continue;
            }
        }
        const double v_f = v_i - gT + 2.0 * n * v_m;
        bool duplicate = false;
        for (const auto& existing : out) {
            duplicate = duplicate || std::abs(existing.v_i - v_i) <= 1e-9 * std::max(1.0, std::abs(v_i));
        }
        if (!duplicate) {
            out.push_back(one_sided_path(e, n, v_i, v_f, p));
        }
    }
    return out;
}

PathSet enumerate_paths(const Endpoints& e, const PhysicalParams& p, Model model)
{
    if (!(e.T > 0.0) || !std::isfinite(e.x_i) || !std::isfinite(e.x_f)) {
        throw DomainError("enumerate_paths: need finite positions and T > 0");
    }
    PathSet set;
    set.model = model;
    set.ends = e;

    if (model == Model::OneSided) {
        const auto [a, b] = DimensionlessEndpoints::from(e, p);
        const int n_max = max_bounces(a, b);
        for (int n = 0; n <= n_max; ++n) {
            auto paths = solve_paths_for_n(e, n, p);
            set.paths.insert(set.paths.end(), paths.begin(), paths.end());
        }
        return set;
    }

    if (e.x_i == 0.0 || e.x_f == 0.0) {
        throw BoundaryEndpointError("enumerate_paths: symmetric endpoints must be nonzero");
    }
    const auto [a, b] = DimensionlessEndpoints::from({std::abs(e.x_i), std::abs(e.x_f), e.T}, p);
    const int n_max = max_bounces(a, b);
    const int first = (e.x_i * e.x_f > 0.0) ? 0 : 1;
    for (int n = first; n <= n_max; n += 2) {
        const auto mapped = map_sb_to_1sb(e.x_i, e.x_f, n);
        for (const auto& path : solve_paths_for_n({mapped.x_i, mapped.x_f, e.T}, n, p)) {
            set.paths.push_back(to_symmetric(path, e, mapped.sign, p));
        }
    }
    return set;
}

ClassicalPath path_from_initial(double x_i, double v_i, double T, const PhysicalParams& p, Model model)
{
    if (!(T > 0.0)) {
        throw DomainError("path_from_initial: T must be positive");
    }
    int sign = 1;
    double x_img = x_i;
    double v_img = v_i;
    if (model == Model::OneSided) {
        if (x_i < 0.0) {
            throw DomainError("path_from_initial: one-sided start below the floor");
        }
    } else {
        sign = (x_i > 0.0 || (x_i == 0.0 && v_i >= 0.0)) ? 1 : -1;
        x_img = sign * x_i;
        v_img = sign * v_i;
    }
    const double g = p.g;
    const double v_m = std::sqrt(v_img * v_img + 2.0 * g * x_img);
    if (!(v_m > 0.0)) {
        throw DomainError("path_from_initial: particle at rest on the floor");
    }
    const double y = (g * T - v_img) / (2.0 * v_m) + 0.5;
    const int n = std::max(0, static_cast<int>(std::ceil(y)) - 1);
    const int zenith = static_cast<int>(std::floor(y));
    const double dt = T - (v_img + 2.0 * zenith * v_m) / g;
    const double x_f_img = v_m * v_m / (2.0 * g) - 0.5 * g * dt * dt;
    const double v_f_img = v_img - g * T + 2.0 * n * v_m;

    ClassicalPath path;
    path.model = model;
    path.n = n;
    path.frame_sign = sign;
    path.image = {x_img, x_f_img, v_img, v_f_img};
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    path.ends = {x_i, model == Model::OneSided ? x_f_img : sign * parity * x_f_img, T};
    finalize(path, p);
    return path;
}

int bounces_before(const ClassicalPath& path, double t, const PhysicalParams& p)
{
    const double y = (p.g * t - path.image.v_i) / (2.0 * path.v_m) + 0.5;
    return std::max(0, static_cast<int>(std::ceil(y)) - 1);
}

double path_position(const ClassicalPath& path, double t, const PhysicalParams& p)
{
    check_time(path, t);
    const double g = p.g;
    const double v_i = path.image.v_i;
    const int zenith = static_cast<int>(std::floor((g * t - v_i) / (2.0 * path.v_m) + 0.5));
    const double dt = t - (v_i + 2.0 * zenith * path.v_m) / g;
    const double x = path.x_m - 0.5 * g * dt * dt;
    if (path.model == Model::OneSided) {
        return x;
    }
    const int k = bounces_before(path, t, p);
    return path.frame_sign * ((k % 2 == 0) ? x : -x);
}

double action(const ClassicalPath& path, const PhysicalParams& p)
{
    const double vi = path.image.v_i;
    const double vf = path.image.v_f;
    const double vm = path.v_m;
    return p.mass / (6.0 * p.g)
           * (2.0 * (vi * vi * vi - vf * vf * vf) - 3.0 * vm * vm * (vi - vf) - 2.0 * path.n * vm * vm * vm);
}

double vvd_denominator(const ClassicalPath& path)
{
    const auto& e = path.ends;
    return e.T * path.v_i * path.v_f + 2.0 * (e.x_i * path.v_f - e.x_f * path.v_i);
}

double vvd(const ClassicalPath& path, const Endpoints& e, const PhysicalParams& p)
{
    const double den = e.T * path.v_i * path.v_f + 2.0 * (e.x_i * path.v_f - e.x_f * path.v_i);
    const double scale = e.T * path.v_m * path.v_m;
    if (!(std::abs(den) > 1e-12 * scale)) {
        throw FocusAtEndpointError("vvd: final point lies on a focus of the path");
    }
    return p.mass * path.v_m * path.v_m / den;
}

double divergence_node(const ClassicalPath& path, int k, const PhysicalParams& p)
{
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * (path.v_m + (2.0 * k - 1.0) * path.image.v_i) / p.g;
}

double bounce_time(const ClassicalPath& path, int k, const PhysicalParams& p)
{
    return (path.image.v_i + (2.0 * k - 1.0) * path.v_m) / p.g;
}

double path_divergence(const ClassicalPath& path, double t, const PhysicalParams& p)
{
    check_time(path, t);
    const int k = bounces_before(path, t, p);
    if (k == 0) {
        return t;
    }
    const double t0 = bounce_time(path, k, p);
    const double t1 = bounce_time(path, k + 1, p);
    const double f0 = divergence_node(path, k, p);
    const double f1 = divergence_node(path, k + 1, p);
    const double f = f0 + (f1 - f0) * (t - t0) / (t1 - t0);
    if (path.model == Model::OneSided && k % 2 == 1) {
        return -f;
    }
    return f;
}

double path_divergence_at_end(const ClassicalPath& path)
{
    return -vvd_denominator(path) / (path.v_m * path.v_m);
}

OneSidedEndpoints map_sb_to_1sb(double x_i_s, double x_f_s, int n)
{
    if (x_i_s == 0.0 || x_f_s == 0.0) {
        throw BoundaryEndpointError("map_sb_to_1sb: endpoints must be nonzero");
    }
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    if (!(parity * sign_of(x_i_s) * sign_of(x_f_s) > 0.0)) {
        throw ParityMismatchError("map_sb_to_1sb: no path with " + std::to_string(n) + " crossings");
    }
    const int sign = x_i_s > 0.0 ? 1 : -1;
    return {std::abs(x_i_s), parity * x_f_s * sign, sign};
}

SymmetricEndpoints map_1sb_to_sb(double x_i, double x_f, double v_i, int n, int sign)
{
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    return {sign * x_i, sign * parity * x_f, sign * v_i};
}

std::vector<int> phase_diagram(double x_i, std::span<const double> T_grid, std::span<const double> xf_grid,
                               const PhysicalParams& p, Model model)
{
    std::vector<int> counts(T_grid.size() * xf_grid.size(), 0);
    parallel_for(counts.size(), [&](std::size_t idx) {
        const double T = T_grid[idx / xf_grid.size()];
        const double x_f = xf_grid[idx % xf_grid.size()];
        counts[idx] = static_cast<int>(enumerate_paths({x_i, x_f, T}, p, model).count());
    });
    return counts;
}

}  // namespace classical
}  // namespace qbounce
