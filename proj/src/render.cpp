#include "qbounce/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace qbounce::render {
namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

std::uint8_t to_byte(double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); }

Rgb hsv(double h, double s, double v)
{
    h = h - std::floor(h);
    const double sector = h * 6.0;
    const int i = static_cast<int>(sector) % 6;
    const double f = sector - std::floor(sector);
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (i) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
    }
    return {to_byte(r), to_byte(g), to_byte(b)};
}

// Maps raster (row, column) to the grid indices (i along axis1, j along axis2).
struct Layout {
    std::size_t width;
    std::size_t height;
    bool axis1_ascending;
    bool axis2_ascending;

    Layout(std::span<const double> axis1, std::span<const double> axis2)
        : width(axis1.size()), height(axis2.size()), axis1_ascending(axis1.size() < 2 || axis1[1] > axis1[0]),
          axis2_ascending(axis2.size() < 2 || axis2[1] > axis2[0])
    {
        if (axis1.empty() || axis2.empty()) {
            throw std::invalid_argument("render: empty grid");
        }
    }

    std::size_t index(std::size_t row, std::size_t col) const
    {
        const std::size_t i = axis1_ascending ? col : width - 1 - col;
        const std::size_t j = axis2_ascending ? height - 1 - row : row;
        return i * height + j;
    }
};

double normalization(const RenderSpec& spec, double largest)
{
    if (spec.fixed_scale) {
        return *spec.fixed_scale;
    }
    return largest;
}

double brightness(double magnitude, double norm, double gamma)
{
    if (!(norm > 0.0) || !std::isfinite(magnitude)) {
        return 0.0;
    }
    return std::clamp(std::pow(magnitude / norm, gamma), 0.0, 1.0);
}

}  // namespace

void RenderSpec::validate() const
{
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("render: gamma must be positive");
    }
    if (fixed_scale && (!(*fixed_scale > 0.0) || !std::isfinite(*fixed_scale))) {
        throw std::invalid_argument("render: fixed scale must be positive");
    }
}

std::string Raster::ppm() const
{
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(rgb.begin(), rgb.end());
    return out;
}

Raster render_complex(const ComplexGrid& grid, const RenderSpec& spec)
{
    spec.validate();
    const Layout layout(grid.axis1, grid.axis2);
    double largest = 0.0;
    for (const auto& z : grid.values) {
        if (std::isfinite(z.real()) && std::isfinite(z.imag())) {
            largest = std::max(largest, std::abs(z));
        }
    }
    const double norm = normalization(spec, largest);

    Raster raster{layout.width, layout.height, std::vector<std::uint8_t>(layout.width * layout.height * 3)};
    for (std::size_t row = 0; row < layout.height; ++row) {
        for (std::size_t col = 0; col < layout.width; ++col) {
            const Complex z = grid.values[layout.index(row, col)];
            const double v = brightness(std::abs(z), norm, spec.gamma);
            Rgb c{0, 0, 0};
            if (spec.palette == Palette::ComplexDomain) {
                const double hue = v > 0.0 ? std::arg(z) / (2.0 * std::numbers::pi) : 0.0;
                c = hsv(hue, 1.0, v);
            } else {
                c = std::isfinite(std::abs(z)) ? hsv(2.0 / 3.0 * (1.0 - v), 1.0, 1.0) : Rgb{0, 0, 0};
            }
            const std::size_t at = (row * layout.width + col) * 3;
            raster.rgb[at] = c.r;
            raster.rgb[at + 1] = c.g;
            raster.rgb[at + 2] = c.b;
        }
    }
    return raster;
}

Raster render_real(std::span<const double> axis1, std::span<const double> axis2, std::span<const double> values,
                   const RenderSpec& spec)
{
    spec.validate();
    const Layout layout(axis1, axis2);
    if (values.size() != axis1.size() * axis2.size()) {
        throw std::invalid_argument("render: value count does not match the axes");
    }
    double largest = 0.0;
    for (const double v : values) {
        if (std::isfinite(v)) {
            largest = std::max(largest, std::abs(v));
        }
    }
    const double norm = normalization(spec, largest);

    Raster raster{layout.width, layout.height, std::vector<std::uint8_t>(layout.width * layout.height * 3)};
    for (std::size_t row = 0; row < layout.height; ++row) {
        for (std::size_t col = 0; col < layout.width; ++col) {
            const double value = values[layout.index(row, col)];
            const Rgb c = std::isfinite(value) ? hsv(2.0 / 3.0 * (1.0 - brightness(std::abs(value), norm, spec.gamma)), 1.0, 1.0)
                                               : Rgb{0, 0, 0};
            const std::size_t at = (row * layout.width + col) * 3;
            raster.rgb[at] = c.r;
            raster.rgb[at + 1] = c.g;
            raster.rgb[at + 2] = c.b;
        }
    }
    return raster;
}

void write_ppm(const Raster& raster, const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    const std::string bytes = raster.ppm();
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw std::runtime_error("cannot write raster " + path);
    }
}

}  // namespace qbounce::render
