#pragma once

#include "qbounce/propagator.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qbounce::render {

enum class Palette { ComplexDomain, Sequential };

struct RenderSpec {
    Palette palette = Palette::ComplexDomain;
    // Normalization: the largest magnitude in the grid unless a fixed scale is given.
    std::optional<double> fixed_scale;
    double gamma = 1.0;

    // Throws std::invalid_argument for a non-positive scale or gamma.
    void validate() const;
};

// 8-bit RGB raster, row-major from the top-left pixel.
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> rgb;

    // Binary PPM (P6) encoding.
    std::string ppm() const;
};

// Columns follow axis1 (column 0 = smallest value), rows follow axis2 with
// row 0 = largest value. Complex palette: hue = arg/2pi, saturation 1,
// value = (|K| / norm)^gamma clipped to [0, 1]. Non-finite nodes are black.
Raster render_complex(const ComplexGrid& grid, const RenderSpec& spec);

// Real values laid out like a grid over (axis1, axis2), drawn with the
// sequential palette: hue (2/3)(1 - v), v = (value / norm)^gamma.
Raster render_real(std::span<const double> axis1, std::span<const double> axis2, std::span<const double> values,
                   const RenderSpec& spec);

void write_ppm(const Raster& raster, const std::string& path);

}  // namespace qbounce::render
