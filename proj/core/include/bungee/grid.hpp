#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bungee/expr.hpp"
#include "bungee/orbit.hpp"

namespace bungee {

/// Rectangle of the plane sampled at nx by ny cell centers. Row 0 is the top
/// row (im_max), column 0 the left column (re_min).
struct GridSpec {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  std::size_t nx = 1;
  std::size_t ny = 1;

  void validate() const;
  std::size_t cell_count() const { return nx * ny; }
  /// Center of column i, row j.
  Complex cell_center(std::size_t i, std::size_t j) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Raster {
  GridSpec spec;
  std::vector<Classification> cells;  // row-major, row 0 on top

  Classification at(std::size_t i, std::size_t j) const { return cells[j * spec.nx + i]; }

  friend bool operator==(const Raster&, const Raster&) = default;
};

/// Classifies every cell center. Rows are distributed over `workers` threads
/// and written positionally; the result does not depend on the worker count.
Raster classify_grid(const FunctionExpr& f, const GridSpec& spec, const ClassifierConfig& cfg,
                     unsigned workers = 1);

/// Row-major mask, true where a resolved cell has a resolved 4-neighbor of a
/// different class. Unresolved cells neither are nor create boundary cells.
std::vector<bool> extract_boundary(const Raster& r);

struct Rgb {
  std::uint8_t r, g, b;
};
Rgb palette(Classification c);

/// Binary P6 image, one pixel per cell.
std::vector<std::uint8_t> render_ppm(const Raster& r);

/// Binary P5 image of a boundary mask: 255 on the boundary, 0 elsewhere.
std::vector<std::uint8_t> render_mask_pgm(const GridSpec& spec, const std::vector<bool>& mask);

nlohmann::json to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const nlohmann::json& j);

/// {"spec": {...}, "codes": [row-major class codes]}
nlohmann::json to_json(const Raster& r);
Raster raster_from_json(const nlohmann::json& j);

}  // namespace bungee
