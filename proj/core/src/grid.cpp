#include "bungee/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "bungee/parallel.hpp"

namespace bungee {

void GridSpec::validate() const {
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max))
    throw std::invalid_argument("GridSpec: bounds must be finite");
  if (!(re_min < re_max)) throw std::invalid_argument("GridSpec: re_min must be below re_max");
  if (!(im_min < im_max)) throw std::invalid_argument("GridSpec: im_min must be below im_max");
  if (nx < 1 || ny < 1) throw std::invalid_argument("GridSpec: nx and ny must be positive");
}

Complex GridSpec::cell_center(std::size_t i, std::size_t j) const {
  // (2i+1)/(2n) keeps centers exact for dyadic and symmetric grids.
  const double re = re_min + (re_max - re_min) * static_cast<double>(2 * i + 1) / static_cast<double>(2 * nx);
  const double im = im_max - (im_max - im_min) * static_cast<double>(2 * j + 1) / static_cast<double>(2 * ny);
  return {re, im};
}

Raster classify_grid(const FunctionExpr& f, const GridSpec& spec, const ClassifierConfig& cfg,
                     unsigned workers) {
  spec.validate();
  cfg.validate();
  Raster out{spec, std::vector<Classification>(spec.cell_count(), Classification::Unresolved)};
  parallel_for(spec.ny, workers, [&](std::size_t j) {
    for (std::size_t i = 0; i < spec.nx; ++i)
      out.cells[j * spec.nx + i] = classify_point(f, spec.cell_center(i, j), cfg);
  });
  return out;
}

std::vector<bool> extract_boundary(const Raster& r) {
  const std::size_t nx = r.spec.nx;
  const std::size_t ny = r.spec.ny;
  if (r.cells.size() != nx * ny) throw std::invalid_argument("extract_boundary: raster is incomplete");
  std::vector<bool> mask(nx * ny, false);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Classification c = r.at(i, j);
      if (c == Classification::Unresolved) continue;
      auto differs = [&](std::size_t ii, std::size_t jj) {
        const Classification n = r.at(ii, jj);
        return n != Classification::Unresolved && n != c;
      };
      mask[j * nx + i] = (i > 0 && differs(i - 1, j)) || (i + 1 < nx && differs(i + 1, j)) ||
                         (j > 0 && differs(i, j - 1)) || (j + 1 < ny && differs(i, j + 1));
    }
  }
  return mask;
}

Rgb palette(Classification c) {
  switch (c) {
    case Classification::Escaping: return {0, 0, 0};
    case Classification::Bounded: return {230, 230, 230};
    case Classification::Bungee: return {220, 50, 50};
    case Classification::Unresolved: break;
  }
  return {60, 60, 200};
}

namespace {

std::vector<std::uint8_t> netpbm_header(const char* magic, std::size_t nx, std::size_t ny) {
  const std::string h = std::string(magic) + "\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  return {h.begin(), h.end()};
}

}  // namespace

std::vector<std::uint8_t> render_ppm(const Raster& r) {
  if (r.cells.size() != r.spec.cell_count()) throw std::invalid_argument("render_ppm: raster is incomplete");
  std::vector<std::uint8_t> out = netpbm_header("P6", r.spec.nx, r.spec.ny);
  out.reserve(out.size() + 3 * r.cells.size());
  for (Classification c : r.cells) {
    const Rgb px = palette(c);
    out.push_back(px.r);
    out.push_back(px.g);
    out.push_back(px.b);
  }
  return out;
}

std::vector<std::uint8_t> render_mask_pgm(const GridSpec& spec, const std::vector<bool>& mask) {
  if (mask.size() != spec.cell_count()) throw std::invalid_argument("render_mask_pgm: mask size mismatch");
  std::vector<std::uint8_t> out = netpbm_header("P5", spec.nx, spec.ny);
  for (bool b : mask) out.push_back(b ? 255 : 0);
  return out;
}

nlohmann::json to_json(const GridSpec& spec) {
  return {{"re_min", spec.re_min}, {"re_max", spec.re_max}, {"im_min", spec.im_min},
          {"im_max", spec.im_max}, {"nx", spec.nx},         {"ny", spec.ny}};
}

GridSpec grid_spec_from_json(const nlohmann::json& j) {
  GridSpec s;
  s.re_min = j.at("re_min").get<double>();
  s.re_max = j.at("re_max").get<double>();
  s.im_min = j.at("im_min").get<double>();
  s.im_max = j.at("im_max").get<double>();
  s.nx = j.at("nx").get<std::size_t>();
  s.ny = j.at("ny").get<std::size_t>();
  s.validate();
  return s;
}

nlohmann::json to_json(const Raster& r) {
  nlohmann::json codes = nlohmann::json::array();
  for (Classification c : r.cells) codes.push_back(static_cast<int>(c));
  return {{"spec", to_json(r.spec)}, {"codes", std::move(codes)}};
}

Raster raster_from_json(const nlohmann::json& j) {
  Raster r{grid_spec_from_json(j.at("spec")), {}};
  const auto& codes = j.at("codes");
  if (codes.size() != r.spec.cell_count()) throw std::invalid_argument("raster JSON: codes length mismatch");
  r.cells.reserve(codes.size());
  for (const auto& c : codes) {
    const int v = c.get<int>();
    if (v < 0 || v > 3) throw std::invalid_argument("raster JSON: invalid class code");
    r.cells.push_back(static_cast<Classification>(v));
  }
  return r;
}

}  // namespace bungee
