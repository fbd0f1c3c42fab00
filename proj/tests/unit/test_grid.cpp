#include <doctest.h>

#include <algorithm>
#include <string>

#include "bungee/grid.hpp"

using namespace bungee;
using C = Classification;

namespace {

Raster handmade(std::size_t nx, std::size_t ny, std::initializer_list<C> cells) {
  Raster r;
  r.spec = GridSpec{-1, 1, -1, 1, nx, ny};
  r.cells = cells;
  return r;
}

}  // namespace

TEST_CASE("cell centers: row 0 on top, half-cell inset") {
  const GridSpec g{-2, 2, -1, 1, 4, 2};
  CHECK(g.cell_count() == 8);
  CHECK(g.cell_center(0, 0) == Complex(-1.5, 0.5));
  CHECK(g.cell_center(3, 0) == Complex(1.5, 0.5));
  CHECK(g.cell_center(0, 1) == Complex(-1.5, -0.5));
  CHECK(g.cell_center(3, 1) == Complex(1.5, -0.5));
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS((GridSpec{1, -1, -1, 1, 2, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{-1, 1, -1, 1, 0, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{-1, 1, 1, 1, 2, 2}.validate()), std::invalid_argument);
  CHECK_NOTHROW((GridSpec{-1, 1, -1, 1, 1, 1}.validate()));
}

TEST_CASE("classify_grid agrees with classify_point cell by cell") {
  const FunctionExpr f = parse("0.3*exp(z)");
  const GridSpec g{-1, 4, -2, 2, 9, 7};
  const ClassifierConfig cfg;
  const Raster r = classify_grid(f, g, cfg, 3);
  REQUIRE(r.cells.size() == g.cell_count());
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) CHECK(r.at(i, j) == classify_point(f, g.cell_center(i, j), cfg));
}

TEST_CASE("raster is independent of the worker count") {
  const FunctionExpr f = parse("z+1+exp(-z)");
  const GridSpec g{-3, 3, -3, 3, 32, 24};
  const ClassifierConfig cfg;
  const Raster one = classify_grid(f, g, cfg, 1);
  for (unsigned w : {2u, 5u, 64u}) CHECK(classify_grid(f, g, cfg, w) == one);
  CHECK(render_ppm(classify_grid(f, g, cfg, 8)) == render_ppm(one));
}

TEST_CASE("PPM and PGM encodings") {
  const Raster r = handmade(2, 1, {C::Bungee, C::Unresolved});
  const auto ppm = render_ppm(r);
  const std::string header = "P6\n2 1\n255\n";
  REQUIRE(ppm.size() == header.size() + 6);
  CHECK(std::string(ppm.begin(), ppm.begin() + static_cast<long>(header.size())) == header);
  const Rgb a = palette(C::Bungee), b = palette(C::Unresolved);
  CHECK(std::vector<std::uint8_t>(ppm.end() - 6, ppm.end()) == std::vector<std::uint8_t>{a.r, a.g, a.b, b.r, b.g, b.b});

  const auto pgm = render_mask_pgm(r.spec, {true, false});
  const std::string pheader = "P5\n2 1\n255\n";
  CHECK(std::string(pgm.begin(), pgm.begin() + static_cast<long>(pheader.size())) == pheader);
  CHECK(pgm[pheader.size()] == 255);
  CHECK(pgm[pheader.size() + 1] == 0);
  CHECK_THROWS_AS(render_mask_pgm(r.spec, {true}), std::invalid_argument);
}

TEST_CASE("palette colors are distinct") {
  const C all[] = {C::Escaping, C::Bounded, C::Bungee, C::Unresolved};
  for (auto x : all)
    for (auto y : all)
      if (x != y) {
        const Rgb p = palette(x), q = palette(y);
        CHECK_FALSE((p.r == q.r && p.g == q.g && p.b == q.b));
      }
}

TEST_CASE("boundary: resolved cells with a resolved neighbor of another class") {
  // E E E
  // E B E
  // E E E
  const Raster r = handmade(3, 3, {C::Escaping, C::Escaping, C::Escaping, C::Escaping, C::Bungee, C::Escaping,
                                   C::Escaping, C::Escaping, C::Escaping});
  const std::vector<bool> expected = {false, true, false, true, true, true, false, true, false};
  CHECK(extract_boundary(r) == expected);

  // Unresolved cells separate without creating boundary.
  const Raster u = handmade(3, 1, {C::Bounded, C::Unresolved, C::Escaping});
  CHECK(extract_boundary(u) == std::vector<bool>{false, false, false});
  const Raster flat = handmade(2, 2, {C::Bounded, C::Bounded, C::Bounded, C::Bounded});
  CHECK(extract_boundary(flat) == std::vector<bool>(4, false));

  Raster broken = r;
  broken.cells.pop_back();
  CHECK_THROWS_AS(extract_boundary(broken), std::invalid_argument);
}

TEST_CASE("raster JSON round trip") {
  const Raster r = classify_grid(parse("1/pow(z,2)"), GridSpec{-2, 2, -2, 2, 6, 5}, ClassifierConfig{});
  const nlohmann::json j = to_json(r);
  CHECK(j.at("codes").size() == 30);
  CHECK(raster_from_json(j) == r);
  CHECK(grid_spec_from_json(to_json(r.spec)) == r.spec);
}

TEST_CASE("property: boundary commutes with mirroring") {
  const Raster r = classify_grid(parse("exp(-z-1)+1"), GridSpec{-4, 4, -4, 4, 23, 17}, ClassifierConfig{});
  const std::size_t nx = r.spec.nx, ny = r.spec.ny;
  auto hflip = [&](const auto& cells) {
    auto out = cells;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) out[j * nx + i] = cells[j * nx + (nx - 1 - i)];
    return out;
  };
  auto vflip = [&](const auto& cells) {
    auto out = cells;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) out[j * nx + i] = cells[(ny - 1 - j) * nx + i];
    return out;
  };
  const std::vector<bool> mask = extract_boundary(r);
  CHECK(std::count(mask.begin(), mask.end(), true) > 0);
  Raster h = r, v = r;
  h.cells = hflip(r.cells);
  v.cells = vflip(r.cells);
  CHECK(extract_boundary(h) == hflip(mask));
  CHECK(extract_boundary(v) == vflip(mask));
}
