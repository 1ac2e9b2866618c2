#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "novlab/error.hpp"
#include "novlab/field.hpp"
#include "novlab/grid.hpp"

using namespace novlab;
using Catch::Approx;

TEST_CASE("grid geometry", "[grid]") {
  const Grid g(64, 8.0);
  CHECK(g.size() == 64);
  CHECK(g.spacing() == 0.125);
  CHECK(g.position(0) == -4.0);
  CHECK(g.position(g.origin_index()) == 0.0);
  CHECK(g.fundamental() == Approx(2.0 * std::numbers::pi / 8.0));
  CHECK(g.nyquist() == Approx(g.frequency(32)));
  CHECK(g.half_size() == 33);
}

TEST_CASE("grid rejects bad sizes and lengths", "[grid]") {
  CHECK_THROWS_AS(Grid(48, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(8, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(64, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(64, std::numeric_limits<double>::infinity()), InvalidArgument);
  CHECK_THROWS_AS(Grid(64, 2.0 * std::numbers::pi, 32.0), ResolutionError);
  CHECK_NOTHROW(Grid(64, 2.0 * std::numbers::pi, 31.9));
}

TEST_CASE("commensurate length makes the carrier a whole wavenumber", "[grid]") {
  for (double lambda : {67.0 / 48.0, 68.0 / 48.0, 69.0 / 48.0}) {
    const double L = commensurate_length(lambda, 128.0);
    const double k = lambda * L / (2.0 * std::numbers::pi);
    CHECK(std::abs(k - std::round(k)) < 1e-9);
    CHECK(std::abs(L - 128.0) <= std::numbers::pi / lambda + 1e-12);
  }
  CHECK(commensurate_length(1.0, 0.1) == Approx(2.0 * std::numbers::pi));
}

TEST_CASE("real fields validate and combine", "[field]") {
  const Grid g(16, 2.0);
  CHECK_THROWS_AS(RealField(g, std::vector<double>(15, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(RealField(g, std::vector<double>(16, std::nan(""))), InvalidArgument);

  const RealField x = RealField::sample(g, [](double t) { return t; });
  const RealField one = RealField::constant(g, 1.0);
  CHECK(x.at_origin() == 0.0);
  CHECK(x[0] == -1.0);
  const RealField y = 2.0 * x + one - x;
  for (std::size_t m = 0; m < g.size(); ++m) CHECK(y[m] == x[m] + 1.0);
  const RealField z = RealField::axpy(one, -3.0, x);
  CHECK(z[0] == 4.0);
  CHECK((-x)[0] == 1.0);

  const RealField other = RealField::zeros(Grid(16, 3.0));
  CHECK_THROWS_AS(x + other, GridMismatch);
  CHECK_THROWS_AS(require_same_grid(x, other), GridMismatch);
}

TEST_CASE("spectral coefficient storage covers -N/2 < k <= N/2", "[field]") {
  const Grid g(16, 1.0);
  SpectralCoeffs c(g);
  CHECK(c.min_wavenumber() == -7);
  CHECK(c.max_wavenumber() == 8);
  c.set(3, {1.0, 2.0});
  c.set(-3, {1.0, -2.0});
  CHECK(c.coeff(3) == std::complex<double>(1.0, 2.0));
  CHECK(c.hermitian_defect() == 0.0);
  c.set(-3, {1.0, 2.0});
  CHECK(c.hermitian_defect() == Approx(4.0 / std::sqrt(5.0)));
  CHECK_THROWS_AS(c.coeff(9), InvalidArgument);
  CHECK_THROWS_AS(c.coeff(-8), InvalidArgument);
}
