#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "swiftlink/ripcheck.hpp"
#include "swiftlink/rng.hpp"

using namespace swiftlink;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("t_xy matches closed forms on tiny contours") {
  // contour 0 of any grid is the single point (0,0)
  CHECK(std::abs(t_xy(0, 0.7, -1.2, 8, ContourDist::uniform) - cd{1.0, 0.0}) < 1e-14);
  // contour 1 = {(0,1), (1,0)}: uniform mean (e^{jy} + e^{jx}) / 2
  const double x = 0.4, y = -0.9;
  const cd want = 0.5 * (std::polar(1.0, y) + std::polar(1.0, x));
  CHECK(std::abs(t_xy(1, x, y, 8, ContourDist::uniform) - want) < 1e-14);
  // binomial on a 3-point contour weights (1/4, 1/2, 1/4) over r = 0,1,2
  const cd want3 = 0.25 * std::polar(1.0, 2.0 * y) + 0.5 * std::polar(1.0, x + y) +
                   0.25 * std::polar(1.0, 2.0 * x);
  CHECK(std::abs(t_xy(2, x, y, 8, ContourDist::binomial) - want3) < 1e-14);
}

TEST_CASE("t_xy obeys the contour recursion on the x-dominant half") {
  // T[n+1] == (n+1)/(n+2) e^{jx} T[n] + e^{j(n+1)y}/(n+2) for n < N-1
  const int n_grid = 8;
  const double x = 0.3, y = 1.1;
  for (int n = 0; n + 1 < n_grid; ++n) {
    const cd lhs = t_xy(n + 1, x, y, n_grid, ContourDist::uniform);
    const cd rhs = (n + 1.0) / (n + 2.0) * std::polar(1.0, x) *
                       t_xy(n, x, y, n_grid, ContourDist::uniform) +
                   std::polar(1.0, (n + 1.0) * y) / (n + 2.0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("lemma 1 holds strictly on the uniform grid with the frozen worst ratio") {
  const Lemma1Report rep = lemma1_check(16, ContourDist::uniform, 64);
  CHECK(rep.violations == 0);
  CHECK(rep.checked > 0);
  CHECK(rep.worst_ratio > 0.7);
  CHECK(rep.worst_ratio < 0.81);
  CHECK(std::abs(rep.worst_ratio - 0.795266) < 1e-4);
}

TEST_CASE("lemma 2 partial sums sit inside their eta bounds away from the diagonal") {
  const Lemma2Report rep = lemma2_check(16, 31, 2.0, -1.3);
  REQUIRE(!rep.skipped);
  CHECK(rep.b_upper <= rep.bound_upper);
  CHECK(rep.b_total <= rep.bound_total);
  CHECK(rep.eta > 0.0);
}

TEST_CASE("lemma 2 at the alternating corner matches the hand computation") {
  // x = y = pi makes T[n] = (-1)^n: upper-half pairs cancel exactly and the
  // full sum leaves the single unpaired contour, eta = 1
  const Lemma2Report rep = lemma2_check(16, 31, kPi, kPi);
  REQUIRE(!rep.skipped);
  CHECK(rep.eta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.b_upper < 1e-12);
  CHECK(std::abs(rep.b_total - 1.0) < 1e-12);
  // near the x == y == 0 divergence the report is flagged instead
  CHECK(lemma2_check(16, 31, 0.0, 0.0).skipped);
}

TEST_CASE("theorem 2 Monte-Carlo deviation agrees with the closed form") {
  Rng rng(71);
  const std::vector<Coord> support{{0, 0}, {16, 5}};
  CVec s(2);
  s << cd{1.0, 0.0} / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), kPi / 4);
  const Theorem2Report rep = theorem2_check(32, 63, support, s, 4000, rng);
  CHECK(rep.holds);
  CHECK(rep.k == 2);
  CHECK(rep.d_min == 16);  // per-pair spacing takes the larger coordinate gap
  CHECK(std::abs(rep.signal_energy - 1.0) < 1e-12);
  CHECK(std::abs(rep.bound - 0.151510) < 1e-4);
  const double exact = theorem2_exact_deviation(32, 63, support, s);
  CHECK(exact > 0.004);
  CHECK(exact < 0.007);
  CHECK(std::abs(rep.empirical_deviation - exact) <= 5.0 * rep.std_error + 1e-9);
}

TEST_CASE("theorem 2 reduces to an exact identity for a single atom") {
  Rng rng(73);
  CVec s(1);
  s << cd{0.8, 0.3};
  const Theorem2Report rep = theorem2_check(16, 31, {{4, 9}}, s, 500, rng);
  CHECK(rep.holds);
  CHECK(rep.empirical_deviation < 1e-12 * std::max(1.0, rep.signal_energy));
}

TEST_CASE("d_min wraps around the grid") {
  CHECK(d_min({{0, 0}, {15, 1}}, 16) == 1);  // row spacing wraps to 1
  CHECK(d_min({{0, 0}, {8, 8}}, 16) == 8);
  CHECK(d_min({{0, 0}, {16, 5}}, 32) == 16);
  CHECK(d_min({{3, 4}}, 16) == 16);
  CHECK(d_min({}, 16) == 16);
  CHECK(d_min({{0, 0}, {4, 2}, {8, 8}}, 16) == 4);
}

TEST_CASE("sufficient_mp returns the smallest feasible odd length or nothing") {
  const auto got = sufficient_mp(0.5, 2, 8, 16);
  REQUIRE(got.has_value());
  CHECK(*got == 9);
  CHECK(*got % 2 == 1);
  CHECK(sufficient_mp(0.5, 1, 8, 16) == 1);  // K = 1 concentrates exactly
  CHECK(!sufficient_mp(0.5, 2, 1, 16).has_value());
  CHECK_THROWS(sufficient_mp(0.0, 2, 8, 16));
  CHECK_THROWS(sufficient_mp(0.5, 2, 0, 16));
  CHECK_THROWS(sufficient_mp(0.5, 2, 9, 16));
}

TEST_CASE("harmonic-sum style log factors bracket as expected") {
  // the theorem machinery relies on log(I+1) < H_I <= 1 + log(I); spot-check
  double h = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    h += 1.0 / i;
    if (i == 10 || i == 100 || i == 10000) {
      CHECK(h > std::log(i + 1.0));
      CHECK(h <= 1.0 + std::log(static_cast<double>(i)));
    }
  }
}
