#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grf/stats.hpp"
#include "test_support.hpp"

using namespace grf;

TEST_CASE("rigged constant fields estimate to c^2") {
  // One unit draw on the zero mode, flat density: every sample is the same
  // constant field, so the covariance estimate is exactly c^2 at every lag.
  const GridSpec grid({1.0}, {8});
  const grf_test::ConstantDensity density(4.0, 1);
  const std::uint64_t draws = count_draws(grid, Algorithm::one_fft_recursive);
  const StreamFactory impulse = [draws](std::uint64_t) {
    std::vector<double> v(static_cast<std::size_t>(draws), 0.0);
    v[0] = 1.0;
    return std::make_unique<FixedStream>(std::move(v));
  };
  const CovarianceEstimate est = estimate_covariance(
      grid, density, Algorithm::one_fft_recursive, 50, MultiIndex{3}, impulse);
  const double c = std::sqrt(grf_test::two_pi_pow(1) * 4.0 / grid.domain_volume());
  for (double v : est.estimates) CHECK(v == doctest::Approx(c * c).epsilon(1e-12));
}

TEST_CASE("flat density decorrelates off the reference") {
  const GridSpec grid({1.0}, {16});
  const double c = 1.5;
  const grf_test::ConstantDensity density(c, 1);
  const std::uint64_t m = 40000;
  const CovarianceEstimate est =
      estimate_covariance(grid, density, Algorithm::two_fft, m, MultiIndex{0}, 17);
  const double at_zero =
      c * grf_test::two_pi_pow(1) * static_cast<double>(grid.point_count()) / grid.domain_volume();
  const double tol = 5.0 * at_zero / std::sqrt(static_cast<double>(m));
  CHECK(std::abs(est.estimates[0] - at_zero) < tol);
  for (std::size_t i = 1; i < est.estimates.size(); ++i) CHECK(std::abs(est.estimates[i]) < tol);
}

TEST_CASE("estimates are reproducible for any worker count") {
  const GridSpec grid({2.0 * std::numbers::pi}, {16}, {-std::numbers::pi});
  const Test1dDensity density;
  const CovarianceEstimate a =
      estimate_covariance(grid, density, Algorithm::one_fft_overwrite, 3000, MultiIndex{8}, 9, 1);
  const CovarianceEstimate b =
      estimate_covariance(grid, density, Algorithm::one_fft_overwrite, 3000, MultiIndex{8}, 9, 4);
  const CovarianceEstimate c =
      estimate_covariance(grid, density, Algorithm::one_fft_overwrite, 3000, MultiIndex{8}, 9, 7);
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    CHECK(a.estimates[i] == b.estimates[i]);  // bitwise
    CHECK(a.estimates[i] == c.estimates[i]);
  }
}

TEST_CASE("max_error against an oracle") {
  const GridSpec grid({1.0}, {4});
  CovarianceEstimate est{grid, {0}, {1.0, 2.0, 3.0, 4.0}, 1, 0};
  const auto oracle = [](std::span<const double> x) { return 10.0 * x[0]; };
  // oracle values at x = 0, 0.25, 0.5, 0.75 are 0, 2.5, 5, 7.5
  CHECK(max_error(est, oracle) == doctest::Approx(3.5));
  const auto exact = [&](std::span<const double> x) {
    return est.estimates[static_cast<std::size_t>(std::lround(x[0] * 4.0))];
  };
  CHECK(max_error(est, exact) == 0.0);

  CovarianceEstimate shifted = est;
  shifted.estimates[2] += 0.01;
  CHECK(max_error(shifted, exact) == doctest::Approx(0.01));
}

TEST_CASE("slope fitting") {
  // exact power law e = cells^{-4}
  const std::vector<double> x{2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double v : x) y.push_back(-4.0 * v);
  const auto slope = fit_slope(x, y);
  REQUIRE(slope.has_value());
  CHECK(*slope == doctest::Approx(-4.0).epsilon(1e-12));

  CHECK_FALSE(fit_slope(std::vector<double>{1.0}, std::vector<double>{2.0}).has_value());
  CHECK_FALSE(fit_slope(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}).has_value());
}

TEST_CASE("convergence study basics") {
  CHECK_THROWS_AS(convergence_study(1, 4, 100, Algorithm::two_fft, 0), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(2, 13, 100, Algorithm::two_fft, 0), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(5, 3, 100, Algorithm::two_fft, 0), std::invalid_argument);

  const ConvergenceReport single =
      convergence_study(2, 2, 400, Algorithm::one_fft_recursive, 12);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].level == 2);
  CHECK(single.rows[0].cells == 4);
  CHECK(single.rows[0].mc_floor == doctest::Approx(2.0 / 20.0));
  CHECK_FALSE(single.fitted_slope.has_value());  // degenerate: no fit

  // floor = 0.02 at M = 1e4, so 3*floor = 0.06 keeps level 4 (e ~ 0.073) in the fit
  const ConvergenceReport r = convergence_study(2, 4, 10000, Algorithm::one_fft_recursive, 12);
  REQUIRE(r.rows.size() == 3);
  // discretization error dominates these coarse levels: monotone decrease
  CHECK(r.rows[0].max_err > r.rows[1].max_err);
  CHECK(r.rows[1].max_err > r.rows[2].max_err);
  // known truncation levels: e^2 ~ 0.615, e^3 ~ 0.328, e^4 ~ 0.073
  CHECK(r.rows[0].max_err == doctest::Approx(0.615).epsilon(0.15));
  CHECK(r.rows[1].max_err == doctest::Approx(0.328).epsilon(0.2));
  CHECK(r.rows[2].max_err == doctest::Approx(0.073).epsilon(0.8));
  REQUIRE(r.fitted_slope.has_value());
  CHECK(r.fitted_levels.size() == 3);
}

TEST_CASE("error shrinks like 1/sqrt(M) once the floor dominates") {
  // Level 6 discretization error is ~6e-5, far below these Monte Carlo
  // floors, so e is pure sampling noise.
  double ratio_sum = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const std::uint64_t m = 2000;
    const ConvergenceReport small =
        convergence_study(6, 6, m, Algorithm::one_fft_recursive, 100 + rep);
    const ConvergenceReport big =
        convergence_study(6, 6, 4 * m, Algorithm::one_fft_recursive, 200 + rep);
    ratio_sum += big.rows[0].max_err / small.rows[0].max_err;
  }
  const double mean_ratio = ratio_sum / 3.0;
  CHECK(mean_ratio > 0.35);
  CHECK(mean_ratio < 0.7);
}

TEST_CASE("estimator is unbiased at the reference") {
  const GridSpec grid({2.0 * std::numbers::pi}, {16}, {-std::numbers::pi});
  const Test1dDensity density;
  const double exact = exact_discrete_covariance(grid, density, MultiIndex{0});
  const int reps = 20;
  const std::uint64_t m = 500;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    const CovarianceEstimate est = estimate_covariance(
        grid, density, Algorithm::two_fft, m, MultiIndex{5}, 900 + static_cast<std::uint64_t>(r));
    sum += est.estimates[5];
  }
  const double mean = sum / reps;
  const double se = std::sqrt(2.0) * exact / std::sqrt(static_cast<double>(reps) * m);
  CHECK(std::abs(mean - exact) < 5.0 * se);
}

TEST_CASE("estimates do not depend on the reference point") {
  const GridSpec grid({2.0 * std::numbers::pi}, {16}, {-std::numbers::pi});
  const Test1dDensity density;
  const std::uint64_t m = 20000;
  const CovarianceEstimate a =
      estimate_covariance(grid, density, Algorithm::one_fft_recursive, m, MultiIndex{0}, 55);
  const CovarianceEstimate b =
      estimate_covariance(grid, density, Algorithm::one_fft_recursive, m, MultiIndex{5}, 56);
  const double tol = 5.0 * std::sqrt(2.0) * 2.0 / std::sqrt(static_cast<double>(m));
  for (std::int64_t lag = 0; lag < 16; ++lag) {
    const double ea = a.estimates[static_cast<std::size_t>((0 + lag) % 16)];
    const double eb = b.estimates[static_cast<std::size_t>((5 + lag) % 16)];
    CHECK(std::abs(ea - eb) < tol);
  }
}

TEST_CASE("input validation") {
  const GridSpec grid({1.0}, {8});
  const grf_test::ConstantDensity density(1.0, 1);
  CHECK_THROWS_AS(estimate_covariance(grid, density, Algorithm::two_fft, 0, MultiIndex{0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_covariance(grid, density, Algorithm::two_fft, 10, MultiIndex{9}, 1),
                  std::invalid_argument);
}
