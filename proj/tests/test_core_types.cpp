#include <doctest.h>

#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "gaussent/core_types.hpp"
#include "gaussent/presets.hpp"
#include "oracles.hpp"

using namespace gaussent;

TEST_CASE("thermal_environment applies the Gibbs-state coefficient choice") {
  SUBCASE("zero temperature, no cross diffusion") {
    const auto env = thermal_environment(0.1, 1.0, 0.0, 0.0, 1.0, 1.0);
    CHECK(env.diffusion().xx == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(env.diffusion().pxpx == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(env.diffusion().xpx == 0.0);
    CHECK(env.diffusion().pxpy == 0.0);
    CHECK(env.is_thermal());
  }
  SUBCASE("figure environment") {
    const auto env = thermal_environment(0.1, 1.0, 0.0, 0.049);
    CHECK(env == figure_environment(1.0));
    CHECK(env.diffusion().xpy == 0.049);
    CHECK(env.diffusion().xy == 0.0);
  }
  SUBCASE("m = 1, omega = 2, C = 2") {
    const auto env = thermal_environment(0.1, 2.0, 0.01, 0.0, 1.0, 2.0);
    CHECK(env.diffusion().xx == doctest::Approx(0.05));
    CHECK(env.diffusion().pxpx == doctest::Approx(0.2));
    CHECK(env.diffusion().pxpy == doctest::Approx(0.04));
  }
  SUBCASE("rejects bad parameters") {
    CHECK_THROWS_AS(thermal_environment(0.0, 1.0, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(thermal_environment(-0.1, 1.0, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(thermal_environment(0.1, 0.999, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(thermal_environment(0.1, 1.0, 0.0, 0.0, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(thermal_environment(0.1, 1.0, 0.0, 0.0, 1.0, -1.0), InvalidArgument);
  }
}

TEST_CASE("non-thermal environments are recognised") {
  const auto env = EnvironmentSpec::create(1.0, 1.0, 0.1, 1.0, {0.06, 0.0, 0.05, 0.0, 0.0, 0.0});
  CHECK_FALSE(env.is_thermal());
}

TEST_CASE("temperature and thermal parameter convert both ways") {
  CHECK(thermal_c_from_temperature(1.0, 0.0) == 1.0);
  CHECK(temperature_from_thermal_c(1.0, 1.0) == 0.0);
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double c = thermal_c_from_temperature(1.3, t);
    CHECK(c >= 1.0);
    CHECK(temperature_from_thermal_c(1.3, c) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK_THROWS_AS(thermal_c_from_temperature(1.0, -1.0), InvalidArgument);
}

TEST_CASE("drift matrix has eigenvalues -lambda +- i omega") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(0.01, 1.0), w(0.5, 2.0), m(0.5, 2.0);
  for (int k = 0; k < 50; ++k) {
    const auto env = thermal_environment(lam(rng), 1.2, 0.0, 0.0, m(rng), w(rng));
    const Matrix4 y = DriftMatrix(env).matrix();
    // characteristic polynomial ((s + lambda)^2 + omega^2)^2 at a few points
    for (double s : {-1.3, 0.0, 0.7, 2.5}) {
      const double quad = (s + env.lambda()) * (s + env.lambda()) + env.omega() * env.omega();
      const double det = (s * Matrix4::Identity() - y).determinant();
      CHECK(det == doctest::Approx(quad * quad).epsilon(1e-12));
    }
    Eigen::EigenSolver<Matrix4> es(y, false);
    for (int i = 0; i < 4; ++i) {
      CHECK(es.eigenvalues()(i).real() == doctest::Approx(-env.lambda()).epsilon(1e-12));
      CHECK(std::abs(es.eigenvalues()(i).imag()) == doctest::Approx(env.omega()).epsilon(1e-12));
    }
  }
}

TEST_CASE("diffusion matrix is symmetric with mirrored mode coefficients") {
  const auto env = EnvironmentSpec::create(1.0, 1.0, 0.1, 1.0, {1, 2, 3, 4, 5, 6});
  const Matrix4 d = DiffusionMatrix(env).matrix();
  CHECK(asymmetry(d) == 0.0);
  CHECK(d(2, 2) == d(0, 0));
  CHECK(d(3, 3) == d(1, 1));
  CHECK(d(2, 3) == d(0, 1));
  CHECK(d(1, 2) == d(0, 3));
  CHECK(d(1, 3) == 6.0);
}

TEST_CASE("validate_diffusion") {
  SUBCASE("C = 1 without cross terms sits on the boundary") {
    const auto report = validate_diffusion(thermal_environment(0.1, 1.0, 0.0, 0.0));
    CHECK(report.ok());
    CHECK(report.checks.size() == 7);
    CHECK(std::abs(report.checks[0].margin) < 1e-15);
    CHECK(report.advisories().empty());
  }
  SUBCASE("D_xpy = 0.06 breaks D_xx D_pypy >= D_xpy^2") {
    const auto report = validate_diffusion(thermal_environment(0.1, 1.0, 0.0, 0.06));
    CHECK_FALSE(report.ok());
    const auto failures = report.failures();
    REQUIRE(failures.size() == 2);
    CHECK(failures[0] == "D_xx*D_pypy - D_xpy^2 >= 0");
    CHECK(report.checks[4].margin == doctest::Approx(0.0025 - 0.0036));
    CHECK_THROWS_AS(require_valid(report, "env"), PhysicalityError);
  }
  SUBCASE("figure parameters satisfy the six inequalities") {
    const auto report = validate_diffusion(figure_environment(1.0));
    CHECK(report.ok());
    CHECK(report.checks[4].margin == doctest::Approx(0.0025 - 0.002401));
    // the full complex coefficient matrix is indefinite here: advisory only
    REQUIRE(report.advisories().size() == 1);
    Eigen::Matrix4cd h;
    using C = std::complex<double>;
    const C ih{0.0, 0.05};
    h << 0.05, -ih, 0.0, -0.049, ih, 0.05, -0.049, 0.0, 0.0, -0.049, 0.05, -ih, -0.049, 0.0, ih, 0.05;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    CHECK(es.eigenvalues().minCoeff() < 0.0);
  }
  SUBCASE("every thermal environment without cross diffusion passes") {
    for (double c : {1.0, 1.0 + 1e-9, 1.1, 1.5, 2.0, 10.0, 1e3}) {
      for (double lam : {0.01, 0.1, 1.0}) {
        CHECK(validate_diffusion(thermal_environment(lam, c, 0.0, 0.0, 0.7, 1.9)).ok());
      }
    }
  }
}

TEST_CASE("CovarianceMatrix construction and blocks") {
  std::mt19937_64 rng(3);
  const Matrix4 m = oracle::random_symmetric(rng);
  const CovarianceMatrix s(m);
  const CovarianceMatrix back = CovarianceMatrix::from_blocks(s.a(), s.b(), s.c());
  CHECK(back == s);
  CHECK(s.matrix() == m);
  CHECK(CovarianceMatrix::from_upper(s.upper()) == s);

  Matrix4 nearly = m;
  nearly(0, 3) += 5e-13;
  const CovarianceMatrix sym(nearly);
  CHECK(asymmetry(sym.matrix()) == 0.0);
  CHECK(sym(0, 3) == doctest::Approx(m(0, 3) + 2.5e-13).epsilon(1e-15));

  Matrix4 skewed = m;
  skewed(0, 3) += 1e-9;
  CHECK_THROWS_AS(CovarianceMatrix{skewed}, InvalidArgument);
  Matrix4 bad = m;
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(CovarianceMatrix{bad}, InvalidArgument);
}

TEST_CASE("check_physical_state") {
  SUBCASE("vacuum") {
    const auto r = check_physical_state(CovarianceMatrix(0.5 * Matrix4::Identity()));
    CHECK(r.physical());
    CHECK(r.nu_minus_sq == doctest::Approx(0.25));
    CHECK(r.nu_plus_sq == doctest::Approx(0.25));
  }
  SUBCASE("figure 3 initial data is not positive") {
    const auto r = check_physical_state(figure_initial_state(3));
    CHECK_FALSE(r.physical());
    CHECK(r.determinant == doctest::Approx(-25.0 / 576.0).epsilon(1e-14));
    CHECK(r.min_eigenvalue < 0.0);
  }
  SUBCASE("figure 4 initial data violates the uncertainty relation") {
    const auto r = check_physical_state(figure_initial_state(4));
    CHECK_FALSE(r.physical());
  }
  SUBCASE("figure 1 initial data is a pure squeezed product") {
    const auto r = check_physical_state(figure_initial_state(1));
    CHECK(r.physical());
    CHECK(r.min_eigenvalue > 0.0);
    CHECK(r.nu_minus_sq == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("asymmetric raw input is reported, not thrown") {
    Matrix4 m = 0.5 * Matrix4::Identity();
    m(0, 1) = 1e-6;
    const auto r = check_physical_state(m);
    CHECK_FALSE(r.physical());
    CHECK(r.symmetry_residual == doctest::Approx(1e-6));
  }
  SUBCASE("thermal states (C/2) diag(1/mw, mw, 1/mw, mw) are physical") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(1.0, 5.0), mw(0.25, 4.0);
    for (int k = 0; k < 200; ++k) {
      const double cc = k == 0 ? 1.0 : c(rng), s = mw(rng);
      Matrix4 m = Matrix4::Zero();
      m(0, 0) = m(2, 2) = 0.5 * cc / s;
      m(1, 1) = m(3, 3) = 0.5 * cc * s;
      CHECK(check_physical_state(m).physical());
    }
  }
}
