#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "soil/fit.hpp"

using namespace soil;

TEST_CASE("ols on an exact linear relation recovers the slope and floors sigma") {
  Dataset d;
  d.X.resize(6, 1);
  d.X << 1, 2, 3, 4, 5, 6;
  d.y = 2.0 * d.X.col(0);
  const std::vector<int> support{0};
  const LinearFit fit = ols_fit(d, support);
  CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-18));
  CHECK(fit.sigma_hat == kSigmaFloor);
}

TEST_CASE("ols with empty support is the intercept-only model") {
  Dataset d;
  d.X.resize(5, 2);
  d.X.setRandom();
  d.y.resize(5);
  d.y << 1, 2, 3, 4, 10;
  const LinearFit fit = ols_fit(d, {});
  CHECK(fit.intercept == doctest::Approx(d.y.mean()).epsilon(1e-14));
  const double pop_var = (d.y.array() - d.y.mean()).square().sum() / 5.0;
  CHECK(fit.sigma_hat * fit.sigma_hat == doctest::Approx(pop_var).epsilon(1e-12));
}

TEST_CASE("ols matches the normal-equations oracle on random instances") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = testkit::random_regression(rng, 20, 3);
    const std::vector<int> support{0, 1, 2};
    const LinearFit fit = ols_fit(d, support);
    const Eigen::VectorXd oracle = testkit::normal_equations_ols(d.X, d.y);
    CHECK(std::abs(fit.intercept - oracle[0]) < 1e-10);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(fit.coefficients[j] - oracle[j + 1]) < 1e-10);
  }
}

TEST_CASE("ols residuals are orthogonal to the fitted design") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = testkit::random_regression(rng, 40, 5);
    const std::vector<int> support{0, 2, 4};
    const LinearFit fit = ols_fit(d, support);
    Eigen::VectorXd resid(d.n());
    for (Eigen::Index i = 0; i < d.n(); ++i)
      resid[i] = d.y[i] - linear_predict_row(d.X, i, fit, support);
    CHECK(std::abs(resid.sum()) < 1e-8);
    for (const int j : support) CHECK(std::abs(d.X.col(j).dot(resid)) < 1e-8);
  }
}

TEST_CASE("ols rejects singular and overparameterized designs") {
  Dataset d;
  d.X.resize(10, 2);
  for (int i = 0; i < 10; ++i) {
    d.X(i, 0) = i;
    d.X(i, 1) = 2.0 * i;  // exact duplicate direction
  }
  d.y = Eigen::VectorXd::LinSpaced(10, 0, 9);
  const std::vector<int> both{0, 1};
  try {
    ols_fit(d, both);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rank_deficient);
  }

  Dataset tiny;
  tiny.X.resize(3, 4);
  tiny.X.setRandom();
  tiny.y.resize(3);
  tiny.y.setRandom();
  const std::vector<int> wide{0, 1, 2, 3};
  try {
    ols_fit(tiny, wide);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_many_variables);
  }
}

TEST_CASE("intercept-only logistic fit hits the closed form logit") {
  Dataset d;
  d.X.resize(10, 1);
  d.X.setZero();
  d.y.resize(10);
  d.y << 1, 1, 1, 1, 1, 1, 1, 0, 0, 0;  // 7 of 10
  d.task = Task::classification;
  const LogisticFit fit = logistic_fit(d, {});
  CHECK(fit.intercept == doctest::Approx(std::log(0.7 / 0.3)).epsilon(1e-8));
  CHECK_FALSE(fit.separation);
}

TEST_CASE("perfectly separated data is flagged with near-zero deviance") {
  Dataset d;
  d.X.resize(6, 1);
  d.X << -0.3, -0.2, -0.1, 0.1, 0.2, 0.3;
  d.y.resize(6);
  d.y << 0, 0, 0, 1, 1, 1;
  d.task = Task::classification;
  const LogisticFit fit = logistic_fit(d, std::vector<int>{0});
  CHECK(fit.separation);
  CHECK(fit.log_likelihood > -1e-6);
}

TEST_CASE("logistic gradient vanishes at the IRLS solution") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset d = testkit::random_classification_balanced(rng, 50, 2, 0.8);
    const std::vector<int> support{0, 1};
    const LogisticFit fit = logistic_fit(d, support);
    if (fit.separation) continue;

    // central finite differences of the Bernoulli log-likelihood
    auto loglik = [&](double b0, double b1, double b2) {
      double ll = 0.0;
      for (Eigen::Index i = 0; i < d.n(); ++i) {
        const double eta = b0 + b1 * d.X(i, 0) + b2 * d.X(i, 1);
        ll += d.y[i] * eta - std::log1p(std::exp(eta));
      }
      return ll;
    };
    const double h = 1e-5;
    const double b0 = fit.intercept, b1 = fit.coefficients[0], b2 = fit.coefficients[1];
    const double g0 = (loglik(b0 + h, b1, b2) - loglik(b0 - h, b1, b2)) / (2 * h);
    const double g1 = (loglik(b0, b1 + h, b2) - loglik(b0, b1 - h, b2)) / (2 * h);
    const double g2 = (loglik(b0, b1, b2 + h) - loglik(b0, b1, b2 - h)) / (2 * h);
    CHECK(std::abs(g0) < 1e-6);
    CHECK(std::abs(g1) < 1e-6);
    CHECK(std::abs(g2) < 1e-6);
  }
}

TEST_CASE("logistic fit requires both classes") {
  Dataset d;
  d.X.resize(8, 1);
  d.X.setRandom();
  d.y = Eigen::VectorXd::Ones(8);
  d.task = Task::classification;
  try {
    logistic_fit(d, std::vector<int>{0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::one_class_only);
  }
}
