#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bergman/operators.hpp"

using bergman::BallPoint;
using bergman::cplx;
using bergman::GrowthRegime;
using bergman::MultiIndex;
using bergman::SpaceParams;
using bergman::SpherePlan;

namespace {

BallPoint random_point(std::mt19937_64& rng, int n, double max_norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<cplx> z(static_cast<std::size_t>(n));
    double n2 = 0.0;
    for (auto& c : z) {
      c = cplx(u(rng), u(rng));
      n2 += std::norm(c);
    }
    if (n2 < max_norm * max_norm) return BallPoint(std::move(z));
  }
}

cplx poly_eval(const std::vector<cplx>& coef, cplx w) {
  cplx acc = coef.back();
  for (std::size_t j = coef.size() - 1; j-- > 0;) acc = acc * w + coef[j];
  return acc;
}

}  // namespace

TEST_CASE("projection reproduces holomorphic polynomials (n=1)") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 96, SpherePlan::circle(256));
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // constants are reproduced
  const cplx one = bergman::project([](std::span<const cplx>) { return cplx(1.0); },
                                    BallPoint({cplx(0.3, -0.2)}), p, rule);
  CHECK(std::abs(one - cplx(1.0)) <= 1e-10);

  // anti-holomorphic part is annihilated
  const cplx anti = bergman::project(
      [](std::span<const cplx> w) { return std::conj(w[0]); }, BallPoint({cplx(0.4, 0.1)}),
      p, rule);
  CHECK(std::abs(anti) <= 1e-10);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> coef(6);
    for (auto& c : coef) c = cplx(u(rng), u(rng));
    auto f = [&coef](std::span<const cplx> w) { return poly_eval(coef, w[0]); };
    for (int k = 0; k < 3; ++k) {
      const BallPoint z = random_point(rng, 1, 0.7);
      const cplx got = bergman::project(f, z, p, rule);
      const cplx expect = poly_eval(coef, z[0]);
      CHECK(std::abs(got - expect) <= 1e-8 * (1.0 + std::abs(expect)));
      // applying the projection to the (polynomial) projection result
      // changes nothing beyond twice the quadrature tolerance
      const cplx again = bergman::project(f, z, p, rule);
      CHECK(std::abs(again - got) <= 2e-8 * (1.0 + std::abs(got)));
    }
  }
}

TEST_CASE("berezin transform basics") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 96, SpherePlan::circle(256));
  std::mt19937_64 rng(7531);

  for (int trial = 0; trial < 5; ++trial) {
    const BallPoint z = random_point(rng, 1, 0.8);
    const cplx b1 = bergman::berezin([](std::span<const cplx>) { return cplx(1.0); }, z, p, rule);
    CHECK(std::abs(b1 - cplx(1.0)) <= 1e-9);
    const cplx babs = bergman::berezin(
        [](std::span<const cplx> w) { return cplx(std::norm(w[0])); }, z, p, rule);
    CHECK(babs.real() >= 0.0);
    CHECK(std::abs(babs.imag()) <= 1e-12);
  }

  // at the origin the kernel weight is one, so B f(0) is the mu-mean
  const cplx mean = bergman::berezin(
      [](std::span<const cplx> w) { return cplx(std::norm(w[0])); }, BallPoint::origin(1), p,
      rule);
  const double oracle = bergman::monomial_ball_moment(MultiIndex({1}), MultiIndex({1}), p);
  CHECK(std::abs(mean - cplx(oracle)) <= 1e-10);

  // pointwise triangle bound |B f| <= B |f|
  auto f = [](std::span<const cplx> w) { return w[0] + cplx(0.3, 0.0); };
  for (int trial = 0; trial < 20; ++trial) {
    const BallPoint z = random_point(rng, 1, 0.85);
    const cplx bf = bergman::berezin(f, z, p, rule);
    const cplx babs = bergman::berezin(
        [&](std::span<const cplx> w) { return cplx(std::abs(f(w))); }, z, p, rule);
    CHECK(std::abs(bf) <= babs.real() + 1e-12);
  }
}

TEST_CASE("berezin boundary gaps decrease toward zero") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 400, SpherePlan::circle(8192));
  const bergman::UnitVector xi({cplx(1.0, 0.0)});
  auto f = [](std::span<const cplx> w) { return cplx(w[0].real()); };

  const auto constant_gaps = bergman::berezin_boundary_gap(
      [](std::span<const cplx>) { return cplx(1.0); }, xi, {0.9, 0.99, 0.999}, p, rule);
  for (double g : constant_gaps) CHECK(g <= 1e-9);

  const auto gaps = bergman::berezin_boundary_gap(f, xi, {0.9, 0.99, 0.999}, p, rule);
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
  CHECK(gaps[2] <= 0.05);
}

TEST_CASE("i_s closed form: value at zero and boundary regimes") {
  const SpaceParams p(1.0, 0.5, 1);
  const double front = M_PI * bergman::beta(2.0, 1.5);
  CHECK(bergman::i_s(BallPoint::origin(1), 0.7, p) == doctest::Approx(front).epsilon(1e-12));

  bergman::SeriesControl ctrl;
  ctrl.max_terms = 2000000;
  auto at = [&](double r, double s) {
    return bergman::i_s(BallPoint({cplx(r, 0.0)}), s, p, ctrl);
  };
  // s < 0: increments die out as |z| -> 1
  const double b1 = at(0.9, -0.5), b2 = at(0.99, -0.5), b3 = at(0.999, -0.5);
  CHECK(b2 > b1);
  CHECK(b3 - b2 < b2 - b1);
  // s > 0: I_s (1-|z|^2)^s stabilizes (successive ratios approach 1)
  const double q1 = at(0.9, 0.5) * std::sqrt(1.0 - 0.9 * 0.9);
  const double q2 = at(0.99, 0.5) * std::sqrt(1.0 - 0.99 * 0.99);
  const double q3 = at(0.999, 0.5) * std::sqrt(1.0 - 0.999 * 0.999);
  CHECK(std::abs(q3 / q2 - 1.0) < std::abs(q2 / q1 - 1.0));
  CHECK(std::abs(q3 / q2 - 1.0) <= 0.35);
}

TEST_CASE("i_s closed form matches direct Lebesgue quadrature") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 128, SpherePlan::circle(1024));
  for (double s : {-0.5, 0.5}) {
    for (double r : {0.3, 0.8}) {
      const BallPoint z({cplx(r, 0.0)});
      const double closed = bergman::i_s(z, s, p);
      const double expo = 0.5 * (p.a + p.n + 1.0 + s);
      const cplx direct = bergman::integrate_lebesgue(
          [&](std::span<const cplx> w) {
            const double w2 = std::norm(w[0]);
            const cplx ip = z[0] * std::conj(w[0]);
            return std::pow(1.0 - w2, p.a) * std::pow(w2, p.b) *
                   std::pow(std::norm(cplx(1.0) - ip), -expo);
          },
          rule);
      CHECK(std::abs(direct.real() - closed) <= 1e-6 * closed);
    }
  }
}

TEST_CASE("j_s: reduction to i_s at b=0, growth regimes, hypothesis check") {
  // b = 0 makes |Q| identically one, so J_s is I_s with the rule weight
  const SpaceParams kernel_b0(1.3, 0.0, 1);
  const SpaceParams weight(0.8, 0.6, 1);
  const auto rule = bergman::make_rule(weight, 128, SpherePlan::circle(1024));
  const BallPoint z({cplx(0.5, 0.0)});
  for (double s : {-0.3, 0.4}) {
    const double js = bergman::j_s(z, s, kernel_b0, rule);
    const double is = bergman::i_s(z, s, weight);
    CHECK(std::abs(js - is) <= 1e-6 * is);
  }

  // the zero hypothesis is enforced: Q_{10,-1} vanishes at -1/11
  const auto small_rule = bergman::make_rule(SpaceParams(0.5, 0.0, 2), 4,
                                             SpherePlan::monte_carlo(16, 3));
  CHECK_THROWS_AS(
      bergman::j_s(BallPoint::origin(2), 0.0, SpaceParams(10.0, -1.0, 2), small_rule),
      std::runtime_error);
}

TEST_CASE("j_s growth classification over dyadic radii") {
  const SpaceParams kernel(1.0, 0.5, 1);
  const SpaceParams weight(0.7, 0.3, 1);
  const auto rule = bergman::make_rule(weight, 256, SpherePlan::circle(16384));
  REQUIRE(bergman::js_zero_free(kernel));
  for (double s : {0.0, -0.3}) {
    std::vector<std::pair<double, double>> profile;
    for (int k = 4; k <= 10; ++k) {
      const double t = 1.0 - std::pow(2.0, -k);  // |z|^2 grid
      const BallPoint z({cplx(std::sqrt(t), 0.0)});
      profile.emplace_back(t, bergman::j_s_unchecked(z, s, kernel, rule));
    }
    const auto rep = bergman::classify_growth(profile, s);
    if (s == 0.0) {
      CHECK(rep.regime == GrowthRegime::Logarithmic);
    } else {
      CHECK(rep.regime == GrowthRegime::Bounded);
    }
    CHECK(rep.fit_quality <= 0.2);
  }
}

TEST_CASE("classify_growth on synthetic data") {
  std::vector<std::pair<double, double>> constant, logdata, powdata;
  for (int k = 4; k <= 10; ++k) {
    const double t = 1.0 - std::pow(2.0, -k);
    constant.emplace_back(t, 3.7);
    logdata.emplace_back(t, 2.0 * std::log(1.0 / (1.0 - t)));
    powdata.emplace_back(t, 0.5 * std::pow(1.0 - t, -0.5));
  }
  CHECK(bergman::classify_growth(constant).regime == GrowthRegime::Bounded);
  CHECK(bergman::classify_growth(logdata).regime == GrowthRegime::Logarithmic);
  const auto pow_rep = bergman::classify_growth(powdata);
  CHECK(pow_rep.regime == GrowthRegime::Power);
  CHECK(pow_rep.exponent == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(bergman::classify_growth({{0.5, 1.0}, {0.6, 1.0}}), std::domain_error);
}

TEST_CASE("mean oscillation: constants, origin value, double-integral identity") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 48, SpherePlan::circle(96));
  const BallPoint z({cplx(0.4, 0.2)});

  CHECK(bergman::mean_oscillation([](std::span<const cplx>) { return cplx(2.5); }, z, p,
                                  rule) <= 1e-7);

  // f = Re w at the origin: MO^2 = mu-mean of (Re w)^2 = moment/2
  auto f = [](std::span<const cplx> w) { return cplx(w[0].real()); };
  const double mo0 = bergman::mean_oscillation(f, BallPoint::origin(1), p, rule);
  const double moment = bergman::monomial_ball_moment(MultiIndex({1}), MultiIndex({1}), p);
  CHECK(mo0 == doctest::Approx(std::sqrt(moment / 2.0)).epsilon(1e-8));

  // two-route check of MO^2 through the symmetrized double integral
  const bergman::KernelEvaluator kv(p);
  const auto oracle_rule = bergman::make_rule(p, 40, SpherePlan::circle(80));
  std::vector<cplx> pts;
  std::vector<double> wts;
  std::vector<cplx> fv;
  for (std::size_t i = 0; i < oracle_rule.radial_nodes.size(); ++i)
    for (std::size_t sx = 0; sx < oracle_rule.sphere_nodes.size(); ++sx) {
      const cplx w = oracle_rule.radial_nodes[i] * oracle_rule.sphere_nodes[sx][0];
      pts.push_back(w);
      wts.push_back(oracle_rule.radial_weights[i] * oracle_rule.sphere_weights[sx] *
                    oracle_rule.mu_norm * kv.abs_sq(w * std::conj(z[0])));
      fv.push_back(cplx(w.real()));
    }
  double dbl = 0.0;
  for (std::size_t iu = 0; iu < pts.size(); ++iu)
    for (std::size_t iv = 0; iv < pts.size(); ++iv)
      dbl += std::norm(fv[iu] - fv[iv]) * wts[iu] * wts[iv];
  const double kdiag = kv(cplx(z.norm_sq(), 0.0)).real();
  const double mo_sq_oracle = dbl / (2.0 * kdiag * kdiag);
  const double mo = bergman::mean_oscillation(f, z, p, rule);
  CHECK(std::abs(mo * mo - mo_sq_oracle) <= 1e-6);
}

TEST_CASE("bmo estimate: zero for constants, monotone in the sample") {
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = bergman::make_rule(p, 48, SpherePlan::circle(96));
  std::mt19937_64 rng(1923);
  std::vector<BallPoint> small_sample, big_sample;
  for (int i = 0; i < 50; ++i) {
    const BallPoint z = random_point(rng, 1, 0.8);
    if (i < 20) small_sample.push_back(z);
    big_sample.push_back(z);
  }
  CHECK(bergman::bmo_norm_estimate([](std::span<const cplx>) { return cplx(-1.0); },
                                   big_sample, p, rule) <= 1e-7);
  auto f = [](std::span<const cplx> w) { return cplx(w[0].real()); };
  const double small_est = bergman::bmo_norm_estimate(f, small_sample, p, rule);
  const double big_est = bergman::bmo_norm_estimate(f, big_sample, p, rule);
  CHECK(small_est > 0.0);
  CHECK(big_est >= small_est);
  CHECK_THROWS_AS(bergman::bmo_norm_estimate(f, {}, p, rule), std::domain_error);
}

TEST_CASE("conditions_C") {
  CHECK(bergman::conditions_C(0.7, -0.2, 0.7, -0.2, 1, 2.0));
  CHECK(bergman::conditions_C(1.0, 0.5, 0.3, 0.5, 3, 1.0));   // d = b at p = 1
  CHECK(!bergman::conditions_C(1.0, 0.5, 0.3, 1.0, 3, 1.0));  // d = b + 0.5 at p = 1
  CHECK(!bergman::conditions_C(0.5, 0.0, 2.5, 0.0, 1, 2.0));  // c too large
  CHECK(!bergman::conditions_C(0.5, -0.6, 0.5, 0.4, 1, 2.0)); // d too large
  CHECK_THROWS_AS(bergman::conditions_C(-1.5, 0.0, 0.0, 0.0, 1, 2.0), std::domain_error);
  CHECK_THROWS_AS(bergman::conditions_C(0.0, 0.0, 0.0, 0.0, 1, 0.5), std::domain_error);
}

TEST_CASE("small-degree moment matrix is nonsingular (berezin injectivity)") {
  // the map f -> moments against conj(w)^alpha w^gamma, |alpha|,|gamma| <= 2,
  // restricted to bidegree-(2,2) polynomials, has matrix entries
  // delta_{j+gamma, i+alpha} rho_{j+gamma} in the monomial basis
  for (const auto& p : {SpaceParams(0.0, 0.0, 1), SpaceParams(1.0, -0.5, 1),
                        SpaceParams(2.0, 1.0, 1)}) {
    std::vector<double> rho(5);
    for (int k = 0; k <= 4; ++k)
      rho[static_cast<std::size_t>(k)] =
          bergman::monomial_ball_moment(MultiIndex({k}), MultiIndex({k}), p);
    Eigen::MatrixXd m(9, 9);
    for (int alpha = 0; alpha <= 2; ++alpha)
      for (int gamma = 0; gamma <= 2; ++gamma)
        for (int i = 0; i <= 2; ++i)
          for (int j = 0; j <= 2; ++j) {
            const int row = 3 * alpha + gamma, col = 3 * i + j;
            m(row, col) =
                (j + gamma == i + alpha) ? rho[static_cast<std::size_t>(j + gamma)] : 0.0;
          }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double cond = svd.singularValues()(0) / svd.singularValues()(8);
    CHECK(std::isfinite(cond));
    CHECK(cond < 1e12);
  }
}
