// Acceptance suite: every criterion prints one PASS/FAIL line with the
// measured quantities and wall time; the process exits nonzero if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/metric.hpp"
#include "bergman/run.hpp"
#include "bergman/zeros.hpp"

using namespace bergman;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

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

std::vector<MultiIndex> indices_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  if (n == 1) {
    for (int k = 0; k <= max_order; ++k) out.push_back(MultiIndex({k}));
  } else {
    for (int k = 0; k <= max_order; ++k)
      for (int i = 0; i <= k; ++i) out.push_back(MultiIndex({i, k - i}));
  }
  return out;
}

// --- criterion 1 ----------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const SpaceParams p(10.0, -1.0, 2);
  const auto rep = q_poly_roots(p);
  std::vector<cplx> inside;
  for (const cplx& r : rep.roots)
    if (std::abs(r) < 1.0) inside.push_back(r);
  const int count = count_zeros_disk(p, 0.99, 1024);
  const double err = inside.size() == 1 ? std::abs(inside[0] - cplx(-1.0 / 11.0)) : 1e9;
  o.pass = inside.size() == 1 && err <= 1e-9 && count == 1;
  std::ostringstream ss;
  ss << "roots in disk " << inside.size() << ", |root+1/11| = " << err
     << ", winding count " << count;
  o.detail = ss.str();
  return o;
}

// --- criterion 2 ----------------------------------------------------------

Outcome criterion_2() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.0, 0.5, 2.0}) {
    const SpaceParams p(a, 0.0, 1);
    for (int j = 0; j < 100; ++j) {
      const double r = 0.9 * j / 99.0;
      const double th = 2.0 * M_PI * j * 0.6180339887498949;
      const cplx xi = r * std::exp(cplx(0.0, th));
      const auto ev = kernel_scalar(xi, p);
      const cplx oracle = std::pow(cplx(1.0) - xi, -(a + 2.0));
      worst = std::max(worst, std::abs(ev.value - oracle) / std::abs(oracle));
      worst = std::max(worst, std::abs(ev.via_series - oracle) / std::abs(oracle));
    }
  }
  o.pass = worst <= 1e-10;
  std::ostringstream ss;
  ss << "worst relative deviation " << worst;
  o.detail = ss.str();
  return o;
}

// --- criterion 3 ----------------------------------------------------------

// exact sphere integral of xi^alpha conj(xi)^gamma for n = 2 through the
// torus product form: phases by trapezoid (exact for low trig degree),
// modulus by the library radial rule mapped to u = r^2
double sphere_cross_moment_n2(const MultiIndex& alpha, const MultiIndex& gamma) {
  const int phases = 16;
  const auto [un, uw] = radial_rule(SpaceParams(0.0, 0.0, 1), 8);
  double total = 0.0;
  for (int i1 = 0; i1 < phases; ++i1)
    for (int i2 = 0; i2 < phases; ++i2)
      for (std::size_t iu = 0; iu < un.size(); ++iu) {
        const double u = un[iu] * un[iu];
        const double th1 = 2.0 * M_PI * i1 / phases;
        const double th2 = 2.0 * M_PI * i2 / phases;
        const std::vector<cplx> xi = {std::sqrt(u) * std::exp(cplx(0.0, th1)),
                                      std::sqrt(1.0 - u) * std::exp(cplx(0.0, th2))};
        const cplx v = monomial(xi, alpha) * std::conj(monomial(xi, gamma));
        // d(sigma) = (2 pi^2) * du * dtheta1/(2pi) * dtheta2/(2pi)
        total += 2.0 * uw[iu] * v.real() / (phases * phases);
      }
  return 2.0 * M_PI * M_PI * total;
}

Outcome criterion_3() {
  Outcome o;
  double worst_norm = 0.0, worst_cross = 0.0;
  for (const auto& ab : {std::pair{0.0, 0.0}, std::pair{1.0, -0.5}, std::pair{0.5, 2.0}}) {
    for (int n : {1, 2}) {
      const SpaceParams p(ab.first, ab.second, n);
      const auto idx = indices_up_to(n, 4);
      if (n == 1) {
        const auto rule = make_rule(p, 64, SpherePlan::circle(64));
        for (const auto& alpha : idx) {
          const double nf = basis_norm_factor(alpha, p);
          for (const auto& gamma : idx) {
            const double ng = basis_norm_factor(gamma, p);
            const cplx ip = integrate_mu(
                [&](std::span<const cplx> w) {
                  return nf * monomial(w, alpha) * std::conj(ng * monomial(w, gamma));
                },
                rule);
            if (alpha == gamma)
              worst_norm = std::max(worst_norm, std::abs(std::sqrt(ip.real()) - 1.0));
            else
              worst_cross = std::max(worst_cross, std::abs(ip));
          }
        }
      } else {
        const auto [rn, rw] = radial_rule(p, 64);
        const double mu_norm =
            std::exp(ln_gamma(2.0) - 2.0 * std::log(M_PI) -
                     std::log(beta(p.a + 1.0, p.b + 2.0)));
        for (const auto& alpha : idx) {
          const double nf = basis_norm_factor(alpha, p);
          for (const auto& gamma : idx) {
            const double ng = basis_norm_factor(gamma, p);
            const int deg = (alpha.order() + gamma.order());
            double radial = 0.0;
            for (std::size_t i = 0; i < rn.size(); ++i)
              radial += rw[i] * std::pow(rn[i], deg);
            const double ip =
                nf * ng * mu_norm * radial * sphere_cross_moment_n2(alpha, gamma);
            if (alpha == gamma)
              worst_norm = std::max(worst_norm, std::abs(std::sqrt(ip) - 1.0));
            else
              worst_cross = std::max(worst_cross, std::abs(ip));
          }
        }
      }
    }
  }
  o.pass = worst_norm <= 1e-8 && worst_cross <= 1e-8;
  std::ostringstream ss;
  ss << "worst |norm-1| = " << worst_norm << ", worst cross product = " << worst_cross;
  o.detail = ss.str();
  return o;
}

// --- criterion 4 ----------------------------------------------------------

Outcome criterion_4() {
  Outcome o;
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = make_rule(p, 96, SpherePlan::circle(256));
  std::mt19937_64 rng(20240814);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> coef(6);
    for (auto& c : coef) c = cplx(u(rng), u(rng));
    auto fval = [&](cplx w) {
      cplx acc = coef.back();
      for (std::size_t j = coef.size() - 1; j-- > 0;) acc = acc * w + coef[j];
      return acc;
    };
    for (int k = 0; k < 10; ++k) {
      const BallPoint z = random_point(rng, 1, 0.7);
      const cplx got =
          project([&](std::span<const cplx> w) { return fval(w[0]); }, z, p, rule);
      const cplx expect = fval(z[0]);
      worst = std::max(worst, std::abs(got - expect) / (1.0 + std::abs(expect)));
    }
  }
  o.pass = worst <= 1e-7;
  std::ostringstream ss;
  ss << "worst |project(f,z) - f(z)|/(1+|f(z)|) = " << worst;
  o.detail = ss.str();
  return o;
}

// --- criterion 5 ----------------------------------------------------------

Outcome criterion_5() {
  Outcome o;
  const std::vector<SpaceParams> sets = {
      SpaceParams(-0.5, 0.7, 1),  SpaceParams(-0.2, -0.3, 1), SpaceParams(0.3, 2.0, 1),
      SpaceParams(0.8, -0.9, 1),  SpaceParams(1.31, 0.47, 1), SpaceParams(-0.5, 1.1, 2),
      SpaceParams(0.6, -1.4, 2),  SpaceParams(1.9, 0.2, 2),   SpaceParams(-0.4, -2.5, 3),
      SpaceParams(2.5, 3.0, 2)};
  SeriesControl ctrl;
  ctrl.max_terms = 5000000;
  ctrl.rel_tol = 3e-15;
  double worst = 0.0;
  for (const auto& p : sets) {
    const double series = q_ab(cplx(1.0, 0.0), p, ctrl).real();
    const double oracle = q_ab_at_one(p);
    worst = std::max(worst, std::abs(series - oracle) / std::abs(oracle));
  }
  o.pass = worst <= 1e-8;
  std::ostringstream ss;
  ss << "worst relative gap to the closed form = " << worst;
  o.detail = ss.str();
  return o;
}

// --- criterion 6 ----------------------------------------------------------

Outcome criterion_6() {
  Outcome o;
  const SpaceParams p(1.0, 0.5, 1);
  SeriesControl ctrl;
  ctrl.max_terms = 2000000;
  std::ostringstream ss;
  bool ok = true;
  for (double s : {-0.5, 0.0, 0.5}) {
    std::vector<std::pair<double, double>> profile;
    for (int k = 4; k <= 10; ++k) {
      const double t = 1.0 - std::pow(2.0, -k);
      profile.emplace_back(t, i_s(BallPoint({cplx(std::sqrt(t), 0.0)}), s, p, ctrl));
    }
    const auto rep = classify_growth(profile, s);
    const char* want = s < 0.0 ? "Bounded" : (s == 0.0 ? "Logarithmic" : "Power");
    const char* got = rep.regime == GrowthRegime::Bounded
                          ? "Bounded"
                          : rep.regime == GrowthRegime::Logarithmic ? "Logarithmic" : "Power";
    bool this_ok = std::string(want) == got && rep.fit_quality <= 0.2;
    if (s > 0.0) this_ok = this_ok && std::abs(rep.exponent - 0.5) <= 0.1;
    ok = ok && this_ok;
    ss << "s=" << s << ":" << got << " q=" << rep.fit_quality;
    if (s > 0.0) ss << " e=" << rep.exponent;
    ss << "; ";
  }
  // closed form against direct quadrature
  const auto rule = make_rule(p, 128, SpherePlan::circle(1024));
  double worst = 0.0;
  for (double s : {-0.5, 0.0, 0.5})
    for (double r : {0.4, 0.8}) {
      const BallPoint z({cplx(r, 0.0)});
      const double closed = i_s(z, s, p, ctrl);
      const double expo = 0.5 * (p.a + p.n + 1.0 + s);
      const cplx direct = integrate_lebesgue(
          [&](std::span<const cplx> w) {
            const double w2 = std::norm(w[0]);
            const cplx ip = z[0] * std::conj(w[0]);
            return std::pow(1.0 - w2, p.a) * std::pow(w2, p.b) *
                   std::pow(std::norm(cplx(1.0) - ip), -expo);
          },
          rule);
      worst = std::max(worst, std::abs(direct.real() - closed) / closed);
    }
  ok = ok && worst <= 1e-6;
  ss << "quadrature gap " << worst;
  o.pass = ok;
  o.detail = ss.str();
  return o;
}

// --- criterion 7 ----------------------------------------------------------

Outcome criterion_7() {
  Outcome o;
  std::mt19937_64 rng(31415);
  double worst_inv = 0.0, worst_id = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const BallPoint z = random_point(rng, n, 0.85);
    const BallPoint zeta = random_point(rng, n, 0.85);
    const BallPoint back = moebius(z, moebius(z, zeta));
    for (int j = 0; j < n; ++j)
      worst_inv = std::max(worst_inv, std::abs(back[j] - zeta[j]));
    worst_id = std::max(worst_id, std::abs(one_minus_phi_sq(z, zeta) -
                                           (1.0 - moebius(z, zeta).norm_sq())));
  }
  o.pass = worst_inv <= 1e-10 && worst_id <= 1e-10;
  std::ostringstream ss;
  ss << "worst involution error " << worst_inv << ", worst identity error " << worst_id;
  o.detail = ss.str();
  return o;
}

// --- criterion 8 ----------------------------------------------------------

Outcome criterion_8() {
  Outcome o;
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = make_rule(p, 96, SpherePlan::circle(256));

  auto radial = make_curve(
      [](double t) { return BallPoint({cplx(0.5 * t, 0.0)}); }, 65,
      [](double) { return std::vector<cplx>{cplx(0.5, 0.0)}; });
  auto circular = make_curve(
      [](double t) { return BallPoint({0.5 * std::exp(cplx(0.0, 2.0 * M_PI * t))}); }, 65,
      [](double t) {
        return std::vector<cplx>{0.5 * cplx(0.0, 2.0 * M_PI) *
                                 std::exp(cplx(0.0, 2.0 * M_PI * t))};
      });
  double worst_rel = 0.0;
  for (double t : {0.25, 0.5, 0.75}) {
    const auto [l1, r1] = projection_residual_check(radial, t, p, rule);
    worst_rel = std::max(worst_rel, std::abs(l1 - r1) / r1);
    const auto [l2, r2] = projection_residual_check(circular, t, p, rule);
    worst_rel = std::max(worst_rel, std::abs(l2 - r2) / r2);
  }

  std::mt19937_64 rng(8888);
  double worst_eig = 0.0;  // most negative eigenvalue relative to trace
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 2;
    const SpaceParams pn(1.0, 0.5, n);
    const BallPoint z = random_point(rng, n, 0.9);
    const auto kd = kernel_derivs(z.norm_sq(), pn);
    const double c1 = kd.d1 / kd.value;
    const double c2 = kd.d2 / kd.value - c1 * c1;
    const double min_eig = std::min(c1, c1 + c2 * z.norm_sq());
    const double trace = n * c1 + c2 * z.norm_sq();
    worst_eig = std::min(worst_eig, min_eig / trace);
  }
  o.pass = worst_rel <= 1e-5 && worst_eig >= -1e-10;
  std::ostringstream ss;
  ss << "worst |lhs-rhs|/rhs = " << worst_rel << ", worst eigenvalue/trace = " << worst_eig;
  o.detail = ss.str();
  return o;
}

// --- criterion 9 ----------------------------------------------------------

Outcome criterion_9() {
  Outcome o;
  const SpaceParams p(1.0, 0.5, 1);
  const auto rule = make_rule(p, 64, SpherePlan::circle(192));
  auto f = [](std::span<const cplx> w) { return cplx(w[0].real()); };
  std::mt19937_64 rng(777333);
  int holds = 0;
  double worst_margin = 1e9;
  for (int trial = 0; trial < 20; ++trial) {
    const BallPoint z = random_point(rng, 1, 0.7);
    const BallPoint w = random_point(rng, 1, 0.7);
    const auto [gap, bound] = lipschitz_check(f, z, w, p, rule);
    if (gap <= bound) ++holds;
    if (gap > 0.0) worst_margin = std::min(worst_margin, bound / std::max(gap, 1e-300));
  }
  o.pass = holds == 20;
  std::ostringstream ss;
  ss << holds << "/20 pairs satisfy gap <= bound, min bound/gap = " << worst_margin;
  o.detail = ss.str();
  return o;
}

// --- criterion 10 ---------------------------------------------------------

Outcome criterion_10() {
  Outcome o;
  const SpaceParams p(1.0, 0.5, 1);
  // quadrature budget: 400 Gauss-Jacobi radial nodes x 8192 circle nodes
  const auto rule = make_rule(p, 400, SpherePlan::circle(8192));
  const UnitVector xi({cplx(1.0, 0.0)});
  const auto gaps = berezin_boundary_gap(
      [](std::span<const cplx> w) { return cplx(w[0].real()); }, xi, {0.9, 0.99, 0.999}, p,
      rule);
  o.pass = gaps[1] < gaps[0] && gaps[2] < gaps[1] && gaps[2] <= 0.05;
  std::ostringstream ss;
  ss << "gaps " << gaps[0] << " > " << gaps[1] << " > " << gaps[2] << " (<= 0.05)";
  o.detail = ss.str();
  return o;
}

// --- criterion 11 ---------------------------------------------------------

Outcome criterion_11() {
  Outcome o;
  const LemniscateSpec spec(2.0);
  std::vector<double> medians;
  double worst_residual_ratio = 0.0;
  std::size_t roots_at_50 = 0;
  for (int m : {10, 20, 50}) {
    const SpaceParams p(m - 1.0, 2.0 * m + 1.0, 1);
    const auto rep = q_poly_roots(p);
    const auto stats = cluster_distance(rep, spec, 1024);
    medians.push_back(stats.median.value_or(1e9));
    if (m == 50) {
      roots_at_50 = rep.roots.size();
      const double maxcoef = q_poly_coeffs(p).max_coeff();
      for (double r : rep.residuals)
        worst_residual_ratio = std::max(worst_residual_ratio, r / maxcoef);
    }
  }
  RunConfig cfg;
  cfg.command = RunConfig::Command::Figure2;
  cfg.m = 50;
  cfg.tau = 2.0;
  std::ostringstream out1, out2;
  const int s1 = run(cfg, out1);
  const int s2 = run(cfg, out2);
  const bool deterministic = s1 == 0 && s2 == 0 && out1.str() == out2.str();

  o.pass = medians[1] < medians[0] && medians[2] < medians[1] && roots_at_50 == 50 &&
           worst_residual_ratio <= 1e-8 && deterministic;
  std::ostringstream ss;
  ss << "medians " << medians[0] << " > " << medians[1] << " > " << medians[2] << ", "
     << roots_at_50 << " roots, worst residual/maxcoef = " << worst_residual_ratio
     << ", figure2 deterministic = " << (deterministic ? "yes" : "no");
  o.detail = ss.str();
  return o;
}

// --- criterion 12 ---------------------------------------------------------

Outcome criterion_12() {
  Outcome o;
  const int near_zero = count_zeros_disk(SpaceParams(10.0, -0.01, 2), 0.999, 4096);
  const int near_minus_n = count_zeros_disk(SpaceParams(10.0, -1.9, 2), 0.999, 4096);
  o.pass = near_zero == 0 && near_minus_n >= 1;
  std::ostringstream ss;
  ss << "winding count " << near_zero << " at b=-0.01, " << near_minus_n << " at b=-1.9";
  o.detail = ss.str();
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "single zero of the degree-one kernel factor", 1.0, criterion_1},
      {2, "classical-case reduction at b=0", 1.0, criterion_2},
      {3, "orthonormal basis at 64 radial nodes", 30.0, criterion_3},
      {4, "projection reproduces holomorphic polynomials", 30.0, criterion_4},
      {5, "kernel factor at the boundary point", 10.0, criterion_5},
      {6, "growth regimes of the weighted integral", 600.0, criterion_6},
      {7, "ball involution identities", 600.0, criterion_7},
      {8, "metric consistency of the projected velocity", 600.0, criterion_8},
      {9, "oscillation bound on transform differences", 600.0, criterion_9},
      {10, "boundary continuity of the transform", 600.0, criterion_10},
      {11, "lemniscate clustering of polynomial zeros", 10.0, criterion_11},
      {12, "zero counts across the b range", 600.0, criterion_12},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.time_limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %2d: %s (%s; %.2f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, out.detail.c_str(), elapsed,
                in_time ? "" : " OVER TIME LIMIT");
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
