#include <cmath>
#include <random>

#include "bergman/metric.hpp"
#include "bergman/run.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

namespace {

BallPoint sample_point(std::mt19937_64& rng, int n, double max_norm) {
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

}  // namespace

std::vector<std::pair<std::string, bool>> run_selfchecks() {
  std::vector<std::pair<std::string, bool>> out;
  auto check = [&](const char* name, bool ok) { out.emplace_back(name, ok); };

  try {
    check("ln_gamma reproduces factorials and sqrt(pi)",
          std::abs(ln_gamma(5.0) - std::log(24.0)) <= 1e-13 &&
              std::abs(ln_gamma(0.5) - 0.5 * std::log(M_PI)) <= 1e-13);

    {
      const cplx v = hyp_pfq({{1.0, 1.0}, {2.0}}, 0.5);
      check("2F1(1,1;2;1/2) equals 2 log 2", std::abs(v - cplx(2.0 * std::log(2.0))) <= 1e-12);
    }

    {
      const SpaceParams p(1.0, 0.5, 1);
      const auto [nodes, weights] = radial_rule(p, 32);
      double mass = 0.0;
      for (double w : weights) mass += w;
      check("radial rule mass", std::abs(mass - beta(p.b + 1, p.a + 1) / 2.0) <= 1e-13);

      const auto rule = make_rule(p, 64, SpherePlan::circle(256));
      const cplx one = integrate_mu([](std::span<const cplx>) { return cplx(1.0); }, rule);
      check("mu is a probability measure", std::abs(one - cplx(1.0)) <= 1e-12);

      const KernelEvaluator kv(p);
      const BallPoint z({cplx(0.4, -0.3)});
      const cplx rep = integrate_mu(
          [&](std::span<const cplx> w) {
            return w[0] * w[0] * kv(z[0] * std::conj(w[0]));
          },
          rule);
      check("kernel reproduces w^2", std::abs(rep - z[0] * z[0]) <= 1e-8);

      const cplx b1 = berezin([](std::span<const cplx>) { return cplx(1.0); }, z, p, rule);
      check("berezin fixes constants", std::abs(b1 - cplx(1.0)) <= 1e-9);

      check("mean oscillation of a constant vanishes",
            mean_oscillation([](std::span<const cplx>) { return cplx(3.0); }, z, p, rule) <=
                1e-7);

      const auto ev = kernel_scalar(cplx(0.3, 0.2), p);
      check("kernel series agrees with closed form", ev.agreement <= 1e-9);
    }

    {
      std::mt19937_64 rng(17);
      bool ok = true;
      for (int i = 0; i < 20 && ok; ++i) {
        const int n = 1 + i % 3;
        const BallPoint z = sample_point(rng, n, 0.8);
        const BallPoint zeta = sample_point(rng, n, 0.8);
        const BallPoint back = moebius(z, moebius(z, zeta));
        for (int j = 0; j < n; ++j) ok = ok && std::abs(back[j] - zeta[j]) <= 1e-10;
        ok = ok && std::abs(one_minus_phi_sq(z, zeta) -
                            (1.0 - moebius(z, zeta).norm_sq())) <= 1e-12;
      }
      check("moebius involution and norm identity", ok);
    }

    {
      const auto rep = q_poly_roots(SpaceParams(10.0, -1.0, 2));
      check("unique zero of the degree-one factor",
            rep.roots.size() == 1 && std::abs(rep.roots[0] - cplx(-1.0 / 11.0)) <= 1e-12 &&
                rep.disk_count == 1);
      check("argument principle count at small radius",
            count_zeros_disk(SpaceParams(10.0, -1.0, 2), 0.05, 256) == 0);
    }

    {
      std::mt19937_64 rng(23);
      const SpaceParams p(0.5, 2.0, 2);
      bool ok = true;
      for (int i = 0; i < 25 && ok; ++i) {
        const BallPoint z = sample_point(rng, 2, 0.9);
        const auto h = hessian(z, p);
        // eigenvalues of the rank-one-plus-scalar structure
        const auto kd = kernel_derivs(z.norm_sq(), p);
        const double c1 = kd.d1 / kd.value;
        const double c2 = kd.d2 / kd.value - c1 * c1;
        ok = std::min(c1, c1 + c2 * z.norm_sq()) >= -1e-10 * h.trace_real();
      }
      check("metric form is positive semidefinite", ok);
    }

    check("boundedness predicate on the diagonal",
          conditions_C(0.7, -0.2, 0.7, -0.2, 1, 2.0) &&
              !conditions_C(1.0, 0.5, 0.3, 1.0, 3, 1.0));
  } catch (const std::exception&) {
    out.emplace_back("unexpected exception during selfcheck", false);
  }
  return out;
}

}  // namespace bergman
