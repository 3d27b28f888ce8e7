#include "bergman/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bergman {

namespace {

// Jacobi polynomial P_m^{(A,B)} by the three-term recurrence; valid for
// A, B > -1 (so every recurrence coefficient is nonzero for m >= 2).
double jacobi_eval(int m, double A, double B, double x) {
  if (m == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (A - B) + 0.5 * (A + B + 2.0) * x;
  for (int k = 2; k <= m; ++k) {
    const double s = 2.0 * k + A + B;
    const double c1 = 2.0 * k * (k + A + B) * (s - 2.0);
    const double c2 = (s - 1.0) * (A * A - B * B);
    const double c3 = (s - 1.0) * s * (s - 2.0);
    const double c4 = 2.0 * (k + A - 1.0) * (k + B - 1.0) * s;
    const double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
    pm1 = p;
    p = next;
  }
  return p;
}

double jacobi_deriv(int m, double A, double B, double x) {
  if (m == 0) return 0.0;
  return 0.5 * (m + A + B + 1.0) * jacobi_eval(m - 1, A + 1.0, B + 1.0, x);
}

// Nodes of P_m^{(A,B)} on (-1,1): sign-change scan on a cos grid, short
// bisection, then Newton polish (tolerance 1e-14, cap 100 iterations).
std::vector<double> jacobi_roots(int m, double A, double B) {
  const int scan = 8 * m + 32;
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(m));
  double x_prev = std::cos(M_PI * (1.0 - 0.5 / scan));
  double f_prev = jacobi_eval(m, A, B, x_prev);
  for (int j = 1; j < scan; ++j) {
    const double x = std::cos(M_PI * (1.0 - (j + 0.5) / scan));
    const double f = jacobi_eval(m, A, B, x);
    if (f_prev == 0.0) roots.push_back(x_prev);
    if (f_prev * f < 0.0) {
      double lo = x_prev, hi = x, flo = f_prev;
      for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = jacobi_eval(m, A, B, mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      double x0 = 0.5 * (lo + hi);
      bool converged = false;
      for (int it = 0; it < 100; ++it) {
        const double fx = jacobi_eval(m, A, B, x0);
        const double dfx = jacobi_deriv(m, A, B, x0);
        if (dfx == 0.0) break;
        const double step = fx / dfx;
        x0 -= step;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(x0))) {
          converged = true;
          break;
        }
      }
      if (!converged)
        throw std::runtime_error("radial_rule: Newton iteration for Jacobi node failed");
      roots.push_back(x0);
    }
    x_prev = x;
    f_prev = f;
  }
  if (static_cast<int>(roots.size()) != m)
    throw std::runtime_error("radial_rule: node scan missed a Jacobi root");
  return roots;
}

// Deterministic uniforms/normals on top of mt19937_64 so Monte-Carlo
// streams do not depend on the standard library's distribution choices.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

void normal_pair(std::mt19937_64& rng, double& g1, double& g2) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  g1 = r * std::cos(2.0 * M_PI * u2);
  g2 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> radial_rule(const SpaceParams& p, int m) {
  if (m < 1) throw std::domain_error("radial_rule: at least one node required");
  const double A = p.a;
  const double B = p.b + p.n - 1.0;
  const auto x = jacobi_roots(m, A, B);
  // w_i = G_m / ((1-x_i^2) P_m'(x_i)^2) on [-1,1]; mapping x = 2u-1 and
  // u = r^2 multiplies every weight by 2^{-(A+B+1)} / 2.
  const double lgG = (A + B + 1.0) * std::log(2.0) + ln_gamma(m + A + 1.0) +
                     ln_gamma(m + B + 1.0) - ln_gamma(m + 1.0) - ln_gamma(m + A + B + 1.0);
  const double scale = std::exp(lgG - (A + B + 1.0) * std::log(2.0)) / 2.0;
  std::vector<double> nodes(static_cast<std::size_t>(m));
  std::vector<double> weights(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double d = jacobi_deriv(m, A, B, xi);
    nodes[static_cast<std::size_t>(i)] = std::sqrt(0.5 * (1.0 + xi));
    weights[static_cast<std::size_t>(i)] = scale / ((1.0 - xi * xi) * d * d);
  }
  return {std::move(nodes), std::move(weights)};
}

std::pair<std::vector<std::vector<cplx>>, std::vector<double>> sphere_rule(
    int n, const SpherePlan& plan) {
  if (n < 1) throw std::domain_error("sphere_rule: n >= 1 required");
  std::vector<std::vector<cplx>> nodes;
  std::vector<double> weights;
  if (plan.kind == SpherePlan::Kind::CircleNodes) {
    if (n != 1)
      throw std::domain_error("sphere_rule: CircleNodes is a dimension-one plan");
    const std::size_t N = plan.count;
    if (N == 0) throw std::domain_error("sphere_rule: empty plan");
    nodes.reserve(N);
    weights.assign(N, 2.0 * M_PI / static_cast<double>(N));
    for (std::size_t j = 0; j < N; ++j) {
      const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(N);
      nodes.push_back({cplx(std::cos(th), std::sin(th))});
    }
  } else {
    if (plan.count == 0) throw std::domain_error("sphere_rule: empty plan");
    std::mt19937_64 rng(plan.seed);
    const double total = sphere_measure(n);
    nodes.reserve(plan.count);
    weights.assign(plan.count, total / static_cast<double>(plan.count));
    for (std::size_t s = 0; s < plan.count; ++s) {
      std::vector<cplx> xi(static_cast<std::size_t>(n));
      double norm2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double g1, g2;
        normal_pair(rng, g1, g2);
        xi[static_cast<std::size_t>(j)] = cplx(g1, g2);
        norm2 += g1 * g1 + g2 * g2;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& c : xi) c *= inv;
      nodes.push_back(std::move(xi));
    }
  }
  return {std::move(nodes), std::move(weights)};
}

QuadratureRule make_rule(const SpaceParams& p, int radial_count, const SpherePlan& plan) {
  auto [rn, rw] = radial_rule(p, radial_count);
  auto [sn, sw] = sphere_rule(p.n, plan);
  const double mu_norm =
      std::exp(ln_gamma(static_cast<double>(p.n)) - p.n * std::log(M_PI) -
               std::log(beta(p.a + 1.0, p.b + p.n)));
  return QuadratureRule{p,           std::move(rn), std::move(rw), std::move(sn),
                        std::move(sw), plan,          mu_norm};
}

double monte_carlo_std_error(const std::function<double(std::span<const cplx>)>& f,
                             const QuadratureRule& rule) {
  if (rule.plan.kind != SpherePlan::Kind::SeededSphereSample)
    throw std::domain_error("monte_carlo_std_error: rule is deterministic");
  const std::size_t N = rule.sphere_nodes.size();
  const int n = rule.params.n;
  const double mass = sphere_measure(n);
  std::vector<cplx> w(static_cast<std::size_t>(n));
  double mean = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < N; ++s) {
    double g = 0.0;
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
      const double r = rule.radial_nodes[i];
      for (int j = 0; j < n; ++j)
        w[static_cast<std::size_t>(j)] = r * rule.sphere_nodes[s][static_cast<std::size_t>(j)];
      g += rule.radial_weights[i] * f(std::span<const cplx>(w));
    }
    const double h = rule.mu_norm * mass * g;
    const double delta = h - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (h - mean);
  }
  if (N < 2) return 0.0;
  const double var = m2 / static_cast<double>(N - 1);
  return std::sqrt(var / static_cast<double>(N));
}

}  // namespace bergman
