#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "bergman/ball.hpp"

namespace bergman {

/// Angular part of the polar product rule: equally spaced circle nodes in
/// dimension one, seeded uniform sphere samples otherwise.
struct SpherePlan {
  enum class Kind { CircleNodes, SeededSphereSample };
  Kind kind = Kind::CircleNodes;
  std::size_t count = 256;
  std::uint64_t seed = 0;

  static SpherePlan circle(std::size_t count) {
    return SpherePlan{Kind::CircleNodes, count, 0};
  }
  static SpherePlan monte_carlo(std::size_t count, std::uint64_t seed) {
    return SpherePlan{Kind::SeededSphereSample, count, seed};
  }
};

/// Polar product rule for integrals over the ball: radial Gauss-Jacobi
/// nodes/weights for the weight (1-r^2)^a r^{2b+2n-1} dr, and a sphere
/// rule whose weights sum to the total sphere measure 2 pi^n/(n-1)!.
struct QuadratureRule {
  SpaceParams params;
  std::vector<double> radial_nodes;    // r in (0,1)
  std::vector<double> radial_weights;  // absorb the full radial weight
  std::vector<std::vector<cplx>> sphere_nodes;
  std::vector<double> sphere_weights;
  SpherePlan plan;
  double mu_norm;  // (n-1)!/(pi^n beta(a+1, b+n))

  std::size_t grid_size() const { return radial_nodes.size() * sphere_nodes.size(); }
};

/// Gauss-Jacobi rule of m nodes for the radial factor: after x = r^2 the
/// weight becomes x^{b+n-1}(1-x)^a dx/2, so nodes/weights come from the
/// Jacobi polynomial P_m^{(a, b+n-1)}.  Exact for integrands polynomial
/// in r^2 up to degree 2m-1.
std::pair<std::vector<double>, std::vector<double>> radial_rule(const SpaceParams& p, int m);

/// Sphere nodes and weights for dimension n under the given plan.
std::pair<std::vector<std::vector<cplx>>, std::vector<double>> sphere_rule(
    int n, const SpherePlan& plan);

QuadratureRule make_rule(const SpaceParams& p, int radial_count, const SpherePlan& plan);

namespace detail {

// Deterministic fan-out over radial indices; partial sums are combined in
// chunk order so the result does not depend on scheduling.
template <class Body>
cplx radial_parallel_sum(std::size_t m, int threads, Body&& body) {
  if (threads <= 1 || m < 2) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += body(i);
    return total;
  }
  const std::size_t nchunk = std::min<std::size_t>(static_cast<std::size_t>(threads), m);
  std::vector<cplx> partial(nchunk, cplx(0.0));
  std::vector<std::thread> pool;
  pool.reserve(nchunk);
  for (std::size_t c = 0; c < nchunk; ++c) {
    pool.emplace_back([&, c] {
      const std::size_t lo = m * c / nchunk;
      const std::size_t hi = m * (c + 1) / nchunk;
      cplx acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += body(i);
      partial[c] = acc;
    });
  }
  for (auto& t : pool) t.join();
  cplx total = 0.0;
  for (const cplx& v : partial) total += v;
  return total;
}

}  // namespace detail

/// Integral of f against the probability measure d(mu_{a,b}).  The
/// callable receives each grid point as a coordinate span and must be
/// pure; with threads > 1 grid rows are evaluated concurrently.
template <class F>
cplx integrate_mu(F&& f, const QuadratureRule& rule, int threads = 1) {
  const auto& sn = rule.sphere_nodes;
  const auto& sw = rule.sphere_weights;
  const int n = rule.params.n;
  cplx total = detail::radial_parallel_sum(
      rule.radial_nodes.size(), threads, [&](std::size_t i) {
        const double r = rule.radial_nodes[i];
        std::vector<cplx> w(static_cast<std::size_t>(n));
        cplx acc = 0.0;
        for (std::size_t s = 0; s < sn.size(); ++s) {
          for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = r * sn[s][static_cast<std::size_t>(j)];
          acc += sw[s] * f(std::span<const cplx>(w));
        }
        return rule.radial_weights[i] * acc;
      });
  return rule.mu_norm * total;
}

/// Integral of f against the Lebesgue measure on the ball, reusing the
/// weighted grid by dividing out the measure density at each node.
template <class F>
cplx integrate_lebesgue(F&& f, const QuadratureRule& rule, int threads = 1) {
  const auto& sn = rule.sphere_nodes;
  const auto& sw = rule.sphere_weights;
  const int n = rule.params.n;
  const double a = rule.params.a;
  const double b = rule.params.b;
  return detail::radial_parallel_sum(
      rule.radial_nodes.size(), threads, [&](std::size_t i) {
        const double r = rule.radial_nodes[i];
        const double unweight =
            std::pow(1.0 - r * r, -a) * std::pow(r, -2.0 * b);
        std::vector<cplx> w(static_cast<std::size_t>(n));
        cplx acc = 0.0;
        for (std::size_t s = 0; s < sn.size(); ++s) {
          for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = r * sn[s][static_cast<std::size_t>(j)];
          acc += sw[s] * f(std::span<const cplx>(w));
        }
        return rule.radial_weights[i] * unweight * acc;
      });
}

/// Standard error estimate for a Monte-Carlo mu-integral of f (real
/// part); meaningful only for SeededSphereSample plans.
double monte_carlo_std_error(const std::function<double(std::span<const cplx>)>& f,
                             const QuadratureRule& rule);

}  // namespace bergman
