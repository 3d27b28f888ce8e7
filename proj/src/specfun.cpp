#include "bergman/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bergman {

void SeriesControl::validate() const {
  if (max_terms < 1) throw std::domain_error("SeriesControl: max_terms >= 1 required");
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::domain_error("SeriesControl: rel_tol must lie in (0,1)");
  if (!(abs_floor > 0.0)) throw std::domain_error("SeriesControl: abs_floor must be positive");
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
  // Shift small arguments up through Gamma(x) = Gamma(x+1)/x; keeps the
  // Lanczos sum on its accurate range x >= 0.5.
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  // Lanczos approximation, g = 7, 9 terms (Godfrey's coefficient set).
  // Relative error below 1e-14 over the evaluated range.
  static constexpr double kG = 7.0;
  static constexpr double kCoef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double u = x - 1.0;
  double s = kCoef[0];
  for (int i = 1; i < 9; ++i) s += kCoef[i] / (u + i);
  const double t = u + kG + 0.5;
  constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2
  return kHalfLogTwoPi + (u + 0.5) * std::log(t) - t + std::log(s);
}

double beta(double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("beta: arguments must be positive");
  return std::exp(ln_gamma(s) + ln_gamma(t) - ln_gamma(s + t));
}

double pochhammer(double c, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= c + i;
  return r;
}

bool is_nonpositive_integer(double c) {
  return c <= 0.0 && std::abs(c - std::round(c)) <= 1e-12;
}

std::optional<unsigned> terminating_degree(const HypParams& p) {
  std::optional<unsigned> deg;
  for (double c : p.num) {
    if (is_nonpositive_integer(c)) {
      const unsigned d = static_cast<unsigned>(-std::round(c));
      if (!deg || d < *deg) deg = d;
    }
  }
  return deg;
}

namespace {

void check_hyp_domain(const HypParams& p, cplx z, const std::optional<unsigned>& deg) {
  // A denominator that hits zero before the series terminates leaves the
  // series undefined.
  for (double d : p.den) {
    if (is_nonpositive_integer(d)) {
      const unsigned hit = static_cast<unsigned>(-std::round(d));
      if (!deg || hit < *deg)
        throw std::domain_error("hyp_pfq: nonpositive integer denominator parameter");
    }
  }
  if (deg) return;  // polynomial: every z is fine
  const double az = std::abs(z);
  if (az < 1.0 - 1e-14) return;
  if (az <= 1.0 + 1e-14) {
    // Gauss condition on the unit circle: p = q+1 and positive margin.
    if (p.num.size() != p.den.size() + 1)
      throw std::domain_error("hyp_pfq: |z| = 1 requires p = q+1");
    double margin = 0.0;
    for (double d : p.den) margin += d;
    for (double c : p.num) margin -= c;
    if (!(margin > 0.0))
      throw std::domain_error("hyp_pfq: divergent at |z| = 1 (nonpositive margin)");
    return;
  }
  throw std::domain_error("hyp_pfq: |z| > 1 outside the convergence domain");
}

}  // namespace

cplx hyp_pfq(const HypParams& p, cplx z, const SeriesControl& ctrl) {
  ctrl.validate();
  const auto deg = terminating_degree(p);
  check_hyp_domain(p, z, deg);

  cplx term = 1.0;
  cplx sum = 0.0;
  int consecutive_small = 0;
  for (std::size_t k = 0; k < ctrl.max_terms; ++k) {
    sum += term;
    if (deg && k >= *deg) return sum;
    // t_{k+1} = t_k * prod(c_i + k) / prod(d_j + k) * z / (k+1)
    cplx next = term;
    for (double c : p.num) next *= c + static_cast<double>(k);
    for (double d : p.den) next /= d + static_cast<double>(k);
    next *= z / static_cast<double>(k + 1);
    term = next;
    if (std::abs(term) <= ctrl.rel_tol * std::abs(sum) + ctrl.abs_floor) {
      if (++consecutive_small >= 3) return sum;
    } else {
      consecutive_small = 0;
    }
  }
  throw std::runtime_error("hyp_pfq: series did not converge within max_terms");
}

cplx hyp_pfq_derivative(const HypParams& p, cplx z, int order, const SeriesControl& ctrl) {
  if (order != 1 && order != 2) throw std::domain_error("hyp_pfq_derivative: order must be 1 or 2");
  HypParams shifted = p;
  double factor = 1.0;
  for (int pass = 0; pass < order; ++pass) {
    for (double& c : shifted.num) {
      factor *= c;
      c += 1.0;
    }
    for (double& d : shifted.den) {
      factor /= d;
      d += 1.0;
    }
  }
  return factor * hyp_pfq(shifted, z, ctrl);
}

}  // namespace bergman
