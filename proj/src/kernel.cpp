#include "bergman/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

HypParams q_params(const SpaceParams& p) { return HypParams{{p.b, -(p.a + 1.0)}, {p.b + p.n}}; }

HypParams kernel_params(const SpaceParams& p) {
  return HypParams{{static_cast<double>(p.n), p.a + p.b + p.n + 1.0}, {p.b + p.n}};
}

}  // namespace

cplx q_ab(cplx xi, const SpaceParams& p, const SeriesControl& ctrl) {
  if (std::abs(xi) > 1.0 + 1e-14)
    throw std::domain_error("q_ab: |xi| <= 1 required");
  return hyp_pfq(q_params(p), xi, ctrl);
}

double q_ab_at_one(const SpaceParams& p) {
  return std::exp(ln_gamma(p.b + p.n) + ln_gamma(p.a + p.n + 1.0) -
                  ln_gamma(static_cast<double>(p.n)) - ln_gamma(p.a + p.b + p.n + 1.0));
}

std::optional<std::vector<double>> q_terminating_coeffs(const SpaceParams& p) {
  const auto deg = terminating_degree(q_params(p));
  if (!deg) return std::nullopt;
  std::vector<double> c(*deg + 1);
  c[0] = 1.0;
  for (unsigned j = 0; j < *deg; ++j) {
    const double jd = static_cast<double>(j);
    c[j + 1] = c[j] * (p.b + jd) * (-(p.a + 1.0) + jd) / ((p.b + p.n + jd) * (jd + 1.0));
  }
  return c;
}

KernelEval kernel_scalar(cplx xi, const SpaceParams& p, const SeriesControl& ctrl) {
  if (!(std::abs(xi) < 1.0)) throw std::domain_error("kernel_scalar: |xi| < 1 required");
  KernelEval out{};
  const cplx one_minus = cplx(1.0) - xi;
  out.via_closed = q_ab(xi, p, ctrl) * std::pow(one_minus, -p.kernel_exponent());
  out.near_boundary = std::abs(one_minus) < 1e-3;
  if (out.near_boundary) {
    // series too slow here; report the closed form on both routes
    out.via_series = out.via_closed;
    out.agreement = 0.0;
  } else {
    out.via_series = hyp_pfq(kernel_params(p), xi, ctrl);
    out.agreement = std::abs(out.via_series - out.via_closed) /
                    std::max(std::abs(out.via_closed), 1e-300);
  }
  out.value = out.via_closed;
  return out;
}

cplx kernel(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
            const SeriesControl& ctrl) {
  return kernel_scalar(inner(z, w), p, ctrl).value;
}

KernelDerivs kernel_derivs(double t, const SpaceParams& p, const SeriesControl& ctrl) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("kernel_derivs: t in [0,1) required");
  const HypParams kp = kernel_params(p);
  KernelDerivs out{};
  out.value = hyp_pfq(kp, t, ctrl).real();
  out.d1 = hyp_pfq_derivative(kp, t, 1, ctrl).real();
  out.d2 = hyp_pfq_derivative(kp, t, 2, ctrl).real();
  return out;
}

double basis_norm_factor(const MultiIndex& alpha, const SpaceParams& p) {
  if (alpha.dim() != p.n) throw std::invalid_argument("basis_norm_factor: dimension mismatch");
  const double k = alpha.order();
  double lg = ln_gamma(k + p.n) + ln_gamma(p.b + p.n) + ln_gamma(k + p.a + p.b + p.n + 1.0) -
              ln_gamma(static_cast<double>(p.n)) - ln_gamma(p.a + p.b + p.n + 1.0) -
              ln_gamma(k + p.b + p.n);
  for (int e : alpha.exponents) lg -= ln_gamma(e + 1.0);
  return std::exp(0.5 * lg);
}

std::function<cplx(const BallPoint&)> basis_fn(const MultiIndex& alpha, const SpaceParams& p) {
  const double norm = basis_norm_factor(alpha, p);
  return [alpha, norm](const BallPoint& z) { return norm * monomial(z.span(), alpha); };
}

double sup_bound_constant(double r0, const SpaceParams& p) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw std::domain_error("sup_bound_constant: r0 in (0,1) required");
  const double r1 = 0.5 * std::min(r0, 1.0 - r0);
  const double frak_a = p.a >= 0.0 ? std::pow(1.0 - (r0 + r1) * (r0 + r1), p.a)
                                   : std::pow(1.0 - (r0 - r1) * (r0 - r1), p.a);
  const double frak_b = p.b >= 0.0 ? std::pow(r0 - r1, 2.0 * p.b)
                                   : std::pow(r0 + r1, 2.0 * p.b);
  return std::pow(r1, 2.0 * p.n) * frak_a * frak_b;
}

KernelEvaluator::KernelEvaluator(const SpaceParams& p, const SeriesControl& ctrl)
    : p_(p), ctrl_(ctrl) {
  if (auto c = q_terminating_coeffs(p)) q_coeffs_ = std::move(*c);
}

cplx KernelEvaluator::q(cplx xi) const {
  if (q_coeffs_.empty()) return q_ab(xi, p_, ctrl_);
  cplx acc = q_coeffs_.back();
  for (std::size_t j = q_coeffs_.size() - 1; j-- > 0;) acc = acc * xi + q_coeffs_[j];
  return acc;
}

cplx KernelEvaluator::operator()(cplx xi) const {
  return q(xi) * std::pow(cplx(1.0) - xi, -p_.kernel_exponent());
}

double KernelEvaluator::abs_sq(cplx xi) const {
  return std::norm(q(xi)) * std::pow(std::norm(cplx(1.0) - xi), -p_.kernel_exponent());
}

}  // namespace bergman
