#include "bergman/ball.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bergman {

namespace {
constexpr double kBoundaryMargin = 1e-14;
}

SpaceParams::SpaceParams(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
  if (n < 1) throw std::domain_error("SpaceParams: n >= 1 required");
  if (!(a > -1.0)) throw std::domain_error("SpaceParams: a > -1 required");
  if (!(b > -static_cast<double>(n))) throw std::domain_error("SpaceParams: b > -n required");
}

BallPoint::BallPoint(std::vector<cplx> coords) : z_(std::move(coords)) {
  if (z_.empty()) throw std::domain_error("BallPoint: dimension must be >= 1");
  norm_sq_ = 0.0;
  for (const cplx& c : z_) norm_sq_ += std::norm(c);
  const double bound = 1.0 - kBoundaryMargin;
  if (!(norm_sq_ < bound * bound))
    throw std::domain_error("BallPoint: |z| must be < 1 - 1e-14");
}

BallPoint BallPoint::origin(int n) {
  return BallPoint(std::vector<cplx>(static_cast<std::size_t>(n), cplx(0.0)));
}

double BallPoint::norm() const { return std::sqrt(norm_sq_); }

UnitVector::UnitVector(std::vector<cplx> coords) : xi_(std::move(coords)) {
  if (xi_.empty()) throw std::domain_error("UnitVector: dimension must be >= 1");
  double n2 = 0.0;
  for (const cplx& c : xi_) n2 += std::norm(c);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw std::domain_error("UnitVector: |xi| must equal 1 within 1e-12");
}

MultiIndex::MultiIndex(std::vector<int> e) : exponents(std::move(e)) {
  if (exponents.empty()) throw std::domain_error("MultiIndex: dimension must be >= 1");
  for (int v : exponents)
    if (v < 0) throw std::domain_error("MultiIndex: entries must be >= 0");
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : exponents) s += v;
  return s;
}

cplx inner(std::span<const cplx> z, std::span<const cplx> w) {
  if (z.size() != w.size()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

cplx inner(const BallPoint& z, const BallPoint& w) { return inner(z.span(), w.span()); }

cplx monomial(std::span<const cplx> z, const MultiIndex& alpha) {
  if (static_cast<int>(z.size()) != alpha.dim())
    throw std::invalid_argument("monomial: dimension mismatch");
  cplx r = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (int e = 0; e < alpha.exponents[j]; ++e) r *= z[j];
  return r;
}

BallPoint moebius(const BallPoint& z, const BallPoint& zeta) {
  if (z.dim() != zeta.dim()) throw std::invalid_argument("moebius: dimension mismatch");
  const int n = z.dim();
  // phi_0 is defined separately as -zeta; the projection P_z degenerates.
  if (z.norm_sq() == 0.0) {
    std::vector<cplx> out(zeta.coords());
    for (cplx& c : out) c = -c;
    return BallPoint(std::move(out));
  }
  const cplx ip = inner(zeta, z);  // <zeta, z>
  const cplx scale = ip / z.norm_sq();
  const double s = std::sqrt(1.0 - z.norm_sq());
  const cplx denom = cplx(1.0) - ip;
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const cplx pz = scale * z[j];
    out[static_cast<std::size_t>(j)] = (z[j] - pz - s * (zeta[j] - pz)) / denom;
  }
  return BallPoint(std::move(out));
}

double moebius_jacobian(const BallPoint& z, const BallPoint& zeta) {
  if (z.dim() != zeta.dim())
    throw std::invalid_argument("moebius_jacobian: dimension mismatch");
  const cplx ip = inner(zeta, z);
  const double ratio = (1.0 - z.norm_sq()) / std::norm(cplx(1.0) - ip);
  return std::pow(ratio, z.dim() + 1);
}

double one_minus_phi_sq(const BallPoint& z, const BallPoint& zeta) {
  if (z.dim() != zeta.dim())
    throw std::invalid_argument("one_minus_phi_sq: dimension mismatch");
  const cplx ip = inner(zeta, z);
  return (1.0 - z.norm_sq()) * (1.0 - zeta.norm_sq()) / std::norm(cplx(1.0) - ip);
}

double monomial_sphere_moment(const MultiIndex& alpha, int n) {
  if (alpha.dim() != n) throw std::invalid_argument("monomial_sphere_moment: dimension mismatch");
  double lg = std::log(2.0) + n * std::log(M_PI);
  for (int e : alpha.exponents) lg += ln_gamma(e + 1.0);
  lg -= ln_gamma(alpha.order() + static_cast<double>(n));
  return std::exp(lg);
}

double sphere_measure(int n) {
  return monomial_sphere_moment(MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)), n);
}

double monomial_ball_moment(const MultiIndex& alpha, const MultiIndex& gamma,
                            const SpaceParams& p) {
  if (alpha.dim() != p.n || gamma.dim() != p.n)
    throw std::invalid_argument("monomial_ball_moment: dimension mismatch");
  if (!(alpha == gamma)) return 0.0;
  const double k = alpha.order();
  double lg = ln_gamma(static_cast<double>(p.n)) + ln_gamma(p.a + p.b + p.n + 1.0) +
              ln_gamma(k + p.b + p.n) - ln_gamma(k + p.n) - ln_gamma(p.b + p.n) -
              ln_gamma(k + p.a + p.b + p.n + 1.0);
  for (int e : alpha.exponents) lg += ln_gamma(e + 1.0);
  return std::exp(lg);
}

}  // namespace bergman
