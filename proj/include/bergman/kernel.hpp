#pragma once

#include <functional>
#include <optional>

#include "bergman/ball.hpp"

namespace bergman {

/// Result of the dual kernel evaluation.  Away from xi = 1 the series
/// route and the closed form must agree to 1e-9 relative; inside
/// |1 - xi| < 1e-3 the series is skipped and near_boundary is set.
struct KernelEval {
  cplx value;
  cplx via_series;
  cplx via_closed;
  double agreement;
  bool near_boundary;
};

/// Scalar kernel value and its first two derivatives at t = |z|^2.
struct KernelDerivs {
  double value;
  double d1;
  double d2;
};

/// The kernel factor Q_{a,b}(xi) = 2F1(b, -(a+1); b+n; xi), defined on
/// the closed unit disk (convergence margin n+a+1 > 0 on |xi| = 1).
cplx q_ab(cplx xi, const SpaceParams& p, const SeriesControl& ctrl = {});

/// Gauss evaluation of Q_{a,b} at xi = 1:
/// Gamma(b+n) Gamma(a+n+1) / (Gamma(n) Gamma(a+b+n+1)).
double q_ab_at_one(const SpaceParams& p);

/// Coefficients of Q_{a,b} in ascending degree when the series
/// terminates (a a nonnegative integer or b a nonpositive integer);
/// std::nullopt otherwise.
std::optional<std::vector<double>> q_terminating_coeffs(const SpaceParams& p);

/// Scalar kernel via both routes: the hypergeometric series
/// 2F1(n, a+b+n+1; b+n; xi) and Q_{a,b}(xi)/(1-xi)^{a+n+1} on the
/// principal branch.  value carries the closed form.
KernelEval kernel_scalar(cplx xi, const SpaceParams& p, const SeriesControl& ctrl = {});

/// Two-point kernel K(z,w) = scalar kernel at <z,w>.
cplx kernel(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
            const SeriesControl& ctrl = {});

/// Kernel value and first two derivatives at t in [0,1); all positive.
KernelDerivs kernel_derivs(double t, const SpaceParams& p, const SeriesControl& ctrl = {});

/// Normalization constant of the Hilbert basis element e_alpha.
double basis_norm_factor(const MultiIndex& alpha, const SpaceParams& p);

/// e_alpha(z) = basis_norm_factor(alpha) * z^alpha.
std::function<cplx(const BallPoint&)> basis_fn(const MultiIndex& alpha, const SpaceParams& p);

/// The constant c(r0) of the interior sup bound:
/// sup_{|z| <= r0} |f|^p <= n beta(a+1,b+n)/c(r0) * ||f||_p^p.
double sup_bound_constant(double r0, const SpaceParams& p);

/// Repeated-evaluation helper: caches the terminating polynomial form of
/// Q_{a,b} when it exists, so grid sweeps avoid the series loop.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const SpaceParams& p, const SeriesControl& ctrl = {});

  const SpaceParams& params() const { return p_; }

  cplx q(cplx xi) const;

  /// Closed-form kernel Q(xi)/(1-xi)^{a+n+1}.
  cplx operator()(cplx xi) const;

  /// |K(xi)|^2 through a real power of |1-xi|^2.
  double abs_sq(cplx xi) const;

 private:
  SpaceParams p_;
  SeriesControl ctrl_;
  std::vector<double> q_coeffs_;  // empty when Q does not terminate
};

}  // namespace bergman
