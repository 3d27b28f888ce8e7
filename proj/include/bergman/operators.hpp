#pragma once

#include "bergman/kernel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

using PointFn = std::function<cplx(std::span<const cplx>)>;

/// Bergman projection: integral of f(w) K(<z,w>) d(mu_{a,b})(w).
/// Reproduces holomorphic polynomials up to quadrature error.
cplx project(const PointFn& f, const BallPoint& z, const SpaceParams& p,
             const QuadratureRule& rule, const SeriesControl& ctrl = {});

/// Berezin transform: (1/K(|z|^2)) integral of f |K(<w,z>)|^2 d(mu_{a,b}).
cplx berezin(const PointFn& f, const BallPoint& z, const SpaceParams& p,
             const QuadratureRule& rule, const SeriesControl& ctrl = {});

/// |B f(r xi) - f(xi)| for each radius; the gaps decay to zero for f
/// continuous up to the boundary.
std::vector<double> berezin_boundary_gap(const PointFn& f, const UnitVector& xi,
                                         const std::vector<double>& radii,
                                         const SpaceParams& p, const QuadratureRule& rule,
                                         const SeriesControl& ctrl = {});

/// Growth integral I_s(z) through its 3F2 closed form:
/// (pi^n/(n-1)!) beta(a+1, b+n) 3F2(g, g, b+n; n, a+b+n+1; |z|^2)
/// with g = (a+n+1+s)/2.
double i_s(const BallPoint& z, double s, const SpaceParams& p,
           const SeriesControl& ctrl = {});

/// Growth integral J_s(z) by quadrature of its defining integrand
/// against the (c,d) = rule.params weight.  Refuses to run when Q_{a,b}
/// has a zero in the closed disk (the asymptotics assume none); the
/// check runs once per call, use js_zero_free + j_s_unchecked to batch.
double j_s(const BallPoint& z, double s, const SpaceParams& kernel_params,
           const QuadratureRule& rule, const SeriesControl& ctrl = {});

/// The hypothesis check behind j_s, exposed for batching.
bool js_zero_free(const SpaceParams& kernel_params);

double j_s_unchecked(const BallPoint& z, double s, const SpaceParams& kernel_params,
                     const QuadratureRule& rule, const SeriesControl& ctrl = {});

enum class GrowthRegime { Bounded, Logarithmic, Power };

/// Least-squares classification of boundary growth data against the
/// three asymptotic shapes: bounded, log(1/(1-t)), (1-t)^{-s}.  Each
/// template carries its leading basis function plus the regime-consistent
/// secondary term, since over a finite radius window the subleading
/// corrections are far from negligible.
struct GrowthReport {
  double s = std::numeric_limits<double>::quiet_NaN();  // requested exponent, if any
  std::vector<std::pair<double, double>> values;        // (t, value)
  GrowthRegime regime = GrowthRegime::Bounded;
  double exponent = 0.0;     // fitted power, meaningful for Power
  double fit_quality = 0.0;  // rms relative deviation of the winner
  bool ambiguous = false;    // runner-up within 10 percent
};

GrowthReport classify_growth(const std::vector<std::pair<double, double>>& values,
                             double s_requested = std::numeric_limits<double>::quiet_NaN());

/// Mean oscillation sqrt(B(|f|^2) - |Bf|^2); tiny negative variances
/// (>= -1e-12 relative) clamp to zero, larger ones raise an error.
double mean_oscillation(const PointFn& f, const BallPoint& z, const SpaceParams& p,
                        const QuadratureRule& rule, const SeriesControl& ctrl = {});

/// Max of mean_oscillation over the sample: a lower bound for the BMO
/// seminorm (the true sup is not computable from finitely many points).
double bmo_norm_estimate(const PointFn& f, const std::vector<BallPoint>& sample,
                         const SpaceParams& p, const QuadratureRule& rule,
                         const SeriesControl& ctrl = {});

/// The parameter conditions characterizing L^p boundedness of the
/// projection with kernel (a,b) against the target weight (c,d):
/// c+1 < p(a+1), and d+n < p(b+n) for p > 1, d <= b for p = 1.
bool conditions_C(double a, double b, double c, double d, int n, double p);

}  // namespace bergman
