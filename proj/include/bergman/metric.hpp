#pragma once

#include "bergman/operators.hpp"

namespace bergman {

/// Hermitian n x n matrix in row-major order.
struct HermitianMatrix {
  int n = 0;
  std::vector<cplx> entries;

  const cplx& at(int j, int k) const {
    return entries[static_cast<std::size_t>(j * n + k)];
  }
  double trace_real() const;
};

/// Piecewise-smooth curve [0,1] -> ball, carried as samples with an
/// optional analytic velocity; positions between samples come from
/// cubic Hermite interpolation.  Without an analytic velocity the knot
/// derivatives use fourth-order central differences, which requires a
/// uniform sample grid with at least five points.
struct Curve {
  std::vector<double> ts;
  std::vector<BallPoint> points;
  std::function<std::vector<cplx>(double)> velocity;  // may be empty

  BallPoint position(double t) const;
  std::vector<cplx> velocity_at(double t) const;
};

Curve make_curve(const std::function<BallPoint(double)>& position, int samples,
                 std::function<std::vector<cplx>(double)> velocity = nullptr);

/// Hessian A(z) of log K(|z|^2): rank-one term in conj(z_j) z_k plus a
/// positive multiple of the identity.
HermitianMatrix hessian(const BallPoint& z, const SpaceParams& p,
                        const SeriesControl& ctrl = {});

/// Quadratic form <A(z) xi, xi> evaluated through the rank-one-plus-
/// scalar structure (two kernel-derivative calls, no matrix).
double metric_form(const BallPoint& z, std::span<const cplx> xi, const SpaceParams& p,
                   const SeriesControl& ctrl = {});

/// Curve length: composite Gauss-Legendre of sqrt(<A(g) g', g'>) per
/// sample segment.
double curve_length(const Curve& c, const SpaceParams& p, const SeriesControl& ctrl = {});

/// Polyline produced by the upper-bound distance search.
struct Polyline {
  std::vector<BallPoint> vertices;
  double length = 0.0;
};

/// Deterministic coordinate-descent over k_control interior points,
/// initialized on the straight segment.  Endpoints are put in canonical
/// order first, so the result is exactly symmetric in (z, w).  The
/// returned length is an upper bound for the metric distance.
Polyline optimize_path(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
                       int k_control = 3, int iters = 40, const SeriesControl& ctrl = {});

double distance_upper(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
                      int k_control = 3, int iters = 40, const SeriesControl& ctrl = {});

/// Both sides of the projected-velocity identity: the squared norm of
/// (I - P_{g(t)}) d/dt kappa_{g(t)} by quadrature against the quadratic
/// form <A(g(t)) g'(t), g'(t)>.
std::pair<double, double> projection_residual_check(const Curve& c, double t,
                                                    const SpaceParams& p,
                                                    const QuadratureRule& rule,
                                                    const SeriesControl& ctrl = {});

/// gap = |B f(z) - B f(w)| against bound = 2 * bmo_upper * length of the
/// optimized polyline, where bmo_upper inflates the dense-sample maximum
/// of the mean oscillation along that polyline by ten percent.
std::pair<double, double> lipschitz_check(const PointFn& f, const BallPoint& z,
                                          const BallPoint& w, const SpaceParams& p,
                                          const QuadratureRule& rule, int k_control = 3,
                                          const SeriesControl& ctrl = {});

}  // namespace bergman
