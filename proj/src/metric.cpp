#include "bergman/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

// 8-point Gauss-Legendre rule on [-1,1]
constexpr double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267,
                               -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

struct FormCoeffs {
  double c1;  // K'/K
  double c2;  // K''/K - (K'/K)^2
};

FormCoeffs form_coeffs(double t, const SpaceParams& p, const SeriesControl& ctrl) {
  const auto kd = kernel_derivs(t, p, ctrl);
  const double r1 = kd.d1 / kd.value;
  return FormCoeffs{r1, kd.d2 / kd.value - r1 * r1};
}

double form_value(const FormCoeffs& fc, std::span<const cplx> z, std::span<const cplx> xi) {
  const cplx mixed = inner(z, xi);
  double xi2 = 0.0;
  for (const cplx& c : xi) xi2 += std::norm(c);
  return fc.c2 * std::norm(mixed) + fc.c1 * xi2;
}

// length of the straight segment [a, b] under the metric
double segment_length(const BallPoint& a, const BallPoint& b, const SpaceParams& p,
                      const SeriesControl& ctrl) {
  const int n = a.dim();
  std::vector<cplx> dir(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) dir[static_cast<std::size_t>(j)] = b[j] - a[j];
  std::vector<cplx> pos(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double t = 0.5 * (1.0 + kGlNode[i]);
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      pos[static_cast<std::size_t>(j)] = a[j] + t * dir[static_cast<std::size_t>(j)];
      norm2 += std::norm(pos[static_cast<std::size_t>(j)]);
    }
    const FormCoeffs fc = form_coeffs(norm2, p, ctrl);
    acc += 0.5 * kGlWeight[i] * std::sqrt(std::max(0.0, form_value(fc, pos, dir)));
  }
  return acc;
}

double polyline_length(const std::vector<BallPoint>& vertices, const SpaceParams& p,
                       const SeriesControl& ctrl) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    total += segment_length(vertices[i], vertices[i + 1], p, ctrl);
  return total;
}

bool lex_less(const BallPoint& a, const BallPoint& b) {
  for (int j = 0; j < a.dim(); ++j) {
    if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
    if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
  }
  return false;
}

}  // namespace

double HermitianMatrix::trace_real() const {
  double tr = 0.0;
  for (int j = 0; j < n; ++j) tr += at(j, j).real();
  return tr;
}

BallPoint Curve::position(double t) const {
  if (t <= ts.front()) return points.front();
  if (t >= ts.back()) return points.back();
  std::size_t hi = 1;
  while (ts[hi] < t) ++hi;
  const std::size_t lo = hi - 1;
  const double h = ts[hi] - ts[lo];
  const double u = (t - ts[lo]) / h;
  const auto vlo = velocity_at(ts[lo]);
  const auto vhi = velocity_at(ts[hi]);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  const int n = points.front().dim();
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out[static_cast<std::size_t>(j)] =
        h00 * points[lo][j] + h10 * h * vlo[static_cast<std::size_t>(j)] +
        h01 * points[hi][j] + h11 * h * vhi[static_cast<std::size_t>(j)];
  return BallPoint(std::move(out));
}

std::vector<cplx> Curve::velocity_at(double t) const {
  if (velocity) return velocity(t);
  // fourth-order centered differences on the uniform sample grid,
  // one-sided at the ends
  const std::size_t m = ts.size();
  if (m < 6) throw std::domain_error("Curve: finite differences need >= 6 samples");
  const double h = ts[1] - ts[0];
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (std::abs(ts[i + 1] - ts[i] - h) > 1e-9)
      throw std::domain_error("Curve: finite differences need a uniform grid");
  // nearest knot
  std::size_t i = static_cast<std::size_t>(std::llround((t - ts[0]) / h));
  i = std::min(i, m - 1);
  if (std::abs(ts[i] - t) > 1e-9)
    throw std::domain_error("Curve: velocity requested off the sample grid");
  const int n = points.front().dim();
  std::vector<cplx> v(static_cast<std::size_t>(n));
  auto pt = [&](std::size_t k, int j) { return points[k][j]; };
  for (int j = 0; j < n; ++j) {
    cplx d;
    if (i >= 2 && i + 2 < m) {
      d = (pt(i - 2, j) - 8.0 * pt(i - 1, j) + 8.0 * pt(i + 1, j) - pt(i + 2, j)) / (12.0 * h);
    } else if (i + 4 < m && i < 2) {
      d = (-25.0 * pt(i, j) + 48.0 * pt(i + 1, j) - 36.0 * pt(i + 2, j) +
           16.0 * pt(i + 3, j) - 3.0 * pt(i + 4, j)) /
          (12.0 * h);
    } else {
      d = (25.0 * pt(i, j) - 48.0 * pt(i - 1, j) + 36.0 * pt(i - 2, j) -
           16.0 * pt(i - 3, j) + 3.0 * pt(i - 4, j)) /
          (12.0 * h);
    }
    v[static_cast<std::size_t>(j)] = d;
  }
  return v;
}

Curve make_curve(const std::function<BallPoint(double)>& position, int samples,
                 std::function<std::vector<cplx>(double)> velocity) {
  if (samples < 2) throw std::domain_error("make_curve: at least 2 samples required");
  Curve c;
  c.ts.reserve(static_cast<std::size_t>(samples));
  c.points.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    c.ts.push_back(t);
    c.points.push_back(position(t));
  }
  c.velocity = std::move(velocity);
  return c;
}

HermitianMatrix hessian(const BallPoint& z, const SpaceParams& p, const SeriesControl& ctrl) {
  const FormCoeffs fc = form_coeffs(z.norm_sq(), p, ctrl);
  const int n = z.dim();
  HermitianMatrix m;
  m.n = n;
  m.entries.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  // fill the upper triangle and mirror, so the result is Hermitian to
  // the last bit
  for (int j = 0; j < n; ++j) {
    m.entries[static_cast<std::size_t>(j * n + j)] =
        fc.c2 * std::norm(z[j]) + fc.c1;
    for (int k = j + 1; k < n; ++k) {
      const cplx v = fc.c2 * std::conj(z[j]) * z[k];
      m.entries[static_cast<std::size_t>(j * n + k)] = v;
      m.entries[static_cast<std::size_t>(k * n + j)] = std::conj(v);
    }
  }
  return m;
}

double metric_form(const BallPoint& z, std::span<const cplx> xi, const SpaceParams& p,
                   const SeriesControl& ctrl) {
  if (static_cast<int>(xi.size()) != z.dim())
    throw std::invalid_argument("metric_form: dimension mismatch");
  return form_value(form_coeffs(z.norm_sq(), p, ctrl), z.span(), xi);
}

double curve_length(const Curve& c, const SpaceParams& p, const SeriesControl& ctrl) {
  if (c.ts.size() < 2 || c.ts.size() != c.points.size())
    throw std::domain_error("curve_length: malformed curve");
  if (!(c.ts.front() == 0.0 && c.ts.back() == 1.0))
    throw std::domain_error("curve_length: parameter range must be [0,1]");
  double total = 0.0;
  const int n = c.points.front().dim();
  for (std::size_t seg = 0; seg + 1 < c.ts.size(); ++seg) {
    const double lo = c.ts[seg], hi = c.ts[seg + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 8; ++i) {
      const double t = mid + half * kGlNode[i];
      const BallPoint pos = c.position(t);
      // interpolant velocity: derivative of the cubic Hermite segment
      const double u = (t - lo) / (hi - lo);
      const auto vlo = c.velocity_at(lo);
      const auto vhi = c.velocity_at(hi);
      const double h = hi - lo;
      const double d00 = 6.0 * u * (u - 1.0);
      const double d10 = (1.0 - u) * (1.0 - 3.0 * u);
      const double d01 = -d00;
      const double d11 = u * (3.0 * u - 2.0);
      std::vector<cplx> vel(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        vel[static_cast<std::size_t>(j)] =
            (d00 * c.points[seg][j] + d01 * c.points[seg + 1][j]) / h +
            d10 * vlo[static_cast<std::size_t>(j)] + d11 * vhi[static_cast<std::size_t>(j)];
      const double q = metric_form(pos, vel, p, ctrl);
      total += kGlWeight[i] * half * std::sqrt(std::max(0.0, q));
    }
  }
  return total;
}

Polyline optimize_path(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
                       int k_control, int iters, const SeriesControl& ctrl) {
  if (z.dim() != w.dim()) throw std::invalid_argument("optimize_path: dimension mismatch");
  const BallPoint& a = lex_less(w, z) ? w : z;
  const BallPoint& b = lex_less(w, z) ? z : w;
  const int n = a.dim();

  std::vector<BallPoint> verts;
  verts.push_back(a);
  for (int i = 1; i <= k_control; ++i) {
    const double t = static_cast<double>(i) / (k_control + 1);
    std::vector<cplx> pt(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) pt[static_cast<std::size_t>(j)] = a[j] + t * (b[j] - a[j]);
    verts.push_back(BallPoint(std::move(pt)));
  }
  verts.push_back(b);

  double length = polyline_length(verts, p, ctrl);
  if (k_control > 0) {
    double chord = 0.0;
    for (int j = 0; j < n; ++j) chord = std::max(chord, std::abs(b[j] - a[j]));
    double step = 0.25 * std::max(chord, 1e-3);
    for (int sweep = 0; sweep < iters && step > 1e-7; ++sweep) {
      bool improved = false;
      for (int i = 1; i <= k_control; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        // local cost touches only the two adjacent segments
        auto local = [&](const BallPoint& v) {
          return segment_length(verts[idx - 1], v, p, ctrl) +
                 segment_length(v, verts[idx + 1], p, ctrl);
        };
        double best = local(verts[idx]);
        BallPoint best_pt = verts[idx];
        for (int axis = 0; axis < 2 * n; ++axis) {
          for (double sgn : {1.0, -1.0}) {
            std::vector<cplx> cand(verts[idx].coords());
            const std::size_t j = static_cast<std::size_t>(axis / 2);
            cand[j] += (axis % 2 == 0) ? cplx(sgn * step, 0.0) : cplx(0.0, sgn * step);
            double norm2 = 0.0;
            for (const cplx& c : cand) norm2 += std::norm(c);
            if (norm2 >= 0.998) continue;
            BallPoint moved(std::move(cand));
            const double val = local(moved);
            if (val < best - 1e-15) {
              best = val;
              best_pt = std::move(moved);
            }
          }
        }
        if (!(best_pt.coords() == verts[idx].coords())) {
          verts[idx] = best_pt;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    length = std::min(length, polyline_length(verts, p, ctrl));
  }
  return Polyline{std::move(verts), length};
}

double distance_upper(const BallPoint& z, const BallPoint& w, const SpaceParams& p,
                      int k_control, int iters, const SeriesControl& ctrl) {
  return optimize_path(z, w, p, k_control, iters, ctrl).length;
}

std::pair<double, double> projection_residual_check(const Curve& c, double t,
                                                    const SpaceParams& p,
                                                    const QuadratureRule& rule,
                                                    const SeriesControl& ctrl) {
  const BallPoint g = c.position(t);
  const auto gv = c.velocity_at(t);
  const double t2 = g.norm_sq();
  const auto kd = kernel_derivs(t2, p, ctrl);
  const KernelEvaluator kv(p, ctrl);
  const double sqrt_k = std::sqrt(kd.value);
  const cplx g_dot_gv = inner(g.span(), std::span<const cplx>(gv));
  const cplx g_coef = g_dot_gv * kd.d1 / (kd.value * sqrt_k);

  // derivative of the scalar kernel along the series route
  const HypParams kp{{static_cast<double>(p.n), p.a + p.b + p.n + 1.0}, {p.b + p.n}};

  const auto gs = g.span();
  const cplx lhs = integrate_mu(
      [&](std::span<const cplx> zeta) {
        const cplx ip = inner(zeta, gs);
        const cplx kprime = hyp_pfq_derivative(kp, ip, 1, ctrl);
        const cplx h_t = inner(zeta, std::span<const cplx>(gv)) * kprime / sqrt_k;
        const cplx g_t = g_coef * kv(ip);
        return cplx(std::norm(h_t - g_t));
      },
      rule);
  const double rhs = metric_form(g, gv, p, ctrl);
  return {lhs.real(), rhs};
}

std::pair<double, double> lipschitz_check(const PointFn& f, const BallPoint& z,
                                          const BallPoint& w, const SpaceParams& p,
                                          const QuadratureRule& rule, int k_control,
                                          const SeriesControl& ctrl) {
  const cplx bz = berezin(f, z, p, rule, ctrl);
  const cplx bw = berezin(f, w, p, rule, ctrl);
  const double gap = std::abs(bz - bw);

  const Polyline path = optimize_path(z, w, p, k_control, 40, ctrl);
  double mo_max = 0.0;
  const int per_segment = 8;
  for (std::size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
    for (int i = 0; i <= per_segment; ++i) {
      const double t = static_cast<double>(i) / per_segment;
      const int n = z.dim();
      std::vector<cplx> pt(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        pt[static_cast<std::size_t>(j)] =
            path.vertices[seg][j] + t * (path.vertices[seg + 1][j] - path.vertices[seg][j]);
      mo_max = std::max(mo_max, mean_oscillation(f, BallPoint(std::move(pt)), p, rule, ctrl));
    }
  }
  const double bound = 2.0 * (1.1 * mo_max) * path.length;
  return {gap, bound};
}

}  // namespace bergman
