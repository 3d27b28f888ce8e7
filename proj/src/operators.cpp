#include "bergman/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman/zeros.hpp"

namespace bergman {

namespace {

double kernel_diag(const KernelEvaluator& kv, double t) {
  return kv(cplx(t, 0.0)).real();
}

}  // namespace

cplx project(const PointFn& f, const BallPoint& z, const SpaceParams& p,
             const QuadratureRule& rule, const SeriesControl& ctrl) {
  const KernelEvaluator kv(p, ctrl);
  const auto zs = z.span();
  return integrate_mu(
      [&](std::span<const cplx> w) { return f(w) * kv(inner(zs, w)); }, rule);
}

cplx berezin(const PointFn& f, const BallPoint& z, const SpaceParams& p,
             const QuadratureRule& rule, const SeriesControl& ctrl) {
  const KernelEvaluator kv(p, ctrl);
  const auto zs = z.span();
  const cplx num = integrate_mu(
      [&](std::span<const cplx> w) { return f(w) * kv.abs_sq(inner(w, zs)); }, rule);
  return num / kernel_diag(kv, z.norm_sq());
}

std::vector<double> berezin_boundary_gap(const PointFn& f, const UnitVector& xi,
                                         const std::vector<double>& radii,
                                         const SpaceParams& p, const QuadratureRule& rule,
                                         const SeriesControl& ctrl) {
  // Near the boundary the |K|^2 weight is sharply peaked, so the
  // transform is normalized by the discrete mass of the weight itself
  // (the quadrature estimate of K(|z|^2)): the normalization error then
  // cancels against the numerator instead of polluting the gap.
  const KernelEvaluator kv(p, ctrl);
  const cplx boundary_value = f(xi.span());
  std::vector<double> gaps;
  gaps.reserve(radii.size());
  for (double r : radii) {
    std::vector<cplx> coords(xi.coords());
    for (cplx& c : coords) c *= r;
    const BallPoint z(std::move(coords));
    const auto zs = z.span();
    const cplx num = integrate_mu(
        [&](std::span<const cplx> w) { return f(w) * kv.abs_sq(inner(w, zs)); }, rule);
    const cplx mass = integrate_mu(
        [&](std::span<const cplx> w) { return cplx(kv.abs_sq(inner(w, zs))); }, rule);
    gaps.push_back(std::abs(num / mass - boundary_value));
  }
  return gaps;
}

double i_s(const BallPoint& z, double s, const SpaceParams& p, const SeriesControl& ctrl) {
  const double gamma = 0.5 * (p.a + p.n + 1.0 + s);
  const HypParams params{{gamma, gamma, p.b + p.n},
                         {static_cast<double>(p.n), p.a + p.b + p.n + 1.0}};
  const double front = std::exp(p.n * std::log(M_PI) - ln_gamma(static_cast<double>(p.n))) *
                       beta(p.a + 1.0, p.b + p.n);
  return front * hyp_pfq(params, z.norm_sq(), ctrl).real();
}

bool js_zero_free(const SpaceParams& kernel_params) {
  return !has_zero_in_closed_disk(kernel_params);
}

double j_s_unchecked(const BallPoint& z, double s, const SpaceParams& kernel_params,
                     const QuadratureRule& rule, const SeriesControl& ctrl) {
  if (z.dim() != rule.params.n) throw std::invalid_argument("j_s: dimension mismatch");
  const KernelEvaluator kv(kernel_params, ctrl);
  const double c = rule.params.a;
  const double d = rule.params.b;
  const double expo = 0.5 * (c + rule.params.n + 1.0 + s);
  const auto zs = z.span();
  const cplx val = integrate_lebesgue(
      [&](std::span<const cplx> w) {
        double w2 = 0.0;
        for (const cplx& x : w) w2 += std::norm(x);
        const cplx ip = inner(zs, w);
        return std::abs(kv.q(ip)) * std::pow(1.0 - w2, c) * std::pow(w2, d) *
               std::pow(std::norm(cplx(1.0) - ip), -expo);
      },
      rule);
  return val.real();
}

double j_s(const BallPoint& z, double s, const SpaceParams& kernel_params,
           const QuadratureRule& rule, const SeriesControl& ctrl) {
  if (!js_zero_free(kernel_params))
    throw std::runtime_error("j_s: Q_{a,b} has a zero in the closed disk; "
                             "the growth asymptotics do not apply");
  return j_s_unchecked(z, s, kernel_params, rule, ctrl);
}

namespace {

struct TemplateFit {
  double scale = 0.0;
  double offset = 0.0;
  double exponent = 0.0;
  double rms_rel = std::numeric_limits<double>::infinity();
};

// least squares of y ~ scale * g + offset
TemplateFit affine_fit(const std::vector<std::pair<double, double>>& values,
                       const std::function<double(double)>& g) {
  const double n = static_cast<double>(values.size());
  double sg = 0, sgg = 0, sy = 0, sgy = 0;
  for (const auto& [t, y] : values) {
    const double gv = g(t);
    sg += gv;
    sgg += gv * gv;
    sy += y;
    sgy += gv * y;
  }
  TemplateFit fit;
  const double denom = n * sgg - sg * sg;
  if (std::abs(denom) < 1e-300) return fit;
  fit.scale = (n * sgy - sg * sy) / denom;
  fit.offset = (sy - fit.scale * sg) / n;
  double acc = 0.0;
  for (const auto& [t, y] : values) {
    const double model = fit.scale * g(t) + fit.offset;
    const double rel = (y - model) / (std::abs(y) + 1e-300);
    acc += rel * rel;
  }
  fit.rms_rel = std::sqrt(acc / n);
  return fit;
}

// scan + golden-section over the exponent of g_e(t), inner affine fit
TemplateFit exponent_fit(const std::vector<std::pair<double, double>>& values, double e_lo,
                         double e_hi, const std::function<double(double, double)>& g) {
  auto quality = [&](double e) {
    return affine_fit(values, [&](double t) { return g(t, e); });
  };
  double best_e = e_lo;
  TemplateFit best = quality(e_lo);
  const int scan = 24;
  for (int i = 1; i <= scan; ++i) {
    const double e = e_lo + (e_hi - e_lo) * i / scan;
    const TemplateFit f = quality(e);
    if (f.rms_rel < best.rms_rel) {
      best = f;
      best_e = e;
    }
  }
  double lo = std::max(e_lo, best_e - (e_hi - e_lo) / scan);
  double hi = std::min(e_hi, best_e + (e_hi - e_lo) / scan);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  TemplateFit f1 = quality(x1), f2 = quality(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1.rms_rel < f2.rms_rel) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = quality(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = quality(x2);
    }
  }
  TemplateFit out = f1.rms_rel < f2.rms_rel ? f1 : f2;
  out.exponent = f1.rms_rel < f2.rms_rel ? x1 : x2;
  return out;
}

}  // namespace

GrowthReport classify_growth(const std::vector<std::pair<double, double>>& values,
                             double s_requested) {
  if (values.size() < 5)
    throw std::domain_error("classify_growth: at least 5 radii required");
  for (const auto& [t, y] : values)
    if (!(t > 0.0 && t < 1.0) || !std::isfinite(y))
      throw std::domain_error("classify_growth: radii must lie in (0,1)");

  GrowthReport rep;
  rep.s = s_requested;
  rep.values = values;

  // bounded: y = c + c1 (1-t)^e with decaying correction
  TemplateFit bounded = exponent_fit(
      values, 0.05, 3.0, [](double t, double e) { return std::pow(1.0 - t, e); });
  // logarithmic: y = c log(1/(1-t)) + c0, growing scale required
  TemplateFit logfit = affine_fit(values, [](double t) { return std::log(1.0 / (1.0 - t)); });
  if (logfit.scale <= 0.0) logfit.rms_rel = std::numeric_limits<double>::infinity();
  // power: y = c (1-t)^{-e} + c0, growing scale required.  The exponent
  // floor 0.2 keeps the template from mimicking logarithmic data over a
  // finite window: exp(e k log 2) is indistinguishable from linear in k
  // as e -> 0.
  TemplateFit power = exponent_fit(
      values, 0.2, 5.0, [](double t, double e) { return std::pow(1.0 - t, -e); });
  if (power.scale <= 0.0) power.rms_rel = std::numeric_limits<double>::infinity();

  struct Cand {
    GrowthRegime regime;
    double rms;
    double exponent;
  };
  Cand cands[3] = {{GrowthRegime::Bounded, bounded.rms_rel, 0.0},
                   {GrowthRegime::Logarithmic, logfit.rms_rel, 0.0},
                   {GrowthRegime::Power, power.rms_rel, power.exponent}};
  // smallest residual wins; exact ties go to the simpler regime
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (cands[i].rms < cands[best].rms - 1e-12) best = i;
  double runner = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    if (i != best) runner = std::min(runner, cands[i].rms);

  rep.regime = cands[best].regime;
  rep.exponent = cands[best].exponent;
  rep.fit_quality = cands[best].rms;
  rep.ambiguous = runner <= 1.1 * cands[best].rms;
  return rep;
}

double mean_oscillation(const PointFn& f, const BallPoint& z, const SpaceParams& p,
                        const QuadratureRule& rule, const SeriesControl& ctrl) {
  const KernelEvaluator kv(p, ctrl);
  const auto zs = z.span();
  cplx mean = 0.0;
  double mean_sq = 0.0, mass = 0.0;
  const int n = rule.params.n;
  std::vector<cplx> w(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
    const double r = rule.radial_nodes[i];
    cplx acc1 = 0.0;
    double acc2 = 0.0, acc0 = 0.0;
    for (std::size_t sidx = 0; sidx < rule.sphere_nodes.size(); ++sidx) {
      for (int j = 0; j < n; ++j)
        w[static_cast<std::size_t>(j)] = r * rule.sphere_nodes[sidx][static_cast<std::size_t>(j)];
      const double wgt = rule.sphere_weights[sidx] * kv.abs_sq(inner(w, zs));
      const cplx fv = f(std::span<const cplx>(w));
      acc0 += wgt;
      acc1 += wgt * fv;
      acc2 += wgt * std::norm(fv);
    }
    mass += rule.radial_weights[i] * acc0;
    mean += rule.radial_weights[i] * acc1;
    mean_sq += rule.radial_weights[i] * acc2;
  }
  // normalize by the discrete mass of |K|^2 d(mu) (which converges to
  // K(|z|^2)); the discrete variance is then nonnegative by construction
  const cplx bf = mean / mass;
  const double bf2 = mean_sq / mass;
  const double variance = bf2 - std::norm(bf);
  if (variance < -1e-12 * std::max(1.0, bf2))
    throw std::runtime_error("mean_oscillation: negative variance beyond roundoff; "
                             "quadrature failure");
  return std::sqrt(std::max(0.0, variance));
}

double bmo_norm_estimate(const PointFn& f, const std::vector<BallPoint>& sample,
                         const SpaceParams& p, const QuadratureRule& rule,
                         const SeriesControl& ctrl) {
  if (sample.empty()) throw std::domain_error("bmo_norm_estimate: empty sample");
  double best = 0.0;
  for (const BallPoint& z : sample)
    best = std::max(best, mean_oscillation(f, z, p, rule, ctrl));
  return best;
}

bool conditions_C(double a, double b, double c, double d, int n, double p) {
  if (!(a > -1.0) || !(c > -1.0) || !(b > -static_cast<double>(n)) ||
      !(d > -static_cast<double>(n)) || !(p >= 1.0))
    throw std::domain_error("conditions_C: parameter domain violated");
  if (!(c + 1.0 < p * (a + 1.0))) return false;
  if (p > 1.0) return d + n < p * (b + n);
  return d <= b;
}

}  // namespace bergman
