#include "bergman/zeros.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace bergman {

namespace {

constexpr double kTiny = 1e-300;

// The root clusters of the terminating Q_{a,b} families sit far below
// double-precision evaluation noise (the polynomials behave like
// perturbations of (1-c xi)^m, with mid-cluster values around
// 1e-60 relative to the coefficient scale at degree ~50), so coefficient
// construction and the Aberth iteration run in 120-digit floats and only
// the results are rounded back to double.
using MpReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;
using MpC = boost::multiprecision::cpp_complex<120>;

double to_d(const MpReal& x) { return x.convert_to<double>(); }
cplx to_d(const MpC& z) { return cplx(to_d(z.real()), to_d(z.imag())); }

MpC mp_eval(const std::vector<MpC>& c, const MpC& z) {
  MpC acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

MpC mp_deriv(const std::vector<MpC>& c, const MpC& z) {
  if (c.size() < 2) return MpC(0);
  MpC acc = MpC(static_cast<double>(c.size() - 1)) * c.back();
  for (std::size_t j = c.size() - 1; j-- > 1;)
    acc = acc * z + MpC(static_cast<double>(j)) * c[j];
  return acc;
}

MpReal norm_sq(const MpC& z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Aberth-Ehrlich simultaneous iteration from perturbed-circle guesses.
// Roots whose step drops below the tolerance are frozen; the correction
// of a settled root stays near zero regardless of its neighbours.
std::vector<MpC> aberth_mp(const std::vector<MpC>& coeffs, bool* converged) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<MpC> z(static_cast<std::size_t>(d));
  double radius = std::pow(to_d(abs(coeffs[0] / coeffs.back())), 1.0 / d);
  if (!std::isfinite(radius) || radius <= 0.0) radius = 1.0;
  for (int k = 0; k < d; ++k) {
    const double th = 2.0 * M_PI * k / d + 0.376991;
    const double r = radius * (1.0 + 0.02 * k / std::max(1, d));
    z[static_cast<std::size_t>(k)] = MpC(r * std::cos(th), r * std::sin(th));
  }
  const MpReal stop_sq = MpReal("1e-60");  // squared relative step
  std::vector<bool> settled(static_cast<std::size_t>(d), false);
  *converged = false;
  for (int it = 0; it < 500; ++it) {
    bool all_settled = true;
    for (int i = 0; i < d; ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      auto& zi = z[static_cast<std::size_t>(i)];
      const MpC f = mp_eval(coeffs, zi);
      const MpC df = mp_deriv(coeffs, zi);
      if (norm_sq(df) == 0) {
        zi += MpC(1e-10 * std::cos(i + 1.0), 1e-10 * std::sin(i + 1.0));
        all_settled = false;
        continue;
      }
      const MpC ratio = f / df;
      MpC sum = 0;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        MpC diff = zi - z[static_cast<std::size_t>(j)];
        if (norm_sq(diff) == 0) diff = MpC(1e-30, 1e-30);
        sum += MpC(1) / diff;
      }
      const MpC denom = MpC(1) - ratio * sum;
      const MpC w = norm_sq(denom) == 0 ? ratio : ratio / denom;
      zi -= w;
      if (norm_sq(w) <= stop_sq * (1 + norm_sq(zi)))
        settled[static_cast<std::size_t>(i)] = true;
      else
        all_settled = false;
    }
    if (all_settled) {
      *converged = true;
      break;
    }
  }
  return z;
}

// Trapezoid winding of a polynomial around |z| = radius, evaluated in
// extended precision (nodes placed in double; that only perturbs the
// sampled path, not the polynomial).  A coarse probe of |f|/|f'| first
// estimates the distance to the nearest zero, which fixes the node
// count: the trapezoid error decays like exp(-N d / r).  Returns
// nullopt when a zero hugs the contour or the winding never settles.
std::optional<int> poly_circle_winding(const std::vector<MpC>& coeffs, double radius,
                                       long nodes) {
  double dmin = std::numeric_limits<double>::infinity();
  for (long j = 0; j < 512; ++j) {
    const double th = 2.0 * M_PI * static_cast<double>(j) / 512.0;
    const MpC zz(radius * std::cos(th), radius * std::sin(th));
    const MpC f = mp_eval(coeffs, zz);
    const MpC df = mp_deriv(coeffs, zz);
    if (norm_sq(df) == 0) continue;
    dmin = std::min(dmin, std::sqrt(to_d(norm_sq(f) / norm_sq(df))));
  }
  if (!(dmin > 1e-6)) return std::nullopt;
  long start = std::max(nodes, 8L);
  while (start < 65536 && static_cast<double>(start) * dmin < 24.0 * radius) start *= 2;
  for (long n = start; n <= 65536; n *= 2) {
    cplx acc = 0.0;
    for (long j = 0; j < n; ++j) {
      const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
      const MpC zz(radius * std::cos(th), radius * std::sin(th));
      acc += to_d(mp_deriv(coeffs, zz) / mp_eval(coeffs, zz)) * to_d(zz);
    }
    const cplx w = acc / static_cast<double>(n);
    const double nearest = std::round(w.real());
    if (std::abs(w - cplx(nearest)) <= 0.1) return static_cast<int>(nearest);
  }
  return std::nullopt;
}

struct CircleCount {
  int count;
  double radius;
};

constexpr double kNudge[8] = {0.0, -1e-4, 1e-4, -2e-4, 2e-4, -3e-4, 3e-4, -4e-4};

CircleCount poly_circle_count(const std::vector<MpC>& coeffs, double radius, long nodes) {
  for (double dr : kNudge) {
    const double r = radius + dr;
    if (!(r > 0.0)) continue;
    if (auto c = poly_circle_winding(coeffs, r, nodes)) return CircleCount{*c, r};
  }
  throw std::runtime_error("count_zeros_disk: no contour clear of zeros after 8 nudges");
}

// Thrown when a zero sits too close to an integration path; callers
// react by moving the path.
struct ContourHit {};

// Q_{a,b} and its derivative, through the cached polynomial when the
// series terminates and through the series otherwise.
struct QFunc {
  std::optional<PolyC> poly;
  SpaceParams p;
  SeriesControl ctrl;
  double scale = 1.0;

  static QFunc make(const SpaceParams& params) {
    SeriesControl ctrl;
    ctrl.rel_tol = 1e-13;
    ctrl.max_terms = 2000000;
    QFunc q{std::nullopt, params, ctrl, 1.0};
    if (auto c = q_terminating_coeffs(params)) {
      std::vector<cplx> cc(c->begin(), c->end());
      q.poly.emplace(std::move(cc));
      q.scale = q.poly->max_coeff();
    }
    return q;
  }

  cplx eval(cplx z) const {
    if (poly) return poly->eval(z);
    return q_ab(z, p, ctrl);
  }

  cplx deriv(cplx z) const {
    if (poly) return poly->deriv(z);
    const HypParams params{{p.b, -(p.a + 1.0)}, {p.b + p.n}};
    return hyp_pfq_derivative(params, z, 1, ctrl);
  }
};

// Log-derivative with a proximity guard: |Q|/|Q'| estimates the distance
// to the nearest zero.
cplx log_deriv(const QFunc& q, cplx z, double proximity) {
  const cplx f = q.eval(z);
  const cplx df = q.deriv(z);
  if (std::abs(f) <= proximity * (std::abs(df) + kTiny)) throw ContourHit{};
  return df / f;
}

// Trapezoid winding on |z| = radius with adaptive node doubling; zeros
// near the contour or non-integral winding trigger deterministic radius
// nudges (8 attempts).
CircleCount circle_count(const QFunc& q, double radius, int nodes) {
  if (nodes < 1) throw std::domain_error("count_zeros_disk: nodes >= 1 required");
  bool any_integral_failure = false;
  for (double dr : kNudge) {
    const double r = radius + dr;
    if (!(r > 0.0)) continue;
    try {
      for (long n = nodes; n <= 65536; n *= 2) {
        cplx acc = 0.0;
        for (long j = 0; j < n; ++j) {
          const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
          const cplx z = r * cplx(std::cos(th), std::sin(th));
          acc += log_deriv(q, z, 1e-6) * z;
        }
        const cplx w = acc / static_cast<double>(n);
        const double nearest = std::round(w.real());
        if (std::abs(w - cplx(nearest)) <= 0.1)
          return CircleCount{static_cast<int>(nearest), r};
      }
      any_integral_failure = true;
    } catch (const ContourHit&) {
      // zero within ~1e-6 of this contour; nudge the radius
    }
  }
  if (any_integral_failure)
    throw std::runtime_error("count_zeros_disk: winding not integral at 2^16 nodes");
  throw std::runtime_error("count_zeros_disk: zero on contour after 8 radius nudges");
}

// 16-point Gauss-Legendre rule on [-1,1]
constexpr double kGlNode[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGlWeight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Composite Gauss-Legendre integration of Q'/Q dz along a parameterized
// path piece.
template <class Map>
cplx integrate_piece(const QFunc& q, Map&& map, int panels, double proximity) {
  cplx acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = static_cast<double>(p) / panels;
    const double hi = static_cast<double>(p + 1) / panels;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 16; ++i) {
      const double t = mid + half * kGlNode[i];
      const auto [z, dz] = map(t);
      acc += kGlWeight[i] * half * log_deriv(q, z, proximity) * dz;
    }
  }
  return acc;
}

struct Sector {
  double r0, r1;  // radii, 0 <= r0 < r1
  double t0, t1;  // angles, t0 < t1
  int count = 0;
  int depth = 0;

  double diameter() const { return std::max(r1 - r0, r1 * (t1 - t0)); }
  cplx center() const {
    const double r = 0.5 * (r0 + r1), t = 0.5 * (t0 + t1);
    return r * cplx(std::cos(t), std::sin(t));
  }
};

// Winding number around an annular sector (two arcs, two radial edges),
// with panel doubling until the value stabilizes on an integer.  Zeros
// within ~1e-5 of the path, or failure to stabilize, raise ContourHit so
// the caller can choose different split lines.
int sector_winding(const QFunc& q, const Sector& s) {
  const double proximity = 1e-5;
  cplx prev = cplx(1e9, 0.0);
  for (int panels = 2; panels <= 256; panels *= 2) {
    cplx acc = 0.0;
    // outer arc, t0 -> t1
    acc += integrate_piece(
        q,
        [&](double t) {
          const double th = s.t0 + t * (s.t1 - s.t0);
          const cplx e(std::cos(th), std::sin(th));
          return std::pair<cplx, cplx>(s.r1 * e, cplx(0, 1) * (s.t1 - s.t0) * s.r1 * e);
        },
        panels, proximity);
    // radial edge at t1, r1 -> r0
    acc += integrate_piece(
        q,
        [&](double t) {
          const cplx e(std::cos(s.t1), std::sin(s.t1));
          const double r = s.r1 + t * (s.r0 - s.r1);
          return std::pair<cplx, cplx>(r * e, (s.r0 - s.r1) * e);
        },
        panels, proximity);
    // inner arc, t1 -> t0 (absent when the sector reaches the origin)
    if (s.r0 > 0.0)
      acc += integrate_piece(
          q,
          [&](double t) {
            const double th = s.t1 + t * (s.t0 - s.t1);
            const cplx e(std::cos(th), std::sin(th));
            return std::pair<cplx, cplx>(s.r0 * e, cplx(0, 1) * (s.t0 - s.t1) * s.r0 * e);
          },
          panels, proximity);
    // radial edge at t0, r0 -> r1
    acc += integrate_piece(
        q,
        [&](double t) {
          const cplx e(std::cos(s.t0), std::sin(s.t0));
          const double r = s.r0 + t * (s.r1 - s.r0);
          return std::pair<cplx, cplx>(r * e, (s.r1 - s.r0) * e);
        },
        panels, proximity);
    const cplx w = acc / (2.0 * M_PI * cplx(0.0, 1.0));
    const double nearest = std::round(w.real());
    if (std::abs(w - cplx(nearest)) <= 0.1 && std::abs(w - prev) <= 0.05)
      return static_cast<int>(nearest);
    prev = w;
  }
  throw ContourHit{};
}

// Newton refinement from a starting guess; returns the root when the
// step converges and the residual is small.
std::optional<cplx> newton_refine(const QFunc& q, cplx z0) {
  cplx z = z0;
  for (int it = 0; it < 80; ++it) {
    const cplx f = q.eval(z);
    const cplx df = q.deriv(z);
    if (std::abs(df) <= kTiny) return std::nullopt;
    const cplx step = f / df;
    z -= step;
    if (!(std::abs(z) < 1e6)) return std::nullopt;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) {
      if (std::abs(q.eval(z)) <= 1e-9 * q.scale) return z;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool inside_sector(cplx z, const Sector& s, double base_angle) {
  const double r = std::abs(z);
  const double mr = 0.1 * (s.r1 - s.r0) + 1e-12;
  if (r < s.r0 - mr || r > s.r1 + mr) return false;
  double th = std::arg(z);
  while (th < base_angle) th += 2.0 * M_PI;
  while (th >= base_angle + 2.0 * M_PI) th -= 2.0 * M_PI;
  const double mt = 0.1 * (s.t1 - s.t0) + 1e-12;
  return th >= s.t0 - mt && th <= s.t1 + mt;
}

void sort_roots(std::vector<cplx>& roots) {
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

RootReport solve_mp(std::vector<MpC> coeffs) {
  RootReport rep;
  rep.method = RootMethod::PolynomialSolve;
  std::vector<cplx> roots;
  while (coeffs.size() > 1 && norm_sq(coeffs.front()) == 0) {
    roots.push_back(0.0);
    coeffs.erase(coeffs.begin());
  }
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d == 1) {
    roots.push_back(to_d(-coeffs[0] / coeffs[1]));
  } else if (d >= 2) {
    bool ok = false;
    const auto mp_roots = aberth_mp(coeffs, &ok);
    if (!ok) {
      rep.converged = false;
      rep.note = "Aberth iteration cap reached";
    }
    for (const MpC& r : mp_roots) roots.push_back(to_d(r));
  }
  sort_roots(roots);
  rep.roots = roots;
  // residuals evaluated in extended precision at the reported (rounded)
  // roots; plain double Horner is pure noise at these coefficient scales
  for (const cplx& r : rep.roots)
    rep.residuals.push_back(to_d(abs(mp_eval(coeffs, MpC(r.real(), r.imag())))));

  const auto cc = poly_circle_count(coeffs, 1.0, 512);
  rep.disk_count = cc.count;
  rep.count_radius = cc.radius;
  int inside = 0;
  for (const cplx& r : rep.roots)
    if (std::abs(r) < cc.radius) ++inside;
  if (inside != cc.count) {
    rep.converged = false;
    rep.note += (rep.note.empty() ? "" : "; ");
    rep.note += "argument-principle count disagrees with located roots";
  }
  return rep;
}

}  // namespace

PolyC::PolyC(std::vector<cplx> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && coeffs.back() == cplx(0.0)) coeffs.pop_back();
  if (coeffs.empty() || (coeffs.size() == 1 && coeffs[0] == cplx(0.0)))
    throw std::domain_error("PolyC: zero polynomial");
}

cplx PolyC::eval(cplx z) const {
  cplx acc = coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * z + coeffs[j];
  return acc;
}

cplx PolyC::deriv(cplx z) const {
  if (coeffs.size() < 2) return 0.0;
  cplx acc = static_cast<double>(coeffs.size() - 1) * coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 1;)
    acc = acc * z + static_cast<double>(j) * coeffs[j];
  return acc;
}

double PolyC::max_coeff() const {
  double m = 0.0;
  for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

LemniscateSpec::LemniscateSpec(double tau_) : tau(tau_) {
  if (!(tau > 0.0)) throw std::domain_error("LemniscateSpec: tau > 0 required");
  level = std::pow(tau, tau) / std::pow(1.0 + tau, 1.0 + tau);
  half_plane = tau / (tau + 1.0);
}

PolyC q_poly_coeffs(const SpaceParams& p) {
  auto c = q_terminating_coeffs(p);
  if (!c)
    throw std::domain_error(
        "q_poly_coeffs: Q_{a,b} terminates only for integer a >= 0 or "
        "negative integer b");
  return PolyC(std::vector<cplx>(c->begin(), c->end()));
}

RootReport poly_roots(const PolyC& q) {
  if (q.degree() < 1) throw std::invalid_argument("poly_roots: degree >= 1 required");
  std::vector<MpC> coeffs;
  coeffs.reserve(q.coeffs.size());
  for (const cplx& c : q.coeffs) coeffs.emplace_back(c.real(), c.imag());
  return solve_mp(std::move(coeffs));
}

RootReport q_poly_roots(const SpaceParams& p) {
  const auto deg = terminating_degree(HypParams{{p.b, -(p.a + 1.0)}, {p.b + p.n}});
  if (!deg) throw std::domain_error("q_poly_roots: Q_{a,b} does not terminate");
  if (*deg < 1) {
    RootReport rep;
    rep.method = RootMethod::PolynomialSolve;
    rep.disk_count = 0;
    return rep;
  }
  // coefficient recurrence in extended precision
  std::vector<MpC> coeffs(*deg + 1);
  coeffs[0] = 1;
  const MpReal a(p.a), b(p.b), n(p.n);
  for (unsigned j = 0; j < *deg; ++j) {
    const MpReal jd(j);
    coeffs[j + 1] =
        coeffs[j] * MpC((b + jd) * (-(a + 1) + jd) / ((b + n + jd) * (jd + 1)));
  }
  return solve_mp(std::move(coeffs));
}

int count_zeros_disk(const SpaceParams& p, double radius, int nodes) {
  if (!(radius > 0.0)) throw std::domain_error("count_zeros_disk: radius > 0 required");
  const QFunc q = QFunc::make(p);
  if (!q.poly && radius > 1.0)
    throw std::domain_error("count_zeros_disk: series route requires radius <= 1");
  return circle_count(q, radius, nodes).count;
}

RootReport find_zeros_disk(const SpaceParams& p, double radius, int depth_cap) {
  if (!(radius > 0.0 && radius <= 1.0))
    throw std::domain_error("find_zeros_disk: radius in (0,1] required");
  const QFunc q = QFunc::make(p);
  RootReport rep;
  rep.method = RootMethod::ContourSubdivision;

  const auto top = circle_count(q, radius, 4096);
  rep.disk_count = top.count;
  rep.count_radius = top.radius;
  if (top.count == 0) return rep;

  // Quarter-disk seeds; the whole frame rotates when a zero sits on a
  // seed split line.
  static constexpr double kBase[4] = {0.0, 0.3, 0.61, 0.95};
  double base_angle = 0.0;
  std::deque<Sector> work;
  bool seeded = false;
  for (double base : kBase) {
    try {
      std::deque<Sector> candidate;
      int sum = 0;
      for (int k = 0; k < 4; ++k) {
        Sector s{0.0, top.radius, base + k * M_PI / 2.0, base + (k + 1) * M_PI / 2.0, 0, 0};
        s.count = sector_winding(q, s);
        sum += s.count;
        if (s.count > 0) candidate.push_back(s);
      }
      if (sum != top.count) continue;
      work = std::move(candidate);
      base_angle = base;
      seeded = true;
      break;
    } catch (const ContourHit&) {
      continue;
    }
  }
  if (!seeded)
    throw std::runtime_error("find_zeros_disk: could not seed quadrant contours");

  static constexpr double kSplit[5][2] = {
      {0.5, 0.5}, {0.53, 0.47}, {0.44, 0.56}, {0.5, 0.43}, {0.57, 0.5}};

  std::vector<cplx> roots;
  auto record = [&](cplx z) {
    for (const cplx& r : roots)
      if (std::abs(r - z) <= 1e-8 * (1.0 + std::abs(z))) return false;
    roots.push_back(z);
    return true;
  };

  while (!work.empty()) {
    Sector s = work.front();
    work.pop_front();
    if (s.count <= 0) continue;

    if (s.count == 1 || s.diameter() <= 1e-3) {
      if (auto z = newton_refine(q, s.center())) {
        if (inside_sector(*z, s, base_angle)) {
          if (!record(*z)) {
            rep.converged = false;
            rep.note = "duplicate root across sectors";
          } else if (s.count > 1) {
            rep.converged = false;
            rep.note = "unresolved multiple zeros in one sector";
          }
          continue;
        }
      }
      if (s.diameter() <= 1e-10) {
        rep.converged = false;
        rep.note = "sector exhausted without locating its zero";
        continue;
      }
    }

    if (s.depth >= depth_cap) {
      rep.converged = false;
      rep.note = "subdivision depth cap reached";
      continue;
    }

    bool split_done = false;
    for (const auto& frac : kSplit) {
      const double rm = s.r0 + frac[0] * (s.r1 - s.r0);
      const double tm = s.t0 + frac[1] * (s.t1 - s.t0);
      try {
        Sector children[4] = {
            {s.r0, rm, s.t0, tm, 0, s.depth + 1}, {rm, s.r1, s.t0, tm, 0, s.depth + 1},
            {s.r0, rm, tm, s.t1, 0, s.depth + 1}, {rm, s.r1, tm, s.t1, 0, s.depth + 1}};
        int sum = 0;
        for (auto& ch : children) {
          ch.count = sector_winding(q, ch);
          sum += ch.count;
        }
        if (sum != s.count) continue;  // a zero slipped through a split line
        for (auto& ch : children)
          if (ch.count > 0) work.push_back(ch);
        split_done = true;
        break;
      } catch (const ContourHit&) {
        continue;
      }
    }
    if (!split_done) {
      rep.converged = false;
      rep.note = "could not split sector away from its zeros";
    }
  }

  sort_roots(roots);
  rep.roots = roots;
  for (const cplx& r : rep.roots) rep.residuals.push_back(std::abs(q.eval(r)));
  if (static_cast<int>(rep.roots.size()) != rep.disk_count) {
    rep.converged = false;
    if (rep.note.empty()) rep.note = "located roots disagree with winding total";
  }
  return rep;
}

bool has_zero_in_closed_disk(const SpaceParams& p) {
  const auto rep = find_zeros_disk(p, 1.0 - 1e-6, 48);
  if (!rep.roots.empty()) return true;
  // boundary heuristic: dense |Q| scan of the unit circle
  const QFunc q = QFunc::make(p);
  double min_abs = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 4096; ++j) {
    const double th = 2.0 * M_PI * j / 4096.0;
    min_abs = std::min(min_abs, std::abs(q.eval(cplx(std::cos(th), std::sin(th)))));
  }
  return min_abs < 1e-8 * std::max(1.0, q.scale);
}

ZeroWindowScan scan_zero_window(double a, int n, double b_lo, double b_hi, int steps,
                                double radius) {
  if (steps < 2) throw std::domain_error("scan_zero_window: at least 2 steps required");
  if (!(b_lo > -static_cast<double>(n)) || !(b_hi > b_lo))
    throw std::domain_error("scan_zero_window: need -n < b_lo < b_hi");
  ZeroWindowScan scan;
  for (int i = 0; i < steps; ++i) {
    const double b = b_lo + (b_hi - b_lo) * i / (steps - 1);
    const int count = count_zeros_disk(SpaceParams(a, b, n), radius, 1024);
    scan.counts.emplace_back(b, count);
  }
  // widest zero-free stretch containing b = 0 when possible, otherwise
  // the widest overall
  double best_lo = 0.0, best_hi = 0.0;
  double cur_lo = 0.0;
  bool open = false, best_has_zero = false;
  for (std::size_t i = 0; i <= scan.counts.size(); ++i) {
    const bool zero_free = i < scan.counts.size() && scan.counts[i].second == 0;
    if (zero_free && !open) {
      open = true;
      cur_lo = scan.counts[i].first;
    } else if (!zero_free && open) {
      open = false;
      const double cur_hi = scan.counts[i - 1].first;
      const bool has_zero = cur_lo <= 0.0 && cur_hi >= 0.0;
      const bool better = (has_zero && !best_has_zero) ||
                          (has_zero == best_has_zero && cur_hi - cur_lo > best_hi - best_lo);
      if (better) {
        best_lo = cur_lo;
        best_hi = cur_hi;
        best_has_zero = has_zero;
      }
    }
  }
  scan.window_lo = best_lo;
  scan.window_hi = best_hi;
  return scan;
}

std::vector<cplx> lemniscate_points(const LemniscateSpec& spec, int count, int* skipped) {
  if (count < 16) throw std::domain_error("lemniscate_points: count >= 16 required");
  const cplx corner(spec.half_plane, 0.0);
  auto level_gap = [&](cplx z) {
    // |z^tau (z-1)| - level, principal power (Re z > 0 on all rays used)
    return std::abs(std::pow(z, spec.tau) * (z - 1.0)) - spec.level;
  };
  // The loop-side level lines leave the self-intersection at +-45
  // degrees, so rays within that opening enter the loop interior.
  const double fan = 0.96 * M_PI / 4.0;
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  int skip = 0;
  for (int j = 0; j < count; ++j) {
    const double phi = -fan + 2.0 * fan * (j + 0.5) / count;
    const cplx dir(std::cos(phi), std::sin(phi));
    // march outward until the level is crossed from below
    double lo = 1e-4;
    if (level_gap(corner + lo * dir) >= 0.0) {
      ++skip;
      continue;
    }
    double hi = lo;
    bool bracketed = false;
    while (hi < 4.0) {
      hi *= 1.3;
      if (level_gap(corner + hi * dir) > 0.0) {
        bracketed = true;
        break;
      }
      lo = hi;
    }
    if (!bracketed) {
      ++skip;
      continue;
    }
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (level_gap(corner + mid * dir) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    pts.push_back(corner + 0.5 * (lo + hi) * dir);
  }
  if (skipped) *skipped = skip;
  return pts;
}

ClusterStats cluster_distance(const RootReport& report, const LemniscateSpec& spec,
                              int curve_samples) {
  if (curve_samples < 512)
    throw std::domain_error("cluster_distance: at least 512 curve samples required");
  const auto curve = lemniscate_points(spec, curve_samples);
  auto stats = [](std::vector<double> d) {
    std::pair<std::optional<double>, std::optional<double>> out;
    if (d.empty()) return out;
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    out.first = (m % 2 == 1) ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
    out.second = d.back();
    return out;
  };
  ClusterStats cs;
  std::vector<double> all, in_disk;
  for (const cplx& r : report.roots) {
    if (!(r.real() > spec.half_plane)) continue;
    double dist = std::numeric_limits<double>::infinity();
    for (const cplx& c : curve) dist = std::min(dist, std::abs(r - c));
    all.push_back(dist);
    if (std::abs(r) <= 1.0) in_disk.push_back(dist);
  }
  cs.qualifying = all.size();
  cs.qualifying_in_disk = in_disk.size();
  std::tie(cs.median, cs.max) = stats(std::move(all));
  std::tie(cs.median_in_disk, cs.max_in_disk) = stats(std::move(in_disk));
  return cs;
}

}  // namespace bergman
