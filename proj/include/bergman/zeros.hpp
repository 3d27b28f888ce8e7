#pragma once

#include <optional>
#include <string>

#include "bergman/kernel.hpp"

namespace bergman {

/// Complex polynomial in ascending-degree coefficient order; trailing
/// zero coefficients are trimmed on construction.
struct PolyC {
  std::vector<cplx> coeffs;

  explicit PolyC(std::vector<cplx> c);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx eval(cplx z) const;
  cplx deriv(cplx z) const;
  double max_coeff() const;
};

enum class RootMethod { PolynomialSolve, ContourSubdivision };

/// Located zeros plus an independent argument-principle count.
struct RootReport {
  std::vector<cplx> roots;
  std::vector<double> residuals;  // |Q(root)| per root
  int disk_count = 0;             // winding count inside |z| = count_radius
  double count_radius = 1.0;
  RootMethod method = RootMethod::PolynomialSolve;
  bool converged = true;          // false flags a partial report
  std::string note;
};

/// The loop of |z^tau (z-1)| = tau^tau/(1+tau)^{1+tau} in the half plane
/// Re z > tau/(tau+1).
struct LemniscateSpec {
  double tau;
  double level;
  double half_plane;

  explicit LemniscateSpec(double tau_);
};

/// Distances from qualifying roots (Re z > tau/(tau+1)) to the sampled
/// lemniscate loop; the in-disk sub-statistics track roots with |z| <= 1.
struct ClusterStats {
  std::size_t qualifying = 0;
  std::optional<double> median;
  std::optional<double> max;
  std::size_t qualifying_in_disk = 0;
  std::optional<double> median_in_disk;
  std::optional<double> max_in_disk;
};

/// Coefficients of the terminating Q_{a,b}; throws std::domain_error
/// when the series does not terminate.
PolyC q_poly_coeffs(const SpaceParams& p);

/// All complex roots by Aberth-Ehrlich simultaneous iteration with
/// Newton polish; disk_count is cross-checked by the argument principle.
/// The iteration runs in 50-digit arithmetic on the given coefficients:
/// the terminating Q_{a,b} families behave like perturbed (1-c z)^m and
/// their clustered roots sit below double evaluation noise.
RootReport poly_roots(const PolyC& q);

/// Roots of the terminating Q_{a,b} with the coefficient recurrence
/// itself carried in 50-digit arithmetic; required for faithful root
/// locations at degrees beyond ~15, where the double-rounded
/// coefficients already scatter the cluster.
RootReport q_poly_roots(const SpaceParams& p);

/// Zeros of Q_{a,b} inside |z| < radius by the argument principle:
/// trapezoid winding with adaptive node doubling (cap 2^16) and
/// deterministic radius nudges when a zero sits near the contour.
int count_zeros_disk(const SpaceParams& p, double radius, int nodes);

/// Zero search by recursive subdivision of polar sectors guided by
/// winding counts, with Newton refinement; works for non-terminating
/// parameters.  Evaluation stays inside the closed disk, where the
/// defining series converges.
RootReport find_zeros_disk(const SpaceParams& p, double radius, int depth_cap = 48);

/// Interior search at radius 1 - 1e-6 plus a boundary heuristic
/// (min |Q| over 4096 samples of the unit circle below 1e-8).
bool has_zero_in_closed_disk(const SpaceParams& p);

/// Empirical zero-count scan across b at fixed (a, n): the constants
/// bounding the no-zero window in b are not known in closed form, so
/// this reports observed counts and the widest scanned subinterval
/// around b = 0 with no zeros in the disk.
struct ZeroWindowScan {
  std::vector<std::pair<double, int>> counts;  // (b, count in |z| < radius)
  double window_lo = 0.0;  // observed zero-free subinterval
  double window_hi = 0.0;
};

ZeroWindowScan scan_zero_window(double a, int n, double b_lo, double b_hi, int steps,
                                double radius = 0.999);

/// Points on the lemniscate loop found by radial bisection along a fan
/// of directions from the self-intersection point tau/(tau+1).  Rays
/// that fail to bracket are skipped and counted in *skipped.
std::vector<cplx> lemniscate_points(const LemniscateSpec& spec, int count,
                                    int* skipped = nullptr);

ClusterStats cluster_distance(const RootReport& report, const LemniscateSpec& spec,
                              int curve_samples = 1024);

}  // namespace bergman
