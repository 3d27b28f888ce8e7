#pragma once

#include <span>
#include <vector>

#include "bergman/specfun.hpp"

namespace bergman {

/// The parameter triple (a, b, n) of the weighted measure on the unit
/// ball of C^n: weight |z|^{2b} (1-|z|^2)^a, valid for a > -1, b > -n.
struct SpaceParams {
  double a;
  double b;
  int n;

  SpaceParams(double a_, double b_, int n_);

  /// Exponent of the closed-form kernel denominator (1-xi)^{a+n+1}.
  double kernel_exponent() const { return a + n + 1.0; }
};

/// A point of the open unit ball; construction rejects |z| >= 1 - 1e-14
/// so that kernel denominators stay bounded away from zero.
class BallPoint {
 public:
  explicit BallPoint(std::vector<cplx> coords);
  static BallPoint origin(int n);

  int dim() const { return static_cast<int>(z_.size()); }
  const std::vector<cplx>& coords() const { return z_; }
  std::span<const cplx> span() const { return z_; }
  const cplx& operator[](int j) const { return z_[static_cast<std::size_t>(j)]; }
  double norm_sq() const { return norm_sq_; }
  double norm() const;

 private:
  std::vector<cplx> z_;
  double norm_sq_;
};

/// A point of the unit sphere, |xi| = 1 within 1e-12.
class UnitVector {
 public:
  explicit UnitVector(std::vector<cplx> coords);

  int dim() const { return static_cast<int>(xi_.size()); }
  const std::vector<cplx>& coords() const { return xi_; }
  std::span<const cplx> span() const { return xi_; }
  const cplx& operator[](int j) const { return xi_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<cplx> xi_;
};

/// Multi-index of monomial exponents, all entries >= 0.
struct MultiIndex {
  std::vector<int> exponents;

  explicit MultiIndex(std::vector<int> e);
  int dim() const { return static_cast<int>(exponents.size()); }
  int order() const;  // |alpha| = sum of entries
  bool operator==(const MultiIndex&) const = default;
};

/// Euclidean inner product sum z_j * conj(w_j); conjugate-linear in w.
cplx inner(std::span<const cplx> z, std::span<const cplx> w);
cplx inner(const BallPoint& z, const BallPoint& w);

/// Monomial z^alpha.
cplx monomial(std::span<const cplx> z, const MultiIndex& alpha);

/// The ball involution exchanging 0 and z, phi_z(zeta).
BallPoint moebius(const BallPoint& z, const BallPoint& zeta);

/// Real Jacobian determinant of phi_z at zeta:
/// ((1-|z|^2)/|1-<zeta,z>|^2)^{n+1}.
double moebius_jacobian(const BallPoint& z, const BallPoint& zeta);

/// (1-|z|^2)(1-|zeta|^2)/|1-<zeta,z>|^2, which equals 1-|phi_z(zeta)|^2.
double one_minus_phi_sq(const BallPoint& z, const BallPoint& zeta);

/// Exact sphere moment: integral of |xi^alpha|^2 over the unit sphere of
/// C^n equals 2 pi^n alpha! / (|alpha|+n-1)!.
double monomial_sphere_moment(const MultiIndex& alpha, int n);

/// Total sphere measure 2 pi^n / (n-1)!.
double sphere_measure(int n);

/// Exact weighted-ball moment of z^alpha conj(z)^gamma: zero off the
/// diagonal; for alpha = gamma with k = |alpha|,
/// (n-1)! alpha! G(a+b+n+1) G(k+b+n) / ((k+n-1)! G(b+n) G(k+a+b+n+1)),
/// evaluated in log space.
double monomial_ball_moment(const MultiIndex& alpha, const MultiIndex& gamma,
                            const SpaceParams& p);

}  // namespace bergman
