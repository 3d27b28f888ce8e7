#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;

/// Truncation policy shared by every series evaluation in the library.
/// A series is declared converged once the term magnitude stays below
/// rel_tol * |partial sum| for three consecutive terms; abs_floor guards
/// against endless loops when the partial sum itself underflows.
struct SeriesControl {
  std::size_t max_terms = 200000;
  double rel_tol = 1e-14;
  double abs_floor = 1e-300;

  void validate() const;
};

/// Parameter block of a generalized hypergeometric series pFq:
/// numerators c_1..c_p over denominators d_1..d_q.
struct HypParams {
  std::vector<double> num;
  std::vector<double> den;
};

/// Natural log of the Gamma function for x > 0.
/// Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Euler beta function B(s,t) = Gamma(s)Gamma(t)/Gamma(s+t), s,t > 0.
double beta(double s, double t);

/// Rising factorial (c)_k = c(c+1)...(c+k-1), (c)_0 = 1.
double pochhammer(double c, unsigned k);

/// True if c is a nonpositive integer (within 1e-12 absolute).
bool is_nonpositive_integer(double c);

/// Index of the last nonzero term when some numerator is a nonpositive
/// integer, i.e. the polynomial degree of a terminating series.
std::optional<unsigned> terminating_degree(const HypParams& p);

/// Generalized hypergeometric series pFq evaluated by forward term
/// recurrence.  Requires a terminating series, |z| < 1, or the Gauss
/// boundary case p = q+1, |z| = 1 with sum(den) - sum(num) > 0.
/// Throws std::domain_error outside that domain and std::runtime_error
/// if max_terms is reached before the tail test is met.
cplx hyp_pfq(const HypParams& p, cplx z, const SeriesControl& ctrl = {});

/// Term-wise derivative of order 1 or 2: d/dz pFq(c; d; z) shifts every
/// parameter by one and scales by prod(c)/prod(d).
cplx hyp_pfq_derivative(const HypParams& p, cplx z, int order,
                        const SeriesControl& ctrl = {});

}  // namespace bergman
