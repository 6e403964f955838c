#pragma once

#include <vector>

#include "hillband/discriminant.hpp"

namespace hillband {

/// A quantity computed numerically next to its exact value.
struct IdentityResult {
  cplx computed;
  cplx closed_form;
  double abs_error;

  /// abs_error < rel * (1 + |closed_form|)
  bool holds(double rel) const;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on the
/// Legendre recurrence to 1e-14.
QuadratureRule gauss_legendre_rule(int n);

/// Exact value of the integral of Delta_L over [-2, 2]: -8/(L^2-1) for even L,
/// -4v/L for odd L. Half of it is the integral of Delta_L(2x) over [-1, 1].
cplx integral_closed_form(int L, cplx v);

/// Integral of Delta_L over [-2, 2] with ceil((L+2)/2) Legendre nodes against
/// integral_closed_form.
IdentityResult integral_of_discriminant(const DiscriminantModel& model);

/// Same integral with an explicit node count (for node-doubling checks).
cplx integrate_discriminant(const DiscriminantModel& model, int n_nodes);

/// (1/2pi) * integral of |Delta_L|^2 sqrt(4 - E^2) over [-2, 2], by a
/// second-kind Gauss-Chebyshev rule with L + 2 nodes after E = 2x, against
/// 2 + |v|^2 (L >= 2) or 1 + |v|^2 (L = 1).
IdentityResult parseval_norm(const DiscriminantModel& model);

cplx weighted_square_norm(const DiscriminantModel& model, int n_nodes);

/// tr(Phi_0(E)^n) by multiplication against 2 T_n(E/2).
IdentityResult power_trace_identity(int n, cplx E);

/// Kolmogorov-Smirnov distance between the empirical law of beta_1..beta_{L-1}
/// and the arcsine law with CDF 1 - acos(E/2)/pi on [-2, 2].
double beta_density_check(int L);

}  // namespace hillband
