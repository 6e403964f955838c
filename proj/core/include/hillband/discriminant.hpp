#pragma once

#include <variant>
#include <vector>

#include "hillband/chebyshev.hpp"
#include "hillband/transfer.hpp"

namespace hillband {

/// Distance from E = +-2 inside which eval_derivative uses the regular form
/// T_L'(E/2) - (v/2) U_{L-1}'(E/2) instead of the quotient form, whose
/// denominator E^2 - 4 vanishes there.
inline constexpr double kEdgeGuard = 1e-6;

struct DiscriminantJet {
  cplx value;
  cplx d1;
  cplx d2;
};

/// Hill discriminant of the sparse potential with period L and impurity v:
///   Delta_L(E) = 2 T_L(E/2) - v U_{L-1}(E/2),
/// a monic polynomial of degree L in E. Immutable.
class DiscriminantModel {
 public:
  DiscriminantModel(int period, cplx impurity);

  /// Throws DegenerateInput for a potential given by general values.
  static DiscriminantModel from_potential(const Potential& pot);

  int period() const noexcept { return period_; }
  cplx impurity() const noexcept { return impurity_; }

  cplx eval(cplx E) const;

  /// Delta_L'(E) = L U_{L-1}(E/2) - v (2L T_L(E/2) - E U_{L-1}(E/2)) / (E^2 - 4).
  /// Within kEdgeGuard of +-2 the regular form is used; at the points
  /// themselves this reproduces
  ///   Delta'(2)  = L^2 - v L (L^2 - 1) / 6,
  ///   Delta'(-2) = (-1)^{L+1} (L^2 + v L (L^2 - 1) / 6).
  cplx eval_derivative(cplx E) const;

  /// Value and two derivatives through the differentiated recurrence.
  DiscriminantJet jet(cplx E) const;

  /// alpha_j = 2 cos((2j-1) pi / 2L), j = 1..L: the roots of T_L(E/2).
  double alpha(int j) const;
  /// beta_k = 2 cos(k pi / L), k = 1..L-1: the roots of U_{L-1}(E/2).
  double beta(int k) const;

 private:
  int period_;
  cplx impurity_;
};

struct SpecialValues {
  cplx at_plus2;
  cplx at_minus2;
  std::vector<cplx> at_beta;  ///< at_beta[k-1] = Delta(beta_k)
};

SpecialValues special_values(const DiscriminantModel& model);

struct AlphaNode {
  int j;
};
struct BetaNode {
  int k;
};
struct PlusTwo {};
struct MinusTwo {};
using TaylorPoint = std::variant<AlphaNode, BetaNode, PlusTwo, MinusTwo>;

/// First-order expansion value + slope (E - center).
struct TaylorExpansion {
  cplx center;
  cplx value;
  cplx slope;

  cplx operator()(cplx E) const { return value + slope * (E - center); }
};

/// Centre and value come from closed forms (Delta(alpha_j) = v(-1)^j / sin theta_j,
/// Delta(beta_k) = 2(-1)^k, Delta(+-2) as in special_values). The slope is
/// always eval_derivative at the centre.
TaylorExpansion taylor_at(const DiscriminantModel& model, TaylorPoint point);

/// Slope at beta_k in closed form: v L (-1)^k / (2 sin^2(k pi / L)).
cplx beta_slope(const DiscriminantModel& model, int k);

/// Closed-form limits of the derivative at E = +2 and E = -2.
cplx derivative_at_plus_two(const DiscriminantModel& model);
cplx derivative_at_minus_two(const DiscriminantModel& model);

}  // namespace hillband
