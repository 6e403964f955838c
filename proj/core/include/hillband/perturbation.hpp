#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hillband/floquet.hpp"

namespace hillband {

/// Data for the first-order root of f(z) - s g(z) - t near a simple root
/// `center` of f.
struct ShiftInput {
  cplx center;
  cplx f_prime_at_center;
  cplx g_at_center;
  cplx s;
  cplx t;
};

/// center + (g / f') s + t / f'. DegenerateInput when f' vanishes.
cplx first_order_root_shift(const ShiftInput& in);

/// f = 2T_L(E/2), g = U_{L-1}(E/2), s = v, t = 2 cos kappa at alpha_j.
ShiftInput small_v_shift_input(int L, int j, cplx v, double kappa);

/// f = U_{L-1}(E/2), g = T_L(E/2), s = 2/v, t = -2 cos kappa / v at beta_k:
/// the level equation divided by -v.
ShiftInput large_v_shift_input(int L, int k, cplx v, double kappa);

/// alpha_j + v/L + 2(-1)^{j-1} sin(theta_j) cos(kappa) / L,
/// theta_j = (2j-1) pi / 2L. Valid for small |v| and small |cos kappa|.
cplx small_v_floquet_approx(int L, int j, cplx v, double kappa);

enum class CoefficientForm {
  /// beta_k - (4 sin^2 phi_k / L)/v + (-1)^k (4 sin^2 phi_k / L) cos(kappa)/v.
  Derived,
  /// Coefficient 2 sin^2 phi_k / L with the opposite cos(kappa) sign. Kept
  /// only for comparison; it misses the factor 1/2 of d/dE U_{L-1}(E/2) and
  /// fails the exact L = 2 expansion -(2 + 2 cos kappa)/v.
  Printed,
};

/// Floquet eigenvalue near beta_k for large |v|, phi_k = k pi / L.
cplx large_v_floquet_approx(int L, int k, cplx v, double kappa,
                            CoefficientForm form = CoefficientForm::Derived);

enum class Regime { SmallV, LargeV };

struct ApproxParameters {
  Regime regime;
  int period;
  int index;
  cplx impurity;
  double kappa;
};

struct ApproxReport {
  cplx approx;
  cplx numeric;
  double abs_error;
  ApproxParameters parameters;
  /// Set when |v| lies outside the regime's validity range (|v| > 1 for
  /// SmallV, |v| < 4 for LargeV). Computation still proceeds.
  std::optional<std::string> warning;
};

/// Pairs the approximation with the nearest numerically computed Floquet
/// eigenvalue. A tie closer than 1e-12 raises DegenerateInput.
ApproxReport approximation_error_report(Regime regime, int L, int index, cplx v, double kappa,
                                        const SolverOptions& options = {});

struct ErrorRatioRow {
  cplx impurity;
  double abs_error;
  std::optional<double> ratio;  ///< error / previous row's error
};

/// Errors for v = v0 * 2^{-m} (SmallV) or v0 * 2^{m} (LargeV), m = 0..steps-1.
/// Quadratic order shows up as ratios near 1/4.
std::vector<ErrorRatioRow> error_ratio_table(Regime regime, int L, int index, cplx v0, double kappa,
                                             int steps = 5, const SolverOptions& options = {});

const char* to_string(Regime regime);

}  // namespace hillband
