#include "hillband/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hillband/errors.hpp"

namespace hillband {

namespace {

constexpr double kPi = std::numbers::pi;

double parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

void check_alpha_index(int L, int j) {
  if (L < 1) throw std::invalid_argument("period must be >= 1");
  if (j < 1 || j > L) {
    throw std::out_of_range("alpha index " + std::to_string(j) + " outside 1.." + std::to_string(L));
  }
}

void check_beta_index(int L, int k) {
  if (L < 1) throw std::invalid_argument("period must be >= 1");
  if (k < 1 || k > L - 1) {
    throw std::out_of_range("beta index " + std::to_string(k) + " outside 1.." + std::to_string(L - 1));
  }
}

// 2cos(kappa) with the exact endpoint levels.
double level_of(double kappa) { return Quasimomentum(kappa).level(); }

}  // namespace

cplx first_order_root_shift(const ShiftInput& in) {
  if (in.f_prime_at_center == cplx{0.0}) {
    throw DegenerateInput("first_order_root_shift: f'(center) = 0, root is not simple");
  }
  return in.center + in.g_at_center / in.f_prime_at_center * in.s + in.t / in.f_prime_at_center;
}

ShiftInput small_v_shift_input(int L, int j, cplx v, double kappa) {
  check_alpha_index(L, j);
  const double alpha = DiscriminantModel(L, 0.0).alpha(j);
  const cplx z = 0.5 * alpha;
  // d/dE 2T_L(E/2) = T_L'(E/2)
  return {alpha, cheb_deriv(ChebKind::First, L, z), cheb_eval(ChebKind::Second, L - 1, z), v,
          level_of(kappa)};
}

ShiftInput large_v_shift_input(int L, int k, cplx v, double kappa) {
  check_beta_index(L, k);
  if (v == cplx{0.0}) throw DegenerateInput("large_v_shift_input: v must be nonzero");
  const double beta = DiscriminantModel(L, 0.0).beta(k);
  const cplx z = 0.5 * beta;
  // d/dE U_{L-1}(E/2) = U_{L-1}'(E/2) / 2
  return {beta, 0.5 * cheb_deriv(ChebKind::Second, L - 1, z), cheb_eval(ChebKind::First, L, z),
          2.0 / v, -level_of(kappa) / v};
}

cplx small_v_floquet_approx(int L, int j, cplx v, double kappa) {
  check_alpha_index(L, j);
  const double theta = (2.0 * j - 1.0) * kPi / (2.0 * L);
  const double alpha = DiscriminantModel(L, 0.0).alpha(j);
  return alpha + v / static_cast<double>(L) +
         parity(j - 1) * std::sin(theta) * level_of(kappa) / static_cast<double>(L);
}

cplx large_v_floquet_approx(int L, int k, cplx v, double kappa, CoefficientForm form) {
  check_beta_index(L, k);
  if (v == cplx{0.0}) throw DegenerateInput("large_v_floquet_approx: v must be nonzero");
  const double s = std::sin(k * kPi / L);
  const double beta = DiscriminantModel(L, 0.0).beta(k);
  const double c = 0.5 * level_of(kappa);  // cos(kappa)
  if (form == CoefficientForm::Printed) {
    const double coef = 2.0 * s * s / L;
    return beta - coef / v - parity(k) * coef * c / v;
  }
  const double coef = 4.0 * s * s / L;
  return beta - coef / v + parity(k) * coef * c / v;
}

ApproxReport approximation_error_report(Regime regime, int L, int index, cplx v, double kappa,
                                        const SolverOptions& options) {
  ApproxReport report{};
  report.parameters = {regime, L, index, v, kappa};
  if (regime == Regime::SmallV) {
    report.approx = small_v_floquet_approx(L, index, v, kappa);
    if (std::abs(v) > 1.0) report.warning = "|v| > 1: outside the small-|v| regime";
  } else {
    report.approx = large_v_floquet_approx(L, index, v, kappa);
    if (std::abs(v) < 4.0) report.warning = "|v| < 4: outside the large-|v| regime";
  }
  const FloquetSet set = floquet_eigenvalues(DiscriminantModel(L, v), Quasimomentum(kappa), options);
  std::size_t best = 0;
  double best_d = std::abs(set.roots[0] - report.approx);
  for (std::size_t i = 1; i < set.roots.size(); ++i) {
    const double d = std::abs(set.roots[i] - report.approx);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  for (std::size_t i = 0; i < set.roots.size(); ++i) {
    if (i == best) continue;
    const double d = std::abs(set.roots[i] - report.approx);
    if (std::abs(d - best_d) < 1e-12 && std::abs(set.roots[i] - set.roots[best]) > 1e-12) {
      throw DegenerateInput("approximation_error_report: two Floquet roots equally near the approximation");
    }
  }
  report.numeric = set.roots[best];
  report.abs_error = std::abs(report.approx - report.numeric);
  return report;
}

std::vector<ErrorRatioRow> error_ratio_table(Regime regime, int L, int index, cplx v0, double kappa,
                                             int steps, const SolverOptions& options) {
  std::vector<ErrorRatioRow> rows;
  cplx v = v0;
  for (int m = 0; m < steps; ++m) {
    const ApproxReport r = approximation_error_report(regime, L, index, v, kappa, options);
    ErrorRatioRow row{v, r.abs_error, std::nullopt};
    if (!rows.empty() && rows.back().abs_error > 0.0) row.ratio = r.abs_error / rows.back().abs_error;
    rows.push_back(row);
    v = regime == Regime::SmallV ? v * 0.5 : v * 2.0;
  }
  return rows;
}

const char* to_string(Regime regime) { return regime == Regime::SmallV ? "small" : "large"; }

}  // namespace hillband
