#include "hillband/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hillband/transfer.hpp"

namespace hillband {

bool IdentityResult::holds(double rel) const { return abs_error < rel * (1.0 + std::abs(closed_form)); }

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
  QuadratureRule rule{std::vector<double>(static_cast<std::size_t>(n)),
                      std::vector<double>(static_cast<std::size_t>(n))};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-14) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[a] = x;
    rule.nodes[b] = -x;
    rule.weights[a] = w;
    rule.weights[b] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

cplx integrate_discriminant(const DiscriminantModel& model, int n_nodes) {
  const QuadratureRule rule = gauss_legendre_rule(n_nodes);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * model.eval(2.0 * rule.nodes[i]);
  return 2.0 * sum;  // dE = 2 dx
}

cplx integral_closed_form(int L, cplx v) {
  if (L < 1) throw std::invalid_argument("integral_closed_form: L must be >= 1");
  const double l = static_cast<double>(L);
  return L % 2 == 0 ? cplx{-8.0 / (l * l - 1.0)} : -4.0 * v / l;
}

IdentityResult integral_of_discriminant(const DiscriminantModel& model) {
  const int L = model.period();
  const cplx computed = integrate_discriminant(model, (L + 3) / 2);
  const cplx exact = integral_closed_form(L, model.impurity());
  return {computed, exact, std::abs(computed - exact)};
}

cplx weighted_square_norm(const DiscriminantModel& model, int n_nodes) {
  // (1/2pi) int |D(E)|^2 sqrt(4-E^2) dE  =  (2/pi) int |D(2x)|^2 sqrt(1-x^2) dx
  const cplx integral = gauss_cheb_integrate(
      ChebKind::Second, [&model](double x) { return cplx{std::norm(model.eval(2.0 * x))}; }, n_nodes);
  return integral * (2.0 / std::numbers::pi);
}

IdentityResult parseval_norm(const DiscriminantModel& model) {
  const int L = model.period();
  const cplx computed = weighted_square_norm(model, L + 2);
  const double v2 = std::norm(model.impurity());
  const cplx exact = (L >= 2 ? 2.0 : 1.0) + v2;
  return {computed, exact, std::abs(computed - exact)};
}

IdentityResult power_trace_identity(int n, cplx E) {
  const cplx computed = power_trace(n, E);
  const cplx exact = 2.0 * cheb_eval(ChebKind::First, n, 0.5 * E);
  return {computed, exact, std::abs(computed - exact)};
}

double beta_density_check(int L) {
  if (L < 2) throw std::invalid_argument("beta_density_check: L must be >= 2");
  const DiscriminantModel model(L, 0.0);
  std::vector<double> pts;
  for (int k = 1; k < L; ++k) pts.push_back(model.beta(k));
  std::sort(pts.begin(), pts.end());
  const double n = static_cast<double>(pts.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double cdf = 1.0 - std::acos(std::clamp(pts[i] / 2.0, -1.0, 1.0)) / std::numbers::pi;
    worst = std::max({worst, (i + 1.0) / n - cdf, cdf - i / n});
  }
  return worst;
}

}  // namespace hillband
