#include "hillband/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hillband {

namespace {

void require_degree(int n, int minimum, const char* what) {
  if (n < minimum) {
    throw std::invalid_argument(std::string(what) + ": degree " + std::to_string(n) +
                                " below " + std::to_string(minimum));
  }
}

// U_n'(1 + delta) summed from the exact derivatives at 1. U_n' has degree
// n - 1, so the series terminates; in practice |delta| < guard and the terms
// die off after a few steps.
cplx second_kind_derivative_series(int n, cplx delta) {
  if (n == 0) return 0.0;
  // c_k = U_n^{(k)}(1) / (k-1)!
  double c = static_cast<double>(n) * (n + 1) * (n + 2) / 3.0;
  cplx sum = c;
  cplx power = 1.0;
  for (int k = 1; k < n; ++k) {
    c *= static_cast<double>(n + k + 2) * (n - k) / ((2.0 * k + 3.0) * k);
    power *= delta;
    const cplx term = c * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

cplx cheb_eval(ChebKind kind, int n, cplx z) {
  require_degree(n, 0, "cheb_eval");
  if (n == 0) return 1.0;
  const cplx two_z = 2.0 * z;
  cplx prev = 1.0;
  cplx curr = kind == ChebKind::First ? z : two_z;
  for (int k = 1; k < n; ++k) {
    const cplx next = two_z * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

cplx cheb_deriv(ChebKind kind, int n, cplx z) {
  if (kind == ChebKind::First) {
    require_degree(n, 1, "cheb_deriv(First)");
    return static_cast<double>(n) * cheb_eval(ChebKind::Second, n - 1, z);
  }
  require_degree(n, 0, "cheb_deriv(Second)");
  if (n == 0) return 0.0;
  if (std::abs(z - 1.0) < kSecondKindDerivativeGuard) {
    return second_kind_derivative_series(n, z - 1.0);
  }
  if (std::abs(z + 1.0) < kSecondKindDerivativeGuard) {
    // U_n(-z) = (-1)^n U_n(z)  =>  U_n'(z) = (-1)^{n+1} U_n'(-z)
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return sign * second_kind_derivative_series(n, -z - 1.0);
  }
  const cplx numer = static_cast<double>(n + 1) * cheb_eval(ChebKind::First, n + 1, z) -
                     z * cheb_eval(ChebKind::Second, n, z);
  return numer / (z * z - 1.0);
}

ChebJet cheb_jet(ChebKind kind, int n, cplx z) {
  require_degree(n, 0, "cheb_jet");
  if (n == 0) return {1.0, 0.0, 0.0};
  const cplx two_z = 2.0 * z;
  ChebJet prev{1.0, 0.0, 0.0};
  ChebJet curr = kind == ChebKind::First ? ChebJet{z, 1.0, 0.0} : ChebJet{two_z, 2.0, 0.0};
  for (int k = 1; k < n; ++k) {
    // y_{k+1} = 2z y_k - y_{k-1}, differentiated twice
    ChebJet next{two_z * curr.value - prev.value,
                 2.0 * curr.value + two_z * curr.d1 - prev.d1,
                 4.0 * curr.d1 + two_z * curr.d2 - prev.d2};
    prev = curr;
    curr = next;
  }
  return curr;
}

double second_kind_derivative_at_one(int n, int k) {
  require_degree(n, 0, "second_kind_derivative_at_one");
  if (k < 0) throw std::invalid_argument("second_kind_derivative_at_one: negative order");
  if (k > n) return 0.0;
  // (n+k+1)!/(n-k)! = prod_{m=n-k+1}^{n+k+1} m
  double value = 1.0;
  for (int m = n - k + 1; m <= n + k + 1; ++m) value *= m;
  for (int m = 1; m <= 2 * k + 1; m += 2) value /= m;
  return value;
}

NodeSet cheb_nodes(ChebKind kind, int n) {
  require_degree(n, 1, "cheb_nodes");
  NodeSet set{kind, n, {}};
  set.nodes.reserve(static_cast<std::size_t>(n));
  // cos(a) written as sin(pi/2 - a) so that symmetric pairs are exact
  // negatives and the middle node is exactly zero.
  for (int k = 1; k <= n; ++k) {
    const double angle = kind == ChebKind::First
                             ? (n - 2.0 * k + 1.0) * std::numbers::pi / (2.0 * n)
                             : (n + 1.0 - 2.0 * k) * std::numbers::pi / (2.0 * (n + 1.0));
    set.nodes.push_back(std::sin(angle));
  }
  return set;
}

cplx gauss_cheb_integrate(ChebKind kind, const std::function<cplx(double)>& f,
                          int n_nodes) {
  require_degree(n_nodes, 1, "gauss_cheb_integrate");
  const NodeSet set = cheb_nodes(kind, n_nodes);
  cplx sum = 0.0;
  if (kind == ChebKind::First) {
    for (double x : set.nodes) sum += f(x);
    return sum * (std::numbers::pi / n_nodes);
  }
  const double h = std::numbers::pi / (n_nodes + 1.0);
  for (int k = 1; k <= n_nodes; ++k) {
    const double s = std::sin(k * h);
    sum += s * s * f(set.nodes[static_cast<std::size_t>(k - 1)]);
  }
  return sum * h;
}

}  // namespace hillband
