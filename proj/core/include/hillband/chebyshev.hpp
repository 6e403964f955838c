#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hillband {

using cplx = std::complex<double>;

enum class ChebKind { First, Second };

/// Roots of T_n or U_n, strictly decreasing in x (index 1 is the rightmost).
struct NodeSet {
  ChebKind kind = ChebKind::First;
  int degree = 0;
  std::vector<double> nodes;
};

/// Value together with first and second derivatives.
struct ChebJet {
  cplx value;
  cplx d1;
  cplx d2;
};

/// Radius around z = +-1 inside which the second-kind derivative switches
/// from the closed quotient form to its Taylor expansion.
inline constexpr double kSecondKindDerivativeGuard = 1e-6;

/// T_n(z) or U_n(z) by the forward three-term recurrence.
cplx cheb_eval(ChebKind kind, int n, cplx z);

/// T_n'(z) = n U_{n-1}(z); U_n'(z) from ((n+1)T_{n+1} - zU_n)/(z^2-1),
/// replaced by the exact Taylor expansion about +-1 inside the guard radius.
cplx cheb_deriv(ChebKind kind, int n, cplx z);

/// Value, first and second derivative through the differentiated recurrence.
/// Regular everywhere; used where a second derivative is needed.
ChebJet cheb_jet(ChebKind kind, int n, cplx z);

/// U_n^{(k)}(1) = (n+k+1)! / ((n-k)! (2k+1)!!), zero for k > n.
double second_kind_derivative_at_one(int n, int k);

NodeSet cheb_nodes(ChebKind kind, int n);

/// Gauss-Chebyshev rule for the weight 1/sqrt(1-x^2) (First) or
/// sqrt(1-x^2) (Second). Exact for polynomial f of degree <= 2 n_nodes - 1.
cplx gauss_cheb_integrate(ChebKind kind, const std::function<cplx(double)>& f,
                          int n_nodes);

}  // namespace hillband
