#pragma once

#include <optional>
#include <vector>

#include "hillband/chebyshev.hpp"

namespace hillband {

/// Period-L potential. Sparse by default: V(layout) = impurity, zero
/// elsewhere. A general length-L sequence may be supplied instead; only the
/// transfer-matrix routines accept it.
class Potential {
 public:
  static Potential sparse(int period, cplx impurity, int layout = 1);
  static Potential general(std::vector<cplx> values);

  int period() const noexcept { return period_; }
  cplx impurity() const noexcept { return impurity_; }
  int layout() const noexcept { return layout_; }
  bool is_sparse() const noexcept { return !general_values_.has_value(); }
  const std::optional<std::vector<cplx>>& general_values() const noexcept {
    return general_values_;
  }

  /// V(n) for n in 1..period.
  cplx value_at(int n) const;

 private:
  Potential(int period, cplx impurity, int layout, std::optional<std::vector<cplx>> values);

  int period_;
  cplx impurity_;
  int layout_;
  std::optional<std::vector<cplx>> general_values_;
};

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Transfer2x2 {
  cplx a{1.0};
  cplx b{0.0};
  cplx c{0.0};
  cplx d{1.0};

  static Transfer2x2 identity() { return {}; }
  cplx trace() const { return a + d; }
  cplx det() const { return a * d - b * c; }

  friend Transfer2x2 operator*(const Transfer2x2& x, const Transfer2x2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

struct MonodromyOptions {
  /// Compute runs of free steps by binary powering of the free step matrix.
  /// Only applies to sparse potentials; changes rounding, not the value.
  bool fast_free_power = false;
};

/// A_n(E) = [[E - V(n), -1], [1, 0]].
Transfer2x2 step_matrix(const Potential& pot, int n, cplx E);

/// A_L(E) ... A_1(E), multiplied left to right in that order.
Transfer2x2 monodromy(const Potential& pot, cplx E, MonodromyOptions options = {});

/// Hill discriminant as the monodromy trace.
cplx discriminant_via_transfer(const Potential& pot, cplx E, MonodromyOptions options = {});

/// tr(Phi_0(E)^n) by repeated multiplication with the free step matrix.
cplx power_trace(int n, cplx E);

}  // namespace hillband
