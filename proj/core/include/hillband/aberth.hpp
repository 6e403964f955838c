#pragma once

#include <functional>
#include <vector>

#include "hillband/chebyshev.hpp"

namespace hillband {

struct PolyEval {
  cplx value;
  cplx derivative;
};

/// Evaluates p(z) and p'(z). The polynomial never has to be expanded into
/// monomial coefficients.
using PolyFunction = std::function<PolyEval(cplx)>;

struct AberthOptions {
  int max_iterations = 200;
  int newton_steps = 10;
  /// A root is frozen once its correction drops below step_tolerance * (1 + |z|),
  /// or once a correction below 1e-10 * (1 + |z|) stops shrinking.
  double step_tolerance = 1e-14;
};

struct AberthResult {
  std::vector<cplx> roots;
  int iterations = 0;
  bool converged = false;
};

/// Simultaneous Aberth-Ehrlich iteration for all roots of a polynomial whose
/// degree equals initial.size(), followed by a residual-decreasing Newton polish.
AberthResult aberth_ehrlich(const PolyFunction& p, std::vector<cplx> initial,
                            const AberthOptions& options = {});

/// Newton steps on one root, accepted only while |p| decreases.
cplx newton_polish(const PolyFunction& p, cplx z, int max_steps);

}  // namespace hillband
