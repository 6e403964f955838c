#include "hillband/aberth.hpp"

#include <cmath>

namespace hillband {

AberthResult aberth_ehrlich(const PolyFunction& p, std::vector<cplx> roots,
                            const AberthOptions& options) {
  const std::size_t n = roots.size();
  AberthResult result;
  std::vector<bool> frozen(n, false);
  std::vector<double> last_step(n, INFINITY);
  std::size_t n_frozen = 0;

  for (int iter = 0; iter < options.max_iterations && n_frozen < n; ++iter) {
    result.iterations = iter + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      const PolyEval e = p(roots[i]);
      if (e.value == cplx{0.0}) {
        frozen[i] = true;
        ++n_frozen;
        continue;
      }
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const cplx gap = roots[i] - roots[j];
        if (gap != cplx{0.0}) repulsion += 1.0 / gap;
      }
      cplx step;
      if (e.derivative == cplx{0.0}) {
        // Stationary point: nudge off it instead of dividing by zero.
        step = cplx{1e-8, 1e-8} * (1.0 + std::abs(roots[i]));
      } else {
        const cplx newton = e.value / e.derivative;
        const cplx denom = 1.0 - newton * repulsion;
        step = denom == cplx{0.0} ? newton : newton / denom;
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = cplx{1e-3, 1e-3} * (1.0 + std::abs(roots[i]));
      }
      roots[i] -= step;
      const double size = std::abs(step);
      const double scale = 1.0 + std::abs(roots[i]);
      // A small step that fails to shrink is rounding noise, not progress.
      const bool stalled = size <= 1e-10 * scale && size >= last_step[i];
      last_step[i] = size;
      if (size <= options.step_tolerance * scale || stalled) {
        frozen[i] = true;
        ++n_frozen;
      }
    }
  }
  result.converged = n_frozen == n;
  for (auto& z : roots) z = newton_polish(p, z, options.newton_steps);
  result.roots = std::move(roots);
  return result;
}

cplx newton_polish(const PolyFunction& p, cplx z, int max_steps) {
  PolyEval e = p(z);
  double best = std::abs(e.value);
  for (int step = 0; step < max_steps && best > 0.0; ++step) {
    if (e.derivative == cplx{0.0}) break;
    const cplx candidate = z - e.value / e.derivative;
    const PolyEval ce = p(candidate);
    const double r = std::abs(ce.value);
    if (!(r < best)) break;
    z = candidate;
    e = ce;
    best = r;
  }
  return z;
}

}  // namespace hillband
