#pragma once

#include <span>
#include <vector>

#include "hillband/discriminant.hpp"

namespace hillband {

/// Floquet phase kappa in [0, pi].
class Quasimomentum {
 public:
  explicit Quasimomentum(double kappa);

  double value() const noexcept { return kappa_; }
  /// 2 cos(kappa), the discriminant level selected by this phase.
  double level() const;

 private:
  double kappa_;
};

struct SolverOptions {
  int max_iterations = 200;
  int newton_steps = 10;
  double step_tolerance = 1e-14;
  /// Accept a root when |Delta(E) - 2cos kappa| < residual_factor * max(1, |E|^L).
  double residual_factor = 1e-9;
  double cluster_tolerance = 1e-7;
};

struct RootCluster {
  cplx center;
  int multiplicity = 1;
};

/// The L roots of Delta_L(E) = 2 cos kappa, with multiplicity.
struct FloquetSet {
  Quasimomentum kappa{0.0};
  std::vector<cplx> roots;
  std::vector<double> residuals;

  /// Roots grouped within tol of each other; no deflation is performed.
  std::vector<RootCluster> clusters(double tol = 1e-7) const;
};

/// Residual acceptance bound used by the solver: factor * max(1, |E|^L).
double residual_bound(cplx E, int period, double factor);

/// All roots of Delta_L(E) = 2 cos kappa by Aberth-Ehrlich iteration on the
/// recurrence-evaluated discriminant, then Newton polish.
/// Throws NonConvergence when no start configuration meets the residual bound.
FloquetSet floquet_eigenvalues(const DiscriminantModel& model, Quasimomentum kappa,
                               const SolverOptions& options = {});

/// Roots of Delta_L'(E), the L - 1 critical points of the discriminant.
std::vector<cplx> critical_points(const DiscriminantModel& model, const SolverOptions& options = {});

/// A critical point lying in the spectrum: Delta(point) is real and in [-2, 2].
/// Two Floquet branches meet there at the given kappa.
struct SpectralCriticalPoint {
  cplx point;
  cplx value;
  double kappa;
};

std::vector<SpectralCriticalPoint> spectral_critical_points(const DiscriminantModel& model,
                                                            const SolverOptions& options = {});

struct ArcSample {
  double kappa;
  cplx E;
};

/// One Floquet branch E_j(kappa), kappa from 0 to pi.
struct SpectralArc {
  int branch_id = 0;
  std::vector<ArcSample> samples;
};

struct Window {
  double x_min, x_max, y_min, y_max;
  bool contains(cplx z) const {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
  }
};

struct ArcOptions {
  SolverOptions solver;
  /// Maximum bisection depth per base grid interval.
  int refine_levels = 8;
  /// Bisect when two roots are closer than refine_ratio * (largest step).
  double refine_ratio = 10.0;
  /// Branches closer than this at a common kappa belong to one component.
  /// Non-positive selects 1e-6 (1 + |v|).
  double merge_tolerance = 0.0;
  /// Add the kappa of every spectral critical point to the grid so that
  /// branch collisions are sampled exactly.
  bool insert_critical_levels = true;
  /// Worker threads for the base grid; results do not depend on it.
  int threads = 1;
};

struct ArcTrace {
  std::vector<SpectralArc> arcs;
  std::vector<int> component_of;  ///< component label per branch
  int component_count = 0;
  double merge_tolerance = 0.0;

  /// Number of distinct components with at least one sample inside window.
  int components_within(const Window& window) const;
};

/// Uniform grid of `points` values from 0 to pi inclusive.
std::vector<double> uniform_kappa_grid(int points = 257);

/// Branch tracing over a strictly increasing kappa grid that starts at 0 and
/// ends at pi. Roots at consecutive kappa are paired by optimal assignment.
/// After a collision the branch labels are a convention of the tracer.
ArcTrace trace_arcs(const DiscriminantModel& model, std::span<const double> kappa_grid,
                    const ArcOptions& options = {});

struct Band {
  double lower;
  double upper;
};

/// Closed real intervals, rightmost first.
struct BandStructure {
  std::vector<Band> intervals;
};

/// Bands for real nonzero v: endpoints are the real roots of Delta = +2 and
/// Delta = -2. Throws DegenerateInput for v = 0 or non-real v.
BandStructure real_bands(const DiscriminantModel& model, const SolverOptions& options = {});

/// The free Laplacian spectrum [-2, 2].
BandStructure free_band();

struct EndpointMembership {
  bool plus2_in_spectrum;
  bool minus2_in_spectrum;
};

/// Tests Delta(+-2) in [-2, 2] directly.
EndpointMembership endpoint_membership(const DiscriminantModel& model);

/// sgn(v) sqrt(4 + v^2); DegenerateInput for v = 0.
double outer_band_limit(double v);

/// Edges of the band outside [-2, 2] for real v with |v| > 4/L, together with
/// their offsets from outer_band_limit(v). The offsets come from the
/// hyperbolic form of the level equation and keep full relative precision even
/// when the band is narrower than the spacing of doubles near the limit.
struct OuterBand {
  double lower;
  double upper;
  double lower_offset;
  double upper_offset;
  double limit;

  /// Hausdorff distance from the band to the limit point.
  double distance_to_limit() const;
};

OuterBand outer_band(const DiscriminantModel& model);

/// True iff every point lies in [-2 - |v| - slack, 2 + |v| + slack]. Requires real v.
bool kato_bound_check(const DiscriminantModel& model, std::span<const double> points,
                      double slack = 0.0);

}  // namespace hillband
