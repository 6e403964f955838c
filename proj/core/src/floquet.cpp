#include "hillband/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "hillband/aberth.hpp"
#include "hillband/errors.hpp"
#include "hillband/matching.hpp"

namespace hillband {

namespace {

constexpr double kPi = std::numbers::pi;

AberthOptions to_aberth(const SolverOptions& o) {
  return {o.max_iterations, o.newton_steps, o.step_tolerance};
}

// Distinct directions for the start-point jitter.
cplx jitter(int m) { return std::polar(1.0, 0.4 + 2.1 * m); }

std::vector<cplx> free_start(int L, double kappa, cplx v) {
  std::vector<cplx> start;
  start.reserve(static_cast<std::size_t>(L));
  const double eps = 1e-3 * (1.0 + std::abs(v));
  for (int m = 0; m < L; ++m) {
    start.push_back(2.0 * std::cos((kappa + 2.0 * kPi * m) / L) + eps * jitter(m));
  }
  return start;
}

std::vector<cplx> beta_start(const DiscriminantModel& model) {
  const int L = model.period();
  const cplx v = model.impurity();
  std::vector<cplx> start;
  start.reserve(static_cast<std::size_t>(L));
  for (int k = 1; k < L; ++k) start.push_back(model.beta(k) + 1e-3 * jitter(k));
  // The remaining root leaves [-2, 2] and tends to v as |v| grows.
  start.push_back(v + 1e-3 * (1.0 + std::abs(v)) * jitter(0));
  return start;
}

std::vector<cplx> circle_start(int n, double radius, cplx center = 0.0) {
  std::vector<cplx> start;
  start.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    start.push_back(center + std::polar(radius, 2.0 * kPi * (m + 0.25) / n + 0.1));
  }
  return start;
}

struct Attempt {
  std::vector<cplx> roots;
  std::vector<double> residuals;
  bool accepted = false;
  double worst_excess = std::numeric_limits<double>::infinity();
};

Attempt try_level(const DiscriminantModel& model, double level, std::vector<cplx> start,
                  const SolverOptions& options) {
  const int L = model.period();
  const PolyFunction p = [&model, level](cplx E) {
    return PolyEval{model.eval(E) - level, model.eval_derivative(E)};
  };
  AberthResult r = aberth_ehrlich(p, std::move(start), to_aberth(options));
  Attempt a;
  a.roots = std::move(r.roots);
  a.residuals.reserve(a.roots.size());
  a.accepted = true;
  a.worst_excess = 0.0;
  for (const cplx& E : a.roots) {
    const double res = std::abs(model.eval(E) - level);
    a.residuals.push_back(res);
    const double bound = residual_bound(E, L, options.residual_factor);
    if (!(res < bound)) a.accepted = false;
    a.worst_excess = std::max(a.worst_excess, res / bound);
  }
  // Guards against two iterates settling on one simple root: the roots of
  // Delta_L - level sum to v (to v + level when L = 1, where the level is the
  // E^{L-1} coefficient).
  const cplx expected_sum = L == 1 ? model.impurity() + level : model.impurity();
  cplx sum = 0.0;
  double mag = 0.0;
  for (const cplx& E : a.roots) {
    sum += E;
    mag += std::abs(E);
  }
  if (std::abs(sum - expected_sum) > 1e-8 * (1.0 + mag)) a.accepted = false;
  return a;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

double min_separation(const std::vector<cplx>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

struct Slice {
  double kappa;
  std::vector<cplx> roots;  // ordered by branch
};

class ArcTracer {
 public:
  ArcTracer(const DiscriminantModel& model, const ArcOptions& options)
      : model_(model), options_(options) {}

  std::vector<cplx> solve(double kappa) const {
    return floquet_eigenvalues(model_, Quasimomentum(kappa), options_.solver).roots;
  }

  // Appends the samples strictly after `from` up to and including kappa_to.
  void advance(const Slice& from, double kappa_to, std::vector<cplx> raw_to, int depth,
               std::vector<Slice>& out) const {
    const auto perm = match_points(from.roots, raw_to);
    Slice to{kappa_to, std::vector<cplx>(raw_to.size())};
    for (std::size_t i = 0; i < perm.size(); ++i) to.roots[i] = raw_to[perm[i]];

    double displacement = 0.0;
    for (std::size_t i = 0; i < to.roots.size(); ++i) {
      displacement = std::max(displacement, std::abs(to.roots[i] - from.roots[i]));
    }
    const double separation = std::min(min_separation(from.roots), min_separation(to.roots));
    if (depth < options_.refine_levels && displacement > 0.0 &&
        separation < options_.refine_ratio * displacement) {
      const double mid = 0.5 * (from.kappa + kappa_to);
      std::vector<Slice> left;
      advance(from, mid, solve(mid), depth + 1, left);
      const Slice middle = left.back();
      out.insert(out.end(), left.begin(), left.end());
      advance(middle, kappa_to, std::move(raw_to), depth + 1, out);
      return;
    }
    out.push_back(std::move(to));
  }

 private:
  const DiscriminantModel& model_;
  const ArcOptions& options_;
};

void validate_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("trace_arcs: grid needs at least two points");
  if (grid.front() != 0.0 || std::abs(grid.back() - kPi) > 1e-12) {
    throw std::invalid_argument("trace_arcs: grid must start at 0 and end at pi");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("trace_arcs: grid not strictly increasing");
  }
}

void require_real_nonzero(cplx v, const char* what) {
  if (v.imag() != 0.0) throw DegenerateInput(std::string(what) + ": impurity must be real");
  if (v.real() == 0.0) throw DegenerateInput(std::string(what) + ": impurity must be nonzero");
}

}  // namespace

Quasimomentum::Quasimomentum(double kappa) : kappa_(kappa) {
  if (!(kappa >= 0.0 && kappa <= kPi)) {
    throw std::invalid_argument("Quasimomentum: kappa " + std::to_string(kappa) + " outside [0, pi]");
  }
}

double Quasimomentum::level() const {
  // Exact at the endpoints so that band edges solve Delta = +-2 exactly.
  if (kappa_ == 0.0) return 2.0;
  if (kappa_ == kPi) return -2.0;
  return 2.0 * std::cos(kappa_);
}

std::vector<RootCluster> FloquetSet::clusters(double tol) const {
  std::vector<RootCluster> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < tol) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

double residual_bound(cplx E, int period, double factor) {
  const double mag = std::abs(E);
  return factor * (mag > 1.0 ? std::pow(mag, period) : 1.0);
}

FloquetSet floquet_eigenvalues(const DiscriminantModel& model, Quasimomentum kappa,
                               const SolverOptions& options) {
  const int L = model.period();
  const cplx v = model.impurity();
  const double level = kappa.level();

  std::vector<std::vector<cplx>> starts;
  if (std::abs(v) <= 1.0) {
    starts.push_back(free_start(L, kappa.value(), v));
  } else {
    starts.push_back(beta_start(model));
  }
  starts.push_back(circle_start(L, 2.0 + std::abs(v) + 1.0));

  Attempt best;
  for (auto& start : starts) {
    Attempt a = try_level(model, level, std::move(start), options);
    if (a.accepted) return {kappa, std::move(a.roots), std::move(a.residuals)};
    if (a.worst_excess < best.worst_excess) best = std::move(a);
  }
  throw NonConvergence("floquet_eigenvalues: residual bound not met for L=" + std::to_string(L) +
                           " kappa=" + std::to_string(kappa.value()),
                       best.residuals);
}

std::vector<cplx> critical_points(const DiscriminantModel& model, const SolverOptions& options) {
  const int L = model.period();
  if (L < 2) return {};
  const PolyFunction p = [&model](cplx E) {
    const DiscriminantJet j = model.jet(E);
    return PolyEval{j.d1, j.d2};
  };
  const cplx v = model.impurity();
  std::vector<std::vector<cplx>> starts;
  {
    // Critical points of 2T_L(E/2) are the beta_k.
    std::vector<cplx> s;
    for (int k = 1; k < L; ++k) s.push_back(model.beta(k) + 1e-3 * (1.0 + std::abs(v)) * jitter(k));
    starts.push_back(std::move(s));
  }
  starts.push_back(circle_start(L - 1, 2.0 + std::abs(v) + 1.0));

  std::vector<cplx> best;
  double best_worst = std::numeric_limits<double>::infinity();
  for (auto& s : starts) {
    AberthResult r = aberth_ehrlich(p, std::move(s), to_aberth(options));
    double worst = 0.0;
    cplx sum = 0.0;
    double mag = 0.0;
    for (const cplx& z : r.roots) {
      const double bound = residual_bound(z, L - 1, options.residual_factor) * L;
      worst = std::max(worst, std::abs(model.jet(z).d1) / bound);
      sum += z;
      mag += std::abs(z);
    }
    // Delta' = L E^{L-1} - v (L-1) E^{L-2} + ..., so its roots sum to v (L-1)/L.
    const bool sum_ok = std::abs(sum - v * (L - 1.0) / static_cast<double>(L)) <= 1e-8 * (1.0 + mag);
    if (worst < 1.0 && sum_ok) return r.roots;
    if (worst < best_worst) {
      best_worst = worst;
      best = std::move(r.roots);
    }
  }
  throw NonConvergence("critical_points: residual bound not met");
}

std::vector<SpectralCriticalPoint> spectral_critical_points(const DiscriminantModel& model,
                                                            const SolverOptions& options) {
  std::vector<SpectralCriticalPoint> out;
  for (const cplx& c : critical_points(model, options)) {
    const cplx value = model.eval(c);
    const double tol = 1e-9 * (1.0 + std::abs(value));
    if (std::abs(value.imag()) > tol || std::abs(value.real()) > 2.0 + tol) continue;
    const double level = std::clamp(value.real(), -2.0, 2.0);
    out.push_back({c, value, std::acos(level / 2.0)});
  }
  return out;
}

int ArcTrace::components_within(const Window& window) const {
  std::vector<int> seen;
  for (std::size_t b = 0; b < arcs.size(); ++b) {
    const bool inside = std::any_of(arcs[b].samples.begin(), arcs[b].samples.end(),
                                    [&](const ArcSample& s) { return window.contains(s.E); });
    if (inside && std::find(seen.begin(), seen.end(), component_of[b]) == seen.end()) {
      seen.push_back(component_of[b]);
    }
  }
  return static_cast<int>(seen.size());
}

std::vector<double> uniform_kappa_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_kappa_grid: need at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = kPi * i / (points - 1);
  grid.back() = kPi;
  return grid;
}

ArcTrace trace_arcs(const DiscriminantModel& model, std::span<const double> kappa_grid,
                    const ArcOptions& options) {
  validate_grid(kappa_grid);
  std::vector<double> grid(kappa_grid.begin(), kappa_grid.end());
  grid.back() = kPi;
  if (options.insert_critical_levels) {
    for (const auto& c : spectral_critical_points(model, options.solver)) {
      const bool present = std::any_of(grid.begin(), grid.end(),
                                       [&](double k) { return std::abs(k - c.kappa) < 1e-12; });
      if (!present) grid.push_back(c.kappa);
    }
    std::sort(grid.begin(), grid.end());
  }

  // Base grid solves are independent; each worker owns a strided subset.
  std::vector<std::vector<cplx>> raw(grid.size());
  const ArcTracer tracer(model, options);
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) raw[i] = tracer.solve(grid[i]);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = static_cast<std::size_t>(w); i < grid.size();
               i += static_cast<std::size_t>(workers)) {
            raw[i] = tracer.solve(grid[i]);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Slice> slices;
  slices.push_back({grid.front(), std::move(raw.front())});
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Slice from = slices.back();
    tracer.advance(from, grid[i], std::move(raw[i]), 0, slices);
  }

  const std::size_t L = static_cast<std::size_t>(model.period());
  ArcTrace trace;
  trace.merge_tolerance =
      options.merge_tolerance > 0.0 ? options.merge_tolerance : 1e-6 * (1.0 + std::abs(model.impurity()));
  trace.arcs.resize(L);
  for (std::size_t b = 0; b < L; ++b) {
    trace.arcs[b].branch_id = static_cast<int>(b);
    trace.arcs[b].samples.reserve(slices.size());
  }
  DisjointSets sets(L);
  for (const Slice& s : slices) {
    for (std::size_t b = 0; b < L; ++b) {
      trace.arcs[b].samples.push_back({s.kappa, s.roots[b]});
      for (std::size_t c = b + 1; c < L; ++c) {
        if (std::abs(s.roots[b] - s.roots[c]) < trace.merge_tolerance) sets.unite(b, c);
      }
    }
  }
  std::vector<int> label(L, -1);
  trace.component_of.resize(L);
  for (std::size_t b = 0; b < L; ++b) {
    const std::size_t root = sets.find(b);
    if (label[root] < 0) label[root] = trace.component_count++;
    trace.component_of[b] = label[root];
  }
  return trace;
}

BandStructure real_bands(const DiscriminantModel& model, const SolverOptions& options) {
  require_real_nonzero(model.impurity(), "real_bands");
  const int L = model.period();

  struct Edge {
    double E;
    double level;
  };
  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(L));
  for (const double kappa : {0.0, kPi}) {
    const Quasimomentum q(kappa);
    const FloquetSet set = floquet_eigenvalues(model, q, options);
    for (const cplx& E : set.roots) {
      if (std::abs(E.imag()) >= 1e-8) {
        throw NonConvergence("real_bands: non-real root " + std::to_string(E.real()) + "+" +
                             std::to_string(E.imag()) + "i for real impurity");
      }
      const double x = E.real();
      const double slack = residual_bound(x, L, options.residual_factor);
      const double d = model.eval(x).real();
      if (d < -2.0 - slack || d > 2.0 + slack) {
        throw NonConvergence("real_bands: endpoint verification failed at " + std::to_string(x));
      }
      edges.push_back({x, q.level()});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.E < b.E; });

  BandStructure bands;
  for (std::size_t i = 0; i + 1 < edges.size(); i += 2) {
    const Edge& lo = edges[i];
    const Edge& hi = edges[i + 1];
    // Delta is monotone across a band, so its two edges sit on opposite levels.
    if (lo.level == hi.level) throw NonConvergence("real_bands: could not pair band edges");
    const double mid = 0.5 * (lo.E + hi.E);
    const double slack = residual_bound(mid, L, options.residual_factor);
    const double d = model.eval(mid).real();
    if (d < -2.0 - slack || d > 2.0 + slack) {
      throw NonConvergence("real_bands: midpoint test failed at " + std::to_string(mid));
    }
    bands.intervals.push_back({lo.E, hi.E});
  }
  std::reverse(bands.intervals.begin(), bands.intervals.end());
  // The band outside [-2, 2] can be narrower than the double spacing near its
  // limit; take its edges from the cancellation-free offsets.
  const double v = model.impurity().real();
  if (std::abs(v) * L > 4.0) {
    const OuterBand outer = outer_band(model);
    Band& b = v > 0.0 ? bands.intervals.front() : bands.intervals.back();
    b = {outer.lower, outer.upper};
  }
  return bands;
}

BandStructure free_band() { return {{{-2.0, 2.0}}}; }

EndpointMembership endpoint_membership(const DiscriminantModel& model) {
  const double L = model.period();
  // Delta(+-2) = 2 -+ ... carries rounding of order eps * L |v|, which matters
  // exactly at the boundary impurities v = +-4/L.
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * (2.0 + L * std::abs(model.impurity()));
  const auto inside = [tol](cplx d) {
    return std::abs(d.imag()) <= tol && d.real() >= -2.0 - tol && d.real() <= 2.0 + tol;
  };
  return {inside(model.eval(2.0)), inside(model.eval(-2.0))};
}

double outer_band_limit(double v) {
  if (v == 0.0) throw DegenerateInput("outer_band_limit: v must be nonzero");
  return std::copysign(std::sqrt(4.0 + v * v), v);
}

double OuterBand::distance_to_limit() const {
  return std::max(std::abs(lower_offset), std::abs(upper_offset));
}

OuterBand outer_band(const DiscriminantModel& model) {
  require_real_nonzero(model.impurity(), "outer_band");
  const int L = model.period();
  const double v = model.impurity().real();
  const double a = std::abs(v);
  if (!(a * L > 4.0)) throw DegenerateInput("outer_band: requires |v| > 4/L");
  const double limit_abs = std::sqrt(4.0 + a * a);

  // For E = 2 cosh(xi) > 2 write lam = e^xi and s = 2 sinh(xi). Then
  // Delta(E) = c  <=>  (s - v) lam^L + (s + v) lam^-L = c s, so
  //   s = v + lam^-L (c s - (s + v) lam^-L),
  // a contraction whose correction delta = s - v is computed directly.
  const auto offset_for = [&](double c) {
    double delta = 0.0;
    double prev_step = INFINITY;
    constexpr double settle = 4.0 * std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 500; ++iter) {
      const double s = a + delta;
      const double E = std::sqrt(4.0 + s * s);
      const double inv_pow = std::pow(0.5 * (s + E), -L);
      const double next = inv_pow * (c * s - (s + a) * inv_pow);
      const double step = std::abs(next - delta);
      // A contraction shrinks every step until rounding in s = a + delta takes
      // over; a step that fails to shrink marks that floor.
      const bool floor_reached = iter > 0 && step >= prev_step;
      if (step <= settle * std::abs(next) || floor_reached) {
        delta = floor_reached ? 0.5 * (next + delta) : next;
        const double Enew = std::sqrt(4.0 + (a + delta) * (a + delta));
        return delta * (2.0 * a + delta) / (Enew + limit_abs);
      }
      delta = next;
      prev_step = step;
    }
    throw NonConvergence("outer_band: offset iteration did not settle");
  };

  // Delta_L(-E; v) = (-1)^L Delta_L(E; -v): negative v mirrors to positive v
  // with the level sign flipped for odd L.
  const double flip = (v < 0.0 && L % 2 == 1) ? -1.0 : 1.0;
  const double off_plus = offset_for(2.0 * flip);    // edge where Delta = +2
  const double off_minus = offset_for(-2.0 * flip);  // edge where Delta = -2
  double lo_off = std::min(off_plus, off_minus);
  double hi_off = std::max(off_plus, off_minus);
  OuterBand band{};
  if (v > 0.0) {
    band.limit = limit_abs;
    band.lower_offset = lo_off;
    band.upper_offset = hi_off;
  } else {
    band.limit = -limit_abs;
    band.lower_offset = -hi_off;
    band.upper_offset = -lo_off;
  }
  band.lower = band.limit + band.lower_offset;
  band.upper = band.limit + band.upper_offset;
  return band;
}

bool kato_bound_check(const DiscriminantModel& model, std::span<const double> points, double slack) {
  if (model.impurity().imag() != 0.0) throw DegenerateInput("kato_bound_check: impurity must be real");
  const double reach = 2.0 + std::abs(model.impurity().real()) + slack;
  return std::all_of(points.begin(), points.end(), [reach](double x) { return std::abs(x) <= reach; });
}

}  // namespace hillband
