#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hillband/floquet.hpp"

namespace hillband::cli {

struct Region {
  double x_min, x_max, y_min, y_max;
};

/// [-(2 + |v| + 1), 2 + |v| + 1]^2.
Region default_region(cplx v);

struct PlotSpec {
  Region region{-3.0, 3.0, -3.0, 3.0};
  int grid = 256;  ///< cells per axis
  std::vector<double> kappa_levels;
  bool arcs = false;
  bool nodes_alpha = false;
  bool nodes_beta = false;

  /// Throws std::invalid_argument unless x_min < x_max, y_min < y_max, grid >= 16
  /// and every kappa lies in [0, pi].
  void validate() const;
};

struct Point {
  double x, y;
};

struct Segment {
  Point a, b;
};

using ScalarField = std::function<double(double x, double y)>;

/// Zero set of `field` by marching squares on an n x n cell grid with linear
/// interpolation along cell edges. `samples` holds the (n+1)^2 node values row
/// by row from y_min; cells with an ambiguous (saddle) sign pattern are split
/// into `saddle_refine` x `saddle_refine` sub-cells evaluated from `field`.
std::vector<Segment> extract_contour(const ScalarField& field, const std::vector<double>& samples,
                                     const Region& region, int n, int saddle_refine = 4);

/// Same, sampling the grid itself.
std::vector<Segment> extract_contour(const ScalarField& field, const Region& region, int n,
                                     int saddle_refine = 4);

/// Pairwise intersections of two segment sets; points closer than
/// merge_radius are reported once.
std::vector<Point> intersections(const std::vector<Segment>& a, const std::vector<Segment>& b,
                                 double merge_radius);

struct LevelCurve {
  double kappa;
  double level;  ///< 2 cos kappa
  std::vector<Segment> segments;
};

struct PlotData {
  PlotSpec spec;
  std::vector<LevelCurve> level_curves;  ///< Re Delta = 2 cos kappa
  std::vector<Segment> imag_zero;        ///< Im Delta = 0
  std::vector<std::vector<Point>> arcs;
  std::vector<Point> alpha_nodes;
  std::vector<Point> beta_nodes;
};

/// Evaluates Delta on the grid (optionally on several threads; the result does
/// not depend on the thread count) and extracts every curve family.
PlotData build_plot(const DiscriminantModel& model, const PlotSpec& spec,
                    const ArcOptions& arc_options = {});

/// SVG 1.1 text. Levels +-2 are dashed, Im Delta = 0 dotted, arcs solid,
/// nodes filled circles.
std::string render_svg(const PlotData& data);

}  // namespace hillband::cli
