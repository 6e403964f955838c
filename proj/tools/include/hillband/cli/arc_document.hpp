#pragma once

#include <string>

#include "hillband/floquet.hpp"

namespace hillband::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Serialisable result of trace_arcs.
struct ArcDocument {
  int period = 0;
  cplx impurity;
  int base_grid_points = 0;
  int refined_grid_points = 0;
  double merge_tolerance = 0.0;
  std::vector<SpectralArc> branches;
  int component_count = 0;
};

ArcDocument make_arc_document(const DiscriminantModel& model, int base_grid_points,
                              const ArcTrace& trace);

/// {"L", "v": [re, im], "branches": [{"id", "samples": [[kappa, re, im], ...]}],
///  "components", "metadata": {...}}
std::string to_json(const ArcDocument& doc);

/// Header "branch,kappa,re,im", one row per sample, branches in id order.
std::string to_csv(const ArcDocument& doc);

}  // namespace hillband::cli
