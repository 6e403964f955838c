#include "hillband/cli/arc_document.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace hillband::cli {

ArcDocument make_arc_document(const DiscriminantModel& model, int base_grid_points,
                              const ArcTrace& trace) {
  ArcDocument doc;
  doc.period = model.period();
  doc.impurity = model.impurity();
  doc.base_grid_points = base_grid_points;
  doc.refined_grid_points = trace.arcs.empty() ? 0 : static_cast<int>(trace.arcs.front().samples.size());
  doc.merge_tolerance = trace.merge_tolerance;
  doc.branches = trace.arcs;
  doc.component_count = trace.component_count;
  return doc;
}

std::string to_json(const ArcDocument& doc) {
  using nlohmann::ordered_json;
  ordered_json branches = ordered_json::array();
  for (const SpectralArc& arc : doc.branches) {
    ordered_json samples = ordered_json::array();
    for (const ArcSample& s : arc.samples) samples.push_back({s.kappa, s.E.real(), s.E.imag()});
    branches.push_back({{"id", arc.branch_id}, {"samples", std::move(samples)}});
  }
  const ordered_json j{
      {"L", doc.period},
      {"v", {doc.impurity.real(), doc.impurity.imag()}},
      {"branches", std::move(branches)},
      {"components", doc.component_count},
      {"metadata",
       {{"tool", "hillband"},
        {"version", kToolVersion},
        {"grid",
         {{"kind", "uniform+bisection"},
          {"base_points", doc.base_grid_points},
          {"refined_points", doc.refined_grid_points}}},
        {"merge_tolerance", doc.merge_tolerance}}},
  };
  return j.dump(1) + "\n";
}

std::string to_csv(const ArcDocument& doc) {
  std::string out = "branch,kappa,re,im\n";
  for (const SpectralArc& arc : doc.branches) {
    for (const ArcSample& s : arc.samples) {
      out += fmt::format("{},{},{},{}\n", arc.branch_id, s.kappa, s.E.real(), s.E.imag());
    }
  }
  return out;
}

}  // namespace hillband::cli
