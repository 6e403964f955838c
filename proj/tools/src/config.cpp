#include "hillband/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>

namespace hillband::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T x{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigSyntaxError("config: bad value for " + key + ": '" + text + "'");
  }
  return x;
}

}  // namespace

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("config: cannot read " + path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigSyntaxError("config: line " + std::to_string(line_no) + " is not key=value");
    }
    entries[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return entries;
}

void apply_config(ToolConfig& config, const std::map<std::string, std::string>& entries) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto& solver = config.arcs.solver;
  const std::map<std::string, Setter> setters{
      {"solver.max_iterations", [&](auto& k, auto& v) { solver.max_iterations = parse_number<int>(k, v); }},
      {"solver.newton_steps", [&](auto& k, auto& v) { solver.newton_steps = parse_number<int>(k, v); }},
      {"solver.step_tolerance", [&](auto& k, auto& v) { solver.step_tolerance = parse_number<double>(k, v); }},
      {"solver.residual_factor", [&](auto& k, auto& v) { solver.residual_factor = parse_number<double>(k, v); }},
      {"solver.cluster_tolerance",
       [&](auto& k, auto& v) { solver.cluster_tolerance = parse_number<double>(k, v); }},
      {"arcs.refine_levels", [&](auto& k, auto& v) { config.arcs.refine_levels = parse_number<int>(k, v); }},
      {"arcs.refine_ratio", [&](auto& k, auto& v) { config.arcs.refine_ratio = parse_number<double>(k, v); }},
      {"arcs.merge_tolerance",
       [&](auto& k, auto& v) { config.arcs.merge_tolerance = parse_number<double>(k, v); }},
      {"threads", [&](auto& k, auto& v) { config.arcs.threads = parse_number<int>(k, v); }},
      {"plot.grid", [&](auto& k, auto& v) { config.plot_grid = parse_number<int>(k, v); }},
  };
  for (const auto& [key, value] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigSyntaxError("config: unknown key '" + key + "'");
    it->second(key, value);
  }
}

}  // namespace hillband::cli
