#include "hillband/cli/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace hillband::cli {

Region default_region(cplx v) {
  const double r = 2.0 + std::abs(v) + 1.0;
  return {-r, r, -r, r};
}

void PlotSpec::validate() const {
  if (!(region.x_min < region.x_max) || !(region.y_min < region.y_max)) {
    throw std::invalid_argument("plot region must satisfy x_min < x_max and y_min < y_max");
  }
  if (grid < 16) throw std::invalid_argument("plot grid must be at least 16");
  for (double k : kappa_levels) {
    if (!(k >= 0.0 && k <= std::numbers::pi)) throw std::invalid_argument("kappa level outside [0, pi]");
  }
}

namespace {

Point lerp(Point p, Point q, double fp, double fq) {
  const double t = fp / (fp - fq);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

// One cell with corners p0=(x0,y0), p1=(x1,y0), p2=(x1,y1), p3=(x0,y1).
// `center` resolves the two saddle cases.
void march_cell(const std::array<Point, 4>& p, const std::array<double, 4>& f, double center,
                std::vector<Segment>& out) {
  int mask = 0;
  for (int i = 0; i < 4; ++i) {
    if (f[static_cast<std::size_t>(i)] > 0.0) mask |= 1 << i;
  }
  if (mask == 0 || mask == 15) return;
  // Edge e joins corner e and corner (e + 1) % 4.
  auto edge_point = [&](int e) {
    const auto a = static_cast<std::size_t>(e);
    const auto b = static_cast<std::size_t>((e + 1) % 4);
    return lerp(p[a], p[b], f[a], f[b]);
  };
  std::vector<int> crossing;
  for (int e = 0; e < 4; ++e) {
    const bool sa = (mask >> e) & 1;
    const bool sb = (mask >> ((e + 1) % 4)) & 1;
    if (sa != sb) crossing.push_back(e);
  }
  if (crossing.size() == 2) {
    out.push_back({edge_point(crossing[0]), edge_point(crossing[1])});
    return;
  }
  // Saddle: corners 0 and 2 share a sign, 1 and 3 the other.
  const bool center_in = center > 0.0;
  const bool corner0_in = mask & 1;
  if (center_in == corner0_in) {
    // The inside region of corners 0, 2 connects through the centre.
    out.push_back({edge_point(0), edge_point(1)});
    out.push_back({edge_point(2), edge_point(3)});
  } else {
    out.push_back({edge_point(3), edge_point(0)});
    out.push_back({edge_point(1), edge_point(2)});
  }
}

bool is_saddle(const std::array<double, 4>& f) {
  const bool s0 = f[0] > 0.0, s1 = f[1] > 0.0, s2 = f[2] > 0.0, s3 = f[3] > 0.0;
  return s0 == s2 && s1 == s3 && s0 != s1;
}

void refine_cell(const ScalarField& field, double x0, double y0, double hx, double hy, int m,
                 std::vector<Segment>& out) {
  const double sx = hx / m, sy = hy / m;
  std::vector<double> v(static_cast<std::size_t>((m + 1) * (m + 1)));
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      v[static_cast<std::size_t>(j * (m + 1) + i)] = field(x0 + i * sx, y0 + j * sy);
    }
  }
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(j * (m + 1) + i)]; };
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double xa = x0 + i * sx, xb = x0 + (i + 1) * sx;
      const double ya = y0 + j * sy, yb = y0 + (j + 1) * sy;
      const std::array<double, 4> f{at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const double center = is_saddle(f) ? field(0.5 * (xa + xb), 0.5 * (ya + yb)) : 0.0;
      march_cell({Point{xa, ya}, Point{xb, ya}, Point{xb, yb}, Point{xa, yb}}, f, center, out);
    }
  }
}

std::vector<double> sample_grid(const ScalarField& field, const Region& r, int n) {
  const double hx = (r.x_max - r.x_min) / n, hy = (r.y_max - r.y_min) / n;
  std::vector<double> v(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(j * (n + 1) + i)] = field(r.x_min + i * hx, r.y_min + j * hy);
  }
  return v;
}

}  // namespace

std::vector<Segment> extract_contour(const ScalarField& field, const std::vector<double>& samples,
                                     const Region& r, int n, int saddle_refine) {
  if (samples.size() != static_cast<std::size_t>((n + 1) * (n + 1))) {
    throw std::invalid_argument("extract_contour: sample grid has the wrong size");
  }
  const double hx = (r.x_max - r.x_min) / n, hy = (r.y_max - r.y_min) / n;
  auto at = [&](int i, int j) { return samples[static_cast<std::size_t>(j * (n + 1) + i)]; };
  std::vector<Segment> out;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::array<double, 4> f{at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const double x0 = r.x_min + i * hx, y0 = r.y_min + j * hy;
      if (is_saddle(f) && saddle_refine > 1) {
        refine_cell(field, x0, y0, hx, hy, saddle_refine, out);
        continue;
      }
      const double center = is_saddle(f) ? field(x0 + 0.5 * hx, y0 + 0.5 * hy) : 0.0;
      march_cell({Point{x0, y0}, Point{x0 + hx, y0}, Point{x0 + hx, y0 + hy}, Point{x0, y0 + hy}}, f,
                 center, out);
    }
  }
  return out;
}

std::vector<Segment> extract_contour(const ScalarField& field, const Region& region, int n,
                                     int saddle_refine) {
  return extract_contour(field, sample_grid(field, region, n), region, n, saddle_refine);
}

std::vector<Point> intersections(const std::vector<Segment>& a, const std::vector<Segment>& b,
                                 double merge_radius) {
  std::vector<Point> found;
  for (const Segment& s : a) {
    const double sx0 = std::min(s.a.x, s.b.x), sx1 = std::max(s.a.x, s.b.x);
    const double sy0 = std::min(s.a.y, s.b.y), sy1 = std::max(s.a.y, s.b.y);
    for (const Segment& t : b) {
      if (std::max(t.a.x, t.b.x) < sx0 || std::min(t.a.x, t.b.x) > sx1 ||
          std::max(t.a.y, t.b.y) < sy0 || std::min(t.a.y, t.b.y) > sy1) {
        continue;
      }
      const double rx = s.b.x - s.a.x, ry = s.b.y - s.a.y;
      const double qx = t.b.x - t.a.x, qy = t.b.y - t.a.y;
      const double den = rx * qy - ry * qx;
      if (den == 0.0) continue;
      const double wx = t.a.x - s.a.x, wy = t.a.y - s.a.y;
      const double u = (wx * qy - wy * qx) / den;
      const double w = (wx * ry - wy * rx) / den;
      if (u < 0.0 || u > 1.0 || w < 0.0 || w > 1.0) continue;
      const Point p{s.a.x + u * rx, s.a.y + u * ry};
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Point& q) {
        return std::hypot(q.x - p.x, q.y - p.y) < merge_radius;
      });
      if (!dup) found.push_back(p);
    }
  }
  return found;
}

PlotData build_plot(const DiscriminantModel& model, const PlotSpec& spec, const ArcOptions& arc_options) {
  spec.validate();
  PlotData data;
  data.spec = spec;
  const Region& r = spec.region;
  const int n = spec.grid;
  const double hx = (r.x_max - r.x_min) / n, hy = (r.y_max - r.y_min) / n;

  std::vector<cplx> delta(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto fill_rows = [&](int j_begin, int j_end) {
    for (int j = j_begin; j < j_end; ++j) {
      for (int i = 0; i <= n; ++i) {
        delta[static_cast<std::size_t>(j * (n + 1) + i)] = model.eval({r.x_min + i * hx, r.y_min + j * hy});
      }
    }
  };
  const int threads = std::clamp(arc_options.threads, 1, n + 1);
  if (threads == 1) {
    fill_rows(0, n + 1);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + 1 + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int b = t * chunk, e = std::min(n + 1, b + chunk);
      if (b < e) pool.emplace_back(fill_rows, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> samples(delta.size());
  for (double kappa : spec.kappa_levels) {
    const double level = Quasimomentum(kappa).level();
    for (std::size_t i = 0; i < delta.size(); ++i) samples[i] = delta[i].real() - level;
    const ScalarField field = [&model, level](double x, double y) { return model.eval({x, y}).real() - level; };
    data.level_curves.push_back({kappa, level, extract_contour(field, samples, r, n)});
  }
  for (std::size_t i = 0; i < delta.size(); ++i) samples[i] = delta[i].imag();
  const ScalarField imag = [&model](double x, double y) { return model.eval({x, y}).imag(); };
  data.imag_zero = extract_contour(imag, samples, r, n);

  if (spec.arcs) {
    const std::vector<double> grid = uniform_kappa_grid();
    const ArcTrace trace = trace_arcs(model, grid, arc_options);
    for (const SpectralArc& arc : trace.arcs) {
      std::vector<Point> line;
      for (const ArcSample& s : arc.samples) line.push_back({s.E.real(), s.E.imag()});
      data.arcs.push_back(std::move(line));
    }
  }
  const int L = model.period();
  if (spec.nodes_alpha) {
    for (int j = 1; j <= L; ++j) data.alpha_nodes.push_back({model.alpha(j), 0.0});
  }
  if (spec.nodes_beta) {
    for (int k = 1; k < L; ++k) data.beta_nodes.push_back({model.beta(k), 0.0});
  }
  return data;
}

namespace {

constexpr double kCanvas = 640.0;

struct Mapper {
  Region r;
  double px(double x) const { return (x - r.x_min) / (r.x_max - r.x_min) * kCanvas; }
  double py(double y) const { return (r.y_max - y) / (r.y_max - r.y_min) * kCanvas; }
};

std::string segments_path(const std::vector<Segment>& segs, const Mapper& m) {
  std::string d;
  d.reserve(segs.size() * 32);
  for (const Segment& s : segs) {
    d += fmt::format("M{:.3f} {:.3f}L{:.3f} {:.3f}", m.px(s.a.x), m.py(s.a.y), m.px(s.b.x), m.py(s.b.y));
  }
  return d;
}

}  // namespace

std::string render_svg(const PlotData& data) {
  const Mapper m{data.spec.region};
  std::string out;
  out += fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n",
      kCanvas);
  out +=
      "<style>\n"
      ".frame{fill:#fff;stroke:#000;stroke-width:1}\n"
      ".axis{stroke:#bbb;stroke-width:0.5}\n"
      ".level{fill:none;stroke:#333;stroke-width:1}\n"
      ".dashed{stroke-dasharray:6 4}\n"
      ".dotted{fill:none;stroke:#1f5fbf;stroke-width:1;stroke-dasharray:1 3}\n"
      ".solid{fill:none;stroke:#b22222;stroke-width:2}\n"
      ".node{fill:#000}\n"
      "</style>\n";
  out += fmt::format("<rect class=\"frame\" x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\"/>\n", kCanvas);
  const Region& r = data.spec.region;
  if (r.y_min <= 0.0 && r.y_max >= 0.0) {
    out += fmt::format("<line class=\"axis\" x1=\"0\" y1=\"{0:.3f}\" x2=\"{1}\" y2=\"{0:.3f}\"/>\n", m.py(0.0), kCanvas);
  }
  if (r.x_min <= 0.0 && r.x_max >= 0.0) {
    out += fmt::format("<line class=\"axis\" x1=\"{0:.3f}\" y1=\"0\" x2=\"{0:.3f}\" y2=\"{1}\"/>\n", m.px(0.0), kCanvas);
  }
  for (const LevelCurve& c : data.level_curves) {
    const bool edge = std::abs(c.level) == 2.0;
    out += fmt::format("<path class=\"level{}\" data-level=\"{}\" d=\"{}\"/>\n", edge ? " dashed" : "", c.level,
                       segments_path(c.segments, m));
  }
  out += fmt::format("<path class=\"dotted\" data-curve=\"imag-zero\" d=\"{}\"/>\n", segments_path(data.imag_zero, m));
  for (const auto& line : data.arcs) {
    std::string d;
    for (std::size_t i = 0; i < line.size(); ++i) {
      d += fmt::format("{}{:.3f} {:.3f}", i == 0 ? "M" : "L", m.px(line[i].x), m.py(line[i].y));
    }
    out += fmt::format("<path class=\"solid\" d=\"{}\"/>\n", d);
  }
  for (const Point& p : data.alpha_nodes) {
    out += fmt::format("<circle class=\"node\" data-node=\"alpha\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3.5\"/>\n", m.px(p.x), m.py(p.y));
  }
  for (const Point& p : data.beta_nodes) {
    out += fmt::format("<circle class=\"node\" data-node=\"beta\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3.5\"/>\n", m.px(p.x), m.py(p.y));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hillband::cli
