#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>

#include "projcert/harness.hpp"

namespace projcert {

namespace {

constexpr double kRealTol = 1e-9;
constexpr int kSamples = 1440;
constexpr double kPixels = 800.0;

using Pt = std::array<double, 2>;

struct Box {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  void add(const Pt& p) {
    x0 = std::min(x0, p[0]);
    y0 = std::min(y0, p[1]);
    x1 = std::max(x1, p[0]);
    y1 = std::max(y1, p[1]);
  }
  bool empty() const { return !(x1 >= x0 && y1 >= y0); }
  bool contains(const Pt& p, double margin) const {
    const double mx = margin * (x1 - x0);
    const double my = margin * (y1 - y0);
    return p[0] >= x0 - mx && p[0] <= x1 + mx && p[1] >= y0 - my && p[1] <= y1 + my;
  }
};

std::optional<Pt> real_affine(const Vec3& v) {
  const Vec3 c = canonical(v);
  if (c.imag().cwiseAbs().maxCoeff() > kRealTol) return std::nullopt;
  if (std::abs(c[2]) < 1e-9) return std::nullopt;
  return Pt{(c[0] / c[2]).real(), (c[1] / c[2]).real()};
}

bool is_real(const Vec3& v) { return canonical(v).imag().cwiseAbs().maxCoeff() <= kRealTol; }

struct Curve {
  std::string name;
  std::vector<std::vector<Pt>> branches;
  bool bounded = true;
};

/// Samples of a real smooth conic; branches break at the line at infinity.
std::optional<Curve> sample_conic(const std::string& name, const Conic& c) {
  if (c.coefficients().imag().cwiseAbs().maxCoeff() > kRealTol) return std::nullopt;
  const HomPoint seed = seed_point(c);
  if (!is_real(seed.vec())) return std::nullopt;
  Curve out{name, {{}}, true};
  const double pi = std::acos(-1.0);
  for (int k = 0; k <= kSamples; ++k) {
    const double phi = -0.5 * pi + pi * (k + 0.5) / (kSamples + 1);
    const Vec3 v = point_on_conic(c, seed, std::tan(phi)).vec();
    const Vec3 cv = canonical(v);
    if (std::abs(cv[2]) < 1e-3) {
      out.bounded = false;
      if (!out.branches.back().empty()) out.branches.emplace_back();
      continue;
    }
    out.branches.back().push_back({(cv[0] / cv[2]).real(), (cv[1] / cv[2]).real()});
  }
  if (const auto s = real_affine(seed.vec())) {
    // The seed closes the loop of a bounded conic.
    if (out.bounded && !out.branches.front().empty()) {
      out.branches.front().insert(out.branches.front().begin(), *s);
      out.branches.front().push_back(*s);
    }
  }
  std::erase_if(out.branches, [](const std::vector<Pt>& b) { return b.size() < 2; });
  if (out.branches.empty()) return std::nullopt;
  return out;
}

std::optional<std::array<Pt, 2>> clip_line(const Vec3& l, const Box& box) {
  const Vec3 c = canonical(l);
  if (c.imag().cwiseAbs().maxCoeff() > kRealTol) return std::nullopt;
  const double a = c[0].real();
  const double b = c[1].real();
  const double d = c[2].real();
  std::vector<Pt> hits;
  if (std::abs(b) > 1e-12) {
    for (const double x : {box.x0, box.x1}) {
      const double y = -(a * x + d) / b;
      if (y >= box.y0 - 1e-12 && y <= box.y1 + 1e-12) hits.push_back({x, y});
    }
  }
  if (std::abs(a) > 1e-12) {
    for (const double y : {box.y0, box.y1}) {
      const double x = -(b * y + d) / a;
      if (x >= box.x0 - 1e-12 && x <= box.x1 + 1e-12) hits.push_back({x, y});
    }
  }
  if (hits.size() < 2) return std::nullopt;
  std::sort(hits.begin(), hits.end());
  return std::array<Pt, 2>{hits.front(), hits.back()};
}

const char* colour_for(const std::string& name) {
  if (name.empty()) return "#444444";
  switch (name[0]) {
    case 'X': return "#000000";
    case 'R': case 'r': return "#c0392b";
    case 'G': case 'g': return "#27ae60";
    case 'B': case 'b': return "#2e6fd8";
    case 'C': case 'c': return "#8e44ad";
    default: return "#555555";
  }
}

class Svg {
 public:
  Svg(const Box& box) : box_(box) {
    scale_ = kPixels / std::max(box.x1 - box.x0, box.y1 - box.y0);
    width_ = (box.x1 - box.x0) * scale_;
    height_ = (box.y1 - box.y0) * scale_;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n"
                  "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"%.1f\" height=\"%.1f\"/></clipPath></defs>\n"
                  "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n<g clip-path=\"url(#view)\" fill=\"none\">\n",
                  width_, height_, width_, height_, width_, height_);
    out_ += buf;
  }

  void polyline(const std::vector<Pt>& pts, const char* colour, double width) {
    out_ += "<polyline stroke=\"";
    out_ += colour;
    char buf[64];
    std::snprintf(buf, sizeof buf, "\" stroke-width=\"%.1f\" points=\"", width);
    out_ += buf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Pt q = map(pts[i]);
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i == 0 ? "" : " ", q[0], q[1]);
      out_ += buf;
    }
    out_ += "\"/>\n";
  }

  void label(const Pt& p, const std::string& text, const char* colour) {
    const Pt q = map(p);
    char buf[160];
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" fill=\"%s\" font-size=\"13\" font-family=\"sans-serif\">",
                  q[0] + 5.0, q[1] - 5.0, colour);
    out_ += buf;
    out_ += text;
    out_ += "</text>\n";
  }

  void point(const Pt& p, const std::string& name) {
    const Pt q = map(p);
    char buf[160];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"#000000\"/>\n", q[0], q[1]);
    out_ += buf;
    label(p, name, "#000000");
  }

  std::string finish() {
    out_ += "</g>\n</svg>\n";
    return std::move(out_);
  }

 private:
  Pt map(const Pt& p) const { return {(p[0] - box_.x0) * scale_, (box_.y1 - p[1]) * scale_}; }

  Box box_;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
  std::string out_;
};

}  // namespace

std::string render_svg(const Scenario& s, const Tolerance& tol) {
  std::vector<Witness> objects = s.objects;
  std::set<std::string> names;
  for (const Witness& w : objects) names.insert(w.name);
  try {
    const ScenarioReport report = check_scenario(s, tol);
    for (const Witness& w : report.witnesses()) {
      if (names.insert(w.name).second) objects.push_back(w);
    }
  } catch (const Error&) {
    // Draw the inputs alone when the checker rejects them.
  }

  std::vector<Curve> curves;
  std::vector<std::pair<std::string, Vec3>> lines;
  std::vector<std::pair<std::string, Pt>> points;
  for (const Witness& w : objects) {
    if (const auto* p = std::get_if<HomPoint>(&w.object)) {
      if (const auto a = real_affine(p->vec())) points.emplace_back(w.name, *a);
    } else if (const auto* l = std::get_if<HomLine>(&w.object)) {
      if (is_real(l->vec()) && !projectively_equal(*l, kAbsolute.l_inf)) lines.emplace_back(w.name, l->vec());
    } else if (const auto* c = std::get_if<Conic>(&w.object)) {
      if (c->rank() == 3) {
        if (auto curve = sample_conic(w.name, *c)) curves.push_back(std::move(*curve));
      } else {
        try {
          const LinePair lp = split_degenerate(*c);
          for (const HomLine& l : {lp.first, lp.second}) {
            if (is_real(l.vec())) lines.emplace_back(w.name, l.vec());
          }
        } catch (const Error&) {
        }
      }
    }
  }
  if (curves.empty() && lines.empty() && points.empty()) {
    throw Error(ErrorCode::NothingRealToDraw, "scenario has no real object to draw");
  }

  Box box;
  for (const auto& [name, p] : points) box.add(p);
  for (const Curve& c : curves) {
    if (!c.bounded) continue;
    for (const auto& b : c.branches) {
      for (const Pt& p : b) box.add(p);
    }
  }
  if (box.empty()) {
    for (const Curve& c : curves) {
      for (const auto& b : c.branches) {
        for (const Pt& p : b) {
          if (std::abs(p[0]) < 10.0 && std::abs(p[1]) < 10.0) box.add(p);
        }
      }
    }
  }
  if (box.empty()) box = Box{-5.0, -5.0, 5.0, 5.0};
  const double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1.0});
  const double cx = 0.5 * (box.x0 + box.x1);
  const double cy = 0.5 * (box.y0 + box.y1);
  const double half = 0.6 * span;
  box = Box{cx - half, cy - half, cx + half, cy + half};

  Svg svg(box);
  for (const auto& [name, l] : lines) {
    if (const auto seg = clip_line(l, box)) {
      svg.polyline({(*seg)[0], (*seg)[1]}, "#999999", 1.0);
      svg.label((*seg)[0], name, "#777777");
    }
  }
  for (const Curve& c : curves) {
    const char* colour = colour_for(c.name);
    bool labelled = false;
    for (const auto& branch : c.branches) {
      std::vector<Pt> run;
      for (const Pt& p : branch) {
        if (box.contains(p, 0.5)) {
          run.push_back(p);
          continue;
        }
        if (run.size() > 1) svg.polyline(run, colour, 1.8);
        run.clear();
      }
      if (run.size() > 1) svg.polyline(run, colour, 1.8);
      for (const Pt& p : branch) {
        if (!labelled && box.contains(p, 0.0)) {
          svg.label(p, c.name, colour);
          labelled = true;
        }
      }
    }
  }
  for (const auto& [name, p] : points) svg.point(p, name);
  return svg.finish();
}

void export_figure(const Scenario& s, const std::string& path, const Tolerance& tol) {
  const std::string svg = render_svg(s, tol);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << svg;
}

}  // namespace projcert
