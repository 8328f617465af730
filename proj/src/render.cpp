#include "pappus/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "pappus/parallel.hpp"
#include "pappus/serialize.hpp"

namespace pappus {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string f2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

struct Canvas {
  View v;
  double w, h;
  double px(double x) const { return (x - v.x0) / (v.x1 - v.x0) * w; }
  double py(double y) const { return (v.y1 - y) / (v.y1 - v.y0) * h; }
  std::string pt(double x, double y) const { return f2(px(x)) + "," + f2(py(y)); }
};

// Segment of a*x + b*y + c = 0 inside the view, if any.
bool clip_line(const Vec3<double>& l, const View& v, double out[4]) {
  std::vector<std::pair<double, double>> hits;
  const double a = l[0], b = l[1], c = l[2];
  if (std::abs(b) > 1e-15)
    for (double x : {v.x0, v.x1}) {
      const double y = -(a * x + c) / b;
      if (y >= v.y0 && y <= v.y1) hits.push_back({x, y});
    }
  if (std::abs(a) > 1e-15)
    for (double y : {v.y0, v.y1}) {
      const double x = -(b * y + c) / a;
      if (x >= v.x0 && x <= v.x1) hits.push_back({x, y});
    }
  if (hits.size() < 2) return false;
  std::size_t i = 0, j = 1;
  double best = -1;
  for (std::size_t p = 0; p < hits.size(); ++p)
    for (std::size_t q = p + 1; q < hits.size(); ++q) {
      const double d = std::hypot(hits[p].first - hits[q].first, hits[p].second - hits[q].second);
      if (d > best) {
        best = d;
        i = p;
        j = q;
      }
    }
  if (best <= 0) return false;
  out[0] = hits[i].first;
  out[1] = hits[i].second;
  out[2] = hits[j].first;
  out[3] = hits[j].second;
  return true;
}

std::string run_of(const std::string& param) {
  return param.empty() || param[0] != '[' ? std::string() : param.substr(0, param.find(']') + 1) +
                                                                (param.find("]^-1") != std::string::npos ? "^-1" : "");
}

}  // namespace

View parse_view(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 4) throw Error(Errc::Parse, "view needs x0:x1:y0:y1, got '" + s + "'");
  View v{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3])};
  if (!(v.x0 < v.x1 && v.y0 < v.y1)) throw Error(Errc::Parse, "view needs x0 < x1 and y0 < y1");
  return v;
}

DrawSet parse_draw(const std::string& s) {
  DrawSet d;
  if (s.empty()) throw Error(Errc::Parse, "empty draw list");
  for (const auto& item : split(s, ',')) {
    if (item == "curve")
      d.curve = true;
    else if (item == "lines")
      d.lines = true;
    else if (item == "boxes")
      d.boxes = true;
    else
      throw Error(Errc::Parse, "unknown draw item '" + item + "'");
  }
  return d;
}

std::string render_svg(const LimitSetApprox& approx, const ZBox& seed, int box_depth, const DrawSet& draw,
                       const View& view, int size_px) {
  Canvas cv{view, static_cast<double>(size_px), size_px * (view.y1 - view.y0) / (view.x1 - view.x0)};
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(cv.w) << "\" height=\"" << f2(cv.h)
    << "\" viewBox=\"0 0 " << f2(cv.w) << " " << f2(cv.h) << "\">\n";
  o << "<!-- depth " << approx.depth << ", translate " << approx.translate_len << ", " << approx.curve.size()
    << " samples, error bound " << fmt_sig(approx.eps, 6) << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (draw.boxes) {
    o << "<g fill=\"none\" stroke=\"#2a6\" stroke-width=\"0.5\">\n";
    for (const auto& n : orbit(to_float(seed), box_depth, "12")) {
      std::string pts;
      bool finite = true;
      for (const RPoint* p : {&n.box.p, &n.box.q, &n.box.r, &n.box.s}) {
        if (std::abs(p->v[2]) < 1e-12) finite = false;
        if (!finite) break;
        if (!pts.empty()) pts += " ";
        pts += cv.pt(p->v[0] / p->v[2], p->v[1] / p->v[2]);
      }
      if (finite) o << "<polygon points=\"" << pts << "\"/>\n";
    }
    o << "</g>\n";
  }

  if (draw.lines) {
    o << "<g stroke=\"#888\" stroke-width=\"0.3\">\n";
    // at most 512 line samples, evenly strided over the sample list
    const std::size_t n = approx.lines.size();
    const std::size_t step = std::max<std::size_t>(1, (n + 511) / 512);
    for (std::size_t k = 0; k < n; k += step) {
      double seg[4];
      if (!clip_line(approx.lines[k].line.v, view, seg)) continue;
      o << "<line x1=\"" << f2(cv.px(seg[0])) << "\" y1=\"" << f2(cv.py(seg[1])) << "\" x2=\"" << f2(cv.px(seg[2]))
        << "\" y2=\"" << f2(cv.py(seg[3])) << "\"/>\n";
    }
    o << "</g>\n";
  }

  if (draw.curve) {
    o << "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.8\">\n";
    std::string pts, run;
    Vec3<double> prev{};
    bool have_prev = false;
    auto flush = [&] {
      if (!pts.empty()) o << "<polyline points=\"" << pts << "\"/>\n";
      pts.clear();
      have_prev = false;
    };
    for (const auto& s : approx.curve) {
      const std::string r = run_of(s.param);
      if (r != run) {
        flush();
        run = r;
      }
      Vec3<double> v = s.point.v;
      if (have_prev && dot(v, prev) < 0)
        for (double& x : v) x = -x;
      // a sign change of z between consistent lifts crosses the line at infinity
      if (std::abs(v[2]) < 1e-9 || (have_prev && (v[2] > 0) != (prev[2] > 0))) {
        flush();
        if (std::abs(v[2]) < 1e-9) continue;
      }
      if (!pts.empty()) pts += " ";
      pts += cv.pt(v[0] / v[2], v[1] / v[2]);
      prev = v;
      have_prev = true;
    }
    flush();
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void check_slice(const SliceSpec& s) {
  if (vec_angle(s.base.v, s.dir.v) <= 1e-12) throw Error(Errc::InvalidArgument, "slice base and dir are dependent");
  if (s.grid < 1 || s.grid > 4096) throw Error(Errc::InvalidArgument, "grid must be in 1..4096");
  if (!(s.window.x0 < s.window.x1 && s.window.y0 < s.window.y1))
    throw Error(Errc::InvalidArgument, "empty slice window");
}

std::string render_pgm(const SliceSpec& s, const std::vector<CLine>& lines, const std::vector<std::string>& comments) {
  check_slice(s);
  const int n = s.grid;
  auto coord = [n](double lo, double hi, int k) { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); };
  std::vector<std::string> rows(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    std::string row(2 * static_cast<std::size_t>(n), '\0');
    const double im = coord(s.window.y1, s.window.y0, static_cast<int>(i));
    for (int j = 0; j < n; ++j) {
      const cplx w(coord(s.window.x0, s.window.x1, j), im);
      const CPoint z{{s.base.v[0] + w * s.dir.v[0], s.base.v[1] + w * s.dir.v[1], s.base.v[2] + w * s.dir.v[2]}};
      const double d = kulkarni_distance(z, lines);
      const double u = std::clamp(d / (std::numbers::pi / 2), 0.0, 1.0);
      const auto px = static_cast<unsigned>(std::lround(u * 65535.0));
      row[2 * j] = static_cast<char>(px >> 8);
      row[2 * j + 1] = static_cast<char>(px & 0xff);
    }
    rows[i] = std::move(row);
  });
  std::string out = "P5\n";
  for (const auto& c : comments) out += "# " + c + "\n";
  out += std::to_string(n) + " " + std::to_string(n) + "\n65535\n";
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace pappus
