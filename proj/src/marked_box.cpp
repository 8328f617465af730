#include "pappus/marked_box.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pappus/parallel.hpp"
#include "pappus/serialize.hpp"

namespace pappus {

namespace {

int sign_of(const Z& x) { return sgn(x); }
int sign_of(double x) { return std::abs(x) <= 1e-12 ? 0 : (x > 0 ? 1 : -1); }

template <class T>
int det_sign(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return sign_of(det3(a, b, c));
}

template <class T>
Vec3<T> neg(const Vec3<T>& v) {
  return {T(-v[0]), T(-v[1]), T(-v[2])};
}

// Representatives P, Q, R, S with det(PQR), det(QRS), det(RSP), det(SPQ)
// of one common sign, if the quadrilateral is convex in some chart.
template <class T>
struct Cone {
  std::array<Vec3<T>, 4> v;
  int orientation = 0;
};

template <class T>
std::optional<Cone<T>> convex_cone(const MarkedBox<T>& box) {
  const std::array<Vec3<T>, 4> base{box.p.v, box.q.v, box.r.v, box.s.v};
  const int d1 = det_sign(base[0], base[1], base[2]);
  const int d2 = det_sign(base[1], base[2], base[3]);
  const int d3 = det_sign(base[2], base[3], base[0]);
  const int d4 = det_sign(base[3], base[0], base[1]);
  if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) return std::nullopt;
  for (int mask = 0; mask < 8; ++mask) {
    const int sq = (mask & 1) ? -1 : 1, sr = (mask & 2) ? -1 : 1, ss = (mask & 4) ? -1 : 1;
    const int e1 = d1 * sq * sr, e2 = d2 * sq * sr * ss, e3 = d3 * sr * ss, e4 = d4 * ss * sq;
    if (e1 == e2 && e2 == e3 && e3 == e4) {
      Cone<T> c;
      c.v = {base[0], sq > 0 ? base[1] : neg(base[1]), sr > 0 ? base[2] : neg(base[2]),
             ss > 0 ? base[3] : neg(base[3])};
      c.orientation = e1;
      return c;
    }
  }
  return std::nullopt;
}

template <class T>
bool strictly_between(const Vec3<T>& x, const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& off) {
  const int s1 = det_sign(x, b, off);
  const int s2 = det_sign(a, x, off);
  return s1 != 0 && s1 == s2;
}

template <class T>
std::vector<std::string> validate_impl(const MarkedBox<T>& box, bool in_chart) {
  std::vector<std::string> out;
  const auto& p = box.p.v;
  const auto& q = box.q.v;
  const auto& r = box.r.v;
  const auto& s = box.s.v;
  const auto& t = box.t.v;
  const auto& b = box.b.v;
  const bool collinear = det_sign(p, q, r) == 0 || det_sign(q, r, s) == 0 || det_sign(r, s, p) == 0 ||
                         det_sign(s, p, q) == 0;
  if (collinear) out.push_back("three vertices collinear");
  const bool mark_vertex = same(t, p) || same(t, q) || same(b, r) || same(b, s);
  if (mark_vertex) out.push_back("mark equals vertex");
  const bool top_on = det_sign(p, q, t) == 0;
  const bool bottom_on = det_sign(r, s, b) == 0;
  if (!top_on) out.push_back("top mark not on top edge line");
  if (!bottom_on) out.push_back("bottom mark not on bottom edge line");
  if (collinear) return out;
  const auto cone = convex_cone(box);
  if (!cone) {
    out.push_back("quadrilateral not convex");
    return out;
  }
  const auto& [P, Q, R, S] = cone->v;
  if (!mark_vertex && top_on && !strictly_between(t, P, Q, R)) out.push_back("top mark outside open top edge");
  if (!mark_vertex && bottom_on && !strictly_between(b, R, S, P)) out.push_back("bottom mark outside open bottom edge");
  if (in_chart) {
    const int z0 = sign_of(P[2]);
    const bool ok = z0 != 0 && sign_of(Q[2]) == z0 && sign_of(R[2]) == z0 && sign_of(S[2]) == z0;
    if (!ok) out.push_back("quadrilateral not convex in chart z=1");
  }
  return out;
}

template <class T>
Point<T> checked_meet(const Line<T>& a, const Line<T>& b) {
  try {
    return meet(a, b);
  } catch (const Error& e) {
    throw Error(Errc::DegenerateBox, e.what());
  }
}

template <class T>
Line<T> checked_join(const Point<T>& a, const Point<T>& b) {
  try {
    return join(a, b);
  } catch (const Error& e) {
    throw Error(Errc::DegenerateBox, e.what());
  }
}

template <class T>
double diameter_of(const std::vector<RPoint>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
  return d;
}

RPoint as_float(const ZPoint& p) { return to_float(p); }
RPoint as_float(const RPoint& p) { return p; }

template <class T>
double diameter_impl(const MarkedBox<T>& box) {
  return diameter_of<T>({as_float(box.p), as_float(box.q), as_float(box.r), as_float(box.s), as_float(box.t),
                         as_float(box.b)});
}

template <class T>
double diamond_impl(const MarkedBox<T>& box) {
  const auto pt = pappus_triple(box);
  return diameter_of<T>({as_float(box.t), as_float(pt.v), as_float(box.b), as_float(pt.u)});
}

template <class T>
bool same_class_impl(const MarkedBox<T>& a, const MarkedBox<T>& b) {
  if (!(a.t == b.t) || !(a.b == b.b)) return false;
  if (a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s) return true;
  return a.p == b.q && a.q == b.p && a.r == b.s && a.s == b.r;
}

}  // namespace

char letter(BoxOp op) {
  switch (op) {
    case BoxOp::I:
      return 'i';
    case BoxOp::Tau1:
      return '1';
    case BoxOp::Tau2:
      return '2';
  }
  return '?';
}

BoxOp box_op(char c) {
  switch (c) {
    case 'i':
      return BoxOp::I;
    case '1':
      return BoxOp::Tau1;
    case '2':
      return BoxOp::Tau2;
    default:
      throw Error(Errc::BadLetter, std::string("letter '") + c + "' is not one of i, 1, 2");
  }
}

ZBox default_seed() {
  return {zpoint(-1, 1), zpoint(1, 1), zpoint(1, -1), zpoint(-1, -1), zpoint(mpq_class(1, 4), 1),
          zpoint(mpq_class(-1, 3), -1)};
}

ZBox symmetric_seed() {
  return {zpoint(-1, 1), zpoint(1, 1), zpoint(1, -1), zpoint(-1, -1), zpoint(0, 1), zpoint(0, -1)};
}

std::vector<std::string> validate(const ZBox& box, bool in_chart) { return validate_impl(box, in_chart); }
std::vector<std::string> validate(const RBox& box, bool in_chart) { return validate_impl(box, in_chart); }

template <class T>
PappusTriple<T> pappus_triple(const MarkedBox<T>& box) {
  PappusTriple<T> out;
  out.u = checked_meet(checked_join(box.p, box.b), checked_join(box.t, box.s));
  out.m = checked_meet(checked_join(box.p, box.r), checked_join(box.q, box.s));
  out.v = checked_meet(checked_join(box.t, box.r), checked_join(box.q, box.b));
  if (out.u == out.m || out.m == out.v || out.u == out.v) throw Error(Errc::DegenerateBox, "Pappus points coincide");
  out.axis = checked_join(out.u, out.v);
  return out;
}

template <class T>
MarkedBox<T> apply_box_op(BoxOp op, const MarkedBox<T>& box) {
  if (op == BoxOp::I) return {box.r, box.s, box.p, box.q, box.b, box.t};
  const auto pt = pappus_triple(box);
  if (op == BoxOp::Tau1) return {box.p, box.q, pt.v, pt.u, box.t, pt.m};
  return {pt.u, pt.v, box.r, box.s, pt.m, box.b};
}

template <class T>
MarkedBox<T> apply_word(const std::string& word, const MarkedBox<T>& box) {
  MarkedBox<T> cur = box;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = apply_box_op(box_op(*it), cur);
  return cur;
}

template PappusTriple<Z> pappus_triple(const ZBox&);
template PappusTriple<double> pappus_triple(const RBox&);
template ZBox apply_box_op(BoxOp, const ZBox&);
template RBox apply_box_op(BoxOp, const RBox&);
template ZBox apply_word(const std::string&, const ZBox&);
template RBox apply_word(const std::string&, const RBox&);

double diameter(const ZBox& box) { return diameter_impl(box); }
double diameter(const RBox& box) { return diameter_impl(box); }
double mark_diamond(const ZBox& box) { return diamond_impl(box); }
double mark_diamond(const RBox& box) { return diamond_impl(box); }
bool same_class(const ZBox& a, const ZBox& b) { return same_class_impl(a, b); }
bool same_class(const RBox& a, const RBox& b) { return same_class_impl(a, b); }

ZBox transform(const ZMap& m, const ZBox& x) {
  return {apply(m, x.p), apply(m, x.q), apply(m, x.r), apply(m, x.s), apply(m, x.t), apply(m, x.b)};
}
RBox transform(const RMap& m, const RBox& x) {
  return {apply(m, x.p), apply(m, x.q), apply(m, x.r), apply(m, x.s), apply(m, x.t), apply(m, x.b)};
}
RBox to_float(const ZBox& x) {
  return {to_float(x.p), to_float(x.q), to_float(x.r), to_float(x.s), to_float(x.t), to_float(x.b)};
}

bool in_closed_quad(const ZPoint& x, const ZBox& box) {
  const auto cone = convex_cone(box);
  if (!cone) throw Error(Errc::DegenerateBox, "quadrilateral not convex");
  const auto& [P, Q, R, S] = cone->v;
  const int s[4] = {cone->orientation * det_sign(P, Q, x.v), cone->orientation * det_sign(Q, R, x.v),
                    cone->orientation * det_sign(R, S, x.v), cone->orientation * det_sign(S, P, x.v)};
  bool pos = false, negv = false;
  for (int k : s) {
    pos |= k > 0;
    negv |= k < 0;
  }
  return !(pos && negv);
}

template <class T>
std::vector<OrbitNode<T>> orbit(const MarkedBox<T>& seed, int depth, const std::string& alphabet) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  std::string letters;
  for (char c : std::string("12i"))
    if (alphabet.find(c) != std::string::npos) letters += c;
  for (char c : alphabet) box_op(c);

  std::vector<OrbitNode<T>> out;
  out.push_back({"", seed, diameter(seed)});
  std::size_t level_begin = 0;
  for (int len = 1; len <= depth; ++len) {
    const std::size_t level_end = out.size();
    std::vector<std::pair<std::string, std::size_t>> next;  // word, parent index
    for (std::size_t k = level_begin; k < level_end; ++k)
      for (char c : letters) {
        const std::string& w = out[k].word;
        if (c == 'i' && !w.empty() && w[0] == 'i') continue;
        next.push_back({std::string(1, c) + w, k});
      }
    std::sort(next.begin(), next.end());
    std::vector<OrbitNode<T>> level(next.size());
    parallel_for(next.size(), [&](std::size_t k) {
      const auto& [word, parent] = next[k];
      try {
        level[k].word = word;
        level[k].box = apply_box_op(box_op(word[0]), out[parent].box);
        level[k].diameter = diameter(level[k].box);
      } catch (const Error& e) {
        if (e.code() == Errc::PrecisionCeiling) throw;
        throw Error(Errc::DegenerateBox, "word '" + word + "': " + e.what());
      }
    });
    level_begin = out.size();
    for (auto& n : level) out.push_back(std::move(n));
  }
  return out;
}

template std::vector<OrbitNode<Z>> orbit(const ZBox&, int, const std::string&);
template std::vector<OrbitNode<double>> orbit(const RBox&, int, const std::string&);

namespace {

template <class T>
std::string orbit_line_impl(const OrbitNode<T>& n) {
  const auto& x = n.box;
  return n.word + "\t" + to_text(x.p) + "\t" + to_text(x.q) + "\t" + to_text(x.r) + "\t" + to_text(x.s) + "\t" +
         to_text(x.t) + "\t" + to_text(x.b) + "\t" + fmt_sig(n.diameter);
}

}  // namespace

std::string orbit_line(const OrbitNode<Z>& node) { return orbit_line_impl(node); }
std::string orbit_line(const OrbitNode<double>& node) { return orbit_line_impl(node); }

}  // namespace pappus
