#include "pappus/limit_set.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pappus/parallel.hpp"
#include "pappus/serialize.hpp"

namespace pappus {

namespace {

std::vector<Vec3<double>> point_vectors(const std::vector<CurveSample>& c) {
  std::vector<Vec3<double>> v;
  v.reserve(c.size());
  for (const auto& s : c) v.push_back(s.point.v);
  return v;
}

std::vector<Vec3<double>> line_vectors(const std::vector<LineSample>& l) {
  std::vector<Vec3<double>> v;
  v.reserve(l.size());
  for (const auto& s : l) v.push_back(s.line.v);
  return v;
}

std::shared_ptr<const NearestIndex> points_of(const LimitSetApprox& a) {
  if (a.point_index) return a.point_index;
  return std::make_shared<NearestIndex>(point_vectors(a.curve));
}

std::shared_ptr<const NearestIndex> lines_of(const LimitSetApprox& a) {
  if (a.line_index) return a.line_index;
  return std::make_shared<NearestIndex>(line_vectors(a.lines));
}

// depth-d words of the tau-tree in curve order (compare reversed words)
bool curve_order(const std::string& a, const std::string& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

template <class T>
std::vector<OrbitNode<T>> leaves(const MarkedBox<T>& seed, int depth) {
  auto nodes = orbit(seed, depth, "12");
  std::vector<OrbitNode<T>> out;
  for (auto& n : nodes)
    if (static_cast<int>(n.word.size()) == depth) out.push_back(std::move(n));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return curve_order(a.word, b.word); });
  return out;
}

}  // namespace

void LimitSetApprox::build_index() {
  point_index = std::make_shared<NearestIndex>(point_vectors(curve));
  line_index = std::make_shared<NearestIndex>(line_vectors(lines));
}

std::vector<ExactMark> tree_marks(const ZBox& seed, int depth) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  const auto lv = leaves(seed, depth);
  std::vector<ExactMark> out;
  for (const auto& n : lv) out.push_back({n.word + "/t", n.box.t, join(n.box.p, n.box.q)});
  const auto& last = lv.back();
  out.push_back({last.word + "/b", last.box.b, join(last.box.r, last.box.s)});
  return out;
}

double depth_error_bound(const ZBox& seed, int depth) {
  const auto lv = leaves(seed, depth);
  std::vector<double> d(lv.size());
  parallel_for(lv.size(), [&](std::size_t k) { d[k] = mark_diamond(lv[k].box); });
  return *std::max_element(d.begin(), d.end());
}

bool is_flat(const ZBox& seed, double tol) {
  const auto marks = tree_marks(seed, 3);
  std::vector<RPoint> pts;
  for (const auto& m : marks) pts.push_back(to_float(m.point));
  std::size_t bi = 0, bj = 1;
  double far = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (dist(pts[i], pts[j]) > far) {
        far = dist(pts[i], pts[j]);
        bi = i;
        bj = j;
      }
  const ZLine l = join(marks[bi].point, marks[bj].point);
  const RLine lf = to_float(l);
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (!incident(marks[k].point, l) && dist_point_line(pts[k], lf) > tol) return false;
  return true;
}

namespace {

struct TranslateOut {
  std::vector<CurveSample> curve;
  std::vector<LineSample> lines;
};

void refine(const RMap& h, const RBox& box, const std::string& word, int level, int max_level, double eps,
            const std::string& prefix, TranslateOut& out, RBox& last_img, double& last_bound) {
  const RBox img = transform(h, box);
  const double d = mark_diamond(img);
  if (d > eps && level < max_level) {
    refine(h, apply_box_op(BoxOp::Tau1, box), "1" + word, level + 1, max_level, eps, prefix, out, last_img, last_bound);
    refine(h, apply_box_op(BoxOp::Tau2, box), "2" + word, level + 1, max_level, eps, prefix, out, last_img, last_bound);
    return;
  }
  const RLine edge = join(img.p, img.q);
  out.curve.push_back({prefix + word + "/t", img.t, d});
  out.lines.push_back({prefix + word + "/t", edge, complexify(edge)});
  last_img = img;
  last_bound = d;
}

}  // namespace

LimitSetApprox sample_curve(const ZBox& seed, int depth, int translate_len, const SampleOptions& opt) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  if (translate_len < 0) throw Error(Errc::InvalidArgument, "translate length must be nonnegative");
  if (is_flat(seed)) throw Error(Errc::DegenerateSeed, "all depth<=3 marks lie on one line");

  LimitSetApprox a;
  a.depth = depth;
  a.translate_len = translate_len;
  const auto lv = leaves(seed, depth);
  std::vector<double> diamonds(lv.size());
  std::vector<RBox> fboxes(lv.size());
  parallel_for(lv.size(), [&](std::size_t k) {
    diamonds[k] = mark_diamond(lv[k].box);
    fboxes[k] = to_float(lv[k].box);
  });
  a.eps = *std::max_element(diamonds.begin(), diamonds.end());
  for (std::size_t k = 0; k < lv.size(); ++k) {
    const RLine edge = to_float(join(lv[k].box.p, lv[k].box.q));
    a.curve.push_back({lv[k].word + "/t", fboxes[k].t, diamonds[k]});
    a.lines.push_back({lv[k].word + "/t", edge, complexify(edge)});
  }
  {
    const auto& last = lv.back();
    const RLine edge = to_float(join(last.box.r, last.box.s));
    a.curve.push_back({last.word + "/b", fboxes.back().b, diamonds.back()});
    a.lines.push_back({last.word + "/b", edge, complexify(edge)});
  }
  a.arc_count = a.curve.size();

  if (translate_len > 0) {
    const auto en = enumerate_group(seed, translate_len, opt.rep);
    std::vector<std::pair<std::string, RMap>> maps;
    const Mat3d id = linalg::identity();
    auto fresh = [&](const Mat3d& m) {
      if (linalg::class_distance(m, id) <= 1e-9) return false;
      for (const auto& [w, x] : maps)
        if (linalg::class_distance(m, x.m) <= 1e-9) return false;
      return true;
    };
    for (const auto& g : en.elements) {
      if (!g.in_sigma) continue;
      if (fresh(g.map.m)) maps.push_back({"[" + g.word + "]", g.map});
      const RMap inv = g.exact ? to_float(inverse(*g.exact)) : inverse(g.map);
      if (fresh(inv.m)) maps.push_back({"[" + g.word + "]^-1", inv});
    }
    std::vector<TranslateOut> outs(maps.size());
    parallel_for(maps.size(), [&](std::size_t k) {
      const auto& [name, h] = maps[k];
      RBox last_img{};
      double last_bound = 0.0;
      for (std::size_t b = 0; b < fboxes.size(); ++b)
        refine(h, fboxes[b], lv[b].word, 0, opt.max_refine, a.eps, name, outs[k], last_img, last_bound);
      const std::string& lt = outs[k].curve.back().param;
      const std::string pb = lt.substr(0, lt.size() - 2) + "/b";
      const RLine edge = join(last_img.r, last_img.s);
      outs[k].curve.push_back({pb, last_img.b, last_bound});
      outs[k].lines.push_back({pb, edge, complexify(edge)});
    });
    for (std::size_t k = 0; k < maps.size(); ++k) {
      a.translates.push_back(maps[k].first);
      for (auto& s : outs[k].curve) a.curve.push_back(std::move(s));
      for (auto& s : outs[k].lines) a.lines.push_back(std::move(s));
    }
  }
  a.build_index();
  return a;
}

std::string curve_line(const CurveSample& s) {
  return s.param + "\t" + fmt_num(s.point.v[0]) + "\t" + fmt_num(s.point.v[1]) + "\t" + fmt_num(s.point.v[2]) + "\t" +
         fmt_num(s.error_bound);
}

std::string field_line(const LineSample& s) {
  return s.param + "\t" + fmt_num(s.line.v[0]) + "\t" + fmt_num(s.line.v[1]) + "\t" + fmt_num(s.line.v[2]);
}

DensityGaps density_gap(const std::vector<RPoint>& samples, const std::vector<RPoint>& fixed) {
  DensityGaps g;
  if (samples.empty() || fixed.empty()) return g;
  std::vector<Vec3<double>> sv, fv;
  for (const auto& p : samples) sv.push_back(p.v);
  for (const auto& p : fixed) fv.push_back(p.v);
  const NearestIndex si(sv), fi(fv);
  std::vector<double> d1(fv.size()), d2(sv.size());
  parallel_for(fv.size(), [&](std::size_t k) { d1[k] = si.nearest(fv[k]); });
  parallel_for(sv.size(), [&](std::size_t k) { d2[k] = fi.nearest(sv[k]); });
  g.fixed_to_curve = *std::max_element(d1.begin(), d1.end());
  g.curve_to_fixed = *std::max_element(d2.begin(), d2.end());
  return g;
}

DensityGaps density_gap(const LimitSetApprox& approx, const std::vector<Loxodromic>& loxo) {
  std::vector<RPoint> samples, fixed;
  for (const auto& s : approx.curve) samples.push_back(s.point);
  for (const auto& l : loxo) {
    fixed.push_back(*l.spec.attracting_point);
    fixed.push_back(*l.spec.repelling_point);
  }
  return density_gap(samples, fixed);
}

FixedStructure fixed_structure_check(const SpectrumReport& spec, const LimitSetApprox& approx) {
  if (spec.cls != MapClass::Loxodromic || !spec.attracting_line || !spec.repelling_line)
    throw Error(Errc::NotLoxodromic, "fixed structure needs a loxodromic element");
  const auto pi = points_of(approx);
  const auto li = lines_of(approx);
  FixedStructure f;
  f.attracting_to_curve = pi->nearest(spec.attracting_point->v);
  f.repelling_to_curve = pi->nearest(spec.repelling_point->v);
  f.attracting_line_to_field = li->nearest(spec.attracting_line->v);
  f.repelling_line_to_field = li->nearest(spec.repelling_line->v);
  f.saddle_vs_meet = dist(*spec.saddle_point, meet(*spec.attracting_line, *spec.repelling_line));
  std::size_t which = 0;
  f.saddle_separation = pi->nearest(spec.saddle_point->v, &which);
  f.saddle_local_bound = approx.curve.empty() ? 0.0 : approx.curve[which].error_bound;
  return f;
}

namespace {

double residual_of(const std::vector<Mat3d>& actions, const Vec3<cplx>& c) {
  double r = 0.0;
  for (const auto& a : actions) r = std::max(r, vec_angle(linalg::apply(a, c), c));
  return r;
}

Vec3<cplx> to_c(const Vec3<double>& v) { return {v[0], v[1], v[2]}; }

Vec3<double> real_of(const Vec3<cplx>& v) { return {v[0].real(), v[1].real(), v[2].real()}; }

InvariantSearch search(const std::vector<Mat3d>& actions, bool complex_field) {
  std::vector<Vec3<cplx>> cands;
  std::vector<Vec3<double>> plane_normals;
  std::vector<std::size_t> plane_owner;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    for (const auto& e : linalg::eigen(actions[k])) {
      const bool real = e.value.imag() == 0.0;
      if (!real && !complex_field) continue;
      if (e.vectors.size() == 1) {
        cands.push_back(real ? to_c(normalized(real_of(e.vectors[0]))) : e.vectors[0]);
      } else if (e.vectors.size() == 2 && real) {
        const auto a = real_of(e.vectors[0]);
        const auto b = real_of(e.vectors[1]);
        cands.push_back(to_c(a));
        cands.push_back(to_c(b));
        plane_normals.push_back(cross(a, b));
        plane_owner.push_back(k);
      }
    }
  }
  for (std::size_t i = 0; i < plane_normals.size(); ++i)
    for (std::size_t j = i + 1; j < plane_normals.size(); ++j) {
      if (plane_owner[i] == plane_owner[j]) continue;
      const auto c = cross(plane_normals[i], plane_normals[j]);
      if (std::sqrt(dot(c, c)) > 1e-12) cands.push_back(to_c(normalized(c)));
    }
  if (cands.empty()) cands.push_back({1.0, 0.0, 0.0});
  InvariantSearch best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) {
    const double r = residual_of(actions, c);
    if (r < best.residual) {
      best.residual = r;
      best.best.assign(c.begin(), c.end());
      best.complex_candidate = std::abs(c[0].imag()) + std::abs(c[1].imag()) + std::abs(c[2].imag()) > 0.0;
    }
  }
  return best;
}

}  // namespace

InvariantSearch invariant_line_search(const std::vector<RMap>& maps, bool complex_field) {
  std::vector<Mat3d> actions;
  for (const auto& m : maps) actions.push_back(linalg::sup_normalize(linalg::cofactor(m.m)));
  return search(actions, complex_field);
}

InvariantSearch invariant_point_search(const std::vector<RMap>& maps, bool complex_field) {
  std::vector<Mat3d> actions;
  for (const auto& m : maps) actions.push_back(m.m);
  return search(actions, complex_field);
}

DegeneracyGate degeneracy_gate(const ZBox& seed, double degenerate_tol) {
  DegeneracyGate g;
  for (const char* w : {"i", "1", "2"}) g.letters.push_back(rho_hat(w, seed).map);
  g.line = invariant_line_search(g.letters, false);
  g.degenerate = g.line.residual <= degenerate_tol;
  return g;
}

double kulkarni_distance(const CPoint& z, const std::vector<CLine>& lines) {
  if (lines.empty()) throw Error(Errc::EmptyApprox, "no line samples");
  double best = std::numbers::pi / 2;
  for (const auto& l : lines) best = std::min(best, dist_point_line(z, l));
  return best;
}

double kulkarni_distance(const CPoint& z, const LimitSetApprox& approx) {
  if (approx.lines.empty()) throw Error(Errc::EmptyApprox, "no line samples");
  double best = std::numbers::pi / 2;
  for (const auto& l : approx.lines) best = std::min(best, dist_point_line(z, l.cline));
  return best;
}

std::vector<Mat3d> powers(const Mat3d& g, int n_max) {
  std::vector<Mat3d> out;
  Mat3d p = g;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(p);
    p = linalg::multiply(p, g);
    const double s = linalg::sup_norm(p);
    if (s > 1e200) {
      for (auto& row : p)
        for (double& x : row) x /= s;
    }
  }
  return out;
}

PseudoCheck pseudo_sequence_check(const GroupElement& g, const LimitSetApprox& approx, int n_max) {
  PseudoCheck c;
  c.data = pseudo_limit_data(powers(g.map.m, n_max));
  c.image_to_curve = points_of(approx)->nearest(c.data.image_point->v);
  c.kernel_to_field = lines_of(approx)->nearest(c.data.kernel_line->v);
  c.complex_residual = kulkarni_distance(complexify(*c.data.image_point), approx);
  return c;
}

ClusterCheck orbit_cluster_check(const std::vector<CPoint>& probes, const std::vector<GroupElement>& elements,
                                 const LimitSetApprox& approx, double probe_margin) {
  ClusterCheck out;
  if (elements.empty() || probes.empty()) {
    out.vacuous = true;
    return out;
  }
  for (const auto& z : probes)
    if (kulkarni_distance(z, approx) < probe_margin)
      throw Error(Errc::ProbeTooClose, "probe " + to_text(z) + " is within the probe margin of the field");
  std::vector<const GroupElement*> order;
  for (const auto& g : elements) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(), [](const GroupElement* a, const GroupElement* b) {
    if (a->word.size() != b->word.size()) return a->word.size() < b->word.size();
    return a->word < b->word;
  });
  const std::size_t take = (order.size() + 3) / 4;
  std::vector<CPoint> proxies;
  for (std::size_t k = order.size() - take; k < order.size(); ++k)
    for (const auto& z : probes) proxies.push_back(apply(order[k]->map, z));
  std::vector<double> d(proxies.size());
  parallel_for(proxies.size(), [&](std::size_t k) { d[k] = kulkarni_distance(proxies[k], approx); });
  out.proxies = proxies.size();
  out.max_gap = *std::max_element(d.begin(), d.end());
  return out;
}

double minimality_gap(const std::vector<RPoint>& probes, const std::vector<GroupElement>& elements,
                      const LimitSetApprox& approx) {
  double worst = 0.0;
  for (const auto& x : probes) {
    std::vector<Vec3<double>> orbit_pts{x.v};
    for (const auto& g : elements) {
      orbit_pts.push_back(apply(g.map, x).v);
      const RMap inv = g.exact ? to_float(inverse(*g.exact)) : inverse(g.map);
      orbit_pts.push_back(apply(inv, x).v);
    }
    const NearestIndex idx(orbit_pts);
    std::vector<double> d(approx.curve.size());
    parallel_for(approx.curve.size(), [&](std::size_t k) { d[k] = idx.nearest(approx.curve[k].point.v); });
    if (!d.empty()) worst = std::max(worst, *std::max_element(d.begin(), d.end()));
  }
  return worst;
}

std::pair<double, double> invariance_gap(const std::vector<GroupElement>& elements, const LimitSetApprox& approx) {
  const auto pi = points_of(approx);
  const auto li = lines_of(approx);
  std::vector<double> dp(elements.size(), 0.0), dl(elements.size(), 0.0);
  parallel_for(elements.size(), [&](std::size_t e) {
    const auto& g = elements[e];
    for (std::size_t k = 0; k < approx.arc_count; ++k) {
      dp[e] = std::max(dp[e], pi->nearest(apply(g.map, approx.curve[k].point).v));
      dl[e] = std::max(dl[e], li->nearest(linalg::apply(g.dual_map.m, approx.lines[k].line.v)));
    }
  });
  double a = 0.0, b = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    a = std::max(a, dp[e]);
    b = std::max(b, dl[e]);
  }
  return {a, b};
}

namespace {

std::optional<RPoint> try_meet(const RLine& a, const RLine& b) {
  const auto c = cross(a.v, b.v);
  if (std::sqrt(dot(c, c)) <= 1e-15) return std::nullopt;
  return RPoint{normalized(c)};
}

bool near_line(const std::optional<RPoint>& x, const RLine& l, double tol) {
  return !x || dist_point_line(*x, l) <= tol;
}

}  // namespace

Census general_position_census(const std::vector<RLine>& lines, double tol) {
  const std::size_t n = lines.size();
  if (n < 3) throw Error(Errc::TooFew, "census needs at least three lines");
  std::vector<std::optional<RPoint>> meets(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) meets[i * n + j] = try_meet(lines[i], lines[j]);
  std::vector<int> conc(n, 2);
  std::vector<std::size_t> gp(n, 0), bad(n, 0);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& mij = meets[i * n + j];
      int count = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (near_line(mij, lines[k], tol)) ++count;
      conc[i] = std::max(conc[i], count);
      for (std::size_t k = j + 1; k < n; ++k) {
        const bool c = near_line(mij, lines[k], tol) || near_line(meets[i * n + k], lines[j], tol) ||
                       near_line(meets[j * n + k], lines[i], tol);
        if (c)
          ++bad[i];
        else
          ++gp[i];
      }
    }
  });
  Census out;
  for (std::size_t i = 0; i < n; ++i) {
    out.max_concurrency = std::max(out.max_concurrency, conc[i]);
    out.gp_triple_count += gp[i];
    out.concurrent_triples += bad[i];
  }
  return out;
}

std::vector<RLine> general_position_subset(const std::vector<RLine>& pool, std::size_t count, double tol,
                                           unsigned seed) {
  std::vector<std::size_t> order(pool.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::mt19937 rng(seed);
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng() % k]);

  std::vector<RLine> chosen;
  std::vector<std::optional<RPoint>> meets;  // all pairs among chosen
  for (std::size_t idx : order) {
    if (chosen.size() >= count) break;
    const RLine& c = pool[idx];
    bool ok = true;
    for (const auto& l : chosen)
      if (line_angle(l, c) <= tol) ok = false;
    for (std::size_t m = 0; ok && m < meets.size(); ++m)
      if (near_line(meets[m], c, tol)) ok = false;
    std::vector<std::optional<RPoint>> fresh;
    for (std::size_t a = 0; ok && a < chosen.size(); ++a) {
      const auto x = try_meet(chosen[a], c);
      for (std::size_t b = 0; ok && b < chosen.size(); ++b)
        if (b != a && near_line(x, chosen[b], tol)) ok = false;
      fresh.push_back(x);
    }
    if (!ok) continue;
    chosen.push_back(c);
    for (auto& x : fresh) meets.push_back(x);
  }
  return chosen;
}

namespace {

using Basis = std::vector<Mat3d>;

Basis symmetric_basis() {
  Basis b;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Mat3d e{};
      e[i][j] = 1.0;
      e[j][i] = 1.0;
      b.push_back(e);
    }
  return b;
}

Basis antisymmetric_basis() {
  Basis b;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat3d e{};
      e[i][j] = 1.0;
      e[j][i] = -1.0;
      b.push_back(e);
    }
  return b;
}

Eigen::MatrixXd stacked(const std::vector<Mat3d>& gs, const Basis& basis) {
  Eigen::MatrixXd k(9 * gs.size(), basis.size());
  for (std::size_t m = 0; m < gs.size(); ++m) {
    const Mat3d gt = linalg::transpose(gs[m]);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Mat3d img = linalg::multiply(gt, linalg::multiply(basis[c], gs[m]));
      for (int e = 0; e < 9; ++e) k(9 * m + e, c) = img[e / 3][e % 3] - basis[c][e / 3][e % 3];
    }
  }
  return k;
}

struct NullSpace {
  std::vector<Eigen::VectorXd> vectors;
  double smallest = 0.0;
};

NullSpace null_space_of(const Eigen::MatrixXd& k, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = k.cols();
  NullSpace out;
  out.smallest = n > s.size() ? 0.0 : s(n - 1);
  const double ref = std::max(1.0, s.size() ? s(0) : 0.0);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double sv = c < s.size() ? s(c) : 0.0;
    if (sv <= tol * ref) out.vectors.push_back(svd.matrixV().col(c));
  }
  return out;
}

Mat3<cplx> form_of(const Basis& sb, const Eigen::VectorXd& sc, const Basis& ab, const Eigen::VectorXd& ac) {
  Mat3<cplx> h{};
  for (std::size_t k = 0; k < sb.size(); ++k)
    for (int e = 0; e < 9; ++e) h[e / 3][e % 3] += sc(k) * sb[k][e / 3][e % 3];
  for (std::size_t k = 0; k < ab.size(); ++k)
    for (int e = 0; e < 9; ++e) h[e / 3][e % 3] += cplx(0.0, ac(k) * ab[k][e / 3][e % 3]);
  return h;
}

double form_residual(const std::vector<Mat3d>& gs, const Mat3<cplx>& h) {
  double hn = 0.0;
  for (const auto& row : h)
    for (const auto& x : row) hn += std::norm(x);
  hn = std::sqrt(hn);
  double worst = 0.0;
  for (const auto& g : gs) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cplx s = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) s += g[a][i] * h[a][b] * g[b][j];
        r += std::norm(s - h[i][j]);
      }
    worst = std::max(worst, std::sqrt(r) / hn);
  }
  return worst;
}

std::optional<std::pair<int, int>> signature_of(const Mat3<cplx>& h) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = h[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return std::nullopt;
  int pos = 0, neg = 0;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(ev(k)) <= 1e-6 * top) return std::nullopt;
    (ev(k) > 0 ? pos : neg)++;
  }
  return std::pair<int, int>{pos, neg};
}

// Orthogonal projection of a form onto the span of the null vectors.
Eigen::VectorXd project(const std::vector<Eigen::VectorXd>& ns, const Eigen::VectorXd& x) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(x.size());
  for (const auto& v : ns) r += v.dot(x) * v;
  return r;
}

}  // namespace

HermitianResult hermitian_invariant_search(const std::vector<RMap>& maps, double null_tol) {
  HermitianResult out;
  std::vector<Mat3d> gs;
  for (const auto& m : maps) gs.push_back(linalg::det_normalize(m.m));
  const Basis sb = symmetric_basis(), ab = antisymmetric_basis();
  const auto sn = null_space_of(stacked(gs, sb), null_tol);
  const auto an = null_space_of(stacked(gs, ab), null_tol);
  out.null_dim = sn.vectors.size() + an.vectors.size();
  if (out.null_dim == 9) {
    out.found = true;
    out.all_invariant = true;
    out.form = form_of(sb, Eigen::VectorXd::Unit(6, 0) + Eigen::VectorXd::Unit(6, 3) + Eigen::VectorXd::Unit(6, 5), ab,
                       Eigen::VectorXd::Zero(3));
    return out;
  }

  // candidates in symmetric coordinates (order 00,01,02,11,12,22), then antisymmetric
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> cands;
  auto sym = [](std::initializer_list<double> v) {
    Eigen::VectorXd x(6);
    int k = 0;
    for (double d : v) x(k++) = d;
    return x;
  };
  const Eigen::VectorXd z3 = Eigen::VectorXd::Zero(3);
  for (const auto& c : {sym({0, 0, 1, 1, 0, 0}), sym({1, 0, 0, 1, 0, -1}), sym({1, 0, 0, -1, 0, 1}),
                        sym({-1, 0, 0, 1, 0, 1}), sym({0, 1, 0, 0, 0, 1}), sym({1, 0, 0, 0, 1, 0})})
    cands.push_back({project(sn.vectors, c), z3});
  for (const auto& v : sn.vectors) cands.push_back({v, z3});
  for (const auto& v : an.vectors) cands.push_back({Eigen::VectorXd::Zero(6), v});
  if (!sn.vectors.empty() || !an.vectors.empty()) {
    std::mt19937 rng(2024);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 256; ++t) {
      Eigen::VectorXd s = Eigen::VectorXd::Zero(6), a = Eigen::VectorXd::Zero(3);
      for (const auto& v : sn.vectors) s += nd(rng) * v;
      for (const auto& v : an.vectors) a += nd(rng) * v;
      cands.push_back({s, a});
    }
  }
  for (const auto& [s, a] : cands) {
    if (s.norm() + a.norm() < 1e-12) continue;
    const auto h = form_of(sb, s, ab, a);
    const auto sig = signature_of(h);
    if (!sig) continue;
    if ((sig->first == 2 && sig->second == 1) || (sig->first == 1 && sig->second == 2)) {
      out.found = true;
      out.signature = std::pair<int, int>{2, 1};
      out.form = h;
      if (sig->first == 1)
        for (auto& row : out.form)
          for (auto& x : row) x = -x;
      out.joint_residual = form_residual(gs, out.form);
      return out;
    }
  }
  out.joint_residual = std::min(sn.smallest, an.smallest);
  return out;
}

}  // namespace pappus
