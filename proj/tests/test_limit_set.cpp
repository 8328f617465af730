#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <numbers>
#include <random>

#include "pappus/limit_set.hpp"

using namespace pappus;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

LimitSetApprox toy(const std::vector<RPoint>& pts, const std::vector<RLine>& lines) {
  LimitSetApprox a;
  for (std::size_t k = 0; k < pts.size(); ++k) a.curve.push_back({"w" + std::to_string(k) + "/t", pts[k], 0.0});
  for (std::size_t k = 0; k < lines.size(); ++k)
    a.lines.push_back({"w" + std::to_string(k) + "/t", lines[k], complexify(lines[k])});
  a.arc_count = pts.size();
  a.build_index();
  return a;
}

const Mat3d kTau1{{{2, 0, 0}, {0, 1, 1}, {0, -1, 3}}};

}  // namespace

TEST_CASE("tree marks of the symmetric box are flat") {
  const auto m = tree_marks(symmetric_seed(), 1);
  REQUIRE(m.size() == 3);
  CHECK(m[0].point == zpoint(0, 1));
  CHECK(m[1].point == zpoint(0, 0));
  CHECK(m[2].point == zpoint(0, -1));
  CHECK(m[0].line == zline(0, 1, -1));
  CHECK(m[1].line == zline(0, 1, 0));
  CHECK(m[2].line == zline(0, 1, 1));
  CHECK(is_flat(symmetric_seed()));
  CHECK(code_of([] { sample_curve(symmetric_seed(), 1, 0); }) == Errc::DegenerateSeed);
}

TEST_CASE("default seed samples") {
  const auto m = tree_marks(default_seed(), 1);
  REQUIRE(m.size() == 3);
  CHECK(det3(m[0].point.v, m[1].point.v, m[2].point.v) != 0);
  CHECK(!is_flat(default_seed()));
  for (int d = 0; d <= 6; ++d) CHECK(tree_marks(default_seed(), d).size() == (std::size_t{1} << d) + 1);
  const auto a0 = sample_curve(default_seed(), 0, 0);
  REQUIRE(a0.curve.size() == 2);
  CHECK(a0.curve[0].param == "/t");
  CHECK(a0.curve[1].param == "/b");
}

TEST_CASE("marks lie on their edges exactly") {
  for (const auto& m : tree_marks(default_seed(), 8)) CHECK(incident(m.point, m.line));
}

TEST_CASE("error bounds are sound and shrink") {
  const auto a = sample_curve(default_seed(), 6, 0);
  const auto b = sample_curve(default_seed(), 7, 0);
  std::map<std::string, CurveSample> shallow;
  for (const auto& s : a.curve) shallow[s.param] = s;
  for (const auto& s : b.curve) {
    if (s.param.back() != 't') continue;
    // the depth-7 word c+w refines the depth-6 box w
    const std::string parent = s.param.substr(1);
    REQUIRE(shallow.count(parent));
    CHECK(dist(s.point, shallow[parent].point) <= shallow[parent].error_bound + 1e-12);
  }
  CHECK(depth_error_bound(default_seed(), 8) < depth_error_bound(default_seed(), 6));
}

TEST_CASE("translates and deduplicated parameters") {
  const auto a = sample_curve(default_seed(), 8, 2);
  CHECK(!a.translates.empty());
  CHECK(a.curve.size() == a.lines.size());
  std::set<std::string> params;
  for (const auto& s : a.curve) params.insert(s.param);
  CHECK(params.size() == a.curve.size());
  for (std::size_t k = 0; k < a.curve.size(); ++k) {
    CHECK(a.curve[k].param == a.lines[k].param);
    CHECK(dist_point_line(a.curve[k].point, a.lines[k].line) < 1e-9);
  }
}

TEST_CASE("density gap toys") {
  const std::vector<RPoint> pts{rpoint(1, 0, 0), rpoint(0, 1, 0), rpoint(1, 1, 1)};
  const auto g = density_gap(pts, pts);
  CHECK(g.fixed_to_curve == 0.0);
  CHECK(g.curve_to_fixed == 0.0);
  const auto h = density_gap(pts, {rpoint(1, 0, 0)});
  CHECK(h.fixed_to_curve == 0.0);
  CHECK(h.curve_to_fixed == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("fixed structure of the diagonal toy") {
  const auto a = toy({rpoint(1, 0, 0), rpoint(0, 0, 1)}, {rline(0, 0, 1), rline(1, 0, 0)});
  const auto s = spectrum(Mat3d{{{4, 0, 0}, {0, 2, 0}, {0, 0, 1}}});
  const auto f = fixed_structure_check(s, a);
  CHECK(f.attracting_to_curve == 0.0);
  CHECK(f.repelling_to_curve == 0.0);
  CHECK(f.attracting_line_to_field == 0.0);
  CHECK(f.repelling_line_to_field == 0.0);
  CHECK(f.saddle_vs_meet == 0.0);
  CHECK(f.saddle_separation == doctest::Approx(std::numbers::pi / 2));
  CHECK(code_of([&] { fixed_structure_check(spectrum(kTau1), a); }) == Errc::NotLoxodromic);
}

TEST_CASE("saddle of the symmetric product is the meet of its fixed lines") {
  const auto s = spectrum(Mat3d{{{-2, 0, 0}, {0, -1, 1}, {0, 1, 3}}});
  CHECK(dist(*s.saddle_point, meet(*s.attracting_line, *s.repelling_line)) < 1e-12);
  CHECK(dist(*s.saddle_point, rpoint(1, 0, 0)) < 1e-12);
}

TEST_CASE("invariant searches") {
  const RMap t1 = make_map(kTau1);
  const RMap mi = make_map(Mat3d{{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}});
  const auto l = invariant_line_search({t1, mi});
  CHECK(l.residual < 1e-12);
  CHECK(line_angle(rline(l.best[0].real(), l.best[1].real(), l.best[2].real()), rline(1, 0, 0)) < 1e-12);
  const RMap d123 = make_map(Mat3d{{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}});
  CHECK(invariant_line_search({d123}).residual < 1e-12);
  CHECK(invariant_point_search({d123}).residual < 1e-12);
  const RMap perm = make_map(Mat3d{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}});
  CHECK(invariant_point_search({d123, perm}).residual > 0.1);
  const auto gate = degeneracy_gate(symmetric_seed());
  CHECK(gate.degenerate);
  CHECK(!degeneracy_gate(default_seed()).degenerate);
  CHECK(degeneracy_gate(default_seed()).line.residual > 1e-3);
  CHECK(invariant_point_search(degeneracy_gate(default_seed()).letters, true).residual > 1e-3);
}

TEST_CASE("kulkarni distance") {
  const std::vector<CLine> one{complexify(rline(0, 1, 0))};
  CHECK(kulkarni_distance(cpoint(0, 1, 0), one) == doctest::Approx(std::numbers::pi / 2));
  CHECK(kulkarni_distance(cpoint({0, 1}, 1, 1), std::vector<CLine>{complexify(rline(0, 1, -1))}) < 1e-15);
  CHECK(kulkarni_distance(cpoint(5, 0, 0), one) == 0.0);
  CHECK(code_of([] { kulkarni_distance(cpoint(1, 0, 0), std::vector<CLine>{}); }) == Errc::EmptyApprox);
  CHECK(code_of([] { kulkarni_distance(cpoint(1, 0, 0), LimitSetApprox{}); }) == Errc::EmptyApprox);
}

TEST_CASE("pseudo sequences") {
  const auto a = toy({rpoint(0, 1, 1)}, {rline(0, 1, -1)});
  GroupElement g;
  g.map = make_map(kTau1);
  const auto pc = pseudo_sequence_check(g, a, 60);
  CHECK(pc.data.numeric_rank == 1);
  CHECK(pc.image_to_curve <= 1e-12);
  CHECK(pc.kernel_to_field <= 1e-12);
  GroupElement id;
  id.map = identity_map();
  CHECK(code_of([&] { pseudo_sequence_check(id, a, 60); }) == Errc::NotEscaping);
}

TEST_CASE("orbit cluster check") {
  const auto a = toy({rpoint(1, 0, 0)}, {rline(0, 0, 1)});
  const auto c = orbit_cluster_check({cpoint(0, 0, 1)}, {}, a);
  CHECK(c.vacuous);
  GroupElement g;
  g.map = make_map(Mat3d{{{4, 0, 0}, {0, 2, 0}, {0, 0, 1}}});
  CHECK(code_of([&] { orbit_cluster_check({cpoint(1, 0, 0)}, {g}, a); }) == Errc::ProbeTooClose);
  // powers of a loxodromic push a probe to its attracting point, which is on the sampled line z = 0
  std::vector<GroupElement> pw;
  Mat3d p = linalg::identity();
  for (int n = 1; n <= 40; ++n) {
    p = linalg::multiply(p, g.map.m);
    GroupElement e;
    e.word = std::string(static_cast<std::size_t>(n), '1');
    e.map = make_map(p);
    pw.push_back(e);
  }
  const auto cc = orbit_cluster_check({cpoint({1, 1}, 1, 1)}, pw, a);
  CHECK(cc.max_gap < 1e-9);
}

TEST_CASE("general position census") {
  const std::vector<RLine> pencil{rline(0, 1, -1), rline(0, 1, 0), rline(0, 1, 1)};
  auto c = general_position_census(pencil);
  CHECK(c.max_concurrency == 3);
  CHECK(c.gp_triple_count == 0);
  c = general_position_census({rline(1, 0, 0), rline(0, 1, 0), rline(0, 0, 1)});
  CHECK(c.max_concurrency == 2);
  CHECK(c.gp_triple_count == 1);
  CHECK(code_of([] { general_position_census({rline(1, 0, 0), rline(0, 1, 0)}); }) == Errc::TooFew);
  // census sanity on random lines
  std::mt19937 rng(2);
  std::normal_distribution<double> nd;
  std::vector<RLine> ls;
  for (int k = 0; k < 30; ++k) ls.push_back(rline(nd(rng), nd(rng), nd(rng)));
  ls.push_back(join(meet(ls[0], ls[1]), rpoint(0.3, 0.2)));  // forces one concurrency
  c = general_position_census(ls);
  CHECK(c.max_concurrency >= 3);
  const std::size_t n = ls.size();
  CHECK(c.gp_triple_count + c.concurrent_triples == n * (n - 1) * (n - 2) / 6);
  const auto sub = general_position_subset(ls, 20);
  CHECK(sub.size() == 20);
  CHECK(general_position_census(sub).max_concurrency == 2);
}

TEST_CASE("hermitian form search") {
  auto h = hermitian_invariant_search({make_map(Mat3d{{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}}})});
  CHECK(h.found);
  REQUIRE(h.signature);
  CHECK(*h.signature == std::pair<int, int>{2, 1});
  CHECK(h.joint_residual <= 1e-12);
  h = hermitian_invariant_search({identity_map()});
  CHECK(h.found);
  CHECK(h.all_invariant);
  // a boost preserving diag(1,1,-1), together with a rotation about the z axis
  const double ch = std::cosh(0.8), sh = std::sinh(0.8), c = std::cos(1.1), s = std::sin(1.1);
  h = hermitian_invariant_search({make_map(Mat3d{{{ch, 0, sh}, {0, 1, 0}, {sh, 0, ch}}}),
                                  make_map(Mat3d{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}})});
  CHECK(h.found);
  CHECK(h.joint_residual <= 1e-12);
}

TEST_CASE("refinement monotonicity and invariance") {
  const ZBox seed = default_seed();
  std::mt19937 rng(4);
  std::normal_distribution<double> nd;
  std::vector<CPoint> probes;
  for (int k = 0; k < 8; ++k)
    probes.push_back(cpoint({nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}));
  std::vector<double> prev(probes.size(), 10.0);
  for (int d : {4, 6, 8}) {
    const auto a = sample_curve(seed, d, 2);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const double x = kulkarni_distance(probes[k], a);
      CHECK(x <= prev[k] + 1e-12);
      prev[k] = x;
    }
  }
  const auto en = enumerate_group(seed, 4);
  std::vector<GroupElement> sig;
  for (const auto& g : en.elements)
    if (g.in_sigma) sig.push_back(g);
  const auto a = sample_curve(seed, 10, 2);
  const auto [dp, dl] = invariance_gap(sig, a);
  CHECK(dp <= a.eps + 1e-6);
  CHECK(dl <= a.eps + 1e-6);
}

TEST_CASE("minimality gap is small for curve probes") {
  const ZBox seed = default_seed();
  const auto a = sample_curve(seed, 10, 2);
  const auto en = enumerate_group(seed, 6);
  std::vector<GroupElement> sig;
  for (const auto& g : en.elements)
    if (g.in_sigma) sig.push_back(g);
  const double gap = minimality_gap({a.curve[100].point, a.curve[700].point}, sig, a);
  CHECK(gap < std::numbers::pi / 4);
}
