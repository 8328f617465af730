#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pappus/marked_box.hpp"
#include "pappus/verify.hpp"

using namespace pappus;

namespace {

ZBox theta0() { return symmetric_seed(); }

bool same_points(const ZBox& a, const ZBox& b) {
  return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s && a.t == b.t && a.b == b.b;
}

ZBox box(std::array<std::pair<mpq_class, mpq_class>, 6> c) {
  return {zpoint(c[0].first, c[0].second), zpoint(c[1].first, c[1].second), zpoint(c[2].first, c[2].second),
          zpoint(c[3].first, c[3].second), zpoint(c[4].first, c[4].second), zpoint(c[5].first, c[5].second)};
}

const mpq_class half(1, 2), third(1, 3);

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(theta0()).empty());
  CHECK(validate(default_seed(), true).empty());
  ZBox bad = theta0();
  bad.r = zpoint(3, 1);
  const auto v = validate(bad);
  CHECK(std::find(v.begin(), v.end(), "three vertices collinear") != v.end());
  bad = theta0();
  bad.t = bad.p;
  const auto w = validate(bad);
  CHECK(std::find(w.begin(), w.end(), "mark equals vertex") != w.end());
  bad = theta0();
  bad.t = zpoint(3, 1);
  const auto x = validate(bad);
  CHECK(std::find(x.begin(), x.end(), "top mark outside open top edge") != x.end());
}

TEST_CASE("pappus triple of the symmetric box") {
  const auto pt = pappus_triple(theta0());
  CHECK(pt.u == zpoint(-half, 0));
  CHECK(pt.m == zpoint(0, 0));
  CHECK(pt.v == zpoint(half, 0));
  CHECK(pt.axis == zline(0, 1, 0));
  const ZBox child = apply_box_op(BoxOp::Tau1, theta0());
  const auto ct = pappus_triple(child);
  CHECK(ct.u == zpoint(-third, third));
  CHECK(ct.m == zpoint(0, third));
  CHECK(ct.v == zpoint(third, third));
  CHECK(ct.axis == zline(0, 3, -1));
}

TEST_CASE("box operations on the symmetric box") {
  CHECK(same_points(apply_box_op(BoxOp::I, theta0()), box({{{1, -1}, {-1, -1}, {-1, 1}, {1, 1}, {0, -1}, {0, 1}}})));
  CHECK(same_points(apply_box_op(BoxOp::Tau1, theta0()),
                    box({{{-1, 1}, {1, 1}, {half, 0}, {-half, 0}, {0, 1}, {0, 0}}})));
  CHECK(same_points(apply_box_op(BoxOp::Tau2, theta0()),
                    box({{{-half, 0}, {half, 0}, {1, -1}, {-1, -1}, {0, 0}, {0, -1}}})));
  CHECK_THROWS_AS(box_op('3'), Error);
}

TEST_CASE("diameters") {
  // t = [0,1,1] and b = [0,-1,1] are orthogonal representatives
  CHECK(diameter(theta0()) == doctest::Approx(std::numbers::pi / 2));
  CHECK(diameter(apply_box_op(BoxOp::Tau1, theta0())) < diameter(theta0()));
  // an orthogonal map preserves the diameter
  const RBox f = to_float(default_seed());
  const double c = std::cos(0.7), s = std::sin(0.7);
  const RMap rot = make_map(Mat3d{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}});
  CHECK(diameter(transform(rot, f)) == doctest::Approx(diameter(f)).epsilon(1e-12));
}

TEST_CASE("exact laws on random boxes") {
  const LawCounts lc = exact_laws(200, 20, 99);
  CHECK(lc.boxes == 200);
  CHECK(lc.pappus_failures == 0);
  CHECK(lc.involution_failures == 0);
  CHECK(lc.conjugation_failures == 0);
  CHECK(lc.equivariance_failures == 0);
}

TEST_CASE("nesting in the closed quadrilateral") {
  std::mt19937 rng(5);
  for (int k = 0; k < 100; ++k) {
    const ZBox b = random_box(rng);
    for (BoxOp op : {BoxOp::Tau1, BoxOp::Tau2}) {
      const ZBox c = apply_box_op(op, b);
      for (const ZPoint* x : {&c.p, &c.q, &c.r, &c.s, &c.t, &c.b}) CHECK(in_closed_quad(*x, b));
      CHECK(validate(c).empty());
    }
  }
}

TEST_CASE("orbit enumeration") {
  const auto o1 = orbit(theta0(), 1, "12");
  REQUIRE(o1.size() == 3);
  CHECK(o1[0].word.empty());
  CHECK(o1[1].word == "1");
  CHECK(o1[2].word == "2");
  CHECK(orbit(theta0(), 2, "i12").size() == 12);
  CHECK(orbit(default_seed(), 0, "i12").size() == 1);
  CHECK(orbit(default_seed(), 6, "12").size() == 127);
  // rightmost letter acts first
  const auto o2 = orbit(default_seed(), 2, "12");
  for (const auto& n : o2) CHECK(same_points(n.box, apply_word(n.word, default_seed())));
  CHECK(same_points(apply_word("12", default_seed()),
                    apply_box_op(BoxOp::Tau1, apply_box_op(BoxOp::Tau2, default_seed()))));
}

TEST_CASE("mark diamond contracts along the tau tree") {
  double prev = 10;
  for (int d = 2; d <= 10; ++d) {
    double worst = 0;
    for (const auto& n : orbit(default_seed(), d, "12"))
      if (static_cast<int>(n.word.size()) == d) worst = std::max(worst, mark_diamond(n.box));
    CHECK(worst < prev);
    prev = worst;
  }
}
