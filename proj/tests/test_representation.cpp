#include <doctest.h>

#include <cmath>

#include "pappus/representation.hpp"

using namespace pappus;

TEST_CASE("reduce_word") {
  CHECK(reduce_word("ii").empty());
  CHECK(reduce_word("1ii2") == "12");
  CHECK(reduce_word("i1i") == "i1i");
  CHECK(reduce_word("1iiii2i") == "12i");
  CHECK(reduce_word(reduce_word("i1iii")) == reduce_word("i1iii"));
  CHECK_THROWS_AS(reduce_word("13"), Error);
}

TEST_CASE("letter maps of the symmetric box") {
  const ZBox s = symmetric_seed();
  const auto e = rho_hat("", s);
  CHECK(e.exact->m == identity_map_z().m);
  CHECK(e.mark_residual == 0.0);
  const auto one = rho_hat("1", s);
  CHECK(one.exact->m == Mat3<Z>{{{2, 0, 0}, {0, 1, 1}, {0, -1, 3}}});
  CHECK(one.mark_residual == 0.0);
  CHECK(one.in_sigma);
  const auto i = rho_hat("i", s);
  CHECK(linalg::class_distance(i.map.m, Mat3d{{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}) < 1e-15);
  CHECK(linalg::class_distance(dual_element(i).m, i.map.m) < 1e-15);
  // the elation fixes the top edge, and its dual array carries line coordinates
  const RLine top = rline(0, 1, -1);
  CHECK(line_angle(apply(one.map, top), top) < 1e-15);
  const auto v = linalg::apply(one.dual_map.m, top.v);
  CHECK(line_angle(rline(v[0], v[1], v[2]), top) < 1e-15);
}

TEST_CASE("dual intertwines incidence") {
  const auto g = rho_hat("12i", default_seed());
  const RPoint x = rpoint(0.3, -0.2);
  const RLine l = join(x, rpoint(1.5, 0.4));
  const auto v = linalg::apply(g.dual_map.m, l.v);
  CHECK(dist_point_line(apply(g.map, x), rline(v[0], v[1], v[2])) < 1e-14);
}

TEST_CASE("definitional exactness") {
  const ZBox seed = default_seed();
  for (const char* w : {"1", "2", "i", "12", "i21", "2i1i"}) {
    const auto g = rho_hat(w, seed);
    const ZBox img = apply_word(w, seed);
    REQUIRE(g.exact);
    CHECK(apply(*g.exact, seed.p) == img.p);
    CHECK(apply(*g.exact, seed.q) == img.q);
    CHECK(apply(*g.exact, seed.r) == img.r);
    CHECK(apply(*g.exact, seed.s) == img.s);
  }
}

TEST_CASE("enumeration") {
  const ZBox seed = default_seed();
  const auto e0 = enumerate_group(seed, 0);
  REQUIRE(e0.elements.size() == 1);
  CHECK(e0.elements[0].word.empty());
  const auto e2 = enumerate_group(seed, 2);
  CHECK(e2.submitted == 12);
  // Box(i1) = Box(2i) and Box(i2) = Box(1i) as point sets, so two words merge
  CHECK(e2.elements.size() == 10);
  for (const auto& [dropped, kept] : e2.merged) CHECK(kept.size() <= dropped.size());
}

TEST_CASE("anti-homomorphism on Sigma words") {
  const ZBox seed = default_seed();
  const auto en = enumerate_group(seed, 4);
  int checked = 0;
  for (const auto& u : en.elements)
    for (const auto& v : en.elements) {
      if (!u.in_sigma || !v.in_sigma || u.word.size() + v.word.size() > 6) continue;
      const auto uv = rho_hat(u.word + v.word, seed);
      CHECK(anti_hom_residual(uv, u, v) <= 1e-10);
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("loxodromic harvest") {
  const auto en = enumerate_group(default_seed(), 6);
  const auto h = find_loxodromics(en.elements);
  CHECK(!h.items.empty());
  REQUIRE(h.disjoint_pair);
  CHECK(h.pair_separation > 1e-3);
  for (const auto& l : h.items) {
    CHECK(l.g.in_sigma);
    CHECK(l.spec.cls == MapClass::Loxodromic);
  }
  // the elation letter on the symmetric box is excluded
  const auto sym = find_loxodromics({rho_hat("1", symmetric_seed()), rho_hat("", symmetric_seed())});
  CHECK(sym.items.empty());
  // the product of the symmetric letters is loxodromic
  const auto prod = find_loxodromics({rho_hat("1i", symmetric_seed())});
  REQUIRE(prod.items.size() == 1);
  const auto raw = prod.items[0].spec.raw_eigenvalues();
  const double ratio = std::abs(raw[0] / raw[2]);
  CHECK(ratio == doctest::Approx((1 + std::sqrt(5.0)) / (std::sqrt(5.0) - 1)));
}

TEST_CASE("matrix dump line") {
  const auto g = rho_hat("1", symmetric_seed());
  const std::string line = matrix_line(g);
  CHECK(line.rfind("1\t", 0) == 0);
  CHECK(line.find("\telation\t") != std::string::npos);
}

TEST_CASE("strict mode raises MarkMismatch") {
  RepOptions strict;
  strict.strict = true;
  const auto en = enumerate_group(default_seed(), 4);
  std::string bad;
  for (const auto& g : en.elements)
    if (!g.in_sigma) bad = g.word;
  REQUIRE(!bad.empty());
  try {
    rho_hat(bad, default_seed(), strict);
    FAIL("expected MarkMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MarkMismatch);
  }
}
