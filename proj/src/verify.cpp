#include "pappus/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "pappus/limit_set.hpp"
#include "pappus/representation.hpp"
#include "pappus/serialize.hpp"

namespace pappus {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Degenerate: return "degenerate";
    case Status::Skipped: return "skipped";
  }
  return "skipped";
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "invariant_line",
      "exact_pappus",
      "exact_involution",
      "exact_conjugation",
      "exact_equivariance",
      "anti_homomorphism",
      "mark_consistency",
      "loxodromic_harvest",
      "fixed_points_on_curve",
      "fixed_lines_on_field",
      "saddle_consistency",
      "saddle_separation",
      "density_gap_fixed_to_curve",
      "density_gap_curve_to_fixed",
      "density_monotone",
      "curve_invariance",
      "dual_invariance",
      "invariant_line_complex",
      "invariant_point",
      "invariant_point_complex",
      "pseudo_limits",
      "cluster_proxies",
      "minimality_gap",
      "refinement_monotone",
      "general_position",
      "hermitian_form",
  };
  return names;
}

namespace {

mpq_class random_rational(std::mt19937& rng, int num, int den) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  mpq_class q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

mpq_class random_fraction(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(2, 9);
  const int den = d(rng);
  std::uniform_int_distribution<int> n(1, den - 1);
  mpq_class q(n(rng), den);
  q.canonicalize();
  return q;
}

}  // namespace

ZBox random_box(std::mt19937& rng) {
  for (;;) {
    std::array<mpq_class, 8> c;
    for (auto& x : c) x = random_rational(rng, 12, 5);
    const mpq_class lt = random_fraction(rng), lb = random_fraction(rng);
    ZBox b;
    b.p = zpoint(c[0], c[1]);
    b.q = zpoint(c[2], c[3]);
    b.r = zpoint(c[4], c[5]);
    b.s = zpoint(c[6], c[7]);
    b.t = zpoint(c[0] + lt * (c[2] - c[0]), c[1] + lt * (c[3] - c[1]));
    b.b = zpoint(c[6] + lb * (c[4] - c[6]), c[7] + lb * (c[5] - c[7]));
    if (validate(b, true).empty()) return b;
  }
}

ZMap random_map(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-5, 5);
  for (;;) {
    Mat3<Z> m;
    for (auto& row : m)
      for (auto& x : row) x = e(rng);
    if (det3(m[0], m[1], m[2]) != 0) return make_map(m);
  }
}

LawCounts exact_laws(int boxes, int maps, unsigned seed) {
  std::mt19937 rng(seed);
  LawCounts out;
  std::vector<ZMap> as;
  for (int k = 0; k < maps; ++k) as.push_back(random_map(rng));
  for (int k = 0; k < boxes; ++k) {
    const ZBox b = random_box(rng);
    ++out.boxes;
    const auto pt = pappus_triple(b);
    if (det3(pt.u.v, pt.m.v, pt.v.v) != 0) ++out.pappus_failures;
    const ZBox ii = apply_box_op(BoxOp::I, apply_box_op(BoxOp::I, b));
    if (!(ii.p == b.p && ii.q == b.q && ii.r == b.r && ii.s == b.s && ii.t == b.t && ii.b == b.b))
      ++out.involution_failures;
    const ZBox conj = apply_word("i1i", b);
    if (!same_class(conj, apply_box_op(BoxOp::Tau2, b))) ++out.conjugation_failures;
    // each box is paired with one map, cycling through the map pool
    if (!as.empty()) {
      const ZMap& a = as[static_cast<std::size_t>(k) % as.size()];
      const ZBox ab = transform(a, b);
      for (BoxOp op : {BoxOp::I, BoxOp::Tau1, BoxOp::Tau2}) {
        const ZBox lhs = apply_box_op(op, ab);
        const ZBox rhs = transform(a, apply_box_op(op, b));
        if (!(lhs.p == rhs.p && lhs.q == rhs.q && lhs.r == rhs.r && lhs.s == rhs.s && lhs.t == rhs.t &&
              lhs.b == rhs.b))
          ++out.equivariance_failures;
      }
    }
  }
  out.maps = static_cast<int>(as.size());
  return out;
}

namespace {

std::string le(double x) { return "<=" + fmt_sig(x, 10); }
std::string gt(double x) { return ">" + fmt_sig(x, 10); }

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : r_(r) {}

  void add(const std::string& name, Status s, std::optional<double> residual, std::string tol) {
    const auto now = std::chrono::steady_clock::now();
    r_.checks.push_back({name, s, residual, std::move(tol), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }
  void upper(const std::string& name, double residual, double tol) {
    add(name, residual <= tol ? Status::Pass : Status::Fail, residual, le(tol));
  }
  void lower(const std::string& name, double residual, double tol) {
    add(name, residual > tol ? Status::Pass : Status::Fail, residual, gt(tol));
  }
  void skip(const std::string& name, std::string tol = "-") { add(name, Status::Skipped, std::nullopt, std::move(tol)); }
  void note(const std::string& s) { r_.notes.push_back(s); }

 private:
  VerifyReport& r_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string random_word(std::mt19937& rng, int len) {
  static const char letters[] = "12i";
  std::uniform_int_distribution<int> d(0, 2);
  std::string w;
  for (int k = 0; k < len; ++k) w += letters[d(rng)];
  return w;
}

}  // namespace

VerifyReport verify_all(const ZBox& seed, const VerifyConfig& cfg) {
  VerifyReport rep;
  Recorder rec(rep);
  RepOptions ropt;
  ropt.mark_tol = cfg.mark_tol;

  rec.note("depth " + std::to_string(cfg.depth) + ", maxlen " + std::to_string(cfg.maxlen) + ", translate " +
           std::to_string(cfg.translate_len));

  const DegeneracyGate gate = degeneracy_gate(seed, cfg.degenerate_tol);
  if (gate.degenerate) {
    rec.add("invariant_line", Status::Degenerate, gate.line.residual, gt(cfg.no_invariant_tol));
    rec.note("invariant line " + coeff_text(gate.line.best) + " with residual " + fmt_sig(gate.line.residual, 10));
    for (std::size_t k = 1; k < check_names().size(); ++k) rec.skip(check_names()[k]);
    rep.overall = Status::Degenerate;
    rep.overall_text = "degenerate";
    rep.exit_code = 3;
    return rep;
  }
  rec.lower("invariant_line", gate.line.residual, cfg.no_invariant_tol);

  // exact laws
  const LawCounts laws = exact_laws(cfg.law_boxes, cfg.law_maps, cfg.rng_seed);
  rec.note("exact laws over " + std::to_string(laws.boxes) + " random boxes and " + std::to_string(laws.maps) +
           " random maps");
  rec.upper("exact_pappus", laws.pappus_failures, 0.0);
  rec.upper("exact_involution", laws.involution_failures, 0.0);
  rec.upper("exact_conjugation", laws.conjugation_failures, 0.0);
  rec.upper("exact_equivariance", laws.equivariance_failures, 0.0);

  // representation
  std::mt19937 rng(cfg.rng_seed + 1);
  const int pair_len = std::min(cfg.pair_len, cfg.maxlen);
  if (pair_len >= 2 && cfg.word_pairs > 0) {
    std::map<std::string, GroupElement> cache;
    auto get = [&](const std::string& w) -> const GroupElement& {
      auto it = cache.find(w);
      if (it == cache.end()) it = cache.emplace(w, rho_hat(w, seed, ropt)).first;
      return it->second;
    };
    double worst = 0.0;
    int done = 0;
    for (int attempt = 0; done < cfg.word_pairs && attempt < 1000 * cfg.word_pairs; ++attempt) {
      std::uniform_int_distribution<int> lu(1, pair_len - 1);
      const int a = lu(rng);
      std::uniform_int_distribution<int> lv(1, pair_len - a);
      const std::string u = reduce_word(random_word(rng, a));
      const std::string v = reduce_word(random_word(rng, lv(rng)));
      const auto& gu = get(u);
      const auto& gv = get(v);
      if (!gu.in_sigma || !gv.in_sigma) continue;
      worst = std::max(worst, anti_hom_residual(get(reduce_word(u + v)), gu, gv));
      ++done;
    }
    rec.note("anti-homomorphism over " + std::to_string(done) + " word pairs with both factors in Sigma");
    if (done == cfg.word_pairs)
      rec.upper("anti_homomorphism", worst, 1e-10);
    else
      rec.skip("anti_homomorphism", le(1e-10));
  } else {
    rec.skip("anti_homomorphism", le(1e-10));
  }

  const Enumeration en = enumerate_group(seed, cfg.maxlen, ropt);
  std::size_t sigma = 0;
  double worst_mark = 0.0;
  std::string worst_word;
  for (const auto& g : en.elements) {
    if (g.in_sigma) ++sigma;
    if (g.mark_residual > worst_mark) {
      worst_mark = g.mark_residual;
      worst_word = g.word;
    }
  }
  rec.note("enumeration: " + std::to_string(en.submitted) + " words, " + std::to_string(en.elements.size()) +
           " distinct maps, " + std::to_string(sigma) + " in Sigma, " + std::to_string(en.elements.size() - sigma) +
           " quarantined" + (en.float_fallback ? ", float fallback" : ""));
  if (!worst_word.empty()) rec.note("largest mark residual at word " + worst_word);
  rec.upper("mark_consistency", worst_mark, cfg.mark_tol);

  const auto order3 = find_order_three(en.elements);
  {
    std::string s = "order-three elements:";
    if (order3.empty()) s += " none";
    for (const auto& w : order3) s += " " + w;
    rec.note(s);
  }

  const LoxoHarvest harvest = find_loxodromics(en.elements, 1e-3, cfg.gap_tol);
  if (!harvest.items.empty() && harvest.disjoint_pair) {
    const auto& [i, j] = *harvest.disjoint_pair;
    rec.note(std::to_string(harvest.items.size()) + " loxodromic elements in Sigma; disjoint pair " +
             harvest.items[i].g.word + ", " + harvest.items[j].g.word);
    rec.lower("loxodromic_harvest", harvest.pair_separation, 1e-3);
  } else {
    rec.note("no disjoint loxodromic pair up to length " + std::to_string(cfg.maxlen));
    rec.skip("loxodromic_harvest", gt(1e-3));
  }

  // curve samples
  const LimitSetApprox approx = sample_curve(seed, cfg.depth, cfg.translate_len, {12, ropt});
  const double eps = approx.eps;
  const double bound = cfg.bound_factor * eps;
  rec.note("error bound at depth " + std::to_string(cfg.depth) + ": " + fmt_sig(eps, 10) + "; " +
           std::to_string(approx.curve.size()) + " samples over " + std::to_string(approx.translates.size()) +
           " translates");

  if (!harvest.items.empty()) {
    std::vector<FixedStructure> fs(harvest.items.size());
    for (std::size_t k = 0; k < fs.size(); ++k) fs[k] = fixed_structure_check(harvest.items[k].spec, approx);
    double pts = 0.0, lines = 0.0, meet = 0.0, sep = 1e300;
    std::string sep_word;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      pts = std::max({pts, fs[k].attracting_to_curve, fs[k].repelling_to_curve});
      lines = std::max({lines, fs[k].attracting_line_to_field, fs[k].repelling_line_to_field});
      meet = std::max(meet, fs[k].saddle_vs_meet);
      if (fs[k].saddle_separation < sep) {
        sep = fs[k].saddle_separation;
        sep_word = harvest.items[k].g.word;
      }
    }
    rec.upper("fixed_points_on_curve", pts, bound);
    rec.upper("fixed_lines_on_field", lines, bound);
    rec.upper("saddle_consistency", meet, 1e-8);
    rec.note("closest saddle to the curve: word " + sep_word);
    rec.lower("saddle_separation", sep, cfg.separation_factor * eps);

    const DensityGaps dg = density_gap(approx, harvest.items);
    rec.upper("density_gap_fixed_to_curve", dg.fixed_to_curve, bound);
    rec.upper("density_gap_curve_to_fixed", dg.curve_to_fixed, bound);
    std::vector<Loxodromic> shorter;
    for (const auto& l : harvest.items)
      if (static_cast<int>(l.g.word.size()) <= 6) shorter.push_back(l);
    if (cfg.maxlen > 6 && !shorter.empty()) {
      const DensityGaps d6 = density_gap(approx, shorter);
      rec.note("density gaps at length 6: " + fmt_sig(d6.fixed_to_curve, 10) + ", " + fmt_sig(d6.curve_to_fixed, 10));
      const double worse = std::max(dg.fixed_to_curve - d6.fixed_to_curve, dg.curve_to_fixed - d6.curve_to_fixed);
      rec.add("density_monotone", worse < 0.0 ? Status::Pass : Status::Fail, worse, "<0");
    } else {
      rec.skip("density_monotone", "<0");
    }
  } else {
    for (const char* n : {"fixed_points_on_curve", "fixed_lines_on_field", "saddle_consistency", "saddle_separation",
                          "density_gap_fixed_to_curve", "density_gap_curve_to_fixed", "density_monotone"})
      rec.skip(n);
  }

  // invariance of the sample sets
  {
    std::vector<GroupElement> short_sigma;
    for (const auto& g : en.elements)
      if (g.in_sigma && static_cast<int>(g.word.size()) <= cfg.invariance_len) short_sigma.push_back(g);
    if (short_sigma.size() > 1) {
      const LimitSetApprox inv = sample_curve(seed, cfg.invariance_depth, cfg.translate_len, {12, ropt});
      const auto [dp, dl] = invariance_gap(short_sigma, inv);
      const double tol = inv.eps + 1e-6;
      rec.upper("curve_invariance", dp, tol);
      rec.upper("dual_invariance", dl, tol);
    } else {
      rec.skip("curve_invariance");
      rec.skip("dual_invariance");
    }
  }

  // letter maps have no common line or point
  rec.lower("invariant_line_complex", invariant_line_search(gate.letters, true).residual, cfg.no_invariant_tol);
  rec.lower("invariant_point", invariant_point_search(gate.letters, false).residual, cfg.no_invariant_tol);
  rec.lower("invariant_point_complex", invariant_point_search(gate.letters, true).residual, cfg.no_invariant_tol);

  // pseudo-limits of powers
  {
    const std::size_t n = std::min<std::size_t>(cfg.pseudo_count, harvest.items.size());
    if (n == 0) {
      rec.skip("pseudo_limits", le(bound));
    } else {
      double worst = 0.0;
      bool reached = true;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& g = harvest.items[k].g;
        try {
          const PseudoCheck pc = pseudo_sequence_check(g, approx, cfg.pseudo_powers);
          const auto& r = pc.data.term_ratios;
          const int below = pc.data.first_below;
          rec.note("powers of " + g.word + ": ratio " + fmt_sig(r.empty() ? 1.0 : r.back(), 4) +
                   (below >= 0 ? " below rank_tol from power " + std::to_string(below + 1) : " never below rank_tol"));
          if (below < 0 || pc.data.numeric_rank != 1) reached = false;
          worst = std::max({worst, pc.image_to_curve, pc.kernel_to_field, pc.complex_residual});
        } catch (const Error& e) {
          if (e.code() != Errc::NotEscaping) throw;
          rec.note("powers of " + g.word + " do not escape");
          reached = false;
          worst = std::max(worst, std::numbers::pi / 2);
        }
      }
      rec.add("pseudo_limits", reached && worst <= bound ? Status::Pass : Status::Fail, worst, le(bound));
    }
  }

  // cluster proxies, minimality, refinement
  std::vector<GroupElement> sigma_elems;
  for (const auto& g : en.elements)
    if (g.in_sigma) sigma_elems.push_back(g);
  std::vector<CPoint> probes;
  {
    std::mt19937 prng(cfg.rng_seed + 2);
    std::normal_distribution<double> nd;
    for (int attempt = 0; static_cast<int>(probes.size()) < cfg.probes && attempt < 1000; ++attempt) {
      const CPoint z{normalized(Vec3<cplx>{cplx(nd(prng), nd(prng)), cplx(nd(prng), nd(prng)), cplx(nd(prng), nd(prng))})};
      if (kulkarni_distance(z, approx) >= cfg.probe_margin) probes.push_back(z);
    }
  }
  if (cfg.maxlen == 0 || probes.empty()) {
    rec.skip("cluster_proxies", le(bound));
  } else {
    const ClusterCheck cc = orbit_cluster_check(probes, sigma_elems, approx, cfg.probe_margin);
    if (cc.vacuous) {
      rec.note("cluster check vacuous: no elements");
      rec.skip("cluster_proxies", le(bound));
    } else {
      rec.upper("cluster_proxies", cc.max_gap, bound);
    }
  }
  rec.note("cluster and pseudo-limit checks support consistency of the discontinuity regions, not their equality");

  if (cfg.maxlen == 0 || approx.arc_count == 0) {
    rec.skip("minimality_gap", le(bound));
  } else {
    std::mt19937 mrng(cfg.rng_seed + 3);
    std::uniform_int_distribution<std::size_t> pick(0, approx.arc_count - 1);
    std::vector<RPoint> real_probes;
    for (int k = 0; k < cfg.probes; ++k) real_probes.push_back(approx.curve[pick(mrng)].point);
    rec.upper("minimality_gap", minimality_gap(real_probes, sigma_elems, approx), bound);
  }

  if (probes.empty()) {
    rec.skip("refinement_monotone", "<=0");
  } else {
    std::vector<int> depths;
    for (int d : {cfg.depth - 4, cfg.depth - 2})
      if (d >= 0) depths.push_back(d);
    std::vector<std::vector<double>> dist_at;
    for (int d : depths) {
      const LimitSetApprox a = sample_curve(seed, d, cfg.translate_len, {12, ropt});
      std::vector<double> row;
      for (const auto& z : probes) row.push_back(kulkarni_distance(z, a));
      dist_at.push_back(row);
    }
    {
      std::vector<double> row;
      for (const auto& z : probes) row.push_back(kulkarni_distance(z, approx));
      dist_at.push_back(row);
    }
    double rise = -1e300;
    for (std::size_t k = 1; k < dist_at.size(); ++k)
      for (std::size_t j = 0; j < probes.size(); ++j) rise = std::max(rise, dist_at[k][j] - dist_at[k - 1][j]);
    if (dist_at.size() < 2)
      rec.skip("refinement_monotone", "<=0");
    else
      rec.upper("refinement_monotone", rise, 0.0);
  }

  // general position
  {
    std::vector<RLine> pool;
    for (std::size_t k = 0; k < approx.arc_count; ++k) pool.push_back(approx.lines[k].line);
    const std::size_t n = static_cast<std::size_t>(cfg.gp_lines);
    if (pool.size() < 3 || n < 3 || pool.size() < n) {
      rec.note("general position: " + std::to_string(pool.size()) + " arc lines, fewer than the " + std::to_string(n) +
               " requested");
      rec.skip("general_position", "<=2");
    } else {
      std::vector<RLine> strided;
      for (std::size_t k = 0; k < std::min(n, pool.size()); ++k) strided.push_back(pool[k * pool.size() / std::min(n, pool.size())]);
      const Census raw = general_position_census(strided, cfg.gp_tol);
      rec.note("strided census of " + std::to_string(strided.size()) + " arc lines: max_concurrency " +
               std::to_string(raw.max_concurrency) + ", concurrent triples " + std::to_string(raw.concurrent_triples));
      const auto subset = general_position_subset(pool, n, cfg.gp_tol, cfg.rng_seed);
      const Census c = general_position_census(subset, cfg.gp_tol);
      const std::size_t m = subset.size();
      const std::size_t all = m * (m - 1) * (m - 2) / 6;
      rec.note("general position witness: " + std::to_string(m) + " lines, " + std::to_string(c.gp_triple_count) +
               " of " + std::to_string(all) + " triples in general position");
      const bool ok = m == n && c.max_concurrency == 2 && c.gp_triple_count == all;
      rec.add("general_position", ok ? Status::Pass : Status::Fail, c.max_concurrency, "<=2");
    }
  }

  // complex hyperbolic obstruction
  if (harvest.disjoint_pair) {
    const auto& [i, j] = *harvest.disjoint_pair;
    const HermitianResult h = hermitian_invariant_search({harvest.items[i].g.map, harvest.items[j].g.map});
    rec.note(std::string("hermitian search: ") + (h.found ? "form found" : "no invariant form") +
             ", null dimension " + std::to_string(h.null_dim));
    rec.add("hermitian_form", !h.found && h.joint_residual > cfg.hermitian_tol ? Status::Pass : Status::Fail,
            h.joint_residual, gt(cfg.hermitian_tol));
  } else {
    rec.skip("hermitian_form", gt(cfg.hermitian_tol));
  }

  bool any_fail = false, any_skip = false;
  for (const auto& c : rep.checks) {
    any_fail |= c.status == Status::Fail;
    any_skip |= c.status == Status::Skipped;
  }
  if (any_fail) {
    rep.overall = Status::Fail;
    rep.overall_text = "fail";
    rep.exit_code = 1;
  } else if (any_skip) {
    rep.overall = Status::Skipped;
    rep.overall_text = "inconclusive";
    rep.exit_code = 1;
    rec.note("inconclusive: insufficient search depth");
  } else {
    rep.overall = Status::Pass;
    rep.overall_text = "pass";
    rep.exit_code = 0;
  }
  return rep;
}

std::string format_report(const VerifyReport& r) {
  std::string out;
  for (const auto& n : r.notes) out += "# " + n + "\n";
  for (const auto& c : r.checks)
    out += c.name + "\t" + to_string(c.status) + "\t" + (c.residual ? fmt_sig(*c.residual, 10) : "-") + "\t" +
           c.tolerance + "\n";
  out += "OVERALL\t" + r.overall_text + "\n";
  return out;
}

}  // namespace pappus
