#include "pappus/representation.hpp"

#include <algorithm>

#include "pappus/parallel.hpp"
#include "pappus/serialize.hpp"

namespace pappus {

std::string reduce_word(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    box_op(c);
    if (c == 'i' && !out.empty() && out.back() == 'i')
      out.pop_back();
    else
      out += c;
  }
  return out;
}

namespace {

void finish_marks(GroupElement& g, bool exact_match, double float_residual, const RepOptions& opt) {
  g.mark_residual = exact_match ? 0.0 : float_residual;
  g.in_sigma = g.mark_residual <= opt.mark_tol;
  if (!g.in_sigma && opt.strict)
    throw Error(Errc::MarkMismatch, "word '" + g.word + "' has mark residual " + fmt_sig(g.mark_residual, 6));
}

}  // namespace

GroupElement element_from_box(const std::string& word, const ZBox& seed, const ZBox& image, const RepOptions& opt) {
  GroupElement g;
  g.word = word;
  ZMap m;
  try {
    m = map_from_correspondence({seed.p, seed.q, seed.r, seed.s}, {image.p, image.q, image.r, image.s});
  } catch (const Error& e) {
    if (e.code() == Errc::PrecisionCeiling) throw;
    throw Error(Errc::DegenerateBox, "word '" + word + "': " + e.what());
  }
  g.exact = m;
  g.map = to_float(m);
  g.dual_map = to_float(dual(m));
  const ZPoint t = apply(m, seed.t);
  const ZPoint b = apply(m, seed.b);
  const bool match = t == image.t && b == image.b;
  double res = 0.0;
  if (!match) res = std::max(dist(to_float(t), to_float(image.t)), dist(to_float(b), to_float(image.b)));
  finish_marks(g, match, res, opt);
  return g;
}

GroupElement element_from_box(const std::string& word, const RBox& seed, const RBox& image, const RepOptions& opt) {
  GroupElement g;
  g.word = word;
  try {
    g.map = map_from_correspondence({seed.p, seed.q, seed.r, seed.s}, {image.p, image.q, image.r, image.s});
  } catch (const Error& e) {
    throw Error(Errc::DegenerateBox, "word '" + word + "': " + e.what());
  }
  g.dual_map = dual(g.map);
  const double res = std::max(dist(apply(g.map, seed.t), image.t), dist(apply(g.map, seed.b), image.b));
  finish_marks(g, false, res, opt);
  return g;
}

GroupElement rho_hat(const std::string& word, const ZBox& seed, const RepOptions& opt) {
  const std::string w = reduce_word(word);
  try {
    return element_from_box(w, seed, apply_word(w, seed), opt);
  } catch (const Error& e) {
    if (e.code() != Errc::PrecisionCeiling) throw;
  }
  const RBox fs = to_float(seed);
  return element_from_box(w, fs, apply_word(w, fs), opt);
}

namespace {

template <class T>
std::vector<GroupElement> elements_of(const std::vector<OrbitNode<T>>& nodes, const MarkedBox<T>& seed,
                                      const RepOptions& opt) {
  std::vector<GroupElement> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) { out[k] = element_from_box(nodes[k].word, seed, nodes[k].box, opt); });
  return out;
}

}  // namespace

Enumeration enumerate_group(const ZBox& seed, int maxlen, const RepOptions& opt, double dedupe_tol) {
  if (maxlen < 0) throw Error(Errc::InvalidArgument, "maxlen must be nonnegative");
  Enumeration en;
  std::vector<GroupElement> all;
  try {
    all = elements_of(orbit(seed, maxlen, "12i"), seed, opt);
  } catch (const Error& e) {
    if (e.code() != Errc::PrecisionCeiling) throw;
    en.float_fallback = true;
    const RBox fs = to_float(seed);
    all = elements_of(orbit(fs, maxlen, "12i"), fs, opt);
  }
  en.submitted = all.size();
  // Sigma membership depends on the word, not only on the map, so members
  // and quarantined elements are deduplicated separately.
  for (auto& g : all) {
    const GroupElement* twin = nullptr;
    for (const auto& kept : en.elements)
      if (kept.in_sigma == g.in_sigma && linalg::class_distance(kept.map.m, g.map.m) <= dedupe_tol) {
        twin = &kept;
        break;
      }
    if (twin)
      en.merged.push_back({g.word, twin->word});
    else
      en.elements.push_back(std::move(g));
  }
  return en;
}

LoxoHarvest find_loxodromics(const std::vector<GroupElement>& elements, double fix_sep_tol, double gap_tol) {
  LoxoHarvest h;
  std::vector<std::optional<SpectrumReport>> specs(elements.size());
  std::vector<char> ill(elements.size(), 0);
  parallel_for(elements.size(), [&](std::size_t k) {
    if (!elements[k].in_sigma) return;
    try {
      specs[k] = spectrum(elements[k].map, gap_tol);
    } catch (const Error& e) {
      if (e.code() != Errc::IllConditioned) throw;
      ill[k] = 1;
    }
  });
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (!elements[k].in_sigma) {
      ++h.quarantined;
      continue;
    }
    if (ill[k]) {
      ++h.ill_conditioned;
      continue;
    }
    if (specs[k]->cls == MapClass::Loxodromic) h.items.push_back({elements[k], *specs[k]});
  }
  auto fixed = [&](std::size_t k) {
    const auto& s = h.items[k].spec;
    return std::array<RPoint, 3>{*s.attracting_point, *s.saddle_point, *s.repelling_point};
  };
  for (std::size_t i = 0; i < h.items.size() && !h.disjoint_pair; ++i) {
    const auto fi = fixed(i);
    for (std::size_t j = i + 1; j < h.items.size(); ++j) {
      const auto fj = fixed(j);
      double sep = 10.0;
      for (const auto& a : fi)
        for (const auto& b : fj) sep = std::min(sep, dist(a, b));
      if (sep > fix_sep_tol) {
        h.disjoint_pair = {i, j};
        h.pair_separation = sep;
        break;
      }
    }
  }
  return h;
}

RMap dual_element(const GroupElement& g) { return g.dual_map; }

double anti_hom_residual(const GroupElement& uv, const GroupElement& u, const GroupElement& v) {
  return linalg::class_distance(uv.map.m, linalg::multiply(v.map.m, u.map.m));
}

std::vector<std::string> find_order_three(const std::vector<GroupElement>& elements, double tol) {
  std::vector<std::string> out;
  const Mat3d id = linalg::identity();
  for (const auto& g : elements) {
    const Mat3d& m = g.map.m;
    if (linalg::class_distance(m, id) <= tol) continue;
    if (linalg::class_distance(linalg::multiply(m, linalg::multiply(m, m)), id) <= tol) out.push_back(g.word);
  }
  return out;
}

std::string matrix_line(const GroupElement& g) {
  const Mat3d d = linalg::det_normalize(g.map.m);
  std::string cls = "ill-conditioned", moduli = "-";
  try {
    const auto s = spectrum(g.map);
    cls = to_string(s.cls);
    moduli.clear();
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      if (k) moduli += ",";
      moduli += fmt_sig(std::abs(s.eigenvalues[k]));
    }
  } catch (const Error& e) {
    if (e.code() != Errc::IllConditioned) throw;
  }
  return g.word + "\t" + to_text(d) + "\t" + cls + "\t" + moduli + "\t" + fmt_sig(g.mark_residual);
}

}  // namespace pappus
