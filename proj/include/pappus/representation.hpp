#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pappus/marked_box.hpp"
#include "pappus/projective.hpp"

namespace pappus {

// Removes "ii" pairs until none remain; BadLetter outside {i,1,2}.
std::string reduce_word(const std::string& raw);

struct GroupElement {
  std::string word;
  std::optional<ZMap> exact;  // absent after a float fallback
  RMap map;                   // sup-normalized
  RMap dual_map;              // inverse-transpose
  double mark_residual = 0.0;
  bool in_sigma = true;  // mark_residual <= mark_tol
};

struct RepOptions {
  double mark_tol = 1e-9;
  bool strict = false;  // MarkMismatch instead of quarantine
};

// The map carrying the seed frame (p,q,r,s) to the frame of Box(word).
GroupElement rho_hat(const std::string& word, const ZBox& seed, const RepOptions& opt = {});
GroupElement element_from_box(const std::string& word, const ZBox& seed, const ZBox& image, const RepOptions& opt = {});
GroupElement element_from_box(const std::string& word, const RBox& seed, const RBox& image, const RepOptions& opt = {});

struct Enumeration {
  std::vector<GroupElement> elements;  // distinct maps, shortest word kept
  std::size_t submitted = 0;           // reduced words before dedupe
  std::vector<std::pair<std::string, std::string>> merged;  // (dropped, kept)
  bool float_fallback = false;
};

// Every reduced word over {1,2,i} up to maxlen, deduplicated by
// class distance <= dedupe_tol. Exact unless the bit ceiling is hit.
Enumeration enumerate_group(const ZBox& seed, int maxlen, const RepOptions& opt = {}, double dedupe_tol = 1e-9);

struct Loxodromic {
  GroupElement g;
  SpectrumReport spec;
};

struct LoxoHarvest {
  std::vector<Loxodromic> items;
  std::optional<std::pair<std::size_t, std::size_t>> disjoint_pair;  // indices into items
  double pair_separation = 0.0;
  std::size_t ill_conditioned = 0;
  std::size_t quarantined = 0;
};

// Loxodromic members of Sigma, plus the first pair whose fixed point sets
// are separated by more than fix_sep_tol.
LoxoHarvest find_loxodromics(const std::vector<GroupElement>& elements, double fix_sep_tol = 1e-3,
                             double gap_tol = tol::kGap);

RMap dual_element(const GroupElement& g);

// Class distance between rho_hat(uv) and rho_hat(v) * rho_hat(u).
double anti_hom_residual(const GroupElement& uv, const GroupElement& u, const GroupElement& v);

// Words (from the list) whose map has order 3 up to scale.
std::vector<std::string> find_order_three(const std::vector<GroupElement>& elements, double tol = 1e-9);

// word, det-normalized entries, class, eigenvalue moduli, mark residual.
std::string matrix_line(const GroupElement& g);

}  // namespace pappus
