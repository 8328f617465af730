#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pappus/marked_box.hpp"

namespace pappus {

struct VerifyConfig {
  int depth = 14;
  int maxlen = 8;
  int translate_len = 4;
  double rank_tol = 1e-8;
  double gap_tol = 1e-6;
  double mark_tol = 1e-9;
  double no_invariant_tol = 1e-3;
  double degenerate_tol = 1e-9;
  double bound_factor = 5.0;       // geometric residuals vs the depth error bound
  double separation_factor = 10.0;  // saddle separation vs the depth error bound
  int law_boxes = 1000;
  int law_maps = 100;
  int word_pairs = 200;
  int pair_len = 8;
  int probes = 10;
  double probe_margin = 0.05;
  int pseudo_count = 5;
  int pseudo_powers = 60;
  int gp_lines = 200;
  double gp_tol = 1e-6;
  double hermitian_tol = 1e-6;
  int invariance_len = 6;
  int invariance_depth = 12;
  unsigned rng_seed = 12345;
};

enum class Status { Pass, Fail, Degenerate, Skipped };
std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Skipped;
  std::optional<double> residual;
  std::string tolerance;  // comparator and bound, e.g. "<=0.43" or ">0.001"
  double seconds = 0.0;   // wall time, kept out of the report text
};

struct VerifyReport {
  std::vector<std::string> notes;  // findings that are not pass/fail
  std::vector<CheckResult> checks;
  Status overall = Status::Pass;
  std::string overall_text;  // pass, fail, degenerate or inconclusive
  int exit_code = 0;         // 0 pass, 1 fail or inconclusive, 3 degenerate
};

// Random valid box with small rational coordinates in the chart z = 1.
ZBox random_box(std::mt19937& rng);
// Random nonsingular integer map with entries in [-5, 5].
ZMap random_map(std::mt19937& rng);

struct LawCounts {
  int boxes = 0;
  int maps = 0;
  int pappus_failures = 0;
  int involution_failures = 0;
  int conjugation_failures = 0;
  int equivariance_failures = 0;
};
// Exact Pappus, involution, conjugation and equivariance laws on random boxes.
LawCounts exact_laws(int boxes, int maps, unsigned seed);

VerifyReport verify_all(const ZBox& seed, const VerifyConfig& cfg = {});

// Report text: "# " note lines, one check per line, then the OVERALL line.
std::string format_report(const VerifyReport& r);

// Names of all checks in report order.
const std::vector<std::string>& check_names();

}  // namespace pappus
