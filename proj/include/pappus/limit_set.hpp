#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pappus/marked_box.hpp"
#include "pappus/nearest.hpp"
#include "pappus/projective.hpp"
#include "pappus/representation.hpp"

namespace pappus {

struct CurveSample {
  std::string param;
  RPoint point;
  double error_bound = 0.0;
};

struct LineSample {
  std::string param;
  RLine line;
  CLine cline;
};

struct LimitSetApprox {
  std::vector<CurveSample> curve;  // seed arc first, in curve order
  std::vector<LineSample> lines;   // same params as curve
  std::size_t arc_count = 0;       // samples on the seed arc
  int depth = 0;
  int translate_len = 0;
  double eps = 0.0;  // largest mark diamond among depth-d seed-tree boxes
  std::vector<std::string> translates;
  std::shared_ptr<const NearestIndex> point_index, line_index;

  void build_index();
};

// Exact marks of the tau-tree at the given depth, in curve order: the t mark
// of every depth-d box ("w/t") and the final b mark, each with its edge line.
struct ExactMark {
  std::string param;
  ZPoint point;
  ZLine line;
};
std::vector<ExactMark> tree_marks(const ZBox& seed, int depth);

// Max mark diamond over depth-d tau-tree boxes.
double depth_error_bound(const ZBox& seed, int depth);

// Fires when all depth <= 3 marks lie within tol of one line.
bool is_flat(const ZBox& seed, double tol = 1e-9);

struct SampleOptions {
  int max_refine = 12;  // extra levels allowed when refining a translate
  RepOptions rep;
};

// Marks of the seed arc at the given depth plus their images under every
// Sigma element of length <= translate_len and its inverse. Translated boxes
// are refined until their image diamond is within eps.
LimitSetApprox sample_curve(const ZBox& seed, int depth, int translate_len, const SampleOptions& opt = {});

std::string curve_line(const CurveSample& s);
std::string field_line(const LineSample& s);

struct DensityGaps {
  double fixed_to_curve = 0.0;  // max over fixed points of distance to samples
  double curve_to_fixed = 0.0;  // max over samples of distance to fixed points
};
DensityGaps density_gap(const LimitSetApprox& approx, const std::vector<Loxodromic>& loxo);
DensityGaps density_gap(const std::vector<RPoint>& samples, const std::vector<RPoint>& fixed);

struct FixedStructure {
  double attracting_to_curve = 0.0;
  double repelling_to_curve = 0.0;
  double attracting_line_to_field = 0.0;
  double repelling_line_to_field = 0.0;
  double saddle_vs_meet = 0.0;       // saddle eigenvector against the meet of the fixed lines
  double saddle_separation = 0.0;    // saddle distance to the curve samples
  double saddle_local_bound = 0.0;   // error bound of the nearest sample
};
FixedStructure fixed_structure_check(const SpectrumReport& spec, const LimitSetApprox& approx);

struct InvariantSearch {
  std::vector<cplx> best;  // coefficients (line) or coordinates (point)
  double residual = 0.0;
  bool complex_candidate = false;
};
// Over lines built from transpose eigenvectors and pencil intersections;
// with complex_field, complex eigenvectors are candidates too.
InvariantSearch invariant_line_search(const std::vector<RMap>& maps, bool complex_field = false);
InvariantSearch invariant_point_search(const std::vector<RMap>& maps, bool complex_field = false);

struct DegeneracyGate {
  bool degenerate = false;
  InvariantSearch line;
  std::vector<RMap> letters;  // rho_hat of i, 1, 2
};
DegeneracyGate degeneracy_gate(const ZBox& seed, double degenerate_tol = 1e-9);

double kulkarni_distance(const CPoint& z, const LimitSetApprox& approx);
double kulkarni_distance(const CPoint& z, const std::vector<CLine>& lines);

struct PseudoCheck {
  PseudoData data;
  double image_to_curve = 0.0;
  double kernel_to_field = 0.0;
  double complex_residual = 0.0;  // complexified image against the complexified field
};
// Powers g^1..g^n_max with a consistent scale; NotEscaping propagates.
std::vector<Mat3d> powers(const Mat3d& g, int n_max);
PseudoCheck pseudo_sequence_check(const GroupElement& g, const LimitSetApprox& approx, int n_max = 60);

struct ClusterCheck {
  bool vacuous = false;
  double max_gap = 0.0;
  std::size_t proxies = 0;
};
// Images of complex probes under the longest quarter of the elements, measured
// against the complexified field lines. ProbeTooClose if a probe sits within
// probe_margin of the field.
ClusterCheck orbit_cluster_check(const std::vector<CPoint>& probes, const std::vector<GroupElement>& elements,
                                 const LimitSetApprox& approx, double probe_margin = 0.05);

// Max over curve samples of the distance to the orbit of each probe under the
// elements and their inverses.
double minimality_gap(const std::vector<RPoint>& probes, const std::vector<GroupElement>& elements,
                      const LimitSetApprox& approx);

// One-sided distance of the images of the samples (points under the maps,
// lines under their duals) from the sample sets.
std::pair<double, double> invariance_gap(const std::vector<GroupElement>& elements, const LimitSetApprox& approx);

struct Census {
  int max_concurrency = 0;
  std::size_t gp_triple_count = 0;
  std::size_t concurrent_triples = 0;
};
Census general_position_census(const std::vector<RLine>& lines, double tol = 1e-6);
// Greedy choice of up to count lines, no three within tol of concurrent.
std::vector<RLine> general_position_subset(const std::vector<RLine>& pool, std::size_t count, double tol = 1e-6,
                                           unsigned seed = 12345);

struct HermitianResult {
  bool found = false;
  bool all_invariant = false;
  std::optional<std::pair<int, int>> signature;
  double joint_residual = 0.0;
  Mat3<cplx> form{};
  std::size_t null_dim = 0;
};
HermitianResult hermitian_invariant_search(const std::vector<RMap>& maps, double null_tol = 1e-9);

}  // namespace pappus
