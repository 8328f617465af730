#pragma once

#include <string>
#include <vector>

#include "pappus/limit_set.hpp"
#include "pappus/marked_box.hpp"

namespace pappus {

struct View {
  double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
};
// "x0:x1:y0:y1" with x0 < x1 and y0 < y1; Parse otherwise.
View parse_view(const std::string& s);

struct DrawSet {
  bool curve = false;
  bool lines = false;
  bool boxes = false;
};
// Comma-separated subset of curve, lines, boxes; empty or unknown is Parse.
DrawSet parse_draw(const std::string& s);

// Standalone SVG in the chart z = 1. The curve is one polyline per
// parameter-contiguous run (the seed arc and each translate), split where a
// sample leaves the finite chart. Lines are clipped to the view; boxes are
// the tau-tree boxes of depth <= box_depth.
std::string render_svg(const LimitSetApprox& approx, const ZBox& seed, int box_depth, const DrawSet& draw,
                       const View& view, int size_px = 800);

struct SliceSpec {
  CPoint base, dir;
  View window;  // x is Re w, y is Im w
  int grid = 256;
};
// Throws InvalidArgument when base and dir are dependent.
void check_slice(const SliceSpec& s);
// Binary 16-bit PGM of kulkarni_distance over w -> [base + w dir]. Pixel
// (0,0) is the corner (Re min, Im max); rows run down in Im, columns right in
// Re, both including the window edges.
std::string render_pgm(const SliceSpec& s, const std::vector<CLine>& lines, const std::vector<std::string>& comments);

}  // namespace pappus
