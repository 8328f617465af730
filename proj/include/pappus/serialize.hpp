#pragma once

#include <string>
#include <vector>

#include "pappus/projective.hpp"

namespace pappus {

// Shortest round-trip decimal with -0 folded to 0.
std::string fmt_num(double x);
// Fixed significant digits (dump columns).
std::string fmt_sig(double x, int digits = 17);
std::string fmt_complex(cplx z);
// "[a,b,c]" scaled so the largest entry is 1; real entries print as reals.
std::string coeff_text(const std::vector<cplx>& c);

// Points and lines serialize as x/y/z. Exact coordinates are num:den,
// taken in the affine chart z = 1 whenever z != 0.
std::string to_text(const ZPoint& p);
std::string to_text(const ZLine& l);
std::string to_text(const RPoint& p);
std::string to_text(const RLine& l);
std::string to_text(const CPoint& p);
std::string to_text(const CLine& l);
std::string to_text(const ZMap& m);
std::string to_text(const Mat3d& m);  // nine entries, row-major, 17 digits

ZPoint parse_zpoint(const std::string& s);
RPoint parse_rpoint(const std::string& s);
CPoint parse_cpoint(const std::string& s);
double parse_double(const std::string& s);
cplx parse_complex(const std::string& s);

}  // namespace pappus
