#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pappus/error.hpp"
#include "pappus/linalg.hpp"

namespace pappus {

using Z = mpz_class;

namespace tol {
inline constexpr double kAngle = 1e-9;  // scale equivalence of points and lines
inline constexpr double kRank = 1e-8;   // sigma2/sigma1 for rank-1 decisions
inline constexpr double kGap = 1e-6;    // log-moduli separation for loxodromy
inline constexpr double kEigenResidual = 1e-10;
inline constexpr double kCluster = 1e-4;  // eigenvalue merging
}  // namespace tol

// Exact coordinates are primitive integer triples. Any integer longer than
// the ceiling raises PrecisionCeiling so callers can fall back to floats.
void set_bit_ceiling(std::size_t bits);
std::size_t bit_ceiling();

template <class T>
struct Point {
  Vec3<T> v;
};
template <class T>
struct Line {
  Vec3<T> v;
};

using ZPoint = Point<Z>;
using RPoint = Point<double>;
using CPoint = Point<cplx>;
using ZLine = Line<Z>;
using RLine = Line<double>;
using CLine = Line<cplx>;

// Canonical representatives: primitive with first nonzero entry positive
// (exact), unit length with largest entry real positive (float).
Vec3<Z> normalized(const Vec3<Z>& v);
Vec3<double> normalized(const Vec3<double>& v);
Vec3<cplx> normalized(const Vec3<cplx>& v);

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {T(a[1] * b[2] - a[2] * b[1]), T(a[2] * b[0] - a[0] * b[2]), T(a[0] * b[1] - a[1] * b[0])};
}
template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return T(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}
template <class T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

ZPoint zpoint(const mpq_class& x, const mpq_class& y, const mpq_class& z = 1);
RPoint rpoint(double x, double y, double z = 1.0);
CPoint cpoint(cplx x, cplx y, cplx z);
ZLine zline(const mpq_class& a, const mpq_class& b, const mpq_class& c);
RLine rline(double a, double b, double c);
CLine cline(cplx a, cplx b, cplx c);

// Scale equivalence: vanishing cross product (exact), angle <= tol (float).
bool same(const Vec3<Z>& a, const Vec3<Z>& b);
bool same(const Vec3<double>& a, const Vec3<double>& b, double tol = tol::kAngle);
bool same(const Vec3<cplx>& a, const Vec3<cplx>& b, double tol = tol::kAngle);
template <class T>
bool operator==(const Point<T>& a, const Point<T>& b) {
  return same(a.v, b.v);
}
template <class T>
bool operator==(const Line<T>& a, const Line<T>& b) {
  return same(a.v, b.v);
}

ZLine join(const ZPoint& a, const ZPoint& b);
RLine join(const RPoint& a, const RPoint& b);
CLine join(const CPoint& a, const CPoint& b);
ZPoint meet(const ZLine& a, const ZLine& b);
RPoint meet(const RLine& a, const RLine& b);
CPoint meet(const CLine& a, const CLine& b);

bool incident(const ZPoint& x, const ZLine& l);
bool incident(const RPoint& x, const RLine& l, double tol = tol::kAngle);
bool incident(const CPoint& x, const CLine& l, double tol = tol::kAngle);

// Angle between representatives (Fubini-Study in the complex case).
double vec_angle(const Vec3<double>& a, const Vec3<double>& b);
double vec_angle(const Vec3<cplx>& a, const Vec3<cplx>& b);
double dist(const RPoint& a, const RPoint& b);
double dist(const CPoint& a, const CPoint& b);
double line_angle(const RLine& a, const RLine& b);
double line_angle(const CLine& a, const CLine& b);
double dist_point_line(const RPoint& z, const RLine& l);
double dist_point_line(const CPoint& z, const CLine& l);

using AnyPoint = std::variant<RPoint, CPoint>;
using AnyLine = std::variant<RLine, CLine>;
double dist(const AnyPoint& a, const AnyPoint& b);  // FieldMismatch
double dist_point_line(const AnyPoint& z, const AnyLine& l);

Vec3<double> to_double(const Vec3<Z>& v);  // scaled so huge integers stay finite
RPoint to_float(const ZPoint& p);
RLine to_float(const ZLine& l);
CPoint complexify(const RPoint& p);
CLine complexify(const RLine& l);

template <class T>
struct ProjMap {
  Mat3<T> m;
};
using ZMap = ProjMap<Z>;
using RMap = ProjMap<double>;

// Normalizes (content-free exact, sup-norm 1 float) and rejects singular arrays.
ZMap make_map(const Mat3<Z>& m);
RMap make_map(const Mat3d& m);
RMap to_float(const ZMap& m);
Mat3d to_double(const Mat3<Z>& m);

ZMap identity_map_z();
RMap identity_map();
ZMap compose(const ZMap& a, const ZMap& b);  // a after b
RMap compose(const RMap& a, const RMap& b);
ZMap inverse(const ZMap& a);
RMap inverse(const RMap& a);
ZMap dual(const ZMap& a);  // inverse-transpose
RMap dual(const RMap& a);
Z det(const ZMap& a);

ZPoint apply(const ZMap& m, const ZPoint& x);
RPoint apply(const RMap& m, const RPoint& x);
CPoint apply(const RMap& m, const CPoint& x);
ZLine apply(const ZMap& m, const ZLine& l);
RLine apply(const RMap& m, const RLine& l);
CLine apply(const RMap& m, const CLine& l);

ZMap map_from_correspondence(const std::array<ZPoint, 4>& src, const std::array<ZPoint, 4>& dst);
RMap map_from_correspondence(const std::array<RPoint, 4>& src, const std::array<RPoint, 4>& dst);

enum class MapClass { Loxodromic, Elation, InvolutionLike, Other };
std::string to_string(MapClass c);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // det-normalized, with multiplicity, modulus descending
  double scale = 1.0;             // raw eigenvalues = scale * eigenvalues
  std::vector<linalg::EigenPair> pairs;  // distinct eigenvalues of the det-normalized array
  std::array<double, 2> moduli_gaps{};   // log-moduli gaps
  MapClass cls = MapClass::Other;
  std::optional<RPoint> attracting_point, repelling_point, saddle_point;
  std::optional<RLine> attracting_line, repelling_line;
  double max_residual = 0.0;

  std::vector<cplx> raw_eigenvalues() const;
};

SpectrumReport spectrum(const RMap& m, double gap_tol = tol::kGap);
SpectrumReport spectrum(const Mat3d& m, double gap_tol = tol::kGap);

struct PseudoData {
  Mat3d source{};     // sup-norm 1 limit array
  int numeric_rank = 3;
  double sv_ratio = 1.0;
  std::optional<RPoint> image_point;
  std::optional<RLine> kernel_line;
  std::optional<CLine> kernel_cline;
  std::vector<double> term_ratios;  // sigma2/sigma1 of each normalized term
  int first_below = -1;             // first term index with ratio <= rank_tol
  bool extrapolated = false;        // limit read off a fitted linear recurrence
};

// Limit of a sequence of arrays up to scale. Representatives given with a
// consistent scale (e.g. raw powers) allow the limit to be read off exactly.
PseudoData pseudo_limit_data(const std::vector<Mat3d>& seq, double rank_tol = tol::kRank);

}  // namespace pappus
