#include "pappus/projective.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace pappus {

namespace {

std::atomic<std::size_t> g_bit_ceiling{4096};

void check_bits(const Z& x) {
  if (x != 0 && mpz_sizeinbase(x.get_mpz_t(), 2) > g_bit_ceiling.load())
    throw Error(Errc::PrecisionCeiling, "integer exceeds " + std::to_string(g_bit_ceiling.load()) + " bits");
}

template <class T>
Mat3<T> mul(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

template <class T>
Mat3<T> cof(const Mat3<T>& a) {
  Mat3<T> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
    }
  return c;
}

template <class T>
Mat3<T> tr(const Mat3<T>& a) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

template <class T>
Vec3<T> mv(const Mat3<T>& a, const Vec3<T>& x) {
  Vec3<T> y;
  for (int i = 0; i < 3; ++i) y[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2];
  return y;
}

template <class T>
T det33(const Mat3<T>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double norm(const Vec3<double>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
double norm(const Vec3<cplx>& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

int dominant_index(const double (&mag)[3]) {
  const double top = std::max({mag[0], mag[1], mag[2]});
  for (int k = 0; k < 3; ++k)
    if (mag[k] >= top * (1.0 - 1e-9)) return k;
  return 0;
}

}  // namespace

void set_bit_ceiling(std::size_t bits) { g_bit_ceiling.store(bits); }
std::size_t bit_ceiling() { return g_bit_ceiling.load(); }

Vec3<Z> normalized(const Vec3<Z>& v) {
  Z g;
  mpz_gcd(g.get_mpz_t(), v[0].get_mpz_t(), v[1].get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[2].get_mpz_t());
  if (g == 0) throw Error(Errc::ZeroVector, "all coordinates zero");
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  Vec3<Z> r;
  for (int k = 0; k < 3; ++k) {
    mpz_divexact(r[k].get_mpz_t(), v[k].get_mpz_t(), g.get_mpz_t());
    check_bits(r[k]);
  }
  return r;
}

Vec3<double> normalized(const Vec3<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(Errc::NonFinite, "non-finite coordinate");
  const double n = norm(v);
  if (n == 0.0) throw Error(Errc::ZeroVector, "all coordinates zero");
  const double mag[3] = {std::abs(v[0]), std::abs(v[1]), std::abs(v[2])};
  const int k = dominant_index(mag);
  const double s = (v[k] < 0 ? -1.0 : 1.0) / n;
  return {v[0] * s, v[1] * s, v[2] * s};
}

Vec3<cplx> normalized(const Vec3<cplx>& v) {
  for (const cplx& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw Error(Errc::NonFinite, "non-finite coordinate");
  const double n = norm(v);
  if (n == 0.0) throw Error(Errc::ZeroVector, "all coordinates zero");
  const double mag[3] = {std::abs(v[0]), std::abs(v[1]), std::abs(v[2])};
  const int k = dominant_index(mag);
  const cplx ph = std::conj(v[k]) / (std::abs(v[k]) * n);
  return {v[0] * ph, v[1] * ph, v[2] * ph};
}

ZPoint zpoint(const mpq_class& x, const mpq_class& y, const mpq_class& z) {
  Z l;
  mpz_lcm(l.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.get_den_mpz_t());
  const mpq_class* c[3] = {&x, &y, &z};
  Vec3<Z> v;
  for (int k = 0; k < 3; ++k) v[k] = c[k]->get_num() * (l / c[k]->get_den());
  return {normalized(v)};
}
RPoint rpoint(double x, double y, double z) { return {normalized(Vec3<double>{x, y, z})}; }
CPoint cpoint(cplx x, cplx y, cplx z) { return {normalized(Vec3<cplx>{x, y, z})}; }
ZLine zline(const mpq_class& a, const mpq_class& b, const mpq_class& c) { return {zpoint(a, b, c).v}; }
RLine rline(double a, double b, double c) { return {normalized(Vec3<double>{a, b, c})}; }
CLine cline(cplx a, cplx b, cplx c) { return {normalized(Vec3<cplx>{a, b, c})}; }

double vec_angle(const Vec3<double>& a, const Vec3<double>& b) {
  return std::atan2(norm(cross(a, b)), std::abs(dot(a, b)));
}

double vec_angle(const Vec3<cplx>& a, const Vec3<cplx>& b) {
  const cplx inner = a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
  return std::atan2(norm(cross(a, b)), std::abs(inner));
}

bool same(const Vec3<Z>& a, const Vec3<Z>& b) {
  const auto c = cross(a, b);
  return c[0] == 0 && c[1] == 0 && c[2] == 0;
}
bool same(const Vec3<double>& a, const Vec3<double>& b, double t) { return vec_angle(a, b) <= t; }
bool same(const Vec3<cplx>& a, const Vec3<cplx>& b, double t) { return vec_angle(a, b) <= t; }

ZLine join(const ZPoint& a, const ZPoint& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualPoints, "join of equal points");
  return {normalized(cross(a.v, b.v))};
}
RLine join(const RPoint& a, const RPoint& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualPoints, "join of equal points");
  return {normalized(cross(a.v, b.v))};
}
CLine join(const CPoint& a, const CPoint& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualPoints, "join of equal points");
  return {normalized(cross(a.v, b.v))};
}
ZPoint meet(const ZLine& a, const ZLine& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualLines, "meet of equal lines");
  return {normalized(cross(a.v, b.v))};
}
RPoint meet(const RLine& a, const RLine& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualLines, "meet of equal lines");
  return {normalized(cross(a.v, b.v))};
}
CPoint meet(const CLine& a, const CLine& b) {
  if (same(a.v, b.v)) throw Error(Errc::EqualLines, "meet of equal lines");
  return {normalized(cross(a.v, b.v))};
}

bool incident(const ZPoint& x, const ZLine& l) { return dot(x.v, l.v) == 0; }
bool incident(const RPoint& x, const RLine& l, double t) { return dist_point_line(x, l) <= t; }
bool incident(const CPoint& x, const CLine& l, double t) { return dist_point_line(x, l) <= t; }

double dist(const RPoint& a, const RPoint& b) { return vec_angle(a.v, b.v); }
double dist(const CPoint& a, const CPoint& b) { return vec_angle(a.v, b.v); }
double line_angle(const RLine& a, const RLine& b) { return vec_angle(a.v, b.v); }
double line_angle(const CLine& a, const CLine& b) { return vec_angle(a.v, b.v); }

double dist_point_line(const RPoint& z, const RLine& l) {
  const double s = std::abs(dot(z.v, l.v)) / (norm(z.v) * norm(l.v));
  return std::asin(std::min(1.0, s));
}
double dist_point_line(const CPoint& z, const CLine& l) {
  const double s = std::abs(dot(z.v, l.v)) / (norm(z.v) * norm(l.v));
  return std::asin(std::min(1.0, s));
}

double dist(const AnyPoint& a, const AnyPoint& b) {
  if (a.index() != b.index()) throw Error(Errc::FieldMismatch, "real and complex points");
  if (a.index() == 0) return dist(std::get<0>(a), std::get<0>(b));
  return dist(std::get<1>(a), std::get<1>(b));
}
double dist_point_line(const AnyPoint& z, const AnyLine& l) {
  if (z.index() != l.index()) throw Error(Errc::FieldMismatch, "real and complex arguments");
  if (z.index() == 0) return dist_point_line(std::get<0>(z), std::get<0>(l));
  return dist_point_line(std::get<1>(z), std::get<1>(l));
}

namespace {

template <std::size_t N>
std::array<double, N> scaled_doubles(const std::array<const Z*, N>& xs) {
  long emax = std::numeric_limits<long>::min();
  std::array<double, N> mant{};
  std::array<long, N> ex{};
  for (std::size_t k = 0; k < N; ++k) {
    if (*xs[k] == 0) continue;
    mant[k] = mpz_get_d_2exp(&ex[k], xs[k]->get_mpz_t());
    emax = std::max(emax, ex[k]);
  }
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k)
    out[k] = *xs[k] == 0 ? 0.0 : std::ldexp(mant[k], static_cast<int>(ex[k] - emax));
  return out;
}

}  // namespace

Vec3<double> to_double(const Vec3<Z>& v) { return scaled_doubles<3>({&v[0], &v[1], &v[2]}); }

Mat3d to_double(const Mat3<Z>& m) {
  std::array<const Z*, 9> xs;
  for (int i = 0; i < 9; ++i) xs[i] = &m[i / 3][i % 3];
  const auto d = scaled_doubles<9>(xs);
  Mat3d r;
  for (int i = 0; i < 9; ++i) r[i / 3][i % 3] = d[i];
  return r;
}

RPoint to_float(const ZPoint& p) { return {normalized(to_double(p.v))}; }
RLine to_float(const ZLine& l) { return {normalized(to_double(l.v))}; }
CPoint complexify(const RPoint& p) { return {{p.v[0], p.v[1], p.v[2]}}; }
CLine complexify(const RLine& l) { return {{l.v[0], l.v[1], l.v[2]}}; }

ZMap make_map(const Mat3<Z>& m) {
  if (det33(m) == 0) throw Error(Errc::SingularMap, "determinant is zero");
  Z g = 0;
  for (const auto& row : m)
    for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (const auto& row : m) {
    bool done = false;
    for (const auto& x : row)
      if (x != 0) {
        if (x < 0) g = -g;
        done = true;
        break;
      }
    if (done) break;
  }
  ZMap r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      mpz_divexact(r.m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), g.get_mpz_t());
      check_bits(r.m[i][j]);
    }
  return r;
}

RMap make_map(const Mat3d& m) {
  for (const auto& row : m)
    for (double x : row)
      if (!std::isfinite(x)) throw Error(Errc::NonFinite, "non-finite map entry");
  const Mat3d s = linalg::sup_normalize(m);
  if (linalg::det(s) == 0.0) throw Error(Errc::SingularMap, "determinant is zero");
  return {s};
}

RMap to_float(const ZMap& m) { return make_map(to_double(m.m)); }

ZMap identity_map_z() {
  Mat3<Z> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  return {m};
}
RMap identity_map() { return {linalg::identity()}; }

ZMap compose(const ZMap& a, const ZMap& b) { return make_map(mul(a.m, b.m)); }
RMap compose(const RMap& a, const RMap& b) { return make_map(mul(a.m, b.m)); }
ZMap inverse(const ZMap& a) { return make_map(tr(cof(a.m))); }
RMap inverse(const RMap& a) { return make_map(linalg::adjugate(a.m)); }
ZMap dual(const ZMap& a) { return make_map(cof(a.m)); }
RMap dual(const RMap& a) { return make_map(linalg::cofactor(a.m)); }
Z det(const ZMap& a) { return det33(a.m); }

ZPoint apply(const ZMap& m, const ZPoint& x) { return {normalized(mv(m.m, x.v))}; }
RPoint apply(const RMap& m, const RPoint& x) { return {normalized(mv(m.m, x.v))}; }
CPoint apply(const RMap& m, const CPoint& x) { return {normalized(linalg::apply(m.m, x.v))}; }
ZLine apply(const ZMap& m, const ZLine& l) { return {normalized(mv(cof(m.m), l.v))}; }
RLine apply(const RMap& m, const RLine& l) { return {normalized(mv(linalg::cofactor(m.m), l.v))}; }
CLine apply(const RMap& m, const CLine& l) { return {normalized(linalg::apply(linalg::cofactor(m.m), l.v))}; }

namespace {

bool collinear(const Vec3<Z>& a, const Vec3<Z>& b, const Vec3<Z>& c) { return det3(a, b, c) == 0; }
bool collinear(const Vec3<double>& a, const Vec3<double>& b, const Vec3<double>& c) {
  return std::abs(det3(a, b, c)) <= 1e-12 * norm(a) * norm(b) * norm(c);
}

// Columns lambda_k * p_k with lambda solving [p1 p2 p3] lambda = p4.
template <class T>
Mat3<T> frame(const std::array<Point<T>, 4>& pts) {
  for (int skip = 0; skip < 4; ++skip) {
    std::array<const Vec3<T>*, 3> tri;
    int n = 0;
    for (int k = 0; k < 4; ++k)
      if (k != skip) tri[n++] = &pts[k].v;
    if (collinear(*tri[0], *tri[1], *tri[2])) throw Error(Errc::DegenerateFrame, "three collinear frame points");
  }
  Mat3<T> p;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) p[i][k] = pts[k].v[i];
  const Vec3<T> lambda = mv(tr(cof(p)), pts[3].v);
  Mat3<T> f;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) f[i][k] = lambda[k] * p[i][k];
  return f;
}

}  // namespace

ZMap map_from_correspondence(const std::array<ZPoint, 4>& src, const std::array<ZPoint, 4>& dst) {
  const auto fs = frame(src);
  const auto fd = frame(dst);
  return make_map(mul(fd, tr(cof(fs))));
}

RMap map_from_correspondence(const std::array<RPoint, 4>& src, const std::array<RPoint, 4>& dst) {
  const auto fs = frame(src);
  const auto fd = frame(dst);
  return make_map(mul(fd, linalg::adjugate(fs)));
}

std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::Loxodromic:
      return "loxodromic";
    case MapClass::Elation:
      return "elation";
    case MapClass::InvolutionLike:
      return "involution-like";
    case MapClass::Other:
      return "other";
  }
  return "other";
}

std::vector<cplx> SpectrumReport::raw_eigenvalues() const {
  std::vector<cplx> r;
  for (const auto& e : eigenvalues) r.push_back(e * scale);
  return r;
}

namespace {

Vec3<double> real_part(const Vec3<cplx>& v) { return {v[0].real(), v[1].real(), v[2].real()}; }

}  // namespace

SpectrumReport spectrum(const Mat3d& m, double gap_tol) {
  const double s = linalg::sup_norm(m);
  if (s == 0.0 || !std::isfinite(s)) throw Error(Errc::SingularMap, "zero or non-finite array");
  Mat3d d = m;
  for (auto& row : d)
    for (double& x : row) x /= s;
  const double dt = linalg::det(d);
  if (dt == 0.0) throw Error(Errc::SingularMap, "determinant is zero");
  const double k = std::cbrt(dt);
  for (auto& row : d)
    for (double& x : row) x /= k;

  SpectrumReport rep;
  rep.scale = s * k;
  rep.pairs = linalg::eigen(d, tol::kCluster);
  const double dn = std::max(1.0, linalg::sup_norm(d));
  for (const auto& p : rep.pairs) {
    for (int r = 0; r < p.algebraic_multiplicity; ++r) rep.eigenvalues.push_back(p.value);
    for (const auto& v : p.vectors) {
      const Vec3<cplx> y = linalg::apply(d, v);
      double res = 0.0;
      for (int i = 0; i < 3; ++i) res = std::max(res, std::abs(y[i] - p.value * v[i]));
      res /= norm(v);
      rep.max_residual = std::max(rep.max_residual, res);
    }
  }
  if (rep.max_residual > tol::kEigenResidual * dn)
    throw Error(Errc::IllConditioned, "eigenpair residual " + std::to_string(rep.max_residual));

  const double m0 = std::abs(rep.eigenvalues[0]), m1 = std::abs(rep.eigenvalues[1]),
               m2 = std::abs(rep.eigenvalues[2]);
  rep.moduli_gaps = {std::log(m0) - std::log(m1), std::log(m1) - std::log(m2)};

  if (rep.moduli_gaps[0] > gap_tol && rep.moduli_gaps[1] > gap_tol && rep.pairs.size() == 3) {
    rep.cls = MapClass::Loxodromic;
    rep.attracting_point = RPoint{normalized(real_part(rep.pairs[0].vectors[0]))};
    rep.saddle_point = RPoint{normalized(real_part(rep.pairs[1].vectors[0]))};
    rep.repelling_point = RPoint{normalized(real_part(rep.pairs[2].vectors[0]))};
    const auto tp = linalg::eigen(linalg::transpose(d), tol::kCluster);
    if (tp.size() == 3) {
      rep.attracting_line = RLine{normalized(real_part(tp[2].vectors[0]))};
      rep.repelling_line = RLine{normalized(real_part(tp[0].vectors[0]))};
    }
  } else if (linalg::class_distance(d, linalg::identity()) <= 1e-9) {
    rep.cls = MapClass::Other;
  } else if (rep.pairs.size() == 1 && rep.pairs[0].vectors.size() == 2) {
    rep.cls = MapClass::Elation;
  } else if (linalg::class_distance(linalg::multiply(d, d), linalg::identity()) <= 1e-9) {
    rep.cls = MapClass::InvolutionLike;
  } else {
    rep.cls = MapClass::Other;
  }
  return rep;
}

SpectrumReport spectrum(const RMap& m, double gap_tol) { return spectrum(m.m, gap_tol); }

namespace {

using Flat = std::array<double, 9>;

Flat flatten(const Mat3d& m, double scale) {
  Flat f;
  for (int i = 0; i < 9; ++i) f[i] = m[i / 3][i % 3] * scale;
  return f;
}

double flat_norm(const Flat& f) {
  double s = 0;
  for (double x : f) s += x * x;
  return std::sqrt(s);
}

// Least squares by modified Gram-Schmidt; rows are equations.
std::optional<std::vector<double>> least_squares(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  const std::size_t rows = a.size();
  std::vector<std::vector<double>> q(n, std::vector<double>(rows));
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < rows; ++i) q[j][i] = a[i][j];
    for (std::size_t p = 0; p < j; ++p) {
      double d = 0;
      for (std::size_t i = 0; i < rows; ++i) d += q[p][i] * q[j][i];
      r[p][j] = d;
      for (std::size_t i = 0; i < rows; ++i) q[j][i] -= d * q[p][i];
    }
    double nn = 0;
    for (double x : q[j]) nn += x * x;
    nn = std::sqrt(nn);
    if (nn < 1e-14) return std::nullopt;
    r[j][j] = nn;
    for (double& x : q[j]) x /= nn;
  }
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = 0;
    for (std::size_t i = 0; i < rows; ++i) d += q[j][i] * b[i];
    y[j] = d;
  }
  for (std::size_t j = n; j-- > 0;) {
    for (std::size_t p = j + 1; p < n; ++p) y[j] -= r[j][p] * y[p];
    y[j] /= r[j][j];
  }
  return y;
}

// Gaussian elimination with partial pivoting on a small complex system.
std::optional<std::vector<std::vector<cplx>>> solve_complex(std::vector<std::vector<cplx>> a,
                                                            std::vector<std::vector<cplx>> rhs) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    if (std::abs(a[piv][c]) < 1e-300) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const cplx f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      for (std::size_t j = 0; j < rhs[i].size(); ++j) rhs[i][j] -= f * rhs[c][j];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t i = c + 1; i < n; ++i)
      for (std::size_t j = 0; j < rhs[c].size(); ++j) rhs[c][j] -= a[c][i] * rhs[i][j];
    for (std::size_t j = 0; j < rhs[c].size(); ++j) rhs[c][j] /= a[c][c];
  }
  return rhs;
}

// Fits A_{n+k} = sum_j c_j A_{n+j} (k <= 3) and returns the coefficient
// array of the dominant term n^m r^n of the closed form.
std::optional<Mat3d> recurrence_limit(const std::vector<Mat3d>& seq) {
  const std::size_t count = std::min<std::size_t>(seq.size(), 8);
  if (count < 3) return std::nullopt;
  const double s0 = linalg::sup_norm(seq[0]);
  if (s0 == 0.0) return std::nullopt;
  std::vector<Flat> terms;
  for (std::size_t n = 0; n < count; ++n) terms.push_back(flatten(seq[n], 1.0 / s0));

  for (std::size_t k = 1; k <= 3 && count >= 2 * k + 1; ++k) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t n = 0; n + k < count; ++n) {
      const double w = 1.0 / std::max(flat_norm(terms[n + k]), 1e-300);
      for (int e = 0; e < 9; ++e) {
        std::vector<double> row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = terms[n + j][e] * w;
        a.push_back(row);
        b.push_back(terms[n + k][e] * w);
      }
    }
    const auto c = least_squares(a, b);
    if (!c) continue;
    double worst = 0.0;
    for (std::size_t n = 0; n + k < count; ++n) {
      Flat r = terms[n + k];
      for (std::size_t j = 0; j < k; ++j)
        for (int e = 0; e < 9; ++e) r[e] -= (*c)[j] * terms[n + j][e];
      worst = std::max(worst, flat_norm(r) / std::max(flat_norm(terms[n + k]), 1e-300));
    }
    if (worst > 1e-9) continue;

    linalg::CubicRoots roots;
    if (k == 1) {
      roots.values = {cplx((*c)[0])};
      roots.multiplicity = {1};
    } else if (k == 2) {
      roots = linalg::solve_quadratic(-(*c)[1], -(*c)[0], tol::kCluster);
    } else {
      roots = linalg::solve_cubic(-(*c)[2], -(*c)[1], -(*c)[0], tol::kCluster);
    }
    std::size_t dom = 0;
    for (std::size_t r = 1; r < roots.values.size(); ++r)
      if (std::abs(roots.values[r]) > std::abs(roots.values[dom])) dom = r;
    const double top = std::abs(roots.values[dom]);
    if (top == 0.0 || roots.values[dom].imag() != 0.0) return std::nullopt;
    for (std::size_t r = 0; r < roots.values.size(); ++r)
      if (r != dom && std::abs(std::abs(roots.values[r]) - top) <= 1e-9 * top) return std::nullopt;

    // basis functions n^m r^n, one per (root, power) with m < multiplicity
    std::vector<std::pair<cplx, int>> basis;
    for (std::size_t r = 0; r < roots.values.size(); ++r)
      for (int m = 0; m < roots.multiplicity[r]; ++m) basis.push_back({roots.values[r], m});
    std::vector<std::vector<cplx>> phi(k, std::vector<cplx>(k));
    std::vector<std::vector<cplx>> rhs(k, std::vector<cplx>(9));
    for (std::size_t n = 0; n < k; ++n) {
      for (std::size_t f = 0; f < k; ++f) {
        const auto& [root, m] = basis[f];
        // scale each basis function by top^n to keep entries O(1)
        phi[n][f] = std::pow(double(n), m) * std::pow(root / top, double(n));
      }
      for (int e = 0; e < 9; ++e) rhs[n][e] = terms[n][e] / std::pow(top, double(n));
    }
    const auto coef = solve_complex(phi, rhs);
    if (!coef) return std::nullopt;
    int best = -1;
    for (std::size_t f = 0; f < k; ++f) {
      if (std::abs(basis[f].first - roots.values[dom]) != 0.0) continue;
      if (best < 0 || basis[f].second > basis[best].second) {
        double cn = 0;
        for (const auto& x : (*coef)[f]) cn = std::max(cn, std::abs(x));
        if (cn > 1e-12) best = static_cast<int>(f);
      }
    }
    if (best < 0) return std::nullopt;
    Mat3d lim;
    for (int e = 0; e < 9; ++e) lim[e / 3][e % 3] = (*coef)[best][e].real();
    return lim;
  }
  return std::nullopt;
}

}  // namespace

PseudoData pseudo_limit_data(const std::vector<Mat3d>& seq, double rank_tol) {
  if (seq.size() < 2) throw Error(Errc::TooShort, "need at least two terms");
  PseudoData out;
  std::vector<Mat3d> normal;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    normal.push_back(linalg::sup_normalize(seq[n]));
    const auto sv = linalg::svd(normal.back());
    out.term_ratios.push_back(sv.sigma[1] / sv.sigma[0]);
    if (out.first_below < 0 && out.term_ratios.back() <= rank_tol) out.first_below = static_cast<int>(n);
  }

  Mat3d limit = normal.back();
  if (out.term_ratios.back() > rank_tol) {
    bool have = false;
    if (const auto ext = recurrence_limit(seq)) {
      const Mat3d cand = linalg::sup_normalize(*ext);
      const auto sv = linalg::svd(cand);
      if (sv.sigma[1] / sv.sigma[0] <= rank_tol) {
        limit = cand;
        have = true;
        out.extrapolated = true;
      }
    }
    if (!have) {
      // greedy cluster over the tail; the latest best-supported term wins
      const std::size_t start = normal.size() / 2;
      std::size_t best = normal.size() - 1, best_count = 0;
      for (std::size_t i = start; i < normal.size(); ++i) {
        std::size_t cnt = 0;
        for (std::size_t j = start; j < normal.size(); ++j)
          if (linalg::class_distance(normal[i], normal[j]) <= 1e-6) ++cnt;
        if (cnt >= best_count) {
          best_count = cnt;
          best = i;
        }
      }
      limit = normal[best];
    }
  }

  out.source = linalg::sup_normalize(limit);
  const auto sv = linalg::svd(out.source);
  out.sv_ratio = sv.sigma[1] / sv.sigma[0];
  out.numeric_rank = out.sv_ratio <= rank_tol ? 1 : (sv.sigma[2] / sv.sigma[0] <= rank_tol ? 2 : 3);
  if (out.numeric_rank != 1)
    throw Error(Errc::NotEscaping, "normalized limit has sigma2/sigma1 = " + std::to_string(out.sv_ratio));
  out.image_point = RPoint{normalized(Vec3<double>{sv.u[0][0], sv.u[1][0], sv.u[2][0]})};
  out.kernel_line = RLine{normalized(Vec3<double>{sv.v[0][0], sv.v[1][0], sv.v[2][0]})};
  out.kernel_cline = complexify(*out.kernel_line);
  return out;
}

}  // namespace pappus
