#include "pappus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pappus/error.hpp"

namespace pappus::linalg {

Mat3d identity() {
  Mat3d m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
  return m;
}

Mat3d multiply(const Mat3d& a, const Mat3d& b) {
  Mat3d r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

Mat3d transpose(const Mat3d& a) {
  Mat3d r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

Mat3d cofactor(const Mat3d& a) {
  Mat3d c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
    }
  return c;
}

Mat3d adjugate(const Mat3d& a) { return transpose(cofactor(a)); }

double det(const Mat3d& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double sup_norm(const Mat3d& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

double frobenius(const Mat3d& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

Vec3<double> apply(const Mat3d& a, const Vec3<double>& x) {
  Vec3<double> y{};
  for (int i = 0; i < 3; ++i) y[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2];
  return y;
}

Vec3<cplx> apply(const Mat3d& a, const Vec3<cplx>& x) {
  Vec3<cplx> y{};
  for (int i = 0; i < 3; ++i) y[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2];
  return y;
}

Mat3d sup_normalize(const Mat3d& a) {
  double best = 0.0;
  double sign = 1.0;
  for (const auto& row : a)
    for (double v : row)
      if (std::abs(v) > best) {
        best = std::abs(v);
        sign = v < 0 ? -1.0 : 1.0;
      }
  if (best == 0.0) throw Error(Errc::ZeroVector, "zero array cannot be normalized");
  Mat3d r = a;
  for (auto& row : r)
    for (double& v : row) v *= sign / best;
  return r;
}

Mat3d det_normalize(const Mat3d& a) {
  const Mat3d s = sup_normalize(a);
  const double d = det(s);
  if (d == 0.0) throw Error(Errc::SingularMap, "det-normalization of a singular array");
  const double k = std::cbrt(d);
  Mat3d r = s;
  for (auto& row : r)
    for (double& v : row) v /= k;
  return r;
}

double class_distance(const Mat3d& a, const Mat3d& b) {
  const Mat3d x = sup_normalize(a);
  const Mat3d y = sup_normalize(b);
  double dp = 0.0, dm = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      dp = std::max(dp, std::abs(x[i][j] - y[i][j]));
      dm = std::max(dm, std::abs(x[i][j] + y[i][j]));
    }
  return std::min(dp, dm);
}

namespace {

cplx poly3(const cplx& x, double a, double b, double c) { return ((x + a) * x + b) * x + c; }
cplx dpoly3(const cplx& x, double a, double b) { return (3.0 * x + 2.0 * a) * x + b; }

cplx newton_polish(cplx x, double a, double b, double c) {
  for (int it = 0; it < 8; ++it) {
    const cplx f = poly3(x, a, b, c);
    const cplx df = dpoly3(x, a, b);
    if (std::abs(df) == 0.0) break;
    const cplx step = f / df;
    const cplx next = x - step;
    if (std::abs(poly3(next, a, b, c)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

// snaps values with negligible imaginary part onto the real axis
cplx realify(cplx z, double scale) {
  if (std::abs(z.imag()) <= 1e-14 * scale) return {z.real(), 0.0};
  return z;
}

}  // namespace

CubicRoots solve_quadratic(double b, double c, double cluster_tol) {
  CubicRoots out;
  const double disc = b * b - 4.0 * c;
  cplx r1, r2;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double qv = -0.5 * (b + (b >= 0 ? sq : -sq));
    r1 = qv;
    r2 = qv != 0.0 ? cplx(c / qv) : cplx(0.0);
  } else {
    const double sq = std::sqrt(-disc);
    r1 = cplx(-0.5 * b, 0.5 * sq);
    r2 = cplx(-0.5 * b, -0.5 * sq);
  }
  const double scale = std::max({std::abs(r1), std::abs(r2), std::numeric_limits<double>::min()});
  if (std::abs(r1 - r2) <= cluster_tol * scale) {
    out.values.push_back(cplx(-0.5 * b));
    out.multiplicity.push_back(2);
  } else {
    out.values = {r1, r2};
    out.multiplicity = {1, 1};
  }
  return out;
}

CubicRoots solve_cubic(double a, double b, double c, double cluster_tol) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  std::array<cplx, 3> r;
  if (disc < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      r[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift;
  } else {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + sq);
    const double v = std::cbrt(-0.5 * q - sq);
    r[0] = u + v + shift;
    const double re = -0.5 * (u + v) + shift;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    r[1] = cplx(re, im);
    r[2] = cplx(re, -im);
  }
  double scale = std::numeric_limits<double>::min();
  for (const auto& z : r) scale = std::max(scale, std::abs(z));

  auto close = [&](int i, int j) { return std::abs(r[i] - r[j]) <= cluster_tol * scale; };
  CubicRoots out;
  const bool c01 = close(0, 1), c02 = close(0, 2), c12 = close(1, 2);
  const int pairs = int(c01) + int(c02) + int(c12);
  if (pairs >= 2) {
    out.values.push_back(cplx(-a / 3.0));
    out.multiplicity.push_back(3);
    return out;
  }
  if (pairs == 1) {
    const int single = c01 ? 2 : (c02 ? 1 : 0);
    cplx s = realify(r[single], scale);
    s = cplx(newton_polish(s, a, b, c).real(), 0.0);
    const cplx dbl = cplx(0.5 * (-a - s.real()));
    out.values = {s, dbl};
    out.multiplicity = {1, 2};
    return out;
  }
  for (auto& z : r) {
    z = realify(z, scale);
    z = newton_polish(z, a, b, c);
    z = realify(z, scale);
    out.values.push_back(z);
    out.multiplicity.push_back(1);
  }
  return out;
}

Svd3 svd(const Mat3d& a) {
  Mat3d w = a;  // columns are rotated in place
  Mat3d v = identity();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < 2; ++i)
      for (int j = i + 1; j < 3; ++j) {
        double alpha = 0, beta = 0, gamma = 0;
        for (int k = 0; k < 3; ++k) {
          alpha += w[k][i] * w[k][i];
          beta += w[k][j] * w[k][j];
          gamma += w[k][i] * w[k][j];
        }
        if (std::abs(gamma) <= 1e-17 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (int k = 0; k < 3; ++k) {
          const double wi = w[k][i], wj = w[k][j];
          w[k][i] = cs * wi - sn * wj;
          w[k][j] = sn * wi + cs * wj;
          const double vi = v[k][i], vj = v[k][j];
          v[k][i] = cs * vi - sn * vj;
          v[k][j] = sn * vi + cs * vj;
        }
      }
    if (!rotated) break;
  }
  std::array<int, 3> order{0, 1, 2};
  Vec3<double> norms{};
  for (int j = 0; j < 3; ++j)
    norms[j] = std::sqrt(w[0][j] * w[0][j] + w[1][j] * w[1][j] + w[2][j] * w[2][j]);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return norms[x] > norms[y]; });

  Svd3 out{};
  for (int c = 0; c < 3; ++c) {
    const int j = order[c];
    out.sigma[c] = norms[j];
    for (int k = 0; k < 3; ++k) {
      out.v[k][c] = v[k][j];
      out.u[k][c] = norms[j] > 0 ? w[k][j] / norms[j] : 0.0;
    }
  }
  // complete U for rank-deficient inputs by Gram-Schmidt against earlier columns
  const double tiny = std::max(out.sigma[0], 1.0) * 1e-300;
  for (int c = 0; c < 3; ++c) {
    if (out.sigma[c] > tiny) continue;
    for (int e = 0; e < 3; ++e) {
      Vec3<double> cand{};
      cand[e] = 1.0;
      for (int prev = 0; prev < c; ++prev) {
        double d = 0;
        for (int k = 0; k < 3; ++k) d += cand[k] * out.u[k][prev];
        for (int k = 0; k < 3; ++k) cand[k] -= d * out.u[k][prev];
      }
      const double n = std::sqrt(cand[0] * cand[0] + cand[1] * cand[1] + cand[2] * cand[2]);
      if (n > 1e-6) {
        for (int k = 0; k < 3; ++k) out.u[k][c] = cand[k] / n;
        break;
      }
    }
  }
  return out;
}

std::vector<Vec3<double>> null_space(const Mat3d& a, double rel_tol) {
  const Svd3 s = svd(a);
  const double ref = std::max(s.sigma[0], std::numeric_limits<double>::min());
  std::vector<Vec3<double>> out;
  for (int c = 0; c < 3; ++c)
    if (s.sigma[c] <= rel_tol * ref || s.sigma[0] == 0.0) out.push_back({s.v[0][c], s.v[1][c], s.v[2][c]});
  return out;
}

namespace {

using CMat = std::array<std::array<cplx, 3>, 3>;

Vec3<cplx> cross_c(const Vec3<cplx>& x, const Vec3<cplx>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double norm_c(const Vec3<cplx>& x) {
  return std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
}

CMat shifted(const Mat3d& a, cplx lambda) {
  CMat b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = a[i][j] - (i == j ? lambda : cplx(0.0));
  return b;
}

// adjugate(b) * x, i.e. one inverse-iteration step up to scale
Vec3<cplx> adj_apply(const CMat& b, const Vec3<cplx>& x) {
  CMat adj{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      adj[j][i] = b[i1][j1] * b[i2][j2] - b[i1][j2] * b[i2][j1];
    }
  Vec3<cplx> y{};
  for (int i = 0; i < 3; ++i) y[i] = adj[i][0] * x[0] + adj[i][1] * x[1] + adj[i][2] * x[2];
  return y;
}

Vec3<cplx> unit(Vec3<cplx> x) {
  const double n = norm_c(x);
  for (auto& c : x) c /= n;
  // fix the phase: largest component real and positive
  int big = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(x[k]) > std::abs(x[big]) * (1 + 1e-12)) big = k;
  const cplx ph = std::abs(x[big]) > 0 ? std::conj(x[big]) / std::abs(x[big]) : cplx(1.0);
  for (auto& c : x) c *= ph;
  return x;
}

}  // namespace

std::vector<EigenPair> eigen(const Mat3d& input, double cluster_tol) {
  const double scale = sup_norm(input);
  if (scale == 0.0) throw Error(Errc::ZeroVector, "eigen of zero array");
  Mat3d a = input;
  for (auto& row : a)
    for (double& v : row) v /= scale;

  const double tr = a[0][0] + a[1][1] + a[2][2];
  const double minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) + (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
                        (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
  const CubicRoots roots = solve_cubic(-tr, minors, -det(a), cluster_tol);

  std::vector<EigenPair> out;
  for (std::size_t r = 0; r < roots.values.size(); ++r) {
    EigenPair ep;
    ep.value = roots.values[r];
    ep.algebraic_multiplicity = roots.multiplicity[r];
    if (ep.value.imag() == 0.0) {
      Mat3d b = a;
      for (int i = 0; i < 3; ++i) b[i][i] -= ep.value.real();
      auto basis = null_space(b, 1e-8);
      if (basis.empty()) {
        const Svd3 s = svd(b);
        basis.push_back({s.v[0][2], s.v[1][2], s.v[2][2]});
      }
      for (const auto& v : basis) ep.vectors.push_back({v[0], v[1], v[2]});
    } else {
      const CMat b = shifted(a, ep.value);
      Vec3<cplx> best{};
      double best_norm = -1.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const Vec3<cplx> c = cross_c(b[i], b[j]);
          const double n = norm_c(c);
          if (n > best_norm) {
            best_norm = n;
            best = c;
          }
        }
      ep.vectors.push_back(best);
    }
    if (ep.algebraic_multiplicity == 1 && ep.vectors.size() == 1) {
      const CMat b = shifted(a, ep.value);
      Vec3<cplx> x = unit(ep.vectors[0]);
      const Vec3<cplx> y = adj_apply(b, x);
      if (norm_c(y) > 1e-12) x = y;
      ep.vectors[0] = x;
    }
    for (auto& v : ep.vectors) v = unit(v);
    ep.value *= scale;
    out.push_back(std::move(ep));
  }
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
    const double mx = std::abs(x.value), my = std::abs(y.value);
    if (mx != my) return mx > my;
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });
  return out;
}

}  // namespace pappus::linalg
