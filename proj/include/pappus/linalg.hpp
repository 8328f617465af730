#pragma once

#include <array>
#include <complex>
#include <vector>

namespace pappus {

using cplx = std::complex<double>;

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

using Mat3d = Mat3<double>;

namespace linalg {

Mat3d identity();
Mat3d multiply(const Mat3d& a, const Mat3d& b);
Mat3d transpose(const Mat3d& a);
Mat3d cofactor(const Mat3d& a);  // inverse-transpose up to 1/det
Mat3d adjugate(const Mat3d& a);  // inverse up to 1/det
double det(const Mat3d& a);
double sup_norm(const Mat3d& a);
double frobenius(const Mat3d& a);
Vec3<double> apply(const Mat3d& a, const Vec3<double>& x);
Vec3<cplx> apply(const Mat3d& a, const Vec3<cplx>& x);

// Scales to sup-norm 1 with the largest-modulus entry positive.
Mat3d sup_normalize(const Mat3d& a);
// Scales to determinant +1 (real cube root); requires det != 0.
Mat3d det_normalize(const Mat3d& a);
// Distance between scale classes: both sup-normalized, min over sign.
double class_distance(const Mat3d& a, const Mat3d& b);

// Roots of x^3 + a x^2 + b x + c with cluster detection: roots whose
// relative separation is below cluster_tol are merged and reported with
// multiplicity (the merged value is recovered from the root sum).
struct CubicRoots {
  std::vector<cplx> values;          // distinct roots
  std::vector<int> multiplicity;     // same length as values
};
CubicRoots solve_cubic(double a, double b, double c, double cluster_tol = 1e-4);
CubicRoots solve_quadratic(double b, double c, double cluster_tol = 1e-4);  // x^2+bx+c

// One-sided Jacobi SVD: a = U diag(sigma) V^T, sigma descending.
struct Svd3 {
  Vec3<double> sigma;
  Mat3d u;  // columns are left singular vectors
  Mat3d v;  // columns are right singular vectors
};
Svd3 svd(const Mat3d& a);

// Orthonormal basis (as vectors) of the numerical null space of a:
// right singular vectors with sigma <= rel_tol * sigma_max.
std::vector<Vec3<double>> null_space(const Mat3d& a, double rel_tol);

struct EigenPair {
  cplx value;
  int algebraic_multiplicity = 1;
  std::vector<Vec3<cplx>> vectors;  // eigenspace basis
};

// Eigen-decomposition of a real 3x3 array from its characteristic cubic,
// followed by one inverse-iteration polish of each simple eigenvector.
// Entries are sorted by modulus, descending.
std::vector<EigenPair> eigen(const Mat3d& a, double cluster_tol = 1e-4);

}  // namespace linalg
}  // namespace pappus
