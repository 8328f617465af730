#include "pappus/nearest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pappus {

namespace {

Vec3<double> unit(const Vec3<double>& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dist2(const Vec3<double>& a, const Vec3<double>& b) {
  const double x = a[0] - b[0], y = a[1] - b[1], z = a[2] - b[2];
  return x * x + y * y + z * z;
}

}  // namespace

NearestIndex::NearestIndex(const std::vector<Vec3<double>>& vectors) : count_(vectors.size()) {
  std::vector<Node> items;
  items.reserve(2 * vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const auto u = unit(vectors[k]);
    items.push_back({u, k, 0});
    items.push_back({{-u[0], -u[1], -u[2]}, k, 0});
  }
  nodes_.reserve(items.size());
  root_ = build(items, 0, items.size(), 0);
}

int NearestIndex::build(std::vector<Node>& items, std::size_t lo, std::size_t hi, int depth) {
  if (lo >= hi) return -1;
  const int axis = depth % 3;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(items.begin() + lo, items.begin() + mid, items.begin() + hi, [axis](const Node& a, const Node& b) {
    if (a.x[axis] != b.x[axis]) return a.x[axis] < b.x[axis];
    return a.id < b.id;
  });
  Node n = items[mid];
  n.axis = axis;
  const int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(n);
  const int l = build(items, lo, mid, depth + 1);
  const int r = build(items, mid + 1, hi, depth + 1);
  nodes_[idx].left = l;
  nodes_[idx].right = r;
  return idx;
}

void NearestIndex::search(int node, const Vec3<double>& q, double& best2, std::size_t& best_id) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  const double d2 = dist2(n.x, q);
  if (d2 < best2 || (d2 == best2 && n.id < best_id)) {
    best2 = d2;
    best_id = n.id;
  }
  const double diff = q[n.axis] - n.x[n.axis];
  const int near = diff < 0 ? n.left : n.right;
  const int far = diff < 0 ? n.right : n.left;
  search(near, q, best2, best_id);
  if (diff * diff <= best2) search(far, q, best2, best_id);
}

double NearestIndex::nearest(const Vec3<double>& v, std::size_t* which) const {
  if (root_ < 0) return std::numbers::pi / 2;
  double best2 = std::numeric_limits<double>::infinity();
  std::size_t id = 0;
  search(root_, unit(v), best2, id);
  if (which) *which = id;
  const double chord = std::sqrt(best2);
  return 2.0 * std::asin(std::min(1.0, chord / 2.0));
}

}  // namespace pappus
