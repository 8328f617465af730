#pragma once

#include <cstddef>
#include <vector>

#include "pappus/linalg.hpp"

namespace pappus {

// Nearest neighbour among projective classes of real unit 3-vectors under
// the angle metric; each vector is stored with its antipode.
class NearestIndex {
 public:
  explicit NearestIndex(const std::vector<Vec3<double>>& vectors);

  // Angle to the nearest stored class and its index; empty index gives pi/2.
  double nearest(const Vec3<double>& v, std::size_t* which = nullptr) const;
  std::size_t size() const { return count_; }

 private:
  struct Node {
    Vec3<double> x;
    std::size_t id;
    int axis;
    int left = -1, right = -1;
  };
  int build(std::vector<Node>& items, std::size_t lo, std::size_t hi, int depth);
  void search(int node, const Vec3<double>& q, double& best2, std::size_t& best_id) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t count_ = 0;
};

}  // namespace pappus
