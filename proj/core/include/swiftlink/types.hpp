#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace swiftlink {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// One cell of the N x N virtual grid.
struct Coord {
  int r = 0;
  int c = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

enum class TrajKind { p, n, type1, type2, row, block };
enum class ContourDist { uniform, binomial };

// Ordered list of virtual-grid cells; beam-training slot m samples steps[m].
// For composite kinds (type1, type2) `split` is the length of the embedded
// p-trajectory: type1 stores p then n, type2 interleaves p at even indices.
struct Trajectory {
  TrajKind kind = TrajKind::p;
  int n = 0;
  std::vector<Coord> steps;
  int split = -1;
};

}  // namespace swiftlink
