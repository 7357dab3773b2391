#pragma once

// Deterministic low-discrepancy point sets on the unit sphere and in the
// unit ball of C^n.  A Kronecker sequence feeds Box-Muller, so the same
// (n, count, seed) always yields the same points.

#include <vector>

#include <Eigen/Dense>

namespace ballmap {

std::vector<Eigen::VectorXcd> sphere_points(int n, int count, unsigned seed = 0);

// sphere points scaled by every radius in the grid
std::vector<Eigen::VectorXcd> ball_grid_points(int n, int count, const std::vector<double>& radii,
                                               unsigned seed = 0);

}  // namespace ballmap
