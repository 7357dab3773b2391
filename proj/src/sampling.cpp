#include "ballmap/sampling.hpp"

#include <cmath>

namespace ballmap {

namespace {

// additive recurrence with the generalized golden ratio of Roberts
std::vector<double> kronecker_alphas(int dim) {
  double phi = 1.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
  std::vector<double> a(dim);
  double p = 1.0 / phi;
  for (int j = 0; j < dim; ++j) {
    a[j] = p;
    p /= phi;
  }
  return a;
}

}  // namespace

std::vector<Eigen::VectorXcd> sphere_points(int n, int count, unsigned seed) {
  const int dim = 2 * n;
  auto alphas = kronecker_alphas(dim);
  std::vector<double> u(dim, 0.5 + 0.37 * static_cast<double>(seed % 1013));
  for (auto& x : u) x -= std::floor(x);
  std::vector<Eigen::VectorXcd> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) {
      u[j] += alphas[j];
      u[j] -= std::floor(u[j]);
    }
    Eigen::VectorXcd z(n);
    for (int k = 0; k < n; ++k) {
      double a = std::max(u[2 * k], 1e-12);
      double b = u[2 * k + 1];
      double rho = std::sqrt(-2.0 * std::log(a));
      z(k) = std::complex<double>(rho * std::cos(2.0 * M_PI * b), rho * std::sin(2.0 * M_PI * b));
    }
    double nz = z.norm();
    if (nz < 1e-12) {
      z.setZero();
      z(0) = 1.0;
      nz = 1.0;
    }
    pts.push_back(z / nz);
  }
  return pts;
}

std::vector<Eigen::VectorXcd> ball_grid_points(int n, int count, const std::vector<double>& radii,
                                               unsigned seed) {
  auto base = sphere_points(n, count, seed);
  std::vector<Eigen::VectorXcd> pts;
  pts.reserve(base.size() * radii.size());
  for (double r : radii)
    for (const auto& z : base) pts.push_back(r * z);
  return pts;
}

}  // namespace ballmap
