#pragma once

// The exhaustion function Lambda(z) = r(z, zbar) / (1 - |z|^2)^d attached to
// a proper ball map of degree d with underlying form r.  For d > 1 it is
// strictly plurisubharmonic, blows up at the sphere, and has a unique
// interior minimum; the minimizer is the center that the normalization
// pipeline pulls back to the origin.  For d = 1 it is identically 1.

#include <Eigen/Dense>

#include "ballmap/herm_form.hpp"

namespace ballmap {

struct LambdaEval {
  double value;
  Eigen::VectorXcd grad;    // d Lambda / d z_j
  Eigen::MatrixXcd hess_c;  // complex Hessian d2 / dz_j dzbar_k
  Eigen::MatrixXd hess_r;   // real Hessian in (x_1..x_n, y_1..y_n)
};

double lambda_value(const HermForm& r, int d, const Eigen::VectorXcd& z);

LambdaEval lambda_eval(const HermForm& r, int d, const Eigen::VectorXcd& z);

struct SolverOptions {
  double grad_tol = 1e-10;
  int max_iter = 500;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtrack = 60;
  double boundary_margin = 1e-8;  // iterates keep |z| <= 1 - margin
};

struct CriticalPoint {
  Eigen::VectorXcd alpha;
  double residual;    // norm of the first-order optimality system at alpha
  int iterations;
  double min_value;
};

// damped Newton on the 2n real coordinates from a cold start at 0; throws
// DegenerateDegreeOne for d = 1 and NoConvergence past max_iter
CriticalPoint find_critical_point(const HermForm& r, int d, const SolverOptions& opts = {});

// norm of the optimality system
//   d * (-conj(alpha_j)) r(alpha) + grad_z r(alpha) . d phi_alpha / dz_j (0)
// which vanishes exactly at the Lambda minimizer
double criticality_residual(const HermForm& r, int d, const Eigen::VectorXcd& alpha);

}  // namespace ballmap
