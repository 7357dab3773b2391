#pragma once

// Degree-3 maps with prescribed denominator g = 1 + sum sigma_k z_k^2.  The
// base form is a concrete perturbation of 1 - |z|^2 scaled pieces that
// vanishes on the sphere by construction; its numerator exists exactly when
// the mixed-term matrix of |g|^2 - r is positive semidefinite.  The search
// variant frees the quotient q in r = q (1 - |z|^2) and runs alternating
// projections between that affine family and the semidefinite cone.

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ballmap/ball_map.hpp"
#include "ballmap/herm_form.hpp"

namespace ballmap {

enum class ExistenceStatus { Feasible, InfeasibleConstruction, NoConvergence };

const char* existence_status_name(ExistenceStatus s);

struct ExistenceResult {
  ExistenceStatus status;
  bool feasible;                       // status == Feasible
  std::optional<RationalBallMap> map;  // numerator p with p(0) = 0 over g
  double min_eig;                      // least eigenvalue of the mixed-term matrix
  double residual;                     // sphere properness residual when feasible
  int iterations;
  std::string note;
};

// the perturbed form
//   1 - (1/3)(|z|^6 + |z|^4 + |z|^2) + sum sigma_k (z_k^2 + zbar_k^2)(1 - |z|^2)
// with pure part 1 + sum sigma_k z_k^2; vanishes identically on the sphere
HermForm construct_base_form(const Eigen::VectorXd& sigma);

// numerator extraction for the base form; infeasibility here says nothing
// about other forms with the same denominator
ExistenceResult degree3_numerator(const Eigen::VectorXd& sigma);

// alternating projection over all quotients compatible with g; termination
// without convergence is reported as such, never as certified infeasibility
ExistenceResult feasibility_search(const Eigen::VectorXd& sigma, int max_iter = 20000);

}  // namespace ballmap
