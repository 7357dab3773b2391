#pragma once

// Automorphisms of the unit ball in the form U . phi_a, where
//
//   phi_a(z) = (a - L_a z) / (1 - <z, a>),
//   L_a z    = (1 - s) <z, a> a / |a|^2 + s z,   s = sqrt(1 - |a|^2),
//
// and U is unitary.  L_0 is the identity, so phi_0(z) = -z and the identity
// automorphism is written as (a = 0, U = -I).  phi_a swaps 0 and a and is an
// involution.

#include <Eigen/Dense>

#include "ballmap/ball_map.hpp"
#include "ballmap/herm_form.hpp"

namespace ballmap {

struct BallAutomorphism {
  Eigen::VectorXcd alpha;
  Eigen::MatrixXcd U;

  int n() const { return static_cast<int>(alpha.size()); }
};

// checks |alpha| < 1 and unitarity of U
BallAutomorphism make_automorphism(const Eigen::VectorXcd& alpha, const Eigen::MatrixXcd& U);

// phi_a with U = I
BallAutomorphism phi(const Eigen::VectorXcd& alpha);

// the linear factor L_a as a matrix
Eigen::MatrixXcd l_matrix(const Eigen::VectorXcd& alpha);

Eigen::VectorXcd aut_apply(const BallAutomorphism& psi, const Eigen::VectorXcd& z);

// f composed with psi; denominators are cleared with (1 - <z, a>)^d and the
// result is rescaled so its underlying form has constant term 1
RationalBallMap precompose(const RationalBallMap& f, const BallAutomorphism& psi);

// pullback of a form under phi_alpha:
//   R(z) = |1 - <z, alpha>|^(2d) r(phi_alpha(z)) / r(alpha)
// computed through the signature decomposition of r; R(0,0) = 1
HermForm pullback_form(const HermForm& r, const Eigen::VectorXcd& alpha, int d);

}  // namespace ballmap
