#pragma once

// Target equivalence to polynomial models, for maps of maximal embedding
// dimension.  The coefficient matrix C of the underlying form is full rank
// there, and det(C - gamma J) with J the rank-one constant-slot matrix is
// affine in gamma.  A root gives C - gamma J of rank N whose signature picks
// the model; no root means the mixed-term matrix degenerates and the
// Heisenberg realization applies.

#include <optional>

#include <Eigen/Dense>

#include "ballmap/ball_map.hpp"
#include "ballmap/herm_form.hpp"

namespace ballmap {

enum class PolyModel { Ball, GeneralizedBall, Heisenberg };

const char* poly_model_name(PolyModel m);

struct PolyClassification {
  PolyModel model;
  std::optional<double> gamma;  // absent for Heisenberg
  PolyMap Prep;
  std::optional<CPoly> Grep;  // absent for Ball
  double residual;            // sphere-sample residual of the model identity
};

// largest target dimension a degree-d map from dimension n can use, one
// below the count of monomials of degree at most d
int max_embed_dim(int n, int d);

struct ClassifyOptions {
  double rank_tol = 1e-9;       // eigenvalue truncation relative to |C|
  double singular_tol = 1e-9;   // Heisenberg branch threshold on e0* C^-1 e0
  int samples_per_dim = 1000;   // sphere samples behind the residual
  unsigned seed = 0;
};

// classification of the underlying Hermitian form; r(0,0) must be 1 and the
// signature must be (1, max_embed_dim, 0)
PolyClassification classify_form(const HermForm& r, const ClassifyOptions& opts = {});

PolyClassification classify_poly_equiv(const RationalBallMap& f, const ClassifyOptions& opts = {});

// max over quasi-random sphere points of the defining identity of the
// claimed model:
//   Ball             gamma (1 - |Prep|^2) = r
//   GeneralizedBall  |Grep|^2 + gamma - |Prep|^2 = r
//   Heisenberg       Re Grep - |Prep|^2 = r
double verify_representative(const PolyClassification& cls, const HermForm& r,
                             int samples_per_dim = 1000, unsigned seed = 0);

}  // namespace ballmap
