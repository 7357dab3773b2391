#pragma once

// Normalization of rational proper ball maps.  The pipeline centers the
// underlying form at the Lambda minimizer, reads off a representative P/G
// with P(0) = 0 and G(0) = 1, diagonalizes the quadratic part of G by a
// Takagi factorization, and fixes the remaining unitary freedom by rotating
// P to row echelon form with positive pivots.  The ascending diagonal sigma
// of the quadratic part is a complete set of invariants when its entries are
// distinct and positive.

#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ballmap/ball_map.hpp"
#include "ballmap/lambda.hpp"

namespace ballmap {

// coefficient matrix of the quadratic part: diagonal from z_j^2, half the
// coefficient of z_j z_k off the diagonal
Eigen::MatrixXcd quadratic_matrix(const CPoly& G);

struct TakagiResult {
  Eigen::MatrixXcd V;     // unitary with V^T C V = diag(sigma)
  Eigen::VectorXd sigma;  // ascending, nonnegative
};

// Takagi factorization of a complex symmetric matrix, built on the
// eigendecomposition of C * conj(C) with per-vector phase correction and a
// Jacobi cleanup pass for clustered singular values
TakagiResult takagi(const Eigen::MatrixXcd& C, double tol = 1e-13);

struct EchelonResult {
  Eigen::MatrixXcd U;  // unitary acting on components
  PolyMap P;           // U applied to the input, coefficient rows in echelon form
  bool unique;         // false when the coefficient rank is below the component count
};

// unitary row reduction of the component-by-monomial coefficient matrix
// (constant column excluded) to echelon form with real positive pivots
EchelonResult echelon_unitary(const PolyMap& P, double tol = 1e-12);

struct NormalForm {
  PolyMap P;                // numerator, P(0) = 0, echelon rows
  CPoly G;                  // denominator, G = 1 + sum sigma_k z_k^2 + higher order
  Eigen::VectorXd sigma;    // ascending spherical invariants
  Eigen::VectorXcd alpha;   // Lambda minimizer that was pulled back to 0
  Eigen::MatrixXcd V;       // source unitary used in z -> V z
  Eigen::MatrixXcd U;       // target unitary from the echelon step
  std::map<std::string, double> residuals;
};

struct NormalizeOptions {
  SolverOptions solver;
  double sigma_snap = 1e-9;    // values below this count as zero
  double rank_tol = 1e-9;
  bool validate_input = true;
};

NormalForm normalize(const RationalBallMap& f, const NormalizeOptions& opts = {});

// sigma of the normal form
Eigen::VectorXd invariants(const RationalBallMap& f, const NormalizeOptions& opts = {});

enum class Equivalence { Equivalent, Inequivalent, Inconclusive };

struct EquivalenceWitness {
  Eigen::MatrixXcd V;  // source signed permutation
  Eigen::MatrixXcd U;  // target unitary
  double residual;
};

struct EquivalenceVerdict {
  Equivalence status;
  std::optional<EquivalenceWitness> witness;
  std::string reason;
};

struct EquivalenceOptions {
  NormalizeOptions normalize;
  double sigma_tol = 1e-7;   // mismatch beyond this is a definite no
  double match_tol = 1e-8;   // coefficient agreement for a witness
  double tie_gap = 1e-7;     // relative gap below which sigmas count as tied
};

// decides whether the maps agree up to automorphisms of source and target
// balls; sigma ties and zeros limit the tested stabilizer to signed
// permutations, so a miss there is Inconclusive rather than Inequivalent
EquivalenceVerdict spherically_equivalent(const RationalBallMap& f, const RationalBallMap& F,
                                          const EquivalenceOptions& opts = {});

}  // namespace ballmap
