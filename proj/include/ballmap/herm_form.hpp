#pragma once

// Real polynomials r(z, zbar) stored as Hermitian coefficient matrices over
// a graded monomial basis: r(z) = sum_{a,b} C(a,b) z^a conj(z)^b.  Entry
// (i, j) multiplies z^{alpha_i} zbar^{alpha_j}, so C must equal its own
// conjugate transpose for r to be real valued.

#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ballmap/multi_index.hpp"
#include "ballmap/poly.hpp"

namespace ballmap {

struct HermForm {
  MonomialBasis basis;
  Eigen::MatrixXcd C;

  int n() const { return basis.n(); }
  int bidegree() const { return basis.max_degree(); }
};

// validates shape and hermiticity (relative tolerance), stores (C + C*)/2
HermForm make_herm_form(MonomialBasis basis, const Eigen::MatrixXcd& C, double herm_tol = 1e-13);

double herm_eval(const HermForm& r, const Eigen::VectorXcd& z);

// value with holomorphic first and second derivatives; d/dzbar of a real
// form is the conjugate of d/dz, so only the holomorphic half is stored
struct HermDerivs {
  double value;
  Eigen::VectorXcd dz;     // dr/dz_j
  Eigen::MatrixXcd dzz;    // d2r/dz_j dz_k (symmetric)
  Eigen::MatrixXcd dzdzb;  // d2r/dz_j dzbar_k (Hermitian)
};

HermDerivs herm_eval_derivs(const HermForm& r, const Eigen::VectorXcd& z);

// quotient q with r = q * (1 - |z|^2), obtained from the coefficient
// recursion in increasing bidegree; the top-degree relations are
// overdetermined and any residual >= tol (relative) raises NotDivisible
HermForm divide_by_sphere(const HermForm& r, double tol = 1e-11);

// (positive, negative, zero) eigenvalue counts at relative tolerance tol
std::tuple<int, int, int> signature(const HermForm& r, double tol = 1e-9);

// r(z, 0), the holomorphic pure part
CPoly pure_part(const HermForm& r);

// factorization r = |G|^2 - |P|^2 with G = r(z, 0), P(0) = 0, components of
// P linearly independent; needs r(0,0) = 1 and exactly one positive
// eigenvalue, the embedding dimension is the number of components returned
std::pair<PolyMap, CPoly> origin_representative(const HermForm& r, double rank_tol = 1e-9,
                                                double recon_tol = 1e-11);

// signature decomposition r = sum |plus_i|^2 - sum |minus_i|^2
struct SquaresDecomp {
  std::vector<CPoly> plus;
  std::vector<CPoly> minus;
};

SquaresDecomp decompose_squares(const HermForm& r, double drop_tol = 1e-14);

// coefficient matrix of |h|^2 on the given basis
Eigen::MatrixXcd outer_on_basis(const CPoly& h, const MonomialBasis& basis);

double max_abs(const Eigen::MatrixXcd& C);

}  // namespace ballmap
