#pragma once

// Sparse complex polynomials in n variables and tuples of them.

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "ballmap/multi_index.hpp"

namespace ballmap {

using cd = std::complex<double>;

class CPoly {
public:
  CPoly() = default;
  explicit CPoly(int n) : n_(n) {}
  static CPoly constant(int n, cd c);
  static CPoly variable(int n, int j);  // z_j

  int n() const { return n_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  cd coeff(const std::vector<int>& e) const;
  void set_coeff(const std::vector<int>& e, cd c);
  void add_coeff(const std::vector<int>& e, cd c);

  const std::map<std::vector<int>, cd, GradedLexLess>& terms() const { return terms_; }

  cd eval(const Eigen::VectorXcd& z) const;

  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  CPoly& operator*=(cd s);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(CPoly a, cd s) { return a *= s; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);

  CPoly derivative(int var) const;

  // substitute z -> V z, dense multinomial expansion
  CPoly compose_linear(const Eigen::MatrixXcd& V) const;

  // drop coefficients below tol * max|coeff|
  void prune(double rel_tol = 1e-14);

  // coefficient vector on a basis; throws if a term falls outside it
  Eigen::VectorXcd on_basis(const MonomialBasis& basis) const;
  static CPoly from_basis(const MonomialBasis& basis, const Eigen::VectorXcd& v);

  double max_abs_coeff() const;

private:
  int n_ = 1;
  std::map<std::vector<int>, cd, GradedLexLess> terms_;
};

// power h^k by repeated multiplication; k >= 0
CPoly pow(const CPoly& h, int k);

struct PolyMap {
  int n = 1;
  std::vector<CPoly> comps;

  int N() const { return static_cast<int>(comps.size()); }
  int degree() const;
  Eigen::VectorXcd eval(const Eigen::VectorXcd& z) const;
  void prune(double rel_tol = 1e-14);
};

// degree of the numerical gcd of a set of univariate polynomials (n == 1),
// computed by the Euclidean remainder sequence with relative cutoff tol
int univariate_gcd_degree(const std::vector<CPoly>& polys, double tol = 1e-9);

}  // namespace ballmap
