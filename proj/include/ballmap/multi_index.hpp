#pragma once

// Multi-indices and the graded monomial basis that indexes every coefficient
// vector and matrix in the library.  Order is graded lexicographic with the
// constant monomial first; within a fixed total degree z1 dominates z2, etc.
// Example for (n, d) = (2, 1): [(0,0), (1,0), (0,1)].

#include <map>
#include <vector>

#include <Eigen/Dense>

namespace ballmap {

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
  }
};

struct GradedLexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return (*this)(a.exponents, b.exponents);
  }
};

class MonomialBasis {
public:
  MonomialBasis() = default;
  MonomialBasis(int n, int d);

  int n() const { return n_; }
  int max_degree() const { return d_; }
  int size() const { return static_cast<int>(order_.size()); }

  const std::vector<int>& exponents(int i) const { return order_[i]; }
  int degree(int i) const { return degrees_[i]; }

  // -1 when the exponent vector is not in the basis
  int index_of(const std::vector<int>& e) const;

  // index of exponents(i) - e_var, -1 when exponent var is zero
  int down(int i, int var) const { return down_[static_cast<size_t>(i) * n_ + var]; }

  // column vector of all monomial values z^alpha in basis order
  Eigen::VectorXcd monomials(const Eigen::VectorXcd& z) const;

  // first derivative vectors: column j holds d/dz_j of every monomial
  Eigen::MatrixXcd monomial_jacobian(const Eigen::VectorXcd& z) const;

private:
  int n_ = 0;
  int d_ = 0;
  std::vector<std::vector<int>> order_;
  std::vector<int> degrees_;
  std::vector<int> down_;
  std::map<std::vector<int>, int, GradedLexLess> lookup_;
};

MonomialBasis monomial_basis(int n, int d);

// binomial(n + d, d); number of monomials of degree at most d in n variables
long binomial_dim(int n, int d);

}  // namespace ballmap
