#include "ballmap/multi_index.hpp"

#include <functional>

#include "ballmap/errors.hpp"

namespace ballmap {

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da < db;
  // same degree: earlier means lexicographically larger, so (1,0) precedes (0,1)
  return a > b;
}

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0) throw domain_error(errc::invalid_argument, "core", "monomial basis needs n >= 1, d >= 0");
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == n) {
      order_.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[pos] = e;
      rec(pos + 1, rem - e);
    }
    cur[pos] = 0;
  };
  rec(0, d);
  std::sort(order_.begin(), order_.end(), GradedLexLess{});
  degrees_.resize(order_.size());
  for (size_t i = 0; i < order_.size(); ++i) {
    int s = 0;
    for (int e : order_[i]) s += e;
    degrees_[i] = s;
    lookup_[order_[i]] = static_cast<int>(i);
  }
  down_.assign(order_.size() * n, -1);
  for (size_t i = 0; i < order_.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      if (order_[i][j] == 0) continue;
      std::vector<int> e = order_[i];
      --e[j];
      down_[i * n + j] = lookup_.at(e);
    }
  }
}

int MonomialBasis::index_of(const std::vector<int>& e) const {
  auto it = lookup_.find(e);
  return it == lookup_.end() ? -1 : it->second;
}

Eigen::VectorXcd MonomialBasis::monomials(const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd m(size());
  m(0) = 1.0;
  for (int i = 1; i < size(); ++i) {
    for (int j = 0; j < n_; ++j) {
      int k = down(i, j);
      if (k >= 0) {
        m(i) = m(k) * z(j);
        break;
      }
    }
  }
  return m;
}

Eigen::MatrixXcd MonomialBasis::monomial_jacobian(const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd m = monomials(z);
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(size(), n_);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < n_; ++j) {
      int k = down(i, j);
      if (k >= 0) J(i, j) = static_cast<double>(order_[i][j]) * m(k);
    }
  }
  return J;
}

MonomialBasis monomial_basis(int n, int d) { return MonomialBasis(n, d); }

long binomial_dim(int n, int d) {
  long r = 1;
  for (int i = 1; i <= d; ++i) r = r * (n + i) / i;
  return r;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::hermiticity_violation: return "HermiticityViolation";
    case errc::not_divisible: return "NotDivisible";
    case errc::validation_failed: return "ValidationFailed";
    case errc::degenerate_degree_one: return "DegenerateDegreeOne";
    case errc::no_convergence: return "NoConvergence";
    case errc::not_maximal_embedding: return "NotMaximalEmbedding";
    case errc::factorization_failure: return "FactorizationFailure";
    case errc::infeasible: return "Infeasible";
  }
  return "Unknown";
}

}  // namespace ballmap
