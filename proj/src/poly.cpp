#include "ballmap/poly.hpp"

#include <algorithm>
#include <cmath>

#include "ballmap/errors.hpp"

namespace ballmap {

CPoly CPoly::constant(int n, cd c) {
  CPoly p(n);
  if (c != cd(0.0)) p.terms_[std::vector<int>(n, 0)] = c;
  return p;
}

CPoly CPoly::variable(int n, int j) {
  CPoly p(n);
  std::vector<int> e(n, 0);
  e[j] = 1;
  p.terms_[e] = 1.0;
  return p;
}

int CPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

cd CPoly::coeff(const std::vector<int>& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cd(0.0) : it->second;
}

void CPoly::set_coeff(const std::vector<int>& e, cd c) {
  if (c == cd(0.0))
    terms_.erase(e);
  else
    terms_[e] = c;
}

void CPoly::add_coeff(const std::vector<int>& e, cd c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != cd(0.0)) terms_[e] = c;
  } else {
    it->second += c;
    if (it->second == cd(0.0)) terms_.erase(it);
  }
}

cd CPoly::eval(const Eigen::VectorXcd& z) const {
  if (z.size() != n_) throw domain_error(errc::dimension_mismatch, "core", "eval point has wrong dimension");
  cd acc = 0.0;
  for (const auto& [e, c] : terms_) {
    cd t = c;
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < e[j]; ++k) t *= z(j);
    acc += t;
  }
  return acc;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  for (const auto& [e, c] : o.terms_) add_coeff(e, c);
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  for (const auto& [e, c] : o.terms_) add_coeff(e, -c);
  return *this;
}

CPoly& CPoly::operator*=(cd s) {
  if (s == cd(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  CPoly r(a.n_);
  std::vector<int> e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int j = 0; j < a.n_; ++j) e[j] = ea[j] + eb[j];
      r.add_coeff(e, ca * cb);
    }
  return r;
}

CPoly CPoly::derivative(int var) const {
  CPoly r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> f = e;
    --f[var];
    r.add_coeff(f, c * static_cast<double>(e[var]));
  }
  return r;
}

CPoly CPoly::compose_linear(const Eigen::MatrixXcd& V) const {
  if (V.rows() != n_ || V.cols() != n_)
    throw domain_error(errc::dimension_mismatch, "core", "substitution matrix has wrong shape");
  std::vector<CPoly> rows;  // (Vz)_k as linear forms
  rows.reserve(n_);
  for (int k = 0; k < n_; ++k) {
    CPoly lk(n_);
    for (int l = 0; l < n_; ++l) {
      if (V(k, l) != cd(0.0)) {
        std::vector<int> e(n_, 0);
        e[l] = 1;
        lk.add_coeff(e, V(k, l));
      }
    }
    rows.push_back(lk);
  }
  CPoly out(n_);
  for (const auto& [e, c] : terms_) {
    CPoly term = CPoly::constant(n_, c);
    for (int k = 0; k < n_; ++k)
      if (e[k] > 0) term = term * pow(rows[k], e[k]);
    out += term;
  }
  return out;
}

void CPoly::prune(double rel_tol) {
  double m = max_abs_coeff();
  if (m == 0.0) return;
  double cut = rel_tol * m;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < cut)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Eigen::VectorXcd CPoly::on_basis(const MonomialBasis& basis) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
  for (const auto& [e, c] : terms_) {
    int i = basis.index_of(e);
    if (i < 0) throw domain_error(errc::dimension_mismatch, "core", "polynomial term outside basis");
    v(i) = c;
  }
  return v;
}

CPoly CPoly::from_basis(const MonomialBasis& basis, const Eigen::VectorXcd& v) {
  CPoly p(basis.n());
  for (int i = 0; i < basis.size(); ++i)
    if (v(i) != cd(0.0)) p.terms_[basis.exponents(i)] = v(i);
  return p;
}

double CPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

CPoly pow(const CPoly& h, int k) {
  CPoly r = CPoly::constant(h.n(), 1.0);
  for (int i = 0; i < k; ++i) r = r * h;
  return r;
}

int PolyMap::degree() const {
  int d = -1;
  for (const auto& c : comps) d = std::max(d, c.degree());
  return d;
}

Eigen::VectorXcd PolyMap::eval(const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd v(N());
  for (int j = 0; j < N(); ++j) v(j) = comps[j].eval(z);
  return v;
}

void PolyMap::prune(double rel_tol) {
  for (auto& c : comps) c.prune(rel_tol);
}

namespace {

using Dense = std::vector<cd>;  // dense univariate, index = power

Dense to_dense(const CPoly& p) {
  Dense v(static_cast<size_t>(std::max(0, p.degree())) + 1, cd(0.0));
  for (const auto& [e, c] : p.terms()) v[e[0]] = c;
  return v;
}

double norm1(const Dense& v) {
  double s = 0.0;
  for (cd c : v) s += std::abs(c);
  return s;
}

void trim(Dense& v, double cut) {
  while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
}

// remainder of a by b, b nonempty with dominant leading coefficient
Dense rem(Dense a, const Dense& b) {
  while (a.size() >= b.size()) {
    cd q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    a.pop_back();
  }
  return a;
}

}  // namespace

int univariate_gcd_degree(const std::vector<CPoly>& polys, double tol) {
  Dense g;
  for (const auto& p : polys) {
    if (p.n() != 1) throw domain_error(errc::invalid_argument, "core", "gcd needs univariate input");
    Dense v = to_dense(p);
    trim(v, tol * std::max(1.0, norm1(v)));
    if (v.empty()) continue;
    if (g.empty()) {
      g = v;
      continue;
    }
    Dense a = g, b = v;
    while (!b.empty()) {
      if (a.size() < b.size()) std::swap(a, b);
      double scale = std::max({norm1(a), norm1(b), 1.0});
      Dense r = rem(a, b);
      trim(r, tol * scale);
      a = b;
      b = r;
    }
    g = a;
    if (g.size() <= 1) return 0;
  }
  return g.empty() ? 0 : static_cast<int>(g.size()) - 1;
}

}  // namespace ballmap
