#include "ballmap/existence.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ballmap/errors.hpp"
#include "ballmap/sampling.hpp"

namespace ballmap {

const char* existence_status_name(ExistenceStatus s) {
  switch (s) {
    case ExistenceStatus::Feasible: return "Feasible";
    case ExistenceStatus::InfeasibleConstruction: return "InfeasibleConstruction";
    case ExistenceStatus::NoConvergence: return "NoConvergence";
  }
  return "?";
}

namespace {

void check_sigma(const Eigen::VectorXd& sigma, bool ascending) {
  if (sigma.size() < 1)
    throw domain_error(errc::invalid_argument, "existence", "sigma must be nonempty");
  for (int k = 0; k < sigma.size(); ++k) {
    if (!(sigma(k) >= 0.0))
      throw domain_error(errc::invalid_argument, "existence", "sigma entries must be nonnegative");
    if (ascending && k > 0 && sigma(k) < sigma(k - 1))
      throw domain_error(errc::invalid_argument, "existence", "sigma must be ascending");
  }
}

double multinomial(int m, const std::vector<int>& beta) {
  static const double fact[] = {1, 1, 2, 6};
  double out = fact[m];
  for (int b : beta) out /= fact[b];
  return out;
}

CPoly denominator_poly(const Eigen::VectorXd& sigma) {
  const int n = static_cast<int>(sigma.size());
  CPoly g = CPoly::constant(n, 1.0);
  for (int k = 0; k < n; ++k) {
    std::vector<int> e(n, 0);
    e[k] = 2;
    g.add_coeff(e, sigma(k));
  }
  return g;
}

// numerator components from the positive part of F, constant entries pinned
// to zero
std::vector<CPoly> extract_numerator(const MonomialBasis& basis, const Eigen::MatrixXcd& F,
                                     double trunc, int n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F);
  std::vector<CPoly> comps;
  for (int i = static_cast<int>(F.rows()) - 1; i >= 0; --i) {
    double lam = es.eigenvalues()(i);
    if (lam <= trunc) break;
    CPoly c = CPoly::from_basis(basis, std::sqrt(lam) * es.eigenvectors().col(i));
    c.set_coeff(std::vector<int>(n, 0), 0.0);
    c.prune();
    comps.push_back(c);
  }
  return comps;
}

// feasible wrap-up shared by both construction paths: build p/g, check the
// form has full rank (lowest terms), measure properness on the sphere
ExistenceResult finish_feasible(const Eigen::VectorXd& sigma, const MonomialBasis& basis,
                                const Eigen::MatrixXcd& F, double min_eig, int iterations) {
  const int n = static_cast<int>(sigma.size());
  double tscale = std::max({1.0, F.trace().real(), max_abs(F)});
  ExistenceResult out;
  out.status = ExistenceStatus::Feasible;
  out.feasible = true;
  out.min_eig = min_eig;
  out.iterations = iterations;

  PolyMap p;
  p.n = n;
  p.comps = extract_numerator(basis, F, 1e-11 * tscale, n);
  RationalBallMap f = make_map(p, denominator_poly(sigma));
  HermForm r = underlying_form(f);
  auto [pos, neg, zero] = signature(r);
  if (zero > 0)
    out.note = "coefficient matrix of the form is rank deficient; the numerator "
               "may share a factor with the denominator";
  (void)pos;
  (void)neg;

  double worst = 0.0;
  for (const auto& z : sphere_points(n, 1000 * n, 0)) {
    Eigen::VectorXcd pv = f.p.eval(z);
    std::complex<double> gv = f.g.eval(z);
    worst = std::max(worst, std::abs(pv.norm() / std::abs(gv) - 1.0));
  }
  out.residual = worst;
  out.map = std::move(f);
  return out;
}

}  // namespace

HermForm construct_base_form(const Eigen::VectorXd& sigma) {
  check_sigma(sigma, false);
  const int n = static_cast<int>(sigma.size());
  MonomialBasis basis = monomial_basis(n, 3);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  C(0, 0) = 1.0;

  // -(1/3) |z|^(2m) expands to multinomial weights on the diagonal
  for (int i = 0; i < basis.size(); ++i) {
    int m = basis.degree(i);
    if (m >= 1) C(i, i) -= multinomial(m, basis.exponents(i)) / 3.0;
  }

  // sigma_k (z_k^2 + zbar_k^2)(1 - |z|^2)
  for (int k = 0; k < n; ++k) {
    if (sigma(k) == 0.0) continue;
    std::vector<int> e2(n, 0);
    e2[k] = 2;
    int i2 = basis.index_of(e2);
    C(i2, 0) += sigma(k);
    C(0, i2) += sigma(k);
    for (int i = 0; i < n; ++i) {
      std::vector<int> a = e2, b(n, 0);
      a[i] += 1;
      b[i] = 1;
      int ia = basis.index_of(a), ib = basis.index_of(b);
      C(ia, ib) -= sigma(k);
      C(ib, ia) -= sigma(k);
    }
  }
  return make_herm_form(std::move(basis), C);
}

ExistenceResult degree3_numerator(const Eigen::VectorXd& sigma) {
  check_sigma(sigma, true);
  HermForm r = construct_base_form(sigma);
  CPoly g = denominator_poly(sigma);
  Eigen::MatrixXcd F = outer_on_basis(g, r.basis) - r.C;

  double tscale = std::max({1.0, F.trace().real(), max_abs(F)});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F);
  double min_eig = es.eigenvalues()(0);
  if (min_eig < -1e-11 * tscale) {
    ExistenceResult out;
    out.status = ExistenceStatus::InfeasibleConstruction;
    out.feasible = false;
    out.min_eig = min_eig;
    out.residual = 0.0;
    out.iterations = 0;
    out.note = "the base form is not a sum of squares for this sigma";
    return out;
  }
  return finish_feasible(sigma, r.basis, F, min_eig, 0);
}

ExistenceResult feasibility_search(const Eigen::VectorXd& sigma, int max_iter) {
  check_sigma(sigma, true);
  const int n = static_cast<int>(sigma.size());
  if (sigma.maxCoeff() >= 1.0)
    throw domain_error(errc::invalid_argument, "existence",
                       "denominator vanishes on the closed ball for sigma >= 1");

  MonomialBasis b3 = monomial_basis(n, 3);
  MonomialBasis b2 = monomial_basis(n, 2);
  const int M3 = b3.size();
  const int M2 = b2.size();
  CPoly g = denominator_poly(sigma);

  // multiplication by 1 - |z|^2 as a linear map on quotient matrices
  auto mul_sphere = [&](const Eigen::MatrixXcd& q) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(M3, M3);
    for (int a = 0; a < M3; ++a) {
      for (int b = 0; b < M3; ++b) {
        std::complex<double> acc = 0.0;
        if (b3.degree(a) <= 2 && b3.degree(b) <= 2)
          acc += q(b2.index_of(b3.exponents(a)), b2.index_of(b3.exponents(b)));
        for (int k = 0; k < n; ++k) {
          int da = b3.down(a, k), db = b3.down(b, k);
          if (da >= 0 && db >= 0) acc -= q(b2.index_of(b3.exponents(da)), b2.index_of(b3.exponents(db)));
        }
        out(a, b) = acc;
      }
    }
    return out;
  };

  // pinned part: column 0 of q is forced to the coefficients of g so the
  // mixed residual keeps zero pure rows
  Eigen::VectorXcd g2 = g.on_basis(b2);
  Eigen::MatrixXcd qpin = Eigen::MatrixXcd::Zero(M2, M2);
  qpin.col(0) = g2;
  qpin.row(0) = g2.adjoint();
  qpin(0, 0) = 1.0;

  // Hermitian basis of the free block (rows and columns 1..M2-1)
  std::vector<Eigen::MatrixXcd> dirs;
  for (int i = 1; i < M2; ++i) {
    for (int j = i; j < M2; ++j) {
      Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(M2, M2);
      if (i == j) {
        E(i, i) = 1.0;
        dirs.push_back(E);
      } else {
        E(i, j) = 1.0;
        E(j, i) = 1.0;
        dirs.push_back(E);
        E(i, j) = std::complex<double>(0.0, 1.0);
        E(j, i) = std::complex<double>(0.0, -1.0);
        dirs.push_back(E);
      }
    }
  }
  const int K = static_cast<int>(dirs.size());
  std::vector<Eigen::MatrixXcd> images(K);
  for (int k = 0; k < K; ++k) images[k] = mul_sphere(dirs[k]);
  Eigen::MatrixXd gram(K, K);
  for (int k = 0; k < K; ++k)
    for (int l = k; l < K; ++l) {
      double v = (images[k].adjoint() * images[l]).trace().real();
      gram(k, l) = v;
      gram(l, k) = v;
    }
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt(gram);

  Eigen::VectorXcd v3 = g.on_basis(b3);
  Eigen::MatrixXcd A0 = v3 * v3.adjoint() - mul_sphere(qpin);
  double scale = std::max(1.0, max_abs(v3 * v3.adjoint()));

  // every matrix in the affine family kills the constant direction, so the
  // cone steps act on the trailing block; the margin eps pushes the iterate
  // toward the relative interior and shrinks whenever progress stalls, which
  // steers the limit away from rank-deficient numerators that would share a
  // factor with g
  const double accept = 1e-11 * scale;
  double eps = 0.1 * scale;
  Eigen::MatrixXcd X = A0;
  double min_eig = 0.0;
  double prev_dist = std::numeric_limits<double>::infinity();
  int stalled = 0;
  int iter = 0;
  bool ok = false;
  for (; iter < max_iter; ++iter) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X.block(1, 1, M3 - 1, M3 - 1));
    min_eig = es.eigenvalues()(0);
    if (min_eig >= 0.5 * eps - accept) {
      ok = true;
      break;
    }
    Eigen::VectorXd lifted = es.eigenvalues().cwiseMax(eps);
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(M3, M3);
    Y.block(1, 1, M3 - 1, M3 - 1) =
        es.eigenvectors() * lifted.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::VectorXd rhs(K);
    Eigen::MatrixXcd diff = A0 - Y;
    for (int k = 0; k < K; ++k) rhs(k) = (images[k].adjoint() * diff).trace().real();
    Eigen::VectorXd c = gram_ldlt.solve(rhs);
    X = A0;
    for (int k = 0; k < K; ++k) X -= c(k) * images[k];

    double dist = (X - Y).norm();
    if (dist >= prev_dist * (1.0 - 1e-7)) {
      if (++stalled >= 60) {
        eps = eps < 1e-12 * scale ? 0.0 : 0.25 * eps;
        stalled = 0;
        prev_dist = std::numeric_limits<double>::infinity();
      }
    } else {
      stalled = 0;
    }
    prev_dist = std::min(prev_dist, dist);
  }

  if (!ok) {
    ExistenceResult out;
    out.status = ExistenceStatus::NoConvergence;
    out.feasible = false;
    out.min_eig = min_eig;
    out.residual = 0.0;
    out.iterations = iter;
    out.note = "projection iteration did not reach the semidefinite cone; no "
               "infeasibility is certified";
    return out;
  }
  return finish_feasible(sigma, b3, X, min_eig, iter);
}

}  // namespace ballmap
