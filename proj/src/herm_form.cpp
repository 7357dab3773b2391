#include "ballmap/herm_form.hpp"

#include <cmath>

#include "ballmap/errors.hpp"

namespace ballmap {

double max_abs(const Eigen::MatrixXcd& C) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < C.cols(); ++j)
    for (Eigen::Index i = 0; i < C.rows(); ++i) m = std::max(m, std::abs(C(i, j)));
  return m;
}

HermForm make_herm_form(MonomialBasis basis, const Eigen::MatrixXcd& C, double herm_tol) {
  if (C.rows() != basis.size() || C.cols() != basis.size())
    throw domain_error(errc::dimension_mismatch, "core", "coefficient matrix does not match basis");
  double scale = std::max(1.0, max_abs(C));
  double asym = max_abs(C - C.adjoint());
  if (asym > herm_tol * scale)
    throw domain_error(errc::hermiticity_violation, "core", "coefficient matrix is not Hermitian",
                       asym / scale);
  HermForm r;
  r.basis = std::move(basis);
  r.C = 0.5 * (C + C.adjoint());
  return r;
}

double herm_eval(const HermForm& r, const Eigen::VectorXcd& z) {
  Eigen::VectorXcd m = r.basis.monomials(z);
  Eigen::VectorXcd u = r.C * m.conjugate();
  std::complex<double> v = m.transpose() * u;
  return v.real();
}

HermDerivs herm_eval_derivs(const HermForm& r, const Eigen::VectorXcd& z) {
  const int n = r.n();
  const int M = r.basis.size();
  Eigen::VectorXcd m = r.basis.monomials(z);
  Eigen::MatrixXcd J = r.basis.monomial_jacobian(z);
  Eigen::VectorXcd u = r.C * m.conjugate();

  HermDerivs out;
  out.value = (m.transpose() * u)(0).real();
  out.dz = J.transpose() * u;
  out.dzdzb = J.transpose() * (r.C * J.conjugate());

  out.dzz = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < M; ++i) {
        const auto& e = r.basis.exponents(i);
        double cjk = (j == k) ? static_cast<double>(e[j]) * (e[j] - 1)
                              : static_cast<double>(e[j]) * e[k];
        if (cjk == 0.0) continue;
        int a = r.basis.down(i, j);
        int b = r.basis.down(a, k);
        acc += cjk * m(b) * u(i);
      }
      out.dzz(j, k) = acc;
      out.dzz(k, j) = acc;
    }
  }
  return out;
}

HermForm divide_by_sphere(const HermForm& r, double tol) {
  const int d = r.bidegree();
  if (d < 1)
    throw domain_error(errc::not_divisible, "core", "constant form is not divisible by the sphere");
  const int n = r.n();
  MonomialBasis qb(n, d - 1);
  const int Mq = qb.size();
  const int M = r.basis.size();

  // the low-degree block of the graded basis for degree d is the basis for
  // degree d-1, so q and r share indices below Mq
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(Mq, Mq);
  for (int a = 0; a < Mq; ++a) {
    for (int b = 0; b < Mq; ++b) {
      std::complex<double> acc = r.C(a, b);
      for (int k = 0; k < n; ++k) {
        int da = qb.down(a, k), db = qb.down(b, k);
        if (da >= 0 && db >= 0) acc += Q(da, db);
      }
      Q(a, b) = acc;
    }
  }

  double scale = std::max(1.0, max_abs(r.C));
  double worst = 0.0;
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      if (r.basis.degree(i) < d && r.basis.degree(j) < d) continue;
      std::complex<double> acc = r.C(i, j);
      for (int k = 0; k < n; ++k) {
        int di = r.basis.down(i, k), dj = r.basis.down(j, k);
        if (di >= 0 && dj >= 0) acc += Q(di, dj);
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  if (worst >= tol * scale)
    throw domain_error(errc::not_divisible, "core", "form is not divisible by 1 - |z|^2",
                       worst / scale);
  return make_herm_form(std::move(qb), Q);
}

std::tuple<int, int, int> signature(const HermForm& r, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.C, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0, zero = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (scale == 0.0 || std::abs(ev(i)) < tol * scale)
      ++zero;
    else if (ev(i) > 0)
      ++pos;
    else
      ++neg;
  }
  return {pos, neg, zero};
}

CPoly pure_part(const HermForm& r) {
  return CPoly::from_basis(r.basis, r.C.col(0));
}

std::pair<PolyMap, CPoly> origin_representative(const HermForm& r, double rank_tol,
                                                double recon_tol) {
  if (std::abs(r.C(0, 0) - 1.0) > 1e-10)
    throw domain_error(errc::invalid_argument, "core", "form is not scaled to r(0,0) = 1");
  CPoly G = pure_part(r);
  Eigen::VectorXcd v = G.on_basis(r.basis);
  Eigen::MatrixXcd mixed = v * v.adjoint() - r.C;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mixed);
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  PolyMap P;
  P.n = r.n();
  Eigen::MatrixXcd kept = Eigen::MatrixXcd::Zero(r.basis.size(), 0);
  std::vector<double> lams;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    double lam = ev(i);
    if (lam < -rank_tol * scale)
      throw domain_error(errc::factorization_failure, "core",
                         "form does not have exactly one positive square", -lam / scale);
    if (lam < rank_tol * scale) continue;
    Eigen::VectorXcd u = std::sqrt(lam) * es.eigenvectors().col(i);
    u(0) = 0.0;  // mixed part has no constant; kill roundoff in the pure slot
    CPoly comp = CPoly::from_basis(r.basis, u);
    comp.prune();
    P.comps.push_back(comp);
    kept.conservativeResize(Eigen::NoChange, kept.cols() + 1);
    kept.col(kept.cols() - 1) = u;
    lams.push_back(lam);
  }

  double resid = max_abs(v * v.adjoint() - kept * kept.adjoint() - r.C) / std::max(1.0, max_abs(r.C));
  if (resid >= recon_tol)
    throw domain_error(errc::factorization_failure, "core",
                       "pure/mixed factorization residual too large", resid);
  return {P, G};
}

SquaresDecomp decompose_squares(const HermForm& r, double drop_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.C);
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  SquaresDecomp out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < drop_tol * scale) continue;
    Eigen::VectorXcd u = std::sqrt(std::abs(ev(i))) * es.eigenvectors().col(i);
    CPoly h = CPoly::from_basis(r.basis, u);
    (ev(i) > 0 ? out.plus : out.minus).push_back(h);
  }
  return out;
}

Eigen::MatrixXcd outer_on_basis(const CPoly& h, const MonomialBasis& basis) {
  Eigen::VectorXcd v = h.on_basis(basis);
  return v * v.adjoint();
}

}  // namespace ballmap
