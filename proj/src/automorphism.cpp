#include "ballmap/automorphism.hpp"

#include <cmath>

#include "ballmap/errors.hpp"

namespace ballmap {

BallAutomorphism make_automorphism(const Eigen::VectorXcd& alpha, const Eigen::MatrixXcd& U) {
  const int n = static_cast<int>(alpha.size());
  if (alpha.norm() >= 1.0)
    throw domain_error(errc::invalid_argument, "automorphisms", "center must lie inside the ball");
  if (U.rows() != n || U.cols() != n)
    throw domain_error(errc::dimension_mismatch, "automorphisms", "unitary factor has wrong shape");
  double dev = (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > 1e-10)
    throw domain_error(errc::invalid_argument, "automorphisms", "factor is not unitary", dev);
  return BallAutomorphism{alpha, U};
}

BallAutomorphism phi(const Eigen::VectorXcd& alpha) {
  return make_automorphism(alpha, Eigen::MatrixXcd::Identity(alpha.size(), alpha.size()));
}

Eigen::MatrixXcd l_matrix(const Eigen::VectorXcd& alpha) {
  const int n = static_cast<int>(alpha.size());
  double na2 = alpha.squaredNorm();
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(n, n);
  if (na2 == 0.0) return L;
  double s = std::sqrt(1.0 - na2);
  L *= s;
  L += ((1.0 - s) / na2) * (alpha * alpha.adjoint());
  return L;
}

Eigen::VectorXcd aut_apply(const BallAutomorphism& psi, const Eigen::VectorXcd& z) {
  std::complex<double> den = 1.0 - psi.alpha.dot(z);
  Eigen::VectorXcd num = psi.alpha - l_matrix(psi.alpha) * z;
  return psi.U * (num / den);
}

namespace {

// h(B(z)/delta(z)) * delta(z)^power for an affine B and affine delta
CPoly compose_cleared(const CPoly& h, const Eigen::VectorXcd& b0, const Eigen::MatrixXcd& A,
                      const CPoly& delta, int power) {
  const int n = h.n();
  if (h.degree() > power)
    throw domain_error(errc::invalid_argument, "automorphisms", "clearing power below degree");
  std::vector<CPoly> B;
  B.reserve(n);
  for (int k = 0; k < n; ++k) {
    CPoly bk = CPoly::constant(n, b0(k));
    for (int l = 0; l < n; ++l) {
      std::vector<int> e(n, 0);
      e[l] = 1;
      bk.add_coeff(e, A(k, l));
    }
    B.push_back(bk);
  }
  std::vector<CPoly> dpow(power + 1);
  dpow[0] = CPoly::constant(n, 1.0);
  for (int i = 1; i <= power; ++i) dpow[i] = dpow[i - 1] * delta;

  CPoly out(n);
  for (const auto& [e, c] : h.terms()) {
    int deg = 0;
    for (int x : e) deg += x;
    CPoly term = CPoly::constant(n, c);
    for (int k = 0; k < n; ++k)
      if (e[k] > 0) term = term * pow(B[k], e[k]);
    out += term * dpow[power - deg];
  }
  return out;
}

CPoly denominator_factor(const Eigen::VectorXcd& alpha) {
  const int n = static_cast<int>(alpha.size());
  CPoly delta = CPoly::constant(n, 1.0);
  for (int l = 0; l < n; ++l) {
    std::vector<int> e(n, 0);
    e[l] = 1;
    delta.add_coeff(e, -std::conj(alpha(l)));
  }
  return delta;
}

}  // namespace

RationalBallMap precompose(const RationalBallMap& f, const BallAutomorphism& psi) {
  if (psi.n() != f.n())
    throw domain_error(errc::dimension_mismatch, "automorphisms", "automorphism dimension mismatch");
  const int d = f.degree();
  Eigen::MatrixXcd L = l_matrix(psi.alpha);
  Eigen::VectorXcd b0 = psi.U * psi.alpha;
  Eigen::MatrixXcd A = -psi.U * L;
  CPoly delta = denominator_factor(psi.alpha);

  PolyMap p2;
  p2.n = f.n();
  for (const auto& comp : f.p.comps) p2.comps.push_back(compose_cleared(comp, b0, A, delta, d));
  CPoly g2 = compose_cleared(f.g, b0, A, delta, d);

  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(f.n());
  double c = std::norm(g2.eval(zero)) - p2.eval(zero).squaredNorm();
  if (c <= 0.0)
    throw domain_error(errc::validation_failed, "automorphisms",
                       "composed map does not send 0 into the ball", c);
  double s = 1.0 / std::sqrt(c);
  for (auto& comp : p2.comps) comp *= s;
  g2 *= s;
  p2.prune();
  g2.prune();
  return make_map(std::move(p2), std::move(g2));
}

HermForm pullback_form(const HermForm& r, const Eigen::VectorXcd& alpha, int d) {
  if (static_cast<int>(alpha.size()) != r.n())
    throw domain_error(errc::dimension_mismatch, "automorphisms", "pullback dimension mismatch");
  if (alpha.norm() >= 1.0)
    throw domain_error(errc::invalid_argument, "automorphisms", "pullback center outside the ball");
  double ralpha = herm_eval(r, alpha);
  if (ralpha <= 0.0)
    throw domain_error(errc::invalid_argument, "automorphisms", "form not positive at the center",
                       ralpha);

  Eigen::MatrixXcd L = l_matrix(alpha);
  CPoly delta = denominator_factor(alpha);
  SquaresDecomp dec = decompose_squares(r);

  MonomialBasis basis(r.n(), d);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& h : dec.plus) C += outer_on_basis(compose_cleared(h, alpha, -L, delta, d), basis);
  for (const auto& h : dec.minus) C -= outer_on_basis(compose_cleared(h, alpha, -L, delta, d), basis);
  C /= ralpha;
  C /= C(0, 0).real();
  return make_herm_form(std::move(basis), C);
}

}  // namespace ballmap
