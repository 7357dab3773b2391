#include "ballmap/polyclass.hpp"

#include <cmath>

#include "ballmap/errors.hpp"
#include "ballmap/sampling.hpp"

namespace ballmap {

const char* poly_model_name(PolyModel m) {
  switch (m) {
    case PolyModel::Ball: return "Ball";
    case PolyModel::GeneralizedBall: return "GeneralizedBall";
    case PolyModel::Heisenberg: return "Heisenberg";
  }
  return "?";
}

int max_embed_dim(int n, int d) {
  if (n < 1 || d < 1)
    throw domain_error(errc::invalid_argument, "polyclass", "need n >= 1 and d >= 1");
  return binomial_dim(n, d) - 1;
}

namespace {

// components of a PSD part: for each kept eigenvalue, sqrt(lambda) times the
// eigenvector read as a coefficient vector
std::vector<CPoly> factor_components(const MonomialBasis& basis, const Eigen::MatrixXcd& A,
                                     double trunc) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  std::vector<CPoly> out;
  for (int i = static_cast<int>(A.rows()) - 1; i >= 0; --i) {
    double lam = es.eigenvalues()(i);
    if (lam <= trunc) break;
    CPoly c = CPoly::from_basis(basis, std::sqrt(lam) * es.eigenvectors().col(i));
    c.prune();
    out.push_back(c);
  }
  return out;
}

}  // namespace

PolyClassification classify_form(const HermForm& r, const ClassifyOptions& opts) {
  const int n = r.n();
  const int size = r.basis.size();
  const int N = size - 1;

  if (std::abs(r.C(0, 0) - 1.0) > 1e-10)
    throw domain_error(errc::invalid_argument, "polyclass", "form not normalized to r(0,0) = 1");
  auto [pos, neg, zero] = signature(r, opts.rank_tol);
  if (pos != 1 || zero != 0 || neg != N)
    throw domain_error(errc::not_maximal_embedding, "polyclass",
                       "embedding dimension below the maximum for this degree",
                       static_cast<double>(neg));

  const Eigen::MatrixXcd& C = r.C;
  double cscale = max_abs(C);
  Eigen::MatrixXcd Cinv = C.inverse();
  std::complex<double> t = Cinv(0, 0);

  PolyClassification cls;
  if (std::abs(t) <= opts.singular_tol * Cinv.norm()) {
    // det(C - gamma J) is constant: the mixed-term matrix is singular and
    // the map lands in the Heisenberg realization
    Eigen::MatrixXcd M = C;
    M -= C.col(0) * Eigen::RowVectorXcd::Unit(size, 0);
    M -= Eigen::VectorXcd::Unit(size, 0) * C.row(0);
    M(0, 0) += 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    double trunc = opts.rank_tol * cscale;
    int rank = 0;
    for (int i = 0; i < size; ++i) {
      double lam = es.eigenvalues()(i);
      if (lam > trunc)
        throw domain_error(errc::factorization_failure, "polyclass",
                           "mixed-term matrix has a positive eigenvalue", lam);
      if (lam < -trunc) ++rank;
    }
    if (rank != N - 1)
      throw domain_error(errc::factorization_failure, "polyclass",
                         "mixed-term matrix rank differs from N - 1",
                         static_cast<double>(rank));
    cls.model = PolyModel::Heisenberg;
    cls.Prep.n = n;
    cls.Prep.comps = factor_components(r.basis, -M, trunc);
    CPoly G = pure_part(r);
    G *= 2.0;
    G.add_coeff(std::vector<int>(n, 0), -1.0);
    cls.Grep = G;
  } else {
    double gamma = (1.0 / t).real();
    Eigen::MatrixXcd A = C;
    A(0, 0) -= gamma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    double trunc = opts.rank_tol * cscale;
    int apos = 0, aneg = 0;
    for (int i = 0; i < size; ++i) {
      double lam = es.eigenvalues()(i);
      if (lam > trunc) ++apos;
      if (lam < -trunc) ++aneg;
    }
    if (gamma > 0.0) {
      if (apos != 0 || aneg != N)
        throw domain_error(errc::factorization_failure, "polyclass",
                           "C - gamma J is not negative of rank N",
                           static_cast<double>(apos));
      cls.model = PolyModel::Ball;
      cls.gamma = gamma;
      cls.Prep.n = n;
      cls.Prep.comps = factor_components(r.basis, -A, trunc);
      double root = std::sqrt(gamma);
      for (auto& c : cls.Prep.comps) c *= 1.0 / root;
    } else {
      if (apos != 1 || aneg != N - 1)
        throw domain_error(errc::factorization_failure, "polyclass",
                           "C - gamma J is not of signature (1, N - 1)",
                           static_cast<double>(apos));
      cls.model = PolyModel::GeneralizedBall;
      cls.gamma = gamma;
      cls.Prep.n = n;
      cls.Prep.comps = factor_components(r.basis, -A, trunc);
      std::vector<CPoly> plus = factor_components(r.basis, A, trunc);
      cls.Grep = plus.at(0);
    }
  }
  cls.residual = verify_representative(cls, r, opts.samples_per_dim, opts.seed);
  return cls;
}

PolyClassification classify_poly_equiv(const RationalBallMap& f, const ClassifyOptions& opts) {
  return classify_form(underlying_form(f), opts);
}

double verify_representative(const PolyClassification& cls, const HermForm& r,
                             int samples_per_dim, unsigned seed) {
  const int n = r.n();
  auto pts = sphere_points(n, samples_per_dim * n, seed);
  double worst = 0.0;
  for (const auto& z : pts) {
    double rv = herm_eval(r, z);
    double lhs = 0.0;
    double pn = cls.Prep.eval(z).squaredNorm();
    switch (cls.model) {
      case PolyModel::Ball:
        lhs = *cls.gamma * (1.0 - pn);
        break;
      case PolyModel::GeneralizedBall:
        lhs = std::norm(cls.Grep->eval(z)) + *cls.gamma - pn;
        break;
      case PolyModel::Heisenberg:
        lhs = cls.Grep->eval(z).real() - pn;
        break;
    }
    worst = std::max(worst, std::abs(lhs - rv));
  }
  return worst;
}

}  // namespace ballmap
