#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ballmap/automorphism.hpp"
#include "ballmap/ball_map.hpp"
#include "ballmap/existence.hpp"
#include "ballmap/normal_form.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ballmap;

namespace {

Eigen::MatrixXcd random_symmetric(int m, std::mt19937& gen) {
  Eigen::MatrixXcd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = fixtures::cgauss(gen);
  return A + A.transpose().eval();
}

void check_takagi(const Eigen::MatrixXcd& C, double scale_tol = 1e-12) {
  TakagiResult t = takagi(C);
  int m = static_cast<int>(C.rows());
  double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
  CHECK((t.V * t.V.adjoint() - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXcd D = t.V.transpose() * C * t.V;
  for (int i = 0; i < m; ++i) {
    CHECK(t.sigma(i) >= 0.0);
    if (i) CHECK(t.sigma(i) >= t.sigma(i - 1));
    CHECK(std::abs(D(i, i) - cd(t.sigma(i))) < scale_tol * scale);
    for (int j = 0; j < m; ++j)
      if (i != j) CHECK(std::abs(D(i, j)) < scale_tol * scale);
  }
  Eigen::VectorXd sv = oracles::singular_values_ascending(C);
  CHECK((t.sigma - sv).cwiseAbs().maxCoeff() < 1e-11 * scale);
}

}  // namespace

TEST_CASE("quadratic coefficient matrix") {
  CPoly G(2);
  G.set_coeff({0, 0}, 1.0);
  G.set_coeff({2, 0}, 2.0);
  G.set_coeff({1, 1}, cd(3.0, 1.0));
  G.set_coeff({0, 2}, 1.0);
  G.set_coeff({1, 0}, 7.0);  // linear terms do not enter
  Eigen::MatrixXcd Q = quadratic_matrix(G);
  CHECK(std::abs(Q(0, 0) - cd(2.0)) < 1e-15);
  CHECK(std::abs(Q(1, 1) - cd(1.0)) < 1e-15);
  CHECK(std::abs(Q(0, 1) - cd(1.5, 0.5)) < 1e-15);
  CHECK(std::abs(Q(1, 0) - Q(0, 1)) < 1e-15);
}

TEST_CASE("takagi on random symmetric matrices") {
  std::mt19937 gen(61);
  for (int m = 1; m <= 6; ++m)
    for (int rep = 0; rep < 30; ++rep) check_takagi(random_symmetric(m, gen));
}

TEST_CASE("takagi with clustered and vanishing singular values") {
  std::mt19937 gen(62);
  for (auto sig : {std::vector<double>{1, 1}, {2, 2, 2}, {0, 0, 1}, {0, 0, 0},
                   {0.5, 0.5, 0.5 + 1e-13, 3}, {1e-15, 2, 2}}) {
    int m = static_cast<int>(sig.size());
    Eigen::MatrixXcd U = fixtures::random_unitary(m, gen);
    Eigen::VectorXd s = Eigen::Map<Eigen::VectorXd>(sig.data(), m);
    Eigen::MatrixXcd C = U * s.asDiagonal() * U.transpose();
    check_takagi(C);
    TakagiResult t = takagi(C);
    Eigen::VectorXd sorted = s;
    std::sort(sorted.data(), sorted.data() + m);
    CHECK((t.sigma - sorted).cwiseAbs().maxCoeff() < 1e-11 * std::max(1.0, sorted.maxCoeff()));
  }
  check_takagi(Eigen::MatrixXcd::Zero(4, 4));
  Eigen::MatrixXcd one(1, 1);
  one << cd(0.0, -2.0);
  check_takagi(one);
}

TEST_CASE("takagi survives adversarial scaling") {
  std::mt19937 gen(63);
  for (double scale : {1e-8, 1e8}) {
    Eigen::MatrixXcd C = scale * random_symmetric(4, gen);
    check_takagi(C);
  }
}

TEST_CASE("echelon reduction is unitary and idempotent") {
  std::mt19937 gen(64);
  RationalBallMap f = fixtures::random_valid_fixture(2, 2, 17);
  EchelonResult e = echelon_unitary(f.p);
  int N = f.N();
  CHECK(e.unique);
  CHECK((e.U * e.U.adjoint() - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-12);

  // rows of the coefficient matrix are in echelon form with positive pivots
  MonomialBasis basis(f.n(), f.p.degree());
  Eigen::MatrixXcd rows(N, basis.size());
  for (int i = 0; i < N; ++i) rows.row(i) = e.P.comps[i].on_basis(basis).transpose();
  int prev_pivot = 0;  // column 0 is the constant, excluded from pivots
  for (int i = 0; i < N; ++i) {
    int piv = -1;
    for (int j = 1; j < basis.size(); ++j)
      if (std::abs(rows(i, j)) > 1e-9) {
        piv = j;
        break;
      }
    REQUIRE(piv > prev_pivot);
    CHECK(rows(i, piv).imag() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rows(i, piv).real() > 0.0);
    for (int k = i + 1; k < N; ++k) CHECK(std::abs(rows(k, piv)) < 1e-10);
    prev_pivot = piv;
  }

  // applying U to the input reproduces P, and P is already reduced
  PolyMap rotated{f.n(), std::vector<CPoly>(N, CPoly(f.n()))};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) rotated.comps[i] += f.p.comps[j] * e.U(i, j);
  CHECK(fixtures::coeff_distance(rotated, e.P) < 1e-12);
  EchelonResult e2 = echelon_unitary(e.P);
  CHECK(fixtures::coeff_distance(e2.P, e.P) < 1e-11);

  // duplicated components drop the rank and the uniqueness flag
  PolyMap dup{1, {CPoly::variable(1, 0), CPoly::variable(1, 0)}};
  CHECK_FALSE(echelon_unitary(dup).unique);
}

TEST_CASE("reference maps normalize to themselves") {
  for (double s : {0.1, 0.5, 0.9}) {
    RationalBallMap f = fixtures::blaschke_sigma(s);
    NormalForm nf = normalize(f);
    REQUIRE(nf.sigma.size() == 1);
    CHECK(nf.sigma(0) == doctest::Approx(s).epsilon(1e-10));
    CHECK(nf.alpha.norm() < 1e-9);
    CHECK(fixtures::coeff_distance(nf.P, f.p) < 1e-9);
    CHECK(fixtures::coeff_distance(nf.G, f.g) < 1e-9);
    for (const auto& [key, val] : nf.residuals)
      if (key != "echelon_unique" && key != "solver_iterations") CHECK(val < 1e-8);
    CHECK(nf.residuals.at("echelon_unique") == 1.0);
  }
}

TEST_CASE("normalization strips source and target automorphisms") {
  for (double s : {0.25, 0.75}) {
    RationalBallMap f = fixtures::blaschke_sigma(s);
    for (unsigned seed = 1; seed <= 4; ++seed) {
      RationalBallMap dressed = precompose(f, fixtures::random_automorphism(1, 100 + seed, 0.6));
      dressed = fixtures::random_postcompose(dressed, 200 + seed, 0.5);
      NormalForm nf = normalize(dressed);
      REQUIRE(nf.sigma.size() == 1);
      CHECK(nf.sigma(0) == doctest::Approx(s).epsilon(1e-8));
      CHECK(fixtures::coeff_distance(nf.P, f.p) < 1e-7);
      CHECK(fixtures::coeff_distance(nf.G, f.g) < 1e-7);
    }
  }
}

TEST_CASE("degree two maps have constant denominator and zero invariants") {
  for (auto [n, seed] : {std::pair<int, unsigned>{1, 301u}, {2, 302u}}) {
    RationalBallMap dressed = fixtures::random_valid_fixture(n, 2, seed);
    NormalForm nf = normalize(dressed);
    CHECK(nf.sigma.cwiseAbs().maxCoeff() < 1e-9);
    CPoly g = nf.G;
    g.add_coeff(std::vector<int>(n, 0), -1.0);
    CHECK(g.max_abs_coeff() < 1e-9);
  }
}

TEST_CASE("degree one maps normalize without a solver") {
  RationalBallMap f = fixtures::homogeneous_map(2, 1);
  RationalBallMap dressed = precompose(f, fixtures::random_automorphism(2, 9, 0.5));
  NormalForm nf = normalize(dressed);
  CHECK(nf.alpha.norm() == 0.0);
  CHECK(nf.sigma.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fixtures::coeff_distance(nf.P, f.p) < 1e-10);
}

TEST_CASE("normalization is idempotent") {
  RationalBallMap f = fixtures::random_valid_fixture(2, 2, 18);
  NormalForm nf = normalize(f);
  NormalForm again = normalize(make_map(nf.P, nf.G));
  CHECK((nf.sigma - again.sigma).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(fixtures::coeff_distance(nf.P, again.P) < 1e-8);
  CHECK(fixtures::coeff_distance(nf.G, again.G) < 1e-8);
}

TEST_CASE("invariants shortcut matches the full pipeline") {
  RationalBallMap f = fixtures::blaschke_sigma(0.3);
  Eigen::VectorXd sig = invariants(f);
  REQUIRE(sig.size() == 1);
  CHECK(sig(0) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("equivalence detects dressed copies of one map") {
  RationalBallMap f = fixtures::blaschke_sigma(0.35);
  RationalBallMap g1 = fixtures::random_postcompose(
      precompose(f, fixtures::random_automorphism(1, 501, 0.6)), 502, 0.5);
  RationalBallMap g2 = fixtures::random_postcompose(
      precompose(f, fixtures::random_automorphism(1, 503, 0.6)), 504, 0.5);
  EquivalenceVerdict v = spherically_equivalent(g1, g2);
  REQUIRE(v.status == Equivalence::Equivalent);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->residual < 1e-8);
}

TEST_CASE("equivalence separates different invariants") {
  EquivalenceVerdict v =
      spherically_equivalent(fixtures::blaschke_sigma(0.3), fixtures::blaschke_sigma(0.31));
  CHECK(v.status == Equivalence::Inequivalent);
  CHECK(v.reason == "spherical invariants differ");

  EquivalenceVerdict vd =
      spherically_equivalent(fixtures::blaschke_sigma(0.3), fixtures::homogeneous_map(1, 2));
  CHECK(vd.status == Equivalence::Inequivalent);

  EquivalenceVerdict vn =
      spherically_equivalent(fixtures::homogeneous_map(1, 2), fixtures::homogeneous_map(2, 2));
  CHECK(vn.status == Equivalence::Inequivalent);
}

TEST_CASE("zero invariants still certify homogeneous dressings") {
  RationalBallMap f = fixtures::homogeneous_map(2, 2);
  RationalBallMap g = fixtures::random_postcompose(
      precompose(f, fixtures::random_automorphism(2, 601, 0.5)), 602, 0.4);
  EquivalenceVerdict v = spherically_equivalent(f, g);
  REQUIRE(v.status == Equivalence::Equivalent);
  CHECK(v.witness->residual < 1e-7);
}

TEST_CASE("tied invariants outside the tested stabilizer stay inconclusive") {
  ExistenceResult ex = feasibility_search((Eigen::VectorXd(2) << 0.5, 0.5).finished());
  REQUIRE(ex.feasible);
  RationalBallMap F = *ex.map;
  double c = std::cos(0.6), s = std::sin(0.6);
  Eigen::MatrixXcd W(2, 2);
  W << c, -s, s, c;
  RationalBallMap rotated = precompose(F, make_automorphism(Eigen::VectorXcd::Zero(2), W));
  EquivalenceVerdict v = spherically_equivalent(F, rotated);
  CHECK(v.status != Equivalence::Inequivalent);
}
