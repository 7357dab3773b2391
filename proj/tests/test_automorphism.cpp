#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ballmap/automorphism.hpp"
#include "ballmap/ball_map.hpp"
#include "ballmap/errors.hpp"
#include "ballmap/sampling.hpp"
#include "support/fixtures.hpp"

using namespace ballmap;

TEST_CASE("linear factor fixes alpha and scales its complement") {
  std::mt19937 gen(21);
  for (int n : {1, 2, 3}) {
    Eigen::VectorXcd a = fixtures::random_center(n, gen, 0.8);
    double s = std::sqrt(1.0 - a.squaredNorm());
    Eigen::MatrixXcd L = l_matrix(a);
    CHECK((L * a - a).norm() < 1e-13);
    if (n > 1) {
      Eigen::VectorXcd v = fixtures::random_center(n, gen, 0.5);
      Eigen::VectorXcd perp = v - a * (a.dot(v) / a.squaredNorm());
      CHECK((L * perp - s * perp).norm() < 1e-12);
    }
  }
  CHECK((l_matrix(Eigen::VectorXcd::Zero(2)) - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("phi swaps the origin with its center and is an involution") {
  std::mt19937 gen(22);
  for (int n : {1, 2, 3}) {
    Eigen::VectorXcd a = fixtures::random_center(n, gen, 0.85);
    BallAutomorphism psi = phi(a);
    CHECK((aut_apply(psi, Eigen::VectorXcd::Zero(n)) - a).norm() < 1e-13);
    CHECK(aut_apply(psi, a).norm() < 1e-13);
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXcd z = fixtures::random_center(n, gen, 0.9);
      CHECK((aut_apply(psi, aut_apply(psi, z)) - z).norm() < 1e-11);
    }
  }
}

TEST_CASE("denominator identity on the ball") {
  // |1 - <z, a>|^2 - |a - L_a z|^2 = (1 - |a|^2)(1 - |z|^2)
  std::mt19937 gen(23);
  for (int n : {1, 2, 3}) {
    Eigen::VectorXcd a = fixtures::random_center(n, gen, 0.9);
    Eigen::MatrixXcd L = l_matrix(a);
    for (int t = 0; t < 25; ++t) {
      Eigen::VectorXcd z = fixtures::random_center(n, gen, 0.99);
      double lhs = std::norm(cd(1.0) - (a.adjoint() * z)(0)) - (a - L * z).squaredNorm();
      double rhs = (1.0 - a.squaredNorm()) * (1.0 - z.squaredNorm());
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("automorphisms preserve the sphere") {
  std::mt19937 gen(24);
  BallAutomorphism psi = fixtures::random_automorphism(2, 91, 0.8);
  for (const auto& z : sphere_points(2, 40)) CHECK(std::abs(aut_apply(psi, z).norm() - 1.0) < 1e-12);
}

TEST_CASE("constructor rejects bad data") {
  Eigen::VectorXcd big(1);
  big << 1.5;
  CHECK_THROWS_AS(make_automorphism(big, Eigen::MatrixXcd::Identity(1, 1)), domain_error);
  Eigen::VectorXcd ok(1);
  ok << 0.5;
  Eigen::MatrixXcd notU = 2.0 * Eigen::MatrixXcd::Identity(1, 1);
  CHECK_THROWS_AS(make_automorphism(ok, notU), domain_error);
}

TEST_CASE("precompose evaluates as composition and stays proper") {
  std::mt19937 gen(25);
  for (unsigned seed : {1u, 2u, 3u}) {
    RationalBallMap f = fixtures::homogeneous_map(2, 2);
    BallAutomorphism psi = fixtures::random_automorphism(2, seed, 0.7);
    RationalBallMap fp = precompose(f, psi);
    CHECK(fp.degree() == 2);
    for (int t = 0; t < 15; ++t) {
      Eigen::VectorXcd z = fixtures::random_center(2, gen, 0.8);
      CHECK((fp.eval(z) - f.eval(aut_apply(psi, z))).norm() < 1e-11);
    }
    CHECK(validate(fp).ok);
    HermForm r = underlying_form(fp);
    CHECK(std::abs(r.C(0, 0) - cd(1.0)) < 1e-12);
  }
}

TEST_CASE("precompose with phi at zero flips the sign of the argument") {
  RationalBallMap f = fixtures::blaschke_sigma(0.5);
  RationalBallMap flipped = precompose(f, phi(Eigen::VectorXcd::Zero(1)));
  // f(-z) = (0.5 (-z) + (-z)^3) / (1 + 0.5 z^2)
  CHECK(std::abs(flipped.p.comps[0].coeff({1}) + cd(0.5)) < 1e-13);
  CHECK(std::abs(flipped.p.comps[0].coeff({3}) + cd(1.0)) < 1e-13);
  CHECK(std::abs(flipped.g.coeff({2}) - cd(0.5)) < 1e-13);
}

TEST_CASE("pullback matches the pointwise transformation rule") {
  std::mt19937 gen(26);
  for (int n : {1, 2}) {
    RationalBallMap f = fixtures::random_valid_fixture(n, 2, 31 + n);
    HermForm r = underlying_form(f);
    int d = f.degree();
    Eigen::VectorXcd a = fixtures::random_center(n, gen, 0.6);
    HermForm R = pullback_form(r, a, d);
    CHECK(std::abs(R.C(0, 0) - cd(1.0)) < 1e-11);
    double ra = herm_eval(r, a);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXcd z = fixtures::random_center(n, gen, 0.9);
      cd den = cd(1.0) - (a.adjoint() * z)(0);
      double expect = std::pow(std::norm(den), d) * herm_eval(r, aut_apply(phi(a), z)) / ra;
      CHECK(herm_eval(R, z) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("pullback agrees with the form of the precomposed map") {
  std::mt19937 gen(27);
  RationalBallMap f = fixtures::homogeneous_map(2, 2);
  Eigen::VectorXcd a = fixtures::random_center(2, gen, 0.5);
  HermForm lhs = underlying_form(precompose(f, phi(a)));
  HermForm rhs = pullback_form(underlying_form(f), a, f.degree());
  CHECK((lhs.C - rhs.C).cwiseAbs().maxCoeff() < 1e-11);
}
