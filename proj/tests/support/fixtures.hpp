#pragma once

// Deterministic test inputs: reference maps with known invariants, random
// valid maps built from homogeneous models and ball automorphisms, and the
// three frozen classification forms.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ballmap/automorphism.hpp"
#include "ballmap/ball_map.hpp"
#include "ballmap/herm_form.hpp"
#include "ballmap/poly.hpp"

namespace fixtures {

using ballmap::cd;

// uniform in [0, 1) from the low 32 bits; mt19937 output is fully specified,
// so every fixture is identical across platforms
inline double unit_uniform(std::mt19937& gen) { return std::ldexp(static_cast<double>(gen()), -32); }

inline double gauss(std::mt19937& gen) {
  double u = 0.0;
  while (u == 0.0) u = unit_uniform(gen);
  double v = unit_uniform(gen);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

inline cd cgauss(std::mt19937& gen) {
  double re = gauss(gen);
  double im = gauss(gen);
  return cd(re, im);
}

inline Eigen::VectorXcd random_center(int n, std::mt19937& gen, double cap = 0.7) {
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) v(j) = cgauss(gen);
  double r = cap * std::pow(unit_uniform(gen), 1.0 / (2 * n));
  return v * (r / v.norm());
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937& gen) {
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cgauss(gen);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cd d = R(j, j);
    Q.col(j) *= (d == cd(0.0) ? cd(1.0) : d / std::abs(d));
  }
  return Q;
}

inline ballmap::BallAutomorphism random_automorphism(int n, unsigned seed, double cap = 0.7) {
  std::mt19937 gen(seed);
  Eigen::VectorXcd a = random_center(n, gen, cap);
  Eigen::MatrixXcd U = random_unitary(n, gen);
  return ballmap::make_automorphism(a, U);
}

// f_sigma(z) = (sigma z + z^3) / (1 + sigma z^2), proper for 0 <= sigma <= 1;
// already in normal form with invariant sigma
inline ballmap::RationalBallMap blaschke_sigma(double sigma) {
  ballmap::CPoly p(1);
  p.set_coeff({1}, sigma);
  p.set_coeff({3}, 1.0);
  ballmap::CPoly g(1);
  g.set_coeff({0}, 1.0);
  g.set_coeff({2}, sigma);
  return ballmap::make_map(ballmap::PolyMap{1, {p}}, g);
}

// finite Blaschke product with d random zeros, presented as the quotient of
// prod (a_i - z) by prod (1 - conj(a_i) z); distinct zeros give a map that is
// not equivalent to z^d
inline ballmap::RationalBallMap random_blaschke(int d, unsigned seed, double cap = 0.6) {
  std::mt19937 gen(seed);
  ballmap::CPoly z = ballmap::CPoly::variable(1, 0);
  ballmap::CPoly p = ballmap::CPoly::constant(1, 1.0);
  ballmap::CPoly g = ballmap::CPoly::constant(1, 1.0);
  for (int i = 0; i < d; ++i) {
    ballmap::cd a = random_center(1, gen, cap)(0);
    p = p * (ballmap::CPoly::constant(1, a) - z);
    g = g * (ballmap::CPoly::constant(1, 1.0) - z * std::conj(a));
  }
  return ballmap::make_map(ballmap::PolyMap{1, {p}}, g);
}

// z -> (sqrt(multinomial) z^beta)_{|beta| = d}, the homogeneous proper map
// with |H(z)|^2 = |z|^(2d)
inline ballmap::RationalBallMap homogeneous_map(int n, int d) {
  ballmap::MonomialBasis basis(n, d);
  std::vector<ballmap::CPoly> comps;
  for (int i = 0; i < basis.size(); ++i) {
    if (basis.degree(i) != d) continue;
    double m = 1.0;
    int used = 0;
    for (int e : basis.exponents(i))
      for (int k = 1; k <= e; ++k) m *= static_cast<double>(++used) / k;
    ballmap::CPoly c(n);
    c.set_coeff(basis.exponents(i), std::sqrt(m));
    comps.push_back(c);
  }
  return ballmap::make_map(ballmap::PolyMap{n, std::move(comps)},
                           ballmap::CPoly::constant(n, 1.0));
}

// tau o f for a target automorphism tau = U . phi_beta of the codomain ball:
// numerator U (beta g - L_beta p), denominator g - <p, beta>
inline ballmap::RationalBallMap postcompose(const ballmap::RationalBallMap& f,
                                            const Eigen::VectorXcd& beta,
                                            const Eigen::MatrixXcd& U) {
  const int N = f.N();
  Eigen::MatrixXcd L = ballmap::l_matrix(beta);
  std::vector<ballmap::CPoly> num(N, ballmap::CPoly(f.n()));
  for (int i = 0; i < N; ++i) {
    num[i] = f.g * beta(i);
    for (int j = 0; j < N; ++j) num[i] -= f.p.comps[j] * L(i, j);
  }
  std::vector<ballmap::CPoly> rotated(N, ballmap::CPoly(f.n()));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) rotated[i] += num[j] * U(i, j);
  ballmap::CPoly den = f.g;
  for (int j = 0; j < N; ++j) den -= f.p.comps[j] * std::conj(beta(j));
  for (auto& c : rotated) c.prune();
  den.prune();
  return ballmap::make_map(ballmap::PolyMap{f.n(), std::move(rotated)}, den);
}

inline ballmap::RationalBallMap random_postcompose(const ballmap::RationalBallMap& f,
                                                   unsigned seed, double cap = 0.6) {
  std::mt19937 gen(seed);
  Eigen::VectorXcd beta = random_center(f.N(), gen, cap);
  Eigen::MatrixXcd U = random_unitary(f.N(), gen);
  return postcompose(f, beta, U);
}

// homogeneous model dressed with random source and target automorphisms;
// valid by construction, degree exactly d, generically nothing normalized
inline ballmap::RationalBallMap random_valid_fixture(int n, int d, unsigned seed) {
  ballmap::RationalBallMap f = homogeneous_map(n, d);
  f = ballmap::precompose(f, random_automorphism(n, seed * 2 + 1, 0.6));
  return random_postcompose(f, seed * 2 + 2, 0.5);
}

inline double coeff_distance(const ballmap::CPoly& a, const ballmap::CPoly& b) {
  ballmap::CPoly d = a - b;
  return d.max_abs_coeff();
}

inline double coeff_distance(const ballmap::PolyMap& a, const ballmap::PolyMap& b) {
  double m = 0.0;
  for (int i = 0; i < a.N(); ++i) m = std::max(m, coeff_distance(a.comps[i], b.comps[i]));
  return m;
}

// frozen one-variable degree-2 forms, one per polynomial model; all are
// maximal embedding (N = 2) with quotient positive on the circle

// r = 1 - |z|^2/2 - |z|^4/2, the form of z -> (z, z^2)/sqrt(2); gamma = 1
inline ballmap::HermForm ball_model_form() {
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(3, 3);
  C(0, 0) = 1.0;
  C(1, 1) = -0.5;
  C(2, 2) = -0.5;
  return ballmap::make_herm_form(ballmap::MonomialBasis(1, 2), C);
}

// gamma = -7/11 < 0
inline ballmap::HermForm generalized_ball_form() {
  Eigen::MatrixXcd C(3, 3);
  C << 1.0, 0.6, 0.0, 0.6, -0.5, -0.6, 0.0, -0.6, -0.5;
  return ballmap::make_herm_form(ballmap::MonomialBasis(1, 2), C);
}

// (C^-1)(0,0) = 0, Heisenberg representative G = 1 + z
inline ballmap::HermForm heisenberg_form() {
  Eigen::MatrixXcd C(3, 3);
  C << 1.0, 0.5, 0.0, 0.5, -0.5, -0.5, 0.0, -0.5, -0.5;
  return ballmap::make_herm_form(ballmap::MonomialBasis(1, 2), C);
}

inline ballmap::RationalBallMap map_of_form(const ballmap::HermForm& r) {
  auto [P, G] = ballmap::origin_representative(r);
  return ballmap::make_map(P, G);
}

}  // namespace fixtures
