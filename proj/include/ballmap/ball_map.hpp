#pragma once

// Rational maps p/g between unit balls and the checks that admit them:
// g(0) != 0, deg g <= deg p, g without zeros on the closed ball (sampled),
// |g|^2 - |p|^2 divisible by 1 - |z|^2 with a quotient positive on the
// sphere, and exactly one positive square in the underlying form.

#include <string>
#include <vector>

#include "ballmap/herm_form.hpp"
#include "ballmap/poly.hpp"

namespace ballmap {

struct RationalBallMap {
  PolyMap p;
  CPoly g;

  int n() const { return g.n(); }
  int N() const { return p.N(); }
  int degree() const { return std::max(p.degree(), g.degree()); }

  Eigen::VectorXcd eval(const Eigen::VectorXcd& z) const { return p.eval(z) / g.eval(z); }
};

RationalBallMap make_map(PolyMap p, CPoly g);

// |g|^2 - |p|^2 scaled so the constant term is 1
HermForm underlying_form(const RationalBallMap& f);

struct ValidationOptions {
  double tol = 1e-11;        // division residual
  int samples_per_dim = 1000;
  unsigned seed = 0;
};

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  double division_residual = 0.0;
  double min_quotient_on_sphere = 0.0;
  double min_denominator_modulus = 0.0;
  int positive = 0, negative = 0, zero = 0;  // signature of the underlying form
  int embedding_dimension = 0;
  bool lowest_terms_warning = false;
};

ValidationReport validate(const RationalBallMap& f, const ValidationOptions& opts = {});

// throws ValidationFailed unless validate(f) passes
void require_valid(const RationalBallMap& f, const ValidationOptions& opts = {});

}  // namespace ballmap
