#include "ballmap/ball_map.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ballmap/errors.hpp"
#include "ballmap/sampling.hpp"

namespace ballmap {

RationalBallMap make_map(PolyMap p, CPoly g) {
  if (p.N() < 1) throw domain_error(errc::invalid_argument, "core", "map needs at least one component");
  for (const auto& c : p.comps)
    if (c.n() != g.n())
      throw domain_error(errc::dimension_mismatch, "core", "numerator and denominator dimensions differ");
  RationalBallMap f;
  f.p = std::move(p);
  f.g = std::move(g);
  return f;
}

HermForm underlying_form(const RationalBallMap& f) {
  int d = f.degree();
  MonomialBasis basis(f.n(), d);
  Eigen::MatrixXcd C = outer_on_basis(f.g, basis);
  for (const auto& comp : f.p.comps) C -= outer_on_basis(comp, basis);
  double r00 = C(0, 0).real();
  if (r00 <= 0.0)
    throw domain_error(errc::validation_failed, "core",
                       "|g(0)|^2 - |p(0)|^2 must be positive (map sends 0 into the ball)", r00);
  C /= r00;
  return make_herm_form(std::move(basis), C);
}

namespace {

CPoly axis_restriction(const CPoly& g, int axis) {
  CPoly r(1);
  for (const auto& [e, c] : g.terms()) {
    bool pure = true;
    for (int j = 0; j < g.n(); ++j)
      if (j != axis && e[j] != 0) pure = false;
    if (pure) r.add_coeff({e[axis]}, c);
  }
  return r;
}

}  // namespace

ValidationReport validate(const RationalBallMap& f, const ValidationOptions& opts) {
  ValidationReport rep;
  const int n = f.n();
  const int d = f.degree();
  auto fail = [&rep](const std::string& m) { rep.failures.push_back(m); };

  if (d < 1) fail("map must be nonconstant");
  if (std::abs(f.g.eval(Eigen::VectorXcd::Zero(n))) < 1e-14) fail("denominator vanishes at 0");
  if (f.g.degree() > f.p.degree()) fail("denominator degree exceeds numerator degree");
  if (!rep.failures.empty()) {
    rep.ok = false;
    return rep;
  }

  HermForm r;
  try {
    r = underlying_form(f);
  } catch (const domain_error& e) {
    fail(e.what());
    rep.ok = false;
    return rep;
  }

  try {
    HermForm q = divide_by_sphere(r, opts.tol);
    auto pts = sphere_points(n, opts.samples_per_dim * n, opts.seed);
    double minq = std::numeric_limits<double>::infinity();
    for (const auto& z : pts) minq = std::min(minq, herm_eval(q, z));
    rep.min_quotient_on_sphere = minq;
    if (minq <= 0.0) {
      std::ostringstream os;
      os << "sphere quotient not positive (min " << minq << ")";
      fail(os.str());
    }
  } catch (const domain_error& e) {
    rep.division_residual = e.residual();
    fail(e.what());
  }

  {
    double gscale = 1.0 + f.g.max_abs_coeff();
    double ming = std::numeric_limits<double>::infinity();
    auto pts = ball_grid_points(n, opts.samples_per_dim * n, {0.25, 0.5, 0.75, 0.9, 0.98, 1.0},
                                opts.seed + 1);
    for (const auto& z : pts) ming = std::min(ming, std::abs(f.g.eval(z)));
    rep.min_denominator_modulus = ming;
    if (ming < 1e-8 * gscale) fail("denominator has a zero on or near the closed ball");
  }

  {
    auto [pos, neg, zero] = signature(r);
    rep.positive = pos;
    rep.negative = neg;
    rep.zero = zero;
    rep.embedding_dimension = neg;
    if (pos != 1) fail("underlying form must have exactly one positive square");
  }

  if (f.g.degree() >= 1) {
    if (n == 1) {
      std::vector<CPoly> all = f.p.comps;
      all.push_back(f.g);
      if (univariate_gcd_degree(all) >= 1) {
        rep.lowest_terms_warning = true;
        rep.warnings.push_back("numerator and denominator share a nonconstant factor");
      }
    } else {
      // a common factor h would force rank(r) = rank(r / |h|^2), which is at
      // most the monomial count at degree d - 1; low rank is only suspicious
      int rank = rep.positive + rep.negative;
      if (rank <= binomial_dim(n, d - 1)) {
        rep.lowest_terms_warning = true;
        rep.warnings.push_back("coefficient rank is consistent with a common factor");
      }
    }
  }

  {
    // denominators with no linear part: each one-variable restriction
    // 1 + c2 t^2 + ... of degree k without zeros on the closed disc obeys
    // |c2| < k/2, so a violation means the zero-free check missed a root
    double gscale = std::max(1.0, f.g.max_abs_coeff());
    bool linear_free = true;
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[j] = 1;
      if (std::abs(f.g.coeff(e)) > 1e-12 * gscale) linear_free = false;
    }
    if (linear_free) {
      for (int j = 0; j < n; ++j) {
        CPoly gj = axis_restriction(f.g, j);
        int k = gj.degree();
        if (k < 2) continue;
        double c2 = std::abs(gj.coeff({2}));
        if (!(c2 < 0.5 * k + 1e-9)) {
          std::ostringstream os;
          os << "restricted quadratic coefficient " << c2 << " breaks the degree-" << k << " bound";
          fail(os.str());
        }
      }
    }
  }

  rep.ok = rep.failures.empty();
  return rep;
}

void require_valid(const RationalBallMap& f, const ValidationOptions& opts) {
  ValidationReport rep = validate(f, opts);
  if (!rep.ok) {
    std::string msg = "map validation failed";
    for (const auto& m : rep.failures) msg += "; " + m;
    throw domain_error(errc::validation_failed, "core", msg);
  }
}

}  // namespace ballmap
