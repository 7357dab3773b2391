#include "ballmap/lambda.hpp"

#include <cmath>
#include <limits>

#include "ballmap/automorphism.hpp"
#include "ballmap/errors.hpp"

namespace ballmap {

double lambda_value(const HermForm& r, int d, const Eigen::VectorXcd& z) {
  double s = 1.0 - z.squaredNorm();
  if (s <= 0.0)
    throw domain_error(errc::invalid_argument, "lambda", "evaluation point outside the open ball");
  return herm_eval(r, z) / std::pow(s, d);
}

LambdaEval lambda_eval(const HermForm& r, int d, const Eigen::VectorXcd& z) {
  const int n = r.n();
  double s = 1.0 - z.squaredNorm();
  if (s <= 0.0)
    throw domain_error(errc::invalid_argument, "lambda", "evaluation point outside the open ball");
  HermDerivs rd = herm_eval_derivs(r, z);
  const double sd = std::pow(s, d);
  const double sd1 = sd / s;
  const double sd2 = sd1 / s;

  LambdaEval out;
  out.value = rd.value / sd;

  // quotient rule with d/dz_j (1 - |z|^2) = -zbar_j
  out.grad = (s * rd.dz + static_cast<double>(d) * rd.value * z.conjugate()) / (sd * s);

  // A_jk = d2 Lambda / dz_j dz_k, H_jk = d2 Lambda / dz_j dzbar_k
  Eigen::MatrixXcd A(n, n), H(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      std::complex<double> zbj = std::conj(z(j)), zbk = std::conj(z(k));
      A(j, k) = rd.dzz(j, k) / sd +
                static_cast<double>(d) * (zbk * rd.dz(j) + zbj * rd.dz(k)) / (sd * s) +
                static_cast<double>(d) * (d + 1) * zbj * zbk * rd.value / (sd * s * s);
      std::complex<double> rzbk = std::conj(rd.dz(k));
      H(j, k) = rd.dzdzb(j, k) / sd +
                static_cast<double>(d) * (z(k) * rd.dz(j) + zbj * rzbk + (j == k ? rd.value : 0.0)) /
                    (sd * s) +
                static_cast<double>(d) * (d + 1) * zbj * z(k) * rd.value / (sd * s * s);
    }
  }
  out.hess_c = H;

  // x_j = Re z_j, y_j = Im z_j
  Eigen::MatrixXd hr(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double xx = 2.0 * (A(j, k) + H(j, k)).real();
      double yy = 2.0 * (H(j, k) - A(j, k)).real();
      double xy = 2.0 * (H(j, k) - A(j, k)).imag();
      double yx = -2.0 * (H(j, k) + A(j, k)).imag();
      hr(j, k) = xx;
      hr(n + j, n + k) = yy;
      hr(j, n + k) = xy;
      hr(n + j, k) = yx;
    }
  }
  out.hess_r = 0.5 * (hr + hr.transpose());  // clean the symmetric roundoff
  return out;
}

CriticalPoint find_critical_point(const HermForm& r, int d, const SolverOptions& opts) {
  const int n = r.n();
  if (d <= 1)
    throw domain_error(errc::degenerate_degree_one, "lambda",
                       "degree-1 maps have constant Lambda; the center is 0 by convention");

  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
  double value = lambda_value(r, d, z);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    LambdaEval ev = lambda_eval(r, d, z);
    value = ev.value;
    if (ev.grad.norm() < opts.grad_tol) break;

    Eigen::VectorXd gr(2 * n);
    for (int j = 0; j < n; ++j) {
      gr(j) = 2.0 * ev.grad(j).real();
      gr(n + j) = -2.0 * ev.grad(j).imag();
    }

    Eigen::VectorXd step;
    bool newton = false;
    Eigen::LLT<Eigen::MatrixXd> llt(ev.hess_r);
    if (llt.info() == Eigen::Success) {
      step = -llt.solve(gr);
      newton = step.dot(gr) < 0.0;
    }
    if (!newton) step = -gr;

    auto to_z = [&](double t) {
      Eigen::VectorXcd w = z;
      for (int j = 0; j < n; ++j) w(j) += t * std::complex<double>(step(j), step(n + j));
      return w;
    };

    double t = 1.0;
    for (int guard = 0; guard < 200 && to_z(t).norm() > 1.0 - opts.boundary_margin; ++guard)
      t *= opts.shrink;

    double slope = gr.dot(step);
    // near the minimum the per-step decrease drops below the ulp of the
    // value, so the Armijo comparison goes blind while the gradient is still
    // accurate; inside that region take the damped Newton step as is
    if (newton && -0.5 * slope < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(value)) {
      Eigen::VectorXcd w = to_z(t);
      if (w.norm() <= 1.0 - opts.boundary_margin) {
        z = w;
        continue;
      }
    }
    bool accepted = false;
    for (int bt = 0; bt <= opts.max_backtrack; ++bt) {
      Eigen::VectorXcd w = to_z(t);
      if (w.norm() <= 1.0 - opts.boundary_margin) {
        double v = lambda_value(r, d, w);
        if (v <= value + opts.armijo * t * slope) {
          z = w;
          value = v;
          accepted = true;
          break;
        }
      }
      t *= opts.shrink;
    }
    if (!accepted) {
      if (ev.grad.norm() < 1e3 * opts.grad_tol) break;  // line search exhausted at the floor
      throw domain_error(errc::no_convergence, "lambda", "line search failed to make progress",
                         ev.grad.norm());
    }
  }
  double gn = lambda_eval(r, d, z).grad.norm();
  if (gn >= 1e3 * opts.grad_tol && it >= opts.max_iter)
    throw domain_error(errc::no_convergence, "lambda", "iteration limit reached", gn);

  CriticalPoint cp;
  cp.alpha = z;
  cp.iterations = it;
  cp.min_value = value;
  cp.residual = criticality_residual(r, d, z);
  return cp;
}

double criticality_residual(const HermForm& r, int d, const Eigen::VectorXcd& alpha) {
  const int n = r.n();
  HermDerivs rd = herm_eval_derivs(r, alpha);
  Eigen::MatrixXcd L = l_matrix(alpha);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    // column j of the Jacobian of phi_alpha at 0
    Eigen::VectorXcd v = std::conj(alpha(j)) * alpha - L.col(j);
    std::complex<double> res = -static_cast<double>(d) * std::conj(alpha(j)) * rd.value;
    res += rd.dz.cwiseProduct(v).sum();  // plain bilinear sum grad . v
    acc += std::norm(res);
  }
  return std::sqrt(acc);
}

}  // namespace ballmap
