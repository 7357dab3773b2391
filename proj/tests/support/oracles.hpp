#pragma once

// Independent implementations used to check the library: exact rational
// arithmetic for the sphere division recursion, finite differences for
// derivatives of the exhaustion function, and SVD for singular values.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

#include "ballmap/herm_form.hpp"
#include "ballmap/lambda.hpp"
#include "ballmap/multi_index.hpp"

namespace oracles {

using Rat = boost::multiprecision::cpp_rational;

struct RatC {
  Rat re, im;

  RatC() = default;
  RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit RatC(std::complex<double> c) : re(c.real()), im(c.imag()) {}

  RatC& operator+=(const RatC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
};

// exact coefficient recursion for r = q (1 - |z|^2) in increasing bidegree;
// entries of r must be exactly representable (use dyadic test data).  The
// top-degree relations are required to close exactly; nonzero residue there
// means the input was not divisible.
inline std::map<std::pair<int, int>, RatC> divide_by_sphere_exact(
    const ballmap::MonomialBasis& basis, const Eigen::MatrixXcd& C, bool* divisible = nullptr) {
  const int M = basis.size();
  const int d = basis.max_degree();
  const int n = basis.n();
  std::map<std::pair<int, int>, RatC> q;
  bool ok = true;
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      RatC acc(C(a, b));
      for (int k = 0; k < n; ++k) {
        int da = basis.down(a, k), db = basis.down(b, k);
        if (da >= 0 && db >= 0) {
          auto it = q.find({da, db});
          if (it != q.end()) acc += it->second;
        }
      }
      if (basis.degree(a) == d || basis.degree(b) == d) {
        if (acc.re != 0 || acc.im != 0) ok = false;
      } else {
        q[{a, b}] = acc;
      }
    }
  }
  if (divisible) *divisible = ok;
  return q;
}

inline double to_double(const Rat& r) { return static_cast<double>(r); }

// fourth-order central differences on the real coordinates
template <typename F>
double fd_derivative(F&& f, double h = 1e-3) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

inline Eigen::VectorXcd lambda_grad_fd(const ballmap::HermForm& r, int d,
                                       const Eigen::VectorXcd& z, double h = 1e-4) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXcd g(n);
  for (int j = 0; j < n; ++j) {
    auto fx = [&](double t) {
      Eigen::VectorXcd w = z;
      w(j) += t;
      return ballmap::lambda_value(r, d, w);
    };
    auto fy = [&](double t) {
      Eigen::VectorXcd w = z;
      w(j) += std::complex<double>(0.0, t);
      return ballmap::lambda_value(r, d, w);
    };
    // dL/dz = (dL/dx - i dL/dy) / 2
    g(j) = std::complex<double>(fd_derivative(fx, h), -fd_derivative(fy, h)) * 0.5;
  }
  return g;
}

inline Eigen::MatrixXd lambda_real_hessian_fd(const ballmap::HermForm& r, int d,
                                              const Eigen::VectorXcd& z, double h = 1e-3) {
  const int n = static_cast<int>(z.size());
  auto value = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXcd w(n);
    for (int j = 0; j < n; ++j) w(j) = std::complex<double>(x(j), x(n + j));
    return ballmap::lambda_value(r, d, w);
  };
  Eigen::VectorXd x0(2 * n);
  for (int j = 0; j < n; ++j) {
    x0(j) = z(j).real();
    x0(n + j) = z(j).imag();
  }
  Eigen::MatrixXd H(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      auto fij = [&](double s, double t) {
        Eigen::VectorXd x = x0;
        x(i) += s;
        x(j) += t;
        return value(x);
      };
      H(i, j) = (fij(h, h) - fij(h, -h) - fij(-h, h) + fij(-h, -h)) / (4 * h * h);
    }
  }
  return 0.5 * (H + H.transpose());
}

// singular values ascending, by SVD rather than any Takagi structure
inline Eigen::VectorXd singular_values_ascending(const Eigen::MatrixXcd& C) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
  return svd.singularValues().reverse();
}

}  // namespace oracles
