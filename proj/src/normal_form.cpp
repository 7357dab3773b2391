#include "ballmap/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ballmap/automorphism.hpp"
#include "ballmap/errors.hpp"

namespace ballmap {

Eigen::MatrixXcd quadratic_matrix(const CPoly& G) {
  const int n = G.n();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> e(n, 0);
    e[j] = 2;
    C(j, j) = G.coeff(e);
    for (int k = j + 1; k < n; ++k) {
      std::vector<int> f(n, 0);
      f[j] = 1;
      f[k] = 1;
      C(j, k) = 0.5 * G.coeff(f);
      C(k, j) = C(j, k);
    }
  }
  return C;
}

namespace {

// rotation (c, s), |c|^2 + |s|^2 = 1, zeroing the off-diagonal entry of the
// symmetric 2x2 block [[a, b], [b, d]] under congruence by
// [[c, -conj(s)], [s, conj(c)]]
std::pair<std::complex<double>, std::complex<double>> takagi_rotation(std::complex<double> a,
                                                                      std::complex<double> b,
                                                                      std::complex<double> d) {
  using cdx = std::complex<double>;
  double ab = std::abs(b);
  if (ab == 0.0) return {1.0, 0.0};
  cdx eb = b / ab;
  cdx ap = a / eb, dp = d / eb;
  double u = std::atan2(ap.imag() - dp.imag(), ap.real() + dp.real());
  cdx eu(std::cos(u), std::sin(u));
  double rho = (dp * eu - ap * std::conj(eu)).real();
  double t = 0.5 * std::atan2(-2.0 * ab, rho);
  return {std::cos(t), eu * std::sin(t)};
}

double offdiag_max(const Eigen::MatrixXcd& D) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < D.cols(); ++j)
    for (Eigen::Index i = 0; i < D.rows(); ++i)
      if (i != j) m = std::max(m, std::abs(D(i, j)));
  return m;
}

}  // namespace

TakagiResult takagi(const Eigen::MatrixXcd& C, double tol) {
  const int n = static_cast<int>(C.rows());
  if (C.cols() != n) throw domain_error(errc::invalid_argument, "normal-form", "matrix not square");
  double scale = std::max(1e-300, max_abs(C));
  if (max_abs(C - C.transpose()) > 1e-12 * scale)
    throw domain_error(errc::invalid_argument, "normal-form", "matrix not complex symmetric");

  // eigenvectors of C conj(C); each one is the conjugate of a Takagi column
  // up to phase, exactly so when the singular value is simple
  Eigen::MatrixXcd M2 = C * C.conjugate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M2 + M2.adjoint()));
  Eigen::MatrixXcd V(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd q = es.eigenvectors().col(k);
    std::complex<double> mu = q.dot(C * q.conjugate());
    std::complex<double> ph = 1.0;
    if (std::abs(mu) > 1e-14 * scale) ph = std::sqrt(std::conj(mu) / std::abs(mu));
    V.col(k) = ph * q.conjugate();
  }

  // Jacobi cleanup handles clustered singular values, where the eigenvector
  // route leaves the block undiagonalized
  Eigen::MatrixXcd D = V.transpose() * C * V;
  double target = std::max(tol * scale, 1e-300);
  for (int sweep = 0; sweep < 60 && offdiag_max(D) > target; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        std::complex<double> b = 0.5 * (D(p, q) + D(q, p));
        if (std::abs(b) <= 0.1 * target) continue;
        auto [c, s] = takagi_rotation(D(p, p), b, D(q, q));
        Eigen::Matrix2cd G;
        G << c, -std::conj(s), s, std::conj(c);
        Eigen::MatrixXcd cols(n, 2);
        cols.col(0) = V.col(p);
        cols.col(1) = V.col(q);
        cols = cols * G;
        V.col(p) = cols.col(0);
        V.col(q) = cols.col(1);
        Eigen::MatrixXcd drows(2, n);
        drows.row(0) = D.row(p);
        drows.row(1) = D.row(q);
        drows = G.transpose() * drows;
        D.row(p) = drows.row(0);
        D.row(q) = drows.row(1);
        Eigen::MatrixXcd dcols(n, 2);
        dcols.col(0) = D.col(p);
        dcols.col(1) = D.col(q);
        dcols = dcols * G;
        D.col(p) = dcols.col(0);
        D.col(q) = dcols.col(1);
      }
    }
  }

  Eigen::VectorXd sigma(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> dk = D(k, k);
    sigma(k) = std::abs(dk);
    if (sigma(k) > 0.0) V.col(k) *= std::sqrt(std::conj(dk) / sigma(k));
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sigma(i) < sigma(j); });
  TakagiResult out;
  out.V.resize(n, n);
  out.sigma.resize(n);
  for (int k = 0; k < n; ++k) {
    out.V.col(k) = V.col(order[k]);
    out.sigma(k) = sigma(order[k]);
  }
  return out;
}

EchelonResult echelon_unitary(const PolyMap& P, double tol) {
  const int N = P.N();
  const int n = P.n;
  const int d = std::max(P.degree(), 0);
  MonomialBasis basis(n, d);
  const int M = basis.size();

  Eigen::MatrixXcd Mx(N, M - 1);
  Eigen::VectorXcd c0(N);
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXcd row = P.comps[i].on_basis(basis);
    c0(i) = row(0);
    Mx.row(i) = row.segment(1, M - 1).transpose();
  }
  double scale = std::max(1e-300, Mx.norm());
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(N, N);

  int r = 0;
  for (int j = 0; j < M - 1 && r < N; ++j) {
    Eigen::VectorXcd x = Mx.block(r, j, N - r, 1);
    double nx = x.norm();
    if (nx <= tol * scale) continue;
    // reflector sending x to a multiple of e_0, then a phase making the
    // pivot real positive
    std::complex<double> x0 = x(0);
    std::complex<double> ph = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : std::complex<double>(1.0);
    Eigen::VectorXcd v = x;
    v(0) += ph * nx;
    double vn2 = v.squaredNorm();
    if (vn2 > 0.0) {
      Eigen::MatrixXcd block = Mx.block(r, 0, N - r, M - 1);
      block -= v * ((2.0 / vn2) * (v.adjoint() * block));
      Mx.block(r, 0, N - r, M - 1) = block;
      Eigen::MatrixXcd ublock = U.block(r, 0, N - r, N);
      ublock -= v * ((2.0 / vn2) * (v.adjoint() * ublock));
      U.block(r, 0, N - r, N) = ublock;
    }
    std::complex<double> piv = Mx(r, j);
    std::complex<double> rot = std::abs(piv) > 0.0 ? std::abs(piv) / piv : std::complex<double>(1.0);
    Mx.row(r) *= rot;
    U.row(r) *= rot;
    for (int i = r + 1; i < N; ++i) Mx(i, j) = 0.0;
    ++r;
  }

  EchelonResult out;
  out.U = U;
  out.unique = (r == N);
  out.P.n = n;
  out.P.comps.resize(N);
  Eigen::VectorXcd c0r = U * c0;
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXcd row(M);
    row(0) = c0r(i);
    row.segment(1, M - 1) = Mx.row(i).transpose();
    CPoly c = CPoly::from_basis(basis, row);
    c.prune();
    out.P.comps[i] = c;
  }
  return out;
}

NormalForm normalize(const RationalBallMap& f, const NormalizeOptions& opts) {
  if (opts.validate_input) require_valid(f);
  const int n = f.n();
  const int d = f.degree();
  HermForm r = underlying_form(f);

  NormalForm nf;
  HermForm R;
  if (d == 1) {
    nf.alpha = Eigen::VectorXcd::Zero(n);
    R = r;
    nf.residuals["criticality"] = 0.0;
    nf.residuals["solver_iterations"] = 0.0;
  } else {
    CriticalPoint cp = find_critical_point(r, d, opts.solver);
    nf.alpha = cp.alpha;
    R = pullback_form(r, cp.alpha, d);
    // phi_alpha(-z) rather than phi_alpha(z): the centering map is then the
    // identity at alpha = 0 and normalization is idempotent
    for (int a = 0; a < R.basis.size(); ++a)
      for (int b = 0; b < R.basis.size(); ++b)
        if ((R.basis.degree(a) + R.basis.degree(b)) % 2) R.C(a, b) = -R.C(a, b);
    nf.residuals["criticality"] = cp.residual;
    nf.residuals["solver_iterations"] = cp.iterations;
  }

  auto [P0, G0] = origin_representative(R, opts.rank_tol);

  Eigen::MatrixXcd Cq = quadratic_matrix(G0);
  TakagiResult tk;
  if (max_abs(Cq) < opts.sigma_snap) {
    // noise-level quadratic part; any V would do, so keep the source frame
    tk.V = Eigen::MatrixXcd::Identity(n, n);
    tk.sigma = Eigen::VectorXd::Zero(n);
  } else {
    tk = takagi(Cq);
  }
  nf.residuals["takagi_offdiag"] = offdiag_max(tk.V.transpose() * Cq * tk.V);
  nf.V = tk.V;
  nf.sigma = tk.sigma;
  for (int k = 0; k < n; ++k)
    if (nf.sigma(k) < opts.sigma_snap) nf.sigma(k) = 0.0;

  PolyMap P1;
  P1.n = n;
  for (const auto& c : P0.comps) {
    CPoly cc = c.compose_linear(tk.V);
    cc.prune();
    P1.comps.push_back(cc);
  }
  CPoly G1 = G0.compose_linear(tk.V);
  G1.prune();

  // pivot selection at the pipeline noise floor, not machine precision, so
  // residue in otherwise dead columns cannot become a junk pivot
  EchelonResult ech = echelon_unitary(P1, opts.rank_tol);
  nf.P = ech.P;
  nf.G = G1;
  nf.U = ech.U;
  nf.residuals["echelon_unique"] = ech.unique ? 1.0 : 0.0;

  double glin = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<int> e(n, 0);
    e[j] = 1;
    glin = std::max(glin, std::abs(nf.G.coeff(e)));
  }
  nf.residuals["g_linear"] = glin;

  Eigen::MatrixXcd Cq1 = quadratic_matrix(nf.G);
  double qd = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      qd = std::max(qd, std::abs(Cq1(j, k) - (j == k ? nf.sigma(j) : 0.0)));
  nf.residuals["g_quad_diag"] = qd;

  Eigen::MatrixXcd recon = outer_on_basis(nf.G, R.basis);
  for (const auto& c : nf.P.comps) recon -= outer_on_basis(c, R.basis);
  // P and G were rotated by a source unitary, so compare against R rotated
  HermForm Rrot = [&] {
    SquaresDecomp dec = decompose_squares(R);
    Eigen::MatrixXcd CC = Eigen::MatrixXcd::Zero(R.basis.size(), R.basis.size());
    for (const auto& h : dec.plus) CC += outer_on_basis(h.compose_linear(tk.V), R.basis);
    for (const auto& h : dec.minus) CC -= outer_on_basis(h.compose_linear(tk.V), R.basis);
    return make_herm_form(R.basis, CC);
  }();
  nf.residuals["reconstruction"] = max_abs(recon - Rrot.C) / std::max(1.0, max_abs(Rrot.C));
  return nf;
}

Eigen::VectorXd invariants(const RationalBallMap& f, const NormalizeOptions& opts) {
  return normalize(f, opts).sigma;
}

namespace {

double coeff_distance(const CPoly& a, const CPoly& b) {
  double m = 0.0;
  for (const auto& [e, c] : a.terms()) m = std::max(m, std::abs(c - b.coeff(e)));
  for (const auto& [e, c] : b.terms()) m = std::max(m, std::abs(c - a.coeff(e)));
  return m;
}

double map_distance(const PolyMap& a, const PolyMap& b) {
  double m = 0.0;
  for (int i = 0; i < a.N(); ++i) m = std::max(m, coeff_distance(a.comps[i], b.comps[i]));
  return m;
}

// signed permutations of coordinates compatible with the tie structure of
// sigma: permute only inside groups of equal sigma, flip any signs
void enumerate_stabilizer(const std::vector<std::vector<int>>& groups, int n,
                          std::vector<Eigen::MatrixXcd>& out) {
  std::vector<int> perm(n);
  std::function<void(size_t)> rec_group = [&](size_t gi) {
    if (gi == groups.size()) {
      // all sign patterns on top of the permutation
      int count = 1 << n;
      for (int mask = 0; mask < count; ++mask) {
        Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j) V(perm[j], j) = (mask >> j) & 1 ? -1.0 : 1.0;
        out.push_back(V);
      }
      return;
    }
    std::vector<int> g = groups[gi];
    std::sort(g.begin(), g.end());
    do {
      for (size_t t = 0; t < g.size(); ++t) perm[groups[gi][t]] = g[t];
      rec_group(gi + 1);
    } while (std::next_permutation(g.begin(), g.end()));
  };
  rec_group(0);
}

}  // namespace

EquivalenceVerdict spherically_equivalent(const RationalBallMap& f, const RationalBallMap& F,
                                          const EquivalenceOptions& opts) {
  EquivalenceVerdict v;
  if (f.n() != F.n()) {
    v.status = Equivalence::Inequivalent;
    v.reason = "source dimensions differ";
    return v;
  }
  if (f.degree() != F.degree()) {
    v.status = Equivalence::Inequivalent;
    v.reason = "degrees differ";
    return v;
  }
  NormalForm A = normalize(f, opts.normalize);
  NormalForm B = normalize(F, opts.normalize);
  const int n = f.n();

  if (A.P.N() != B.P.N()) {
    v.status = Equivalence::Inequivalent;
    v.reason = "embedding dimensions differ";
    return v;
  }
  double sd = (A.sigma - B.sigma).cwiseAbs().maxCoeff();
  if (sd > opts.sigma_tol) {
    v.status = Equivalence::Inequivalent;
    v.reason = "spherical invariants differ";
    return v;
  }

  // tie groups of sigma
  std::vector<std::vector<int>> groups;
  bool has_tie = false;
  for (int k = 0; k < n; ++k) {
    double s = A.sigma(k);
    if (!groups.empty()) {
      double prev = A.sigma(groups.back().back());
      if ((s - prev) <= opts.tie_gap * std::max(s, 1.0)) {
        groups.back().push_back(k);
        has_tie = true;
        continue;
      }
    }
    groups.push_back({k});
  }
  bool all_positive = n == 0 || A.sigma(0) > 0.0;
  bool distinct_positive = all_positive && !has_tie;

  std::vector<Eigen::MatrixXcd> candidates;
  if (distinct_positive) {
    int count = 1 << n;
    for (int mask = 0; mask < count; ++mask) {
      Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
      for (int j = 0; j < n; ++j) V(j, j) = (mask >> j) & 1 ? -1.0 : 1.0;
      candidates.push_back(V);
    }
  } else {
    enumerate_stabilizer(groups, n, candidates);
  }

  for (const auto& V : candidates) {
    CPoly GA = A.G.compose_linear(V);
    GA.prune();
    if (coeff_distance(GA, B.G) >= opts.match_tol) continue;
    PolyMap PA;
    PA.n = n;
    for (const auto& c : A.P.comps) PA.comps.push_back(c.compose_linear(V));
    EchelonResult ech = echelon_unitary(PA, opts.normalize.rank_tol);
    double dist = std::max(map_distance(ech.P, B.P), coeff_distance(GA, B.G));
    if (dist < opts.match_tol) {
      v.status = Equivalence::Equivalent;
      v.witness = EquivalenceWitness{V, ech.U, dist};
      v.reason = "normal forms agree after a stabilizer element";
      return v;
    }
  }

  if (distinct_positive) {
    v.status = Equivalence::Inequivalent;
    v.reason = "no sign pattern matches the normal forms";
  } else {
    v.status = Equivalence::Inconclusive;
    v.reason = "sigma has ties or zeros; tested signed permutations do not match";
  }
  return v;
}

}  // namespace ballmap
