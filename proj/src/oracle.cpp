#include "flagtriad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace flagtriad::oracle {

using triads::PiPoint;
using triads::SymmetricTriad;

namespace {

using Cplx = std::complex<double>;

double to_double(const Rat& x) {
  return numerator(x).convert_to<double>() / denominator(x).convert_to<double>();
}

CMat unit(int m, int a, int b) {
  CMat e = CMat::Zero(m, m);
  e(a, b) = 1.0;
  return e;
}

/// Continued-fraction snap of x to a rational with bounded denominator.
Rat rational_snap(double x, double tol, long max_den) {
  const bool neg = x < 0;
  double v = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(frac);
    if (a > 1e17) break;
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - v) < tol * 1e-3) break;
    const double rem = frac - a;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0 || std::abs(static_cast<double>(p1) / static_cast<double>(q1) - v) > tol)
    throw std::domain_error("rational_snap: no rational within tolerance of " + std::to_string(x));
  Rat r(p1, q1);
  return neg ? Rat(-r) : r;
}

RMat orthonormal_columns(const RMat& m, double tol = 1e-9) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis (columns) of the eigenspace of a symmetric matrix.
RMat eigenspace(const RMat& sym, double target, double tol) {
  Eigen::SelfAdjointEigenSolver<RMat> es(sym);
  std::vector<int> idx;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - target) < tol) idx.push_back(i);
  RMat out(sym.rows(), static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(k) = es.eigenvectors().col(idx[k]);
  return out;
}

/// Orthonormal basis of span(u) cap span(v); columns of u, v orthonormal.
RMat subspace_intersection(const RMat& u, const RMat& v, double tol = 1e-7) {
  if (u.cols() == 0 || v.cols() == 0) return RMat(u.rows(), 0);
  RMat m(u.rows(), u.cols() + v.cols());
  m << u, v;
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
  // singular values are sorted descending and only min(rows, cols) are
  // reported; every V column past the rank spans the kernel
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  const int null_dim = static_cast<int>(m.cols()) - rank;
  RMat out(u.rows(), null_dim);
  for (int k = 0; k < null_dim; ++k)
    out.col(k) = u * svd.matrixV().col(rank + k).head(u.cols());
  return orthonormal_columns(out);
}

RMat real_involution_matrix(const RealLieAlgebra& alg, const std::function<CMat(const CMat&)>& f) {
  const int N = alg.dim();
  RMat t(N, N);
  for (int j = 0; j < N; ++j) {
    const CMat img = f(alg.basis[j]);
    for (int i = 0; i < N; ++i) t(i, j) = alg.ip(img, alg.basis[i]);
  }
  return t;
}

}  // namespace

double RealLieAlgebra::ip(const CMat& x, const CMat& y) const {
  return -0.5 * (x * y).trace().real();
}

double RealLieAlgebra::norm(const CMat& x) const { return std::sqrt(std::max(0.0, ip(x, x))); }

RVec RealLieAlgebra::coords(const CMat& x) const {
  RVec c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = ip(x, basis[i]);
  return c;
}

CMat RealLieAlgebra::from_coords(const RVec& c) const {
  CMat x = CMat::Zero(m, m);
  for (int i = 0; i < dim(); ++i) x += c(i) * basis[i];
  return x;
}

RMat RealLieAlgebra::ad_matrix(const CMat& v) const {
  const int N = dim();
  RMat a(N, N);
  for (int j = 0; j < N; ++j) {
    const CMat br = v * basis[j] - basis[j] * v;
    for (int i = 0; i < N; ++i) a(i, j) = ip(br, basis[i]);
  }
  return a;
}

RMat RealLieAlgebra::conj_matrix(const CMat& u) const {
  const int N = dim();
  const CMat uh = u.adjoint();
  RMat a(N, N);
  for (int j = 0; j < N; ++j) {
    const CMat img = u * basis[j] * uh;
    for (int i = 0; i < N; ++i) a(i, j) = ip(img, basis[i]);
  }
  return a;
}

RealLieAlgebra build_su(int m) {
  if (m < 2) throw std::invalid_argument("build_su: need m >= 2");
  RealLieAlgebra alg;
  alg.m = m;
  const Cplx I(0, 1);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      alg.basis.push_back(unit(m, a, b) - unit(m, b, a));
      alg.basis.push_back(I * (unit(m, a, b) + unit(m, b, a)));
    }
  for (int k = 1; k < m; ++k) {
    // i diag(1, ..., 1, -k, 0, ..., 0) / sqrt(k(k+1)/2)
    CMat d = CMat::Zero(m, m);
    for (int i = 0; i < k; ++i) d(i, i) = I;
    d(k, k) = -static_cast<double>(k) * I;
    alg.basis.push_back(d / std::sqrt(k * (k + 1) / 2.0));
  }
  return alg;
}

CMat exp_skew(const CMat& h) {
  const Cplx I(0, 1);
  Eigen::SelfAdjointEigenSolver<CMat> es(-I * h);  // -i h is Hermitian
  CMat phase = CMat::Zero(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i) phase(i, i) = std::exp(I * es.eigenvalues()(i));
  return es.eigenvectors() * phase * es.eigenvectors().adjoint();
}

CMat PairData::embed(const ExactVector& model, double scale) const {
  if (model.size() != model_dim) throw std::invalid_argument("embed: wrong model dimension");
  CMat x = CMat::Zero(alg.m, alg.m);
  for (std::size_t k = 0; k < model_dim; ++k)
    x += (to_double(model[k]) * scale) * model_basis_matrices[k];
  if (std::abs(x.trace()) > 1e-9 * (1.0 + x.norm()))
    throw std::invalid_argument("embed: model vector violates the trace constraint");
  return x;
}

void CheckReport::add(std::string name, double residual, double threshold) {
  lines.push_back({std::move(name), residual, threshold, residual < threshold});
}

bool CheckReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

PairData build_pair(const std::string& catalogue_name, int n) {
  PairData pd;
  pd.name = catalogue_name;
  pd.n = n;
  const Cplx I(0, 1);

  std::function<CMat(const CMat&)> theta0, theta1;
  if (catalogue_name == "su2n-so-sp") {
    if (n < 2) throw std::invalid_argument("su2n-so-sp requires n >= 2");
    const int m = 2 * n;
    pd.alg = build_su(m);
    CMat J = CMat::Zero(m, m);
    for (int i = 0; i < n; ++i) {
      J(i, n + i) = -1.0;
      J(n + i, i) = 1.0;
    }
    theta0 = [](const CMat& x) { return x.conjugate(); };
    theta1 = [J](const CMat& x) { return J.inverse() * x.conjugate() * J; };
    pd.model_dim = n;
    for (int k = 0; k < n; ++k) pd.model_basis_matrices.push_back(I * (unit(m, k, k) + unit(m, n + k, n + k)));
    for (int k = 0; k + 1 < n; ++k) {
      ExactVector f = zero_vector(n);
      f[k] = 1;
      f[k + 1] = -1;
      pd.flat_basis_exact.push_back(f);
    }
  } else if (catalogue_name == "su-n-so-rank1") {
    if (n < 2) throw std::invalid_argument("su-n-so-rank1 requires n >= 2");
    pd.alg = build_su(n);
    CMat ipq = CMat::Identity(n, n);
    for (int i = 1; i < n; ++i) ipq(i, i) = -1.0;
    theta0 = [](const CMat& x) { return x.conjugate(); };
    theta1 = [ipq](const CMat& x) { return ipq * x * ipq; };
    pd.model_dim = 1;
    pd.model_basis_matrices.push_back(I * (unit(n, 0, 1) + unit(n, 1, 0)));
    pd.flat_basis_exact.push_back({Rat(1)});
  } else if (catalogue_name == "su-n-so") {
    if (n < 2) throw std::invalid_argument("su-n-so requires n >= 2");
    pd.alg = build_su(n);
    theta0 = [](const CMat& x) { return x.conjugate(); };
    theta1 = theta0;  // congruent pair
    pd.model_dim = 2 * static_cast<std::size_t>(n);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < n; ++k) pd.model_basis_matrices.push_back(I * unit(n, k, k));
    for (int k = 0; k + 1 < n; ++k) {
      ExactVector f = zero_vector(2 * n);
      f[k] = 1;
      f[k + 1] = -1;
      f[n + k] = 1;
      f[n + k + 1] = -1;
      pd.flat_basis_exact.push_back(f);
    }
  } else {
    throw std::invalid_argument("build_pair: unknown catalogue pair '" + catalogue_name + "'");
  }

  pd.inv.theta0 = real_involution_matrix(pd.alg, theta0);
  pd.inv.theta1 = real_involution_matrix(pd.alg, theta1);
  const int N = pd.alg.dim();
  const RMat id = RMat::Identity(N, N);
  auto require = [](bool cond, const std::string& what) {
    if (!cond) throw std::logic_error("build_pair: " + what);
  };
  require((pd.inv.theta0 * pd.inv.theta0 - id).norm() < kTol.identity, "theta0 not an involution");
  require((pd.inv.theta1 * pd.inv.theta1 - id).norm() < kTol.identity, "theta1 not an involution");
  require((pd.inv.theta0.transpose() * pd.inv.theta0 - id).norm() < kTol.identity,
          "theta0 not an isometry");
  require((pd.inv.theta1.transpose() * pd.inv.theta1 - id).norm() < kTol.identity,
          "theta1 not an isometry");
  pd.inv.commuting =
      (pd.inv.theta0 * pd.inv.theta1 - pd.inv.theta1 * pd.inv.theta0).norm() < kTol.identity;
  require(pd.inv.commuting, "involutions do not commute");
  // automorphism property, sampled on basis pairs
  for (int i = 0; i < std::min(N, 6); ++i)
    for (int j = 0; j < std::min(N, 6); ++j) {
      const CMat x = pd.alg.basis[i], y = pd.alg.basis[j];
      const CMat lhs = theta0(x * y - y * x);
      const CMat rhs = theta0(x) * theta0(y) - theta0(y) * theta0(x);
      require((lhs - rhs).norm() < 1e-10, "theta0 does not preserve brackets");
    }

  pd.p0 = eigenspace(pd.inv.theta0, -1.0, 1e-8);
  pd.k0 = eigenspace(pd.inv.theta0, +1.0, 1e-8);
  pd.p1 = eigenspace(pd.inv.theta1, -1.0, 1e-8);
  pd.k1 = eigenspace(pd.inv.theta1, +1.0, 1e-8);

  // the flat: abelian, inside p0 cap p1, and maximal abelian there
  std::vector<CMat> flat_mats;
  for (const auto& f : pd.flat_basis_exact) flat_mats.push_back(pd.embed(f));
  for (const auto& a : flat_mats)
    for (const auto& b : flat_mats) require((a * b - b * a).norm() < 1e-10, "flat not abelian");
  const RMat p01 = subspace_intersection(pd.p0, pd.p1);
  for (const auto& a : flat_mats) {
    const RVec c = pd.alg.coords(a);
    require(((pd.inv.theta0 * c) + c).norm() < 1e-8 * (1 + c.norm()), "flat not inside p0");
    require(((pd.inv.theta1 * c) + c).norm() < 1e-8 * (1 + c.norm()), "flat not inside p1");
  }
  // centralizer of the flat within p0 cap p1 must be the flat itself
  RMat stacked(static_cast<int>(flat_mats.size()) * N, p01.cols());
  for (std::size_t k = 0; k < flat_mats.size(); ++k)
    stacked.middleRows(static_cast<int>(k) * N, N) = pd.alg.ad_matrix(flat_mats[k]) * p01;
  Eigen::JacobiSVD<RMat> svd(stacked);
  int null_dim = p01.cols();
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) --null_dim;
  require(null_dim == static_cast<int>(pd.flat_dim()),
          "flat is not maximal abelian in p0 cap p1");
  return pd;
}

namespace {

/// Deterministic generic point of the flat: prime-reciprocal coefficients
/// over the exact flat basis keep all root pairings distinct and nonzero.
ExactVector generic_flat_point(const PairData& pd) {
  static const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  ExactVector q = zero_vector(pd.model_dim);
  for (std::size_t k = 0; k < pd.flat_basis_exact.size(); ++k)
    q = add(q, scale(Rat(1, primes[k % std::size(primes)]), pd.flat_basis_exact[k]));
  return q;
}

struct Cluster {
  double center = 0;
  std::vector<int> indices;
};

}  // namespace

ExtractedTriad extract_triad(const PairData& pd) {
  ExtractedTriad out;
  out.report.title = "extract_triad " + pd.name + " n=" + std::to_string(pd.n);
  const int N = pd.alg.dim();
  const Cplx I(0, 1);

  const ExactVector q_gen = generic_flat_point(pd);
  const RMat a_gen = pd.alg.ad_matrix(pd.embed(q_gen));
  const CMat m_gen = I * a_gen.cast<Cplx>();  // Hermitian
  Eigen::SelfAdjointEigenSolver<CMat> es(m_gen);
  const RVec evals = es.eigenvalues();

  // cluster sorted eigenvalues
  std::vector<Cluster> clusters;
  for (int i = 0; i < N; ++i) {
    if (clusters.empty() || evals(i) - evals(clusters.back().indices.back()) > 1e-6)
      clusters.push_back({});
    clusters.back().indices.push_back(i);
  }
  for (auto& c : clusters) {
    double s = 0;
    for (int i : c.indices) s += evals(i);
    c.center = s / static_cast<double>(c.indices.size());
  }
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i)
    if (clusters[i + 1].center - clusters[i].center < kTol.cluster_gap)
      throw std::domain_error(
          "extract_triad: eigenvalue clustering ambiguous; use a different generic H");

  // readout operators for the exact flat basis
  std::vector<RMat> readout_ops;
  for (const auto& f : pd.flat_basis_exact) readout_ops.push_back(pd.alg.ad_matrix(pd.embed(f)));

  // exact Gram of the flat basis for coordinate recovery
  const std::size_t r = pd.flat_dim();
  ExactMatrix gram(r, ExactVector(r, Rat(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(pd.flat_basis_exact[i], pd.flat_basis_exact[j]);

  const RMat theta01 = pd.inv.theta0 * pd.inv.theta1;

  double worst_scalar = 0, worst_snap = 0, worst_theta = 0;
  SymmetricTriad triad;
  triad.ambient_dim = pd.model_dim;
  long graded = 0, zero_dim = 0;
  std::vector<ExactVector> sigma, w;

  for (const auto& cl : clusters) {
    const int k = static_cast<int>(cl.indices.size());
    if (std::abs(cl.center) < kTol.cluster_gap) {
      zero_dim += k;
      continue;
    }
    graded += k;
    CMat u(N, k);
    for (int c = 0; c < k; ++c) u.col(c) = es.eigenvectors().col(cl.indices[c]);

    // readouts <alpha, f_j> via Rayleigh blocks; they must be scalar
    ExactVector readout_exact(r);
    std::vector<double> readout(r);
    for (std::size_t j = 0; j < r; ++j) {
      const CMat block = u.adjoint() * (I * readout_ops[j].cast<Cplx>()) * u;
      const double mean = block.trace().real() / k;
      const double dev = (block - mean * CMat::Identity(k, k)).norm();
      worst_scalar = std::max(worst_scalar, dev);
      if (dev > kTol.cluster_gap)
        throw std::domain_error(
            "extract_triad: readouts not scalar on a cluster; use a different generic H");
      readout[j] = mean;
    }

    // alpha = sum c_j f_j with Gram c = readout, solved in floating point
    // and snapped coordinate-wise to exact rationals
    RMat gd(r, r);
    RVec rd(r);
    for (std::size_t i = 0; i < r; ++i) {
      rd(static_cast<int>(i)) = readout[i];
      for (std::size_t j = 0; j < r; ++j) gd(i, j) = to_double(gram[i][j]);
    }
    const RVec cf = gd.fullPivLu().solve(rd);
    ExactVector alpha = zero_vector(pd.model_dim);
    for (std::size_t j = 0; j < r; ++j)
      alpha = add(alpha, scale(rational_snap(cf(static_cast<int>(j)), kTol.rational_snap, 1000000),
                               pd.flat_basis_exact[j]));
    // re-verify the snapped root against the measured readouts
    for (std::size_t j = 0; j < r; ++j)
      worst_snap =
          std::max(worst_snap, std::abs(to_double(dot(alpha, pd.flat_basis_exact[j])) - readout[j]));

    // epsilon grading by theta0 theta1 restricted to the cluster
    Eigen::SelfAdjointEigenSolver<CMat> et(u.adjoint() * theta01.cast<Cplx>() * u);
    long m_cnt = 0, n_cnt = 0;
    for (int c = 0; c < k; ++c) {
      const double ev = et.eigenvalues()(c);
      worst_theta = std::max(worst_theta, std::min(std::abs(ev - 1), std::abs(ev + 1)));
      if (ev > 0)
        ++m_cnt;
      else
        ++n_cnt;
    }
    if (m_cnt > 0) {
      sigma.push_back(alpha);
      triad.m[alpha] = m_cnt;
    }
    if (n_cnt > 0) {
      w.push_back(alpha);
      triad.n[alpha] = n_cnt;
    }
  }

  triad.sigma = rootsys::sorted_unique(std::move(sigma));
  triad.w = rootsys::sorted_unique(std::move(w));
  std::vector<ExactVector> all = triad.sigma;
  all.insert(all.end(), triad.w.begin(), triad.w.end());
  triad.sigma_tilde = rootsys::sorted_unique(std::move(all));

  out.triad = std::move(triad);
  out.graded_dimension = graded;
  out.centralizer_dimension = zero_dim;
  out.report.add("cluster readout scalarity", worst_scalar, kTol.cluster_gap);
  out.report.add("rational snap residual", worst_snap, kTol.rational_snap);
  out.report.add("theta grading eigenvalue deviation", worst_theta, kTol.rank);
  out.report.add("graded dimension = dim g - dim centralizer",
                 std::abs(static_cast<double>(graded - (N - zero_dim))), 0.5);
  return out;
}

int intersection_dimension(const PairData& pd, const PiPoint& h) {
  const CMat a = exp_skew(pd.embed(h.q, M_PI));
  const RMat ad_a = pd.alg.conj_matrix(a);
  const RMat moved = ad_a * pd.p1;
  RMat m(pd.alg.dim(), pd.p0.cols() + moved.cols());
  m << pd.p0, moved;
  Eigen::JacobiSVD<RMat> svd(m);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    if (s > kTol.marginal_lo && s < kTol.marginal_hi)
      throw std::domain_error("intersection_dimension: numerically marginal singular value " +
                              std::to_string(s) + "; retry with a perturbed exact H");
    if (s > kTol.rank) ++rank;
  }
  return static_cast<int>(pd.p0.cols() + moved.cols()) - rank;
}

int symbolic_intersection_dimension(const SymmetricTriad& t, std::size_t flat_dim,
                                    const PiPoint& h) {
  long dim = static_cast<long>(flat_dim);
  for (const auto& lambda : rootsys::positive_part(t.sigma)) {
    if (is_integer(dot(lambda, h.q))) dim += t.m.at(lambda);
  }
  for (const auto& alpha : rootsys::positive_part(t.w)) {
    if (is_half_odd(dot(alpha, h.q))) dim += t.n.at(alpha);
  }
  return static_cast<int>(dim);
}

CheckReport verify_commutative_lemma(const PairData& pd, const std::vector<ExactVector>& points,
                                     const ExactVector& x0, const PiPoint& h) {
  CheckReport rep;
  rep.title = "commutative lemma " + pd.name + " n=" + std::to_string(pd.n);
  const Cplx I(0, 1);

  const CMat x0_mat = pd.embed(x0);
  Eigen::SelfAdjointEigenSolver<CMat> ref(-I * x0_mat);
  RVec ref_ev = ref.eigenvalues();

  std::vector<CMat> mats;
  double worst_member = 0;
  for (const auto& p : points) {
    const CMat pm = pd.embed(p);
    Eigen::SelfAdjointEigenSolver<CMat> e(-I * pm);
    const double dev = (e.eigenvalues() - ref_ev).norm();
    worst_member = std::max(worst_member, dev);
    if (dev > kTol.rank)
      throw std::domain_error("verify_commutative_lemma: point (" + vec_to_string(p) +
                              ") fails orbit membership");
    mats.push_back(pm);
  }
  rep.add("orbit membership (eigenvalue multiset)", worst_member, kTol.rank);

  double worst_pair = 0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      worst_pair = std::max(worst_pair, pd.alg.norm(mats[i] * mats[j] - mats[j] * mats[i]));
  rep.add("max pairwise bracket norm", worst_pair, 1e-9);

  // orthonormal basis of p0 cap Ad(a) p1
  const CMat a = exp_skew(pd.embed(h.q, M_PI));
  const RMat moved = pd.alg.conj_matrix(a) * pd.p1;
  const RMat inter = subspace_intersection(pd.p0, moved);
  double worst_space = 0;
  for (const auto& x : mats)
    for (int c = 0; c < inter.cols(); ++c) {
      const CMat v = pd.alg.from_coords(inter.col(c));
      worst_space = std::max(worst_space, pd.alg.norm(x * v - v * x));
    }
  rep.add("max bracket against p0 cap Ad(a)p1", worst_space, 1e-9);
  return rep;
}

namespace {

/// Rotation/bracket identity residuals for one matched pair of spaces:
/// x_space inside k-side, its ad(H_gen)-image in p-side, target bracket
/// [X_i, Y_i] = root_mat.  Appends residual lines to rep.
void check_rotation_block(const RealLieAlgebra& alg, const RMat& x_space_basis,
                          const RMat& a_gen, double mu_gen, const CMat& root_mat,
                          const std::vector<std::pair<CMat, double>>& test_points,
                          const std::string& tag, CheckReport& rep) {
  const int nb = x_space_basis.cols();
  if (nb == 0) {
    rep.add(tag + " intertwiner present", 1.0, 0.5);
    return;
  }
  // Y_raw = ad(H_gen) X / mu; polar-orthonormalize within the image space
  RMat y_raw = (a_gen * x_space_basis) / mu_gen;
  Eigen::JacobiSVD<RMat> svd(y_raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < 1e-6)
    throw std::domain_error("verify_rotation_formulas: intertwiner rank deficiency at " + tag);
  const RMat y_space = svd.matrixU() * svd.matrixV().transpose();

  std::vector<CMat> xs, ys;
  for (int i = 0; i < nb; ++i) {
    xs.push_back(alg.from_coords(x_space_basis.col(i)));
    ys.push_back(alg.from_coords(y_space.col(i)));
  }
  double worst_ad = 0, worst_bracket = 0, worst_rot = 0;
  for (int i = 0; i < nb; ++i) {
    worst_bracket = std::max(worst_bracket, alg.norm(xs[i] * ys[i] - ys[i] * xs[i] - root_mat));
    for (const auto& [hm, pairing] : test_points) {
      worst_ad = std::max(worst_ad, alg.norm(hm * xs[i] - xs[i] * hm - pairing * ys[i]));
      worst_ad = std::max(worst_ad, alg.norm(hm * ys[i] - ys[i] * hm + pairing * xs[i]));
      const CMat adexp = exp_skew(hm);
      const CMat rx = adexp * xs[i] * adexp.adjoint();
      const CMat ry = adexp * ys[i] * adexp.adjoint();
      worst_rot = std::max(
          worst_rot, alg.norm(rx - std::cos(pairing) * xs[i] - std::sin(pairing) * ys[i]));
      worst_rot = std::max(
          worst_rot, alg.norm(ry + std::sin(pairing) * xs[i] - std::cos(pairing) * ys[i]));
    }
  }
  rep.add(tag + " [H,X]=<a,H>Y and [H,Y]=-<a,H>X", worst_ad, kTol.rank);
  rep.add(tag + " [X_i,Y_i] = root", worst_bracket, kTol.rank);
  rep.add(tag + " Ad(exp H) rotation", worst_rot, kTol.rank);
}

/// Basis (columns) of the mu^2-eigenspace of -ad(H_gen)^2 inside span(sub).
RMat ad_square_eigenspace(const RMat& sub, const RMat& a_gen, double mu, double tol = 1e-6) {
  if (sub.cols() == 0) return sub;
  const RMat s = sub.transpose() * (-(a_gen * a_gen)) * sub;
  const RMat sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(sym);
  std::vector<int> idx;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - mu * mu) < tol * (1 + mu * mu)) idx.push_back(i);
  RMat out(sub.rows(), static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(k) = sub * es.eigenvectors().col(idx[k]);
  return out;
}

}  // namespace

CheckReport verify_rotation_formulas(const PairData& pd, const PiPoint& h) {
  CheckReport rep;
  rep.title = "rotation formulas " + pd.name + " n=" + std::to_string(pd.n);
  const ExactVector q_gen = generic_flat_point(pd);
  const CMat h_gen_mat = pd.embed(q_gen);
  const RMat a_gen = pd.alg.ad_matrix(h_gen_mat);

  // (a) triad side: X in V_alpha(k0 cap p1), Y in V_alpha(p0 cap k1)
  const ExtractedTriad ext = extract_triad(pd);
  const RMat k0p1 = subspace_intersection(pd.k0, pd.p1);
  for (const auto& alpha : rootsys::positive_part(ext.triad.w)) {
    const double mu = to_double(dot(alpha, q_gen));
    const RMat x_space = ad_square_eigenspace(k0p1, a_gen, mu);
    if (x_space.cols() != ext.triad.n.at(alpha))
      throw std::domain_error("verify_rotation_formulas: V_alpha dimension mismatch");
    std::vector<std::pair<CMat, double>> test_points = {
        {h_gen_mat, mu}, {pd.embed(h.q, M_PI), M_PI * to_double(dot(alpha, h.q))}};
    check_rotation_block(pd.alg, x_space, a_gen, mu, pd.embed(alpha), test_points,
                         "W root (" + vec_to_string(alpha) + ")", rep);
  }

  // (b) congruent reduction for theta0 = conjugation: S in k_lambda,
  // T in p_lambda for the diagonal flat of su(m), lambda = e_a - e_b.
  const int m = pd.alg.m;
  const Cplx I(0, 1);
  std::vector<double> t_gen(m);
  {
    static const long primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    double mean = 0;
    for (int i = 0; i < m; ++i) mean += (t_gen[i] = 1.0 / primes[i % std::size(primes)]);
    mean /= m;
    for (auto& t : t_gen) t -= mean;
  }
  CMat diag_gen = CMat::Zero(m, m);
  for (int i = 0; i < m; ++i) diag_gen(i, i) = I * t_gen[i];
  const RMat a_diag = pd.alg.ad_matrix(diag_gen);
  // a second evaluation point with simple exact entries
  CMat diag_two = CMat::Zero(m, m);
  for (int i = 0; i < m; ++i) diag_two(i, i) = I * M_PI * (0.25 + 0.5 * i - 0.25 * (m - 1));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const double mu = t_gen[a] - t_gen[b];
      const RMat s_space = ad_square_eigenspace(pd.k0, a_diag, mu);
      CMat lambda_mat = CMat::Zero(m, m);
      lambda_mat(a, a) = 2.0 * I;
      lambda_mat(b, b) = -2.0 * I;
      std::vector<std::pair<CMat, double>> test_points = {
          {diag_gen, mu}, {diag_two, (diag_two(a, a) - diag_two(b, b)).imag()}};
      check_rotation_block(pd.alg, s_space, a_diag, mu, lambda_mat, test_points,
                           "congruent root e" + std::to_string(a + 1) + "-e" + std::to_string(b + 1),
                           rep);
    }
  return rep;
}

CheckReport verify_lemma_regularity(const PairData& pd, const PiPoint& h0, long n) {
  CheckReport rep;
  rep.title = "regularity lemma " + pd.name + " n=" + std::to_string(n);
  const RMat id = RMat::Identity(pd.alg.dim(), pd.alg.dim());

  const CMat a4n = exp_skew(pd.embed(h0.q, 4.0 * static_cast<double>(n) * M_PI));
  const double dev = (pd.alg.conj_matrix(a4n) - id).norm();
  rep.add("Ad(exp(4n H0)) = identity", dev, kTol.rank);

  const int dim = intersection_dimension(pd, h0);
  rep.add("H0 regular: dim(p0 cap Ad(exp H0) p1) = dim a",
          std::abs(dim - static_cast<double>(pd.flat_dim())), 0.5);

  // exponent consistency: Ad(exp(2 H0))^{2n} agrees with Ad(exp(4n H0))
  const RMat ad2 = pd.alg.conj_matrix(exp_skew(pd.embed(h0.q, 2.0 * M_PI)));
  RMat pow = id;
  for (long k = 0; k < 2 * n; ++k) pow = pow * ad2;
  rep.add("exponent consistency", (pow - pd.alg.conj_matrix(a4n)).norm(), 1e-7);
  return rep;
}

std::vector<PiPoint> seeded_rational_grid(const PairData& pd, const SymmetricTriad& t, int count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(2, 8);
  std::uniform_int_distribution<std::size_t> pick_root(0, t.sigma_tilde.size() - 1);
  std::uniform_int_distribution<int> pick_wall(0, 2);
  std::vector<PiPoint> grid;
  while (static_cast<int>(grid.size()) < count) {
    ExactVector q = zero_vector(pd.model_dim);
    for (const auto& f : pd.flat_basis_exact) q = add(q, scale(Rat(num(rng), den(rng)), f));
    if (grid.size() % 2 == 1 && !t.sigma_tilde.empty()) {
      // project onto a singular wall: force <rho, q> to a lattice value
      const ExactVector& rho = t.sigma_tilde[pick_root(rng)];
      const int wall = pick_wall(rng);
      const Rat target = wall == 2 ? Rat(1, 2) : Rat(wall);  // 0, 1, or 1/2
      q = add(q, scale((target - dot(rho, q)) / dot(rho, rho), rho));
    }
    grid.push_back({q});
  }
  return grid;
}

}  // namespace flagtriad::oracle
