#pragma once

#include "flagtriad/flags.hpp"
#include "flagtriad/triad.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flagtriad::oracle {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Global numerical tolerances.  Spectral gaps in these small algebras
/// are O(1); the thresholds sit orders of magnitude below.
struct Tolerances {
  double identity = 1e-12;       // involution / isometry checks
  double cluster_gap = 1e-4;     // eigenvalue clustering
  double rational_snap = 1e-6;   // continued-fraction snapping
  double rank = 1e-8;            // singular value threshold
  double marginal_lo = 1e-9;     // marginal window around the rank cut
  double marginal_hi = 1e-7;
};
inline constexpr Tolerances kTol{};

/// su(m) as a real algebra: an orthonormal basis under the invariant
/// inner product <X,Y> = -1/2 tr(XY).
struct RealLieAlgebra {
  int m = 0;
  std::vector<CMat> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  double ip(const CMat& x, const CMat& y) const;
  double norm(const CMat& x) const;
  RVec coords(const CMat& x) const;
  CMat from_coords(const RVec& c) const;
  /// matrix of X |-> [v, X] in the orthonormal basis
  RMat ad_matrix(const CMat& v) const;
  /// matrix of X |-> u X u^* in the orthonormal basis (u unitary)
  RMat conj_matrix(const CMat& u) const;
};

RealLieAlgebra build_su(int m);

/// Unitary exponential of a skew-Hermitian matrix.
CMat exp_skew(const CMat& h);

struct InvolutionPair {
  RMat theta0, theta1;  // real-linear involutions in the orthonormal basis
  bool commuting = false;
};

/// One concrete matrix model: the algebra, the involutions, the flat a
/// in both exact model coordinates and matrix form.
struct PairData {
  std::string name;
  int n = 0;

  RealLieAlgebra alg;
  InvolutionPair inv;

  std::size_t model_dim = 0;                  // a-model coordinate dimension
  std::vector<CMat> model_basis_matrices;     // image of each model basis vector
  std::vector<ExactVector> flat_basis_exact;  // exact basis of the flat in model coords

  std::size_t flat_dim() const { return flat_basis_exact.size(); }
  /// embeds exact model coordinates (optionally scaled by pi) as a matrix
  CMat embed(const ExactVector& model, double scale = 1.0) const;

  // orthonormal coordinate bases (columns) of the graded pieces
  RMat p0, p1, k0, k1;
};

/// Builds su(m) with the catalogue involutions, the printed flat, and the
/// graded decomposition; asserts the algebra/involution invariants and
/// that the flat is maximal abelian in p0 cap p1.
PairData build_pair(const std::string& catalogue_name, int n);

// --- reports ---

struct CheckLine {
  std::string name;
  double residual = 0;
  double threshold = 0;
  bool pass = false;
};

struct CheckReport {
  std::string title;
  std::vector<CheckLine> lines;
  std::uint64_t seed = 0;

  void add(std::string name, double residual, double threshold);
  bool all_pass() const;
};

// --- triad extraction ---

struct ExtractedTriad {
  triads::SymmetricTriad triad;      // snapped exact roots in model coordinates
  long graded_dimension = 0;         // sum over sigma_tilde of m + n (complex)
  long centralizer_dimension = 0;    // dim of the centralizer of a in g
  CheckReport report;
};

/// Simultaneously diagonalizes the ad-action of the flat and theta0*theta1
/// on the centralizer complement, clusters the eigenvalue readouts into
/// roots, and snaps them to exact rationals.  Throws on clustering
/// ambiguity (advice: pick a different generic H).
ExtractedTriad extract_triad(const PairData& pair);

/// dim(p0 cap Ad(exp H) p1) via singular values of the concatenated
/// basis system; throws "numerically marginal" when a singular value
/// falls inside the marginal window.
int intersection_dimension(const PairData& pair, const triads::PiPoint& h);

/// dim a + sum m(lambda)[<lambda,H> in pi Z] + sum n(alpha)[<alpha,H> in
/// pi/2 + pi Z] over positive roots, from the exact triad data.
int symbolic_intersection_dimension(const triads::SymmetricTriad& t, std::size_t flat_dim,
                                    const triads::PiPoint& h);

/// Commutativity of a discrete intersection: pairwise brackets and
/// brackets against p0 cap Ad(a)p1 all vanish.
CheckReport verify_commutative_lemma(const PairData& pair, const std::vector<ExactVector>& points,
                                     const ExactVector& x0, const triads::PiPoint& h);

/// Rotation and bracket identities for the paired bases of the
/// V_alpha^perp spaces (triad side) and of k_lambda/p_lambda in the
/// congruent reduction (theta0 alone).
CheckReport verify_rotation_formulas(const PairData& pair, const triads::PiPoint& h);

/// Ad(exp(4 n H0)) = identity on the adjoint representation, plus
/// regularity of H0 via the intersection dimension.
CheckReport verify_lemma_regularity(const PairData& pair, const triads::PiPoint& h0, long n);

/// Seeded exact rational sample points in the model flat; roughly half
/// are projected onto singular walls.
std::vector<triads::PiPoint> seeded_rational_grid(const PairData& pair,
                                                  const triads::SymmetricTriad& t, int count,
                                                  std::uint64_t seed);

}  // namespace flagtriad::oracle
