#pragma once

#include "flagtriad/root_system.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flagtriad::triads {

/// A point H of the flat stored as H = pi * q with rational q, so the
/// lattice memberships <lambda,H> in pi Z and in pi/2 + pi Z are decided
/// exactly on q.
struct PiPoint {
  ExactVector q;

  std::size_t dim() const { return q.size(); }
};

inline PiPoint pi_scale(const Rat& c, const PiPoint& p) { return {scale(c, p.q)}; }
inline PiPoint pi_add(const PiPoint& a, const PiPoint& b) { return {add(a.q, b.q)}; }

/// Triple of root subsets of one coordinate space.  The flat a is the
/// span of sigma_tilde; the coordinate space may be larger (catalogue
/// triads keep their natural ambient coordinates).  m and n are optional
/// multiplicity metadata; the axioms never consult them.
struct SymmetricTriad {
  std::size_t ambient_dim = 0;
  std::vector<ExactVector> sigma_tilde;  // sorted
  std::vector<ExactVector> sigma;        // sorted
  std::vector<ExactVector> w;            // sorted
  std::map<ExactVector, long, decltype(&lex_less)> m{&lex_less};
  std::map<ExactVector, long, decltype(&lex_less)> n{&lex_less};

  // filled by direct_sum: coordinate block layout and the summands
  struct Block {
    std::size_t offset = 0;
    std::size_t dim = 0;
  };
  std::vector<Block> blocks;
  std::vector<SymmetricTriad> components;

  bool is_sum() const { return !components.empty(); }
  /// dim of the flat a = span(sigma_tilde)
  std::size_t flat_dim() const;
};

/// Builds the triple from Sigma and W; sigma_tilde = Sigma cup W.
SymmetricTriad make_triad(std::size_t ambient_dim, std::vector<ExactVector> sigma,
                          std::vector<ExactVector> w);

// --- axioms ---

struct AxiomCondition {
  int index = 0;
  bool pass = true;
  std::string witness;  // violating pair / reason when failing
};

struct AxiomReport {
  std::array<AxiomCondition, 6> conditions;
  bool all_pass() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
};

/// Per-condition check of the six defining conditions; never throws, all
/// defects are reported with a witness.
AxiomReport check_axioms(const SymmetricTriad& t);

// --- regular points ---

struct Violation {
  ExactVector root;
  // 'S': lambda in Sigma with <lambda,H> in pi Z
  // 'W': alpha in W with <alpha,H> in pi/2 + pi Z
  char klass = 'S';
  Rat pairing;  // <root, q>, in units of pi
};

struct RegularityReport {
  bool regular = true;
  std::vector<Violation> violations;
};

RegularityReport is_regular(const SymmetricTriad& t, const PiPoint& h);

// --- fundamental cell ---

/// Distinguished wall data of the fundamental cell P0: alpha_tilde in W+,
/// its expansion alpha_tilde = sum m_i alpha_i over the simple system Pi
/// of Sigma, and the vertex directions H_i with <H_i, alpha_tilde> = pi/2,
/// <H_i, alpha_j> = 0 (j != i).
struct CellData {
  ExactVector alpha_tilde;
  std::vector<long> m_coeffs;
  std::vector<PiPoint> h_basis;
  std::vector<ExactVector> simple_sigma;

  long m_sum() const;
  /// interior sample sum t_i H_i with all t_i = s (0 < s*r < 1 required)
  PiPoint interior_point(const Rat& s) const;
};

CellData fundamental_cell(const SymmetricTriad& t);

// --- lattice Gamma ---

/// <lambda, H> in (pi/2) Z for all lambda in sigma_tilde.
bool gamma_contains(const SymmetricTriad& t, const PiPoint& h);
/// Reduced test over Sigma alone; agrees with gamma_contains on triads.
bool gamma_contains_sigma_only(const SymmetricTriad& t, const PiPoint& h);

// --- regular lattice points (Lemma construction) ---

/// H0 = sum (m_i / n) H_i for n > sum m_i; regular with n*H0 in Gamma.
PiPoint st_point(const SymmetricTriad& t, long n);

/// Direct-sum version: per-component n_j, combined n = prod n_j.
std::pair<PiPoint, long> st_point_direct_sum(const SymmetricTriad& sum,
                                             const std::vector<long>& per_component_n);

// --- affine Weyl group generators ---

struct AffineIsometry {
  ExactMatrix linear;   // rational orthogonal reflection matrix
  PiPoint translation;  // in units of pi

  PiPoint apply(const PiPoint& p) const;
};

/// The displayed generator set, translations bounded by |n| <= n_range:
/// (s_lambda, 2n pi lambda/|lambda|^2) for lambda in Sigma and
/// (s_alpha, (2n+1) pi alpha/|alpha|^2) for alpha in W.  Exact duplicates
/// (from +-root symmetry) are emitted once.
std::vector<AffineIsometry> affine_generators(const SymmetricTriad& t, long n_range);

// --- span property ---

/// W(Sigma)-orbits of every root in Sigma cup W span the flat.
/// Requires Sigma irreducible.
bool span_property(const SymmetricTriad& t);

// --- direct sums ---

/// Embeds the components into orthogonal coordinate blocks.
SymmetricTriad direct_sum(const std::vector<SymmetricTriad>& components);

/// Restriction of a point in the sum's coordinates to one block.
PiPoint block_restrict(const SymmetricTriad& sum, std::size_t block_index, const PiPoint& h);

}  // namespace flagtriad::triads
