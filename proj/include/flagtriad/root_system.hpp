#pragma once

#include "flagtriad/exact.hpp"

#include <map>
#include <string>
#include <vector>

namespace flagtriad::rootsys {

/// Finite set of nonzero vectors closed under its own reflections,
/// with a distinguished ordered simple system and a type label.
/// Roots are kept sorted lexicographically; multiplicities default to 1
/// and record projection preimage counts for restricted systems.
struct RootSystem {
  std::vector<ExactVector> roots;   // sorted, no duplicates
  std::vector<ExactVector> simple;  // ordered (Bourbaki order for the builtin families)
  std::string label;                // "A3", "G2", "restricted", "custom", ...
  std::map<ExactVector, long, decltype(&lex_less)> multiplicity{&lex_less};

  std::size_t ambient_dim() const { return roots.empty() ? 0 : roots[0].size(); }
  bool contains(const ExactVector& v) const;
  long mult(const ExactVector& v) const;
};

/// s_alpha(v) = v - 2<alpha,v>/|alpha|^2 alpha, exact.
ExactVector reflect(const ExactVector& alpha, const ExactVector& v);

/// Standard rational realization of the crystallographic families,
/// simple roots in Bourbaki order.  Valid pairs: A,B,C >= 1; D >= 2;
/// E 6..8; F 4; G 2.
RootSystem build_root_system(char family, int rank);

/// Full orbit of x under the group generated by { s_alpha : alpha in roots },
/// breadth-first closure with exact dedup, output sorted lexicographically.
std::vector<ExactVector> weyl_orbit(const std::vector<ExactVector>& roots, const ExactVector& x);

inline std::vector<ExactVector> weyl_orbit(const RootSystem& system, const ExactVector& x) {
  return weyl_orbit(system.roots, x);
}

/// Orthogonal projections of delta onto span(subspace); zero projections are
/// discarded, distinct nonzero projections keep their preimage count as
/// multiplicity.  Projections stay in ambient coordinates.
RootSystem restricted_root_system(const RootSystem& delta, const std::vector<ExactVector>& subspace);

/// Complementary roots, their projections onto z cap t, and the
/// multiplicity-weighted positive sum.
struct ComplementaryRoots {
  std::vector<ExactVector> delta_m;               // { alpha : <alpha,x0> != 0 }, sorted
  std::vector<ExactVector> t_roots;               // distinct projections, sorted
  std::map<ExactVector, long, decltype(&lex_less)> t_multiplicity{&lex_less};
  ExactVector delta_vector;                       // sum of m_lambda lambda over <lambda,x0> > 0
};
ComplementaryRoots complementary_and_t_roots(const RootSystem& delta, const ExactVector& x0);

// --- positive systems ---

/// Sign of <f, v> for the fixed generic functional f = (N, N^2, ..., N^d)
/// with N huge; exact: the sign of the highest-index nonzero coordinate.
/// Zero only for v = 0, so the induced positive system is tie-free.
int generic_sign(const ExactVector& v);

/// Positive part of a negation-symmetric set, per generic_sign.
std::vector<ExactVector> positive_part(const std::vector<ExactVector>& roots);

/// Indecomposable elements of the given positive system.
std::vector<ExactVector> simple_system(const std::vector<ExactVector>& positive);

/// Validation used by tests and by the triad axiom checker: reflection
/// closure, 0 absent, negation symmetry, and (optionally) integrality of
/// the Cartan numbers 2<a,b>/|b|^2.
struct RootSystemCheck {
  bool ok = true;
  std::string violation;  // human-readable witness when !ok
};
RootSystemCheck check_root_system(const std::vector<ExactVector>& roots, bool require_integrality);

/// Utility: sort + dedup.
std::vector<ExactVector> sorted_unique(std::vector<ExactVector> v);

}  // namespace flagtriad::rootsys
