#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagtriad {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Vector with exact rational coordinates; the inner product is the
/// standard dot product of the coordinate realization.
using ExactVector = std::vector<Rat>;

/// Dense rational matrix stored row-major.
using ExactMatrix = std::vector<ExactVector>;

inline Rat dot(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline ExactVector add(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ExactVector sub(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline ExactVector scale(const Rat& c, const ExactVector& a) {
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline ExactVector negate(const ExactVector& a) { return scale(Rat(-1), a); }

inline bool is_zero(const ExactVector& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

inline ExactVector zero_vector(std::size_t dim) { return ExactVector(dim, Rat(0)); }

inline ExactVector basis_vector(std::size_t dim, std::size_t i) {
  ExactVector e(dim, Rat(0));
  e[i] = 1;
  return e;
}

/// Lexicographic order on coordinates; it is the deterministic ordering
/// used for all set-valued results.
inline bool lex_less(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct VecHash {
  std::size_t operator()(const ExactVector& v) const { return boost::hash<ExactVector>{}(v); }
};

/// Membership of a rational in Z, 1/2 + Z, and (1/2) Z.  These back the
/// pi-lattice tests: a pairing stored in units of pi is in pi Z exactly
/// when the stored rational is an integer.
inline bool is_integer(const Rat& x) { return denominator(x) == 1; }
inline bool is_half_odd(const Rat& x) { return !is_integer(x) && is_integer(x + x); }
inline bool is_half_integer(const Rat& x) { return is_integer(x + x); }

// --- exact linear algebra (Gaussian elimination over Q) ---

/// Row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_echelon(ExactMatrix& m);

std::size_t rank(ExactMatrix m);

/// Solves sum_j c_j basis[j] = target; returns the coefficients or
/// nullopt when target is outside the span.
std::optional<ExactVector> coordinates_in_span(const std::vector<ExactVector>& basis,
                                               const ExactVector& target);

inline bool in_span(const std::vector<ExactVector>& basis, const ExactVector& target) {
  return coordinates_in_span(basis, target).has_value();
}

/// Basis of { x : m x = 0 }.
std::vector<ExactVector> nullspace(const ExactMatrix& m, std::size_t ncols);

/// Orthogonal projection of v onto span(basis), exact Gram solve.
/// Requires basis linearly independent.
ExactVector project_onto_span(const std::vector<ExactVector>& basis, const ExactVector& v);

/// Solves the square system a x = b; throws when a is singular.
ExactVector solve_square(const ExactMatrix& a, const ExactVector& b);

// --- parsing / printing of exact fractions ("p/q" syntax) ---

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);
std::string vec_to_string(const ExactVector& v);
ExactVector vec_from_string(const std::string& s);

}  // namespace flagtriad
