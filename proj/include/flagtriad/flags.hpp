#pragma once

#include "flagtriad/root_system.hpp"
#include "flagtriad/triad.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flagtriad::flags {

/// Base point of an adjoint orbit, given by its distinct diagonal values
/// with multiplicities.  Ambient coordinates are derived per catalogue
/// entry.
struct BasePoint {
  std::vector<std::pair<Rat, long>> pattern;  // (value, multiplicity), values distinct

  /// Groups equal entries of a raw value list; order of first occurrence.
  static BasePoint from_values(const std::vector<Rat>& raw);

  std::vector<Rat> values_expanded() const;  // one entry per multiplicity
  long total_multiplicity() const;
  bool is_zero() const;
};

struct IntersectionResult {
  enum class Kind { Discrete, Continuum };
  Kind kind = Kind::Discrete;
  std::vector<ExactVector> points;  // sorted; empty for Continuum
  std::size_t cardinality = 0;
  // Continuum data: the violated wall and a point of the orbit moved by
  // the circle construction, X = w^{-1} x0 with <root, X> != 0.
  triads::Violation witness;
  ExactVector witness_x;
};

/// W(Delta) x0: the maximal antipodal set through x0 in the diagonal model.
std::vector<ExactVector> maximal_antipodal(const rootsys::RootSystem& delta,
                                           const ExactVector& x0);

/// Congruent pair: discrete iff <lambda,H> not in pi Z for every lambda
/// in R; then L cap Ad(a)L = W(R) x0.
IntersectionResult congruent_intersection(const rootsys::RootSystem& r, const ExactVector& x0,
                                          const triads::PiPoint& h);

/// Non-congruent pair: discrete iff H is a regular point of the triad;
/// then L0 cap Ad(a)L1 = W(sigma_tilde) x0.
IntersectionResult noncongruent_intersection(const triads::SymmetricTriad& t,
                                             const ExactVector& x0, const triads::PiPoint& h);

/// A deterministic regular point for the given walls: all pairings land
/// in (-1/2, 1/2) \ {0}.
triads::PiPoint small_regular_point(const std::vector<ExactVector>& sigma,
                                    const std::vector<ExactVector>& w, std::size_t dim);

struct TightnessCount {
  long count = 0;
  std::optional<long> sb_reference;  // closed form when the catalogue states one
};

TightnessCount tightness_count(const rootsys::RootSystem& r, const ExactVector& x0);
TightnessCount tightness_count(const triads::SymmetricTriad& t, const ExactVector& x0);

/// Diagonal-embedding triads for the product-algebra cases: case 4 maps
/// alpha to (alpha, -alpha), case 3 to (alpha, -alpha, alpha, -alpha);
/// in both, Sigma = W = sigma_tilde = the embedded set.
triads::SymmetricTriad matsuki_doubling(int case_no, const rootsys::RootSystem& base);

// --- builtin catalogue ---

/// One catalogue pair, sized: triad coordinates are chosen so the plain
/// dot product equals the invariant inner product -1/2 tr(XY) of the
/// matrix model, making every pi-lattice test exact.
struct CataloguePair {
  std::string name;
  int n = 0;               // size parameter
  std::string triad_type;  // classification label
  bool congruent = false;
  bool degenerate = false;  // sigma cap W empty (outside the triad axioms)

  std::size_t a_dim = 0;                   // a-model coordinate dimension
  triads::SymmetricTriad triad;            // non-congruent pairs
  rootsys::RootSystem restricted;          // congruent pairs: R with multiplicities
  rootsys::RootSystem ambient;             // Delta in t-model coordinates
  std::vector<ExactVector> embed_basis;    // a-model basis vector images in t-model

  /// user-facing coordinates <-> a-model coordinates
  ExactVector user_to_model(const std::vector<Rat>& user) const;
  std::vector<Rat> model_to_user(const ExactVector& model) const;

  ExactVector expand_x0(const BasePoint& x0) const;  // a-model coordinates
  triads::PiPoint expand_h(const std::vector<Rat>& user_q) const;

  ExactVector embed_to_ambient(const ExactVector& model) const;
  /// pulls an ambient vector back through the embedding; nullopt when the
  /// vector is outside the embedded flat
  std::optional<ExactVector> pull_back(const ExactVector& ambient_vec) const;

  std::optional<long> sb_closed_form(const BasePoint& x0) const;
};

std::vector<std::string> catalogue_names();
CataloguePair catalogue_pair(const std::string& name, int n);

/// Intersection for a catalogue pair; when ambient data is present the
/// orbit-equality chain W(sigma_tilde) x0 = W(Delta) x0 cap a is verified
/// and a mismatch throws.
IntersectionResult intersect_pair(const CataloguePair& pair, const BasePoint& x0,
                                  const triads::PiPoint& h);

TightnessCount tightness_count(const CataloguePair& pair, const BasePoint& x0);

/// The exact set W(Delta) x0emb cap span(embedded flat), pulled back to
/// a-model coordinates.
std::vector<ExactVector> ambient_orbit_in_flat(const CataloguePair& pair, const ExactVector& x0);

}  // namespace flagtriad::flags
