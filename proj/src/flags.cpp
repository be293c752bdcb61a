#include "flagtriad/flags.hpp"

#include <algorithm>
#include <numeric>

namespace flagtriad::flags {

using rootsys::RootSystem;
using rootsys::build_root_system;
using rootsys::sorted_unique;
using rootsys::weyl_orbit;
using triads::PiPoint;
using triads::SymmetricTriad;

BasePoint BasePoint::from_values(const std::vector<Rat>& raw) {
  BasePoint bp;
  for (const Rat& v : raw) {
    auto it = std::find_if(bp.pattern.begin(), bp.pattern.end(),
                           [&](const auto& p) { return p.first == v; });
    if (it == bp.pattern.end())
      bp.pattern.emplace_back(v, 1);
    else
      ++it->second;
  }
  return bp;
}

std::vector<Rat> BasePoint::values_expanded() const {
  std::vector<Rat> out;
  for (const auto& [v, m] : pattern) out.insert(out.end(), m, v);
  return out;
}

long BasePoint::total_multiplicity() const {
  long t = 0;
  for (const auto& [v, m] : pattern) t += m;
  return t;
}

bool BasePoint::is_zero() const {
  for (const auto& [v, m] : pattern)
    if (v != 0) return false;
  return true;
}

std::vector<ExactVector> maximal_antipodal(const RootSystem& delta, const ExactVector& x0) {
  if (is_zero(x0)) throw std::invalid_argument("maximal_antipodal: base point must be nonzero");
  return weyl_orbit(delta, x0);
}

namespace {

/// X = w^{-1} x0 in the W(reflections)-orbit of x0 with <root, X> != 0;
/// exists whenever the orbit spans a space not orthogonal to root.
ExactVector orbit_point_pairing_nonzero(const std::vector<ExactVector>& reflection_roots,
                                        const ExactVector& x0, const ExactVector& root) {
  for (const auto& x : weyl_orbit(reflection_roots, x0))
    if (dot(root, x) != 0) return x;
  throw std::domain_error("no orbit point pairs nontrivially with the violating root");
}

}  // namespace

IntersectionResult congruent_intersection(const RootSystem& r, const ExactVector& x0,
                                          const PiPoint& h) {
  if (is_zero(x0)) throw std::invalid_argument("congruent_intersection: x0 must be nonzero");
  IntersectionResult res;
  for (const auto& lambda : r.roots) {
    if (is_integer(dot(lambda, h.q))) {
      res.kind = IntersectionResult::Kind::Continuum;
      res.witness = {lambda, 'S', dot(lambda, h.q)};
      res.witness_x = orbit_point_pairing_nonzero(r.roots, x0, lambda);
      return res;
    }
  }
  res.kind = IntersectionResult::Kind::Discrete;
  res.points = weyl_orbit(r, x0);
  res.cardinality = res.points.size();
  return res;
}

IntersectionResult noncongruent_intersection(const SymmetricTriad& t, const ExactVector& x0,
                                             const PiPoint& h) {
  if (is_zero(x0)) throw std::invalid_argument("noncongruent_intersection: x0 must be nonzero");
  const auto axioms = triads::check_axioms(t);
  if (!axioms.all_pass())
    throw std::domain_error("noncongruent_intersection: triad fails the axioms");
  const auto reg = triads::is_regular(t, h);
  IntersectionResult res;
  if (reg.regular) {
    res.kind = IntersectionResult::Kind::Discrete;
    res.points = weyl_orbit(t.sigma_tilde, x0);
    res.cardinality = res.points.size();
    return res;
  }
  res.kind = IntersectionResult::Kind::Continuum;
  res.witness = reg.violations.front();
  res.witness_x = orbit_point_pairing_nonzero(t.sigma, x0, res.witness.root);
  return res;
}

PiPoint small_regular_point(const std::vector<ExactVector>& sigma,
                            const std::vector<ExactVector>& w, std::size_t dim) {
  static const long primes[] = {101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
                                151, 157, 163, 167, 173, 179, 181, 191, 193, 197};
  std::vector<ExactVector> walls = sigma;
  walls.insert(walls.end(), w.begin(), w.end());
  // search the prime-reciprocal family for a direction not orthogonal to
  // any wall, then shrink until every pairing is inside (-1/2, 1/2)
  for (int shift = 0; shift + dim <= std::size(primes); ++shift) {
    ExactVector v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = Rat(1, primes[shift + k]);
    bool ok = true;
    Rat max_abs = 0;
    for (const auto& root : walls) {
      const Rat p = dot(root, v);
      if (p == 0) {
        ok = false;
        break;
      }
      max_abs = std::max(max_abs, p < 0 ? Rat(-p) : p,
                         [](const Rat& a, const Rat& b) { return a < b; });
    }
    if (!ok) continue;
    const Rat c = max_abs < Rat(1, 3) ? Rat(1) : Rat(1, 3) / max_abs;
    return {scale(c, v)};
  }
  throw std::domain_error("small_regular_point: no generic direction found");
}

namespace {

TightnessCount count_at_three_regular_points(
    const std::vector<ExactVector>& sigma, const std::vector<ExactVector>& w,
    const std::vector<ExactVector>& orbit_roots, const ExactVector& x0, std::size_t dim,
    const std::function<bool(const PiPoint&)>& regular,
    const std::function<std::vector<ExactVector>(const PiPoint&)>& points_at) {
  const PiPoint base = small_regular_point(sigma, w, dim);
  std::vector<std::vector<ExactVector>> sets;
  for (long k : {1L, 2L, 3L}) {
    const PiPoint h = triads::pi_scale(Rat(1, k), base);
    if (!regular(h)) throw std::logic_error("tightness_count: sample point not regular");
    sets.push_back(points_at(h));
  }
  if (sets[0] != sets[1] || sets[1] != sets[2])
    throw std::logic_error("tightness_count: point sets differ across regular points");
  (void)orbit_roots;
  return {static_cast<long>(sets[0].size()), std::nullopt};
}

}  // namespace

TightnessCount tightness_count(const RootSystem& r, const ExactVector& x0) {
  return count_at_three_regular_points(
      r.roots, {}, r.roots, x0, x0.size(),
      [&](const PiPoint& h) {
        for (const auto& lambda : r.roots)
          if (is_integer(dot(lambda, h.q))) return false;
        return true;
      },
      [&](const PiPoint& h) { return congruent_intersection(r, x0, h).points; });
}

TightnessCount tightness_count(const SymmetricTriad& t, const ExactVector& x0) {
  return count_at_three_regular_points(
      t.sigma, t.w, t.sigma_tilde, x0, t.ambient_dim,
      [&](const PiPoint& h) { return triads::is_regular(t, h).regular; },
      [&](const PiPoint& h) { return noncongruent_intersection(t, x0, h).points; });
}

SymmetricTriad matsuki_doubling(int case_no, const RootSystem& base) {
  if (case_no != 3 && case_no != 4)
    throw std::invalid_argument("matsuki_doubling: case must be 3 or 4");
  const int copies = case_no == 3 ? 4 : 2;
  const std::size_t d = base.ambient_dim();
  std::vector<ExactVector> roots;
  for (const auto& alpha : base.roots) {
    ExactVector v(copies * d);
    for (int c = 0; c < copies; ++c) {
      const Rat sign = (c % 2 == 0) ? Rat(1) : Rat(-1);
      for (std::size_t k = 0; k < d; ++k) v[c * d + k] = sign * alpha[k];
    }
    roots.push_back(std::move(v));
  }
  return triads::make_triad(copies * d, roots, roots);
}

// --- catalogue ---

namespace {

RootSystem scaled(RootSystem rs, const Rat& c) {
  std::vector<ExactVector> roots;
  decltype(rs.multiplicity) mult(&lex_less);
  for (const auto& r : rs.roots) {
    auto s = scale(c, r);
    mult[s] = rs.mult(r);
    roots.push_back(std::move(s));
  }
  rs.roots = sorted_unique(std::move(roots));
  for (auto& s : rs.simple) s = scale(c, s);
  rs.multiplicity = std::move(mult);
  return rs;
}

/// type III-A_{n-1} triad on Q^n: sigma = W = { +-(e_i - e_j) },
/// m(lambda) = n(lambda) = 2 in the su(2n) matrix model.
SymmetricTriad triad_type_iii_a(int n) {
  std::vector<ExactVector> roots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ExactVector v = zero_vector(n);
      v[i] = 1;
      v[j] = -1;
      roots.push_back(v);
    }
  auto t = triads::make_triad(n, roots, roots);
  for (const auto& r : t.sigma_tilde) {
    t.m[r] = 2;
    t.n[r] = 2;
  }
  return t;
}

/// type II-BC_1 triad on Q^1: sigma = {+-a}, W = {+-a, +-2a}; for n = 2
/// the sigma part degenerates to the empty set.
SymmetricTriad triad_type_ii_bc1(int n) {
  const ExactVector a = {Rat(1)};
  const ExactVector a2 = {Rat(2)};
  std::vector<ExactVector> sigma, w;
  if (n >= 3) sigma = {a, negate(a)};
  w = {a2, negate(a2)};
  if (n >= 3) {
    w.push_back(a);
    w.push_back(negate(a));
  }
  auto t = triads::make_triad(1, sigma, w);
  if (n >= 3) {
    t.m[a] = n - 2;
    t.m[negate(a)] = n - 2;
    t.n[a] = n - 2;
    t.n[negate(a)] = n - 2;
  }
  t.n[a2] = 1;
  t.n[negate(a2)] = 1;
  return t;
}

}  // namespace

ExactVector CataloguePair::user_to_model(const std::vector<Rat>& user) const {
  if (name == "su-n-so") {
    // diagonal values t |-> (t/2, t/2) in the doubled model
    if (user.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("expected " + std::to_string(n) + " coordinates");
    ExactVector v(2 * n);
    for (int i = 0; i < n; ++i) v[i] = v[n + i] = user[i] / 2;
    return v;
  }
  if (user.size() != a_dim)
    throw std::invalid_argument("expected " + std::to_string(a_dim) + " coordinates");
  return ExactVector(user.begin(), user.end());
}

std::vector<Rat> CataloguePair::model_to_user(const ExactVector& model) const {
  if (name == "su-n-so") {
    std::vector<Rat> out(n);
    for (int i = 0; i < n; ++i) out[i] = 2 * model[i];
    return out;
  }
  return std::vector<Rat>(model.begin(), model.end());
}

ExactVector CataloguePair::expand_x0(const BasePoint& x0) const {
  if (x0.is_zero()) throw std::invalid_argument("base point must be nonzero");
  for (std::size_t i = 0; i < x0.pattern.size(); ++i)
    for (std::size_t j = i + 1; j < x0.pattern.size(); ++j)
      if (x0.pattern[i].first == x0.pattern[j].first)
        throw std::invalid_argument("base point values must be pairwise distinct");
  const auto vals = x0.values_expanded();
  if (name == "su2n-so-sp" || name == "su-n-so") {
    Rat sum = 0;
    for (const auto& [v, m] : x0.pattern) sum += v * m;
    if (sum != 0) throw std::invalid_argument("base point must have trace zero");
  }
  return user_to_model(vals);
}

PiPoint CataloguePair::expand_h(const std::vector<Rat>& user_q) const {
  if (name == "su2n-so-sp") {
    Rat sum = 0;
    for (const auto& v : user_q) sum += v;
    if (sum != 0) throw std::invalid_argument("H coordinates must sum to zero");
  }
  return {user_to_model(user_q)};
}

ExactVector CataloguePair::embed_to_ambient(const ExactVector& model) const {
  if (model.size() != a_dim) throw std::invalid_argument("embed_to_ambient: wrong dimension");
  ExactVector out = zero_vector(ambient.ambient_dim());
  for (std::size_t k = 0; k < a_dim; ++k) out = add(out, scale(model[k], embed_basis[k]));
  return out;
}

std::optional<ExactVector> CataloguePair::pull_back(const ExactVector& ambient_vec) const {
  const auto c = coordinates_in_span(embed_basis, ambient_vec);
  if (!c) return std::nullopt;
  return *c;
}

std::optional<long> CataloguePair::sb_closed_form(const BasePoint& x0) const {
  auto multinomial = [&]() {
    long total = x0.total_multiplicity();
    // n! / prod n_i! computed incrementally as a product of binomials
    long result = 1;
    long remaining = total;
    for (const auto& [v, m] : x0.pattern) {
      // multiply by C(remaining, m)
      for (long k = 0; k < m; ++k) result = result * (remaining - k) / (k + 1);
      remaining -= m;
    }
    return result;
  };
  if (name == "su2n-so-sp") return multinomial();
  if (name == "su-n-so-rank1") return 2;
  return std::nullopt;  // the paper states no closed form for the rest
}

std::vector<std::string> catalogue_names() { return {"su2n-so-sp", "su-n-so-rank1", "su-n-so"}; }

CataloguePair catalogue_pair(const std::string& name, int n) {
  CataloguePair p;
  p.name = name;
  p.n = n;
  if (name == "su2n-so-sp") {
    // (SU(2n), SO(2n), Sp(n)): a = { i diag(X, X) : tr X = 0 }, a-model Q^n
    if (n < 2) throw std::invalid_argument("su2n-so-sp requires n >= 2");
    p.triad_type = "III-A" + std::to_string(n - 1);
    p.a_dim = static_cast<std::size_t>(n);
    p.triad = triad_type_iii_a(n);
    // ambient Delta = A_{2n-1} in the realization matching -1/2 tr(XY):
    // root vectors 2(e_a - e_b) on the 2n diagonal t-coordinates
    p.ambient = scaled(build_root_system('A', 2 * n - 1), 2);
    for (int i = 0; i < n; ++i) {
      ExactVector b = zero_vector(2 * n);
      b[i] = 1;
      b[n + i] = 1;
      p.embed_basis.push_back(b);  // t |-> (t, t)
    }
    return p;
  }
  if (name == "su-n-so-rank1") {
    // (SU(n), SO(n), S(U(1) x U(n-1))): a is the line through
    // alpha = i (E_01 + E_10); a-model Q^1 with alpha = (1)
    if (n < 2) throw std::invalid_argument("su-n-so-rank1 requires n >= 2");
    p.triad_type = "II-BC1";
    p.degenerate = (n == 2);
    p.a_dim = 1;
    p.triad = triad_type_ii_bc1(n);
    p.ambient = scaled(build_root_system('A', n - 1), 2);
    ExactVector b = zero_vector(n);
    b[0] = 1;
    b[1] = -1;
    p.embed_basis.push_back(b);  // s |-> (s, -s, 0, ..., 0)
    return p;
  }
  if (name == "su-n-so") {
    // congruent pair (SU(n), SO(n)): a = t = i diag, restricted system
    // A_{n-1} with multiplicity 1 in the doubled a-model
    if (n < 2) throw std::invalid_argument("su-n-so requires n >= 2");
    p.triad_type = "A" + std::to_string(n - 1);
    p.congruent = true;
    p.a_dim = static_cast<std::size_t>(2 * n);
    RootSystem r;
    r.label = "restricted";
    std::vector<ExactVector> roots;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        ExactVector v = zero_vector(2 * n);
        v[i] = 1;
        v[j] = -1;
        v[n + i] = 1;
        v[n + j] = -1;
        roots.push_back(v);
      }
    r.roots = sorted_unique(std::move(roots));
    for (const auto& root : r.roots) r.multiplicity[root] = 1;
    r.simple = rootsys::simple_system(rootsys::positive_part(r.roots));
    p.restricted = r;
    p.ambient = r;  // a is a full maximal torus here
    for (int i = 0; i < 2 * n; ++i) p.embed_basis.push_back(basis_vector(2 * n, i));
    return p;
  }
  throw std::invalid_argument("unknown catalogue pair '" + name + "'");
}

std::vector<ExactVector> ambient_orbit_in_flat(const CataloguePair& pair, const ExactVector& x0) {
  const auto orbit = weyl_orbit(pair.ambient, pair.embed_to_ambient(x0));
  std::vector<ExactVector> in_flat;
  for (const auto& v : orbit) {
    if (auto back = pair.pull_back(v)) in_flat.push_back(*back);
  }
  return sorted_unique(std::move(in_flat));
}

namespace {

/// Size of the W(Delta)-orbit of an embedded point for the catalogue's
/// A-type ambients: the multinomial of the coordinate value multiset.
double ambient_orbit_size_estimate(const ExactVector& embedded) {
  std::map<Rat, long> mult;
  for (const auto& x : embedded) ++mult[x];
  double size = 1;
  long placed = 0;
  for (const auto& [value, m] : mult)
    for (long k = 0; k < m; ++k) size *= static_cast<double>(++placed) / static_cast<double>(k + 1);
  return size;
}

}  // namespace

IntersectionResult intersect_pair(const CataloguePair& pair, const BasePoint& x0,
                                  const PiPoint& h) {
  const ExactVector x0m = pair.expand_x0(x0);
  IntersectionResult res = pair.congruent ? congruent_intersection(pair.restricted, x0m, h)
                                          : noncongruent_intersection(pair.triad, x0m, h);
  if (res.kind == IntersectionResult::Kind::Discrete && !pair.embed_basis.empty()) {
    // cross-check the orbit-equality chain whenever the ambient orbit is
    // small enough to enumerate on the fly
    if (ambient_orbit_size_estimate(pair.embed_to_ambient(x0m)) <= 10000.0 &&
        res.points != ambient_orbit_in_flat(pair, x0m))
      throw std::logic_error("intersect_pair: orbit-equality chain violated");
  }
  return res;
}

TightnessCount tightness_count(const CataloguePair& pair, const BasePoint& x0) {
  const ExactVector x0m = pair.expand_x0(x0);
  TightnessCount c = pair.congruent ? tightness_count(pair.restricted, x0m)
                                    : tightness_count(pair.triad, x0m);
  c.sb_reference = pair.sb_closed_form(x0);
  return c;
}

}  // namespace flagtriad::flags
