#include "flagtriad/triad.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace flagtriad::triads {

using rootsys::check_root_system;
using rootsys::generic_sign;
using rootsys::positive_part;
using rootsys::reflect;
using rootsys::simple_system;
using rootsys::sorted_unique;
using rootsys::weyl_orbit;

namespace {

Int rat_floor(const Rat& x) {
  Int p = numerator(x), q = denominator(x);  // q > 0
  if (p >= 0) return p / q;
  return -((-p + q - 1) / q);
}

/// Is there an integer strictly between lo and hi?
bool integer_in_open(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) return false;
  const Rat k(rat_floor(lo) + 1);
  return k < hi;
}

/// Is there a half-odd value (1/2 + Z) strictly between lo and hi?
bool half_odd_in_open(const Rat& lo, const Rat& hi) {
  return integer_in_open(lo - Rat(1, 2), hi - Rat(1, 2));
}

bool is_odd(const Rat& integer_value) { return numerator(integer_value) % 2 != 0; }

bool contains_sorted(const std::vector<ExactVector>& sorted, const ExactVector& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v, lex_less);
}

std::vector<ExactVector> set_difference_sorted(const std::vector<ExactVector>& a,
                                               const std::vector<ExactVector>& b) {
  std::vector<ExactVector> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), lex_less);
  return out;
}

std::vector<ExactVector> set_intersection_sorted(const std::vector<ExactVector>& a,
                                                 const std::vector<ExactVector>& b) {
  std::vector<ExactVector> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), lex_less);
  return out;
}

bool negation_symmetric(const std::vector<ExactVector>& sorted, std::string* witness) {
  for (const auto& v : sorted) {
    if (!contains_sorted(sorted, negate(v))) {
      if (witness) *witness = "missing -(" + vec_to_string(v) + ")";
      return false;
    }
  }
  return true;
}

/// Connectivity of the graph on the given roots with edges <a,b> != 0.
bool connected_graph(const std::vector<ExactVector>& nodes) {
  if (nodes.empty()) return true;
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (!seen[j] && dot(nodes[i], nodes[j]) != 0) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == nodes.size();
}

}  // namespace

std::size_t SymmetricTriad::flat_dim() const {
  if (sigma_tilde.empty()) return 0;
  return rank(ExactMatrix(sigma_tilde.begin(), sigma_tilde.end()));
}

SymmetricTriad make_triad(std::size_t ambient_dim, std::vector<ExactVector> sigma,
                          std::vector<ExactVector> w) {
  SymmetricTriad t;
  t.ambient_dim = ambient_dim;
  t.sigma = sorted_unique(std::move(sigma));
  t.w = sorted_unique(std::move(w));
  std::vector<ExactVector> all = t.sigma;
  all.insert(all.end(), t.w.begin(), t.w.end());
  t.sigma_tilde = sorted_unique(std::move(all));
  for (const auto& v : t.sigma)
    if (v.size() != ambient_dim) throw std::invalid_argument("make_triad: dimension mismatch");
  for (const auto& v : t.w)
    if (v.size() != ambient_dim) throw std::invalid_argument("make_triad: dimension mismatch");
  return t;
}

AxiomReport check_axioms(const SymmetricTriad& t) {
  AxiomReport rep;
  for (int i = 0; i < 6; ++i) rep.conditions[i].index = i + 1;
  auto fail = [&](int idx, std::string why) {
    rep.conditions[idx - 1].pass = false;
    rep.conditions[idx - 1].witness = std::move(why);
  };

  // (1) sigma_tilde is an irreducible root system spanning the flat.
  if (t.sigma_tilde.empty()) {
    fail(1, "sigma_tilde is empty");
  } else {
    std::string w;
    if (!negation_symmetric(t.sigma_tilde, &w)) {
      fail(1, "sigma_tilde " + w);
    } else {
      auto rc = check_root_system(t.sigma_tilde, true);
      if (!rc.ok) {
        fail(1, "sigma_tilde is not a root system: " + rc.violation);
      } else {
        auto simples = simple_system(positive_part(t.sigma_tilde));
        if (!connected_graph(simples)) fail(1, "sigma_tilde is reducible");
      }
    }
  }

  // (2) sigma is a root system of its span.
  if (!t.sigma.empty()) {
    std::string w;
    if (!negation_symmetric(t.sigma, &w)) {
      fail(2, "sigma " + w);
    } else {
      auto rc = check_root_system(t.sigma, true);
      if (!rc.ok) fail(2, "sigma is not a root system: " + rc.violation);
    }
  }

  // (3) W nonempty, symmetric, and sigma_tilde = sigma cup W.
  if (t.w.empty()) {
    fail(3, "W is empty");
  } else {
    std::string w;
    if (!negation_symmetric(t.w, &w)) {
      fail(3, "W " + w);
    } else {
      std::vector<ExactVector> uni = t.sigma;
      uni.insert(uni.end(), t.w.begin(), t.w.end());
      uni = sorted_unique(std::move(uni));
      if (uni != t.sigma_tilde) fail(3, "sigma_tilde != sigma cup W");
    }
  }

  // (4) Sigma cap W nonempty and equals { alpha in sigma_tilde : |alpha| <= l }.
  const auto common = set_intersection_sorted(t.sigma, t.w);
  if (common.empty()) {
    fail(4, "sigma cap W is empty");
  } else {
    Rat l2 = 0;
    for (const auto& a : common) l2 = std::max(l2, dot(a, a), [](const Rat& x, const Rat& y) { return x < y; });
    std::vector<ExactVector> below;
    for (const auto& a : t.sigma_tilde)
      if (dot(a, a) <= l2) below.push_back(a);
    if (below != common) {
      std::string w = "sigma cap W != { |alpha| <= l }";
      for (const auto& a : below)
        if (!contains_sorted(common, a)) {
          w += "; witness " + vec_to_string(a);
          break;
        }
      for (const auto& a : common)
        if (!contains_sorted(below, a)) {
          w += "; witness " + vec_to_string(a);
          break;
        }
      fail(4, w);
    }
  }

  // (5) and (6): parity conditions on 2<alpha,lambda>/|alpha|^2.
  const auto sigma_only = set_difference_sorted(t.sigma, t.w);
  const auto w_only = set_difference_sorted(t.w, t.sigma);
  auto parity_check = [&](int idx, const std::vector<ExactVector>& lambdas,
                          const std::vector<ExactVector>& target) {
    for (const auto& alpha : t.w) {
      for (const auto& lambda : lambdas) {
        const Rat k = 2 * dot(alpha, lambda) / dot(alpha, alpha);
        if (!is_integer(k)) {
          fail(idx, "non-integral 2<a,l>/|a|^2 for a=" + vec_to_string(alpha) +
                        ", l=" + vec_to_string(lambda));
          return;
        }
        const bool image_in_target = contains_sorted(target, reflect(alpha, lambda));
        if (is_odd(k) != image_in_target) {
          fail(idx, "parity mismatch for a=" + vec_to_string(alpha) +
                        ", l=" + vec_to_string(lambda));
          return;
        }
      }
    }
  };
  parity_check(5, sigma_only, w_only);
  parity_check(6, w_only, sigma_only);

  return rep;
}

RegularityReport is_regular(const SymmetricTriad& t, const PiPoint& h) {
  if (h.dim() != t.ambient_dim) throw std::invalid_argument("is_regular: dimension mismatch");
  RegularityReport rep;
  for (const auto& lambda : t.sigma) {
    const Rat p = dot(lambda, h.q);
    if (is_integer(p)) rep.violations.push_back({lambda, 'S', p});
  }
  for (const auto& alpha : t.w) {
    const Rat p = dot(alpha, h.q);
    if (is_half_odd(p)) rep.violations.push_back({alpha, 'W', p});
  }
  rep.regular = rep.violations.empty();
  return rep;
}

long CellData::m_sum() const {
  long s = 0;
  for (long m : m_coeffs) s += m;
  return s;
}

PiPoint CellData::interior_point(const Rat& s) const {
  PiPoint p{zero_vector(alpha_tilde.size())};
  for (const auto& h : h_basis) p = pi_add(p, pi_scale(s, h));
  return p;
}

CellData fundamental_cell(const SymmetricTriad& t) {
  const auto rep = check_axioms(t);
  if (!rep.all_pass()) {
    std::string why;
    for (const auto& c : rep.conditions)
      if (!c.pass) why += " (" + std::to_string(c.index) + ") " + c.witness;
    throw std::domain_error("fundamental_cell: triad fails axioms:" + why);
  }
  const auto pi = simple_system(positive_part(t.sigma));
  if (!connected_graph(pi))
    throw std::domain_error(
        "fundamental_cell: sigma is reducible; decompose into irreducible factors first");
  const std::size_t r = pi.size();
  const std::size_t flat = t.flat_dim();
  if (r != flat || rank(ExactMatrix(pi.begin(), pi.end())) != r)
    throw std::domain_error("fundamental_cell: simple system of sigma is not a basis of the flat");

  // Gram matrix of the simple system, shared by every H_i solve.
  ExactMatrix gram(r, ExactVector(r, Rat(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(pi[i], pi[j]);

  std::vector<CellData> found;
  for (const auto& cand : positive_part(t.w)) {
    const auto coeffs = coordinates_in_span(pi, cand);
    if (!coeffs) continue;
    std::vector<long> m_coeffs;
    bool good = true;
    for (const auto& c : *coeffs) {
      if (!is_integer(c) || c <= 0) {
        good = false;
        break;
      }
      m_coeffs.push_back(static_cast<long>(numerator(c)));
    }
    if (!good) continue;

    // H_i in span(pi): <alpha_j, H_i> = delta_ij / (2 m_i), in units of pi.
    std::vector<PiPoint> h_basis(r);
    for (std::size_t i = 0; i < r; ++i) {
      ExactVector rhs(r, Rat(0));
      rhs[i] = Rat(1, 2 * m_coeffs[i]);
      const ExactVector c = solve_square(gram, rhs);
      ExactVector q = zero_vector(t.ambient_dim);
      for (std::size_t k = 0; k < r; ++k) q = add(q, scale(c[k], pi[k]));
      h_basis[i].q = std::move(q);
    }

    // P0 = { sum t_i H_i : t_i > 0, sum t_i < 1 } must avoid every wall:
    // the image of the open simplex under H |-> <root, H> is the open
    // interval between the extreme vertex values.
    auto wall_free = [&](const ExactVector& root, bool sigma_wall) {
      Rat lo = 0, hi = 0;
      for (const auto& h : h_basis) {
        const Rat v = dot(root, h.q);
        lo = std::min(lo, v, [](const Rat& x, const Rat& y) { return x < y; });
        hi = std::max(hi, v, [](const Rat& x, const Rat& y) { return x < y; });
      }
      return sigma_wall ? !integer_in_open(lo, hi) : !half_odd_in_open(lo, hi);
    };
    bool cell = true;
    for (const auto& lambda : t.sigma)
      if (!wall_free(lambda, true)) {
        cell = false;
        break;
      }
    if (cell)
      for (const auto& alpha : t.w)
        if (!wall_free(alpha, false)) {
          cell = false;
          break;
        }
    if (!cell) continue;

    CellData data;
    data.alpha_tilde = cand;
    data.m_coeffs = std::move(m_coeffs);
    data.h_basis = std::move(h_basis);
    data.simple_sigma = pi;
    found.push_back(std::move(data));
  }

  if (found.empty())
    throw std::domain_error(
        "fundamental_cell: no alpha_tilde in W+ bounds a cell (input is not a symmetric triad)");
  if (found.size() > 1)
    throw std::logic_error("fundamental_cell: alpha_tilde is not unique");
  return found.front();
}

bool gamma_contains(const SymmetricTriad& t, const PiPoint& h) {
  if (h.dim() != t.ambient_dim) throw std::invalid_argument("gamma_contains: dimension mismatch");
  for (const auto& lambda : t.sigma_tilde)
    if (!is_half_integer(dot(lambda, h.q))) return false;
  return true;
}

bool gamma_contains_sigma_only(const SymmetricTriad& t, const PiPoint& h) {
  if (h.dim() != t.ambient_dim) throw std::invalid_argument("gamma_contains: dimension mismatch");
  for (const auto& lambda : t.sigma)
    if (!is_half_integer(dot(lambda, h.q))) return false;
  return true;
}

PiPoint st_point(const SymmetricTriad& t, long n) {
  const CellData cell = fundamental_cell(t);
  const long m_sum = cell.m_sum();
  if (n <= m_sum)
    throw std::invalid_argument("st_point: n must exceed sum of m_i = " + std::to_string(m_sum));
  PiPoint h0{zero_vector(t.ambient_dim)};
  for (std::size_t i = 0; i < cell.h_basis.size(); ++i)
    h0 = pi_add(h0, pi_scale(Rat(cell.m_coeffs[i], n), cell.h_basis[i]));
  if (!is_regular(t, h0).regular) throw std::logic_error("st_point: H0 not regular");
  if (!gamma_contains(t, pi_scale(Rat(n), h0)))
    throw std::logic_error("st_point: n*H0 not in Gamma");
  return h0;
}

std::pair<PiPoint, long> st_point_direct_sum(const SymmetricTriad& sum,
                                             const std::vector<long>& per_component_n) {
  if (!sum.is_sum()) throw std::invalid_argument("st_point_direct_sum: not a direct sum");
  if (per_component_n.size() != sum.components.size())
    throw std::invalid_argument("st_point_direct_sum: need one n per component");
  PiPoint h{zero_vector(sum.ambient_dim)};
  long n = 1;
  for (std::size_t j = 0; j < sum.components.size(); ++j) {
    const PiPoint hj = st_point(sum.components[j], per_component_n[j]);
    for (std::size_t k = 0; k < hj.dim(); ++k) h.q[sum.blocks[j].offset + k] = hj.q[k];
    n *= per_component_n[j];
  }
  if (!is_regular(sum, h).regular) throw std::logic_error("st_point_direct_sum: H not regular");
  if (!gamma_contains(sum, pi_scale(Rat(n), h)))
    throw std::logic_error("st_point_direct_sum: n*H not in Gamma");
  return {h, n};
}

PiPoint AffineIsometry::apply(const PiPoint& p) const {
  ExactVector out(translation.q);
  for (std::size_t i = 0; i < linear.size(); ++i) out[i] += dot(linear[i], p.q);
  return {out};
}

namespace {

ExactMatrix reflection_matrix(const ExactVector& alpha) {
  const std::size_t d = alpha.size();
  const Rat norm2 = dot(alpha, alpha);
  ExactMatrix m(d, ExactVector(d, Rat(0)));
  for (std::size_t i = 0; i < d; ++i) {
    m[i][i] = 1;
    for (std::size_t j = 0; j < d; ++j) m[i][j] -= 2 * alpha[i] * alpha[j] / norm2;
  }
  return m;
}

}  // namespace

std::vector<AffineIsometry> affine_generators(const SymmetricTriad& t, long n_range) {
  if (n_range < 0) throw std::invalid_argument("affine_generators: n_range must be >= 0");
  std::set<std::pair<ExactMatrix, ExactVector>> seen;
  std::vector<AffineIsometry> out;
  auto emit = [&](const ExactVector& root, const Rat& factor) {
    AffineIsometry g{reflection_matrix(root), {scale(factor / dot(root, root), root)}};
    if (seen.emplace(g.linear, g.translation.q).second) out.push_back(std::move(g));
  };
  for (const auto& lambda : t.sigma)
    for (long n = -n_range; n <= n_range; ++n) emit(lambda, Rat(2 * n));
  for (const auto& alpha : t.w)
    for (long n = -n_range; n <= n_range; ++n) emit(alpha, Rat(2 * n + 1));
  return out;
}

bool span_property(const SymmetricTriad& t) {
  const auto pi = simple_system(positive_part(t.sigma));
  if (!connected_graph(pi)) throw std::domain_error("span_property: sigma is reducible");
  const std::size_t flat = t.flat_dim();
  std::vector<ExactVector> all = t.sigma;
  all.insert(all.end(), t.w.begin(), t.w.end());
  for (const auto& v : sorted_unique(std::move(all))) {
    const auto orbit = weyl_orbit(t.sigma, v);
    if (rank(ExactMatrix(orbit.begin(), orbit.end())) != flat) return false;
  }
  return true;
}

SymmetricTriad direct_sum(const std::vector<SymmetricTriad>& components) {
  if (components.empty()) throw std::invalid_argument("direct_sum: need at least one component");
  SymmetricTriad out;
  std::size_t total = 0;
  for (const auto& c : components) total += c.ambient_dim;
  out.ambient_dim = total;
  std::size_t offset = 0;
  for (const auto& c : components) {
    auto embed = [&](const ExactVector& v) {
      ExactVector e = zero_vector(total);
      for (std::size_t k = 0; k < v.size(); ++k) e[offset + k] = v[k];
      return e;
    };
    for (const auto& v : c.sigma) out.sigma.push_back(embed(v));
    for (const auto& v : c.w) out.w.push_back(embed(v));
    for (const auto& [v, m] : c.m) out.m[embed(v)] = m;
    for (const auto& [v, n] : c.n) out.n[embed(v)] = n;
    out.blocks.push_back({offset, c.ambient_dim});
    offset += c.ambient_dim;
  }
  out.sigma = sorted_unique(std::move(out.sigma));
  out.w = sorted_unique(std::move(out.w));
  std::vector<ExactVector> all = out.sigma;
  all.insert(all.end(), out.w.begin(), out.w.end());
  out.sigma_tilde = sorted_unique(std::move(all));
  out.components = components;
  return out;
}

PiPoint block_restrict(const SymmetricTriad& sum, std::size_t block_index, const PiPoint& h) {
  if (block_index >= sum.blocks.size())
    throw std::invalid_argument("block_restrict: no such block");
  const auto& b = sum.blocks[block_index];
  ExactVector q(h.q.begin() + b.offset, h.q.begin() + b.offset + b.dim);
  return {q};
}

}  // namespace flagtriad::triads
