#include "flagtriad/root_system.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace flagtriad::rootsys {

bool RootSystem::contains(const ExactVector& v) const {
  return std::binary_search(roots.begin(), roots.end(), v, lex_less);
}

long RootSystem::mult(const ExactVector& v) const {
  auto it = multiplicity.find(v);
  return it == multiplicity.end() ? 1 : it->second;
}

ExactVector reflect(const ExactVector& alpha, const ExactVector& v) {
  if (alpha.size() != v.size()) throw std::invalid_argument("reflect: dimension mismatch");
  const Rat norm2 = dot(alpha, alpha);
  if (norm2 == 0) throw std::invalid_argument("reflect: alpha must be nonzero");
  const Rat c = 2 * dot(alpha, v) / norm2;
  return sub(v, scale(c, alpha));
}

std::vector<ExactVector> sorted_unique(std::vector<ExactVector> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace {

RootSystem finish(std::vector<ExactVector> roots, std::vector<ExactVector> simple,
                  std::string label) {
  RootSystem rs;
  rs.roots = sorted_unique(std::move(roots));
  rs.simple = std::move(simple);
  rs.label = std::move(label);
  for (const auto& r : rs.roots) rs.multiplicity[r] = 1;
  return rs;
}

ExactVector ev(std::initializer_list<int> xs) {
  ExactVector v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

// E8 in dim 8: +-e_i +- e_j and all (+-1/2)^8 with an even number of minus signs.
std::vector<ExactVector> e8_roots() {
  std::vector<ExactVector> roots;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          ExactVector v = zero_vector(8);
          v[i] = si;
          v[j] = sj;
          roots.push_back(v);
        }
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    ExactVector v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? Rat(-1, 2) : Rat(1, 2);
    roots.push_back(v);
  }
  return roots;
}

std::vector<ExactVector> e8_simple() {
  std::vector<ExactVector> s;
  ExactVector a1(8, Rat(-1, 2));
  a1[0] = Rat(1, 2);
  a1[7] = Rat(1, 2);
  s.push_back(a1);                       // 1/2(e1+e8) - 1/2(e2+...+e7)
  ExactVector a2 = zero_vector(8);
  a2[0] = 1;
  a2[1] = 1;
  s.push_back(a2);                       // e1+e2
  for (int k = 0; k < 6; ++k) {          // e_{k+2} - e_{k+1}
    ExactVector a = zero_vector(8);
    a[k + 1] = 1;
    a[k] = -1;
    s.push_back(a);
  }
  return s;
}

}  // namespace

RootSystem build_root_system(char family, int rank) {
  const int n = rank;
  auto bad = [&] {
    return std::invalid_argument(std::string("build_root_system: invalid pair (") + family +
                                 ", " + std::to_string(rank) + ")");
  };
  std::vector<ExactVector> roots, simple;
  switch (family) {
    case 'A': {
      if (n < 1) throw bad();
      const int d = n + 1;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (i == j) continue;
          ExactVector v = zero_vector(d);
          v[i] = 1;
          v[j] = -1;
          roots.push_back(v);
        }
      for (int i = 0; i < n; ++i) {
        ExactVector a = zero_vector(d);
        a[i] = 1;
        a[i + 1] = -1;
        simple.push_back(a);
      }
      break;
    }
    case 'B':
    case 'C':
    case 'D': {
      const int min_rank = family == 'D' ? 2 : 1;
      if (n < min_rank) throw bad();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              ExactVector v = zero_vector(n);
              v[i] = si;
              v[j] = sj;
              roots.push_back(v);
            }
      if (family != 'D') {
        const int len = family == 'B' ? 1 : 2;
        for (int i = 0; i < n; ++i)
          for (int s : {1, -1}) {
            ExactVector v = zero_vector(n);
            v[i] = s * len;
            roots.push_back(v);
          }
      }
      for (int i = 0; i + 1 < n; ++i) {
        ExactVector a = zero_vector(n);
        a[i] = 1;
        a[i + 1] = -1;
        simple.push_back(a);
      }
      if (family == 'B') {
        ExactVector a = zero_vector(n);
        a[n - 1] = 1;
        simple.push_back(a);
      } else if (family == 'C') {
        ExactVector a = zero_vector(n);
        a[n - 1] = 2;
        simple.push_back(a);
      } else {
        ExactVector a = zero_vector(n);
        a[n - 2] = 1;
        a[n - 1] = 1;
        simple.push_back(a);
      }
      break;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      const auto all = e8_roots();
      const auto s8 = e8_simple();
      simple.assign(s8.begin(), s8.begin() + n);
      if (n == 8) {
        roots = all;
      } else {
        // E6/E7 are the E8 roots lying in the span of the first 6/7 simples.
        for (const auto& r : all)
          if (in_span(simple, r)) roots.push_back(r);
      }
      break;
    }
    case 'F': {
      if (n != 4) throw bad();
      for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) {
          ExactVector v = zero_vector(4);
          v[i] = s;
          roots.push_back(v);
        }
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              ExactVector v = zero_vector(4);
              v[i] = si;
              v[j] = sj;
              roots.push_back(v);
            }
      for (int mask = 0; mask < 16; ++mask) {
        ExactVector v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? Rat(-1, 2) : Rat(1, 2);
        roots.push_back(v);
      }
      simple = {ev({0, 1, -1, 0}), ev({0, 0, 1, -1}), ev({0, 0, 0, 1})};
      ExactVector a4(4);
      a4[0] = Rat(1, 2);
      a4[1] = Rat(-1, 2);
      a4[2] = Rat(-1, 2);
      a4[3] = Rat(-1, 2);
      simple.push_back(a4);
      break;
    }
    case 'G': {
      if (n != 2) throw bad();
      const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      for (const auto& p : perms) {
        ExactVector v = zero_vector(3);
        v[p[0]] = 1;
        v[p[1]] = -1;
        roots.push_back(v);  // short: e_i - e_j
      }
      for (int i = 0; i < 3; ++i)
        for (int s : {1, -1}) {
          ExactVector v(3, Rat(-s));
          v[i] = 2 * s;
          roots.push_back(v);  // long: +-(2e_i - e_j - e_k)
        }
      simple = {ev({1, -1, 0}), ev({-2, 1, 1})};
      break;
    }
    default:
      throw bad();
  }
  return finish(std::move(roots), std::move(simple), std::string(1, family) + std::to_string(n));
}

std::vector<ExactVector> weyl_orbit(const std::vector<ExactVector>& roots, const ExactVector& x) {
  for (const auto& r : roots)
    if (r.size() != x.size()) throw std::invalid_argument("weyl_orbit: dimension mismatch");
  std::unordered_set<ExactVector, VecHash> seen;
  std::deque<ExactVector> queue;
  seen.insert(x);
  queue.push_back(x);
  while (!queue.empty()) {
    ExactVector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& alpha : roots) {
      if (dot(alpha, v) == 0) continue;  // fixed by this reflection
      ExactVector w = reflect(alpha, v);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  std::vector<ExactVector> orbit(seen.begin(), seen.end());
  std::sort(orbit.begin(), orbit.end(), lex_less);
  return orbit;
}

RootSystem restricted_root_system(const RootSystem& delta,
                                  const std::vector<ExactVector>& subspace) {
  ExactMatrix m(subspace.begin(), subspace.end());
  if (subspace.empty() || rank(m) != subspace.size())
    throw std::invalid_argument("restricted_root_system: subspace basis must be independent");
  RootSystem out;
  out.label = "restricted";
  std::map<ExactVector, long, decltype(&lex_less)> mult(&lex_less);
  for (const auto& alpha : delta.roots) {
    ExactVector p = project_onto_span(subspace, alpha);
    if (is_zero(p)) continue;
    mult[p] += delta.mult(alpha);
  }
  for (const auto& [root, m_count] : mult) out.roots.push_back(root);
  out.multiplicity = mult;
  out.simple = simple_system(positive_part(out.roots));
  return out;
}

ComplementaryRoots complementary_and_t_roots(const RootSystem& delta, const ExactVector& x0) {
  if (is_zero(x0)) throw std::invalid_argument("complementary_and_t_roots: x0 must be nonzero");
  ComplementaryRoots out;
  std::vector<ExactVector> vanishing;
  for (const auto& alpha : delta.roots) {
    if (dot(alpha, x0) != 0)
      out.delta_m.push_back(alpha);
    else
      vanishing.push_back(alpha);
  }
  // z cap t = { H : <beta,H> = 0 for all beta with <beta,x0> = 0 }.
  const std::size_t dim = x0.size();
  std::vector<ExactVector> center_basis;
  if (vanishing.empty()) {
    for (std::size_t i = 0; i < dim; ++i) center_basis.push_back(basis_vector(dim, i));
  } else {
    center_basis = nullspace(ExactMatrix(vanishing.begin(), vanishing.end()), dim);
  }
  out.delta_vector = zero_vector(dim);
  for (const auto& alpha : out.delta_m) {
    ExactVector p = project_onto_span(center_basis, alpha);
    out.t_multiplicity[p] += 1;
  }
  for (const auto& [lambda, m] : out.t_multiplicity) {
    out.t_roots.push_back(lambda);
    if (dot(lambda, x0) > 0) out.delta_vector = add(out.delta_vector, scale(Rat(m), lambda));
  }
  return out;
}

int generic_sign(const ExactVector& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] > 0) return 1;
    if (v[i] < 0) return -1;
  }
  return 0;
}

std::vector<ExactVector> positive_part(const std::vector<ExactVector>& roots) {
  std::vector<ExactVector> pos;
  for (const auto& r : roots)
    if (generic_sign(r) > 0) pos.push_back(r);
  std::sort(pos.begin(), pos.end(), lex_less);
  return pos;
}

std::vector<ExactVector> simple_system(const std::vector<ExactVector>& positive) {
  std::unordered_set<ExactVector, VecHash> pos_set(positive.begin(), positive.end());
  std::vector<ExactVector> simple;
  for (const auto& a : positive) {
    bool decomposable = false;
    for (const auto& b : positive) {
      ExactVector c = sub(a, b);
      if (!is_zero(c) && generic_sign(c) > 0 && pos_set.count(c)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(a);
  }
  std::sort(simple.begin(), simple.end(), lex_less);
  return simple;
}

RootSystemCheck check_root_system(const std::vector<ExactVector>& roots, bool require_integrality) {
  RootSystemCheck res;
  std::unordered_set<ExactVector, VecHash> set(roots.begin(), roots.end());
  for (const auto& a : roots) {
    if (is_zero(a)) return {false, "contains the zero vector"};
    if (!set.count(negate(a))) return {false, "not negation-symmetric at " + vec_to_string(a)};
  }
  for (const auto& a : roots) {
    for (const auto& b : roots) {
      if (require_integrality) {
        const Rat cartan = 2 * dot(a, b) / dot(b, b);
        if (!is_integer(cartan))
          return {false, "non-integral Cartan number for (" + vec_to_string(a) + "; " +
                             vec_to_string(b) + ")"};
      }
      if (!set.count(reflect(b, a)))
        return {false, "not closed under s_{" + vec_to_string(b) + "} at " + vec_to_string(a)};
    }
  }
  return res;
}

}  // namespace flagtriad::rootsys
