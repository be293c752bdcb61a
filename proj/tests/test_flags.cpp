#include "doctest.h"

#include "flagtriad/flags.hpp"

#include <set>

using namespace flagtriad;
using namespace flagtriad::flags;
using triads::PiPoint;

namespace {

ExactVector rv(std::initializer_list<int> xs) {
  ExactVector v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long multinomial(std::initializer_list<long> parts) {
  long total = 0, denom = 1;
  for (long p : parts) {
    total += p;
    denom *= factorial(p);
  }
  return factorial(total) / denom;
}

}  // namespace

TEST_CASE("maximal_antipodal: orbit counts in the diagonal model") {
  // A_{2n-1} with the doubled partition (2n_1, ..., 2n_k)
  auto rs = rootsys::build_root_system('A', 3);
  auto anti = maximal_antipodal(rs, rv({1, 1, -1, -1}));
  CHECK(anti.size() == multinomial({2, 2}));
  auto rs1 = rootsys::build_root_system('A', 1);
  CHECK(maximal_antipodal(rs1, rv({1, -1})).size() == 2);
  CHECK_THROWS_AS(maximal_antipodal(rs, zero_vector(4)), std::invalid_argument);
}

TEST_CASE("congruent_intersection: H = 0 is a continuum with a witness") {
  const auto pair = catalogue_pair("su-n-so", 3);
  const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(1), Rat(0), Rat(-1)}));
  const auto res = congruent_intersection(pair.restricted, x0, PiPoint{zero_vector(pair.a_dim)});
  CHECK(res.kind == IntersectionResult::Kind::Continuum);
  CHECK(dot(res.witness.root, res.witness_x) != 0);
  CHECK(res.witness.klass == 'S');
}

TEST_CASE("congruent_intersection: regular H gives the multinomial count") {
  const auto pair = catalogue_pair("su-n-so", 4);
  const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(3), Rat(3), Rat(-3), Rat(-3)}));
  const auto h = small_regular_point(pair.restricted.roots, {}, pair.a_dim);
  const auto res = congruent_intersection(pair.restricted, x0, h);
  REQUIRE(res.kind == IntersectionResult::Kind::Discrete);
  CHECK(res.cardinality == multinomial({2, 2}));
}

TEST_CASE("congruent_intersection: a single-wall H names the violating root") {
  const auto pair = catalogue_pair("su-n-so", 3);
  // H with exactly one pairing integral: pairings of the restricted roots
  // are differences of the diagonal values
  const PiPoint h = pair.expand_h({Rat(1, 3), Rat(1, 3) - 1, Rat(2, 3)});  // t1 - t2 = 1
  const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(1), Rat(0), Rat(-1)}));
  const auto res = congruent_intersection(pair.restricted, x0, h);
  REQUIRE(res.kind == IntersectionResult::Kind::Continuum);
  const Rat pairing = dot(res.witness.root, h.q);
  CHECK(is_integer(pairing));
}

TEST_CASE("noncongruent_intersection on the 5.1 pair: multinomial cardinality") {
  const auto pair = catalogue_pair("su2n-so-sp", 3);
  const auto x0 = BasePoint::from_values({Rat(1), Rat(1), Rat(-2)});
  const auto h = pair.expand_h({Rat(1, 7), Rat(2, 7), Rat(-3, 7)});
  const auto res = intersect_pair(pair, x0, h);
  REQUIRE(res.kind == IntersectionResult::Kind::Discrete);
  CHECK(res.cardinality == 3);  // 3!/2!1!
}

TEST_CASE("noncongruent_intersection on the 5.2 pair: {x0, -x0}") {
  const auto pair = catalogue_pair("su-n-so-rank1", 4);
  const auto x0 = BasePoint::from_values({Rat(1)});
  const auto res = intersect_pair(pair, x0, pair.expand_h({Rat(1, 3)}));
  REQUIRE(res.kind == IntersectionResult::Kind::Discrete);
  CHECK(res.cardinality == 2);
  CHECK(res.points == std::vector<ExactVector>{rv({-1}), rv({1})});
}

TEST_CASE("noncongruent_intersection on the 5.2 pair: pi/2 wall is a continuum of class W") {
  const auto pair = catalogue_pair("su-n-so-rank1", 4);
  const auto x0 = BasePoint::from_values({Rat(1)});
  const auto res = intersect_pair(pair, x0, pair.expand_h({Rat(1, 2)}));
  REQUIRE(res.kind == IntersectionResult::Kind::Continuum);
  CHECK(res.witness.klass == 'W');
  CHECK(dot(res.witness.root, res.witness_x) != 0);
}

TEST_CASE("noncongruent_intersection rejects zero base points and broken triads") {
  const auto pair = catalogue_pair("su2n-so-sp", 2);
  CHECK_THROWS_AS(
      noncongruent_intersection(pair.triad, zero_vector(2), PiPoint{zero_vector(2)}),
      std::invalid_argument);
  auto broken = pair.triad;
  broken.w.clear();
  CHECK_THROWS_AS(noncongruent_intersection(broken, rv({1, -1}), PiPoint{zero_vector(2)}),
                  std::domain_error);
}

TEST_CASE("discreteness dichotomy matches is_regular on a rational grid") {
  const auto pair = catalogue_pair("su2n-so-sp", 2);
  const auto x0e = pair.expand_x0(BasePoint::from_values({Rat(1), Rat(-1)}));
  for (int p = -8; p <= 8; ++p) {
    const PiPoint h = pair.expand_h({Rat(p, 8), Rat(-p, 8)});
    const auto res = noncongruent_intersection(pair.triad, x0e, h);
    const bool reg = triads::is_regular(pair.triad, h).regular;
    CHECK((res.kind == IntersectionResult::Kind::Discrete) == reg);
  }
}

TEST_CASE("equality chain holds for the catalogue pairs") {
  {
    const auto pair = catalogue_pair("su2n-so-sp", 3);
    const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(2), Rat(-1), Rat(-1)}));
    const auto triad_orbit = rootsys::weyl_orbit(pair.triad.sigma_tilde, x0);
    CHECK(triad_orbit == ambient_orbit_in_flat(pair, x0));
  }
  {
    const auto pair = catalogue_pair("su-n-so-rank1", 5);
    const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(2)}));
    const auto triad_orbit = rootsys::weyl_orbit(pair.triad.sigma_tilde, x0);
    CHECK(triad_orbit == ambient_orbit_in_flat(pair, x0));
  }
}

TEST_CASE("tightness_count: catalogue closed forms") {
  {
    const auto pair = catalogue_pair("su2n-so-sp", 4);
    const auto x0 = BasePoint::from_values({Rat(1), Rat(1), Rat(1), Rat(-3)});
    const auto t = tightness_count(pair, x0);
    CHECK(t.count == multinomial({3, 1}));
    REQUIRE(t.sb_reference.has_value());
    CHECK(*t.sb_reference == t.count);
  }
  {
    const auto pair = catalogue_pair("su-n-so-rank1", 3);
    const auto t = tightness_count(pair, BasePoint::from_values({Rat(1)}));
    CHECK(t.count == 2);
    REQUIRE(t.sb_reference.has_value());
    CHECK(*t.sb_reference == 2);
  }
  {
    // congruent pair: no closed form recorded in the catalogue
    const auto pair = catalogue_pair("su-n-so", 3);
    const auto t = tightness_count(pair, BasePoint::from_values({Rat(1), Rat(0), Rat(-1)}));
    CHECK(t.count == 6);
    CHECK_FALSE(t.sb_reference.has_value());
  }
}

TEST_CASE("tightness counts agree across cells (affine translate of H)") {
  const auto pair = catalogue_pair("su2n-so-sp", 3);
  const auto x0 = pair.expand_x0(BasePoint::from_values({Rat(1), Rat(1), Rat(-2)}));
  const auto h1 = triads::st_point(pair.triad, 3);
  const auto gens = triads::affine_generators(pair.triad, 1);
  std::set<std::vector<ExactVector>> point_sets;
  point_sets.insert(noncongruent_intersection(pair.triad, x0, h1).points);
  int used = 0;
  for (const auto& g : gens) {
    const auto h2 = g.apply(h1);
    if (h2.q == h1.q) continue;
    point_sets.insert(noncongruent_intersection(pair.triad, x0, h2).points);
    if (++used == 5) break;
  }
  CHECK(point_sets.size() == 1);
}

TEST_CASE("matsuki_doubling: case 4 with base A1 and case-3 regularity grid") {
  const auto case4 = matsuki_doubling(4, rootsys::build_root_system('A', 1));
  CHECK(case4.sigma_tilde == std::vector<ExactVector>{rv({-1, 1, 1, -1}), rv({1, -1, -1, 1})});
  CHECK(triads::check_axioms(case4).all_pass());
  CHECK_THROWS_AS(matsuki_doubling(2, rootsys::build_root_system('A', 1)),
                  std::invalid_argument);

  const auto base = rootsys::build_root_system('A', 2);
  const auto case3 = matsuki_doubling(3, base);
  for (int p = -6; p <= 6; ++p) {
    // H = (q, -q, q, -q) for q on a line through a generic direction
    ExactVector q = {Rat(p, 8), Rat(p, 24), Rat(-p, 6)};
    ExactVector h;
    for (int c = 0; c < 4; ++c)
      for (const auto& x : q) h.push_back(c % 2 == 0 ? x : Rat(-x));
    bool base_rule = true;  // <alpha, 4q> not in pi Z nor pi/2 + pi Z
    for (const auto& alpha : base.roots) {
      const Rat pairing = 4 * dot(alpha, q);
      if (is_integer(pairing) || is_half_odd(pairing)) base_rule = false;
    }
    CHECK(triads::is_regular(case3, {h}).regular == base_rule);
  }
}

TEST_CASE("rank-one catalogue: ambient projection gives {a, 2a} with multiplicities") {
  const auto pair = catalogue_pair("su-n-so-rank1", 4);
  const auto restricted = rootsys::restricted_root_system(pair.ambient, pair.embed_basis);
  std::vector<ExactVector> pulled;
  for (const auto& r : restricted.roots) {
    auto back = pair.pull_back(r);
    REQUIRE(back.has_value());
    pulled.push_back(*back);
  }
  CHECK(rootsys::sorted_unique(pulled) ==
        std::vector<ExactVector>{{Rat(-2)}, {Rat(-1)}, {Rat(1)}, {Rat(2)}});
  // the long projection comes from one ambient root, the short from 2(n-2)
  for (const auto& r : restricted.roots) {
    const auto back = *pair.pull_back(r);
    CHECK(restricted.mult(r) == (dot(back, back) == 4 ? 1 : 2 * (pair.n - 2)));
  }
}

TEST_CASE("monotone degeneration: |W(sigma~)x0| <= |W(Delta)x0|") {
  for (int n : {2, 3}) {
    const auto pair = catalogue_pair("su2n-so-sp", n);
    std::vector<Rat> vals;
    for (int i = 0; i + 1 < n; ++i) vals.push_back(Rat(i + 1));
    Rat sum = 0;
    for (const auto& v : vals) sum += v;
    vals.push_back(-sum);
    const auto x0 = pair.expand_x0(BasePoint::from_values(vals));
    const auto triad_orbit = rootsys::weyl_orbit(pair.triad.sigma_tilde, x0);
    const auto ambient_orbit = rootsys::weyl_orbit(pair.ambient, pair.embed_to_ambient(x0));
    CHECK(triad_orbit.size() <= ambient_orbit.size());
  }
}

TEST_CASE("base point validation") {
  const auto pair = catalogue_pair("su2n-so-sp", 2);
  CHECK_THROWS_AS(pair.expand_x0(BasePoint::from_values({Rat(1), Rat(1)})),
                  std::invalid_argument);  // trace nonzero
  CHECK_THROWS_AS(pair.expand_x0(BasePoint::from_values({Rat(0), Rat(0)})),
                  std::invalid_argument);  // zero
  CHECK(BasePoint::from_values({Rat(1), Rat(1), Rat(-2)}).pattern.size() == 2);
}

TEST_CASE("catalogue sanity: names, restricted projection matches the triad") {
  CHECK(catalogue_names().size() == 3);
  CHECK_THROWS_AS(catalogue_pair("nope", 3), std::invalid_argument);
  // restricting the ambient system onto the embedded flat reproduces the
  // catalogue triad roots (pulled back), with multiplicity m + n = 4
  const auto pair = catalogue_pair("su2n-so-sp", 3);
  std::vector<ExactVector> flat_basis;
  for (std::size_t k = 0; k + 1 < pair.a_dim; ++k) {
    ExactVector diff = sub(pair.embed_basis[k], pair.embed_basis[k + 1]);
    flat_basis.push_back(diff);
  }
  const auto restricted = rootsys::restricted_root_system(pair.ambient, flat_basis);
  std::vector<ExactVector> pulled;
  for (const auto& r : restricted.roots) {
    auto back = pair.pull_back(r);
    REQUIRE(back.has_value());
    pulled.push_back(*back);
  }
  CHECK(rootsys::sorted_unique(pulled) == pair.triad.sigma_tilde);
  for (const auto& r : restricted.roots) CHECK(restricted.mult(r) == 4);
}
