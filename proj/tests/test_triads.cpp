#include "doctest.h"

#include "flagtriad/flags.hpp"
#include "flagtriad/serialize.hpp"
#include "flagtriad/triad.hpp"

#include <random>

using namespace flagtriad;
using namespace flagtriad::triads;

namespace {

ExactVector rv(std::initializer_list<int> xs) {
  ExactVector v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

SymmetricTriad builtin_iii_a(int n) { return flags::catalogue_pair("su2n-so-sp", n).triad; }
SymmetricTriad builtin_bc1(int n = 3) { return flags::catalogue_pair("su-n-so-rank1", n).triad; }

PiPoint pi_point(std::initializer_list<Rat> xs) { return {ExactVector(xs)}; }

}  // namespace

TEST_CASE("axioms pass on the builtin catalogue triads") {
  for (int n : {2, 3, 4, 5}) {
    CAPTURE(n);
    CHECK(check_axioms(builtin_iii_a(n)).all_pass());
  }
  for (int n : {3, 4, 5}) {
    CAPTURE(n);
    CHECK(check_axioms(builtin_bc1(n)).all_pass());
  }
}

TEST_CASE("degenerate rank-one pair (n = 2) fails condition 4") {
  const auto t = builtin_bc1(2);  // sigma empty, W = {+-2a}
  const auto rep = check_axioms(t);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.conditions[3].pass);
}

TEST_CASE("axioms pass on Matsuki doubled triads") {
  const auto case4 = flags::matsuki_doubling(4, rootsys::build_root_system('A', 1));
  CHECK(case4.sigma_tilde.size() == 2);
  CHECK(case4.sigma == case4.w);
  CHECK(case4.sigma_tilde == std::vector<ExactVector>{rv({-1, 1, 1, -1}), rv({1, -1, -1, 1})});
  CHECK(check_axioms(case4).all_pass());

  const auto case3 = flags::matsuki_doubling(3, rootsys::build_root_system('A', 2));
  CHECK(case3.sigma_tilde.size() == 6);
  CHECK(case3.ambient_dim == 12);
  CHECK(check_axioms(case3).all_pass());
}

TEST_CASE("doubled regularity reduces to the base pairing") {
  // case 4 over A_1: H = (q, -q) is regular iff <alpha, q> not in (1/4) Z
  const auto base = rootsys::build_root_system('A', 1);
  const auto doubled = flags::matsuki_doubling(4, base);
  const ExactVector alpha = rv({1, -1});
  for (int p = -9; p <= 9; ++p) {
    const Rat s(p, 12);
    ExactVector q = {s, Rat(0)};
    ExactVector h;
    h.insert(h.end(), q.begin(), q.end());
    for (const auto& x : q) h.push_back(-x);
    const bool doubled_regular = is_regular(doubled, {h}).regular;
    const Rat base_pairing = dot(alpha, q);  // = s
    const bool quarter_free = !is_integer(4 * base_pairing);
    CHECK(doubled_regular == quarter_free);
  }
}

TEST_CASE("single-pair deletions and sign-asymmetric mutations break the axioms") {
  std::vector<SymmetricTriad> builtins = {builtin_iii_a(2), builtin_iii_a(3), builtin_iii_a(4),
                                          builtin_bc1(3)};
  builtins.push_back(flags::matsuki_doubling(4, rootsys::build_root_system('A', 1)));
  for (const auto& t : builtins) {
    REQUIRE(check_axioms(t).all_pass());
    auto mutate = [&](int which_set, const ExactVector& root, bool whole_pair) {
      SymmetricTriad m = t;
      auto remove = [&](std::vector<ExactVector>& set) {
        std::erase(set, root);
        if (whole_pair) std::erase(set, negate(root));
      };
      if (which_set == 0) remove(m.sigma_tilde);
      if (which_set == 1) remove(m.sigma);
      if (which_set == 2) remove(m.w);
      return m;
    };
    for (int which = 0; which < 3; ++which) {
      const auto& source = which == 0 ? t.sigma_tilde : which == 1 ? t.sigma : t.w;
      for (const auto& root : rootsys::positive_part(source)) {
        for (bool pair : {true, false}) {
          const auto rep = check_axioms(mutate(which, root, pair));
          CAPTURE(which);
          CAPTURE(pair);
          REQUIRE_FALSE(rep.all_pass());
          bool has_witness = false;
          for (const auto& c : rep.conditions)
            if (!c.pass && !c.witness.empty()) has_witness = true;
          CHECK(has_witness);
        }
      }
    }
  }
}

TEST_CASE("is_regular: zero point is singular through every sigma root") {
  const auto t = builtin_iii_a(3);
  const auto rep = is_regular(t, {zero_vector(3)});
  CHECK_FALSE(rep.regular);
  std::size_t sigma_violations = 0;
  for (const auto& v : rep.violations)
    if (v.klass == 'S') ++sigma_violations;
  CHECK(sigma_violations == t.sigma.size());
}

TEST_CASE("is_regular on the rank-one catalogue triad: the pi/4 grid rule") {
  const auto t = builtin_bc1(3);
  CHECK(is_regular(t, pi_point({Rat(1, 3)})).regular);
  CHECK_FALSE(is_regular(t, pi_point({Rat(1, 4)})).regular);
  // <alpha,H> = pi/4: the violations come from +-2a in W
  const auto rep = is_regular(t, pi_point({Rat(1, 4)}));
  REQUIRE(rep.violations.size() == 2);
  for (const auto& v : rep.violations) {
    CHECK(v.klass == 'W');
    CHECK(dot(v.root, v.root) == 4);
  }
}

TEST_CASE("is_regular: wall of W in type III") {
  const auto t = builtin_iii_a(2);
  const auto rep = is_regular(t, {ExactVector{Rat(1, 4), Rat(-1, 4)}});  // q1 - q2 = 1/2
  CHECK_FALSE(rep.regular);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].klass == 'W');
  CHECK_THROWS_AS(is_regular(t, pi_point({Rat(1)})), std::invalid_argument);
}

TEST_CASE("fundamental_cell of the rank-one triad: alpha_tilde = 2a, m = 2, <H1,a> = pi/4") {
  const auto cell = fundamental_cell(builtin_bc1(4));
  CHECK(cell.alpha_tilde == rv({2}));
  CHECK(cell.m_coeffs == std::vector<long>{2});
  REQUIRE(cell.h_basis.size() == 1);
  CHECK(cell.h_basis[0].q == ExactVector{Rat(1, 4)});
  CHECK(cell.simple_sigma == std::vector<ExactVector>{rv({1})});
}

TEST_CASE("fundamental_cell of type III-A: highest root, all m_i = 1") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    const auto t = builtin_iii_a(n);
    const auto cell = fundamental_cell(t);
    CHECK(static_cast<int>(cell.m_coeffs.size()) == n - 1);
    for (long m : cell.m_coeffs) CHECK(m == 1);
    // alpha_tilde is the highest root of the chosen positive system
    CHECK(dot(cell.alpha_tilde, cell.alpha_tilde) == 2);
    ExactVector sum = zero_vector(t.ambient_dim);
    for (std::size_t i = 0; i < cell.simple_sigma.size(); ++i)
      sum = add(sum, scale(Rat(cell.m_coeffs[i]), cell.simple_sigma[i]));
    CHECK(sum == cell.alpha_tilde);
    // <H_i, alpha_tilde> = 1/2 and <H_i, alpha_j> = delta_ij/(2 m_i)
    for (std::size_t i = 0; i < cell.h_basis.size(); ++i) {
      CHECK(dot(cell.h_basis[i].q, cell.alpha_tilde) == Rat(1, 2));
      for (std::size_t j = 0; j < cell.simple_sigma.size(); ++j)
        CHECK(dot(cell.h_basis[i].q, cell.simple_sigma[j]) ==
              (i == j ? Rat(1, 2 * cell.m_coeffs[i]) : Rat(0)));
    }
  }
}

TEST_CASE("P0 interior points are regular, facet points singular") {
  for (const auto& t : {builtin_iii_a(3), builtin_iii_a(4), builtin_bc1(3)}) {
    const auto cell = fundamental_cell(t);
    const std::size_t r = cell.h_basis.size();
    CHECK(is_regular(t, cell.interior_point(Rat(1, 2 * r))).regular);
    // facet t_1 = 0
    if (r > 1) {
      PiPoint facet{zero_vector(t.ambient_dim)};
      for (std::size_t i = 1; i < r; ++i)
        facet = pi_add(facet, pi_scale(Rat(1, 2 * r), cell.h_basis[i]));
      CHECK_FALSE(is_regular(t, facet).regular);
    }
    // facet sum t_i = 1
    PiPoint far{zero_vector(t.ambient_dim)};
    for (std::size_t i = 0; i < r; ++i)
      far = pi_add(far, pi_scale(Rat(1, r), cell.h_basis[i]));
    CHECK_FALSE(is_regular(t, far).regular);
  }
}

TEST_CASE("fundamental_cell rejects reducible sigma") {
  const auto sum = direct_sum({builtin_iii_a(2), builtin_bc1(3)});
  CHECK_THROWS_AS(fundamental_cell(sum), std::domain_error);
}

TEST_CASE("gamma_contains: zero, the m_i H_i corner, and a strict sub-corner") {
  const auto t = builtin_bc1(3);
  const auto cell = fundamental_cell(t);
  CHECK(gamma_contains(t, {zero_vector(1)}));
  PiPoint corner{zero_vector(1)};
  for (std::size_t i = 0; i < cell.h_basis.size(); ++i)
    corner = pi_add(corner, pi_scale(Rat(cell.m_coeffs[i]), cell.h_basis[i]));
  CHECK(gamma_contains(t, corner));
  CHECK(cell.m_coeffs[0] >= 2);
  CHECK_FALSE(gamma_contains(t, cell.h_basis[0]));  // <a_1, H_1> = pi/(2 m_1), m_1 >= 2
}

TEST_CASE("gamma_contains agrees with the sigma-only form on random rational points") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 8);
  for (const auto& t : {builtin_iii_a(3), builtin_bc1(4)}) {
    for (int it = 0; it < 10000; ++it) {
      ExactVector q(t.ambient_dim);
      for (auto& x : q) x = Rat(num(rng), 2 * den(rng));
      CHECK(gamma_contains(t, {q}) == gamma_contains_sigma_only(t, {q}));
    }
  }
}

TEST_CASE("st_point: the rank-one catalogue triad at n = 3") {
  const auto t = builtin_bc1(5);
  const auto h0 = st_point(t, 3);
  CHECK(h0.q == ExactVector{Rat(1, 6)});  // <a, H0> = pi/6
  CHECK(is_regular(t, h0).regular);
  CHECK(gamma_contains(t, pi_scale(Rat(3), h0)));
  CHECK_THROWS_AS(st_point(t, 2), std::invalid_argument);  // n = sum m_i
}

TEST_CASE("st_point: type III-A at flag size 3") {
  const auto t = builtin_iii_a(3);
  const auto cell = fundamental_cell(t);
  REQUIRE(cell.m_sum() == 2);
  const auto h0 = st_point(t, 3);
  const auto expected = pi_scale(Rat(1, 3), pi_add(cell.h_basis[0], cell.h_basis[1]));
  CHECK(h0.q == expected.q);
  CHECK(is_regular(t, h0).regular);
}

TEST_CASE("st_point postconditions over the lemma's full n-window") {
  for (const auto& t : {builtin_iii_a(2), builtin_iii_a(3), builtin_bc1(3)}) {
    const long m_sum = fundamental_cell(t).m_sum();
    for (long n = m_sum + 1; n <= m_sum + 20; ++n) {
      const auto h0 = st_point(t, n);
      CHECK(is_regular(t, h0).regular);
      CHECK(gamma_contains(t, pi_scale(Rat(n), h0)));
    }
  }
}

TEST_CASE("affine generators: shapes and cell transitivity samples") {
  const auto t = builtin_bc1(3);
  const auto gens = affine_generators(t, 1);
  // pure reflection with zero translation (lambda in sigma, n = 0)
  bool has_pure = false;
  // (s_a, pi a/|a|^2) for alpha in W, n = 0
  bool has_odd = false;
  for (const auto& g : gens) {
    if (is_zero(g.translation.q)) has_pure = true;
    if (g.translation.q == ExactVector{Rat(1)}) has_odd = true;
  }
  CHECK(has_pure);
  CHECK(has_odd);

  const auto cell = fundamental_cell(t);
  const auto p = cell.interior_point(Rat(1, 3));
  for (const auto& g : gens) CHECK(is_regular(t, g.apply(p)).regular);
}

TEST_CASE("affine generators carry involutive orthogonal linear parts") {
  const auto t = builtin_iii_a(3);
  for (const auto& g : affine_generators(t, 0)) {
    const std::size_t d = g.linear.size();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rat sq = 0;
        for (std::size_t k = 0; k < d; ++k) sq += g.linear[i][k] * g.linear[k][j];
        CHECK(sq == (i == j ? Rat(1) : Rat(0)));
      }
  }
}

TEST_CASE("affine generators preserve regularity on random points") {
  const auto t = builtin_iii_a(3);
  const auto gens = affine_generators(t, 2);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-10, 10);
  for (int it = 0; it < 50; ++it) {
    ExactVector q(3);
    for (auto& x : q) x = Rat(num(rng), 7);
    const bool reg = is_regular(t, {q}).regular;
    for (const auto& g : gens) CHECK(is_regular(t, g.apply({q})).regular == reg);
  }
}

TEST_CASE("sigma spans the same flat as sigma_tilde on builtins") {
  for (const auto& t : {builtin_iii_a(3), builtin_iii_a(5), builtin_bc1(3)}) {
    CHECK(rank(ExactMatrix(t.sigma.begin(), t.sigma.end())) == t.flat_dim());
  }
}

TEST_CASE("span property on the builtin triads") {
  CHECK(span_property(builtin_iii_a(3)));
  CHECK(span_property(builtin_iii_a(4)));
  CHECK(span_property(builtin_bc1(3)));
  const auto sum = direct_sum({builtin_iii_a(2), builtin_iii_a(2)});
  CHECK_THROWS_AS(span_property(sum), std::domain_error);
}

TEST_CASE("direct_sum: single component embeds identically") {
  const auto t = builtin_bc1(3);
  const auto sum = direct_sum({t});
  CHECK(sum.sigma == t.sigma);
  CHECK(sum.w == t.w);
  CHECK(sum.ambient_dim == t.ambient_dim);
}

TEST_CASE("direct_sum: regularity and Gamma factor blockwise") {
  const auto a = builtin_iii_a(2);  // dim 2
  const auto b = builtin_bc1(3);    // dim 1
  const auto sum = direct_sum({a, b});
  CHECK(sum.ambient_dim == 3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 6);
  for (int it = 0; it < 300; ++it) {
    ExactVector q(3);
    for (auto& x : q) x = Rat(num(rng), den(rng));
    const PiPoint h{q};
    const PiPoint ha = block_restrict(sum, 0, h);
    const PiPoint hb = block_restrict(sum, 1, h);
    CHECK(is_regular(sum, h).regular ==
          (is_regular(a, ha).regular && is_regular(b, hb).regular));
    CHECK(gamma_contains(sum, h) == (gamma_contains(a, ha) && gamma_contains(b, hb)));
  }
}

TEST_CASE("direct_sum: combined st point uses the product of the n's") {
  const auto sum = direct_sum({builtin_iii_a(2), builtin_bc1(3)});
  const auto [h, n] = st_point_direct_sum(sum, {2, 3});
  CHECK(n == 6);
  CHECK(is_regular(sum, h).regular);
  CHECK(gamma_contains(sum, pi_scale(Rat(n), h)));
  CHECK_THROWS_AS(st_point_direct_sum(sum, {1, 3}), std::invalid_argument);
}

TEST_CASE("triad exchange format round-trips") {
  for (const auto& t : {builtin_iii_a(3), builtin_bc1(4)}) {
    const auto text = io::write_triad(t);
    const auto back = io::read_triad(text);
    CHECK(back.sigma == t.sigma);
    CHECK(back.w == t.w);
    CHECK(back.sigma_tilde == t.sigma_tilde);
    CHECK(back.m == t.m);
    CHECK(back.n == t.n);
    CHECK(io::write_triad(back) == text);
  }
}
