#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "steiner/error.hpp"
#include "steiner/loop.hpp"

using namespace steiner;

namespace {

std::uint64_t brute_force_automorphisms(const FiniteLoop& l) {
  Permutation p(l.dense_order());
  std::iota(p.begin(), p.end(), 0u);
  std::uint64_t count = 0;
  do {
    count += is_isomorphism(l, l, p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return count;
}

// Symmetric group on three letters; trivial center.
FiniteLoop s3() {
  std::vector<Permutation> els;
  Permutation p{0, 1, 2};
  do {
    els.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::uint32_t> t;
  for (const auto& a : els) {
    for (const auto& b : els) {
      Permutation c(3);
      for (int i = 0; i < 3; ++i) c[i] = a[b[i]];
      t.push_back(static_cast<std::uint32_t>(std::find(els.begin(), els.end(), c) - els.begin()));
    }
  }
  return FiniteLoop::from_table(6, t);
}

// Z/4, a group that is not Steiner.
FiniteLoop z4() {
  std::vector<std::uint32_t> t;
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) t.push_back((a + b) % 4);
  }
  return FiniteLoop::from_table(4, t);
}

const FiniteLoop& free64() {
  static const FiniteLoop l = free_nilpotent2(3);
  return l;
}

const Unique16Report& s16() {
  static const Unique16Report r = unique16();
  return r;
}

Cocycle coboundary_of(int n, std::uint32_t code) {
  Cochain g(n, 1);
  for (std::uint32_t s = 1; s < (1u << n); ++s) g.set(IndexSubset(n, s), F2Vector::from_bits(1, (code >> (s - 1)) & 1u));
  return coboundary(g);
}

}  // namespace

TEST_CASE("table validation") {
  CHECK_NOTHROW(FiniteLoop::from_table(1, {0}));
  CHECK_THROWS_AS(FiniteLoop::from_table(2, {0, 1, 1, 1}), std::invalid_argument);  // row repeats
  CHECK_THROWS_AS(FiniteLoop::from_table(2, {1, 0, 0, 1}), std::invalid_argument);  // no identity
  CHECK_THROWS_AS(FiniteLoop::from_table(2, {0, 1, 1, 2}), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(FiniteLoop::from_table(2, {0, 1, 1}), std::invalid_argument);
  // Latin in rows but not in columns.
  CHECK_THROWS_AS(FiniteLoop::from_table(4, {0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 2, 1, 0}), std::invalid_argument);
  const FiniteLoop l = z4();
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) {
      CHECK(l.mul(a, l.left_div(a, b)) == b);
      CHECK(l.mul(l.right_div(b, a), a) == b);
    }
  }
}

TEST_CASE("extension backings agree") {
  const FiniteLoop k = build_extension(Cocycle::zero(1, 1));
  CHECK(k.dense_order() == 4);
  CHECK(k.table() == elementary_abelian(2).table());
  // Rule backing of the universal cocycle versus its dense table.
  const FiniteLoop rule = FiniteLoop::extension(universal_cocycle(3));
  const FiniteLoop& dense = free64();
  for (Element a = 0; a < 64; ++a) {
    for (Element b = 0; b < 64; ++b) {
      CHECK(rule.mul(a, b) == dense.mul(a, b));
      CHECK(rule.left_div(a, b) == dense.left_div(a, b));
      CHECK(rule.right_div(b, a) == dense.right_div(b, a));
    }
  }
  CHECK(dense.generators() == std::vector<Element>{8, 16, 32});
  const FiniteLoop big = free_nilpotent2(5);
  CHECK_FALSE(big.is_dense());
  CHECK_THROWS(big.order());
  CHECK_THROWS(big.dense_order());
  const FiniteLoop l4 = free_nilpotent2(4);
  CHECK(l4.order() == (std::uint64_t{1} << 28));
  const ExtElement a = l4.decode(l4.generators()[0]), b = l4.decode(l4.generators()[3]);
  CHECK(l4.encode(l4.mul(a, b)) == l4.mul(l4.generators()[0], l4.generators()[3]));
  CHECK_THROWS(build_extension([] {
    Cocycle f = Cocycle::zero(2, 1);
    f.set(IndexSubset(2, {1}), IndexSubset(2, {2}), F2Vector::parse("1"));
    return f;
  }()));
}

TEST_CASE("small free loops") {
  CHECK(free_nilpotent2(1).dense_order() == 2);
  const FiniteLoop l2 = free_nilpotent2(2);
  CHECK(l2.dense_order() == 4);
  CHECK(is_associative(l2));
  CHECK_THROWS(free_nilpotent2(9));
}

TEST_CASE("laws and witnesses") {
  CHECK(is_steiner(elementary_abelian(2)));
  const auto w = steiner_violation(z4());
  REQUIRE(w);
  CHECK(w->law == "xx=e");
  const FiniteLoop q = s3();
  CHECK_FALSE(is_steiner(q));
  CHECK_FALSE(is_commutative(q));
  CHECK(is_associative(q));
  const FiniteLoop& l = free64();
  CHECK(is_steiner(l));
  const auto aw = associativity_violation(l);
  REQUIRE(aw);
  CHECK(l.mul(l.mul(aw->x, aw->y), aw->z) != l.mul(aw->x, l.mul(aw->y, aw->z)));
  for (Element x = 0; x < 64; ++x) {
    for (Element y = 0; y < 64; ++y) CHECK(associator(l, x, x, y) == 0);
  }
  for (Element x = 0; x < 8; ++x) {
    for (Element y = 0; y < 8; ++y) {
      for (Element z = 0; z < 8; ++z) CHECK(associator(elementary_abelian(3), x, y, z) == 0);
    }
  }
}

TEST_CASE("extension laws follow the cocycle laws") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const FiniteLoop l = build_extension(random_cocycle(3, 2, rng));
    CHECK(is_steiner(l));
  }
  for (std::uint32_t code = 0; code < 128; ++code) {
    CHECK(is_associative(build_extension(coboundary_of(3, code))));
  }
}

TEST_CASE("center, associator subloop and class") {
  const FiniteLoop e8 = elementary_abelian(3);
  CHECK(center(e8).size() == 8);
  CHECK(associator_subloop(e8) == ElementSet{0});
  CHECK(nilpotency_class(e8) == 1);
  CHECK(nilpotency_class(FiniteLoop::from_table(1, {0})) == 0);
  CHECK_FALSE(nilpotency_class(s3()).has_value());
  CHECK(center(s3()) == ElementSet{0});
  const FiniteLoop& l = free64();
  CHECK(center(l) == ElementSet{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(associator_subloop(l) == center(l));
  CHECK(nilpotency_class(l) == 2);
  const FiniteLoop& s = s16().loop;
  CHECK(center(s).size() == 2);
  CHECK(associator_subloop(s).size() == 2);
  CHECK(nilpotency_class(s) == 2);
}

TEST_CASE("subloops and quotients") {
  const FiniteLoop& l = free64();
  CHECK(generated_subloop(l, {8, 16, 32}).size() == 64);
  CHECK(generated_subloop(l, {8}) == ElementSet{0, 8});
  CHECK(is_subloop(l, {0, 1}));
  CHECK_FALSE(is_subloop(l, {0, 8, 16}));
  CHECK(is_normal_subloop(l, {0, 1, 2, 3}));
  CHECK_FALSE(is_normal_subloop(l, {0, 8}));
  CHECK(normal_closure(l, {8}).size() > 2);

  const Quotient trivial = quotient(l, {0});
  CHECK(trivial.loop.table() == l.table());
  const ElementSet all = generated_subloop(l, {8, 16, 32});
  CHECK(quotient(l, all).loop.dense_order() == 1);
  CHECK_THROWS(quotient(l, {0, 8}));

  const Quotient q = quotient(l, {0, 1, 2, 3});
  CHECK(q.loop.dense_order() == 16);
  CHECK(q.loop.dense_order() * 4 == l.dense_order());
  for (Element a = 0; a < 64; ++a) {
    for (Element b = 0; b < 64; ++b) {
      CHECK(q.projection[l.mul(a, b)] == q.loop.mul(q.projection[a], q.projection[b]));
    }
  }
  for (std::size_t c = 1; c < q.cosets.size(); ++c) CHECK(q.cosets[c - 1].front() < q.cosets[c].front());
  // L / Z is the elementary abelian group of order 8.
  const Quotient lz = quotient(l, center(l));
  CHECK(find_isomorphism(lz.loop, elementary_abelian(3)).has_value());
}

TEST_CASE("central subspaces") {
  const FiniteLoop& l = free64();
  const CenterBasis cb = center_basis(l);
  CHECK(cb.basis == std::vector<Element>{1, 2, 4});
  CHECK(central_subspaces(l, 0).size() == 1);
  CHECK(central_subspaces(l, 1).size() == 7);
  CHECK(central_subspaces(l, 3).size() == 1);
  const auto two = central_subspaces(l, 2);
  REQUIRE(two.size() == 7);
  for (std::size_t i = 1; i < two.size(); ++i) CHECK(two[i - 1].elements < two[i].elements);
  for (const auto& s : two) {
    CHECK(s.elements.size() == 4);
    CHECK(is_normal_subloop(l, s.elements));
  }
  CHECK_THROWS(central_subspaces(l, 4));
  const auto s = central_subspace_from_basis(l, {F2Vector::parse("110"), F2Vector::parse("011")});
  CHECK(s.elements == ElementSet{0, 3, 5, 6});
  CHECK_THROWS(central_subspace_from_basis(l, {F2Vector::parse("110"), F2Vector::parse("110")}));
  CHECK_THROWS(central_subspace_from_basis(l, {F2Vector::parse("11")}));
  // Gaussian binomials over the 4-dimensional center of E16.
  const FiniteLoop e16 = elementary_abelian(4);
  CHECK(central_subspaces(e16, 1).size() == 15);
  CHECK(central_subspaces(e16, 2).size() == 35);
  CHECK_THROWS(center_basis(z4()));
}

TEST_CASE("isomorphism search") {
  const FiniteLoop& l = free64();
  const auto id = find_isomorphism(l, l);
  REQUIRE(id);
  for (std::size_t i = 0; i < id->size(); ++i) CHECK((*id)[i] == i);
  const FiniteLoop a = build_extension(coboundary_of(3, 0x11));
  const FiniteLoop b = build_extension(coboundary_of(3, 0x6a));
  const auto ab = find_isomorphism(a, b);
  REQUIRE(ab);
  CHECK(is_isomorphism(a, b, *ab));
  const FiniteLoop e16 = elementary_abelian(4);
  CHECK(find_isomorphism(a, e16).has_value());
  CHECK_FALSE(find_isomorphism(s16().loop, e16));
  CHECK_FALSE(find_isomorphism(e16, s16().loop));
  CHECK_FALSE(find_isomorphism(z4(), elementary_abelian(2)));
  // Symmetric and schedule independent on the S16 quotients.
  const auto& qs = s16().quotients;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      const auto one = find_isomorphism(qs[i], qs[j]);
      const auto four = find_isomorphism(qs[i], qs[j], {4});
      REQUIRE(one);
      CHECK(one == four);
      CHECK(find_isomorphism(qs[j], qs[i]).has_value());
    }
  }
  CHECK(minimal_generating_set(l) == std::vector<Element>{8, 16, 32});
}

TEST_CASE("automorphisms") {
  const FiniteLoop klein = elementary_abelian(2), e8 = elementary_abelian(3);
  CHECK(brute_force_automorphisms(klein) == 6);
  CHECK(brute_force_automorphisms(e8) == 168);
  CHECK(automorphisms(klein).order == 6);
  CHECK(automorphisms(e8).order == 168);
  const AutReport s = automorphisms(s16().loop);
  const AutReport s4 = automorphisms(s16().loop, {4});
  CHECK(s.order == s4.order);
  CHECK(s.generators == s4.generators);
  // The generators regenerate the whole group.
  const auto all = enumerate_automorphisms(s16().loop);
  CHECK(all.size() == s.order);
  CHECK(group_generators(all) == s.generators);
  CHECK_THROWS_AS(automorphisms(elementary_abelian(7)), std::length_error);
}

TEST_CASE("automorphisms of the free loop of order 64") {
  const FiniteLoop& l = free64();
  const auto all = enumerate_automorphisms(l, {4});
  CHECK(all.size() == 86016);
  const AutFactorization f = factor_automorphisms(l, all);
  CHECK(f.decomposes);
  CHECK(f.kernel == 512);
  CHECK(f.image == 168);
}

TEST_CASE("extension equivalence") {
  std::mt19937_64 rng(2);
  const Cocycle f = random_cocycle(3, 1, rng);
  const auto same = extension_equivalence(f, f);
  REQUIRE(same);
  for (std::size_t i = 0; i < same->size(); ++i) CHECK((*same)[i] == i);
  const Cocycle g = f + coboundary_of(3, 0x2d);
  const auto map = extension_equivalence(f, g);
  REQUIRE(map);
  CHECK(is_isomorphism(build_extension(f), build_extension(g), *map));
  Cocycle basis = Cocycle::zero(3, 1);
  for (const auto& b : normalized_space_basis(3)) {
    basis = b;
    break;
  }
  CHECK_FALSE(extension_equivalence(Cocycle::zero(3, 1), basis));
  CHECK_THROWS(extension_equivalence(Cocycle::zero(3, 1), Cocycle::zero(2, 1)));
}

TEST_CASE("uniqueness of S16") {
  const auto& r = s16();
  CHECK(r.quotient_count == 7);
  CHECK(r.isomorphisms_verified == 21);
  CHECK(r.pairwise_isomorphic);
  CHECK(r.order == 16);
  CHECK(r.center_order == 2);
  CHECK(r.associator_subloop_order == 2);
  CHECK(r.nilpotency == 2);
  CHECK(r.steiner);
  CHECK_FALSE(r.associative);
  CHECK(r.subspaces.front().elements == ElementSet{0, 1, 2, 3});
}

TEST_CASE("table files") {
  const FiniteLoop& l = s16().loop;
  std::stringstream s;
  write_loop_table(s, l);
  CHECK(read_loop_table(s).table() == l.table());
  std::istringstream commented("# klein\nloop 4\n0 1 2 3\n1 0 3 2\n# mid\n2 3 0 1\n3 2 1 0\n");
  CHECK(read_loop_table(commented).table() == elementary_abelian(2).table());
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_loop_table(in);
    } catch (const ParseError& e) {
      return e.line() + 1000;
    }
    return 0;
  };
  CHECK(line_of("loops 2\n0 1\n1 0\n") == 1001);
  CHECK(line_of("loop 2\n0 1\n1\n") == 1003);
  CHECK(line_of("loop 2\n0 1\n1 x\n") == 1003);
  CHECK(line_of("loop 2\n0 1\n") == 1002);
  CHECK(line_of("loop 2\n0 1\n1 0\n0 1\n") == 1004);
  CHECK(line_of("loop 2\n0 1\n1 1\n") == 1000);  // not a Latin square
  CHECK(line_of("") == 1000);
}
