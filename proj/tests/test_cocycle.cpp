#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "steiner/cocycle.hpp"
#include "steiner/error.hpp"

using namespace steiner;

namespace {

IndexSubset S(int n, std::initializer_list<int> m) { return IndexSubset(n, m); }

// Pair classification redone on explicit member lists.
struct Naive {
  static std::vector<int> members(std::uint32_t bits) {
    std::vector<int> out;
    for (int i = 1; i <= 32; ++i) {
      if ((bits >> (i - 1)) & 1u) out.push_back(i);
    }
    return out;
  }
  // True when a sits above b on their line.
  static bool above(std::uint32_t a, std::uint32_t b) {
    const auto ma = members(a), mb = members(b);
    if (ma.size() != mb.size()) return ma.size() > mb.size();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
  }
  // Counts (regular, strongly regular) pairs, one line at a time.
  static std::pair<std::size_t, std::size_t> counts(int n) {
    std::size_t reg = 0, sr = 0;
    const std::uint32_t N = 1u << n;
    for (std::uint32_t a = 1; a < N; ++a) {
      for (std::uint32_t b = a + 1; b < N; ++b) {
        const std::uint32_t c = a ^ b;
        if (c < b) continue;  // line {a < b < c} visited once
        std::uint32_t line[3] = {a, b, c};
        std::sort(line, line + 3, [](auto x, auto y) { return above(x, y); });
        // line[0] is the top; the regular pair is the other two.
        std::uint32_t s = line[1], t = line[2];
        const auto ms = members(s), mt = members(t);
        if (ms.size() < mt.size() || (ms.size() == mt.size() && s > t)) std::swap(s, t);
        ++reg;
        const auto ss = members(s), tt = members(t);
        if (!(tt.size() == 1 && tt[0] > ss.back())) ++sr;
      }
    }
    return {reg, sr};
  }
};

std::vector<Cocycle> span(const std::vector<Cocycle>& basis, int n) {
  std::vector<Cocycle> out;
  for (std::uint32_t c = 0; c < (1u << basis.size()); ++c) {
    Cocycle f = Cocycle::zero(n, 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((c >> i) & 1u) f = f + basis[i];
    }
    out.push_back(f);
  }
  return out;
}

Cochain cochain_from_code(int n, std::uint32_t code) {
  Cochain g(n, 1);
  for (std::uint32_t s = 1; s < (1u << n); ++s) g.set(IndexSubset(n, s), F2Vector::from_bits(1, (code >> (s - 1)) & 1u));
  return g;
}

}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify_pair(S(3, {1, 2}), S(3, {3})) == PairClass::regular_not_strong);
  CHECK(classify_pair(S(3, {1, 3}), S(3, {2})) == PairClass::strongly_regular);
  CHECK(classify_pair(S(3, {1, 3}), S(3, {1, 3})) == PairClass::degenerate);
  CHECK(classify_pair(S(3, {}), S(3, {1})) == PairClass::degenerate);
  CHECK(classify_pair(S(3, {1}), S(3, {2})) == PairClass::regular_not_strong);  // {1,2} tops the line
  CHECK(classify_pair(S(3, {1}), S(3, {1, 2})) == PairClass::not_regular);
  CHECK(classify_pair(S(3, {2}), S(3, {1, 3})) == PairClass::strongly_regular);  // argument order irrelevant
}

TEST_CASE("orbits") {
  const Orbit o = orbit_of(S(2, {1}), S(2, {2}));
  CHECK(std::count(o.regular.begin(), o.regular.end(), true) == 1);
  CHECK(o.representative() == SubsetPair{S(2, {1}), S(2, {2})});
  CHECK(orbit_of(S(3, {1, 2}), S(3, {3})).representative() == SubsetPair{S(3, {1, 2}), S(3, {3})});
  for (std::uint32_t a = 1; a < 16; ++a) {
    for (std::uint32_t b = 1; b < 16; ++b) {
      if (a == b) continue;
      const IndexSubset A(4, a), B(4, b);
      auto sorted = [](Orbit x) {
        std::sort(x.pairs.begin(), x.pairs.end());
        return x.pairs;
      };
      CHECK(sorted(orbit_of(A, B)) == sorted(orbit_of(A ^ B, B)));
      CHECK(orbit_of(A, B).representative() == orbit_of(A ^ B, B).representative());
    }
  }
  CHECK_THROWS(orbit_of(S(3, {1}), S(3, {1})));
}

TEST_CASE("pair counts: formula, enumeration and a member-list oracle") {
  const std::size_t sr[] = {0, 0, 3, 24, 129, 594, 2547, 10548};
  const std::size_t reg[] = {0, 1, 7, 35, 155, 651, 2667, 10795};
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(sr_count_formula(n) == sr[n - 1]);
    CHECK(regular_count_formula(n) == reg[n - 1]);
    CHECK(strongly_regular_pairs(n).size() == sr[n - 1]);
    CHECK(regular_pairs(n).size() == reg[n - 1]);
    if (n <= 7) CHECK(Naive::counts(n) == std::pair<std::size_t, std::size_t>{reg[n - 1], sr[n - 1]});
  }
  CHECK(strongly_regular_pairs(1).empty());
  CHECK(strongly_regular_pairs(2).empty());
  const auto p3 = strongly_regular_pairs(3);
  CHECK(std::is_sorted(p3.begin(), p3.end(), [](const SubsetPair& x, const SubsetPair& y) {
    return std::pair(x.first.bits(), x.second.bits()) < std::pair(y.first.bits(), y.second.bits());
  }));
}

TEST_CASE("validation examples") {
  CHECK(validate_cocycle(Cocycle::zero(3, 2)).empty());
  Cocycle f = Cocycle::zero(2, 1);
  f.set(S(2, {1}), S(2, {1}), F2Vector::parse("1"));
  const auto bad = validate_cocycle(f);
  const bool diagonal = std::any_of(bad.begin(), bad.end(), [](const CocycleViolation& v) {
    return v.law == "f(v,v)=0" && v.a == S(2, {1}) && v.b == S(2, {1});
  });
  CHECK(diagonal);
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 20; ++t) {
      Cochain g(n, 2);
      for (std::uint32_t s = 1; s < (1u << n); ++s) g.set(IndexSubset(n, s), F2Vector::from_bits(2, rng() & 3u));
      CHECK(is_cocycle(coboundary(g)));
    }
  }
}

TEST_CASE("exhaustive Z2 at n=3 by brute force over all pairings") {
  // Off-diagonal pairs of non-empty subsets: 21 cells.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  for (std::uint32_t a = 1; a < 8; ++a) {
    for (std::uint32_t b = 1; b < a; ++b) cells.emplace_back(a, b);
  }
  auto cell = [&](std::uint32_t a, std::uint32_t b) {
    if (a < b) std::swap(a, b);
    return static_cast<std::size_t>(std::find(cells.begin(), cells.end(), std::pair(a, b)) - cells.begin());
  };
  std::size_t index[8][8];
  for (std::uint32_t a = 1; a < 8; ++a) {
    for (std::uint32_t b = 1; b < 8; ++b) index[a][b] = a == b ? 99 : cell(a, b);
  }
  auto value = [&](std::uint32_t code, std::uint32_t a, std::uint32_t b) -> unsigned {
    if (a == 0 || b == 0 || a == b) return 0;
    return (code >> index[a][b]) & 1u;
  };
  std::size_t count = 0;
  std::uint32_t sample = 0;
  for (std::uint32_t code = 0; code < (1u << 21); ++code) {
    bool ok = true;
    for (std::uint32_t a = 1; a < 8 && ok; ++a) {
      for (std::uint32_t b = 1; b < 8 && ok; ++b) ok = value(code, a ^ b, b) == value(code, a, b);
    }
    if (ok) {
      ++count;
      sample = code;
    }
  }
  CHECK(count == 128);
  const auto basis = cocycle_space_basis(3);
  CHECK(basis.size() == 7);
  // The last brute-force cocycle lies in the computed space.
  Cocycle f = Cocycle::zero(3, 1);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    f.set(IndexSubset(3, cells[k].first), IndexSubset(3, cells[k].second), F2Vector::from_bits(1, (sample >> k) & 1u));
  }
  CHECK(is_cocycle(f));
  const auto all = span(basis, 3);
  CHECK(std::find(all.begin(), all.end(), f) != all.end());
}

TEST_CASE("space dimensions") {
  CHECK(coboundary_space_basis(3).size() == 4);
  CHECK(normalized_space_basis(3).size() == 3);
  CHECK(cocycle_space_basis(4).size() == 35);
  CHECK(coboundary_space_basis(4).size() == 11);
  CHECK(normalized_space_basis(4).size() == 24);
  for (const auto& f : normalized_space_basis(4)) CHECK(in_normalized_subspace(f));
}

TEST_CASE("coboundary examples") {
  CHECK(coboundary(Cochain(3, 2)).is_zero());
  Cochain g(2, 1);
  g.set(S(2, {1, 2}), F2Vector::parse("1"));
  const Cocycle d = coboundary(g);
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      const bool expected = a != b && a != 0 && b != 0;  // the three pairs of the single line
      CHECK(d.at(a, b) == F2Vector::from_bits(1, expected));
    }
  }
  Cochain bad(2, 1);
  bad.set(S(2, {}), F2Vector::parse("1"));
  CHECK_THROWS(coboundary(bad));
  // Linear g has zero coboundary.
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t lambda = 0; lambda < (1u << n); ++lambda) {
      Cochain lin(n, 1);
      for (std::uint32_t s = 1; s < (1u << n); ++s) {
        lin.set(IndexSubset(n, s), F2Vector::from_bits(1, __builtin_popcount(s & lambda) & 1u));
      }
      CHECK(coboundary(lin).is_zero());
    }
  }
}

TEST_CASE("decomposition") {
  for (const auto& f : span(normalized_space_basis(3), 3)) {
    const Decomposition d = decompose(f);
    CHECK(coboundary(d.cochain).is_zero());
    CHECK(d.normalized == f);
  }
  for (std::uint32_t code = 0; code < 128; ++code) {
    const Cocycle f = coboundary(cochain_from_code(3, code));
    CHECK(decompose(f).normalized.is_zero());
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Cocycle f = random_cocycle(4, 3, rng);
    REQUIRE(is_cocycle(f));
    const Decomposition d = decompose(f);
    CHECK(in_normalized_subspace(d.normalized));
    CHECK(d.normalized + coboundary(d.cochain) == f);
  }
}

TEST_CASE("cohomology classes") {
  std::mt19937_64 rng(9);
  const Cocycle f = random_cocycle(3, 1, rng);
  CHECK(same_h2_class(f, f));
  const Cocycle shifted = f + coboundary(cochain_from_code(3, 0x35));
  CHECK(same_h2_class(f, shifted));
  const auto w = coboundary_witness(f + shifted);
  REQUIRE(w);
  CHECK(coboundary(*w) == f + shifted);
  const auto s = solve_coboundary(f + shifted);
  REQUIRE(s);
  CHECK(coboundary(*s) == f + shifted);
  CHECK_FALSE(same_h2_class(Cocycle::zero(3, 3), universal_cocycle(3).densified()));
  for (const auto& b : normalized_space_basis(3)) {
    CHECK_FALSE(coboundary_witness(b));
    CHECK_FALSE(solve_coboundary(b));
  }
}

TEST_CASE("universal cocycle") {
  const Cocycle u2 = universal_cocycle(2);
  CHECK(u2.m() == 0);
  CHECK(u2.densified().is_zero());
  const Cocycle u3 = universal_cocycle(3);
  REQUIRE(u3.m() == 3);
  const F2Vector v = u3(S(3, {1, 3}), S(3, {2}));
  CHECK(v.popcount() == 1);
  CHECK(u3(S(3, {1, 2}), S(3, {3})).is_zero());
  CHECK(is_cocycle(u3.densified()));
  CHECK(in_normalized_subspace(u3.densified()));
  // Every f in Z2_0 is lambda o u for exactly one linear lambda.
  const auto z0 = span(normalized_space_basis(3), 3);
  std::vector<Cocycle> images;
  for (std::uint32_t lambda = 0; lambda < 8; ++lambda) {
    Cocycle f = Cocycle::zero(3, 1);
    for (std::uint32_t a = 0; a < 8; ++a) {
      for (std::uint32_t b = 0; b <= a; ++b) {
        f.set(IndexSubset(3, a), IndexSubset(3, b),
              F2Vector::from_bits(1, __builtin_popcount(u3.at(a, b).low_word() & lambda) & 1u));
      }
    }
    images.push_back(f);
  }
  for (const auto& f : z0) CHECK(std::count(images.begin(), images.end(), f) == 1);
  CHECK(is_cocycle(universal_cocycle(6)));
}

TEST_CASE("associator formula") {
  std::mt19937_64 rng(3);
  const Cocycle f = random_cocycle(3, 2, rng);
  for (const auto& s : enumerate_subsets(3)) {
    for (const auto& t : enumerate_subsets(3)) {
      CHECK(associator_formula(f, s, s, t) == (f(s, t) ^ f(s, s ^ t)));
    }
  }
  for (std::uint32_t code = 0; code < 128; code += 5) {
    const Cocycle d = coboundary(cochain_from_code(3, code));
    for (const auto& a : enumerate_subsets(3)) {
      for (const auto& b : enumerate_subsets(3)) {
        for (const auto& c : enumerate_subsets(3)) CHECK(associator_formula(d, a, b, c).is_zero());
      }
    }
  }
}

TEST_CASE("theorem basis") {
  CHECK(theorem_basis(1).empty());
  CHECK(theorem_basis(4).size() == 24);
  bool found = false;
  for (const auto& t : theorem_basis(3)) {
    if (t.source == SubsetPair{S(3, {1, 3}), S(3, {2})}) {
      found = true;
      CHECK(t.head == S(3, {3}));
      CHECK(t.middle == S(3, {1}));
      CHECK(t.tail == S(3, {2}));
    }
  }
  CHECK(found);
  CHECK(verify_theorem_basis(2).passed());
  CHECK(verify_theorem_basis(3).rank == 3);
  CHECK(verify_theorem_basis(4).rank == 24);
  CHECK(verify_theorem_basis(5).rank == 129);
}

TEST_CASE("cocycle file round trip and errors") {
  std::mt19937_64 rng(21);
  const Cocycle f = random_cocycle(3, 2, rng);
  std::stringstream s;
  write_cocycle(s, f);
  CHECK(read_cocycle(s) == f);

  std::istringstream ok("# comment\ncocycle n=2 m=1\n1;2;1\n1;1,2;1\n\n2;1,2;1\n");
  const Cocycle g = read_cocycle(ok);
  CHECK(g(S(2, {2}), S(2, {1})) == F2Vector::parse("1"));
  CHECK(is_cocycle(g));

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_cocycle(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("cocycle n=2\n") == 1);
  CHECK(line_of("cocycle n=2 m=1\n1;2\n") == 2);
  CHECK(line_of("cocycle n=2 m=1\n1;3;1\n") == 2);
  CHECK(line_of("cocycle n=2 m=1\n1;2;11\n") == 2);
  CHECK(line_of("cocycle n=2 m=1\n1;2;1\n2;1;0\n") == 3);
  CHECK(line_of("cocycle n=2 m=1\n2,1;1;1\n") == 2);
  CHECK(line_of("") == 0);
}
