#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "steiner/f2.hpp"

using namespace steiner;

namespace {

// Rank by counting the distinct vectors in the row span.
std::size_t span_rank(const F2Matrix& m) {
  std::set<std::uint64_t> span;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << m.rows()); ++c) {
    std::uint64_t v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if ((c >> r) & 1u) v ^= m.row(r).low_word();
    }
    span.insert(v);
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < span.size()) ++k;
  return k;
}

// First x, counting upward with position 0 least significant.
std::optional<std::uint64_t> least_solution(const F2Matrix& m, const F2Vector& b) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.cols()); ++x) {
    if (m.apply(F2Vector::from_bits(m.cols(), x)) == b) return x;
  }
  return std::nullopt;
}

F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  F2Matrix m(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    // Sparse-ish rows so that dependent rows actually happen.
    m.push_row(F2Vector::from_bits(cols, rng() & rng() & ((std::uint64_t{1} << cols) - 1)));
  }
  return m;
}

}  // namespace

TEST_CASE("symmetric difference") {
  CHECK(symdiff(IndexSubset(3, {1, 2}), IndexSubset(3, {2, 3})) == IndexSubset(3, {1, 3}));
  const IndexSubset s(4, {1, 4});
  CHECK((s ^ s).is_empty());
  CHECK(symdiff(IndexSubset(3, {1, 2}), IndexSubset(3, {3})) == IndexSubset(3, {1, 2, 3}));
}

TEST_CASE("subset basics") {
  const IndexSubset s(5, {2, 5});
  CHECK(s.bits() == 0b10010u);
  CHECK(s.size() == 2);
  CHECK(s.min() == 2);
  CHECK(s.max() == 5);
  CHECK(IndexSubset::empty(5).max() == 0);
  CHECK(s.to_string() == "{2,5}");
  CHECK(IndexSubset::empty(2).to_string() == "{}");
  CHECK(s.without(5) == IndexSubset::singleton(5, 2));
  CHECK(s.with(1).members() == std::vector<int>{1, 2, 5});
  CHECK_THROWS(IndexSubset(3, {4}));
  CHECK_THROWS(IndexSubset(3, {1, 1}));
  CHECK_THROWS((IndexSubset(3, {1}) ^ IndexSubset(4, {1})));
}

TEST_CASE("enumerate subsets") {
  CHECK(enumerate_subsets(0) == std::vector<IndexSubset>{IndexSubset::empty(0)});
  CHECK(enumerate_subsets(1) == std::vector<IndexSubset>{IndexSubset::empty(1), IndexSubset(1, {1})});
  CHECK(enumerate_subsets(2) == std::vector<IndexSubset>{IndexSubset::empty(2), IndexSubset(2, {1}),
                                                         IndexSubset(2, {2}), IndexSubset(2, {1, 2})});
  CHECK(enumerate_subsets(10).size() == 1024);
  CHECK_THROWS(enumerate_subsets(17));
  CHECK_THROWS(enumerate_subsets(-1));
}

TEST_CASE("vector parse, order and arithmetic") {
  const F2Vector v = F2Vector::parse("101");
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.low_word() == 5);
  CHECK(v.to_string() == "101");
  CHECK(v.leading() == 2u);
  CHECK_FALSE(F2Vector(7).leading());
  CHECK((v ^ F2Vector::parse("100")) == F2Vector::parse("001"));
  CHECK(F2Vector::parse("10") < F2Vector::parse("01"));
  CHECK(v.dot(F2Vector::parse("111")) == false);
  CHECK_THROWS(F2Vector::parse("12"));
  CHECK_THROWS(v ^ F2Vector(2));
  F2Vector big(130);
  big.set(129);
  CHECK(big.leading() == 129u);
  CHECK(big > F2Vector::unit(130, 128));
}

TEST_CASE("rank examples") {
  CHECK(rank(F2Matrix({F2Vector::parse("10"), F2Vector::parse("01")})) == 2);
  CHECK(rank(F2Matrix({F2Vector::parse("11"), F2Vector::parse("11")})) == 1);
  CHECK(rank(F2Matrix()) == 0);
  CHECK_THROWS(F2Matrix({F2Vector::parse("1"), F2Vector::parse("11")}));
}

TEST_CASE("solve examples") {
  const F2Matrix id({F2Vector::parse("10"), F2Vector::parse("01")});
  CHECK(solve(id, F2Vector::parse("10")) == F2Vector::parse("10"));
  CHECK(solve(F2Matrix({F2Vector::parse("11")}), F2Vector::parse("1")) == F2Vector::parse("10"));
  CHECK_FALSE(solve(F2Matrix({F2Vector::parse("00")}), F2Vector::parse("1")));
  CHECK_THROWS(solve(id, F2Vector::parse("1")));
}

TEST_CASE("rank, nullspace and solve agree with brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 9;
    const F2Matrix m = random_matrix(rng, rows, cols);
    const std::size_t r = rank(m);
    CHECK(r == span_rank(m));
    const auto null = nullspace(m);
    CHECK(null.size() + r == cols);
    for (const auto& v : null) CHECK(m.apply(v).is_zero());
    CHECK(rank(F2Matrix(cols, null)) == null.size());
    const F2Vector b = F2Vector::from_bits(rows, rng() & ((1u << rows) - 1));
    const auto x = solve(m, b);
    const auto oracle = least_solution(m, b);
    REQUIRE(x.has_value() == oracle.has_value());
    if (x) CHECK(x->low_word() == *oracle);
  }
}

TEST_CASE("echelon basis") {
  F2Basis b(4);
  CHECK(b.insert(F2Vector::parse("1100")));
  CHECK(b.insert(F2Vector::parse("0110")));
  CHECK_FALSE(b.insert(F2Vector::parse("1010")));
  CHECK(b.contains(F2Vector::parse("1010")));
  CHECK_FALSE(b.contains(F2Vector::parse("0001")));
  CHECK(b.rank() == 2);
}
