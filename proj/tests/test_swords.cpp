#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <map>
#include <set>

#include "steiner/loop.hpp"
#include "steiner/swords.hpp"

using namespace steiner;

namespace {

SWord x(int i) { return SWord::generator(i); }
SWord p(const SWord& a, const SWord& b) { return SWord::pair(a, b); }
SWord w(const char* text) { return parse_word(text); }

// Every bracketed word with exactly `leaves` leaves over x1..x<gens>.
std::vector<SWord> raw_trees(int gens, std::size_t leaves) {
  if (leaves == 1) {
    std::vector<SWord> out;
    for (int i = 1; i <= gens; ++i) out.push_back(x(i));
    return out;
  }
  std::vector<SWord> out;
  for (std::size_t k = 1; k < leaves; ++k) {
    const auto left = raw_trees(gens, k), right = raw_trees(gens, leaves - k);
    for (const auto& a : left) {
      for (const auto& b : right) out.push_back(p(a, b));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("ordering examples") {
  CHECK(compare_words(x(1), x(2)) == std::strong_ordering::less);
  CHECK(compare_words(p(x(1), x(2)), x(3)) == std::strong_ordering::greater);
  CHECK(compare_words(p(x(1), x(2)), p(x(1), x(3))) == std::strong_ordering::less);
  CHECK(compare_words(SWord(), x(1)) == std::strong_ordering::less);
  CHECK(compare_words(w("((x1 x2) x3)"), w("((x1 x2) x3)")) == std::strong_ordering::equal);
}

TEST_CASE("S-word predicate") {
  CHECK_FALSE(is_sword(w("((x1 x2) x2)")));
  CHECK(is_sword(w("((x1 x2) x3)")));
  CHECK(is_sword(w("((x1 x2) (x1 x3))")));
  CHECK_FALSE(is_sword(w("(x1 x1)")));
  CHECK_FALSE(is_sword(w("(x2 x1)")));          // equal lengths: smaller left
  CHECK_FALSE(is_sword(w("(x3 (x1 x2))")));     // longer factor left
  CHECK(is_sword(x(4)));
}

TEST_CASE("multiplication rules") {
  CHECK(multiply(x(1), x(1)).is_empty());
  CHECK(multiply(p(x(1), x(2)), x(2)) == x(1));
  CHECK(multiply(x(2), p(x(1), x(2))) == x(1));
  CHECK(multiply(x(1), x(2)) == p(x(1), x(2)));
  CHECK(multiply(x(2), x(1)) == p(x(1), x(2)));
  CHECK(multiply(SWord(), x(3)) == x(3));
  CHECK(multiply(x(3), p(x(1), x(2))) == p(p(x(1), x(2)), x(3)));
}

TEST_CASE("normalize examples") {
  CHECK(normalize(w("((x1 x2) x2)")) == x(1));
  CHECK(normalize(w("(x1 (x1 x2))")) == x(2));
  CHECK(normalize(w("((x1 x1) x3)")) == x(3));
  CHECK(normalize(w("(x2 x1)")).to_string() == "(x1 x2)");
}

TEST_CASE("subset words") {
  CHECK(subset_word(IndexSubset(3, {2})) == x(2));
  CHECK(subset_word(IndexSubset(3, {1, 3})).to_string() == "(x1 x3)");
  CHECK(subset_word(IndexSubset(3, {1, 2, 3})).to_string() == "((x1 x2) x3)");
  CHECK(subset_word(IndexSubset::empty(3)).is_empty());
}

TEST_CASE("parse and print") {
  CHECK(w("e").is_empty());
  CHECK(w("  ( (x1  x2) x10 ) ").to_string() == "((x1 x2) x10)");
  CHECK(SWord().to_string() == "e");
  CHECK_THROWS_AS(w("(x1 x2"), std::invalid_argument);
  CHECK_THROWS_AS(w("(x1)"), std::invalid_argument);
  CHECK_THROWS_AS(w("x0"), std::invalid_argument);
  CHECK_THROWS_AS(w("(x1 e)"), std::invalid_argument);
  CHECK_THROWS_AS(w("y1"), std::invalid_argument);
  CHECK_THROWS_AS(w("x1 x2"), std::invalid_argument);
}

TEST_CASE("enumeration matches normalization of all bracketings") {
  std::set<std::string> oracle;
  for (std::size_t leaves = 1; leaves <= 6; ++leaves) {
    for (const auto& t : raw_trees(3, leaves)) {
      const SWord n = normalize(t);
      if (!n.is_empty() && n.length() <= 6) oracle.insert(n.to_string());
    }
  }
  const auto words = enumerate_swords(3, 6);
  std::set<std::string> got;
  for (const auto& s : words) {
    CHECK(is_sword(s));
    got.insert(s.to_string());
  }
  CHECK(got.size() == words.size());
  CHECK(got == oracle);
  CHECK(words.size() == 129);
  for (std::size_t i = 1; i < words.size(); ++i) {
    CHECK(compare_words(words[i - 1], words[i]) == std::strong_ordering::less);
  }
}

TEST_CASE("Steiner laws and evaluation in the free loop of order 64") {
  const FiniteLoop l = free_nilpotent2(3);
  const auto& gens = l.generators();
  CHECK(evaluate(SWord(), gens, l) == 0);
  for (const auto& s : enumerate_subsets(3)) {
    // Ascending left-normed products land on (s, 0).
    CHECK(evaluate(subset_word(s), gens, l) == (Element{s.bits()} << 3));
  }
  const auto words = enumerate_swords(3, 5);
  for (const auto& a : words) {
    for (const auto& b : words) {
      const SWord ab = multiply(a, b);
      CHECK(ab == multiply(b, a));
      CHECK(multiply(a, ab) == b);
      CHECK(evaluate(ab, gens, l) == l.mul(evaluate(a, gens, l), evaluate(b, gens, l)));
    }
  }
  CHECK_THROWS_AS(evaluate(x(4), gens, l), std::out_of_range);
}
