#pragma once

// Words of the free Steiner loop on ordered generators x1 < x2 < ... .
//
// A word is an immutable binary tree. The same type carries raw words (any
// bracketing) and canonical S-words; is_sword() tells them apart and
// normalize() maps the former onto the latter. The empty word (a null node)
// stands for the neutral element and never appears inside a tree.
//
// Canonical orientation of a product (a b): the longer factor sits on the
// left; factors of equal length are ordered smaller-left, so x1*x2 is
// rendered (x1 x2) and {1,2,3} is ((x1 x2) x3).

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steiner/f2.hpp"

namespace steiner {

class FiniteLoop;

class SWord {
 public:
  SWord() = default;  // empty word

  static SWord generator(int index);
  // Raw product in the given orientation; no canonicalisation.
  static SWord pair(const SWord& left, const SWord& right);

  bool is_empty() const { return node_ == nullptr; }
  bool is_leaf() const;
  int generator_index() const;  // leaf only
  const SWord& left() const;    // compound only
  const SWord& right() const;
  std::size_t length() const;   // leaf count, 0 for the empty word
  int max_generator() const;

  // Structural equality.
  bool operator==(const SWord& o) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit SWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct SWord::Node {
  int gen = 0;  // >= 1 for leaves
  SWord left;
  SWord right;
  std::size_t length = 1;
};

// Length first; equal-length compounds by (left, right); leaves by index.
// The empty word sorts below everything.
std::strong_ordering compare_words(const SWord& v, const SWord& w);

bool is_sword(const SWord& w);

// Product in the free Steiner loop. Both inputs must be S-words or empty.
SWord multiply(const SWord& v, const SWord& w);

// Value of an arbitrary word tree as an S-word.
SWord normalize(const SWord& w);

// Left-normed ascending product of the members; empty word for {}.
SWord subset_word(const IndexSubset& s);

using LoopElement = std::uint64_t;

// Evaluates w in L with x_i -> images[i - 1]. Throws std::out_of_range when
// a generator has no image.
LoopElement evaluate(const SWord& w, std::span<const LoopElement> images, const FiniteLoop& loop);

// Grammar: word := "e" | "x" digits | "(" word word ")".
// Throws std::invalid_argument on malformed input.
SWord parse_word(std::string_view text);

// Every S-word over generators 1..gens of length <= max_length, ascending
// in compare_words order.
std::vector<SWord> enumerate_swords(int gens, std::size_t max_length);

}  // namespace steiner
