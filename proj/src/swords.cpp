#include "steiner/swords.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "steiner/loop.hpp"

namespace steiner {

SWord SWord::generator(int index) {
  if (index < 1) throw std::invalid_argument("generator index must be >= 1");
  auto n = std::make_shared<Node>();
  n->gen = index;
  return SWord(std::move(n));
}

SWord SWord::pair(const SWord& left, const SWord& right) {
  if (left.is_empty() || right.is_empty()) {
    throw std::invalid_argument("the empty word cannot be a factor");
  }
  auto n = std::make_shared<Node>();
  n->left = left;
  n->right = right;
  n->length = left.length() + right.length();
  return SWord(std::move(n));
}

bool SWord::is_leaf() const { return node_ && node_->gen > 0; }

int SWord::generator_index() const {
  if (!is_leaf()) throw std::logic_error("generator_index on a non-leaf word");
  return node_->gen;
}

const SWord& SWord::left() const {
  if (!node_ || is_leaf()) throw std::logic_error("left() on a non-compound word");
  return node_->left;
}

const SWord& SWord::right() const {
  if (!node_ || is_leaf()) throw std::logic_error("right() on a non-compound word");
  return node_->right;
}

std::size_t SWord::length() const { return node_ ? node_->length : 0; }

int SWord::max_generator() const {
  if (!node_) return 0;
  if (is_leaf()) return node_->gen;
  return std::max(node_->left.max_generator(), node_->right.max_generator());
}

bool SWord::operator==(const SWord& o) const { return compare_words(*this, o) == 0; }

std::string SWord::to_string() const {
  if (!node_) return "e";
  if (is_leaf()) return "x" + std::to_string(node_->gen);
  return "(" + node_->left.to_string() + " " + node_->right.to_string() + ")";
}

std::strong_ordering compare_words(const SWord& v, const SWord& w) {
  if (auto c = v.length() <=> w.length(); c != 0) return c;
  if (v.is_empty()) return std::strong_ordering::equal;
  if (v.is_leaf()) return v.generator_index() <=> w.generator_index();
  if (auto c = compare_words(v.left(), w.left()); c != 0) return c;
  return compare_words(v.right(), w.right());
}

namespace {

// Orientation for a product of two distinct words.
bool canonical_orientation(const SWord& a, const SWord& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  return compare_words(a, b) < 0;
}

SWord canonical_pair(const SWord& a, const SWord& b) {
  return canonical_orientation(a, b) ? SWord::pair(a, b) : SWord::pair(b, a);
}

}  // namespace

bool is_sword(const SWord& w) {
  if (w.is_empty()) return false;
  if (w.is_leaf()) return true;
  const SWord& a = w.left();
  const SWord& b = w.right();
  if (!is_sword(a) || !is_sword(b)) return false;
  if (a == b) return false;
  if (!canonical_orientation(a, b)) return false;
  if (!a.is_leaf() && (b == a.left() || b == a.right())) return false;
  return true;
}

SWord multiply(const SWord& v, const SWord& w) {
  if (v.is_empty()) return w;
  if (w.is_empty()) return v;
  if (v == w) return SWord();
  if (!w.is_leaf()) {
    if (v == w.left()) return w.right();
    if (v == w.right()) return w.left();
  }
  if (!v.is_leaf()) {
    if (w == v.left()) return v.right();
    if (w == v.right()) return v.left();
  }
  return canonical_pair(v, w);
}

SWord normalize(const SWord& w) {
  if (w.is_empty() || w.is_leaf()) return w;
  return multiply(normalize(w.left()), normalize(w.right()));
}

SWord subset_word(const IndexSubset& s) {
  SWord out;
  for (int i : s.members()) {
    out = out.is_empty() ? SWord::generator(i) : SWord::pair(out, SWord::generator(i));
  }
  return out;
}

LoopElement evaluate(const SWord& w, std::span<const LoopElement> images, const FiniteLoop& loop) {
  if (w.is_empty()) return loop.identity();
  if (w.is_leaf()) {
    const auto i = static_cast<std::size_t>(w.generator_index());
    if (i > images.size()) {
      throw std::out_of_range("no image for generator x" + std::to_string(i));
    }
    return images[i - 1];
  }
  return loop.mul(evaluate(w.left(), images, loop), evaluate(w.right(), images, loop));
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  SWord parse() {
    SWord w = word();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("word parse error at offset " + std::to_string(pos_) + ": " +
                                what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  SWord word() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SWord a = word();
      SWord b = word();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      if (a.is_empty() || b.is_empty()) fail("'e' cannot be a factor");
      return SWord::pair(a, b);
    }
    if (c == 'e') {
      ++pos_;
      return SWord();
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected generator index after 'x'");
      if (pos_ - start > 6) fail("generator index too large");
      const int idx = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (idx < 1) fail("generator indices start at 1");
      return SWord::generator(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SWord parse_word(std::string_view text) { return WordParser(text).parse(); }

std::vector<SWord> enumerate_swords(int gens, std::size_t max_length) {
  std::vector<std::vector<SWord>> by_len(max_length + 1);
  if (max_length >= 1) {
    for (int i = 1; i <= gens; ++i) by_len[1].push_back(SWord::generator(i));
  }
  for (std::size_t len = 2; len <= max_length; ++len) {
    for (std::size_t lb = 1; 2 * lb <= len; ++lb) {
      const std::size_t la = len - lb;
      for (const auto& a : by_len[la]) {
        for (const auto& b : by_len[lb]) {
          SWord w = SWord::pair(a, b);
          if (is_sword(w)) by_len[len].push_back(std::move(w));
        }
      }
    }
    std::sort(by_len[len].begin(), by_len[len].end(),
              [](const SWord& x, const SWord& y) { return compare_words(x, y) < 0; });
  }
  std::vector<SWord> out;
  for (auto& layer : by_len) {
    for (auto& w : layer) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace steiner
