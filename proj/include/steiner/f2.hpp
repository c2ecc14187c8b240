#pragma once

// Subsets of I_n = {1..n} and linear algebra over F2.
//
// A subset is stored as its characteristic vector: index i lives at bit
// position i-1. The same encoding drives ordering, hashing and file output,
// so the "number" of a subset is simply that bit pattern read as an integer.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace steiner {

inline constexpr int kMaxAmbient = 32;
inline constexpr int kMaxEnumerate = 16;

class IndexSubset {
 public:
  IndexSubset() = default;
  IndexSubset(int n, std::uint32_t bits);
  IndexSubset(int n, std::initializer_list<int> members);

  static IndexSubset empty(int n) { return IndexSubset(n, 0u); }
  static IndexSubset singleton(int n, int i);
  static IndexSubset from_members(int n, std::span<const int> members);

  int n() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  bool is_empty() const { return bits_ == 0; }
  int size() const;
  bool contains(int i) const;
  // 0 when empty.
  int min() const;
  int max() const;
  std::vector<int> members() const;

  IndexSubset operator^(const IndexSubset& o) const;  // symmetric difference
  IndexSubset operator&(const IndexSubset& o) const;
  IndexSubset operator|(const IndexSubset& o) const;
  IndexSubset minus(const IndexSubset& o) const;
  IndexSubset without(int i) const;
  IndexSubset with(int i) const;

  bool operator==(const IndexSubset&) const = default;
  // Numeric order of the characteristic vector.
  std::strong_ordering operator<=>(const IndexSubset& o) const;

  // "{1,3}" or "{}".
  std::string to_string() const;

 private:
  void check_same(const IndexSubset& o) const;

  int n_ = 0;
  std::uint32_t bits_ = 0;
};

IndexSubset symdiff(const IndexSubset& a, const IndexSubset& b);

// All 2^n subsets ordered by characteristic number.
std::vector<IndexSubset> enumerate_subsets(int n);

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size);

  static F2Vector unit(std::size_t size, std::size_t pos);
  // Bit string with position 0 first, e.g. "101".
  static F2Vector parse(std::string_view bits);
  static F2Vector from_bits(std::size_t size, std::uint64_t bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void flip(std::size_t pos);
  bool is_zero() const;
  std::size_t popcount() const;
  // Highest set position, or nullopt for zero.
  std::optional<std::size_t> leading() const;
  // Value of the first 64 positions as an integer (position 0 least significant).
  std::uint64_t low_word() const;

  F2Vector& operator^=(const F2Vector& o);
  F2Vector operator^(const F2Vector& o) const;
  bool dot(const F2Vector& o) const;

  bool operator==(const F2Vector&) const = default;
  // Numeric order: higher positions dominate.
  std::strong_ordering operator<=>(const F2Vector& o) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void check_same(const F2Vector& o) const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class F2Matrix {
 public:
  F2Matrix() = default;
  explicit F2Matrix(std::size_t cols) : cols_(cols) {}
  // Throws std::invalid_argument on ragged rows.
  explicit F2Matrix(std::vector<F2Vector> rows);
  F2Matrix(std::size_t cols, std::vector<F2Vector> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<F2Vector>& row_vectors() const { return rows_; }
  const F2Vector& row(std::size_t i) const { return rows_[i]; }
  void push_row(F2Vector row);

  F2Vector apply(const F2Vector& x) const;
  F2Matrix transpose() const;

 private:
  std::size_t cols_ = 0;
  std::vector<F2Vector> rows_;
};

// Echelon basis of a span, keyed by leading (highest) position. Inserting
// reports whether the vector was independent of what is already held.
class F2Basis {
 public:
  explicit F2Basis(std::size_t dim) : dim_(dim) {}

  bool insert(F2Vector v);
  F2Vector reduce(F2Vector v) const;
  bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }
  std::size_t rank() const { return count_; }
  std::vector<F2Vector> vectors() const;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<std::optional<F2Vector>> by_lead_;
};

std::size_t rank(const F2Matrix& m);

// Basis of {x : M x = 0}, one vector per free column, in echelon form.
std::vector<F2Vector> nullspace(const F2Matrix& m);

// Solves M x = b where M holds one equation per row and x has length
// M.cols(). Returns the least solution in numeric order (higher positions
// dominate), or nullopt when inconsistent.
std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b);

}  // namespace steiner

template <>
struct std::hash<steiner::F2Vector> {
  std::size_t operator()(const steiner::F2Vector& v) const noexcept { return v.hash(); }
};
