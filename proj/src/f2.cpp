#include "steiner/f2.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace steiner {

namespace {

void check_ambient(int n) {
  if (n < 0 || n > kMaxAmbient) {
    throw std::out_of_range("ambient size " + std::to_string(n) + " outside 0.." +
                            std::to_string(kMaxAmbient));
  }
}

std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

IndexSubset::IndexSubset(int n, std::uint32_t bits) : n_(n), bits_(bits) {
  check_ambient(n);
  if ((bits & ~full_mask(n)) != 0) {
    throw std::out_of_range("subset has members outside 1.." + std::to_string(n));
  }
}

IndexSubset::IndexSubset(int n, std::initializer_list<int> members)
    : IndexSubset(from_members(n, std::span<const int>(members.begin(), members.size()))) {}

IndexSubset IndexSubset::singleton(int n, int i) {
  const int m[] = {i};
  return from_members(n, m);
}

IndexSubset IndexSubset::from_members(int n, std::span<const int> members) {
  check_ambient(n);
  std::uint32_t bits = 0;
  for (int i : members) {
    if (i < 1 || i > n) {
      throw std::out_of_range("member " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    const std::uint32_t b = 1u << (i - 1);
    if (bits & b) throw std::invalid_argument("duplicate member " + std::to_string(i));
    bits |= b;
  }
  return IndexSubset(n, bits);
}

int IndexSubset::size() const { return std::popcount(bits_); }

bool IndexSubset::contains(int i) const {
  return i >= 1 && i <= n_ && ((bits_ >> (i - 1)) & 1u);
}

int IndexSubset::min() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }

int IndexSubset::max() const { return std::bit_width(bits_); }

std::vector<int> IndexSubset::members() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

void IndexSubset::check_same(const IndexSubset& o) const {
  if (n_ != o.n_) {
    throw std::invalid_argument("mismatched ambient sizes " + std::to_string(n_) + " and " +
                                std::to_string(o.n_));
  }
}

IndexSubset IndexSubset::operator^(const IndexSubset& o) const {
  check_same(o);
  return IndexSubset(n_, bits_ ^ o.bits_);
}

IndexSubset IndexSubset::operator&(const IndexSubset& o) const {
  check_same(o);
  return IndexSubset(n_, bits_ & o.bits_);
}

IndexSubset IndexSubset::operator|(const IndexSubset& o) const {
  check_same(o);
  return IndexSubset(n_, bits_ | o.bits_);
}

IndexSubset IndexSubset::minus(const IndexSubset& o) const {
  check_same(o);
  return IndexSubset(n_, bits_ & ~o.bits_);
}

IndexSubset IndexSubset::without(int i) const {
  return contains(i) ? IndexSubset(n_, bits_ & ~(1u << (i - 1))) : *this;
}

IndexSubset IndexSubset::with(int i) const { return *this | singleton(n_, i); }

std::strong_ordering IndexSubset::operator<=>(const IndexSubset& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  return bits_ <=> o.bits_;
}

std::string IndexSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

IndexSubset symdiff(const IndexSubset& a, const IndexSubset& b) { return a ^ b; }

std::vector<IndexSubset> enumerate_subsets(int n) {
  if (n < 0 || n > kMaxEnumerate) {
    throw std::out_of_range("subset enumeration requires 0 <= n <= " +
                            std::to_string(kMaxEnumerate));
  }
  std::vector<IndexSubset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t b = 0; b < (1u << n); ++b) out.emplace_back(n, b);
  return out;
}

// ---------------------------------------------------------------------------

F2Vector::F2Vector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

F2Vector F2Vector::unit(std::size_t size, std::size_t pos) {
  F2Vector v(size);
  v.set(pos);
  return v;
}

F2Vector F2Vector::parse(std::string_view bits) {
  F2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

F2Vector F2Vector::from_bits(std::size_t size, std::uint64_t bits) {
  F2Vector v(size);
  for (std::size_t i = 0; i < size && i < 64; ++i) {
    if ((bits >> i) & 1u) v.set(i);
  }
  if (size < 64 && (bits >> size) != 0) throw std::out_of_range("bits exceed vector length");
  return v;
}

bool F2Vector::get(std::size_t pos) const {
  if (pos >= size_) throw std::out_of_range("F2Vector position out of range");
  return (words_[pos / 64] >> (pos % 64)) & 1u;
}

void F2Vector::set(std::size_t pos, bool value) {
  if (pos >= size_) throw std::out_of_range("F2Vector position out of range");
  const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
  if (value) {
    words_[pos / 64] |= mask;
  } else {
    words_[pos / 64] &= ~mask;
  }
}

void F2Vector::flip(std::size_t pos) {
  if (pos >= size_) throw std::out_of_range("F2Vector position out of range");
  words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
}

bool F2Vector::is_zero() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

std::size_t F2Vector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::optional<std::size_t> F2Vector::leading() const {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i]) return i * 64 + std::bit_width(words_[i]) - 1;
  }
  return std::nullopt;
}

std::uint64_t F2Vector::low_word() const { return words_.empty() ? 0 : words_[0]; }

void F2Vector::check_same(const F2Vector& o) const {
  if (size_ != o.size_) {
    throw std::invalid_argument("F2Vector length mismatch: " + std::to_string(size_) + " vs " +
                                std::to_string(o.size_));
  }
}

F2Vector& F2Vector::operator^=(const F2Vector& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

F2Vector F2Vector::operator^(const F2Vector& o) const {
  F2Vector r = *this;
  r ^= o;
  return r;
}

bool F2Vector::dot(const F2Vector& o) const {
  check_same(o);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

std::strong_ordering F2Vector::operator<=>(const F2Vector& o) const {
  if (auto c = size_ <=> o.size_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string F2Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::size_t F2Vector::hash() const {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ull;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

// ---------------------------------------------------------------------------

F2Matrix::F2Matrix(std::vector<F2Vector> rows) : cols_(rows.empty() ? 0 : rows.front().size()) {
  for (auto& r : rows) push_row(std::move(r));
}

F2Matrix::F2Matrix(std::size_t cols, std::vector<F2Vector> rows) : cols_(cols) {
  for (auto& r : rows) push_row(std::move(r));
}

void F2Matrix::push_row(F2Vector row) {
  if (row.size() != cols_) {
    throw std::invalid_argument("ragged matrix: row of length " + std::to_string(row.size()) +
                                ", expected " + std::to_string(cols_));
  }
  rows_.push_back(std::move(row));
}

F2Vector F2Matrix::apply(const F2Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("F2Matrix::apply dimension mismatch");
  F2Vector out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].dot(x)) out.set(i);
  }
  return out;
}

F2Matrix F2Matrix::transpose() const {
  std::vector<F2Vector> t(cols_, F2Vector(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (rows_[i].get(j)) t[j].set(i);
    }
  }
  return F2Matrix(rows_.size(), std::move(t));
}

// ---------------------------------------------------------------------------

bool F2Basis::insert(F2Vector v) {
  if (v.size() != dim_) throw std::invalid_argument("F2Basis dimension mismatch");
  if (by_lead_.empty()) by_lead_.resize(dim_);
  v = reduce(std::move(v));
  auto lead = v.leading();
  if (!lead) return false;
  by_lead_[*lead] = std::move(v);
  ++count_;
  return true;
}

F2Vector F2Basis::reduce(F2Vector v) const {
  if (v.size() != dim_) throw std::invalid_argument("F2Basis dimension mismatch");
  if (by_lead_.empty()) return v;
  for (std::size_t p = dim_; p-- > 0;) {
    if (by_lead_[p] && v.get(p)) v ^= *by_lead_[p];
  }
  return v;
}

std::vector<F2Vector> F2Basis::vectors() const {
  std::vector<F2Vector> out;
  for (const auto& b : by_lead_) {
    if (b) out.push_back(*b);
  }
  return out;
}

namespace {

// Reduced row echelon form; pivots[k] is the pivot column of row k.
struct Echelon {
  std::vector<F2Vector> rows;
  std::vector<std::size_t> pivots;
};

Echelon rref(std::vector<F2Vector> rows, std::size_t cols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

}  // namespace

std::size_t rank(const F2Matrix& m) {
  F2Basis b(m.cols());
  for (const auto& r : m.row_vectors()) b.insert(r);
  return b.rank();
}

std::vector<F2Vector> nullspace(const F2Matrix& m) {
  const auto e = rref(m.row_vectors(), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<F2Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    F2Vector v(m.cols());
    v.set(free);
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      if (e.rows[k].get(free)) v.set(e.pivots[k]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve: right-hand side has length " + std::to_string(b.size()) +
                                ", matrix has " + std::to_string(m.rows()) + " rows");
  }
  const std::size_t n = m.cols();
  std::vector<F2Vector> aug;
  aug.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    F2Vector row(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (m.row(i).get(j)) row.set(j);
    }
    if (b.get(i)) row.set(n);
    aug.push_back(std::move(row));
  }
  const auto e = rref(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;

  F2Vector x(n);
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    if (e.rows[k].get(n)) x.set(e.pivots[k]);
  }
  F2Basis kernel(n);
  for (auto& v : nullspace(m)) kernel.insert(std::move(v));
  return kernel.reduce(std::move(x));
}

}  // namespace steiner
