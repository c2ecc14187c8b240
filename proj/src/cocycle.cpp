#include "steiner/cocycle.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "steiner/error.hpp"

namespace steiner {

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::degenerate:
      return "degenerate";
    case PairClass::not_regular:
      return "not_regular";
    case PairClass::regular_not_strong:
      return "regular_not_strong";
    case PairClass::strongly_regular:
      return "strongly_regular";
  }
  return "?";
}

SubsetPair orient_pair(const IndexSubset& a, const IndexSubset& b) {
  if (a.size() > b.size() || (a.size() == b.size() && a.bits() <= b.bits())) return {a, b};
  return {b, a};
}

namespace {

// True when x sits above y in the line order.
bool above(const IndexSubset& x, const IndexSubset& y) {
  if (x.size() != y.size()) return x.size() > y.size();
  // Equal size: lexicographically smaller ascending member list is higher.
  // The first differing member decides; it is the lowest bit of x ^ y.
  const std::uint32_t diff = x.bits() ^ y.bits();
  if (!diff) return false;
  return (x.bits() & diff & (~diff + 1)) != 0;
}

void check_dims(int n) {
  if (n < 1 || n > kMaxEnumerate) {
    throw std::out_of_range("n must lie in 1.." + std::to_string(kMaxEnumerate));
  }
}

}  // namespace

IndexSubset line_top(const IndexSubset& a, const IndexSubset& b) {
  const IndexSubset c = a ^ b;
  if (a.is_empty() || b.is_empty() || c.is_empty()) {
    throw std::invalid_argument("line_top needs three non-empty members");
  }
  IndexSubset top = a;
  if (above(b, top)) top = b;
  if (above(c, top)) top = c;
  return top;
}

PairClass classify_pair(const IndexSubset& a, const IndexSubset& b) {
  if (a.n() != b.n()) throw std::invalid_argument("classify_pair: mismatched ambient sizes");
  if (a.is_empty() || b.is_empty() || a == b) return PairClass::degenerate;
  const auto [s, t] = orient_pair(a, b);
  if (line_top(s, t) != (s ^ t)) return PairClass::not_regular;
  if (t.size() == 1 && t.max() > s.max()) return PairClass::regular_not_strong;
  return PairClass::strongly_regular;
}

Orbit orbit_of(const IndexSubset& s, const IndexSubset& t) {
  const IndexSubset d = s ^ t;
  if (s.is_empty() || t.is_empty() || d.is_empty()) {
    throw std::invalid_argument("orbit_of: degenerate pair " + s.to_string() + ", " +
                                t.to_string());
  }
  Orbit o;
  o.pairs = {orient_pair(s, d), orient_pair(s, t), orient_pair(d, t)};
  std::size_t count = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto c = classify_pair(o.pairs[k].first, o.pairs[k].second);
    o.regular[k] = c == PairClass::regular_not_strong || c == PairClass::strongly_regular;
    if (o.regular[k]) {
      o.regular_index = k;
      ++count;
    }
  }
  if (count != 1) throw std::logic_error("orbit without a unique regular pair");
  return o;
}

namespace {

std::vector<SubsetPair> pairs_where(int n, bool strong_only) {
  check_dims(n);
  std::vector<SubsetPair> out;
  const std::uint32_t full = 1u << n;
  for (std::uint32_t a = 1; a < full; ++a) {
    for (std::uint32_t b = 1; b < a; ++b) {
      const auto c = classify_pair(IndexSubset(n, a), IndexSubset(n, b));
      if (c == PairClass::strongly_regular ||
          (!strong_only && c == PairClass::regular_not_strong)) {
        out.push_back(orient_pair(IndexSubset(n, a), IndexSubset(n, b)));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SubsetPair& x, const SubsetPair& y) {
    return std::pair(x.first.bits(), x.second.bits()) < std::pair(y.first.bits(), y.second.bits());
  });
  return out;
}

}  // namespace

std::vector<SubsetPair> strongly_regular_pairs(int n) { return pairs_where(n, true); }

std::vector<SubsetPair> regular_pairs(int n) { return pairs_where(n, false); }

std::uint64_t sr_count_formula(int n) {
  if (n < 1 || n > 31) throw std::out_of_range("sr_count_formula defined here for 1 <= n <= 31");
  const std::uint64_t p = std::uint64_t{1} << (2 * n - 1);
  return (p + 1) / 3 - 3 * (std::uint64_t{1} << (n - 1)) + static_cast<std::uint64_t>(n) + 1;
}

std::uint64_t regular_count_formula(int n) {
  if (n < 1 || n > 31) throw std::out_of_range("regular_count_formula defined for 1 <= n <= 31");
  return ((std::uint64_t{1} << n) - 1) * ((std::uint64_t{1} << (n - 1)) - 1) / 3;
}

// ---------------------------------------------------------------------------

Cochain::Cochain(int n, std::size_t m) : n_(n), m_(m) {
  if (n < 0 || n > kMaxEnumerate) throw std::out_of_range("cochain dimension out of range");
  values_.assign(std::size_t{1} << n, F2Vector(m));
}

const F2Vector& Cochain::operator()(const IndexSubset& s) const {
  if (s.n() != n_) throw std::invalid_argument("cochain: mismatched ambient size");
  return values_[s.bits()];
}

void Cochain::set(const IndexSubset& s, F2Vector value) {
  if (s.n() != n_) throw std::invalid_argument("cochain: mismatched ambient size");
  if (value.size() != m_) throw std::invalid_argument("cochain: value length mismatch");
  values_[s.bits()] = std::move(value);
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const F2Vector& v) { return v.is_zero(); });
}

// ---------------------------------------------------------------------------

Cocycle Cocycle::zero(int n, std::size_t m) {
  if (n < 0 || n > kMaxDenseCocycle) {
    throw std::out_of_range("dense cocycles need 0 <= n <= " + std::to_string(kMaxDenseCocycle));
  }
  Cocycle f(n, m);
  f.stride_ = (m + 63) / 64;
  const std::size_t N = std::size_t{1} << n;
  f.dense_.assign(N * (N + 1) / 2 * f.stride_, 0);
  return f;
}

Cocycle Cocycle::from_rule(int n, std::size_t m, Rule rule) {
  if (n < 0 || n > kMaxAmbient) throw std::out_of_range("cocycle dimension out of range");
  Cocycle f(n, m);
  f.rule_ = std::make_shared<const Rule>(std::move(rule));
  return f;
}

std::size_t Cocycle::slot(std::uint32_t a, std::uint32_t b) const {
  const std::size_t hi = std::max(a, b);
  const std::size_t lo = std::min(a, b);
  return (hi * (hi + 1) / 2 + lo) * stride_;
}

F2Vector Cocycle::at(std::uint32_t a, std::uint32_t b) const {
  if (rule_) {
    const std::uint32_t hi = std::max(a, b);
    const std::uint32_t lo = std::min(a, b);
    F2Vector v = (*rule_)(IndexSubset(n_, hi), IndexSubset(n_, lo));
    if (v.size() != m_) throw std::logic_error("cocycle rule returned a value of wrong length");
    return v;
  }
  F2Vector v(m_);
  const std::size_t base = slot(a, b);
  for (std::size_t w = 0; w < stride_; ++w) {
    for (std::uint64_t bits = dense_[base + w]; bits; bits &= bits - 1) {
      v.set(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
    }
  }
  return v;
}

std::uint64_t Cocycle::word(std::uint32_t a, std::uint32_t b) const {
  if (m_ > 64) throw std::logic_error("Cocycle::word needs m <= 64");
  if (rule_) return at(a, b).low_word();
  return stride_ ? dense_[slot(a, b)] : 0;
}

F2Vector Cocycle::operator()(const IndexSubset& a, const IndexSubset& b) const {
  if (a.n() != n_ || b.n() != n_) throw std::invalid_argument("cocycle: mismatched ambient size");
  return at(a.bits(), b.bits());
}

void Cocycle::set(const IndexSubset& a, const IndexSubset& b, const F2Vector& value) {
  if (rule_) throw std::logic_error("cannot assign into a rule-backed cocycle");
  if (a.n() != n_ || b.n() != n_) throw std::invalid_argument("cocycle: mismatched ambient size");
  if (value.size() != m_) throw std::invalid_argument("cocycle: value length mismatch");
  const std::size_t base = slot(a.bits(), b.bits());
  for (std::size_t w = 0; w < stride_; ++w) dense_[base + w] = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (value.get(i)) dense_[base + i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

Cocycle Cocycle::densified() const {
  if (!rule_) return *this;
  Cocycle d = zero(n_, m_);
  const std::uint32_t N = 1u << n_;
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b <= a; ++b) {
      d.set(IndexSubset(n_, a), IndexSubset(n_, b), at(a, b));
    }
  }
  return d;
}

bool Cocycle::is_zero() const {
  if (!rule_) {
    return std::all_of(dense_.begin(), dense_.end(), [](std::uint64_t w) { return w == 0; });
  }
  return densified().is_zero();
}

void Cocycle::check_compatible(const Cocycle& o) const {
  if (n_ != o.n_ || m_ != o.m_) {
    throw std::invalid_argument("cocycle dimension mismatch: (" + std::to_string(n_) + "," +
                                std::to_string(m_) + ") vs (" + std::to_string(o.n_) + "," +
                                std::to_string(o.m_) + ")");
  }
}

Cocycle Cocycle::operator+(const Cocycle& o) const {
  check_compatible(o);
  if (!rule_ && !o.rule_) {
    Cocycle r = *this;
    for (std::size_t i = 0; i < r.dense_.size(); ++i) r.dense_[i] ^= o.dense_[i];
    return r;
  }
  auto lhs = *this;
  auto rhs = o;
  return from_rule(n_, m_, [lhs, rhs](const IndexSubset& a, const IndexSubset& b) {
    return lhs(a, b) ^ rhs(a, b);
  });
}

bool Cocycle::operator==(const Cocycle& o) const {
  check_compatible(o);
  const Cocycle a = densified();
  const Cocycle b = o.densified();
  return a.dense_ == b.dense_;
}

// ---------------------------------------------------------------------------

std::string CocycleViolation::to_string() const {
  return law + " at (" + a.to_string() + ", " + b.to_string() + ")";
}

std::vector<CocycleViolation> validate_cocycle(const Cocycle& f, std::size_t sample_budget,
                                               std::uint64_t seed) {
  std::vector<CocycleViolation> out;
  const int n = f.n();
  auto check = [&](std::uint32_t a, std::uint32_t b) {
    const IndexSubset A(n, a), B(n, b);
    const F2Vector fab = f.at(a, b);
    if (a == 0 && !fab.is_zero()) out.push_back({"f(0,v)=0", A, B});
    if (a == b && !fab.is_zero()) out.push_back({"f(v,v)=0", A, B});
    if (f.at(a ^ b, b) != fab) out.push_back({"f(v1+v2,v2)=f(v1,v2)", A, B});
  };
  if (f.is_dense()) {
    const std::uint32_t N = 1u << n;
    for (std::uint32_t a = 0; a < N; ++a) {
      for (std::uint32_t b = 0; b < N; ++b) check(a, b);
    }
  } else {
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = n >= 32 ? 0xffffffffull : ((std::uint64_t{1} << n) - 1);
    for (std::size_t k = 0; k < sample_budget; ++k) {
      const auto a = static_cast<std::uint32_t>(rng() & mask);
      const auto b = static_cast<std::uint32_t>(rng() & mask);
      check(a, b);
      check(0, b);
      check(a, a);
    }
  }
  return out;
}

bool is_cocycle(const Cocycle& f) { return validate_cocycle(f).empty(); }

Cocycle coboundary(const Cochain& g) {
  const int n = g.n();
  if (!g.at(0).is_zero()) throw std::invalid_argument("coboundary: cochain must vanish at the empty set");
  if (n <= kMaxDenseCocycle) {
    Cocycle f = Cocycle::zero(n, g.m());
    const std::uint32_t N = 1u << n;
    for (std::uint32_t a = 0; a < N; ++a) {
      for (std::uint32_t b = 0; b <= a; ++b) {
        f.set(IndexSubset(n, a), IndexSubset(n, b), g.at(a ^ b) ^ g.at(a) ^ g.at(b));
      }
    }
    return f;
  }
  return Cocycle::from_rule(n, g.m(), [g](const IndexSubset& a, const IndexSubset& b) {
    return g(a ^ b) ^ g(a) ^ g(b);
  });
}

bool in_normalized_subspace(const Cocycle& f) {
  const int n = f.n();
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const IndexSubset S(n, s);
    for (int i = S.max() + 1; i <= n; ++i) {
      if (!f(S, IndexSubset::singleton(n, i)).is_zero()) return false;
    }
  }
  return true;
}

Decomposition decompose(const Cocycle& f) {
  if (!f.is_dense()) throw std::invalid_argument("decompose requires a dense cocycle");
  if (auto bad = validate_cocycle(f); !bad.empty()) {
    throw std::invalid_argument("decompose: not a cocycle: " + bad.front().to_string());
  }
  const int n = f.n();
  Cochain g(n, f.m());
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const IndexSubset S(n, s);
    const auto members = S.members();
    F2Vector acc(f.m());
    IndexSubset prefix = IndexSubset::empty(n);
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j >= 1) acc ^= f(prefix, IndexSubset::singleton(n, members[j]));
      prefix = prefix.with(members[j]);
    }
    g.set(S, std::move(acc));
  }
  Cocycle f0 = f + coboundary(g);
  if (!in_normalized_subspace(f0)) throw std::logic_error("decompose: f0 not normalized");
  return {std::move(f0), std::move(g)};
}

bool same_h2_class(const Cocycle& f1, const Cocycle& f2) {
  return decompose(f1.densified() + f2.densified()).normalized.is_zero();
}

std::optional<Cochain> coboundary_witness(const Cocycle& f) {
  auto d = decompose(f.densified());
  if (!d.normalized.is_zero()) return std::nullopt;
  return std::move(d.cochain);
}

// ---------------------------------------------------------------------------

std::size_t pairing_dimension(int n) {
  const std::size_t k = (std::size_t{1} << n) - 1;
  return k * (k - 1) / 2;
}

namespace {

// Coordinate of the unordered pair {a, b}, 0 < b < a.
std::size_t coord_index(std::uint32_t a, std::uint32_t b) {
  const std::size_t hi = std::max(a, b);
  const std::size_t lo = std::min(a, b);
  return (hi - 1) * (hi - 2) / 2 + (lo - 1);
}

void check_pairing_n(int n) {
  if (n < 1 || n > 6) throw std::out_of_range("pairing coordinates supported for 1 <= n <= 6");
}

}  // namespace

F2Vector pairing_coordinates(const Cocycle& f) {
  check_pairing_n(f.n());
  if (f.m() != 1) throw std::invalid_argument("pairing coordinates need m = 1");
  F2Vector c(pairing_dimension(f.n()));
  const std::uint32_t N = 1u << f.n();
  for (std::uint32_t a = 2; a < N; ++a) {
    for (std::uint32_t b = 1; b < a; ++b) {
      if (f.word(a, b) & 1u) c.set(coord_index(a, b));
    }
  }
  return c;
}

Cocycle pairing_from_coordinates(int n, const F2Vector& coords) {
  check_pairing_n(n);
  if (coords.size() != pairing_dimension(n)) throw std::invalid_argument("coordinate length mismatch");
  Cocycle f = Cocycle::zero(n, 1);
  const std::uint32_t N = 1u << n;
  const F2Vector one = F2Vector::unit(1, 0);
  for (std::uint32_t a = 2; a < N; ++a) {
    for (std::uint32_t b = 1; b < a; ++b) {
      if (coords.get(coord_index(a, b))) f.set(IndexSubset(n, a), IndexSubset(n, b), one);
    }
  }
  return f;
}

namespace {

// Rows encode f(a ^ b, b) + f(a, b) = 0 for distinct non-empty a, b.
F2Matrix cocycle_equations(int n) {
  const std::size_t dim = pairing_dimension(n);
  F2Matrix eq(dim);
  const std::uint32_t N = 1u << n;
  for (std::uint32_t a = 1; a < N; ++a) {
    for (std::uint32_t b = 1; b < N; ++b) {
      if (a == b) continue;
      F2Vector row(dim);
      row.flip(coord_index(a ^ b, b));
      row.flip(coord_index(a, b));
      if (!row.is_zero()) eq.push_row(std::move(row));
    }
  }
  return eq;
}

std::vector<Cocycle> to_cocycles(int n, const std::vector<F2Vector>& vs) {
  std::vector<Cocycle> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(pairing_from_coordinates(n, v));
  return out;
}

}  // namespace

std::vector<Cocycle> cocycle_space_basis(int n) {
  check_pairing_n(n);
  return to_cocycles(n, nullspace(cocycle_equations(n)));
}

std::vector<Cocycle> coboundary_space_basis(int n) {
  check_pairing_n(n);
  F2Basis basis(pairing_dimension(n));
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    Cochain g(n, 1);
    g.set(IndexSubset(n, s), F2Vector::unit(1, 0));
    basis.insert(pairing_coordinates(coboundary(g)));
  }
  return to_cocycles(n, basis.vectors());
}

std::vector<Cocycle> normalized_space_basis(int n) {
  check_pairing_n(n);
  F2Matrix eq = cocycle_equations(n);
  const std::size_t dim = pairing_dimension(n);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    for (int i = IndexSubset(n, s).max() + 1; i <= n; ++i) {
      const std::uint32_t t = 1u << (i - 1);
      eq.push_row(F2Vector::unit(dim, coord_index(s, t)));
    }
  }
  return to_cocycles(n, nullspace(eq));
}

std::optional<Cochain> solve_coboundary(const Cocycle& f) {
  const int n = f.n();
  if (n < 1 || n > 6) throw std::out_of_range("solve_coboundary supports 1 <= n <= 6");
  const Cocycle fd = f.densified();
  // Unknowns: g(s) for s = 1..2^n - 1, column s - 1.
  const std::uint32_t N = 1u << n;
  const std::size_t unknowns = N - 1;
  F2Matrix delta(unknowns);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b <= a; ++b) {
      F2Vector row(unknowns);
      for (std::uint32_t s : {a ^ b, a, b}) {
        if (s) row.flip(s - 1);
      }
      delta.push_row(std::move(row));
      cells.emplace_back(a, b);
    }
  }
  Cochain g(n, f.m());
  std::vector<F2Vector> values(N, F2Vector(f.m()));
  for (std::size_t bit = 0; bit < f.m(); ++bit) {
    F2Vector rhs(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (fd.at(cells[k].first, cells[k].second).get(bit)) rhs.set(k);
    }
    auto x = solve(delta, rhs);
    if (!x) return std::nullopt;
    for (std::uint32_t s = 1; s < N; ++s) {
      if (x->get(s - 1)) values[s].set(bit);
    }
  }
  for (std::uint32_t s = 1; s < N; ++s) g.set(IndexSubset(n, s), values[s]);
  return g;
}

Cocycle random_cocycle(int n, std::size_t m, std::mt19937_64& rng) {
  Cocycle f = Cocycle::zero(n, m);
  const std::uint32_t N = 1u << n;
  for (std::uint32_t a = 1; a < N; ++a) {
    for (std::uint32_t b = 1; b < a; ++b) {
      const std::uint32_t c = a ^ b;
      if (c < a) continue;  // visit each line once, via its two smallest members
      F2Vector v(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (rng() & 1u) v.set(i);
      }
      const IndexSubset A(n, a), B(n, b), C(n, c);
      f.set(A, B, v);
      f.set(A, C, v);
      f.set(B, C, v);
    }
  }
  return f;
}

Cocycle universal_cocycle(int n) {
  const auto pairs = strongly_regular_pairs(n);
  auto index = std::make_shared<std::unordered_map<std::uint64_t, std::size_t>>();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    index->emplace((std::uint64_t{pairs[k].first.bits()} << 32) | pairs[k].second.bits(), k);
  }
  const std::size_t d = pairs.size();
  return Cocycle::from_rule(n, d, [index, d](const IndexSubset& a, const IndexSubset& b) {
    F2Vector v(d);
    if (a.is_empty() || b.is_empty() || a == b) return v;
    const IndexSubset top = line_top(a, b);
    IndexSubset x = a, y = b;
    if (top == a) x = a ^ b;
    if (top == b) y = a ^ b;
    const auto [s, t] = orient_pair(x, y);
    auto it = index->find((std::uint64_t{s.bits()} << 32) | t.bits());
    if (it != index->end()) v.set(it->second);
    return v;
  });
}

F2Vector associator_formula(const Cocycle& f, const IndexSubset& s, const IndexSubset& mu,
                            const IndexSubset& t) {
  return f(s, mu) ^ f(mu, t) ^ f(s ^ mu, t) ^ f(s, mu ^ t);
}

std::vector<BasisTriple> theorem_basis(int n) {
  std::vector<BasisTriple> out;
  for (const auto& p : strongly_regular_pairs(n)) {
    const auto& [s, t] = p;
    const IndexSubset common = s & t;
    if (common.is_empty()) {
      const int i = (s | t).max();
      const bool in_s = s.contains(i);
      const IndexSubset& holder = in_s ? s : t;
      const IndexSubset& other = in_s ? t : s;
      out.push_back({IndexSubset::singleton(n, i), holder.without(i), other, p});
    } else {
      out.push_back({IndexSubset::singleton(n, common.max()), s, t, p});
    }
  }
  return out;
}

TheoremBasisReport verify_theorem_basis(int n) {
  if (n < 1 || n > 6) throw std::out_of_range("verify_theorem_basis supports 1 <= n <= 6");
  TheoremBasisReport r;
  r.n = n;
  r.dimension = sr_count_formula(n);
  const Cocycle f = universal_cocycle(n);
  F2Basis span(r.dimension);
  const auto triples = theorem_basis(n);
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& tr = triples[k];
    if (span.insert(associator_formula(f, tr.head, tr.middle, tr.tail))) r.independent.push_back(k);
  }
  r.rank = span.rank();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

IndexSubset parse_subset_field(int n, const std::string& field, std::size_t line) {
  const std::string f = trim(field);
  if (f == "-") return IndexSubset::empty(n);
  if (f.empty()) throw ParseError(line, "empty subset field (use '-' for the empty set)");
  std::vector<int> members;
  std::stringstream ss(f);
  std::string tok;
  int last = 0;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 3) {
      throw ParseError(line, "bad subset member '" + tok + "'");
    }
    const int i = std::stoi(tok);
    if (i < 1 || i > n) throw ParseError(line, "member " + tok + " outside 1.." + std::to_string(n));
    if (i <= last) throw ParseError(line, "subset members must be strictly ascending");
    members.push_back(i);
    last = i;
  }
  return IndexSubset::from_members(n, members);
}

std::string subset_field(const IndexSubset& s) {
  if (s.is_empty()) return "-";
  std::string out;
  for (int i : s.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

Cocycle read_cocycle(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  std::optional<Cocycle> f;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (!f) {
      int n = -1;
      long long m = -1;
      char tail = 0;
      if (std::sscanf(s.c_str(), "cocycle n=%d m=%lld %c", &n, &m, &tail) != 2) {
        throw ParseError(line, "expected header 'cocycle n=<n> m=<m>'");
      }
      if (n < 0 || n > kMaxDenseCocycle) {
        throw ParseError(line, "n must lie in 0.." + std::to_string(kMaxDenseCocycle));
      }
      if (m < 0 || m > 1 << 20) throw ParseError(line, "m out of range");
      f = Cocycle::zero(n, static_cast<std::size_t>(m));
      continue;
    }
    const auto p1 = s.find(';');
    const auto p2 = p1 == std::string::npos ? p1 : s.find(';', p1 + 1);
    if (p2 == std::string::npos || s.find(';', p2 + 1) != std::string::npos) {
      throw ParseError(line, "expected '<sigma>;<tau>;<bits>'");
    }
    const IndexSubset a = parse_subset_field(f->n(), s.substr(0, p1), line);
    const IndexSubset b = parse_subset_field(f->n(), s.substr(p1 + 1, p2 - p1 - 1), line);
    const std::string bits = trim(s.substr(p2 + 1));
    if (bits.size() != f->m() || bits.find_first_not_of("01") != std::string::npos) {
      throw ParseError(line, "value must be a bit string of length " + std::to_string(f->m()));
    }
    const std::pair<std::uint32_t, std::uint32_t> key = std::minmax(a.bits(), b.bits());
    if (auto [it, fresh] = seen.emplace(key, line); !fresh) {
      throw ParseError(line, "duplicate pair (first given on line " + std::to_string(it->second) + ")");
    }
    f->set(a, b, F2Vector::parse(bits));
  }
  if (!f) throw ParseError(0, "missing 'cocycle' header");
  return *std::move(f);
}

void write_cocycle(std::ostream& out, const Cocycle& f) {
  const Cocycle d = f.densified();
  out << "cocycle n=" << d.n() << " m=" << d.m() << "\n";
  const std::uint32_t N = 1u << d.n();
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b <= a; ++b) {
      const F2Vector v = d.at(a, b);
      if (v.is_zero()) continue;
      out << subset_field(IndexSubset(d.n(), a)) << ';' << subset_field(IndexSubset(d.n(), b))
          << ';' << v.to_string() << "\n";
    }
  }
}

}  // namespace steiner
