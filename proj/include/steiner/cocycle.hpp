#pragma once

// F2-valued cocycles on V = (P_n, symmetric difference) and the structure
// of the second cohomology of Steiner loops of class two.
//
// Pair classification. The three non-empty members of an orbit
// {s, t, s^t} form a line of PG(n-1, 2). Its "top" is the member of largest
// size; among members of equal size the one whose ascending member list is
// lexicographically smallest is on top. A pair is regular when its third
// member is the top of its line, so each line has exactly one regular pair.
// A regular pair, oriented larger-first (equal sizes: numerically smaller
// first), is strongly regular unless its second member is a singleton {i}
// with i > max of the first.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "steiner/f2.hpp"

namespace steiner {

inline constexpr int kMaxDenseCocycle = 8;
inline constexpr std::size_t kDefaultSampleBudget = 10000;
inline constexpr std::uint64_t kDefaultSeed = 20140601;

using SubsetPair = std::pair<IndexSubset, IndexSubset>;

enum class PairClass { degenerate, not_regular, regular_not_strong, strongly_regular };

const char* to_string(PairClass c);

// |first| >= |second|; equal sizes put the numerically smaller subset first.
SubsetPair orient_pair(const IndexSubset& a, const IndexSubset& b);

// Top member of the line through a, b (both non-empty and distinct).
IndexSubset line_top(const IndexSubset& a, const IndexSubset& b);

PairClass classify_pair(const IndexSubset& a, const IndexSubset& b);

struct Orbit {
  // (s, s^t), (s, t), (s^t, t), each oriented with orient_pair.
  std::array<SubsetPair, 3> pairs;
  std::array<bool, 3> regular{};
  std::size_t regular_index = 0;

  const SubsetPair& representative() const { return pairs[regular_index]; }
};

// Throws std::invalid_argument unless s, t and s^t are all non-empty.
Orbit orbit_of(const IndexSubset& s, const IndexSubset& t);

// Canonical order: ascending (first.bits, second.bits) of the oriented pair.
std::vector<SubsetPair> strongly_regular_pairs(int n);
std::vector<SubsetPair> regular_pairs(int n);

// Closed forms; exact for 1 <= n <= 31.
std::uint64_t sr_count_formula(int n);
std::uint64_t regular_count_formula(int n);

// g : V -> F2^m. g(empty) = 0 is required by coboundary(), not by the type.
class Cochain {
 public:
  Cochain(int n, std::size_t m);

  int n() const { return n_; }
  std::size_t m() const { return m_; }
  const F2Vector& operator()(const IndexSubset& s) const;
  const F2Vector& at(std::uint32_t bits) const { return values_.at(bits); }
  void set(const IndexSubset& s, F2Vector value);
  bool is_zero() const;

  bool operator==(const Cochain&) const = default;

 private:
  int n_;
  std::size_t m_;
  std::vector<F2Vector> values_;
};

// Symmetric pairing f : V x V -> F2^m. Symmetry holds by construction: a
// dense table stores each unordered pair once, a rule is always queried
// with the numerically larger subset first. The remaining cocycle laws are
// data, checked by validate_cocycle().
class Cocycle {
 public:
  using Rule = std::function<F2Vector(const IndexSubset& hi, const IndexSubset& lo)>;

  // All-zero dense pairing, n <= kMaxDenseCocycle.
  static Cocycle zero(int n, std::size_t m);
  static Cocycle from_rule(int n, std::size_t m, Rule rule);

  int n() const { return n_; }
  std::size_t m() const { return m_; }
  bool is_dense() const { return rule_ == nullptr; }

  F2Vector operator()(const IndexSubset& a, const IndexSubset& b) const;
  F2Vector at(std::uint32_t a, std::uint32_t b) const;
  // Low 64 bits of f(a, b) as an integer (dense only, m <= 64).
  std::uint64_t word(std::uint32_t a, std::uint32_t b) const;
  void set(const IndexSubset& a, const IndexSubset& b, const F2Vector& value);

  // Dense copy; n <= kMaxDenseCocycle.
  Cocycle densified() const;
  bool is_zero() const;

  Cocycle operator+(const Cocycle& o) const;
  // Pointwise equality (densifies rule-backed operands).
  bool operator==(const Cocycle& o) const;

 private:
  Cocycle(int n, std::size_t m) : n_(n), m_(m) {}
  std::size_t slot(std::uint32_t a, std::uint32_t b) const;
  void check_compatible(const Cocycle& o) const;

  int n_ = 0;
  std::size_t m_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> dense_;
  std::shared_ptr<const Rule> rule_;
};

struct CocycleViolation {
  std::string law;
  IndexSubset a;
  IndexSubset b;

  std::string to_string() const;
};

// Exhaustive for dense pairings; rule-backed ones are checked on
// sample_budget seeded random pairs. One entry per failing (law, pair).
std::vector<CocycleViolation> validate_cocycle(const Cocycle& f,
                                               std::size_t sample_budget = kDefaultSampleBudget,
                                               std::uint64_t seed = kDefaultSeed);
bool is_cocycle(const Cocycle& f);

// delta(g)(a, b) = g(a + b) + g(a) + g(b). Throws if g(empty) != 0.
Cocycle coboundary(const Cochain& g);

// f(s, {i}) = 0 whenever i > max(s).
bool in_normalized_subspace(const Cocycle& f);

struct Decomposition {
  Cocycle normalized;  // f0
  Cochain cochain;     // g with f = f0 + delta(g)
};

// Splits a valid dense cocycle as f = f0 + delta(g) with f0 normalized,
// using g(s) = sum over s = (i1 < ... < ik), 2 <= j <= k, of
// f({i1..i(j-1)}, {ij}).
Decomposition decompose(const Cocycle& f);

bool same_h2_class(const Cocycle& f1, const Cocycle& f2);

// A g with delta(g) = f, if one exists.
std::optional<Cochain> coboundary_witness(const Cocycle& f);

// Independent route: solves the linear system delta(g) = f coordinatewise.
std::optional<Cochain> solve_coboundary(const Cocycle& f);

// Coordinates of F2-valued (m = 1) pairings: one per unordered pair of
// distinct non-empty subsets, in ascending (hi, lo) order.
std::size_t pairing_dimension(int n);
F2Vector pairing_coordinates(const Cocycle& f);
Cocycle pairing_from_coordinates(int n, const F2Vector& coords);

// Bases (m = 1) computed by linear algebra over the pairing coordinates.
std::vector<Cocycle> cocycle_space_basis(int n);
std::vector<Cocycle> coboundary_space_basis(int n);
std::vector<Cocycle> normalized_space_basis(int n);

// Value constant on each line, drawn uniformly: a uniform element of Z^2.
Cocycle random_cocycle(int n, std::size_t m, std::mt19937_64& rng);

// Rule-backed cocycle into F2^d, d = sr_count_formula(n): the unit vector of
// the line's strongly regular pair, zero on all other lines.
Cocycle universal_cocycle(int n);

F2Vector associator_formula(const Cocycle& f, const IndexSubset& s, const IndexSubset& mu,
                            const IndexSubset& t);

struct BasisTriple {
  IndexSubset head;  // singleton {i}
  IndexSubset middle;
  IndexSubset tail;
  SubsetPair source;
};

// One triple per strongly regular pair (s, t). Disjoint pairs give
// ({i}, r \ {i}, other) with i = max(s | t) and r the member holding i;
// overlapping pairs give ({i}, s, t) with i = max(s & t).
std::vector<BasisTriple> theorem_basis(int n);

struct TheoremBasisReport {
  int n = 0;
  std::size_t dimension = 0;  // sr_count_formula(n)
  std::size_t rank = 0;
  std::vector<std::size_t> independent;  // indices into theorem_basis(n)

  bool passed() const { return rank == dimension; }
  std::size_t deficit() const { return dimension - rank; }
};

// Rank of the universal associators on theorem_basis(n); 1 <= n <= 6.
TheoremBasisReport verify_theorem_basis(int n);

// Cocycle file (.cyc).
Cocycle read_cocycle(std::istream& in);
void write_cocycle(std::ostream& out, const Cocycle& f);

}  // namespace steiner
