#pragma once

// Finite loops on {0..N-1} with identity 0.
//
// Two backings exist. A dense loop owns its Cayley table together with the
// left and right division tables. An extension loop is V x Z with
// (v1, z1)(v2, z2) = (v1 + v2, f(v1, v2) + z1 + z2) evaluated on demand from
// a cocycle f; it can be arbitrarily large but only supports
// multiplication. Analysis routines require the dense backing.
//
// Extension elements are indexed as (subset number) * 2^m + (z number), so
// (empty, 0) is 0 and the generator x_i is 2^(i-1+m).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "steiner/cocycle.hpp"
#include "steiner/f2.hpp"

namespace steiner {

using Element = std::uint64_t;
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kDenseCap = 4096;
inline constexpr int kNilpotencyCap = 20;

struct ExtElement {
  IndexSubset v;
  F2Vector z;

  bool operator==(const ExtElement&) const = default;
};

class FiniteLoop {
 public:
  // Validates identity and Latin-square laws; throws std::invalid_argument
  // naming the first offending cell.
  static FiniteLoop from_table(std::size_t order, std::vector<std::uint32_t> table);
  static FiniteLoop extension(Cocycle f);

  bool is_dense() const { return dense_ != nullptr; }
  // Order as an integer; throws for extension loops with n + m > 63.
  std::uint64_t order() const;
  std::size_t dense_order() const;  // throws unless dense
  Element identity() const { return 0; }

  Element mul(Element a, Element b) const;
  // x with a x = b.
  Element left_div(Element a, Element b) const;
  // y with y a = b.
  Element right_div(Element b, Element a) const;

  const std::vector<std::uint32_t>& table() const;

  // Extension structure, when the loop was built from a cocycle.
  const Cocycle* cocycle() const { return cocycle_.get(); }
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  Element encode(const ExtElement& e) const;
  ExtElement decode(Element e) const;

  // Generator labels, e.g. "x1" -> element, for display and evaluation.
  const std::vector<Element>& generators() const { return generators_; }
  void set_generators(std::vector<Element> gens) { generators_ = std::move(gens); }

  // Dense copy of an extension loop (order <= kDenseCap).
  FiniteLoop densified() const;

 private:
  struct Dense {
    std::size_t order = 0;
    std::vector<std::uint32_t> mul, ldiv, rdiv;
  };

  void require_dense(const char* what) const;

  std::shared_ptr<const Dense> dense_;
  std::shared_ptr<const Cocycle> cocycle_;
  std::vector<Element> generators_;
};

// Loop on V x F2^m from a valid cocycle; dense when 2^(n+m) <= kDenseCap.
FiniteLoop build_extension(const Cocycle& f);

// Elementary abelian 2-group of order 2^k (XOR on indices).
FiniteLoop elementary_abelian(int k);

struct LawWitness {
  std::string law;
  Element x = 0, y = 0, z = 0;

  std::string to_string() const;
};

// xy = yx, xx = e and x(xy) = y; nullopt when all hold.
std::optional<LawWitness> steiner_violation(const FiniteLoop& loop);
bool is_steiner(const FiniteLoop& loop);
std::optional<LawWitness> associativity_violation(const FiniteLoop& loop);
bool is_associative(const FiniteLoop& loop);
bool is_commutative(const FiniteLoop& loop);

// The w with (xy)z = (x(yz))w.
Element associator(const FiniteLoop& loop, Element x, Element y, Element z);

using ElementSet = std::vector<Element>;  // ascending

ElementSet center(const FiniteLoop& loop);
bool is_subloop(const FiniteLoop& loop, const ElementSet& h);
ElementSet generated_subloop(const FiniteLoop& loop, const ElementSet& gens);
bool is_normal_subloop(const FiniteLoop& loop, const ElementSet& h);
ElementSet normal_closure(const FiniteLoop& loop, const ElementSet& seed);
ElementSet associator_subloop(const FiniteLoop& loop);

struct Quotient {
  FiniteLoop loop;
  std::vector<std::uint32_t> projection;  // element -> coset index
  std::vector<ElementSet> cosets;         // ordered by least element
};

// Throws std::invalid_argument if h is not a normal subloop.
Quotient quotient(const FiniteLoop& loop, const ElementSet& h);

// Class of nilpotency; 0 for the trivial loop, nullopt if not nilpotent.
std::optional<int> nilpotency_class(const FiniteLoop& loop);

// Coordinates for an elementary abelian central subgroup.
struct CenterBasis {
  std::vector<Element> basis;  // greedy in index order
  std::vector<Element> elements_by_coords;  // coords number -> element

  Element element(const F2Vector& coords) const;
  std::size_t dimension() const { return basis.size(); }
};

// Throws std::invalid_argument unless the center is an elementary abelian
// 2-group.
CenterBasis center_basis(const FiniteLoop& loop);

struct CentralSubspace {
  std::size_t ambient = 0;
  std::vector<F2Vector> basis;  // reduced echelon, in center coordinates
  ElementSet elements;
};

// All k-dimensional subspaces of the center, ordered by element set.
std::vector<CentralSubspace> central_subspaces(const FiniteLoop& loop, std::size_t k);
CentralSubspace central_subspace_from_basis(const FiniteLoop& loop, const std::vector<F2Vector>& basis);

struct SearchOptions {
  unsigned jobs = 1;
};

// Irredundant generating set: greedy by index, then redundant members dropped.
std::vector<Element> minimal_generating_set(const FiniteLoop& loop);

bool is_isomorphism(const FiniteLoop& a, const FiniteLoop& b, const Permutation& map);

// The isomorphism a -> b whose images of minimal_generating_set(a) are
// lexicographically least, or nullopt.
std::optional<Permutation> find_isomorphism(const FiniteLoop& a, const FiniteLoop& b,
                                            const SearchOptions& opts = {});

inline constexpr std::size_t kAutomorphismOrderCap = 64;

// Every automorphism, ordered by generator images.
std::vector<Permutation> enumerate_automorphisms(const FiniteLoop& loop,
                                                 const SearchOptions& opts = {},
                                                 std::size_t order_cap = kAutomorphismOrderCap);

struct AutReport {
  std::uint64_t order = 0;
  std::vector<Permutation> generators;
};

AutReport automorphisms(const FiniteLoop& loop, const SearchOptions& opts = {},
                        std::size_t order_cap = kAutomorphismOrderCap);

// Greedy generating set for a permutation group given by all its elements.
std::vector<Permutation> group_generators(const std::vector<Permutation>& elements);

// Splits Aut(L) along L -> L/Z(L). Each automorphism is checked to be a
// central translation x_i -> x_i t_i followed by the automorphism sending
// every generator to the least element of its image coset.
struct AutFactorization {
  std::size_t kernel = 0;  // automorphisms inducing the identity on L/Z
  std::size_t image = 0;   // distinct automorphisms induced on L/Z
  bool decomposes = false;
  std::string failure;
};

AutFactorization factor_automorphisms(const FiniteLoop& loop, const std::vector<Permutation>& auts);

// For extensions L_f1, L_f2 of V by Z: the map (v, z) -> (v, z + g(v)) when
// f1 = f2 + delta(g), verified multiplicative; nullopt otherwise.
std::optional<Permutation> extension_equivalence(const Cocycle& f1, const Cocycle& f2);
Permutation equivalence_map(const Cochain& g);

// Free Steiner loop of class two on n generators: build_extension of the
// universal cocycle, generators x_i = ({i}, 0).
FiniteLoop free_nilpotent2(int n);

struct Unique16Report {
  std::size_t quotient_count = 0;
  std::vector<CentralSubspace> subspaces;
  std::vector<FiniteLoop> quotients;
  std::size_t isomorphisms_verified = 0;
  bool pairwise_isomorphic = false;
  std::size_t order = 0;
  std::size_t center_order = 0;
  std::size_t associator_subloop_order = 0;
  int nilpotency = 0;
  bool steiner = false;
  bool associative = true;
  FiniteLoop loop;  // canonical quotient
};

// Quotients of free_nilpotent2(3) by its 2-dimensional central subspaces.
// Throws std::runtime_error with the failing witness if a check fails.
Unique16Report unique16(const SearchOptions& opts = {});

// Loop table file (.tbl).
FiniteLoop read_loop_table(std::istream& in);
void write_loop_table(std::ostream& out, const FiniteLoop& loop);

}  // namespace steiner
