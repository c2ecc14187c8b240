#include "steiner/loop.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "steiner/error.hpp"

namespace steiner {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

std::string cell(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : p) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

FiniteLoop FiniteLoop::from_table(std::size_t order, std::vector<std::uint32_t> table) {
  if (order == 0) throw std::invalid_argument("a loop needs at least one element");
  if (order > kDenseCap) {
    throw std::invalid_argument("order " + std::to_string(order) + " exceeds the dense cap " +
                                std::to_string(kDenseCap));
  }
  const std::size_t N = order;
  if (table.size() != N * N) throw std::invalid_argument("table size is not order^2");
  for (std::size_t i = 0; i < N * N; ++i) {
    if (table[i] >= N) {
      throw std::invalid_argument("entry " + std::to_string(table[i]) + " at " + cell(i / N, i % N) +
                                  " is not an element");
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    if (table[x] != x) throw std::invalid_argument("0 is not a left identity at " + cell(0, x));
    if (table[x * N] != x) throw std::invalid_argument("0 is not a right identity at " + cell(x, 0));
  }
  auto d = std::make_shared<Dense>();
  d->order = N;
  d->ldiv.assign(N * N, kUnset);
  d->rdiv.assign(N * N, kUnset);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t x = 0; x < N; ++x) {
      const std::uint32_t b = table[a * N + x];
      if (d->ldiv[a * N + b] != kUnset) {
        throw std::invalid_argument("row " + std::to_string(a) + " repeats " + std::to_string(b) +
                                    " at " + cell(a, x));
      }
      d->ldiv[a * N + b] = static_cast<std::uint32_t>(x);
      const std::uint32_t c = table[x * N + a];
      if (d->rdiv[a * N + c] != kUnset) {
        throw std::invalid_argument("column " + std::to_string(a) + " repeats " +
                                    std::to_string(c) + " at " + cell(x, a));
      }
      d->rdiv[a * N + c] = static_cast<std::uint32_t>(x);
    }
  }
  d->mul = std::move(table);
  FiniteLoop l;
  l.dense_ = std::move(d);
  return l;
}

FiniteLoop FiniteLoop::extension(Cocycle f) {
  FiniteLoop l;
  l.cocycle_ = std::make_shared<const Cocycle>(std::move(f));
  return l;
}

void FiniteLoop::require_dense(const char* what) const {
  if (!dense_) throw std::logic_error(std::string(what) + " requires a dense loop");
}

std::uint64_t FiniteLoop::order() const {
  if (dense_) return dense_->order;
  const std::size_t bits = static_cast<std::size_t>(cocycle_->n()) + cocycle_->m();
  if (bits > 63) throw std::overflow_error("loop order 2^" + std::to_string(bits) + " overflows");
  return std::uint64_t{1} << bits;
}

std::size_t FiniteLoop::dense_order() const {
  require_dense("dense_order");
  return dense_->order;
}

const std::vector<std::uint32_t>& FiniteLoop::table() const {
  require_dense("table");
  return dense_->mul;
}

ExtElement FiniteLoop::mul(const ExtElement& a, const ExtElement& b) const {
  if (!cocycle_) throw std::logic_error("not an extension loop");
  return {a.v ^ b.v, (*cocycle_)(a.v, b.v) ^ a.z ^ b.z};
}

Element FiniteLoop::encode(const ExtElement& e) const {
  if (!cocycle_) throw std::logic_error("not an extension loop");
  const std::size_t m = cocycle_->m();
  if (cocycle_->n() + m > 63) throw std::overflow_error("extension too large to index");
  return (Element{e.v.bits()} << m) | e.z.low_word();
}

ExtElement FiniteLoop::decode(Element e) const {
  if (!cocycle_) throw std::logic_error("not an extension loop");
  const std::size_t m = cocycle_->m();
  if (cocycle_->n() + m > 63) throw std::overflow_error("extension too large to index");
  if (e >= order()) throw std::out_of_range("element out of range");
  return {IndexSubset(cocycle_->n(), static_cast<std::uint32_t>(e >> m)),
          F2Vector::from_bits(m, m ? e & ((Element{1} << m) - 1) : 0)};
}

Element FiniteLoop::mul(Element a, Element b) const {
  if (dense_) {
    const std::size_t N = dense_->order;
    if (a >= N || b >= N) throw std::out_of_range("element out of range");
    return dense_->mul[a * N + b];
  }
  return encode(mul(decode(a), decode(b)));
}

Element FiniteLoop::left_div(Element a, Element b) const {
  if (dense_) {
    const std::size_t N = dense_->order;
    if (a >= N || b >= N) throw std::out_of_range("element out of range");
    return dense_->ldiv[a * N + b];
  }
  const ExtElement A = decode(a), B = decode(b);
  const IndexSubset v = A.v ^ B.v;
  return encode({v, B.z ^ A.z ^ (*cocycle_)(A.v, v)});
}

Element FiniteLoop::right_div(Element b, Element a) const {
  if (dense_) {
    const std::size_t N = dense_->order;
    if (a >= N || b >= N) throw std::out_of_range("element out of range");
    return dense_->rdiv[a * N + b];
  }
  const ExtElement A = decode(a), B = decode(b);
  const IndexSubset v = A.v ^ B.v;
  return encode({v, B.z ^ A.z ^ (*cocycle_)(v, A.v)});
}

FiniteLoop FiniteLoop::densified() const {
  if (dense_) return *this;
  const std::uint64_t N = order();
  if (N > kDenseCap) throw std::length_error("extension of order " + std::to_string(N) + " exceeds the dense cap");
  const Cocycle f = cocycle_->densified();
  const std::size_t m = f.m();
  const std::uint32_t zmask = static_cast<std::uint32_t>((Element{1} << m) - 1);
  std::vector<std::uint32_t> t(N * N);
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b < N; ++b) {
      const std::uint32_t va = a >> m, vb = b >> m;
      const auto z = static_cast<std::uint32_t>(f.word(va, vb)) ^ (a & zmask) ^ (b & zmask);
      t[a * N + b] = ((va ^ vb) << m) | z;
    }
  }
  FiniteLoop l = from_table(N, std::move(t));
  l.cocycle_ = std::make_shared<const Cocycle>(f);
  l.generators_ = generators_;
  return l;
}

FiniteLoop build_extension(const Cocycle& f) {
  const bool small = f.n() + f.m() <= 12 && (std::size_t{1} << (f.n() + f.m())) <= kDenseCap;
  const Cocycle g = small ? f.densified() : f;
  if (auto bad = validate_cocycle(g); !bad.empty()) {
    throw std::invalid_argument("build_extension: not a cocycle: " + bad.front().to_string());
  }
  FiniteLoop l = FiniteLoop::extension(g);
  if (f.n() + f.m() <= 63) {
    std::vector<Element> gens;
    for (int i = 1; i <= f.n(); ++i) {
      gens.push_back(l.encode({IndexSubset::singleton(f.n(), i), F2Vector(f.m())}));
    }
    l.set_generators(std::move(gens));
  }
  return small ? l.densified() : l;
}

FiniteLoop elementary_abelian(int k) {
  if (k < 0 || (std::size_t{1} << k) > kDenseCap) throw std::out_of_range("elementary_abelian: k out of range");
  const std::uint32_t N = 1u << k;
  std::vector<std::uint32_t> t(std::size_t{N} * N);
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b < N; ++b) t[a * N + b] = a ^ b;
  }
  FiniteLoop l = FiniteLoop::from_table(N, std::move(t));
  std::vector<Element> gens;
  for (int i = 0; i < k; ++i) gens.push_back(Element{1} << i);
  l.set_generators(std::move(gens));
  return l;
}

// ---------------------------------------------------------------------------

std::string LawWitness::to_string() const {
  return law + " fails at x=" + std::to_string(x) + " y=" + std::to_string(y) +
         (law == "associativity" ? " z=" + std::to_string(z) : "");
}

std::optional<LawWitness> steiner_violation(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  for (Element x = 0; x < N; ++x) {
    if (loop.mul(x, x) != 0) return LawWitness{"xx=e", x, x};
    for (Element y = 0; y < N; ++y) {
      const Element xy = loop.mul(x, y);
      if (xy != loop.mul(y, x)) return LawWitness{"xy=yx", x, y};
      if (loop.mul(x, xy) != y) return LawWitness{"x(xy)=y", x, y};
    }
  }
  return std::nullopt;
}

bool is_steiner(const FiniteLoop& loop) { return !steiner_violation(loop); }

std::optional<LawWitness> associativity_violation(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  for (Element x = 0; x < N; ++x) {
    for (Element y = 0; y < N; ++y) {
      const Element xy = loop.mul(x, y);
      for (Element z = 0; z < N; ++z) {
        if (loop.mul(xy, z) != loop.mul(x, loop.mul(y, z))) {
          return LawWitness{"associativity", x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_associative(const FiniteLoop& loop) { return !associativity_violation(loop); }

bool is_commutative(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  for (Element x = 0; x < N; ++x) {
    for (Element y = x + 1; y < N; ++y) {
      if (loop.mul(x, y) != loop.mul(y, x)) return false;
    }
  }
  return true;
}

Element associator(const FiniteLoop& loop, Element x, Element y, Element z) {
  return loop.left_div(loop.mul(x, loop.mul(y, z)), loop.mul(loop.mul(x, y), z));
}

ElementSet center(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  ElementSet out;
  for (Element a = 0; a < N; ++a) {
    bool central = true;
    for (Element x = 0; x < N && central; ++x) central = loop.mul(a, x) == loop.mul(x, a);
    for (Element x = 0; x < N && central; ++x) {
      const Element ax = loop.mul(a, x), xa = loop.mul(x, a);
      for (Element y = 0; y < N; ++y) {
        const Element xy = loop.mul(x, y);
        if (loop.mul(ax, y) != loop.mul(a, xy) || loop.mul(xa, y) != loop.mul(x, loop.mul(a, y)) ||
            loop.mul(xy, a) != loop.mul(x, loop.mul(y, a))) {
          central = false;
          break;
        }
      }
    }
    if (central) out.push_back(a);
  }
  return out;
}

bool is_subloop(const FiniteLoop& loop, const ElementSet& h) {
  const std::size_t N = loop.dense_order();
  std::vector<bool> in(N, false);
  for (auto e : h) {
    if (e >= N) return false;
    in[e] = true;
  }
  if (!in[0]) return false;
  for (auto a : h) {
    for (auto b : h) {
      if (!in[loop.mul(a, b)]) return false;
    }
  }
  return true;
}

ElementSet generated_subloop(const FiniteLoop& loop, const ElementSet& gens) {
  const std::size_t N = loop.dense_order();
  std::vector<bool> in(N, false);
  std::vector<Element> list{0};
  in[0] = true;
  for (auto g : gens) {
    if (g >= N) throw std::out_of_range("generator out of range");
    if (!in[g]) {
      in[g] = true;
      list.push_back(g);
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Element p : {loop.mul(list[i], list[j]), loop.mul(list[j], list[i])}) {
        if (!in[p]) {
          in[p] = true;
          list.push_back(p);
        }
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

namespace {

// Class of each element under x ~ y iff y in xH, or nullopt when the left
// cosets do not partition the loop into a congruence with class H at 0.
std::optional<std::vector<std::uint32_t>> coset_congruence(const FiniteLoop& loop,
                                                          const ElementSet& h) {
  const std::size_t N = loop.dense_order();
  if (!is_subloop(loop, h)) return std::nullopt;
  std::vector<std::uint32_t> cls(N, kUnset);
  std::uint32_t next = 0;
  for (Element x = 0; x < N; ++x) {
    if (cls[x] != kUnset) continue;
    std::vector<bool> left(N, false);
    for (auto e : h) {
      const Element y = loop.mul(x, e);
      if (cls[y] != kUnset) return std::nullopt;
      cls[y] = next;
      left[y] = true;
    }
    for (auto e : h) {
      if (!left[loop.mul(e, x)]) return std::nullopt;
    }
    ++next;
  }
  std::vector<std::uint32_t> prod(std::size_t{next} * next, kUnset);
  for (Element a = 0; a < N; ++a) {
    for (Element b = 0; b < N; ++b) {
      auto& slot = prod[std::size_t{cls[a]} * next + cls[b]];
      const std::uint32_t c = cls[loop.mul(a, b)];
      if (slot == kUnset) {
        slot = c;
      } else if (slot != c) {
        return std::nullopt;
      }
    }
  }
  return cls;
}

}  // namespace

bool is_normal_subloop(const FiniteLoop& loop, const ElementSet& h) {
  return coset_congruence(loop, h).has_value();
}

ElementSet normal_closure(const FiniteLoop& loop, const ElementSet& seed) {
  const std::size_t N = loop.dense_order();
  ElementSet h = generated_subloop(loop, seed);
  for (;;) {
    std::vector<bool> in(N, false);
    for (auto e : h) in[e] = true;
    ElementSet extra;
    auto adjoin = [&](Element w) {
      if (!in[w]) {
        in[w] = true;
        extra.push_back(w);
      }
    };
    for (Element x = 0; x < N; ++x) {
      for (auto e : h) {
        adjoin(loop.right_div(loop.mul(x, e), x));  // xh = w x
      }
      for (Element y = 0; y < N; ++y) {
        const Element xy = loop.mul(x, y);
        for (auto e : h) {
          adjoin(loop.left_div(xy, loop.mul(x, loop.mul(y, e))));   // x(yh) = (xy)w
          adjoin(loop.right_div(loop.mul(loop.mul(e, x), y), xy));  // (hx)y = w(xy)
        }
      }
    }
    if (extra.empty()) return h;
    extra.insert(extra.end(), h.begin(), h.end());
    h = generated_subloop(loop, extra);
  }
}

ElementSet associator_subloop(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  std::vector<bool> seen(N, false);
  ElementSet assocs;
  for (Element x = 0; x < N; ++x) {
    for (Element y = 0; y < N; ++y) {
      for (Element z = 0; z < N; ++z) {
        const Element w = associator(loop, x, y, z);
        if (!seen[w]) {
          seen[w] = true;
          assocs.push_back(w);
        }
      }
    }
  }
  return normal_closure(loop, assocs);
}

Quotient quotient(const FiniteLoop& loop, const ElementSet& h) {
  const std::size_t N = loop.dense_order();
  auto cls = coset_congruence(loop, h);
  if (!cls) throw std::invalid_argument("quotient: not a normal subloop");
  std::uint32_t count = 0;
  for (auto c : *cls) count = std::max(count, c + 1);
  Quotient q;
  q.cosets.resize(count);
  for (Element x = 0; x < N; ++x) q.cosets[(*cls)[x]].push_back(x);
  std::vector<std::uint32_t> t(std::size_t{count} * count);
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      t[std::size_t{a} * count + b] = (*cls)[loop.mul(q.cosets[a].front(), q.cosets[b].front())];
    }
  }
  q.loop = FiniteLoop::from_table(count, std::move(t));
  std::vector<Element> gens;
  for (auto g : loop.generators()) {
    const Element image = (*cls)[g];
    if (std::find(gens.begin(), gens.end(), image) == gens.end()) gens.push_back(image);
  }
  q.loop.set_generators(std::move(gens));
  q.projection = std::move(*cls);
  return q;
}

std::optional<int> nilpotency_class(const FiniteLoop& loop) {
  FiniteLoop cur = loop;
  for (int step = 0; step <= kNilpotencyCap; ++step) {
    if (cur.dense_order() == 1) return step;
    const ElementSet z = center(cur);
    if (z.size() == 1) return std::nullopt;
    cur = quotient(cur, z).loop;
  }
  throw std::runtime_error("nilpotency iteration exceeded its cap");
}

// ---------------------------------------------------------------------------

Element CenterBasis::element(const F2Vector& coords) const {
  if (coords.size() != basis.size()) throw std::invalid_argument("coordinate length mismatch");
  return elements_by_coords[coords.low_word()];
}

CenterBasis center_basis(const FiniteLoop& loop) {
  const ElementSet z = center(loop);
  for (auto e : z) {
    if (loop.mul(e, e) != 0) {
      throw std::invalid_argument("center is not elementary abelian: element " + std::to_string(e) +
                                  " does not square to the identity");
    }
  }
  CenterBasis cb;
  cb.elements_by_coords = {0};
  for (auto e : z) {
    if (std::find(cb.elements_by_coords.begin(), cb.elements_by_coords.end(), e) !=
        cb.elements_by_coords.end()) {
      continue;
    }
    cb.basis.push_back(e);
    const std::size_t half = cb.elements_by_coords.size();
    for (std::size_t c = 0; c < half; ++c) {
      cb.elements_by_coords.push_back(loop.mul(cb.elements_by_coords[c], e));
    }
  }
  if (cb.elements_by_coords.size() != z.size()) throw std::logic_error("center basis size mismatch");
  return cb;
}

namespace {

CentralSubspace make_subspace(const CenterBasis& cb, const std::vector<F2Vector>& basis) {
  const std::size_t d = cb.dimension();
  F2Basis echelon(d);
  for (const auto& v : basis) {
    if (v.size() != d) throw std::invalid_argument("subspace vector has wrong length");
    if (!echelon.insert(v)) throw std::invalid_argument("subspace basis is not independent");
  }
  CentralSubspace s;
  s.ambient = d;
  // Fully reduced echelon form, ascending by leading position.
  auto rows = echelon.vectors();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i != j && rows[i].get(*rows[j].leading())) rows[i] ^= rows[j];
    }
  }
  s.basis = rows;
  const std::size_t k = rows.size();
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
    F2Vector v(d);
    for (std::size_t i = 0; i < k; ++i) {
      if ((c >> i) & 1u) v ^= rows[i];
    }
    s.elements.push_back(cb.element(v));
  }
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

}  // namespace

std::vector<CentralSubspace> central_subspaces(const FiniteLoop& loop, std::size_t k) {
  const CenterBasis cb = center_basis(loop);
  const std::size_t d = cb.dimension();
  if (k > d) {
    throw std::invalid_argument("central_subspaces: center has dimension " + std::to_string(d) +
                                " < " + std::to_string(k));
  }
  if (d > 16) throw std::length_error("central_subspaces: center too large to enumerate");
  // Walk all k-subsets of nonzero vectors? Too many; instead enumerate
  // echelon forms: choose leading positions, then fill lower free slots.
  std::vector<CentralSubspace> out;
  std::vector<std::size_t> leads(k);
  auto emit_for_leads = [&]() {
    std::vector<std::size_t> slots;  // (row, position) free cells
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t p = 0; p < leads[r]; ++p) {
        if (std::find(leads.begin(), leads.end(), p) == leads.end()) free_cells.emplace_back(r, p);
      }
    }
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << free_cells.size()); ++fill) {
      std::vector<F2Vector> rows(k, F2Vector(d));
      for (std::size_t r = 0; r < k; ++r) rows[r].set(leads[r]);
      for (std::size_t c = 0; c < free_cells.size(); ++c) {
        if ((fill >> c) & 1u) rows[free_cells[c].first].set(free_cells[c].second);
      }
      out.push_back(make_subspace(cb, rows));
    }
  };
  auto choose = [&](auto&& self, std::size_t r, std::size_t from) -> void {
    if (r == k) {
      emit_for_leads();
      return;
    }
    for (std::size_t p = from; p < d; ++p) {
      leads[r] = p;
      self(self, r + 1, p + 1);
    }
  };
  choose(choose, 0, 0);
  std::sort(out.begin(), out.end(),
            [](const CentralSubspace& a, const CentralSubspace& b) { return a.elements < b.elements; });
  return out;
}

CentralSubspace central_subspace_from_basis(const FiniteLoop& loop,
                                            const std::vector<F2Vector>& basis) {
  return make_subspace(center_basis(loop), basis);
}

// ---------------------------------------------------------------------------

std::vector<Element> minimal_generating_set(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  std::vector<Element> gens;
  std::vector<bool> covered(N, false);
  covered[0] = true;
  for (Element x = 0; x < N; ++x) {
    if (covered[x]) continue;
    gens.push_back(x);
    for (auto e : generated_subloop(loop, gens)) covered[e] = true;
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Element> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (generated_subloop(loop, rest).size() == N) {
      gens = std::move(rest);
    } else {
      ++i;
    }
  }
  return gens;
}

bool is_isomorphism(const FiniteLoop& a, const FiniteLoop& b, const Permutation& map) {
  const std::size_t N = a.dense_order();
  if (b.dense_order() != N || map.size() != N) return false;
  std::vector<bool> hit(N, false);
  for (auto y : map) {
    if (y >= N || hit[y]) return false;
    hit[y] = true;
  }
  for (Element x = 0; x < N; ++x) {
    for (Element y = 0; y < N; ++y) {
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
    }
  }
  return true;
}

namespace {

// Per-element isomorphism invariants, coded so that equal codes across the
// two loops mean equal invariant tuples.
using Invariant = std::tuple<bool, bool, std::size_t, std::size_t, std::size_t, std::size_t>;

std::vector<Invariant> invariants(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  std::vector<bool> central(N, false), assoc(N, false);
  for (auto e : center(loop)) central[e] = true;
  if (N <= 512) {
    for (auto e : associator_subloop(loop)) assoc[e] = true;
  }
  std::vector<Invariant> out(N);
  for (Element x = 0; x < N; ++x) {
    std::size_t commute = 0, left_inv = 0, left_alt = 0, right_inv = 0;
    const Element xx = loop.mul(x, x);
    for (Element y = 0; y < N; ++y) {
      const Element xy = loop.mul(x, y);
      commute += xy == loop.mul(y, x);
      left_inv += loop.mul(x, xy) == y;
      left_alt += loop.mul(xx, y) == loop.mul(x, xy);
      right_inv += loop.mul(loop.mul(y, x), x) == y;
    }
    out[x] = {central[x], assoc[x], commute, left_inv, left_alt, right_inv};
  }
  return out;
}

class MapSearch {
 public:
  MapSearch(const FiniteLoop& a, const FiniteLoop& b, const std::vector<Element>& gens,
            const std::vector<std::uint32_t>& code_a, const std::vector<std::uint32_t>& code_b)
      : a_(a), b_(b), n_(a.dense_order()), gens_(gens), code_a_(code_a), code_b_(code_b),
        phi_(n_, kUnset), inv_(n_, kUnset) {}

  // Maps 0 -> 0 and closes; false if impossible.
  bool start() { return assign(0, 0) && close(0); }

  // Candidate images of the next unmapped generator from level k on.
  std::size_t next_level(std::size_t k) const {
    while (k < gens_.size() && phi_[gens_[k]] != kUnset) ++k;
    return k;
  }

  std::vector<std::uint32_t> candidates(std::size_t k) const {
    std::vector<std::uint32_t> c;
    const Element g = gens_[k];
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (inv_[y] == kUnset && code_b_[y] == code_a_[g]) c.push_back(y);
    }
    return c;
  }

  bool try_assign(std::size_t k, std::uint32_t y) {
    const std::size_t mark = trail_.size();
    if (assign(gens_[k], y) && close(mark)) return true;
    undo(mark);
    return false;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto x = trail_.back();
      trail_.pop_back();
      inv_[phi_[x]] = kUnset;
      phi_[x] = kUnset;
    }
  }

  // Depth-first over generator images; visit(phi) returns false to stop.
  template <typename Visit>
  bool search(std::size_t k, Visit&& visit) {
    k = next_level(k);
    if (k == gens_.size()) {
      if (trail_.size() != n_) throw std::logic_error("generators do not generate the loop");
      return visit(phi_);
    }
    for (auto y : candidates(k)) {
      const std::size_t m = mark();
      if (try_assign(k, y)) {
        if (!search(k + 1, visit)) {
          undo(m);
          return false;
        }
        undo(m);
      }
    }
    return true;
  }

 private:
  bool assign(Element x, std::uint32_t y) {
    if (phi_[x] != kUnset) return phi_[x] == y;
    if (inv_[y] != kUnset || code_a_[x] != code_b_[y]) return false;
    phi_[x] = y;
    inv_[y] = static_cast<std::uint32_t>(x);
    trail_.push_back(static_cast<std::uint32_t>(x));
    return true;
  }

  // Extends phi multiplicatively over every pair involving elements mapped
  // from trail position `from` on.
  bool close(std::size_t from) {
    for (std::size_t i = from; i < trail_.size(); ++i) {
      const std::uint32_t u = trail_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const std::uint32_t v = trail_[j];
        if (!assign(a_.mul(u, v), static_cast<std::uint32_t>(b_.mul(phi_[u], phi_[v])))) return false;
        if (!assign(a_.mul(v, u), static_cast<std::uint32_t>(b_.mul(phi_[v], phi_[u])))) return false;
      }
    }
    return true;
  }

  const FiniteLoop& a_;
  const FiniteLoop& b_;
  std::size_t n_;
  const std::vector<Element>& gens_;
  const std::vector<std::uint32_t>& code_a_;
  const std::vector<std::uint32_t>& code_b_;
  Permutation phi_, inv_;
  std::vector<std::uint32_t> trail_;
};

struct SearchSetup {
  std::vector<Element> gens;
  std::vector<std::uint32_t> code_a, code_b;
  bool compatible = true;
};

SearchSetup prepare(const FiniteLoop& a, const FiniteLoop& b) {
  SearchSetup s;
  const auto ia = invariants(a);
  const auto ib = invariants(b);
  std::map<Invariant, std::uint32_t> ids;
  for (const auto& v : ia) ids.emplace(v, 0);
  for (const auto& v : ib) ids.emplace(v, 0);
  std::uint32_t next = 0;
  for (auto& [k, v] : ids) v = next++;
  for (const auto& v : ia) s.code_a.push_back(ids[v]);
  for (const auto& v : ib) s.code_b.push_back(ids[v]);
  auto ca = s.code_a, cb = s.code_b;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  s.compatible = ca == cb;
  s.gens = minimal_generating_set(a);
  return s;
}

// Runs the search with the first free generator's candidates split across
// workers; per-candidate results are concatenated in candidate order.
std::vector<std::vector<Permutation>> split_search(const FiniteLoop& a, const FiniteLoop& b,
                                                   const SearchSetup& setup, unsigned jobs,
                                                   bool first_only) {
  MapSearch root(a, b, setup.gens, setup.code_a, setup.code_b);
  if (!root.start()) return {};
  const std::size_t level = root.next_level(0);
  if (level == setup.gens.size()) {
    std::vector<std::vector<Permutation>> one(1);
    root.search(level, [&](const Permutation& p) {
      one[0].push_back(p);
      return false;
    });
    return one;
  }
  const auto cands = root.candidates(level);
  std::vector<std::vector<Permutation>> results(cands.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> found_at{cands.size()};
  auto worker = [&]() {
    MapSearch s(a, b, setup.gens, setup.code_a, setup.code_b);
    s.start();
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cands.size()) return;
      if (first_only && i > found_at.load()) return;
      const std::size_t m = s.mark();
      if (s.try_assign(level, cands[i])) {
        s.search(level + 1, [&](const Permutation& p) {
          results[i].push_back(p);
          return !first_only;
        });
      }
      s.undo(m);
      if (first_only && !results[i].empty()) {
        std::size_t cur = found_at.load();
        while (i < cur && !found_at.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cands.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace

std::optional<Permutation> find_isomorphism(const FiniteLoop& a, const FiniteLoop& b,
                                            const SearchOptions& opts) {
  if (a.dense_order() != b.dense_order()) return std::nullopt;
  const SearchSetup setup = prepare(a, b);
  if (!setup.compatible) return std::nullopt;
  for (auto& r : split_search(a, b, setup, opts.jobs, true)) {
    if (!r.empty()) {
      if (!is_isomorphism(a, b, r.front())) throw std::logic_error("search produced a non-isomorphism");
      return r.front();
    }
  }
  return std::nullopt;
}

std::vector<Permutation> enumerate_automorphisms(const FiniteLoop& loop, const SearchOptions& opts,
                                                 std::size_t order_cap) {
  if (loop.dense_order() > order_cap) {
    throw std::length_error("automorphism search capped at order " + std::to_string(order_cap));
  }
  const SearchSetup setup = prepare(loop, loop);
  std::vector<Permutation> out;
  for (auto& r : split_search(loop, loop, setup, opts.jobs, false)) {
    for (auto& p : r) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Permutation> group_generators(const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  if (elements.empty()) return gens;
  const std::size_t N = elements.front().size();
  Permutation id(N);
  for (std::uint32_t i = 0; i < N; ++i) id[i] = i;
  std::unordered_set<Permutation, PermutationHash> group{id};
  std::vector<Permutation> members{id};
  auto compose = [](const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  for (const auto& candidate : elements) {
    if (group.count(candidate)) continue;
    gens.push_back(candidate);
    const std::size_t old = members.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
      // Old members are already closed under the earlier generators.
      const std::size_t first_gen = i < old ? gens.size() - 1 : 0;
      for (std::size_t g = first_gen; g < gens.size(); ++g) {
        Permutation p = compose(members[i], gens[g]);
        if (group.insert(p).second) members.push_back(std::move(p));
      }
    }
    if (members.size() == elements.size()) break;
  }
  return gens;
}

AutReport automorphisms(const FiniteLoop& loop, const SearchOptions& opts, std::size_t order_cap) {
  const auto all = enumerate_automorphisms(loop, opts, order_cap);
  for (const auto& p : all) {
    if (!is_isomorphism(loop, loop, p)) throw std::logic_error("search produced a non-automorphism");
  }
  return {all.size(), group_generators(all)};
}

AutFactorization factor_automorphisms(const FiniteLoop& loop, const std::vector<Permutation>& auts) {
  AutFactorization r;
  const auto& gens = loop.generators();
  if (gens.empty()) throw std::invalid_argument("factor_automorphisms: loop has no generator labels");
  const ElementSet z = center(loop);
  const Quotient q = quotient(loop, z);
  const std::size_t N = loop.dense_order();
  std::vector<bool> central(N, false);
  for (auto e : z) central[e] = true;

  auto induced = [&](const Permutation& a) {
    Permutation bar(q.cosets.size());
    for (std::size_t c = 0; c < q.cosets.size(); ++c) bar[c] = q.projection[a[q.cosets[c].front()]];
    return bar;
  };
  auto key = [&](const Permutation& a) {
    Permutation k;
    for (auto g : gens) k.push_back(a[g]);
    return k;
  };
  std::map<Permutation, std::size_t> by_images;
  for (std::size_t i = 0; i < auts.size(); ++i) by_images.emplace(key(auts[i]), i);

  std::set<Permutation> images;
  for (const auto& a : auts) {
    const Permutation bar = induced(a);
    images.insert(bar);
    bool trivial = true;
    for (std::size_t c = 0; c < bar.size(); ++c) trivial = trivial && bar[c] == c;
    if (trivial) ++r.kernel;

    Permutation lift_key;
    for (auto g : gens) lift_key.push_back(static_cast<std::uint32_t>(q.cosets[q.projection[a[g]]].front()));
    const auto it = by_images.find(lift_key);
    if (it == by_images.end()) {
      r.failure = "no automorphism lifts the induced map with least coset representatives";
      return r;
    }
    const Permutation& lift = auts[it->second];
    Permutation lift_inv(N);
    for (std::uint32_t x = 0; x < N; ++x) lift_inv[lift[x]] = x;
    // tau = lift^-1 o a must be a central translation.
    for (auto g : gens) {
      const Element t = loop.left_div(g, lift_inv[a[g]]);
      if (!central[t]) {
        r.failure = "generator " + std::to_string(g) + " is not moved by a central element";
        return r;
      }
    }
  }
  r.image = images.size();
  r.decomposes = r.kernel * r.image == auts.size();
  if (!r.decomposes) r.failure = "kernel * image != |Aut|";
  return r;
}

// ---------------------------------------------------------------------------

Permutation equivalence_map(const Cochain& g) {
  const std::size_t m = g.m();
  const std::size_t bits = static_cast<std::size_t>(g.n()) + m;
  if (bits > 31) throw std::length_error("equivalence_map: extension too large");
  Permutation p(std::size_t{1} << bits);
  for (std::uint32_t e = 0; e < p.size(); ++e) {
    const std::uint32_t v = e >> m;
    p[e] = e ^ static_cast<std::uint32_t>(g.at(v).low_word());
  }
  return p;
}

std::optional<Permutation> extension_equivalence(const Cocycle& f1, const Cocycle& f2) {
  if (f1.n() != f2.n() || f1.m() != f2.m()) {
    throw std::invalid_argument("extension_equivalence: dimension mismatch");
  }
  auto g = coboundary_witness(f1.densified() + f2.densified());
  if (!g) return std::nullopt;
  Permutation map = equivalence_map(*g);
  const FiniteLoop l1 = build_extension(f1).densified();
  const FiniteLoop l2 = build_extension(f2).densified();
  if (!is_isomorphism(l1, l2, map)) throw std::logic_error("extension_equivalence: map failed to verify");
  return map;
}

FiniteLoop free_nilpotent2(int n) {
  if (n < 1 || n > 8) throw std::out_of_range("free_nilpotent2 supports 1 <= n <= 8");
  Cocycle f = universal_cocycle(n);
  const std::size_t bits = static_cast<std::size_t>(n) + f.m();
  if (bits <= 12 && (std::size_t{1} << bits) <= kDenseCap) f = f.densified();
  return build_extension(f);
}

Unique16Report unique16(const SearchOptions& opts) {
  auto fail = [](const std::string& what) { throw std::runtime_error("unique16: " + what); };
  Unique16Report r;
  const FiniteLoop free3 = free_nilpotent2(3);
  if (free3.dense_order() != 64) fail("free loop has order " + std::to_string(free3.dense_order()));
  const ElementSet z = center(free3);
  if (z.size() != 8) fail("free loop center has order " + std::to_string(z.size()));
  r.subspaces = central_subspaces(free3, 2);
  r.quotient_count = r.subspaces.size();
  if (r.quotient_count != 7) fail("expected 7 central subspaces, found " + std::to_string(r.quotient_count));
  for (const auto& s : r.subspaces) {
    Quotient q = quotient(free3, s.elements);
    const FiniteLoop& l = q.loop;
    const std::string tag = "quotient by " + std::to_string(s.elements.size()) + "-element subspace";
    if (l.dense_order() != 16) fail(tag + " has order " + std::to_string(l.dense_order()));
    if (auto w = steiner_violation(l)) fail(tag + " is not Steiner: " + w->to_string());
    if (is_associative(l)) fail(tag + " is associative");
    const auto cls = nilpotency_class(l);
    if (!cls || *cls != 2) fail(tag + " does not have nilpotency class 2");
    r.quotients.push_back(l);
  }
  for (std::size_t i = 0; i < r.quotients.size(); ++i) {
    for (std::size_t j = i + 1; j < r.quotients.size(); ++j) {
      auto iso = find_isomorphism(r.quotients[i], r.quotients[j], opts);
      if (!iso) fail("quotients " + std::to_string(i) + " and " + std::to_string(j) + " are not isomorphic");
      if (!is_isomorphism(r.quotients[i], r.quotients[j], *iso)) fail("isomorphism failed to verify");
      ++r.isomorphisms_verified;
    }
  }
  r.pairwise_isomorphic = true;
  r.loop = r.quotients.front();
  r.order = r.loop.dense_order();
  r.center_order = center(r.loop).size();
  r.associator_subloop_order = associator_subloop(r.loop).size();
  r.nilpotency = *nilpotency_class(r.loop);
  r.steiner = is_steiner(r.loop);
  r.associative = is_associative(r.loop);
  return r;
}

// ---------------------------------------------------------------------------

FiniteLoop read_loop_table(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  std::size_t order = 0;
  bool have_header = false;
  std::vector<std::uint32_t> table;
  while (std::getline(in, raw)) {
    ++line;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream ss(raw);
    if (!have_header) {
      std::string word;
      long long n = -1;
      std::string extra;
      if (!(ss >> word >> n) || word != "loop" || (ss >> extra)) {
        throw ParseError(line, "expected header 'loop <N>'");
      }
      if (n < 1 || static_cast<unsigned long long>(n) > kDenseCap) {
        throw ParseError(line, "loop order must lie in 1.." + std::to_string(kDenseCap));
      }
      order = static_cast<std::size_t>(n);
      table.reserve(order * order);
      have_header = true;
      continue;
    }
    if (table.size() == order * order) throw ParseError(line, "more than N table rows");
    std::string tok;
    std::size_t count = 0;
    while (ss >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9) {
        throw ParseError(line, "bad table entry '" + tok + "'");
      }
      table.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      ++count;
    }
    if (count != order) {
      throw ParseError(line, "row has " + std::to_string(count) + " entries, expected " + std::to_string(order));
    }
  }
  if (!have_header) throw ParseError(0, "missing 'loop' header");
  if (table.size() != order * order) {
    throw ParseError(line, "expected " + std::to_string(order) + " rows, got " +
                               std::to_string(table.size() / order));
  }
  try {
    return FiniteLoop::from_table(order, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("not a loop: ") + e.what());
  }
}

void write_loop_table(std::ostream& out, const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  out << "loop " << N << "\n";
  const auto& t = loop.table();
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      if (c) out << ' ';
      out << t[r * N + c];
    }
    out << "\n";
  }
}

}  // namespace steiner
