#include "steiner/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "steiner/loop.hpp"
#include "steiner/sts.hpp"
#include "steiner/swords.hpp"

namespace steiner {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects facts; the first failed expectation becomes the witness.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      witness_ = what;
    }
  }
  void note(const std::string& fact) {
    if (!notes_.empty()) notes_ += " ";
    notes_ += fact;
  }
  bool ok() const { return ok_; }
  Outcome done() const { return {ok_, ok_ ? notes_ : witness_}; }

 private:
  bool ok_ = true;
  std::string witness_;
  std::string notes_;
};

template <typename T>
std::string kv(const std::string& k, const T& v) {
  std::ostringstream s;
  s << k << "=" << v;
  return s.str();
}

// Shared loops, built on first use.
struct Corpus {
  std::optional<FiniteLoop> free64;
  std::optional<Unique16Report> u16;
  unsigned jobs = 1;

  const FiniteLoop& free3() {
    if (!free64) free64 = free_nilpotent2(3);
    return *free64;
  }
  const Unique16Report& unique() {
    if (!u16) u16 = unique16({jobs});
    return *u16;
  }
};

std::uint64_t brute_force_automorphisms(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  Permutation p(N);
  std::iota(p.begin(), p.end(), 0u);
  std::uint64_t count = 0;
  do {
    count += is_isomorphism(loop, loop, p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return count;
}

std::vector<Cocycle> span_all(const std::vector<Cocycle>& basis, int n) {
  std::vector<Cocycle> out;
  for (std::uint32_t c = 0; c < (1u << basis.size()); ++c) {
    Cocycle f = Cocycle::zero(n, 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((c >> i) & 1u) f = f + basis[i];
    }
    out.push_back(f);
  }
  return out;
}

// Table of V x F2^m under f without validating f first.
FiniteLoop raw_extension(const Cocycle& f) { return FiniteLoop::extension(f).densified(); }

// --- criteria ---------------------------------------------------------------

Outcome pair_counts() {
  Checker c;
  std::string sr = "sr", reg = "regular";
  for (int n = 1; n <= 8; ++n) {
    const auto s = strongly_regular_pairs(n).size();
    const auto r = regular_pairs(n).size();
    c.expect(s == sr_count_formula(n), kv("sr_count.n" + std::to_string(n), s) + " formula=" +
                                           std::to_string(sr_count_formula(n)));
    c.expect(r == regular_count_formula(n), kv("regular_count.n" + std::to_string(n), r) + " formula=" +
                                                std::to_string(regular_count_formula(n)));
    sr += " " + std::to_string(s);
    reg += " " + std::to_string(r);
  }
  c.note(sr + ";");
  c.note(reg);
  return c.done();
}

Outcome trichotomy() {
  Checker c;
  std::size_t orbits = 0;
  for (int n = 2; n <= 6 && c.ok(); ++n) {
    const std::uint32_t N = 1u << n;
    for (std::uint32_t a = 1; a < N && c.ok(); ++a) {
      for (std::uint32_t b = 1; b < a; ++b) {
        const std::uint32_t x = a ^ b;
        if (x < a) continue;  // each line once: a, b its two smallest members
        const IndexSubset A(n, a), B(n, b);
        const Orbit o = orbit_of(A, B);
        std::size_t regular = 0;
        for (const auto& p : o.pairs) {
          const PairClass k = classify_pair(p.first, p.second);
          regular += k == PairClass::regular_not_strong || k == PairClass::strongly_regular;
        }
        c.expect(regular == 1, "orbit of " + A.to_string() + "," + B.to_string() + " has " +
                                   std::to_string(regular) + " regular pairs");
        ++orbits;
      }
    }
  }
  c.note(kv("orbits", orbits));
  return c.done();
}

Outcome normalized_complement() {
  Checker c;
  const auto z2 = cocycle_space_basis(3);
  const auto b2 = coboundary_space_basis(3);
  const auto z20 = normalized_space_basis(3);
  c.expect(z2.size() == 7, kv("dim_Z2", z2.size()));
  c.expect(b2.size() == 4, kv("dim_B2", b2.size()));
  c.expect(z20.size() == 3, kv("dim_Z2_0", z20.size()));
  for (const auto& f : span_all(z20, 3)) {
    if (!f.is_zero()) c.expect(!coboundary_witness(f), "a nonzero normalized cocycle is a coboundary");
  }
  std::size_t checked = 0;
  for (const auto& f : span_all(z2, 3)) {
    c.expect(is_cocycle(f), "spanned element is not a cocycle");
    const Decomposition d = decompose(f);
    c.expect(in_normalized_subspace(d.normalized), "f0 outside the normalized subspace");
    c.expect(is_cocycle(d.normalized), "f0 is not a cocycle");
    c.expect(d.normalized + coboundary(d.cochain) == f, "f0 + delta(g) != f");
    c.expect(solve_coboundary(f + d.normalized).has_value(), "f - f0 not solvable as a coboundary");
    ++checked;
  }
  c.note(kv("dim_Z2", z2.size()) + " " + kv("dim_B2", b2.size()) + " " + kv("dim_Z2_0", z20.size()) + " " +
         kv("decomposed", checked));
  return c.done();
}

Outcome theorem_basis_rank(bool extended) {
  Checker c;
  const int top = extended ? 6 : 4;
  std::string ranks = "rank";
  for (int n = 2; n <= top; ++n) {
    const auto r = verify_theorem_basis(n);
    c.expect(r.passed(), "n=" + std::to_string(n) + " rank " + std::to_string(r.rank) + " of " +
                             std::to_string(r.dimension));
    ranks += " " + std::to_string(r.rank) + "/" + std::to_string(r.dimension);
  }
  c.note(ranks);
  return c.done();
}

Outcome axiom_equivalence(std::uint64_t seed) {
  Checker c;
  std::size_t tried = 0, cocycles = 0;
  auto check = [&](const Cocycle& f) {
    const bool valid = validate_cocycle(f).empty();
    const auto w = steiner_violation(raw_extension(f));
    c.expect(valid == !w.has_value(),
             "n=" + std::to_string(f.n()) + " m=" + std::to_string(f.m()) + " cocycle=" +
                 (valid ? "yes" : "no") + " steiner=" + (w ? "no" : "yes"));
    ++tried;
    cocycles += valid;
  };
  // Every symmetric pairing with f(0, .) = 0 for n <= 2.
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
    for (std::uint32_t a = 1; a < (1u << n); ++a) {
      for (std::uint32_t b = 1; b <= a; ++b) cells.emplace_back(a, b);
    }
    for (std::size_t m = 1; m <= 2; ++m) {
      const std::size_t bits = cells.size() * m;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
        Cocycle f = Cocycle::zero(n, m);
        for (std::size_t k = 0; k < cells.size(); ++k) {
          f.set(IndexSubset(n, cells[k].first), IndexSubset(n, cells[k].second),
                F2Vector::from_bits(m, (code >> (k * m)) & ((1u << m) - 1)));
        }
        check(f);
      }
    }
  }
  // n = 3: Z^2 and its single-cell perturbations (m = 1), Z^2 x Z^2 (m = 2).
  const auto z = span_all(cocycle_space_basis(3), 3);
  for (const auto& f : z) {
    check(f);
    for (std::uint32_t a = 1; a < 8; ++a) {
      for (std::uint32_t b = 1; b <= a; ++b) {
        Cocycle g = f;
        g.set(IndexSubset(3, a), IndexSubset(3, b), F2Vector::from_bits(1, f.word(a, b) ^ 1u));
        check(g);
      }
    }
  }
  for (const auto& f1 : z) {
    for (const auto& f2 : z) {
      Cocycle f = Cocycle::zero(3, 2);
      for (std::uint32_t a = 1; a < 8; ++a) {
        for (std::uint32_t b = 1; b < a; ++b) {
          f.set(IndexSubset(3, a), IndexSubset(3, b), F2Vector::from_bits(2, f1.word(a, b) | (f2.word(a, b) << 1)));
        }
      }
      check(f);
    }
  }
  // Seeded random pairings: half uniform, half cocycles with a few flips.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 1 + rng() % 2;
    Cocycle f = Cocycle::zero(3, m);
    if (i % 2 == 0) {
      for (std::uint32_t a = 1; a < 8; ++a) {
        for (std::uint32_t b = 1; b <= a; ++b) {
          f.set(IndexSubset(3, a), IndexSubset(3, b), F2Vector::from_bits(m, rng() & ((1u << m) - 1)));
        }
      }
    } else {
      f = random_cocycle(3, m, rng);
      const int flips = static_cast<int>(rng() % 3);
      for (int k = 0; k < flips; ++k) {
        const std::uint32_t a = 1 + rng() % 7, b = 1 + rng() % 7;
        f.set(IndexSubset(3, a), IndexSubset(3, b), F2Vector::from_bits(m, f.word(a, b) ^ (1u + rng() % ((1u << m) - 1))));
      }
    }
    check(f);
  }
  c.note(kv("pairings", tried) + " " + kv("cocycles", cocycles) + " counterexamples=0");
  return c.done();
}

Outcome associator_coherence(std::uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto run = [&](const FiniteLoop& l, const Cocycle& f, int samples) {
    const int n = f.n();
    const std::size_t m = f.m();
    for (int i = 0; i < samples; ++i) {
      const IndexSubset s(n, rng() % (1u << n)), mu(n, rng() % (1u << n)), t(n, rng() % (1u << n));
      const Element table = associator(l, l.encode({s, F2Vector(m)}), l.encode({mu, F2Vector(m)}),
                                        l.encode({t, F2Vector(m)}));
      const Element formula = l.encode({IndexSubset::empty(n), associator_formula(f, s, mu, t)});
      c.expect(table == formula, "n=" + std::to_string(n) + " associator of " + s.to_string() + "," +
                                     mu.to_string() + "," + t.to_string() + " disagrees");
    }
  };
  for (int i = 0; i < 100; ++i) {
    const Cocycle f = random_cocycle(3, 3, rng);
    run(build_extension(f), f, 10);
  }
  const Cocycle u = universal_cocycle(4);
  const FiniteLoop l4 = build_extension(u);
  c.expect(!l4.is_dense(), "n=4 extension unexpectedly dense");
  run(l4, u, 1000);
  c.note("triples=1000+1000 mismatches=0");
  return c.done();
}

Outcome free_loop(Corpus& corpus) {
  Checker c;
  const FiniteLoop& l = corpus.free3();
  const auto z = center(l);
  const auto a = associator_subloop(l);
  const auto cls = nilpotency_class(l);
  c.expect(l.dense_order() == 64, kv("order", l.dense_order()));
  c.expect(is_steiner(l), "not Steiner");
  c.expect(!is_associative(l), "associative");
  c.expect(z.size() == 8, kv("center", z.size()));
  c.expect(cls == 2, "nilpotency class is not 2");
  c.expect(a == z, "associator subloop differs from the center");
  c.note(kv("order", l.dense_order()) + " " + kv("center", z.size()) + " " + kv("associator_subloop", a.size()) +
         " " + kv("class", cls.value_or(-1)));
  return c.done();
}

Outcome uniqueness(Corpus& corpus) {
  Checker c;
  const auto& r = corpus.unique();
  c.expect(r.quotient_count == 7, kv("quotient_count", r.quotient_count));
  c.expect(r.isomorphisms_verified == 21, kv("isomorphisms", r.isomorphisms_verified));
  c.expect(r.pairwise_isomorphic, "not pairwise isomorphic");
  c.expect(r.order == 16 && r.steiner && !r.associative && r.nilpotency == 2, "canonical quotient has wrong shape");
  c.note(kv("quotient_count", r.quotient_count) + " " + kv("isomorphisms", r.isomorphisms_verified) + " " +
         kv("center", r.center_order) + " " + kv("class", r.nilpotency));
  return c.done();
}

Outcome equivalence_maps(std::uint64_t seed) {
  Checker c;
  const auto z = span_all(cocycle_space_basis(3), 3);
  std::vector<Cochain> cochains;
  std::vector<Cocycle> b;
  for (std::uint32_t code = 0; code < 128; ++code) {
    Cochain g(3, 1);
    for (std::uint32_t s = 1; s < 8; ++s) g.set(IndexSubset(3, s), F2Vector::from_bits(1, (code >> (s - 1)) & 1u));
    Cocycle d = coboundary(g);
    if (std::find(b.begin(), b.end(), d) == b.end()) b.push_back(d);
    cochains.push_back(std::move(g));
  }
  c.expect(b.size() == 16, kv("coboundaries", b.size()));
  std::size_t equivalent = 0;
  for (const auto& f : z) {
    for (const auto& d : b) {
      const auto map = extension_equivalence(f, f + d);
      c.expect(map.has_value(), "cohomologous pair without an equivalence map");
      equivalent += map.has_value();
    }
  }
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dull);
  std::size_t rejected = 0;
  while (rejected < 100) {
    const Cocycle& f1 = z[rng() % z.size()];
    const Cocycle& f2 = z[rng() % z.size()];
    if (coboundary_witness(f1 + f2)) continue;
    const FiniteLoop l1 = build_extension(f1), l2 = build_extension(f2);
    for (const auto& g : cochains) {
      c.expect(!is_isomorphism(l1, l2, equivalence_map(g)), "non-cohomologous pair has an equivalence map");
    }
    c.expect(!extension_equivalence(f1, f2), "extension_equivalence accepted a non-cohomologous pair");
    ++rejected;
  }
  c.note(kv("cohomologous_pairs", equivalent) + " " + kv("non_cohomologous_pairs", rejected) +
         " candidate_maps=128");
  return c.done();
}

Outcome automorphism_orders(Corpus& corpus) {
  Checker c;
  const SearchOptions opts{corpus.jobs};
  const FiniteLoop klein = elementary_abelian(2), e8 = elementary_abelian(3);
  const auto k_search = automorphisms(klein, opts).order, k_brute = brute_force_automorphisms(klein);
  const auto e_search = automorphisms(e8, opts).order, e_brute = brute_force_automorphisms(e8);
  c.expect(k_search == 6 && k_brute == 6, kv("aut_klein", k_search) + " brute=" + std::to_string(k_brute));
  c.expect(e_search == 168 && e_brute == 168, kv("aut_e8", e_search) + " brute=" + std::to_string(e_brute));
  const FiniteLoop& l = corpus.free3();
  const auto all = enumerate_automorphisms(l, opts);
  const auto f = factor_automorphisms(l, all);
  c.expect(all.size() == 86016, kv("aut_free64", all.size()));
  c.expect(f.decomposes, "factorization failed: " + f.failure);
  c.expect(f.kernel == 512 && f.image == 168, kv("kernel", f.kernel) + " " + kv("image", f.image));
  c.note(kv("aut_klein", k_search) + " " + kv("aut_e8", e_search) + " " + kv("aut_free64", all.size()) + " = " +
         std::to_string(f.image) + "*" + std::to_string(f.kernel));
  return c.done();
}

Outcome sts_bridge(Corpus& corpus) {
  Checker c;
  const TripleSystem fano = fano_plane();
  c.expect(is_valid_sts(fano), "Fano plane invalid");
  const FiniteLoop fl = loop_from_sts(fano);
  c.expect(fl.dense_order() == 8 && is_steiner(fl) && is_associative(fl), "Fano loop is not E8-shaped");
  const std::vector<std::pair<std::string, FiniteLoop>> loops = {
      {"klein", elementary_abelian(2)},
      {"e8", elementary_abelian(3)},
      {"s16", corpus.unique().loop},
      {"free64", corpus.free3()}};
  for (const auto& [name, l] : loops) {
    const TripleSystem s = sts_from_loop(l);
    c.expect(is_valid_sts(s), name + ": derived system invalid");
    c.expect(s.blocks.size() == static_cast<std::size_t>(s.v * (s.v - 1) / 6), name + ": block count");
    const FiniteLoop back = loop_from_sts(s);
    c.expect(sts_from_loop(back) == s, name + ": system round trip differs");
    const auto iso = find_isomorphism(l, back, {corpus.jobs});
    c.expect(iso && is_isomorphism(l, back, *iso), name + ": loop round trip not isomorphic");
  }
  c.note("fano=E8 corpus=klein,e8,s16,free64");
  return c.done();
}

Outcome sword_laws(Corpus& corpus) {
  Checker c;
  const FiniteLoop& l = corpus.free3();
  const auto& gens = l.generators();
  const auto words = enumerate_swords(3, 6);
  std::vector<Element> values;
  for (const auto& w : words) {
    c.expect(is_sword(w), w.to_string() + " is not canonical");
    values.push_back(evaluate(w, gens, l));
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const SWord& u = words[i];
    c.expect(multiply(u, u).is_empty(), u.to_string() + " squared is not e");
    for (std::size_t j = 0; j < words.size(); ++j) {
      const SWord& w = words[j];
      const SWord p = multiply(u, w);
      c.expect(p.is_empty() || is_sword(p), "product of " + u.to_string() + " and " + w.to_string() + " not canonical");
      c.expect(p == multiply(w, u), u.to_string() + " and " + w.to_string() + " do not commute");
      c.expect(multiply(u, p) == w, "x(xy)=y fails for " + u.to_string() + ", " + w.to_string());
      c.expect(normalize(SWord::pair(u, w)) == p, "normalize disagrees with multiply");
      c.expect(evaluate(p, gens, l) == l.mul(values[i], values[j]),
               "evaluation is not multiplicative at " + u.to_string() + ", " + w.to_string());
      ++pairs;
    }
  }
  c.note(kv("words", words.size()) + " " + kv("pairs", pairs));
  return c.done();
}

Outcome fixture_check(const std::string& path) {
  Checker c;
  std::ifstream in(path);
  if (!in) {
    c.expect(false, "cannot open " + path);
    return c.done();
  }
  const FiniteLoop l = read_loop_table(in);
  const auto w = steiner_violation(l);
  c.expect(!w, w ? w->to_string() : "");
  c.note(kv("order", l.dense_order()) + " steiner=true");
  return c.done();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const CriterionCallback& on_result) {
  Corpus corpus;
  corpus.jobs = std::max(1u, opts.jobs);
  struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "pair counts n=1..8 match the closed forms", 10, [] { return pair_counts(); }},
      {2, "one regular pair per orbit, n<=6", 30, [] { return trichotomy(); }},
      {3, "Z2 = Z2_0 + B2 at n=3", 5, [] { return normalized_complement(); }},
      {4, "theorem basis has full rank", opts.extended ? 60.0 : 5.0, [&] { return theorem_basis_rank(opts.extended); }},
      {5, "cocycle laws <=> Steiner extension", 60, [&] { return axiom_equivalence(opts.seed); }},
      {6, "table associator = associator formula", 30, [&] { return associator_coherence(opts.seed); }},
      {7, "free class-2 loop on 3 generators", 10, [&] { return free_loop(corpus); }},
      {8, "uniqueness of S16", 60, [&] { return uniqueness(corpus); }},
      {9, "extension equivalence at n=3", 60, [&] { return equivalence_maps(opts.seed); }},
      {10, "automorphism group orders", 600, [&] { return automorphism_orders(corpus); }},
      {11, "STS <-> loop bridge", 5, [&] { return sts_bridge(corpus); }},
      {12, "S-word laws and evaluation", 30, [&] { return sword_laws(corpus); }},
  };
  if (opts.fixture) {
    criteria.push_back({13, "fixture table is a Steiner loop", 10, [&] { return fixture_check(*opts.fixture); }});
  }
  std::vector<CriterionResult> out;
  for (const auto& s : criteria) {
    CriterionResult r;
    r.id = s.id;
    r.title = s.title;
    r.budget = s.budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = s.run();
      r.passed = o.ok;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.passed && r.seconds > r.budget) {
      r.passed = false;
      r.detail = "over time budget of " + std::to_string(static_cast<int>(r.budget)) + " s; " + r.detail;
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + secs +
         " s): " + r.detail;
}

void add_to_report(RunReport& report, const std::vector<CriterionResult>& results) {
  std::size_t passed = 0;
  for (const auto& r : results) {
    const std::string key = "criterion." + std::to_string(r.id);
    report.add(key, r.passed ? "pass" : "fail");
    report.add(key + ".detail", r.detail);
    passed += r.passed;
  }
  report.add("passed", passed);
  report.add("total", results.size());
}

}  // namespace steiner
