// steiner: command-line front end for the loop, cocycle and STS routines.
//
// Exit codes: 0 ok, 1 negative verdict, 2 malformed input or usage.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "steiner/acceptance.hpp"
#include "steiner/cocycle.hpp"
#include "steiner/error.hpp"
#include "steiner/loop.hpp"
#include "steiner/report.hpp"
#include "steiner/sts.hpp"
#include "steiner/swords.hpp"

namespace fs = std::filesystem;
using namespace steiner;

namespace {

// Bad input that is not tied to a line of a file (unknown path, bad flag
// value, unparsable word).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

FiniteLoop load_loop(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_loop_table(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()));
  }
}

std::string join(const std::vector<Element>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string join(const Permutation& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void write_loop_file(const std::string& path, const FiniteLoop& l) {
  auto out = open_out(path);
  write_loop_table(out, l);
}

void describe_loop(RunReport& r, const FiniteLoop& l) {
  r.add("order", l.dense_order());
  const auto sw = steiner_violation(l);
  r.add("steiner", !sw);
  if (sw) r.add("steiner.witness", sw->to_string());
  r.add("commutative", is_commutative(l));
  const auto aw = associativity_violation(l);
  r.add("associative", !aw);
  if (aw) r.add("associative.witness", aw->to_string());
  const auto z = center(l);
  r.add("center.order", z.size());
  r.add("center", join(z));
  r.add("associator_subloop.order", associator_subloop(l).size());
  const auto cls = nilpotency_class(l);
  r.add("nilpotency_class", cls ? std::to_string(*cls) : std::string("not nilpotent"));
  r.add("generators", join(minimal_generating_set(l)));
}

std::vector<F2Vector> parse_subspace(const std::string& text) {
  std::vector<F2Vector> basis;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      basis.push_back(F2Vector::parse(tok));
    } catch (const std::exception&) {
      throw InputError("bad subspace vector '" + tok + "'");
    }
  }
  if (basis.empty()) throw InputError("empty subspace");
  return basis;
}

struct Globals {
  bool machine = false;
  unsigned jobs = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner loops of nilpotency class two: free S-words, F2 cocycles, extensions, STS."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--machine", g.machine, "Print the key=value machine report");
  app.add_option("--jobs", g.jobs, "Worker threads for searches")->check(CLI::Range(1u, 256u));

  RunReport report;
  std::function<void()> action;

  int dims_max = 8;
  auto* dims = app.add_subcommand("dims", "Strongly regular pair counts by formula and enumeration");
  dims->add_option("--max", dims_max, "Largest n")->check(CLI::Range(1, 8));
  dims->callback([&] {
    action = [&] {
      report.input("max", std::to_string(dims_max));
      bool agree = true;
      for (int n = 1; n <= dims_max; ++n) {
        const auto f = sr_count_formula(n);
        const auto e = strongly_regular_pairs(n).size();
        const auto reg = regular_pairs(n).size();
        const std::string k = "n" + std::to_string(n);
        report.add(k + ".formula", f);
        report.add(k + ".enumerated", e);
        report.add(k + ".regular", reg);
        agree = agree && f == e && reg == regular_count_formula(n);
      }
      report.add("agree", agree);
      if (!agree) report.exit_status = 1;
    };
  });

  int free_n = 3;
  std::string free_out;
  auto* free_cmd = app.add_subcommand("free", "Write the free class-two Steiner loop on n generators");
  free_cmd->add_option("n", free_n, "Generator count")->required()->check(CLI::Range(1, 3));
  free_cmd->add_option("-o,--out", free_out, "Output .tbl")->required();
  free_cmd->callback([&] {
    action = [&] {
      report.input("n", std::to_string(free_n));
      const FiniteLoop l = free_nilpotent2(free_n);
      write_loop_file(free_out, l);
      report.add("order", l.dense_order());
      report.add("generators", join(l.generators()));
      report.add("written", free_out);
    };
  });

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "Laws, center, associator subloop and class of a loop table");
  analyze->add_option("table", analyze_path, "Input .tbl")->required();
  analyze->callback([&] {
    action = [&] {
      report.input("table", analyze_path);
      describe_loop(report, load_loop(analyze_path));
    };
  });

  std::string q_path, q_subspace, q_out;
  auto* quot = app.add_subcommand("quotient", "Quotient by a central subspace");
  quot->add_option("table", q_path, "Input .tbl")->required();
  quot->add_option("--subspace", q_subspace, "Basis in center coordinates, e.g. 110,011")->required();
  quot->add_option("-o,--out", q_out, "Output .tbl")->required();
  quot->callback([&] {
    action = [&] {
      report.input("table", q_path);
      report.input("subspace", q_subspace);
      const FiniteLoop l = load_loop(q_path);
      const auto basis = parse_subspace(q_subspace);
      CentralSubspace s;
      try {
        s = central_subspace_from_basis(l, basis);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const Quotient q = quotient(l, s.elements);
      write_loop_file(q_out, q.loop);
      report.add("subspace.elements", join(s.elements));
      report.add("order", q.loop.dense_order());
      report.add("written", q_out);
    };
  });

  std::string iso_a, iso_b;
  auto* iso = app.add_subcommand("iso", "Find the least isomorphism between two loop tables");
  iso->add_option("a", iso_a, "First .tbl")->required();
  iso->add_option("b", iso_b, "Second .tbl")->required();
  iso->callback([&] {
    action = [&] {
      report.input("a", iso_a);
      report.input("b", iso_b);
      const FiniteLoop a = load_loop(iso_a), b = load_loop(iso_b);
      const auto map = find_isomorphism(a, b, {g.jobs});
      report.add("isomorphic", map.has_value());
      if (map) {
        report.add("map", join(*map));
      } else {
        report.exit_status = 1;
      }
    };
  });

  std::string aut_path;
  std::size_t aut_cap = kAutomorphismOrderCap;
  auto* aut = app.add_subcommand("aut", "Automorphism group order and generators");
  aut->add_option("table", aut_path, "Input .tbl")->required();
  aut->add_option("--cap", aut_cap, "Largest loop order searched")->check(CLI::Range(std::size_t{1}, kDenseCap));
  aut->callback([&] {
    action = [&] {
      report.input("table", aut_path);
      const FiniteLoop l = load_loop(aut_path);
      const AutReport a = automorphisms(l, {g.jobs}, aut_cap);
      report.add("order", a.order);
      report.add("generator_count", a.generators.size());
      for (std::size_t i = 0; i < a.generators.size(); ++i) {
        report.add("generator." + std::to_string(i + 1), join(a.generators[i]));
      }
    };
  });

  std::string u_dir = ".";
  auto* u16 = app.add_subcommand("unique16", "Quotients of the free loop of order 64 by 2-dim central subspaces");
  u16->add_option("-o,--out", u_dir, "Output directory");
  u16->callback([&] {
    action = [&] {
      report.input("out", u_dir);
      const Unique16Report r = unique16({g.jobs});
      report.add("quotient_count", r.quotient_count);
      for (std::size_t i = 0; i < r.subspaces.size(); ++i) {
        report.add("subspace." + std::to_string(i + 1), join(r.subspaces[i].elements));
      }
      report.add("isomorphisms_verified", r.isomorphisms_verified);
      report.add("pairwise_isomorphic", r.pairwise_isomorphic);
      report.add("order", r.order);
      report.add("center.order", r.center_order);
      report.add("associator_subloop.order", r.associator_subloop_order);
      report.add("nilpotency_class", r.nilpotency);
      report.add("steiner", r.steiner);
      report.add("associative", r.associative);
      fs::create_directories(u_dir);
      const fs::path dir(u_dir);
      write_loop_file((dir / "S16.tbl").string(), r.loop);
      {
        auto out = open_out((dir / "S16.sts").string());
        write_sts(out, sts_from_loop(r.loop));
      }
      report.add("table", (dir / "S16.tbl").string());
      report.add("sts", (dir / "S16.sts").string());
      report.add("report", (dir / "unique16.report").string());
      auto out = open_out((dir / "unique16.report").string());
      report.write_machine(out);
    };
  });

  std::string s2l_path, s2l_out;
  auto* s2l = app.add_subcommand("sts2loop", "Steiner loop of a triple system");
  s2l->add_option("sts", s2l_path, "Input .sts")->required();
  s2l->add_option("-o,--out", s2l_out, "Output .tbl")->required();
  s2l->callback([&] {
    action = [&] {
      report.input("sts", s2l_path);
      auto in = open_in(s2l_path);
      const TripleSystem s = read_sts(in);
      const auto bad = validate_sts(s);
      report.add("valid", bad.empty());
      if (!bad.empty()) {
        report.add("violations", bad.size());
        report.add("witness", bad.front().to_string());
        report.exit_status = 1;
        return;
      }
      const FiniteLoop l = loop_from_sts(s);
      write_loop_file(s2l_out, l);
      report.add("order", l.dense_order());
      report.add("written", s2l_out);
    };
  });

  std::string l2s_path, l2s_out;
  auto* l2s = app.add_subcommand("loop2sts", "Triple system of a Steiner loop");
  l2s->add_option("table", l2s_path, "Input .tbl")->required();
  l2s->add_option("-o,--out", l2s_out, "Output .sts")->required();
  l2s->callback([&] {
    action = [&] {
      report.input("table", l2s_path);
      const FiniteLoop l = load_loop(l2s_path);
      const auto w = steiner_violation(l);
      report.add("steiner", !w);
      if (w || l.dense_order() < 4) {
        report.add("witness", w ? w->to_string() : std::string("order below 4"));
        report.exit_status = 1;
        return;
      }
      const TripleSystem s = sts_from_loop(l);
      auto out = open_out(l2s_out);
      write_sts(out, s);
      report.add("points", s.v);
      report.add("blocks", s.blocks.size());
      report.add("written", l2s_out);
    };
  });

  std::string cc_path;
  auto* cc = app.add_subcommand("cocycle-check", "Check the cocycle laws");
  cc->add_option("cocycle", cc_path, "Input .cyc")->required();
  cc->callback([&] {
    action = [&] {
      report.input("cocycle", cc_path);
      auto in = open_in(cc_path);
      const Cocycle f = read_cocycle(in);
      const auto bad = validate_cocycle(f);
      report.add("n", f.n());
      report.add("m", f.m());
      report.add("valid", bad.empty());
      report.add("violations", bad.size());
      if (!bad.empty()) {
        report.add("witness", bad.front().to_string());
        report.exit_status = 1;
        return;
      }
      report.add("normalized", in_normalized_subspace(f));
      if (f.n() <= 6) report.add("coboundary", coboundary_witness(f).has_value());
    };
  });

  std::string cd_path, cd_out;
  auto* cd = app.add_subcommand("cocycle-decompose", "Split a cocycle as f0 + delta(g) with f0 normalized");
  cd->add_option("cocycle", cd_path, "Input .cyc")->required();
  cd->add_option("-o,--out", cd_out, "Write f0 as .cyc");
  cd->callback([&] {
    action = [&] {
      report.input("cocycle", cd_path);
      auto in = open_in(cd_path);
      const Cocycle f = read_cocycle(in);
      const auto bad = validate_cocycle(f);
      if (!bad.empty()) {
        report.add("valid", false);
        report.add("witness", bad.front().to_string());
        report.exit_status = 1;
        return;
      }
      const Decomposition d = decompose(f);
      report.add("valid", true);
      for (const auto& s : enumerate_subsets(f.n())) {
        if (s.size() == 0) continue;
        report.add("g." + s.to_string(), d.cochain(s).to_string());
      }
      report.add("f0.normalized", in_normalized_subspace(d.normalized));
      report.add("f0.zero", d.normalized.is_zero());
      report.add("reconstructs", d.normalized + coboundary(d.cochain) == f);
      if (!cd_out.empty()) {
        auto out = open_out(cd_out);
        write_cocycle(out, d.normalized);
        report.add("written", cd_out);
      }
    };
  });

  std::string word_expr;
  auto* word = app.add_subcommand("word", "Canonical S-word of an expression such as ((x1 x2) x2)");
  word->add_option("expr", word_expr, "Word expression")->required();
  word->callback([&] {
    action = [&] {
      report.input("expr", word_expr);
      SWord w;
      try {
        w = parse_word(word_expr);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const SWord c = normalize(w);
      report.add("canonical", c.to_string());
      report.add("length", c.length());
      report.add("was_canonical", w.is_empty() ? true : is_sword(w));
    };
  });

  AcceptanceOptions st;
  std::string fixture;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--seed", st.seed, "Seed for the randomized checks");
  self->add_flag("--extended", st.extended, "Include the larger theorem-basis cases");
  self->add_option("--fixture", fixture, "Loop table that must be a Steiner loop");
  self->callback([&] {
    action = [&] {
      report.input("seed", std::to_string(st.seed));
      report.input("extended", st.extended ? "true" : "false");
      st.jobs = g.jobs;
      if (!fixture.empty()) {
        st.fixture = fixture;
        report.input("fixture", fixture);
      }
      const auto results = run_acceptance(st, [&](const CriterionResult& r) {
        if (!g.machine) std::cout << summary_line(r) << std::endl;
      });
      add_to_report(report, results);
      for (const auto& r : results) {
        if (!r.passed) report.exit_status = 1;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  report.command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    action();
  } catch (const ParseError& e) {
    std::cerr << "steiner: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "steiner: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "steiner: " << e.what() << "\n";
    return 1;
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (g.machine) {
    report.write_machine(std::cout);
  } else {
    report.write_text(std::cout);
  }
  return report.exit_status;
}
