#include "steiner/sts.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "steiner/error.hpp"

namespace steiner {

std::string StsViolation::to_string() const {
  if (kind == "congruence") return "v = " + std::to_string(a) + " is not 1 or 3 mod 6";
  return kind + " {" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::vector<StsViolation> validate_sts(const TripleSystem& s) {
  std::vector<StsViolation> out;
  if (s.v < 0) {
    out.push_back({"congruence", s.v, 0});
    return out;
  }
  if (s.v % 6 != 1 && s.v % 6 != 3) out.push_back({"congruence", s.v, 0});
  const std::size_t v = static_cast<std::size_t>(s.v);
  std::vector<int> seen((v + 1) * (v + 1), 0);
  for (const auto& b : s.blocks) {
    const bool in_range = std::all_of(b.begin(), b.end(), [&](int p) { return p >= 1 && p <= s.v; });
    if (!in_range || b[0] == b[1] || b[0] == b[2] || b[1] == b[2]) {
      out.push_back({"bad block", b[0], b[1]});
      continue;
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const int x = std::min(b[i], b[j]), y = std::max(b[i], b[j]);
        if (++seen[x * (v + 1) + y] == 2) out.push_back({"duplicate pair", x, y});
      }
    }
  }
  for (int x = 1; x <= s.v; ++x) {
    for (int y = x + 1; y <= s.v; ++y) {
      if (seen[x * (v + 1) + y] == 0) out.push_back({"missing pair", x, y});
    }
  }
  return out;
}

bool is_valid_sts(const TripleSystem& s) { return validate_sts(s).empty(); }

TripleSystem canonical(TripleSystem s) {
  for (auto& b : s.blocks) std::sort(b.begin(), b.end());
  std::sort(s.blocks.begin(), s.blocks.end());
  return s;
}

TripleSystem fano_plane() {
  TripleSystem s{7, {}};
  for (int x = 1; x <= 7; ++x) {
    for (int y = x + 1; y <= 7; ++y) {
      if ((x ^ y) > y) s.blocks.push_back({x, y, x ^ y});
    }
  }
  return canonical(std::move(s));
}

FiniteLoop loop_from_sts(const TripleSystem& s) {
  if (auto bad = validate_sts(s); !bad.empty()) {
    throw std::invalid_argument("not a Steiner triple system: " + bad.front().to_string());
  }
  const std::size_t N = static_cast<std::size_t>(s.v) + 1;
  std::vector<std::uint32_t> t(N * N);
  for (std::uint32_t x = 0; x < N; ++x) {
    t[x] = x;
    t[x * N] = x;
    t[x * N + x] = 0;
  }
  for (const auto& b : s.blocks) {
    for (int i = 0; i < 3; ++i) {
      const auto x = static_cast<std::size_t>(b[i]), y = static_cast<std::size_t>(b[(i + 1) % 3]);
      const auto z = static_cast<std::uint32_t>(b[(i + 2) % 3]);
      t[x * N + y] = z;
      t[y * N + x] = z;
    }
  }
  return FiniteLoop::from_table(N, std::move(t));
}

TripleSystem sts_from_loop(const FiniteLoop& loop) {
  const std::size_t N = loop.dense_order();
  if (N < 4) throw std::invalid_argument("sts_from_loop: order must be at least 4");
  if (auto w = steiner_violation(loop)) throw std::invalid_argument("not a Steiner loop: " + w->to_string());
  TripleSystem s{static_cast<int>(N - 1), {}};
  for (Element x = 1; x < N; ++x) {
    for (Element y = x + 1; y < N; ++y) {
      const Element z = loop.mul(x, y);
      if (z > y) s.blocks.push_back({static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
    }
  }
  return canonical(std::move(s));
}

TripleSystem read_sts(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  TripleSystem s;
  auto number = [&](const std::string& tok) {
    if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(line, "bad integer '" + tok + "'");
    }
    return std::stoi(tok);
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "sts") throw ParseError(line, "expected header 'sts <v>'");
      s.v = number(toks[1]);
      have_header = true;
      continue;
    }
    if (toks.size() != 3) throw ParseError(line, "a block needs exactly three points");
    Block b{number(toks[0]), number(toks[1]), number(toks[2])};
    for (int p : b) {
      if (p < 1 || p > s.v) throw ParseError(line, "point " + std::to_string(p) + " outside 1.." + std::to_string(s.v));
    }
    s.blocks.push_back(b);
  }
  if (!have_header) throw ParseError(0, "missing 'sts' header");
  return s;
}

void write_sts(std::ostream& out, const TripleSystem& s) {
  const TripleSystem c = canonical(s);
  out << "sts " << c.v << "\n";
  for (const auto& b : c.blocks) out << b[0] << ' ' << b[1] << ' ' << b[2] << "\n";
}

}  // namespace steiner
