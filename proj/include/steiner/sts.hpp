#pragma once

// Steiner triple systems on points 1..v and their Steiner loops. Element 0
// of the loop is the adjoined identity, elements 1..v are the points.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "steiner/loop.hpp"

namespace steiner {

using Block = std::array<int, 3>;

struct TripleSystem {
  int v = 0;
  std::vector<Block> blocks;

  bool operator==(const TripleSystem&) const = default;
};

struct StsViolation {
  std::string kind;  // "congruence", "bad block", "duplicate pair", "missing pair"
  int a = 0, b = 0;  // the pair (or the block's first two points)

  std::string to_string() const;
};

std::vector<StsViolation> validate_sts(const TripleSystem& s);
bool is_valid_sts(const TripleSystem& s);

// Blocks sorted internally, then the list sorted.
TripleSystem canonical(TripleSystem s);

// {x, y, x^y} on the nonzero vectors of F2^3, written as integers 1..7.
TripleSystem fano_plane();

// Throws std::invalid_argument on an invalid system.
FiniteLoop loop_from_sts(const TripleSystem& s);

// Throws std::invalid_argument unless the loop is Steiner of order >= 4.
TripleSystem sts_from_loop(const FiniteLoop& loop);

// STS file (.sts).
TripleSystem read_sts(std::istream& in);
void write_sts(std::ostream& out, const TripleSystem& s);

}  // namespace steiner
