#pragma once

// Result record shared by the CLI commands. The machine format is one
// key=value per line in insertion order; elapsed time is left out of it so
// repeated runs compare byte for byte.

#include <iosfwd>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace steiner {

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> results;
  double elapsed_seconds = 0;
  int exit_status = 0;

  void input(const std::string& key, const std::string& value) { inputs.emplace_back(key, value); }
  void add(const std::string& key, const std::string& value) { results.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { results.emplace_back(key, value); }
  void add(const std::string& key, bool value) { results.emplace_back(key, value ? "true" : "false"); }
  template <typename Int>
  void add(const std::string& key, Int value) requires std::is_integral_v<Int> {
    results.emplace_back(key, std::to_string(value));
  }

  // Value of the last entry with this key, or "".
  std::string get(const std::string& key) const;

  void write_text(std::ostream& out) const;
  void write_machine(std::ostream& out) const;
  std::string machine() const;
};

}  // namespace steiner
