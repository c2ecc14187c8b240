#include "steiner/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace steiner {

std::string RunReport::get(const std::string& key) const {
  for (auto it = results.rbegin(); it != results.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return {};
}

void RunReport::write_text(std::ostream& out) const {
  out << command << "\n";
  std::size_t width = 0;
  for (const auto& [k, v] : inputs) width = std::max(width, k.size());
  for (const auto& [k, v] : results) width = std::max(width, k.size());
  for (const auto& [k, v] : inputs) out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  for (const auto& [k, v] : results) out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  std::ostringstream t;
  t << std::fixed << std::setprecision(3) << elapsed_seconds;
  out << "  (" << t.str() << " s, exit " << exit_status << ")\n";
}

void RunReport::write_machine(std::ostream& out) const {
  out << "command=" << command << "\n";
  for (const auto& [k, v] : inputs) out << "input." << k << "=" << v << "\n";
  for (const auto& [k, v] : results) out << k << "=" << v << "\n";
  out << "exit=" << exit_status << "\n";
}

std::string RunReport::machine() const {
  std::ostringstream s;
  write_machine(s);
  return s.str();
}

}  // namespace steiner
