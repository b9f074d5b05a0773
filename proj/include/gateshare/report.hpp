#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gateshare {

// Gate accounting per solver phase, in execution order. Entries hold the
// number of gates a phase built (before any final dedupe pass).
struct PhaseReport {
  std::vector<std::pair<std::string, int>> entries;

  void add(std::string name, int gates) { entries.emplace_back(std::move(name), gates); }

  int get(std::string_view name) const {
    for (const auto& [n, g] : entries)
      if (n == name) return g;
    return 0;
  }

  int total() const {
    int sum = 0;
    for (const auto& [n, g] : entries) {
      (void)n;
      sum += g;
    }
    return sum;
  }
};

}  // namespace gateshare
