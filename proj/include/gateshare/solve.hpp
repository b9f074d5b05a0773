#pragma once

#include <string>
#include <string_view>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/io.hpp"

namespace gateshare {

enum class Algorithm { Exact, K3, K4, General, Auto };

Algorithm algorithm_from_name(std::string_view name);
std::string algorithm_name(Algorithm a);

struct SolveOptions {
  Algorithm algorithm = Algorithm::Auto;
  long long exact_budget = 20'000'000;
  int candidate_cap = 100000;
  bool dedupe = false;  // extra structural-hashing pass on the final circuit
};

struct Solved {
  Circuit circuit;
  SolveReport report;
};

// Runs the requested solver (Auto picks by the maximum tree size: k3 for
// k <= 3, k4 for k = 4, general otherwise), validates the result, and fills
// the report. Throws std::logic_error if the produced circuit fails its own
// validation.
Solved run_solver(const Instance& inst, const SolveOptions& opts = {});

}  // namespace gateshare
