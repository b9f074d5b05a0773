#include "gateshare/solve.hpp"

#include "gateshare/algo_general.hpp"
#include "gateshare/algo_k3.hpp"
#include "gateshare/algo_k4.hpp"
#include "gateshare/exact.hpp"

namespace gateshare {

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "k3") return Algorithm::K3;
  if (name == "k4") return Algorithm::K4;
  if (name == "general") return Algorithm::General;
  if (name == "auto") return Algorithm::Auto;
  throw ParseError("unknown algorithm '" + std::string(name) +
                   "' (expected exact|k3|k4|general|auto)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Exact: return "exact";
    case Algorithm::K3: return "k3";
    case Algorithm::K4: return "k4";
    case Algorithm::General: return "general";
    case Algorithm::Auto: return "auto";
  }
  return "auto";
}

Solved run_solver(const Instance& inst, const SolveOptions& opts) {
  Algorithm algo = opts.algorithm;
  if (algo == Algorithm::Auto) {
    int k = max_tree_size(inst);
    algo = k <= 3 ? Algorithm::K3 : (k == 4 ? Algorithm::K4 : Algorithm::General);
  }

  Solved out;
  out.report.algorithm = algorithm_name(algo);
  out.report.merged_duplicate_trees = inst.merged_duplicates;
  switch (algo) {
    case Algorithm::Exact: {
      ExactResult r = solve_exact(inst, opts.exact_budget);
      out.circuit = std::move(r.circuit);
      out.report.exact = r.exact;
      out.report.phases.add("search", r.size);
      break;
    }
    case Algorithm::K3: {
      K3Result r = solve_k3(inst);
      out.circuit = std::move(r.circuit);
      out.report.phases = std::move(r.phases);
      break;
    }
    case Algorithm::K4: {
      K4Result r = solve_k4(inst);
      out.report.dedupe_saved = r.size_before_dedupe - circuit_size(r.circuit);
      out.circuit = std::move(r.circuit);
      out.report.phases = std::move(r.phases);
      out.report.fallback_used = r.fallback_used;
      break;
    }
    case Algorithm::General: {
      GeneralResult r = solve_general(inst, GeneralOptions{opts.candidate_cap});
      out.report.dedupe_saved = r.size_before_dedupe - circuit_size(r.circuit);
      out.circuit = std::move(r.circuit);
      out.report.phases = std::move(r.phases);
      out.report.guarantee_unverified = r.guarantee_unverified;
      break;
    }
    case Algorithm::Auto: break;  // resolved above
  }

  if (opts.dedupe) {
    int before = circuit_size(out.circuit);
    out.circuit = dedupe_gates(out.circuit);
    out.report.dedupe_saved += before - circuit_size(out.circuit);
  }

  ValidationReport rep = validate(out.circuit, inst);
  if (!rep.ok)
    throw std::logic_error("solver produced an invalid circuit: " + rep.summary());
  out.report.validated = true;
  out.report.size = rep.size;
  out.report.depth = rep.depth;
  return out;
}

}  // namespace gateshare
