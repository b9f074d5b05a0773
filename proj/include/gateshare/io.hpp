#pragma once

#include <string>
#include <string_view>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/report.hpp"

namespace gateshare {

// JSON is the canonical interchange format; keys are emitted in a fixed
// order so identical inputs produce identical bytes.
//
// Instance: {"num_vars": n, "operator": "and", "trees": [[...], ...]}
// Circuit:  {"num_vars": n, "operator": "and",
//            "gates": [{"l": ref, "r": ref}, ...],
//            "outputs": [{"tree": [...], "node": ref}, ...]}
// where ref is "x<i>" for inputs and a gate index integer otherwise.

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(std::string_view json_text);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(std::string_view json_text);

// Reads a file as instance: JSON when the content starts with '{', the text
// format otherwise.
Instance load_instance_file(const std::string& path);
Circuit load_circuit_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

struct SolveReport {
  std::string algorithm;
  int size = 0;
  int depth = 0;
  PhaseReport phases;
  bool validated = false;
  bool exact = true;                  // only meaningful for the exact solver
  bool fallback_used = false;         // k4 cover fallback
  bool guarantee_unverified = false;  // general solver candidate cap hit
  int dedupe_saved = 0;
  int merged_duplicate_trees = 0;
};

std::string report_to_json(const SolveReport& r);

}  // namespace gateshare
