#include "gateshare/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gateshare {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json tree_to_json(const VarSet& t) {
  ordered_json arr = ordered_json::array();
  for (VarId v : t.vars()) arr.push_back(v);
  return arr;
}

VarSet tree_from_json(const ordered_json& arr) {
  if (!arr.is_array()) throw ParseError("tree must be an array of variable indices");
  VarSet t;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError("tree entries must be non-negative integers");
    t.add(v.get<VarId>());
  }
  return t;
}

ordered_json ref_to_json(NodeRef r) {
  if (r.is_input()) return "x" + std::to_string(r.var());
  return r.gate_index();
}

NodeRef ref_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return NodeRef::gate(j.get<int>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.size() >= 2 && s[0] == 'x') {
      try {
        return NodeRef::input(std::stoi(s.substr(1)));
      } catch (const std::exception&) {
      }
    }
    throw ParseError("bad node reference '" + s + "'");
  }
  throw ParseError("node reference must be an integer gate index or \"x<i>\"");
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["num_vars"] = inst.num_vars;
  j["operator"] = op_name(inst.op);
  j["trees"] = ordered_json::array();
  for (const VarSet& t : inst.trees) j["trees"].push_back(tree_to_json(t));
  return j.dump(2) + "\n";
}

Instance instance_from_json(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("num_vars") || !j.contains("trees"))
    throw ParseError("instance JSON needs num_vars and trees");
  Op op = j.contains("operator") ? op_from_name(j["operator"].get<std::string>()) : Op::And;
  std::vector<VarSet> trees;
  for (const auto& t : j["trees"]) trees.push_back(tree_from_json(t));
  return make_instance(j["num_vars"].get<int>(), op, std::move(trees));
}

std::string circuit_to_json(const Circuit& c) {
  ordered_json j;
  j["num_vars"] = c.num_vars;
  j["operator"] = op_name(c.op);
  j["gates"] = ordered_json::array();
  for (const Gate& g : c.gates) {
    ordered_json gate;
    gate["l"] = ref_to_json(g.a);
    gate["r"] = ref_to_json(g.b);
    j["gates"].push_back(std::move(gate));
  }
  j["outputs"] = ordered_json::array();
  for (const auto& [t, n] : c.outputs) {
    ordered_json out;
    out["tree"] = tree_to_json(t);
    out["node"] = ref_to_json(n);
    j["outputs"].push_back(std::move(out));
  }
  return j.dump(2) + "\n";
}

Circuit circuit_from_json(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Circuit c;
  if (!j.contains("num_vars") || !j.contains("gates") || !j.contains("outputs"))
    throw ParseError("circuit JSON needs num_vars, gates and outputs");
  c.num_vars = j["num_vars"].get<int>();
  c.op = j.contains("operator") ? op_from_name(j["operator"].get<std::string>()) : Op::And;
  for (const auto& g : j["gates"]) {
    if (!g.contains("l") || !g.contains("r")) throw ParseError("gate needs l and r");
    c.gates.push_back(Gate{ref_from_json(g["l"]), ref_from_json(g["r"])});
  }
  for (const auto& o : j["outputs"]) {
    if (!o.contains("tree") || !o.contains("node")) throw ParseError("output needs tree and node");
    c.outputs.emplace_back(tree_from_json(o["tree"]), ref_from_json(o["node"]));
  }
  std::sort(c.outputs.begin(), c.outputs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

Instance load_instance_file(const std::string& path) {
  std::string body = read_file(path);
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '{') return instance_from_json(body);
  return parse_instance_text(body);
}

Circuit load_circuit_file(const std::string& path) { return circuit_from_json(read_file(path)); }

std::string report_to_json(const SolveReport& r) {
  ordered_json j;
  j["algorithm"] = r.algorithm;
  j["size"] = r.size;
  j["depth"] = r.depth;
  j["phases"] = ordered_json::object();
  for (const auto& [name, gates] : r.phases.entries) j["phases"][name] = gates;
  j["validated"] = r.validated;
  if (r.algorithm == "exact") j["exact"] = r.exact;
  if (r.fallback_used) j["fallback_used"] = true;
  if (r.guarantee_unverified) j["guarantee_unverified"] = true;
  if (r.dedupe_saved > 0) j["dedupe_saved"] = r.dedupe_saved;
  if (r.merged_duplicate_trees > 0) j["merged_duplicate_trees"] = r.merged_duplicate_trees;
  return j.dump(2) + "\n";
}

}  // namespace gateshare
