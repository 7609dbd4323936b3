#pragma once

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "locohom/errors.hpp"
#include "locohom/graph.hpp"
#include "locohom/hom.hpp"

namespace locohom {

struct Witness {
  bool answer = false;
  Mapping mapping;  // 0-based in memory, 1-based on disk
  std::optional<Graph> host;
};

inline nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json j;
  j["answer"] = w.answer ? "yes" : "no";
  if (w.answer) {
    auto arr = nlohmann::json::array();
    for (Vertex x : w.mapping) arr.push_back(x + 1);
    j["mapping"] = std::move(arr);
    if (w.host) j["host"] = to_graph_string(*w.host);
  }
  return j;
}

inline Witness witness_from_json(const nlohmann::json& j) {
  Witness w;
  if (!j.is_object() || !j.contains("answer") || !j["answer"].is_string()) throw InputError("witness needs an \"answer\" string");
  const std::string answer = j["answer"].get<std::string>();
  if (answer != "yes" && answer != "no") throw InputError("answer must be \"yes\" or \"no\"");
  w.answer = answer == "yes";
  if (!w.answer) return w;
  if (!j.contains("mapping") || !j["mapping"].is_array()) throw InputError("yes-witness needs a \"mapping\" array");
  for (const auto& x : j["mapping"]) {
    if (!x.is_number_integer()) throw InputError("mapping entries must be integers");
    long long id = x.get<long long>();
    if (id < 1 || id > std::numeric_limits<int>::max()) throw InputError("mapping entry out of range: " + std::to_string(id));
    w.mapping.push_back(static_cast<Vertex>(id - 1));
  }
  if (j.contains("host")) {
    if (!j["host"].is_string()) throw InputError("\"host\" must be a graph string");
    w.host = parse_graph(j["host"].get<std::string>());
  }
  return w;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline Graph read_graph_file(const std::string& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Witness read_witness_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return witness_from_json(j);
}

}  // namespace locohom
