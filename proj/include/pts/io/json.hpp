/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "../metafinite.hpp"
#include "../structures.hpp"

namespace pts::io {

using json = nlohmann::json;

/// Weights are written as strings "p" or "p/q"; integers are also accepted.
inline Weight weight_from_json(const json &j) {
  if (j.is_number_integer())
    return Weight(j.get<long long>());
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  throw Error("weight must be an integer or a \"p/q\" string");
}

inline Tuple tuple_from_json(const json &j) {
  if (!j.is_array())
    throw Error("tuple must be an array of elements");
  Tuple t;
  for (const auto &e : j) {
    if (!e.is_number_integer())
      throw Error("tuple entries must be integers");
    t.push_back(e.get<Element>());
  }
  return t;
}

/**
 * {"domain_size": n, "relations": {"R": [[0,1], ...]}, "constants": {"c": 0}}
 * A relation may also be {"arity": k, "tuples": [...]}, which is how empty
 * relations keep their arity.
 */
inline Structure structure_from_json(const json &j) {
  if (!j.is_object() || !j.contains("domain_size"))
    throw Error("structure needs a domain_size");
  Structure st(j.at("domain_size").get<int>());
  if (j.contains("relations"))
    for (const auto &[name, rel] : j.at("relations").items()) {
      const json *tuples = &rel;
      if (rel.is_object()) {
        st.declare_relation(name, rel.at("arity").get<int>());
        tuples = &rel.at("tuples");
      } else {
        st.declare_relation(name, std::nullopt);
      }
      if (!tuples->is_array())
        throw Error("relation " + name + " must list its tuples");
      for (const auto &t : *tuples)
        st.add_tuple(name, tuple_from_json(t));
    }
  if (j.contains("constants"))
    for (const auto &[name, e] : j.at("constants").items())
      st.set_constant(name, e.get<Element>());
  return st;
}

inline json to_json(const Structure &st) {
  json rels = json::object();
  for (const auto &[name, rel] : st.relations()) {
    json tuples = json::array();
    for (const auto &t : rel.tuples)
      tuples.push_back(t);
    if (rel.tuples.empty() && rel.arity)
      rels[name] = {{"arity", *rel.arity}, {"tuples", tuples}};
    else
      rels[name] = tuples;
  }
  json consts = json::object();
  for (const auto &[name, e] : st.constants())
    consts[name] = e;
  return {{"domain_size", st.size()}, {"relations", rels}, {"constants", consts}};
}

/// {"variables": [...], "rows": [{"assignment": [...], "weight": "p/q"}]}
/// Assignments list values in the order of "variables".
inline ProbTeam team_from_json(const json &j) {
  if (!j.is_object())
    throw Error("team must be a JSON object");
  std::vector<Var> vars;
  if (j.contains("variables"))
    vars = j.at("variables").get<std::vector<Var>>();
  if (make_varset(vars).size() != vars.size())
    throw Error("team variables must be distinct");
  ProbTeam team(vars);
  if (j.contains("rows"))
    for (const auto &row : j.at("rows")) {
      Tuple values = tuple_from_json(row.at("assignment"));
      if (values.size() != vars.size())
        throw ArityMismatch("team row has " + std::to_string(values.size()) + " values for " +
                            std::to_string(vars.size()) + " variables");
      team.add(Assignment(vars, values), weight_from_json(row.at("weight")));
    }
  return team;
}

inline json to_json(const ProbTeam &team) {
  json rows = json::array();
  for (const auto &[row, w] : team.rows())
    rows.push_back({{"assignment", row}, {"weight", to_string(w)}});
  return {{"variables", team.vars()}, {"rows", rows}};
}

/// Structure JSON plus "weight_fn": {"name", "arity", "rows": [{"tuple", "weight"}]}.
inline RStructure rstructure_from_json(const json &j) {
  Structure st = structure_from_json(j);
  if (!j.contains("weight_fn"))
    throw Error("R-structure needs a weight_fn");
  const json &f = j.at("weight_fn");
  RStructure rs(st, f.at("name").get<std::string>(), f.at("arity").get<int>());
  if (f.contains("rows"))
    for (const auto &row : f.at("rows"))
      rs.set(tuple_from_json(row.at("tuple")), weight_from_json(row.at("weight")));
  return rs;
}

inline json to_json(const RStructure &rs) {
  json out = to_json(rs.base());
  json rows = json::array();
  for (const auto &[t, w] : rs.weights())
    rows.push_back({{"tuple", t}, {"weight", to_string(w)}});
  out["weight_fn"] = {{"name", rs.fn()}, {"arity", rs.arity()}, {"rows", rows}};
  return out;
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(path + ": " + e.what());
  }
}

} // namespace pts::io
