/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

// Reference semantics computed straight from the sum definitions, over raw
// team rows. Nothing here goes through the formula evaluator.

#include <algorithm>
#include <vector>

#include "pts/structures.hpp"

namespace pts::oracle {

/// |X_{v̄=ā}|
inline Weight marginal(const ProbTeam &team, const std::vector<Var> &v, const Tuple &a) {
  std::vector<std::size_t> pos;
  for (const auto &x : v)
    pos.push_back(static_cast<std::size_t>(std::find(team.vars().begin(), team.vars().end(), x) -
                                           team.vars().begin()));
  Weight sum = 0;
  for (const auto &[row, w] : team.rows()) {
    bool match = true;
    for (std::size_t i = 0; i < pos.size(); ++i)
      match = match && row[pos[i]] == a[i];
    if (match)
      sum += w;
  }
  return sum;
}

inline std::vector<Tuple> all_tuples(int n, std::size_t k) {
  std::vector<Tuple> out;
  Tuple t(k, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == n)
      t[--i] = 0;
    if (i == 0)
      return out;
  }
}

/// v̄0 ≈ v̄1
inline bool marginal_identity(int n, const ProbTeam &team, const std::vector<Var> &v0,
                              const std::vector<Var> &v1) {
  for (const auto &a : all_tuples(n, v0.size()))
    if (marginal(team, v0, a) != marginal(team, v1, a))
      return false;
  return true;
}

/// v̄1 ⊥⊥_{v̄0} v̄2: quantifies over every s : Var(v̄0 v̄1 v̄2) → A.
inline bool prob_indep(int n, const ProbTeam &team, const std::vector<Var> &v0, const std::vector<Var> &v1,
                       const std::vector<Var> &v2) {
  std::vector<Var> vars;
  for (const auto *vs : {&v0, &v1, &v2})
    for (const auto &x : *vs)
      if (std::find(vars.begin(), vars.end(), x) == vars.end())
        vars.push_back(x);
  auto pick = [&](const Tuple &s, std::initializer_list<const std::vector<Var> *> parts) {
    std::pair<std::vector<Var>, Tuple> out;
    for (const auto *vs : parts)
      for (const auto &x : *vs) {
        out.first.push_back(x);
        out.second.push_back(s[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), x) - vars.begin())]);
      }
    return out;
  };
  auto m = [&](const std::pair<std::vector<Var>, Tuple> &p) { return marginal(team, p.first, p.second); };
  for (const auto &s : all_tuples(n, vars.size())) {
    Weight lhs = m(pick(s, {&v0, &v1})) * m(pick(s, {&v0, &v2}));
    Weight rhs = m(pick(s, {&v0})) * m(pick(s, {&v0, &v1, &v2}));
    if (lhs != rhs)
      return false;
  }
  return true;
}

} // namespace pts::oracle
