/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "weight.hpp"

namespace pts {

/// Domain elements are 0..n-1.
using Element = int;
using Var = std::string;
using Tuple = std::vector<Element>;

/** Sorted, duplicate-free list of variable names. */
using VarSet = std::vector<Var>;

inline VarSet make_varset(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

inline bool is_subset(const VarSet &small, const VarSet &big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline VarSet set_union(const VarSet &a, const VarSet &b) {
  VarSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VarSet set_minus(const VarSet &a, const VarSet &b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string join_vars(const VarSet &vs) {
  std::string out;
  for (const auto &v : vs)
    out += (out.empty() ? "" : ",") + v;
  return "{" + out + "}";
}

/// Iterates over A^k in lexicographic order, last position fastest.
template <class F> void for_each_tuple(int domain_size, std::size_t k, F &&f) {
  Tuple t(k, 0);
  while (true) {
    f(static_cast<const Tuple &>(t));
    std::size_t i = k;
    while (i > 0) {
      if (++t[i - 1] < domain_size)
        break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0)
      return;
  }
}

/**
 * A finite relational structure with constants. Equality is implicit and
 * never stored. A relation whose arity is unknown (declared without tuples
 * from a file) accepts atoms of any arity and is empty.
 */
class Structure {
public:
  struct Relation {
    std::optional<int> arity;
    std::set<Tuple> tuples;
  };

  explicit Structure(int domain_size) : size_(domain_size) {
    if (domain_size < 1)
      throw Error("domain size must be at least 1");
  }

  int size() const noexcept { return size_; }

  void declare_relation(const std::string &name, std::optional<int> arity) {
    if (name == "=")
      throw Error("equality is implicit");
    auto &rel = relations_[name];
    if (arity && rel.arity && *rel.arity != *arity)
      throw ArityMismatch("relation " + name + " redeclared with another arity");
    if (arity)
      rel.arity = arity;
  }

  void add_tuple(const std::string &name, Tuple tuple) {
    declare_relation(name, static_cast<int>(tuple.size()));
    for (Element e : tuple)
      check_element(e);
    relations_[name].tuples.insert(std::move(tuple));
  }

  void set_constant(const std::string &name, Element e) {
    check_element(e);
    constants_[name] = e;
  }

  bool has_relation(const std::string &name) const { return relations_.count(name) != 0; }

  bool holds(const std::string &name, std::span<const Element> args) const {
    auto it = relations_.find(name);
    if (it == relations_.end())
      throw Error("unknown relation " + name);
    const auto &rel = it->second;
    if (rel.arity && *rel.arity != static_cast<int>(args.size()))
      throw ArityMismatch("relation " + name + " has arity " + std::to_string(*rel.arity) +
                          ", applied to " + std::to_string(args.size()) + " arguments");
    return rel.tuples.count(Tuple(args.begin(), args.end())) != 0;
  }

  Element constant(const std::string &name) const {
    auto it = constants_.find(name);
    if (it == constants_.end())
      throw Error("unknown constant $" + name);
    return it->second;
  }

  const std::map<std::string, Relation> &relations() const noexcept { return relations_; }
  const std::map<std::string, Element> &constants() const noexcept { return constants_; }

  void check_element(Element e) const {
    if (e < 0 || e >= size_)
      throw Error("element " + std::to_string(e) + " outside domain of size " +
                  std::to_string(size_));
  }

private:
  int size_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, Element> constants_;
};

/// A total function from its (sorted) variable set to domain elements.
class Assignment {
public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<Var, Element>> init)
      : bindings_(init.begin(), init.end()) {
    normalize();
  }
  Assignment(const VarSet &vars, std::span<const Element> values) {
    if (vars.size() != values.size())
      throw ArityMismatch("assignment arity mismatch");
    bindings_.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
      bindings_.emplace_back(vars[i], values[i]);
    normalize();
  }

  std::optional<Element> get(const std::string &var) const {
    auto it = find(var);
    if (it == bindings_.end() || it->first != var)
      return std::nullopt;
    return it->second;
  }

  Element at(const std::string &var) const {
    if (auto v = get(var))
      return *v;
    throw VarsNotInDomain("variable " + var + " is not assigned");
  }

  /// s(a/x)
  Assignment with(const Var &var, Element value) const {
    Assignment out = *this;
    auto it = out.find(var);
    if (it != out.bindings_.end() && it->first == var)
      it->second = value;
    else
      out.bindings_.emplace(it, var, value);
    return out;
  }

  VarSet domain() const {
    VarSet out;
    for (const auto &[v, _] : bindings_)
      out.push_back(v);
    return out;
  }

  const std::vector<std::pair<Var, Element>> &bindings() const noexcept { return bindings_; }

  auto operator<=>(const Assignment &) const = default;
  bool operator==(const Assignment &) const = default;

private:
  std::vector<std::pair<Var, Element>>::iterator find(const std::string &var) {
    return std::lower_bound(bindings_.begin(), bindings_.end(), var,
                            [](const auto &b, const std::string &v) { return b.first < v; });
  }
  std::vector<std::pair<Var, Element>>::const_iterator find(const std::string &var) const {
    return std::lower_bound(bindings_.begin(), bindings_.end(), var,
                            [](const auto &b, const std::string &v) { return b.first < v; });
  }
  void normalize() {
    std::sort(bindings_.begin(), bindings_.end());
    for (std::size_t i = 1; i < bindings_.size(); ++i)
      if (bindings_[i].first == bindings_[i - 1].first)
        throw Error("variable " + bindings_[i].first + " bound twice");
  }

  std::vector<std::pair<Var, Element>> bindings_;
};

namespace detail {

inline std::size_t index_of(const VarSet &vars, const Var &v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v)
    return vars.size();
  return static_cast<std::size_t>(it - vars.begin());
}

/// Row over `vars` with x set to a; x is inserted at its sorted position when
/// it is not in `vars` (see vars_with).
inline Tuple row_with(const VarSet &vars, const Tuple &row, const Var &x, Element a) {
  std::size_t i = index_of(vars, x);
  Tuple out = row;
  if (i < vars.size()) {
    out[i] = a;
  } else {
    auto pos = std::lower_bound(vars.begin(), vars.end(), x) - vars.begin();
    out.insert(out.begin() + pos, a);
  }
  return out;
}

inline VarSet vars_with(const VarSet &vars, const Var &x) {
  VarSet out = vars;
  auto it = std::lower_bound(out.begin(), out.end(), x);
  if (it == out.end() || *it != x)
    out.insert(it, x);
  return out;
}

} // namespace detail

/// A set of assignments over a common variable domain (team semantics).
class PlainTeam {
public:
  explicit PlainTeam(VarSet vars = {}) : vars_(make_varset(std::move(vars))) {}

  void insert(Tuple row) {
    if (row.size() != vars_.size())
      throw ArityMismatch("team row has wrong length");
    rows_.insert(std::move(row));
  }
  void insert(const Assignment &s) { insert(row_of(s)); }

  const VarSet &vars() const noexcept { return vars_; }
  const std::set<Tuple> &rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }
  Assignment assignment(const Tuple &row) const { return Assignment(vars_, row); }

  /// X(a/x)
  PlainTeam extend(Element a, const Var &x) const {
    PlainTeam out(detail::vars_with(vars_, x));
    for (const auto &row : rows_)
      out.rows_.insert(detail::row_with(vars_, row, x, a));
    return out;
  }

  bool operator==(const PlainTeam &) const = default;

private:
  Tuple row_of(const Assignment &s) const {
    if (s.domain() != vars_)
      throw VarsNotInDomain("assignment domain differs from team domain");
    Tuple row;
    for (const auto &[_, e] : s.bindings())
      row.push_back(e);
    return row;
  }

  VarSet vars_;
  std::set<Tuple> rows_;
};

/**
 * A probabilistic team: a weight for every assignment over `vars()`.
 * Storage is sparse: only nonzero weights are kept, every other assignment
 * carries weight 0.
 */
class ProbTeam {
public:
  explicit ProbTeam(VarSet vars = {}) : vars_(make_varset(std::move(vars))) {}

  /// Adds `w` to the weight of `row`.
  void add(Tuple row, const Weight &w) {
    if (row.size() != vars_.size())
      throw ArityMismatch("team row has wrong length");
    if (w < 0)
      throw Error("negative weight " + to_string(w));
    if (w == 0)
      return;
    auto [it, inserted] = rows_.try_emplace(std::move(row), w);
    if (!inserted)
      it->second += w;
  }
  void add(const Assignment &s, const Weight &w) {
    if (s.domain() != vars_)
      throw VarsNotInDomain("assignment domain differs from team domain");
    Tuple row;
    for (const auto &[_, e] : s.bindings())
      row.push_back(e);
    add(std::move(row), w);
  }

  Weight weight(const Tuple &row) const {
    auto it = rows_.find(row);
    return it == rows_.end() ? Weight(0) : it->second;
  }

  const VarSet &vars() const noexcept { return vars_; }
  /// Nonzero rows only.
  const std::map<Tuple, Weight> &rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }
  Assignment assignment(const Tuple &row) const { return Assignment(vars_, row); }

  Weight total() const {
    Weight sum = 0;
    for (const auto &[_, w] : rows_)
      sum += w;
    return sum;
  }

  bool operator==(const ProbTeam &) const = default;

private:
  VarSet vars_;
  std::map<Tuple, Weight> rows_;
};

/// supp(X): assignments with nonzero weight.
inline std::vector<Assignment> support(const ProbTeam &team) {
  std::vector<Assignment> out;
  for (const auto &[row, _] : team.rows())
    out.push_back(team.assignment(row));
  return out;
}

inline PlainTeam support_team(const ProbTeam &team) {
  PlainTeam out(team.vars());
  for (const auto &[row, _] : team.rows())
    out.insert(row);
  return out;
}

/// Normalizes a nonempty team to total weight exactly 1.
inline ProbTeam distr(const ProbTeam &team) {
  if (team.empty())
    throw NonemptyRequired("distr of an empty probabilistic team");
  Weight total = team.total();
  ProbTeam out(team.vars());
  for (const auto &[row, w] : team.rows())
    out.add(row, w / total);
  return out;
}

/// X(a/x): each weight moves to the modified assignment; collisions add up.
inline ProbTeam extend(const ProbTeam &team, Element a, const Var &x) {
  ProbTeam out(detail::vars_with(team.vars(), x));
  for (const auto &[row, w] : team.rows())
    out.add(detail::row_with(team.vars(), row, x, a), w);
  return out;
}

/// X(ā/x̄) for distinct x̄, applied left to right.
inline ProbTeam extend(const ProbTeam &team, std::span<const Element> as,
                       std::span<const Var> xs) {
  if (as.size() != xs.size())
    throw ArityMismatch("extend: tuple lengths differ");
  ProbTeam out = team;
  for (std::size_t i = 0; i < as.size(); ++i)
    out = extend(out, as[i], xs[i]);
  return out;
}

/// X↾V, summing the weights of all extensions of each projection.
inline ProbTeam restrict(const ProbTeam &team, const VarSet &vars) {
  VarSet v = make_varset(vars);
  if (!is_subset(v, team.vars()))
    throw VarsNotInDomain("cannot restrict team over " + join_vars(team.vars()) + " to " +
                          join_vars(v));
  std::vector<std::size_t> keep;
  for (const auto &x : v)
    keep.push_back(detail::index_of(team.vars(), x));
  ProbTeam out(v);
  for (const auto &[row, w] : team.rows()) {
    Tuple proj;
    proj.reserve(keep.size());
    for (auto i : keep)
      proj.push_back(row[i]);
    out.add(std::move(proj), w);
  }
  return out;
}

/// Renames team variables positionally (used when translations pick their
/// own variable names).
inline ProbTeam rename_vars(const ProbTeam &team, const std::vector<Var> &from,
                            const std::vector<Var> &to) {
  if (from.size() != to.size())
    throw ArityMismatch("rename_vars: lengths differ");
  std::vector<Var> renamed;
  for (const auto &v : team.vars()) {
    auto it = std::find(from.begin(), from.end(), v);
    renamed.push_back(it == from.end() ? v : to[static_cast<std::size_t>(it - from.begin())]);
  }
  ProbTeam out(renamed);
  if (out.vars().size() != team.vars().size())
    throw Error("rename_vars: renaming merges variables");
  for (const auto &[row, w] : team.rows()) {
    Assignment s;
    for (std::size_t i = 0; i < row.size(); ++i)
      s = s.with(renamed[i], row[i]);
    out.add(s, w);
  }
  return out;
}

} // namespace pts
