/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "../metafinite.hpp"
#include "../structures.hpp"
#include "../syntax/ast.hpp"

namespace pts::harness {

/**
 * Seeded random source. Draws use plain modulo so a seed produces the same
 * instances on every platform.
 */
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform-ish draw from 0..n-1.
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
  bool coin(int num = 1, int den = 2) { return below(den) < num; }
  template <class T> const T &pick(const std::vector<T> &xs) { return xs[below(static_cast<int>(xs.size()))]; }

private:
  std::mt19937_64 eng_;
};

/// Per-case generator seed derived from the run seed.
inline std::uint64_t case_seed(std::uint64_t seed, int index) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index) * 0xBF58476D1CE4E5B9ULL + 1;
}

inline const std::vector<Weight> &weight_grid() {
  static const std::vector<Weight> grid{0, 1, rational(1, 2), 2, 3};
  return grid;
}

struct FoptOptions {
  bool leq = true, ci = false, cpi = false, incl = false, dotneg = true;
  bool literals = true;
  int depth = 3;
  int quantifiers = 2;
  std::vector<Var> pool{"x", "y", "z"};
};

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Rng &rng() { return rng_; }

  /// Domain 1..max_n, unary P and binary R filled at random.
  Structure structure(int max_n = 3) {
    Structure st(1 + rng_.below(max_n));
    st.declare_relation("P", 1);
    st.declare_relation("R", 2);
    for (Element a = 0; a < st.size(); ++a)
      if (rng_.coin())
        st.add_tuple("P", {a});
    for (Element a = 0; a < st.size(); ++a)
      for (Element b = 0; b < st.size(); ++b)
        if (rng_.coin(1, 3))
          st.add_tuple("R", {a, b});
    return st;
  }

  /// Weights from {0, 1, 1/2, 2, 3}; `nonempty` forces one nonzero row.
  ProbTeam team(int n, const VarSet &vars, bool nonempty) {
    ProbTeam t(vars);
    std::vector<Tuple> rows;
    for_each_tuple(n, vars.size(), [&](const Tuple &r) { rows.push_back(r); });
    for (const auto &r : rows)
      if (rng_.coin(2, 3))
        t.add(r, rng_.pick(weight_grid()));
    if (nonempty && t.empty())
      t.add(rng_.pick(rows), 1 + rng_.below(3));
    return t;
  }

  /// A random subset of `pool` (kept sorted).
  VarSet vars(const std::vector<Var> &pool, int min = 0) {
    VarSet out;
    for (const auto &v : pool)
      if (rng_.coin())
        out.push_back(v);
    for (std::size_t i = 0; static_cast<int>(out.size()) < min && i < pool.size(); ++i)
      if (std::find(out.begin(), out.end(), pool[i]) == out.end())
        out.push_back(pool[i]);
    return make_varset(out);
  }

  Term term(const std::vector<Var> &scope, int n, bool literals) {
    if (scope.empty() || (literals && rng_.coin(1, 5)))
      return Term::lit(rng_.below(n));
    return Term::var(rng_.pick(scope));
  }

  Qf atom(const std::vector<Var> &scope, int n, bool literals) {
    switch (rng_.below(3)) {
    case 0: return qf::atom("P", {term(scope, n, literals)});
    case 1: return qf::atom("R", {term(scope, n, literals), term(scope, n, literals)});
    default: return qf::eq(term(scope, n, literals), term(scope, n, literals));
    }
  }

  /// δ over `scope` with ¬ and ∧ (and ∨ when `with_or`).
  Qf delta(const std::vector<Var> &scope, int n, int depth, bool literals, bool with_or = false) {
    if (depth == 0 || rng_.coin(2, 5))
      return atom(scope, n, literals);
    int k = rng_.below(with_or ? 3 : 2);
    if (k == 0)
      return qf::neg(delta(scope, n, depth - 1, literals, with_or));
    Qf l = delta(scope, n, depth - 1, literals, with_or);
    Qf r = delta(scope, n, depth - 1, literals, with_or);
    return k == 1 ? qf::conj(l, r) : qf::disj(l, r);
  }

  Fopt fopt(const std::vector<Var> &scope, int n, const FoptOptions &o) {
    return fopt(scope, n, o, o.depth, o.quantifiers);
  }

  /// A closed SUM* sentence over f of arity k.
  MfFormula sum_star(int n, int k, int depth = 3, int quantifiers = 2) {
    return sum_star_formula({}, n, k, depth, quantifiers);
  }

  /// A closed FO(×, SUM) sentence without literals, f of arity k.
  MfFormula mf_sentence(int n, int k, int depth = 2, int quantifiers = 2) {
    return mf_formula({}, n, k, depth, quantifiers);
  }

  RStructure rstructure(int max_n, int k, const std::string &f = "f") {
    RStructure rs(structure(max_n), f, k);
    for_each_tuple(rs.base().size(), static_cast<std::size_t>(k), [&](const Tuple &t) {
      if (rng_.coin(2, 3))
        rs.set(t, rng_.pick(weight_grid()));
    });
    return rs;
  }

private:
  Fopt fopt(const std::vector<Var> &scope, int n, const FoptOptions &o, int depth, int quantifiers) {
    int choice = rng_.below(depth == 0 ? 1 : (quantifiers > 0 ? 6 : 4));
    switch (choice) {
    case 0: return fopt_atom(scope, n, o);
    case 1:
      if (o.dotneg)
        return fo::dotneg(fopt(scope, n, o, depth - 1, quantifiers));
      [[fallthrough]];
    case 2: return fo::conj(fopt(scope, n, o, depth - 1, quantifiers), fopt(scope, n, o, depth - 1, quantifiers));
    case 3: return fo::weak_or(fopt(scope, n, o, depth - 1, quantifiers), fopt(scope, n, o, depth - 1, quantifiers));
    default: {
      Var x = rng_.pick(o.pool);
      std::vector<Var> inner = scope;
      if (std::find(inner.begin(), inner.end(), x) == inner.end())
        inner.push_back(x);
      Fopt body = fopt(inner, n, o, depth - 1, quantifiers - 1);
      return choice == 4 ? fo::exists1(x, body) : fo::forall1(x, body);
    }
    }
  }

  Fopt fopt_atom(const std::vector<Var> &scope, int n, const FoptOptions &o) {
    std::vector<int> kinds{0};
    if (o.leq)
      kinds.push_back(1);
    if (o.ci)
      kinds.push_back(2);
    if (o.cpi)
      kinds.push_back(3);
    if (o.incl && !scope.empty())
      kinds.push_back(4);
    auto d = [&] { return delta(scope, n, 2, o.literals); };
    switch (rng_.pick(kinds)) {
    case 1: return fo::leq(d(), d());
    case 2: return fo::ci(d(), d(), d());
    case 3: return fo::cpi(d(), d(), d(), d());
    case 4: {
      std::size_t len = 1 + rng_.below(2);
      std::vector<Term> l, r;
      for (std::size_t i = 0; i < len; ++i) {
        l.push_back(Term::var(rng_.pick(scope)));
        r.push_back(Term::var(rng_.pick(scope)));
      }
      return fo::incl(l, r);
    }
    default: return fo::delta(d());
    }
  }

  NumTerm star_sum(const std::vector<Var> &scope, int n, int k) {
    static const std::vector<Var> names{"a", "b"};
    int nb = rng_.below(std::min(k, 2) + 1);
    std::vector<Var> bound(names.begin(), names.begin() + nb);
    std::vector<Term> args(static_cast<std::size_t>(k));
    std::vector<int> free_pos;
    for (int p = 0; p < k; ++p)
      free_pos.push_back(p);
    for (const auto &b : bound) {
      int i = rng_.below(static_cast<int>(free_pos.size()));
      args[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(i)])] = Term::var(b);
      free_pos.erase(free_pos.begin() + i);
    }
    std::vector<Var> inner = scope;
    inner.insert(inner.end(), bound.begin(), bound.end());
    for (int p : free_pos) {
      if (!bound.empty() && rng_.coin(1, 4))
        args[static_cast<std::size_t>(p)] = Term::var(rng_.pick(bound));
      else
        args[static_cast<std::size_t>(p)] = term(scope, n, true);
    }
    return mf::sum(bound, mf::fn("f", args), delta(inner, n, 2, true, true));
  }

  MfFormula sum_star_formula(const std::vector<Var> &scope, int n, int k, int depth, int quantifiers) {
    int choice = rng_.below(depth == 0 ? 2 : (quantifiers > 0 ? 7 : 5));
    switch (choice) {
    case 0: return mf::atom(delta(scope, n, 1, true, true));
    case 1: return mf::leq(star_sum(scope, n, k), star_sum(scope, n, k));
    case 2: return mf::neg(sum_star_formula(scope, n, k, depth - 1, quantifiers));
    case 3:
      return mf::conj(sum_star_formula(scope, n, k, depth - 1, quantifiers),
                      sum_star_formula(scope, n, k, depth - 1, quantifiers));
    case 4:
      return mf::disj(sum_star_formula(scope, n, k, depth - 1, quantifiers),
                      sum_star_formula(scope, n, k, depth - 1, quantifiers));
    default: {
      Var x = rng_.pick(std::vector<Var>{"x", "y", "z"});
      std::vector<Var> inner = scope;
      if (std::find(inner.begin(), inner.end(), x) == inner.end())
        inner.push_back(x);
      MfFormula body = sum_star_formula(inner, n, k, depth - 1, quantifiers - 1);
      return choice == 5 ? mf::exists(x, body) : mf::forall(x, body);
    }
    }
  }

  NumTerm numterm(const std::vector<Var> &scope, int n, int k, int depth, bool sums) {
    int choice = (scope.empty() && k > 0) ? 2 : rng_.below(depth == 0 ? 1 : (sums ? 3 : 2));
    if (choice == 0) {
      std::vector<Term> args;
      for (int i = 0; i < k; ++i)
        args.push_back(Term::var(rng_.pick(scope)));
      return mf::fn("f", args);
    }
    if (choice == 1)
      return mf::times(numterm(scope, n, k, depth - 1, sums), numterm(scope, n, k, depth - 1, sums));
    static const std::vector<Var> names{"a", "b"};
    std::vector<Var> bound;
    int nb = 1 + rng_.below(2);
    for (int i = 0; i < nb; ++i)
      if (std::find(scope.begin(), scope.end(), names[static_cast<std::size_t>(i)]) == scope.end())
        bound.push_back(names[static_cast<std::size_t>(i)]);
    if (bound.empty())
      bound.push_back(scope.empty() ? "a" : "c");
    std::vector<Var> inner = scope;
    inner.insert(inner.end(), bound.begin(), bound.end());
    // one level of nesting keeps the fixed points small
    return mf::sum(bound, numterm(inner, n, k, std::max(depth - 1, 0), false),
                   delta(inner, n, 1, false, true));
  }

  MfFormula mf_formula(const std::vector<Var> &scope, int n, int k, int depth, int quantifiers) {
    int choice = rng_.below(depth == 0 ? 2 : (quantifiers > 0 ? 7 : 5));
    if (choice == 0 && scope.empty())
      choice = 1;
    switch (choice) {
    case 0: return mf::atom(delta(scope, n, 1, false, true));
    case 1: return mf::leq(numterm(scope, n, k, 2, true), numterm(scope, n, k, 2, true));
    case 2: return mf::neg(mf_formula(scope, n, k, depth - 1, quantifiers));
    case 3:
      return mf::conj(mf_formula(scope, n, k, depth - 1, quantifiers),
                      mf_formula(scope, n, k, depth - 1, quantifiers));
    case 4:
      return mf::disj(mf_formula(scope, n, k, depth - 1, quantifiers),
                      mf_formula(scope, n, k, depth - 1, quantifiers));
    default: {
      Var x = rng_.pick(std::vector<Var>{"x", "y"});
      std::vector<Var> inner = scope;
      if (std::find(inner.begin(), inner.end(), x) == inner.end())
        inner.push_back(x);
      MfFormula body = mf_formula(inner, n, k, depth - 1, quantifiers - 1);
      return choice == 5 ? mf::exists(x, body) : mf::forall(x, body);
    }
    }
  }

  Rng rng_;
};

} // namespace pts::harness
