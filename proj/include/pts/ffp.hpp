/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "structures.hpp"
#include "syntax/ast.hpp"
#include "syntax/ops.hpp"
#include "syntax/printer.hpp"

namespace pts {

/// An exact rational, or undef (std::nullopt).
using FfpValue = std::optional<Rational>;

inline std::string to_string(const FfpValue &v) { return v ? to_string(*v) : "undef"; }

/// A k-ary function over the domain; tuples without an entry are undef.
struct PartialFn {
  int arity = 0;
  std::map<Tuple, Rational> values;

  FfpValue at(const Tuple &t) const {
    auto it = values.find(t);
    if (it == values.end())
      return std::nullopt;
    return it->second;
  }

  bool operator==(const PartialFn &) const = default;
};

/**
 * An R-algebra over the plain set 0..n-1: named total functions into the
 * rationals (tuples without an entry map to 0) and a unary ranking.
 */
class RAlgebra {
public:
  struct Function {
    int arity;
    std::map<Tuple, Rational> values;
  };

  explicit RAlgebra(int domain_size, std::string ranking = "E")
      : size_(domain_size), ranking_(std::move(ranking)) {
    if (domain_size < 1)
      throw Error("domain size must be at least 1");
  }

  int size() const noexcept { return size_; }
  const std::string &ranking() const noexcept { return ranking_; }
  const std::map<std::string, Function> &functions() const noexcept { return functions_; }

  void declare(const std::string &name, int arity) {
    auto [it, inserted] = functions_.try_emplace(name, Function{arity, {}});
    if (!inserted && it->second.arity != arity)
      throw ArityMismatch("function " + name + " redeclared with another arity");
  }

  void set(const std::string &name, Tuple t, const Rational &v) {
    declare(name, static_cast<int>(t.size()));
    for (Element e : t)
      if (e < 0 || e >= size_)
        throw Error("element " + std::to_string(e) + " outside the domain");
    if (v == 0)
      functions_[name].values.erase(t);
    else
      functions_[name].values[std::move(t)] = v;
  }

  bool has(const std::string &name) const { return functions_.count(name) != 0; }

  Rational apply(const std::string &name, const Tuple &t) const {
    auto it = functions_.find(name);
    if (it == functions_.end())
      throw EvalError("unknown function " + name);
    if (it->second.arity != static_cast<int>(t.size()))
      throw ArityMismatch("function " + name + " has arity " + std::to_string(it->second.arity));
    auto v = it->second.values.find(t);
    return v == it->second.values.end() ? Rational(0) : v->second;
  }

  /// E(a) as an integer; the ranking must be a bijection onto 0..n-1.
  long long rank(Element a) const {
    Rational r = apply(ranking_, {a});
    if (boost::multiprecision::denominator(r) != 1)
      throw EvalError("ranking value is not an integer");
    return static_cast<long long>(boost::multiprecision::numerator(r));
  }

  void check_ranking() const {
    std::set<long long> seen;
    for (Element a = 0; a < size_; ++a) {
      long long r = rank(a);
      if (r < 0 || r >= size_ || !seen.insert(r).second)
        throw Error("ranking " + ranking_ + " is not a bijection onto 0..n-1");
    }
  }

  /// Sets the ranking to the identity.
  void set_identity_ranking() {
    declare(ranking_, 1);
    for (Element a = 0; a < size_; ++a)
      set(ranking_, {a}, a);
  }

private:
  int size_;
  std::string ranking_;
  std::map<std::string, Function> functions_;
};

/// E_k: Σ E(a_i)·n^{k-1-i}, a bijection A^k → {0, ..., n^k - 1}.
inline long long rank_tuple(const RAlgebra &alg, const Tuple &t) {
  long long code = 0;
  for (Element a : t)
    code = code * alg.size() + alg.rank(a);
  return code;
}

struct FixedPointStats {
  std::string z;
  int arity;
  int iterations;
  long long bound; ///< n^arity + 1
};

/**
 * Evaluates FFP terms. Fixed points whose body has no free variables besides
 * its parameters (and no reference to an enclosing fixed-point variable) are
 * computed once per term node and reused.
 */
class FfpEvaluator {
public:
  explicit FfpEvaluator(const RAlgebra &alg, std::ostream *log = nullptr) : alg_(alg), log_(log) {}

  FfpValue eval(const Assignment &s, const FfpTerm &t) { return eval(s, t, Env{}); }

  PartialFn fixed_point(const std::string &z, const std::vector<Var> &params, const FfpTerm &body,
                        const Assignment &outer = {}) {
    return fixed_point(z, params, body, outer, Env{});
  }

  const std::vector<FixedPointStats> &stats() const noexcept { return stats_; }

private:
  using Env = std::map<std::string, const PartialFn *>;

  static FfpValue mul(const FfpValue &a, const FfpValue &b) {
    if (a && b)
      return *a * *b;
    if (a && *a == 0)
      return Rational(0);
    if (b && *b == 0)
      return Rational(0);
    return std::nullopt;
  }

  static FfpValue div(const FfpValue &a, const FfpValue &b) {
    if (!b)
      return (a && *a == 0) ? FfpValue(Rational(0)) : std::nullopt;
    if (!a)
      return std::nullopt;
    if (*b == 0) {
      if (*a == 0)
        return Rational(0);
      throw DivisionByZero("division of " + to_string(*a) + " by zero");
    }
    return *a / *b;
  }

  static int sign(const Rational &r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

  FfpValue eval(const Assignment &s, const FfpTerm &t, const Env &env) {
    return std::visit(
        overloaded{
            [&](const ff::Const &c) -> FfpValue { return Rational(c.value); },
            [&](const ff::Fn &f) -> FfpValue {
              Tuple args;
              for (const auto &a : f.args) {
                Element e = s.at(a);
                if (e < 0 || e >= alg_.size())
                  throw Error("element outside the domain");
                args.push_back(e);
              }
              if (auto it = env.find(f.fn); it != env.end()) {
                if (it->second->arity != static_cast<int>(args.size()))
                  throw ArityMismatch("fixed-point variable " + f.fn + " applied to " +
                                      std::to_string(args.size()) + " arguments");
                return it->second->at(args);
              }
              return alg_.apply(f.fn, args);
            },
            [&](const ff::Bin &b) -> FfpValue {
              FfpValue l = eval(s, b.lhs, env);
              FfpValue r = eval(s, b.rhs, env);
              switch (b.op) {
              case ff::Op::Add: return (l && r) ? FfpValue(*l + *r) : std::nullopt;
              case ff::Op::Sub: return (l && r) ? FfpValue(*l - *r) : std::nullopt;
              case ff::Op::Mul: return mul(l, r);
              case ff::Op::Div: return div(l, r);
              }
              return std::nullopt;
            },
            [&](const ff::Sign &g) -> FfpValue {
              FfpValue v = eval(s, g.arg, env);
              return v ? FfpValue(Rational(sign(*v))) : std::nullopt;
            },
            [&](const ff::Max &m) -> FfpValue {
              FfpValue best;
              bool undef = false;
              for_each_tuple(alg_.size(), m.vars.size(), [&](const Tuple &as) {
                if (undef)
                  return;
                Assignment inner = s;
                for (std::size_t i = 0; i < as.size(); ++i)
                  inner = inner.with(m.vars[i], as[i]);
                FfpValue v = eval(inner, m.body, env);
                if (!v)
                  undef = true;
                else if (!best || *v > *best)
                  best = v;
              });
              return undef ? std::nullopt : best;
            },
            [&](const ff::Fp &f) -> FfpValue {
              Tuple args;
              for (const auto &a : f.args)
                args.push_back(s.at(a));
              if (closed(t, f, env)) {
                auto it = cache_.find(t.id());
                if (it == cache_.end())
                  it = cache_.emplace(t.id(), CacheEntry{t, fixed_point(f.z, f.params, f.body, {}, Env{})})
                           .first;
                return it->second.value.at(args);
              }
              return fixed_point(f.z, f.params, f.body, s, env).at(args);
            }},
        t.node());
  }

  PartialFn fixed_point(const std::string &z, const std::vector<Var> &params, const FfpTerm &body,
                        const Assignment &outer, const Env &env) {
    PartialFn cur{static_cast<int>(params.size()), {}};
    std::vector<Tuple> tuples;
    for_each_tuple(alg_.size(), params.size(), [&](const Tuple &t) { tuples.push_back(t); });
    long long bound = static_cast<long long>(tuples.size()) + 1;
    int iterations = 0;
    while (true) {
      ++iterations;
      Env inner = env;
      inner[z] = &cur;
      PartialFn next = cur;
      for (const auto &t : tuples) {
        if (cur.values.count(t))
          continue;
        Assignment s = outer;
        for (std::size_t i = 0; i < t.size(); ++i)
          s = s.with(params[i], t[i]);
        if (FfpValue v = eval(s, body, inner))
          next.values.emplace(t, *v);
      }
      if (log_) {
        *log_ << z << "^" << iterations << ":";
        for (const auto &t : tuples) {
          *log_ << " (";
          for (std::size_t i = 0; i < t.size(); ++i)
            *log_ << (i ? "," : "") << t[i];
          *log_ << ")=" << to_string(next.at(t));
        }
        *log_ << "\n";
      }
      if (next == cur)
        break;
      cur = std::move(next);
    }
    stats_.push_back({z, static_cast<int>(params.size()), iterations, bound});
    return cur;
  }

  /// Function names applied in t that are not bound by a fixed point inside t.
  static void free_fns(const FfpTerm &t, std::set<std::string> &bound, std::set<std::string> &out) {
    std::visit(overloaded{[](const ff::Const &) {},
                          [&](const ff::Fn &f) {
                            if (!bound.count(f.fn))
                              out.insert(f.fn);
                          },
                          [&](const ff::Bin &b) {
                            free_fns(b.lhs, bound, out);
                            free_fns(b.rhs, bound, out);
                          },
                          [&](const ff::Sign &g) { free_fns(g.arg, bound, out); },
                          [&](const ff::Max &m) { free_fns(m.body, bound, out); },
                          [&](const ff::Fp &f) {
                            bool added = bound.insert(f.z).second;
                            free_fns(f.body, bound, out);
                            if (added)
                              bound.erase(f.z);
                          }},
               t.node());
  }

  bool closed(const FfpTerm &t, const ff::Fp &f, const Env &env) {
    auto it = closed_.find(t.id());
    if (it == closed_.end()) {
      std::set<Var> vars;
      detail::collect(f.body, vars);
      bool ok = true;
      for (const auto &v : vars)
        if (std::find(f.params.begin(), f.params.end(), v) == f.params.end())
          ok = false;
      std::set<std::string> bound{f.z}, fns;
      free_fns(f.body, bound, fns);
      it = closed_.emplace(t.id(), std::make_pair(ok, fns)).first;
    }
    if (!it->second.first)
      return false;
    for (const auto &fn : it->second.second)
      if (env.count(fn))
        return false;
    return true;
  }

  struct CacheEntry {
    FfpTerm term; ///< keeps the node alive so its id stays unique
    PartialFn value;
  };

  const RAlgebra &alg_;
  std::ostream *log_;
  std::map<const void *, CacheEntry> cache_;
  std::map<const void *, std::pair<bool, std::set<std::string>>> closed_;
  std::vector<FixedPointStats> stats_;
};

inline FfpValue eval_ffp(const RAlgebra &alg, const Assignment &s, const FfpTerm &t) {
  return FfpEvaluator(alg).eval(s, t);
}

inline PartialFn fixed_point(const RAlgebra &alg, const std::string &z, const std::vector<Var> &params,
                             const FfpTerm &body, std::ostream *log = nullptr) {
  return FfpEvaluator(alg, log).fixed_point(z, params, body);
}

// ---------------------------------------------------------------------------
// Derived term constructors. Every result is plain FFP syntax over 0, 1, E.

namespace ffb {

inline FfpTerm two() { return ff::add(ff::one(), ff::one()); }
inline FfpTerm half() { return ff::div(ff::one(), two()); }

/// χ[a = b] = 1 - sgn(a-b)·sgn(a-b)
inline FfpTerm chi_eq(const FfpTerm &a, const FfpTerm &b) {
  FfpTerm d = ff::sgn(ff::sub(a, b));
  return ff::sub(ff::one(), ff::mul(d, d));
}

/// χ[a < b] = (sgn(b-a)² + sgn(b-a)) · 1/(1+1)
inline FfpTerm chi_lt(const FfpTerm &a, const FfpTerm &b) {
  FfpTerm d = ff::sgn(ff::sub(b, a));
  return ff::mul(ff::add(ff::mul(d, d), d), half());
}

/// χ[a ≤ b] = χ[=] + χ[<] - χ[=]·χ[<]
inline FfpTerm chi_leq(const FfpTerm &a, const FfpTerm &b) {
  FfpTerm e = chi_eq(a, b), l = chi_lt(a, b);
  return ff::sub(ff::add(e, l), ff::mul(e, l));
}

inline FfpTerm chi_not(const FfpTerm &a) { return ff::sub(ff::one(), a); }
inline FfpTerm chi_and(const FfpTerm &a, const FfpTerm &b) { return ff::mul(a, b); }
inline FfpTerm chi_or(const FfpTerm &a, const FfpTerm &b) {
  return ff::sub(ff::add(a, b), ff::mul(a, b));
}

/// N = max_w E(w) + 1, the domain size expressed with the ranking.
inline FfpTerm domain_size(const std::string &ranking, const Var &w) {
  return ff::add(ff::max({w}, ff::fn(ranking, {w})), ff::one());
}

/// x̲ = Σ E(x_i)·N^{k-1-i} in Horner form; 0 for the empty tuple.
inline FfpTerm rank(const std::string &ranking, const std::vector<Var> &xs, const Var &w) {
  if (xs.empty())
    return ff::zero();
  FfpTerm out = ff::fn(ranking, {xs[0]});
  for (std::size_t i = 1; i < xs.size(); ++i)
    out = ff::add(ff::mul(out, domain_size(ranking, w)), ff::fn(ranking, {xs[i]}));
  return out;
}

} // namespace ffb

} // namespace pts
