/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <compare>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "../structures.hpp"

namespace pts {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

/// First-order term: a variable, a domain-element literal (#k), or a named
/// constant of the structure ($c).
struct Term {
  enum class Kind { Var, Lit, Const };

  Kind kind = Kind::Var;
  std::string name;
  Element value = 0;

  static Term var(std::string n) { return {Kind::Var, std::move(n), 0}; }
  static Term lit(Element e) { return {Kind::Lit, {}, e}; }
  static Term constant(std::string n) { return {Kind::Const, std::move(n), 0}; }

  bool is_var() const noexcept { return kind == Kind::Var; }

  auto operator<=>(const Term &) const = default;
  bool operator==(const Term &) const = default;
};

inline std::vector<Term> vars_to_terms(const std::vector<Var> &vs) {
  std::vector<Term> out;
  for (const auto &v : vs)
    out.push_back(Term::var(v));
  return out;
}

/**
 * Immutable, shared syntax tree node. `Node` is a std::variant of the node
 * structs of one dialect; alternatives convert implicitly into the tree.
 */
template <class Node> class Tree {
public:
  template <class Alt>
    requires(!std::is_same_v<std::decay_t<Alt>, Tree>)
  Tree(Alt &&alt) : node_(std::make_shared<const Node>(std::forward<Alt>(alt))) {}

  const Node &node() const noexcept { return *node_; }

  template <class Alt> const Alt *as() const noexcept { return std::get_if<Alt>(node_.get()); }
  template <class Alt> bool is() const noexcept { return std::holds_alternative<Alt>(*node_); }

  /// Identity of the shared node, stable for the lifetime of the tree.
  const void *id() const noexcept { return node_.get(); }

  friend bool operator==(const Tree &a, const Tree &b) {
    return a.node_ == b.node_ || *a.node_ == *b.node_;
  }

private:
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Quantifier-free first-order formulas. δ-formulas use Atom/Eq/Not/And only;
// SUM guards may additionally use Or.

namespace qf {
struct Atom;
struct Eq;
struct Not;
struct And;
struct Or;
} // namespace qf

using Qf = Tree<std::variant<qf::Atom, qf::Eq, qf::Not, qf::And, qf::Or>>;
using DeltaFormula = Qf;
using Guard = Qf;

namespace qf {
struct Atom {
  std::string relation;
  std::vector<Term> args;
  bool operator==(const Atom &) const = default;
};
struct Eq {
  Term lhs, rhs;
  bool operator==(const Eq &) const = default;
};
struct Not {
  Qf arg;
  bool operator==(const Not &) const = default;
};
struct And {
  Qf lhs, rhs;
  bool operator==(const And &) const = default;
};
struct Or {
  Qf lhs, rhs;
  bool operator==(const Or &) const = default;
};

inline Qf atom(std::string rel, std::vector<Term> args) { return Atom{std::move(rel), std::move(args)}; }
inline Qf eq(Term a, Term b) { return Eq{std::move(a), std::move(b)}; }
inline Qf neg(Qf a) { return Not{std::move(a)}; }
inline Qf conj(Qf a, Qf b) { return And{std::move(a), std::move(b)}; }
inline Qf disj(Qf a, Qf b) { return Or{std::move(a), std::move(b)}; }

/// #0=#0; the δ-grammar has no truth constant.
inline Qf top() { return eq(Term::lit(0), Term::lit(0)); }

/// Conjunction of lhs[i]=rhs[i]; `top()` for empty tuples.
inline Qf tuple_eq(const std::vector<Term> &lhs, const std::vector<Term> &rhs) {
  if (lhs.empty())
    return top();
  Qf out = eq(lhs[0], rhs[0]);
  for (std::size_t i = 1; i < lhs.size(); ++i)
    out = conj(out, eq(lhs[i], rhs[i]));
  return out;
}

inline bool is_delta(const Qf &q) {
  return std::visit(overloaded{[](const Atom &) { return true; }, [](const Eq &) { return true; },
                               [](const Not &n) { return is_delta(n.arg); },
                               [](const And &a) { return is_delta(a.lhs) && is_delta(a.rhs); },
                               [](const Or &) { return false; }},
                    q.node());
}
} // namespace qf

// ---------------------------------------------------------------------------
// FOT / FOT↓ / FOPT(≤δ) / FOPT(≤δ,⊥⊥δc) / FOPT(≤δc) share one AST.

enum class Dialect { FOT, FOTdown, FOPT_leq, FOPT_leq_ci, FOPT_cpi };

inline const char *dialect_name(Dialect d) {
  switch (d) {
  case Dialect::FOT: return "fot";
  case Dialect::FOTdown: return "fot-down";
  case Dialect::FOPT_leq: return "fopt-leq";
  case Dialect::FOPT_leq_ci: return "fopt-leq-ci";
  case Dialect::FOPT_cpi: return "fopt-cpi";
  }
  return "?";
}

namespace fo {
struct Delta;
struct Leq;
struct CondIndep;
struct CondProbLeq;
struct Incl;
struct DotNeg;
struct And;
struct WeakOr;
struct Exists1;
struct Forall1;
} // namespace fo

using Fopt = Tree<std::variant<fo::Delta, fo::Leq, fo::CondIndep, fo::CondProbLeq, fo::Incl,
                               fo::DotNeg, fo::And, fo::WeakOr, fo::Exists1, fo::Forall1>>;
using FoptFormula = Fopt;

namespace fo {
struct Delta {
  Qf delta;
  bool operator==(const Delta &) const = default;
};
/// lhs ≤ rhs (extended probabilistic inclusion).
struct Leq {
  Qf lhs, rhs;
  bool operator==(const Leq &) const = default;
};
/// left ⊥⊥_cond right, written ci(cond; left; right).
struct CondIndep {
  Qf cond, left, right;
  bool operator==(const CondIndep &) const = default;
};
/// (lhs | lhs_given) ≤ (rhs | rhs_given).
struct CondProbLeq {
  Qf lhs, lhs_given, rhs, rhs_given;
  bool operator==(const CondProbLeq &) const = default;
};
/// lhs ⊆ rhs (FOT inclusion atom).
struct Incl {
  std::vector<Term> lhs, rhs;
  bool operator==(const Incl &) const = default;
};
struct DotNeg {
  Fopt arg;
  bool operator==(const DotNeg &) const = default;
};
struct And {
  Fopt lhs, rhs;
  bool operator==(const And &) const = default;
};
struct WeakOr {
  Fopt lhs, rhs;
  bool operator==(const WeakOr &) const = default;
};
struct Exists1 {
  Var var;
  Fopt body;
  bool operator==(const Exists1 &) const = default;
};
struct Forall1 {
  Var var;
  Fopt body;
  bool operator==(const Forall1 &) const = default;
};

inline Fopt delta(Qf d) { return Delta{std::move(d)}; }
inline Fopt leq(Qf a, Qf b) { return Leq{std::move(a), std::move(b)}; }
inline Fopt ci(Qf cond, Qf l, Qf r) { return CondIndep{std::move(cond), std::move(l), std::move(r)}; }
inline Fopt cpi(Qf a, Qf b, Qf c, Qf d) {
  return CondProbLeq{std::move(a), std::move(b), std::move(c), std::move(d)};
}
inline Fopt incl(std::vector<Term> l, std::vector<Term> r) { return Incl{std::move(l), std::move(r)}; }
inline Fopt dotneg(Fopt a) { return DotNeg{std::move(a)}; }

/// Conjunction; two δ-operands merge into one δ (flatness makes the two
/// readings equivalent and this keeps printing unambiguous).
inline Fopt conj(Fopt a, Fopt b) {
  if (auto da = a.as<Delta>())
    if (auto db = b.as<Delta>())
      return delta(qf::conj(da->delta, db->delta));
  return And{std::move(a), std::move(b)};
}
inline Fopt weak_or(Fopt a, Fopt b) { return WeakOr{std::move(a), std::move(b)}; }
inline Fopt exists1(Var v, Fopt body) { return Exists1{std::move(v), std::move(body)}; }
inline Fopt forall1(Var v, Fopt body) { return Forall1{std::move(v), std::move(body)}; }

inline Fopt forall1(const std::vector<Var> &vs, Fopt body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it)
    body = forall1(*it, std::move(body));
  return body;
}
} // namespace fo

// ---------------------------------------------------------------------------
// Metafinite FO_{R≥0}(×,SUM): numerical terms and formulas.

namespace mf {
struct Fn;
struct Times;
struct Sum;
struct Atom;
struct Leq;
struct Not;
struct And;
struct Or;
struct Exists;
struct Forall;
} // namespace mf

using NumTerm = Tree<std::variant<mf::Fn, mf::Times, mf::Sum>>;
using MfFormula =
    Tree<std::variant<mf::Atom, mf::Leq, mf::Not, mf::And, mf::Or, mf::Exists, mf::Forall>>;

namespace mf {
struct Fn {
  std::string fn;
  std::vector<Term> args;
  bool operator==(const Fn &) const = default;
};
struct Times {
  NumTerm lhs, rhs;
  bool operator==(const Times &) const = default;
};
/// SUM_bound(body, guard)
struct Sum {
  std::vector<Var> bound;
  NumTerm body;
  Guard guard;
  bool operator==(const Sum &) const = default;
};
/// A first-order atom over the finite sort (qf::Atom or qf::Eq).
struct Atom {
  Qf atom;
  bool operator==(const Atom &) const = default;
};
struct Leq {
  NumTerm lhs, rhs;
  bool operator==(const Leq &) const = default;
};
struct Not {
  MfFormula arg;
  bool operator==(const Not &) const = default;
};
struct And {
  MfFormula lhs, rhs;
  bool operator==(const And &) const = default;
};
struct Or {
  MfFormula lhs, rhs;
  bool operator==(const Or &) const = default;
};
struct Exists {
  Var var;
  MfFormula body;
  bool operator==(const Exists &) const = default;
};
struct Forall {
  Var var;
  MfFormula body;
  bool operator==(const Forall &) const = default;
};

inline NumTerm fn(std::string f, std::vector<Term> args) { return Fn{std::move(f), std::move(args)}; }
inline NumTerm times(NumTerm a, NumTerm b) { return Times{std::move(a), std::move(b)}; }
inline NumTerm sum(std::vector<Var> bound, NumTerm body, Guard g) {
  return Sum{std::move(bound), std::move(body), std::move(g)};
}
inline MfFormula leq(NumTerm a, NumTerm b) { return Leq{std::move(a), std::move(b)}; }
/// i = j abbreviates i ≤ j ∧ j ≤ i.
inline MfFormula num_eq(NumTerm a, NumTerm b) { return And{leq(a, b), leq(b, a)}; }
inline MfFormula neg(MfFormula a) { return Not{std::move(a)}; }
inline MfFormula conj(MfFormula a, MfFormula b) { return And{std::move(a), std::move(b)}; }
inline MfFormula disj(MfFormula a, MfFormula b) { return Or{std::move(a), std::move(b)}; }
/// Compound δ is split into the matching connectives so Atom stays atomic.
inline MfFormula atom(const Qf &a) {
  if (auto n = a.as<qf::Not>())
    return neg(atom(n->arg));
  if (auto c = a.as<qf::And>())
    return conj(atom(c->lhs), atom(c->rhs));
  if (auto d = a.as<qf::Or>())
    return disj(atom(d->lhs), atom(d->rhs));
  return Atom{a};
}
inline MfFormula exists(Var v, MfFormula b) { return Exists{std::move(v), std::move(b)}; }
inline MfFormula forall(Var v, MfFormula b) { return Forall{std::move(v), std::move(b)}; }
inline MfFormula forall(const std::vector<Var> &vs, MfFormula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it)
    body = forall(*it, std::move(body));
  return body;
}
} // namespace mf

// ---------------------------------------------------------------------------
// FFP_R numerical terms over R-algebras.

namespace ff {
struct Const;
struct Fn;
struct Bin;
struct Sign;
struct Max;
struct Fp;
} // namespace ff

using FfpTerm = Tree<std::variant<ff::Const, ff::Fn, ff::Bin, ff::Sign, ff::Max, ff::Fp>>;

namespace ff {
/// 0 or 1; other constants are built from these.
struct Const {
  int value;
  bool operator==(const Const &) const = default;
};
/// Application of an algebra function or of a fixed-point variable Z.
struct Fn {
  std::string fn;
  std::vector<Var> args;
  bool operator==(const Fn &) const = default;
};
enum class Op { Add, Sub, Mul, Div };
struct Bin {
  Op op;
  FfpTerm lhs, rhs;
  bool operator==(const Bin &) const = default;
};
struct Sign {
  FfpTerm arg;
  bool operator==(const Sign &) const = default;
};
struct Max {
  std::vector<Var> vars;
  FfpTerm body;
  bool operator==(const Max &) const = default;
};
/// fp[Z(params) <- body](args)
struct Fp {
  std::string z;
  std::vector<Var> params;
  FfpTerm body;
  std::vector<Var> args;
  bool operator==(const Fp &) const = default;
};

inline FfpTerm zero() { return Const{0}; }
inline FfpTerm one() { return Const{1}; }
inline FfpTerm fn(std::string f, std::vector<Var> args) { return Fn{std::move(f), std::move(args)}; }
inline FfpTerm add(FfpTerm a, FfpTerm b) { return Bin{Op::Add, std::move(a), std::move(b)}; }
inline FfpTerm sub(FfpTerm a, FfpTerm b) { return Bin{Op::Sub, std::move(a), std::move(b)}; }
inline FfpTerm mul(FfpTerm a, FfpTerm b) { return Bin{Op::Mul, std::move(a), std::move(b)}; }
inline FfpTerm div(FfpTerm a, FfpTerm b) { return Bin{Op::Div, std::move(a), std::move(b)}; }
inline FfpTerm sgn(FfpTerm a) { return Sign{std::move(a)}; }
inline FfpTerm max(std::vector<Var> vs, FfpTerm body) { return Max{std::move(vs), std::move(body)}; }
inline FfpTerm fp(std::string z, std::vector<Var> params, FfpTerm body, std::vector<Var> args) {
  return Fp{std::move(z), std::move(params), std::move(body), std::move(args)};
}
} // namespace ff

// ---------------------------------------------------------------------------
// First-order formulas over (R, +, ×, ≤, 0) produced by fopt_to_real.

/**
 * A weight variable s_{v̄=ī} (prefix "s") or t_{v̄x=īj} (prefix "t"): the
 * weight of the assignment mapping `vars` to `values`.
 */
struct WeightVar {
  std::string prefix;
  std::vector<Var> vars;
  std::vector<Element> values;

  /// s_v1_..._vk__i1_..._ik
  std::string name() const {
    std::string out = prefix;
    for (const auto &v : vars)
      out += "_" + v;
    out += "_";
    for (Element e : values)
      out += "_" + std::to_string(e);
    return out;
  }

  auto operator<=>(const WeightVar &) const = default;
  bool operator==(const WeightVar &) const = default;
};

namespace ra {
struct Var;
struct Sum;
struct Mul;
struct Leq;
struct Eq;
struct Not;
struct And;
struct Or;
struct Exists;
} // namespace ra

using RaTerm = Tree<std::variant<ra::Var, ra::Sum, ra::Mul>>;
using RaFormula = Tree<std::variant<ra::Leq, ra::Eq, ra::Not, ra::And, ra::Or, ra::Exists>>;

namespace ra {
struct Var {
  WeightVar var;
  bool operator==(const Var &) const = default;
};
/// Σ terms; the empty sum is the constant 0.
struct Sum {
  std::vector<RaTerm> terms;
  bool operator==(const Sum &) const = default;
};
struct Mul {
  RaTerm lhs, rhs;
  bool operator==(const Mul &) const = default;
};
struct Leq {
  RaTerm lhs, rhs;
  bool operator==(const Leq &) const = default;
};
struct Eq {
  RaTerm lhs, rhs;
  bool operator==(const Eq &) const = default;
};
struct Not {
  RaFormula arg;
  bool operator==(const Not &) const = default;
};
/// Empty conjunction is true.
struct And {
  std::vector<RaFormula> args;
  bool operator==(const And &) const = default;
};
/// Empty disjunction is false.
struct Or {
  std::vector<RaFormula> args;
  bool operator==(const Or &) const = default;
};
struct Exists {
  std::vector<WeightVar> vars;
  RaFormula body;
  bool operator==(const Exists &) const = default;
};

inline RaTerm zero() { return Sum{{}}; }
} // namespace ra

} // namespace pts
