/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <map>
#include <set>
#include <string>

#include "ast.hpp"

namespace pts {

// ---------------------------------------------------------------------------
// Free variables.

namespace detail {

inline void collect(const Term &t, std::set<Var> &out) {
  if (t.is_var())
    out.insert(t.name);
}

inline void collect(const Qf &q, std::set<Var> &out) {
  std::visit(overloaded{[&](const qf::Atom &a) {
                          for (const auto &t : a.args)
                            collect(t, out);
                        },
                        [&](const qf::Eq &e) {
                          collect(e.lhs, out);
                          collect(e.rhs, out);
                        },
                        [&](const qf::Not &n) { collect(n.arg, out); },
                        [&](const qf::And &a) {
                          collect(a.lhs, out);
                          collect(a.rhs, out);
                        },
                        [&](const qf::Or &o) {
                          collect(o.lhs, out);
                          collect(o.rhs, out);
                        }},
             q.node());
}

inline void erase_bound(std::set<Var> &inner, const std::vector<Var> &bound) {
  for (const auto &v : bound)
    inner.erase(v);
}

inline void collect(const Fopt &f, std::set<Var> &out) {
  std::visit(overloaded{[&](const fo::Delta &d) { collect(d.delta, out); },
                        [&](const fo::Leq &l) {
                          collect(l.lhs, out);
                          collect(l.rhs, out);
                        },
                        [&](const fo::CondIndep &c) {
                          collect(c.cond, out);
                          collect(c.left, out);
                          collect(c.right, out);
                        },
                        [&](const fo::CondProbLeq &c) {
                          collect(c.lhs, out);
                          collect(c.lhs_given, out);
                          collect(c.rhs, out);
                          collect(c.rhs_given, out);
                        },
                        [&](const fo::Incl &i) {
                          for (const auto &t : i.lhs)
                            collect(t, out);
                          for (const auto &t : i.rhs)
                            collect(t, out);
                        },
                        [&](const fo::DotNeg &n) { collect(n.arg, out); },
                        [&](const fo::And &a) {
                          collect(a.lhs, out);
                          collect(a.rhs, out);
                        },
                        [&](const fo::WeakOr &o) {
                          collect(o.lhs, out);
                          collect(o.rhs, out);
                        },
                        [&](const auto &q) {
                          std::set<Var> inner;
                          collect(q.body, inner);
                          inner.erase(q.var);
                          out.insert(inner.begin(), inner.end());
                        }},
             f.node());
}

inline void collect(const NumTerm &t, std::set<Var> &out) {
  std::visit(overloaded{[&](const mf::Fn &f) {
                          for (const auto &a : f.args)
                            collect(a, out);
                        },
                        [&](const mf::Times &m) {
                          collect(m.lhs, out);
                          collect(m.rhs, out);
                        },
                        [&](const mf::Sum &s) {
                          std::set<Var> inner;
                          collect(s.body, inner);
                          collect(s.guard, inner);
                          erase_bound(inner, s.bound);
                          out.insert(inner.begin(), inner.end());
                        }},
             t.node());
}

inline void collect(const MfFormula &f, std::set<Var> &out) {
  std::visit(overloaded{[&](const mf::Atom &a) { collect(a.atom, out); },
                        [&](const mf::Leq &l) {
                          collect(l.lhs, out);
                          collect(l.rhs, out);
                        },
                        [&](const mf::Not &n) { collect(n.arg, out); },
                        [&](const mf::And &a) {
                          collect(a.lhs, out);
                          collect(a.rhs, out);
                        },
                        [&](const mf::Or &o) {
                          collect(o.lhs, out);
                          collect(o.rhs, out);
                        },
                        [&](const auto &q) {
                          std::set<Var> inner;
                          collect(q.body, inner);
                          inner.erase(q.var);
                          out.insert(inner.begin(), inner.end());
                        }},
             f.node());
}

inline void collect(const FfpTerm &t, std::set<Var> &out) {
  std::visit(overloaded{[](const ff::Const &) {},
                        [&](const ff::Fn &f) { out.insert(f.args.begin(), f.args.end()); },
                        [&](const ff::Bin &b) {
                          collect(b.lhs, out);
                          collect(b.rhs, out);
                        },
                        [&](const ff::Sign &s) { collect(s.arg, out); },
                        [&](const ff::Max &m) {
                          std::set<Var> inner;
                          collect(m.body, inner);
                          erase_bound(inner, m.vars);
                          out.insert(inner.begin(), inner.end());
                        },
                        [&](const ff::Fp &f) {
                          std::set<Var> inner;
                          collect(f.body, inner);
                          erase_bound(inner, f.params);
                          out.insert(inner.begin(), inner.end());
                          out.insert(f.args.begin(), f.args.end());
                        }},
             t.node());
}

} // namespace detail

/// Var(φ), sorted.
template <class T> VarSet free_vars(const T &x) {
  std::set<Var> out;
  detail::collect(x, out);
  return VarSet(out.begin(), out.end());
}

namespace detail {

inline void all_names(const Qf &q, std::set<Var> &out) { collect(q, out); }

inline void all_names(const Fopt &f, std::set<Var> &out) {
  std::visit(overloaded{[&](const fo::Exists1 &q) {
                          out.insert(q.var);
                          all_names(q.body, out);
                        },
                        [&](const fo::Forall1 &q) {
                          out.insert(q.var);
                          all_names(q.body, out);
                        },
                        [&](const fo::DotNeg &n) { all_names(n.arg, out); },
                        [&](const fo::And &a) {
                          all_names(a.lhs, out);
                          all_names(a.rhs, out);
                        },
                        [&](const fo::WeakOr &o) {
                          all_names(o.lhs, out);
                          all_names(o.rhs, out);
                        },
                        [&](const auto &) { collect(f, out); }},
             f.node());
}

inline void all_names(const NumTerm &t, std::set<Var> &out) {
  std::visit(overloaded{[&](const mf::Fn &) { collect(t, out); },
                        [&](const mf::Times &m) {
                          all_names(m.lhs, out);
                          all_names(m.rhs, out);
                        },
                        [&](const mf::Sum &s) {
                          out.insert(s.bound.begin(), s.bound.end());
                          all_names(s.body, out);
                          collect(s.guard, out);
                        }},
             t.node());
}

inline void all_names(const MfFormula &f, std::set<Var> &out) {
  std::visit(overloaded{[&](const mf::Atom &a) { collect(a.atom, out); },
                        [&](const mf::Leq &l) {
                          all_names(l.lhs, out);
                          all_names(l.rhs, out);
                        },
                        [&](const mf::Not &n) { all_names(n.arg, out); },
                        [&](const mf::And &a) {
                          all_names(a.lhs, out);
                          all_names(a.rhs, out);
                        },
                        [&](const mf::Or &o) {
                          all_names(o.lhs, out);
                          all_names(o.rhs, out);
                        },
                        [&](const auto &q) {
                          out.insert(q.var);
                          all_names(q.body, out);
                        }},
             f.node());
}

} // namespace detail

/// Every variable name occurring in φ, bound or free.
template <class T> std::set<Var> all_vars(const T &f) {
  std::set<Var> out;
  detail::all_names(f, out);
  return out;
}

/// `base` if unused, otherwise the first unused base1, base2, ...
inline Var fresh_name(const Var &base, const std::set<Var> &used) {
  if (!used.count(base))
    return base;
  for (int i = 1;; ++i) {
    Var v = base + std::to_string(i);
    if (!used.count(v))
      return v;
  }
}

/// k fresh names: `base` for k = 1, base1..basek otherwise (skipping used
/// names). The results are added to `used`.
inline std::vector<Var> fresh_names(const Var &base, std::size_t k, std::set<Var> &used) {
  std::vector<Var> out;
  if (k == 1) {
    out.push_back(fresh_name(base, used));
    used.insert(out.back());
    return out;
  }
  for (int i = 1; out.size() < k; ++i) {
    Var v = base + std::to_string(i);
    if (used.insert(v).second)
      out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution of free occurrences.

using TermMap = std::map<Var, Term>;

inline Term substitute(const Term &t, const TermMap &m) {
  if (t.is_var())
    if (auto it = m.find(t.name); it != m.end())
      return it->second;
  return t;
}

inline std::vector<Term> substitute(const std::vector<Term> &ts, const TermMap &m) {
  std::vector<Term> out;
  for (const auto &t : ts)
    out.push_back(substitute(t, m));
  return out;
}

inline Qf substitute(const Qf &q, const TermMap &m) {
  return std::visit(
      overloaded{[&](const qf::Atom &a) { return qf::atom(a.relation, substitute(a.args, m)); },
                 [&](const qf::Eq &e) { return qf::eq(substitute(e.lhs, m), substitute(e.rhs, m)); },
                 [&](const qf::Not &n) { return qf::neg(substitute(n.arg, m)); },
                 [&](const qf::And &a) { return qf::conj(substitute(a.lhs, m), substitute(a.rhs, m)); },
                 [&](const qf::Or &o) { return qf::disj(substitute(o.lhs, m), substitute(o.rhs, m)); }},
      q.node());
}

/// Replaces free occurrences only; the replacement terms are assumed not to
/// be captured by binders of φ.
inline Fopt substitute(const Fopt &f, const TermMap &m) {
  auto without = [&](const Var &v) {
    TermMap inner = m;
    inner.erase(v);
    return inner;
  };
  return std::visit(
      overloaded{
          [&](const fo::Delta &d) -> Fopt { return fo::Delta{substitute(d.delta, m)}; },
          [&](const fo::Leq &l) { return fo::leq(substitute(l.lhs, m), substitute(l.rhs, m)); },
          [&](const fo::CondIndep &c) {
            return fo::ci(substitute(c.cond, m), substitute(c.left, m), substitute(c.right, m));
          },
          [&](const fo::CondProbLeq &c) {
            return fo::cpi(substitute(c.lhs, m), substitute(c.lhs_given, m), substitute(c.rhs, m),
                           substitute(c.rhs_given, m));
          },
          [&](const fo::Incl &i) { return fo::incl(substitute(i.lhs, m), substitute(i.rhs, m)); },
          [&](const fo::DotNeg &n) { return fo::dotneg(substitute(n.arg, m)); },
          [&](const fo::And &a) -> Fopt { return fo::And{substitute(a.lhs, m), substitute(a.rhs, m)}; },
          [&](const fo::WeakOr &o) { return fo::weak_or(substitute(o.lhs, m), substitute(o.rhs, m)); },
          [&](const fo::Exists1 &q) { return fo::exists1(q.var, substitute(q.body, without(q.var))); },
          [&](const fo::Forall1 &q) { return fo::forall1(q.var, substitute(q.body, without(q.var))); }},
      f.node());
}

/// φ(ā/x̄): free occurrences of the mapped variables become literals.
template <class T> T substitute_consts(const T &f, const std::map<Var, Element> &consts) {
  TermMap m;
  for (const auto &[v, e] : consts)
    m.emplace(v, Term::lit(e));
  return substitute(f, m);
}

// ---------------------------------------------------------------------------
// Alpha-renaming.

/**
 * Renames quantified variables so that no binder reuses a free variable of
 * φ, a name in `avoid`, or the name of another binder. Binders that are
 * already unique keep their names.
 */
inline Fopt rename_bound(const Fopt &f, const std::set<Var> &avoid = {}) {
  std::set<Var> used = avoid;
  for (const auto &v : free_vars(f))
    used.insert(v);
  std::set<Var> taken = used;
  auto everything = all_vars(f);
  taken.insert(everything.begin(), everything.end());

  auto go = [&](auto &self, const Fopt &g) -> Fopt {
    auto quant = [&](const Var &v, const Fopt &body, auto make) -> Fopt {
      Var name = v;
      Fopt renamed = body;
      if (used.count(v)) {
        name = fresh_name(v, taken);
        taken.insert(name);
        renamed = substitute(body, TermMap{{v, Term::var(name)}});
      }
      used.insert(name);
      return make(name, self(self, renamed));
    };
    return std::visit(
        overloaded{
            [&](const fo::DotNeg &n) { return fo::dotneg(self(self, n.arg)); },
            [&](const fo::And &a) -> Fopt {
              Fopt l = self(self, a.lhs);
              return fo::And{l, self(self, a.rhs)};
            },
            [&](const fo::WeakOr &o) {
              Fopt l = self(self, o.lhs);
              return fo::weak_or(l, self(self, o.rhs));
            },
            [&](const fo::Exists1 &q) {
              return quant(q.var, q.body, [](Var v, Fopt b) { return fo::exists1(v, b); });
            },
            [&](const fo::Forall1 &q) {
              return quant(q.var, q.body, [](Var v, Fopt b) { return fo::forall1(v, b); });
            },
            [&](const auto &) { return g; }},
        g.node());
  };
  return go(go, f);
}

// ---------------------------------------------------------------------------
// Dialects.

struct Features {
  bool incl = false, dotneg = false, leq = false, ci = false, cpi = false;
};

inline void collect_features(const Fopt &f, Features &out) {
  std::visit(overloaded{[&](const fo::Leq &) { out.leq = true; },
                        [&](const fo::CondIndep &) { out.ci = true; },
                        [&](const fo::CondProbLeq &) { out.cpi = true; },
                        [&](const fo::Incl &) { out.incl = true; },
                        [&](const fo::DotNeg &n) {
                          out.dotneg = true;
                          collect_features(n.arg, out);
                        },
                        [&](const fo::And &a) {
                          collect_features(a.lhs, out);
                          collect_features(a.rhs, out);
                        },
                        [&](const fo::WeakOr &o) {
                          collect_features(o.lhs, out);
                          collect_features(o.rhs, out);
                        },
                        [&](const fo::Exists1 &q) { collect_features(q.body, out); },
                        [&](const fo::Forall1 &q) { collect_features(q.body, out); },
                        [](const fo::Delta &) {}},
             f.node());
}

inline Features features(const Fopt &f) {
  Features out;
  collect_features(f, out);
  return out;
}

inline bool in_dialect(const Fopt &f, Dialect d) {
  Features x = features(f);
  bool prob = x.leq || x.ci || x.cpi;
  switch (d) {
  case Dialect::FOTdown: return !x.incl && !x.dotneg && !prob;
  case Dialect::FOT: return !prob;
  case Dialect::FOPT_leq: return !x.incl && !x.ci && !x.cpi;
  case Dialect::FOPT_leq_ci: return !x.incl && !x.cpi;
  case Dialect::FOPT_cpi: return !x.incl;
  }
  return false;
}

/**
 * Smallest dialect containing φ, in the order
 * FOTdown < FOT < FOPT_leq < FOPT_leq_ci < FOPT_cpi.
 * Inclusion atoms combined with probabilistic atoms belong to no dialect.
 */
inline Dialect classify(const Fopt &f) {
  Features x = features(f);
  bool prob = x.leq || x.ci || x.cpi;
  if (x.incl && prob)
    throw DialectError("inclusion atoms cannot be mixed with probabilistic atoms");
  if (x.cpi)
    return Dialect::FOPT_cpi;
  if (x.ci)
    return Dialect::FOPT_leq_ci;
  if (x.leq)
    return Dialect::FOPT_leq;
  if (x.incl || x.dotneg)
    return Dialect::FOT;
  return Dialect::FOTdown;
}

inline int dialect_rank(Dialect d) {
  switch (d) {
  case Dialect::FOTdown: return 0;
  case Dialect::FOT: return 1;
  case Dialect::FOPT_leq: return 2;
  case Dialect::FOPT_leq_ci: return 3;
  case Dialect::FOPT_cpi: return 4;
  }
  return -1;
}

inline int depth(const Qf &q) {
  return std::visit(overloaded{[](const qf::Not &n) { return 1 + depth(n.arg); },
                               [](const qf::And &a) { return 1 + std::max(depth(a.lhs), depth(a.rhs)); },
                               [](const qf::Or &o) { return 1 + std::max(depth(o.lhs), depth(o.rhs)); },
                               [](const auto &) { return 0; }},
                    q.node());
}

} // namespace pts
