#include "oracles.hpp"

#include "epsforge/translation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

using Env = std::vector<std::string>;

std::string nl(const Formula& f, Env& env);

std::string nl(const Term& t, Env& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      for (std::size_t i = env.size(); i-- > 0;)
        if (env[i] == t.name()) return "#" + std::to_string(env.size() - 1 - i);
      return "$" + t.name();
    }
    case Term::Kind::App: {
      std::string s = t.name() + "(";
      for (const auto& a : t.args()) s += nl(a, env) + ",";
      return s + ")";
    }
    case Term::Kind::Eps: {
      env.push_back(t.name());
      std::string s = "E[" + nl(t.body(), env) + "]";
      env.pop_back();
      return s;
    }
  }
  return "?";
}

std::string nl(const Formula& f, Env& env) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::string s = f.pred() + "(";
      for (const auto& a : f.args()) s += nl(a, env) + ",";
      return s + ")";
    }
    case Formula::Kind::Neg:
      return "~" + nl(f.operand(), env);
    case Formula::Kind::And:
      return "&(" + nl(f.lhs(), env) + "," + nl(f.rhs(), env) + ")";
    case Formula::Kind::Or:
      return "|(" + nl(f.lhs(), env) + "," + nl(f.rhs(), env) + ")";
    case Formula::Kind::Imp:
      return ">(" + nl(f.lhs(), env) + "," + nl(f.rhs(), env) + ")";
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      env.push_back(f.bound());
      std::string s = (f.kind() == Formula::Kind::All ? "A[" : "X[") + nl(f.body(), env) + "]";
      env.pop_back();
      return s;
    }
  }
  return "?";
}

std::string next_name(const std::string& prefix, NameSet& used) {
  for (int i = 1;; ++i) {
    std::string n = prefix + std::to_string(i);
    if (used.insert(n).second) return n;
  }
}

using Renaming = std::map<std::string, std::string>;

Formula rn(const Formula& f, const std::string& prefix, NameSet& used, const Renaming& r);

Term rn(const Term& t, const std::string& prefix, NameSet& used, const Renaming& r) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = r.find(t.name());
      return it == r.end() ? t : Term::var(it->second);
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(rn(a, prefix, used, r));
      return Term::app(t.name(), std::move(args));
    }
    case Term::Kind::Eps: {
      Renaming inner = r;
      std::string n = next_name(prefix, used);
      inner[t.name()] = n;
      return Term::eps(n, rn(t.body(), prefix, used, inner));
    }
  }
  return t;
}

Formula rn(const Formula& f, const std::string& prefix, NameSet& used, const Renaming& r) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(rn(a, prefix, used, r));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Neg:
      return Formula::neg(rn(f.operand(), prefix, used, r));
    case Formula::Kind::And: {
      Formula lhs = rn(f.lhs(), prefix, used, r);
      return Formula::conj(lhs, rn(f.rhs(), prefix, used, r));
    }
    case Formula::Kind::Or: {
      Formula lhs = rn(f.lhs(), prefix, used, r);
      return Formula::disj(lhs, rn(f.rhs(), prefix, used, r));
    }
    case Formula::Kind::Imp: {
      Formula lhs = rn(f.lhs(), prefix, used, r);
      return Formula::imp(lhs, rn(f.rhs(), prefix, used, r));
    }
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      Renaming inner = r;
      std::string n = next_name(prefix, used);
      inner[f.bound()] = n;
      Formula body = rn(f.body(), prefix, used, inner);
      return f.kind() == Formula::Kind::All ? Formula::all(n, body) : Formula::ex(n, body);
    }
  }
  return f;
}

Term naive(const Term& e, const std::string& x, const Term& t) {
  switch (e.kind()) {
    case Term::Kind::Var:
      return e.name() == x ? t : e;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : e.args()) args.push_back(naive(a, x, t));
      return Term::app(e.name(), std::move(args));
    }
    case Term::Kind::Eps:
      return e.name() == x ? e : Term::eps(e.name(), naive_subst(e.body(), x, t));
  }
  return e;
}

bool eval(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return v.at(nameless(f));
    case Formula::Kind::Neg:
      return !eval(f.operand(), v);
    case Formula::Kind::And:
      return eval(f.lhs(), v) && eval(f.rhs(), v);
    case Formula::Kind::Or:
      return eval(f.lhs(), v) || eval(f.rhs(), v);
    case Formula::Kind::Imp:
      return !eval(f.lhs(), v) || eval(f.rhs(), v);
    default:
      throw std::logic_error("truth table over a quantified formula");
  }
}

void atoms_of(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    auto key = nameless(f);
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    return;
  }
  if (f.kind() == Formula::Kind::Neg) return atoms_of(f.operand(), out);
  if (f.is_binary()) {
    atoms_of(f.lhs(), out);
    atoms_of(f.rhs(), out);
    return;
  }
  throw std::logic_error("truth table over a quantified formula");
}

Formula strip(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Neg:
      return Formula::neg(strip(f.operand()));
    case Formula::Kind::And:
      return Formula::conj(strip(f.lhs()), strip(f.rhs()));
    case Formula::Kind::Or:
      return Formula::disj(strip(f.lhs()), strip(f.rhs()));
    case Formula::Kind::Imp:
      return Formula::imp(strip(f.lhs()), strip(f.rhs()));
    default:
      return strip(f.body());
  }
}

}  // namespace

std::string nameless(const Term& t) {
  Env env;
  return nl(t, env);
}

std::string nameless(const Formula& f) {
  Env env;
  return nl(f, env);
}

bool alpha_equal(const Formula& a, const Formula& b) { return nameless(a) == nameless(b); }
bool alpha_equal(const Term& a, const Term& b) { return nameless(a) == nameless(b); }

Formula rename_binders(const Formula& f, const std::string& prefix, NameSet& used) {
  return rn(f, prefix, used, {});
}

Formula naive_subst(const Formula& f, const std::string& x, const Term& t) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(naive(a, x, t));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Neg:
      return Formula::neg(naive_subst(f.operand(), x, t));
    case Formula::Kind::And:
      return Formula::conj(naive_subst(f.lhs(), x, t), naive_subst(f.rhs(), x, t));
    case Formula::Kind::Or:
      return Formula::disj(naive_subst(f.lhs(), x, t), naive_subst(f.rhs(), x, t));
    case Formula::Kind::Imp:
      return Formula::imp(naive_subst(f.lhs(), x, t), naive_subst(f.rhs(), x, t));
    case Formula::Kind::All:
      return f.bound() == x ? f : Formula::all(f.bound(), naive_subst(f.body(), x, t));
    case Formula::Kind::Ex:
      return f.bound() == x ? f : Formula::ex(f.bound(), naive_subst(f.body(), x, t));
  }
  return f;
}

Formula subst_by_renaming(const Formula& f, const std::string& x, const Term& t) {
  NameSet used = all_names(f);
  for (const auto& n : all_names(t)) used.insert(n);
  used.insert(x);
  return naive_subst(rename_binders(f, "r", used), x, t);
}

Formula strip_quantifiers(const Formula& f) {
  NameSet used;
  return strip(rename_binders(f, "v", used));
}

Formula universal_image(const Formula& origin) {
  NameSet used = free_vars(origin);
  Formula r = rename_binders(origin, "v", used);
  std::vector<std::string> binders;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) return;
    if (f.kind() == Formula::Kind::Neg) return walk(f.operand());
    if (f.is_binary()) {
      walk(f.lhs());
      walk(f.rhs());
      return;
    }
    binders.push_back(f.bound());
    walk(f.body());
  };
  walk(r);
  Formula m = strip(r);
  Formula out = Formula::imp(m, m);
  for (std::size_t i = binders.size(); i-- > 0;) out = Formula::all(binders[i], out);
  return to_epsilon(out);
}

bool truth_table_valid(const Formula& f) {
  std::vector<std::string> atoms;
  atoms_of(f, atoms);
  if (atoms.size() > 20) throw std::length_error("too many atoms for a truth table");
  std::map<std::string, bool> v;
  for (std::uint32_t row = 0; row < (1u << atoms.size()); ++row) {
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (row >> i) & 1u;
    if (!eval(f, v)) return false;
  }
  return true;
}

bool has_topological_order(const SideVarGraph& g) {
  std::map<std::string, int> color;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : g.edges) succ[a].push_back(b);
  std::function<bool(const std::string&)> visit = [&](const std::string& n) {
    int& c = color[n];
    if (c == 1) return false;
    if (c == 2) return true;
    c = 1;
    for (const auto& m : succ[n])
      if (!visit(m)) return false;
    color[n] = 2;
    return true;
  };
  for (const auto& [a, b] : g.edges)
    if (!visit(a) || !visit(b)) return false;
  return true;
}

std::size_t count_nodes(const ProofNode& p, Rule r) {
  std::size_t n = p.rule == r ? 1 : 0;
  for (const auto& q : p.premises) n += count_nodes(q, r);
  return n;
}

}  // namespace oracle
