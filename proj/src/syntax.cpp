#include "epsforge/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace epsforge {

struct TermNode {
  Term::Kind kind;
  std::string name;
  std::vector<Term> args;
  Formula body;
};

struct FormulaNode {
  Formula::Kind kind;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  Formula lhs;
  Formula rhs;
};

namespace {

const std::vector<Term> kNoArgs;

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Kind::Atom, std::move(pred), std::move(args), {}, {}}));
}

Formula Formula::eq(Term lhs, Term rhs) { return atom("=", {std::move(lhs), std::move(rhs)}); }

Formula Formula::neg(Formula f) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Kind::Neg, {}, {}, std::move(f), {}}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Kind::And, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Kind::Or, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::imp(Formula a, Formula b) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Kind::Imp, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::all(std::string var, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Kind::All, std::move(var), {}, std::move(body), {}}));
}

Formula Formula::ex(std::string var, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Kind::Ex, std::move(var), {}, std::move(body), {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::pred() const { return node_->name; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::operand() const { return node_->lhs; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }
const std::string& Formula::bound() const { return node_->name; }
const Formula& Formula::body() const { return node_->lhs; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.lhs == y.lhs && x.rhs == y.rhs;
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const TermNode>(TermNode{Kind::Var, std::move(name), {}, {}}));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  return Term(std::make_shared<const TermNode>(TermNode{Kind::App, std::move(fn), std::move(args), {}}));
}

Term Term::eps(std::string var, Formula body) {
  return Term(std::make_shared<const TermNode>(TermNode{Kind::Eps, std::move(var), {}, std::move(body)}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->kind == Kind::App ? node_->args : kNoArgs; }
const Formula& Term::body() const { return node_->body; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.body == y.body;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::add_pred(const std::string& name, std::size_t arity) {
  auto [it, inserted] = preds_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw ArityError("predicate " + name + " used with arity " + std::to_string(arity) +
                     " and " + std::to_string(it->second));
}

void Signature::add_fn(const std::string& name, std::size_t arity) {
  auto [it, inserted] = fns_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw ArityError("function " + name + " used with arity " + std::to_string(arity) +
                     " and " + std::to_string(it->second));
}

void Signature::collect(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::App:
      add_fn(t.name(), t.args().size());
      for (const auto& a : t.args()) collect(a);
      return;
    case Term::Kind::Eps:
      collect(t.body());
      return;
  }
}

void Signature::collect(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      add_pred(f.pred(), f.args().size());
      for (const auto& a : f.args()) collect(a);
      return;
    case Formula::Kind::Neg:
      collect(f.operand());
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      collect(f.lhs());
      collect(f.rhs());
      return;
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      collect(f.body());
      return;
  }
}

void Signature::collect(const Sequent& s) {
  for (const auto& f : s.ante) collect(f);
  for (const auto& f : s.succ) collect(f);
}

// ---------------------------------------------------------------------------
// Variables and names

namespace {

void free_vars_into(const Formula& f, NameSet& bound, NameSet& out);

void free_vars_into(const Term& t, NameSet& bound, NameSet& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Kind::App:
      for (const auto& a : t.args()) free_vars_into(a, bound, out);
      return;
    case Term::Kind::Eps: {
      bool fresh = bound.insert(t.name()).second;
      free_vars_into(t.body(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
  }
}

void free_vars_into(const Formula& f, NameSet& bound, NameSet& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& a : f.args()) free_vars_into(a, bound, out);
      return;
    case Formula::Kind::Neg:
      free_vars_into(f.operand(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      free_vars_into(f.lhs(), bound, out);
      free_vars_into(f.rhs(), bound, out);
      return;
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      bool fresh = bound.insert(f.bound()).second;
      free_vars_into(f.body(), bound, out);
      if (fresh) bound.erase(f.bound());
      return;
    }
  }
}

}  // namespace

NameSet free_vars(const Term& t) {
  NameSet bound, out;
  free_vars_into(t, bound, out);
  return out;
}

NameSet free_vars(const Formula& f) {
  NameSet bound, out;
  free_vars_into(f, bound, out);
  return out;
}

NameSet free_vars(const Sequent& s) {
  NameSet out;
  for (const auto& f : s.ante) out.merge(free_vars(f));
  for (const auto& f : s.succ) out.merge(free_vars(f));
  return out;
}

bool occurs_free(const std::string& x, const Term& t) { return free_vars(t).count(x) > 0; }
bool occurs_free(const std::string& x, const Formula& f) { return free_vars(f).count(x) > 0; }

void collect_names(const Term& t, NameSet& out) {
  out.insert(t.name());
  if (t.kind() == Term::Kind::Eps) {
    collect_names(t.body(), out);
  } else {
    for (const auto& a : t.args()) collect_names(a, out);
  }
}

void collect_names(const Formula& f, NameSet& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.pred());
      for (const auto& a : f.args()) collect_names(a, out);
      return;
    case Formula::Kind::Neg:
      collect_names(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      collect_names(f.lhs(), out);
      collect_names(f.rhs(), out);
      return;
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      out.insert(f.bound());
      collect_names(f.body(), out);
      return;
  }
}

NameSet all_names(const Term& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

NameSet all_names(const Formula& f) {
  NameSet out;
  collect_names(f, out);
  return out;
}

std::string fresh_name(const std::string& prefix, NameSet& used) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = prefix + std::to_string(i);
    if (used.insert(candidate).second) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

// Restricts sigma to the variables free in the body of a binder for x and
// renames x when it would capture a free variable of the substituted terms.
template <typename Body, typename Rebuild>
auto subst_binder(const std::string& x, const Body& body, const TermMap& sigma, Rebuild rebuild)
    -> decltype(rebuild(x, body)) {
  NameSet body_free = free_vars(body);
  TermMap inner;
  NameSet range_free;
  for (const auto& [v, t] : sigma) {
    if (v == x || !body_free.count(v)) continue;
    inner.emplace(v, t);
    range_free.merge(free_vars(t));
  }
  if (inner.empty()) return rebuild(x, body);
  std::string bound = x;
  if (range_free.count(x)) {
    NameSet used = all_names(body);
    used.merge(range_free);
    used.insert(x);
    for (const auto& [v, t] : inner) used.insert(v);
    bound = fresh_name(x, used);
    inner[x] = Term::var(bound);
  }
  return rebuild(bound, substitute(body, inner));
}

}  // namespace

Term substitute(const Term& e, const TermMap& sigma) {
  if (sigma.empty()) return e;
  switch (e.kind()) {
    case Term::Kind::Var: {
      auto it = sigma.find(e.name());
      return it == sigma.end() ? e : it->second;
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute(a, sigma));
      return Term::app(e.name(), std::move(args));
    }
    case Term::Kind::Eps:
      return subst_binder(e.name(), e.body(), sigma,
                          [](const std::string& x, const Formula& b) { return Term::eps(x, b); });
  }
  return e;
}

Formula substitute(const Formula& e, const TermMap& sigma) {
  if (sigma.empty()) return e;
  switch (e.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute(a, sigma));
      return Formula::atom(e.pred(), std::move(args));
    }
    case Formula::Kind::Neg:
      return Formula::neg(substitute(e.operand(), sigma));
    case Formula::Kind::And:
      return Formula::conj(substitute(e.lhs(), sigma), substitute(e.rhs(), sigma));
    case Formula::Kind::Or:
      return Formula::disj(substitute(e.lhs(), sigma), substitute(e.rhs(), sigma));
    case Formula::Kind::Imp:
      return Formula::imp(substitute(e.lhs(), sigma), substitute(e.rhs(), sigma));
    case Formula::Kind::All:
      return subst_binder(e.bound(), e.body(), sigma,
                          [](const std::string& x, const Formula& b) { return Formula::all(x, b); });
    case Formula::Kind::Ex:
      return subst_binder(e.bound(), e.body(), sigma,
                          [](const std::string& x, const Formula& b) { return Formula::ex(x, b); });
  }
  return e;
}

Term substitute(const Term& e, const std::string& x, const Term& t) { return substitute(e, TermMap{{x, t}}); }

Formula substitute(const Formula& e, const std::string& x, const Term& t) {
  return substitute(e, TermMap{{x, t}});
}

Sequent substitute(const Sequent& s, const std::string& x, const Term& t) {
  Sequent out;
  for (const auto& f : s.ante) out.ante.push_back(substitute(f, x, t));
  for (const auto& f : s.succ) out.succ.push_back(substitute(f, x, t));
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence and matching

namespace {

class Matcher {
 public:
  Matcher(const NameSet& vars, TermMap& sigma) : vars_(vars), sigma_(sigma) {}

  bool terms(const Term& p, const Term& t) {
    if (p.kind() == Term::Kind::Var) {
      int pi = lookup(left_, p.name());
      if (pi < 0 && vars_.count(p.name())) return bind(p.name(), t);
      if (t.kind() != Term::Kind::Var) return false;
      int ti = lookup(right_, t.name());
      if (pi != ti) return false;
      return pi >= 0 || p.name() == t.name();
    }
    if (p.kind() != t.kind()) return false;
    if (p.kind() == Term::Kind::App) {
      if (p.name() != t.name() || p.args().size() != t.args().size()) return false;
      for (std::size_t i = 0; i < p.args().size(); ++i)
        if (!terms(p.args()[i], t.args()[i])) return false;
      return true;
    }
    return binder(p.name(), t.name(), [&] { return formulas(p.body(), t.body()); });
  }

  bool formulas(const Formula& p, const Formula& t) {
    if (p.kind() != t.kind()) return false;
    switch (p.kind()) {
      case Formula::Kind::Atom:
        if (p.pred() != t.pred() || p.args().size() != t.args().size()) return false;
        for (std::size_t i = 0; i < p.args().size(); ++i)
          if (!terms(p.args()[i], t.args()[i])) return false;
        return true;
      case Formula::Kind::Neg:
        return formulas(p.operand(), t.operand());
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Imp:
        return formulas(p.lhs(), t.lhs()) && formulas(p.rhs(), t.rhs());
      case Formula::Kind::All:
      case Formula::Kind::Ex:
        return binder(p.bound(), t.bound(), [&] { return formulas(p.body(), t.body()); });
    }
    return false;
  }

 private:
  static int lookup(const std::vector<std::string>& stack, const std::string& name) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
      if (stack[static_cast<std::size_t>(i)] == name) return i;
    return -1;
  }

  template <typename F>
  bool binder(const std::string& l, const std::string& r, F&& inner) {
    left_.push_back(l);
    right_.push_back(r);
    bool ok = inner();
    left_.pop_back();
    right_.pop_back();
    return ok;
  }

  bool bind(const std::string& v, const Term& t) {
    // The instance may not mention variables bound inside the target.
    for (const auto& x : free_vars(t))
      if (lookup(right_, x) >= 0) return false;
    auto it = sigma_.find(v);
    if (it == sigma_.end()) {
      sigma_.emplace(v, t);
      return true;
    }
    return alpha_eq(it->second, t);
  }

  const NameSet& vars_;
  TermMap& sigma_;
  std::vector<std::string> left_;
  std::vector<std::string> right_;
};

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  NameSet none;
  TermMap sigma;
  return Matcher(none, sigma).terms(a, b);
}

bool alpha_eq(const Formula& a, const Formula& b) {
  NameSet none;
  TermMap sigma;
  return Matcher(none, sigma).formulas(a, b);
}

std::optional<TermMap> match(const Formula& pattern, const NameSet& vars, const Formula& target) {
  TermMap sigma;
  if (!Matcher(vars, sigma).formulas(pattern, target)) return std::nullopt;
  return sigma;
}

std::optional<Term> match_instance(const Formula& pattern, const std::string& x, const Formula& target) {
  auto sigma = match(pattern, NameSet{x}, target);
  if (!sigma) return std::nullopt;
  auto it = sigma->find(x);
  if (it == sigma->end()) return Term::var(x);
  return it->second;
}

// ---------------------------------------------------------------------------
// Term replacement

namespace {

class Abstractor {
 public:
  Abstractor(const Term& from, std::string hole) : from_(from), from_free_(free_vars(from)), hole_(std::move(hole)) {}

  Term term(const Term& t) {
    if (matches(t)) return Term::var(hole_);
    switch (t.kind()) {
      case Term::Kind::Var:
        return t;
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return Term::app(t.name(), std::move(args));
      }
      case Term::Kind::Eps: {
        bound_.push_back(t.name());
        Formula b = formula(t.body());
        bound_.pop_back();
        return Term::eps(t.name(), b);
      }
    }
    return t;
  }

  Formula formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        std::vector<Term> args;
        for (const auto& a : f.args()) args.push_back(term(a));
        return Formula::atom(f.pred(), std::move(args));
      }
      case Formula::Kind::Neg:
        return Formula::neg(formula(f.operand()));
      case Formula::Kind::And:
        return Formula::conj(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::Or:
        return Formula::disj(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::Imp:
        return Formula::imp(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::All:
      case Formula::Kind::Ex: {
        bound_.push_back(f.bound());
        Formula b = formula(f.body());
        bound_.pop_back();
        return f.kind() == Formula::Kind::All ? Formula::all(f.bound(), b) : Formula::ex(f.bound(), b);
      }
    }
    return f;
  }

 private:
  bool matches(const Term& t) const {
    for (const auto& v : bound_)
      if (from_free_.count(v)) return false;
    return alpha_eq(t, from_);
  }

  const Term& from_;
  NameSet from_free_;
  std::string hole_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula replace_term(const Formula& f, const Term& from, const Term& to) {
  NameSet used = all_names(f);
  collect_names(from, used);
  collect_names(to, used);
  std::string hole = fresh_name("hole", used);
  return substitute(Abstractor(from, hole).formula(f), hole, to);
}

Term replace_term(const Term& e, const Term& from, const Term& to) {
  NameSet used = all_names(e);
  collect_names(from, used);
  collect_names(to, used);
  std::string hole = fresh_name("hole", used);
  return substitute(Abstractor(from, hole).term(e), hole, to);
}

// ---------------------------------------------------------------------------
// Queries

bool has_epsilon(const Term& t) {
  if (t.kind() == Term::Kind::Eps) return true;
  return std::any_of(t.args().begin(), t.args().end(), [](const Term& a) { return has_epsilon(a); });
}

bool has_epsilon(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return std::any_of(f.args().begin(), f.args().end(), [](const Term& a) { return has_epsilon(a); });
    case Formula::Kind::Neg:
      return has_epsilon(f.operand());
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      return has_epsilon(f.body());
    default:
      return has_epsilon(f.lhs()) || has_epsilon(f.rhs());
  }
}

bool has_quantifier(const Term& t) {
  if (t.kind() == Term::Kind::Eps) return has_quantifier(t.body());
  return std::any_of(t.args().begin(), t.args().end(), [](const Term& a) { return has_quantifier(a); });
}

bool has_quantifier(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return std::any_of(f.args().begin(), f.args().end(), [](const Term& a) { return has_quantifier(a); });
    case Formula::Kind::Neg:
      return has_quantifier(f.operand());
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      return true;
    default:
      return has_quantifier(f.lhs()) || has_quantifier(f.rhs());
  }
}

std::size_t quantifier_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Neg:
      return quantifier_count(f.operand());
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      return 1 + quantifier_count(f.body());
    default:
      return quantifier_count(f.lhs()) + quantifier_count(f.rhs());
  }
}

namespace {

void eps_into(const Formula& f, std::vector<Term>& out, bool maximal_only);

void eps_into(const Term& t, std::vector<Term>& out, bool maximal_only) {
  if (t.kind() == Term::Kind::Eps) {
    out.push_back(t);
    if (!maximal_only) eps_into(t.body(), out, false);
    return;
  }
  for (const auto& a : t.args()) eps_into(a, out, maximal_only);
}

void eps_into(const Formula& f, std::vector<Term>& out, bool maximal_only) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& a : f.args()) eps_into(a, out, maximal_only);
      return;
    case Formula::Kind::Neg:
      eps_into(f.operand(), out, maximal_only);
      return;
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      eps_into(f.body(), out, maximal_only);
      return;
    default:
      eps_into(f.lhs(), out, maximal_only);
      eps_into(f.rhs(), out, maximal_only);
      return;
  }
}

}  // namespace

std::vector<Term> epsilon_subterms(const Formula& f) {
  std::vector<Term> out;
  eps_into(f, out, false);
  return out;
}

std::vector<Term> epsilon_subterms(const Term& t) {
  std::vector<Term> out;
  eps_into(t, out, false);
  return out;
}

std::vector<Term> maximal_epsilon_subterms(const Formula& f) {
  std::vector<Term> all;
  eps_into(f, all, true);
  std::vector<Term> out;
  for (const auto& t : all)
    if (std::none_of(out.begin(), out.end(), [&](const Term& u) { return alpha_eq(t, u); }))
      out.push_back(t);
  return out;
}

std::size_t epsilon_depth(const Term& t) {
  if (t.kind() == Term::Kind::Eps) return 1 + epsilon_depth(t.body());
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, epsilon_depth(a));
  return d;
}

std::size_t epsilon_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::size_t d = 0;
      for (const auto& a : f.args()) d = std::max(d, epsilon_depth(a));
      return d;
    }
    case Formula::Kind::Neg:
      return epsilon_depth(f.operand());
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      return epsilon_depth(f.body());
    default:
      return std::max(epsilon_depth(f.lhs()), epsilon_depth(f.rhs()));
  }
}

std::size_t symbol_size(const Term& t) {
  if (t.kind() == Term::Kind::Eps) return 1 + symbol_size(t.body());
  std::size_t n = 1;
  for (const auto& a : t.args()) n += symbol_size(a);
  return n;
}

std::size_t symbol_size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::size_t n = 1;
      for (const auto& a : f.args()) n += symbol_size(a);
      return n;
    }
    case Formula::Kind::Neg:
      return 1 + symbol_size(f.operand());
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      return 1 + symbol_size(f.body());
    default:
      return 1 + symbol_size(f.lhs()) + symbol_size(f.rhs());
  }
}

// ---------------------------------------------------------------------------
// Matrix

namespace {

Formula strip_quantifiers(const Formula& f, const TermMap& renaming, NameSet& used,
                          std::vector<std::string>& vars) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return substitute(f, renaming);
    case Formula::Kind::Neg:
      return Formula::neg(strip_quantifiers(f.operand(), renaming, used, vars));
    case Formula::Kind::And: {
      auto l = strip_quantifiers(f.lhs(), renaming, used, vars);
      return Formula::conj(l, strip_quantifiers(f.rhs(), renaming, used, vars));
    }
    case Formula::Kind::Or: {
      auto l = strip_quantifiers(f.lhs(), renaming, used, vars);
      return Formula::disj(l, strip_quantifiers(f.rhs(), renaming, used, vars));
    }
    case Formula::Kind::Imp: {
      auto l = strip_quantifiers(f.lhs(), renaming, used, vars);
      return Formula::imp(l, strip_quantifiers(f.rhs(), renaming, used, vars));
    }
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      std::string v = fresh_name("v", used);
      vars.push_back(v);
      TermMap inner = renaming;
      inner[f.bound()] = Term::var(v);
      return strip_quantifiers(f.body(), inner, used, vars);
    }
  }
  return f;
}

}  // namespace

MatrixResult matrix_with_vars(const Formula& f) {
  if (has_epsilon(f)) throw MatrixUndefined("matrix is defined for first-order formulas only: " + to_string(f));
  NameSet used = all_names(f);
  MatrixResult out;
  out.formula = strip_quantifiers(f, {}, used, out.vars);
  return out;
}

Formula matrix(const Formula& f) { return matrix_with_vars(f).formula; }

bool is_reserved_constant(std::string_view name) {
  if (name == "def0") return true;
  if (name.size() < 3 || name.substr(0, 2) != "sk") return false;
  return std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace epsforge
