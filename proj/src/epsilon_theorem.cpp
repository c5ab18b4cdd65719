#include "epsforge/epsilon_theorem.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "epsforge/errors.hpp"
#include "epsforge/translation.hpp"

namespace epsforge {

namespace {

std::size_t rank_of_eps(const Term& e);

std::size_t max_rank(const std::vector<Term>& subterms, const std::string* bound) {
  std::size_t r = 0;
  for (const auto& s : subterms) {
    if (bound && !occurs_free(*bound, s)) continue;
    r = std::max(r, rank_of_eps(s));
  }
  return r;
}

std::size_t rank_of_eps(const Term& e) {
  auto inner = epsilon_subterms(e.body());
  return 1 + max_rank(inner, &e.name());
}

}  // namespace

std::size_t epsilon_rank(const Term& t) {
  if (t.is_eps()) return rank_of_eps(t);
  return max_rank(epsilon_subterms(t), nullptr);
}

// ---------------------------------------------------------------------------
// Tautology checking

namespace {

struct Compiled {
  enum Op { Atom, Neg, And, Or, Imp } op;
  std::size_t a = 0, b = 0;  // children, or atom index
};

class Propositional {
 public:
  explicit Propositional(const Formula& f) { root_ = compile(f); }

  std::size_t atom_count() const { return atoms_.size(); }

  // Kleene evaluation under a partial assignment: 1 true, 0 false, 2 unknown.
  int eval(std::size_t n, const std::vector<int>& v) const {
    const auto& c = nodes_[n];
    switch (c.op) {
      case Compiled::Atom:
        return v[c.a];
      case Compiled::Neg: {
        int x = eval(c.a, v);
        return x == 2 ? 2 : 1 - x;
      }
      case Compiled::And: {
        int x = eval(c.a, v);
        if (x == 0) return 0;
        int y = eval(c.b, v);
        if (y == 0) return 0;
        return x == 1 && y == 1 ? 1 : 2;
      }
      case Compiled::Or: {
        int x = eval(c.a, v);
        if (x == 1) return 1;
        int y = eval(c.b, v);
        if (y == 1) return 1;
        return x == 0 && y == 0 ? 0 : 2;
      }
      case Compiled::Imp: {
        int x = eval(c.a, v);
        if (x == 0) return 1;
        int y = eval(c.b, v);
        if (y == 1) return 1;
        return x == 1 && y == 0 ? 0 : 2;
      }
    }
    return 2;
  }

  bool valid() const {
    std::vector<int> v(atoms_.size(), 2);
    return split(v, 0);
  }

 private:
  bool split(std::vector<int>& v, std::size_t next) const {
    int r = eval(root_, v);
    if (r != 2) return r == 1;
    for (int value : {0, 1}) {
      v[next] = value;
      bool ok = split(v, next + 1);
      v[next] = 2;
      if (!ok) return false;
    }
    return true;
  }

  std::size_t atom_index(const Formula& f) {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (alpha_eq(atoms_[i], f)) return i;
    atoms_.push_back(f);
    return atoms_.size() - 1;
  }

  std::size_t add(Compiled c) {
    nodes_.push_back(c);
    return nodes_.size() - 1;
  }

  std::size_t compile(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return add({Compiled::Atom, atom_index(f), 0});
      case Formula::Kind::Neg:
        return add({Compiled::Neg, compile(f.operand()), 0});
      case Formula::Kind::And: {
        auto l = compile(f.lhs());
        return add({Compiled::And, l, compile(f.rhs())});
      }
      case Formula::Kind::Or: {
        auto l = compile(f.lhs());
        return add({Compiled::Or, l, compile(f.rhs())});
      }
      case Formula::Kind::Imp: {
        auto l = compile(f.lhs());
        return add({Compiled::Imp, l, compile(f.rhs())});
      }
      default:
        throw InvalidInput("tautology check needs a quantifier-free formula: " + to_string(f));
    }
  }

  std::vector<Formula> atoms_;
  std::vector<Compiled> nodes_;
  std::size_t root_ = 0;
};

}  // namespace

bool is_tautology(const Formula& f, std::size_t max_atoms) {
  Propositional p(f);
  if (p.atom_count() > max_atoms)
    throw TooManyAtoms(std::to_string(p.atom_count()) + " distinct atoms exceed the limit of " +
                       std::to_string(max_atoms));
  return p.valid();
}

// ---------------------------------------------------------------------------
// Problems

Formula EpsilonProblem::implication() const {
  if (criticals.empty()) return goal;
  Formula all = criticals.front().formula;
  for (std::size_t i = 1; i < criticals.size(); ++i) all = Formula::conj(all, criticals[i].formula);
  return Formula::imp(all, goal);
}

EpsilonProblem EpsilonProblem::make(std::vector<CriticalFormula> criticals, Formula goal) {
  EpsilonProblem p{std::move(criticals), std::move(goal)};
  if (!is_tautology(p.implication()))
    throw NonTautology("criticals do not imply the goal propositionally: " + to_string(p.implication()));
  return p;
}

Term default_term() { return Term::app("def0", {}); }

namespace {

bool mentions(const Term& hay, const Term& needle) {
  if (alpha_eq(hay, needle)) return true;
  auto subs = epsilon_subterms(hay);
  return std::any_of(subs.begin(), subs.end(), [&](const Term& s) { return alpha_eq(s, needle); });
}

CriticalFormula replace_in(const CriticalFormula& c, const Term& e, const Term& t) {
  Term eps = replace_term(Term::eps(c.var, c.base), e, t);
  return make_critical(eps.name(), eps.body(), replace_term(c.witness, e, t));
}

Term strip_epsilon(Term t) {
  while (true) {
    auto subs = epsilon_subterms(t);
    if (subs.empty()) return t;
    t = replace_term(t, subs.front(), default_term());
  }
}

std::string tuple_text(const std::vector<Term>& tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    out += to_string(tuple[i]);
  }
  return out;
}

struct Eliminator {
  std::size_t budget = kDefaultStepBudget;
  std::size_t steps = 0;
  std::vector<std::vector<Term>> out;

  void solve(const std::vector<CriticalFormula>& crits, const std::vector<Term>& tuple) {
    if (++steps > budget) throw Diverged("critical formula elimination exceeded its step budget");
    if (crits.empty()) {
      out.push_back(tuple);
      return;
    }
    std::vector<Term> terms;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < crits.size(); ++i) {
      Term e = Term::eps(crits[i].var, crits[i].base);
      auto it = std::find_if(terms.begin(), terms.end(), [&](const Term& u) { return alpha_eq(u, e); });
      if (it == terms.end()) {
        terms.push_back(e);
        groups.push_back({i});
      } else {
        groups[static_cast<std::size_t>(it - terms.begin())].push_back(i);
      }
    }

    std::optional<std::size_t> pick;
    std::size_t best = 0;
    for (std::size_t g = 0; g < terms.size(); ++g) {
      bool self = std::any_of(groups[g].begin(), groups[g].end(),
                              [&](std::size_t i) { return mentions(crits[i].witness, terms[g]); });
      if (self) continue;
      std::size_t r = epsilon_rank(terms[g]);
      if (!pick || r > best) {
        pick = g;
        best = r;
      }
    }
    if (!pick) throw Diverged("every remaining epsilon term occurs in one of its own witnesses");

    const Term e = terms[*pick];
    std::vector<Term> witnesses;
    std::vector<Formula> premises;
    std::set<std::size_t> mine(groups[*pick].begin(), groups[*pick].end());
    for (std::size_t i : groups[*pick]) {
      premises.push_back(crits[i].formula.lhs());
      const Term& w = crits[i].witness;
      if (std::none_of(witnesses.begin(), witnesses.end(), [&](const Term& u) { return alpha_eq(u, w); }))
        witnesses.push_back(w);
    }

    auto branch = [&](const Term& t) {
      std::vector<CriticalFormula> next;
      for (std::size_t i = 0; i < crits.size(); ++i)
        if (!mine.count(i)) next.push_back(replace_in(crits[i], e, t));
      std::vector<Term> inst;
      for (const auto& u : tuple) inst.push_back(replace_term(u, e, t));
      solve(next, inst);
    };
    for (const auto& w : witnesses) branch(w);
    // The branch where no critical formula of e fires is impossible when
    // one of their antecedents always holds.
    Formula some = premises.front();
    for (std::size_t i = 1; i < premises.size(); ++i) some = Formula::disj(some, premises[i]);
    if (!is_tautology(some)) branch(default_term());
  }
};

}  // namespace

HerbrandDisjunction eliminate(const EpsilonProblem& problem, const Formula& templ,
                              const std::vector<std::string>& vars, std::size_t budget) {
  NameSet var_set(vars.begin(), vars.end());
  auto sigma = match(templ, var_set, problem.goal);
  if (!sigma) throw InvalidInput("goal " + to_string(problem.goal) + " is not an instance of " + to_string(templ));
  std::vector<Term> tuple;
  for (const auto& v : vars) {
    auto it = sigma->find(v);
    tuple.push_back(it == sigma->end() ? default_term() : it->second);
  }

  Eliminator el;
  el.budget = budget;
  el.solve(problem.criticals, tuple);

  std::map<std::string, std::vector<Term>> sorted;
  for (const auto& inst : el.out) {
    std::vector<Term> clean;
    for (const auto& t : inst) clean.push_back(strip_epsilon(t));
    sorted.emplace(tuple_text(clean), clean);
  }

  HerbrandDisjunction h;
  h.templ = templ;
  h.vars = vars;
  std::vector<Formula> parts;
  for (auto& [text, inst] : sorted) {
    TermMap s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], inst[i]);
    parts.push_back(substitute(templ, s));
    h.instances.push_back(std::move(inst));
  }
  h.disjunction = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) h.disjunction = Formula::disj(h.disjunction, parts[i]);
  h.certified = is_tautology(h.disjunction);
  if (!h.certified) throw NonTautology("Herbrand disjunction is not tautological: " + to_string(h.disjunction));
  return h;
}

bool has_strong_quantifier(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return false;
    case Formula::Kind::Neg:
      return has_strong_quantifier(f.operand(), !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return has_strong_quantifier(f.lhs(), positive) || has_strong_quantifier(f.rhs(), positive);
    case Formula::Kind::Imp:
      return has_strong_quantifier(f.lhs(), !positive) || has_strong_quantifier(f.rhs(), positive);
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      if (is_strong(f.kind(), positive ? Polarity::Positive : Polarity::Negative)) return true;
      return has_strong_quantifier(f.body(), positive);
  }
  return false;
}

HerbrandDisjunction herbrand_pipeline(const ProofNode& p, const Formula& fo_goal) {
  if (!is_cut_free(p)) throw UnsupportedCut("epsilon-theorem: the input contains a cut");
  if (has_epsilon(fo_goal)) throw InvalidInput("the goal must be first-order: " + to_string(fo_goal));
  if (has_strong_quantifier(fo_goal))
    throw InvalidInput("the goal contains a strong quantifier: " + to_string(fo_goal));
  const auto& c = p.conclusion;
  if (!c.ante.empty() || c.succ.size() != 1 || !alpha_eq(c.succ[0], to_epsilon(fo_goal)))
    throw InvalidInput("the proof must end in |- " + to_string(to_epsilon(fo_goal)));
  CriticalForm cf = to_critical_form(p);
  auto problem = EpsilonProblem::make(cf.criticals, cf.goal);
  auto m = matrix_with_vars(fo_goal);
  return eliminate(problem, m.formula, m.vars);
}

nlohmann::json to_json(const HerbrandDisjunction& h) {
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& t : h.instances) inst.push_back(tuple_text(t));
  return {{"template", to_string(h.templ)},
          {"vars", h.vars},
          {"instances", inst},
          {"disjunction", to_string(h.disjunction)},
          {"certified", h.certified}};
}

}  // namespace epsforge
