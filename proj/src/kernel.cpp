#include "epsforge/kernel.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace epsforge {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<RuleInfo, 19> kRules{{
    {Rule::Ax, "ax", 0},     {Rule::AndL, "andl", 1},  {Rule::AndR, "andr", 2}, {Rule::OrL, "orl", 2},
    {Rule::OrR, "orr", 1},   {Rule::ImpL, "impl", 2},  {Rule::ImpR, "impr", 1}, {Rule::NegL, "negl", 1},
    {Rule::NegR, "negr", 1}, {Rule::WL, "wl", 1},      {Rule::WR, "wr", 1},     {Rule::CL, "cl", 1},
    {Rule::CR, "cr", 1},     {Rule::Cut, "cut", 2},    {Rule::AllL, "alll", 1}, {Rule::AllR, "allr", 1},
    {Rule::ExL, "exl", 1},   {Rule::ExR, "exr", 1},    {Rule::Subst, "subst", 1},
}};

}  // namespace

std::string_view rule_name(Rule r) { return kRules[static_cast<std::size_t>(r)].name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& info : kRules)
    if (info.name == name) return info.rule;
  return std::nullopt;
}

std::size_t rule_arity(Rule r) { return kRules[static_cast<std::size_t>(r)].arity; }

std::string_view calculus_name(Calculus c) {
  switch (c) {
    case Calculus::LK: return "lk";
    case Calculus::Leps: return "leps";
    case Calculus::LKplus: return "lkplus";
    case Calculus::LKplusplus: return "lkplusplus";
  }
  return "lk";
}

std::optional<Calculus> calculus_from_name(std::string_view name) {
  for (auto c : {Calculus::LK, Calculus::Leps, Calculus::LKplus, Calculus::LKplusplus})
    if (calculus_name(c) == name) return c;
  return std::nullopt;
}

const Formula& at(const Sequent& s, Occurrence o) { return side(s, o.side).at(o.index); }
std::vector<Formula>& side(Sequent& s, Side which) { return which == Side::Ante ? s.ante : s.succ; }
const std::vector<Formula>& side(const Sequent& s, Side which) { return which == Side::Ante ? s.ante : s.succ; }

bool same_multiset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& f : a) {
    bool found = false;
    for (std::size_t i = 0; i < b.size() && !found; ++i) {
      if (!used[i] && alpha_eq(f, b[i])) used[i] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool same_sequent(const Sequent& a, const Sequent& b) {
  return same_multiset(a.ante, b.ante) && same_multiset(a.succ, b.succ);
}

std::size_t symbol_size(const Sequent& s) {
  std::size_t n = 0;
  for (const auto& f : s.ante) n += symbol_size(f);
  for (const auto& f : s.succ) n += symbol_size(f);
  return n;
}

// ---------------------------------------------------------------------------
// Rule matching

namespace {

struct AuxSpec {
  std::size_t premise;
  Side side;
  Formula formula;
};

struct Alternative {
  std::vector<AuxSpec> aux;
  std::optional<Term> witness;
  std::optional<std::string> eigenvariable;
  std::optional<Formula> cut_formula;
  std::optional<Term> epsilon;
};

using FormulaFn = std::function<Formula(const Formula&)>;

// Pairs auxiliary formulas with premise occurrences, then the remaining
// premise formulas with the conclusion context, one to one up to alpha.
bool link(const ProofNode& node, const std::optional<Occurrence>& principal, const Alternative& alt,
          const FormulaFn& transform, RuleMatch& out) {
  const auto& prem = node.premises;
  std::vector<std::array<std::vector<bool>, 2>> taken(prem.size());
  out.premises.assign(prem.size(), PremiseLinks{});
  for (std::size_t p = 0; p < prem.size(); ++p) {
    const auto& c = prem[p].conclusion;
    taken[p][0].assign(c.ante.size(), false);
    taken[p][1].assign(c.succ.size(), false);
    out.premises[p].ante.assign(c.ante.size(), Link{Link::Kind::Context, std::nullopt});
    out.premises[p].succ.assign(c.succ.size(), Link{Link::Kind::Context, std::nullopt});
  }

  for (const auto& want : alt.aux) {
    const auto& formulas = side(prem[want.premise].conclusion, want.side);
    auto& used = taken[want.premise][want.side == Side::Ante ? 0 : 1];
    bool found = false;
    for (std::size_t i = 0; i < formulas.size() && !found; ++i) {
      if (used[i] || !alpha_eq(formulas[i], want.formula)) continue;
      used[i] = found = true;
      auto& l = want.side == Side::Ante ? out.premises[want.premise].ante[i] : out.premises[want.premise].succ[i];
      l = alt.cut_formula ? Link{Link::Kind::Cut, std::nullopt} : Link{Link::Kind::Auxiliary, principal};
    }
    if (!found) return false;
  }

  const auto& concl = node.conclusion;
  std::array<std::vector<bool>, 2> concl_used{std::vector<bool>(concl.ante.size(), false),
                                              std::vector<bool>(concl.succ.size(), false)};
  if (principal) concl_used[principal->side == Side::Ante ? 0 : 1][principal->index] = true;

  for (std::size_t p = 0; p < prem.size(); ++p) {
    for (Side s : {Side::Ante, Side::Succ}) {
      std::size_t k = s == Side::Ante ? 0 : 1;
      const auto& formulas = side(prem[p].conclusion, s);
      const auto& targets = side(concl, s);
      for (std::size_t i = 0; i < formulas.size(); ++i) {
        if (taken[p][k][i]) continue;
        Formula f = transform ? transform(formulas[i]) : formulas[i];
        bool found = false;
        for (std::size_t j = 0; j < targets.size() && !found; ++j) {
          if (concl_used[k][j] || !alpha_eq(f, targets[j])) continue;
          concl_used[k][j] = found = true;
          auto& l = s == Side::Ante ? out.premises[p].ante[i] : out.premises[p].succ[i];
          l = Link{Link::Kind::Context, Occurrence{s, j}};
        }
        if (!found) return false;
      }
    }
  }
  for (const auto& used : concl_used)
    if (std::find(used.begin(), used.end(), false) != used.end()) return false;

  out.principal = principal;
  out.witness = alt.witness;
  out.eigenvariable = alt.eigenvariable;
  out.cut_formula = alt.cut_formula;
  out.epsilon = alt.epsilon;
  return true;
}

Side principal_side(Rule r) {
  switch (r) {
    case Rule::AndL:
    case Rule::OrL:
    case Rule::ImpL:
    case Rule::NegL:
    case Rule::WL:
    case Rule::CL:
    case Rule::AllL:
    case Rule::ExL:
      return Side::Ante;
    default:
      return Side::Succ;
  }
}

// Instances B[x:=t] of a quantifier body among the formulas of one premise
// side, or the single instance fixed by the payload.
void quantifier_alternatives(const ProofNode& node, Side aux_side, const std::string& x, const Formula& body,
                             bool strong, std::optional<Term> eps, std::vector<Alternative>& out) {
  const auto& d = node.data;
  auto add = [&](const Term& t) {
    Alternative alt;
    alt.aux.push_back({0, aux_side, substitute(body, x, t)});
    alt.witness = t;
    if (strong) alt.eigenvariable = t.name();
    alt.epsilon = eps;
    out.push_back(std::move(alt));
  };
  if (strong && d.eigenvariable) return add(Term::var(*d.eigenvariable));
  if (!strong && d.witness) return add(*d.witness);
  for (const auto& q : side(node.premises.at(0).conclusion, aux_side)) {
    auto t = match_instance(body, x, q);
    if (!t) continue;
    if (strong && !t->is_var()) continue;
    add(*t);
  }
}

std::vector<Alternative> alternatives(const ProofNode& node, const Formula& p, bool epsilon_rules) {
  std::vector<Alternative> out;
  auto simple = [&](std::initializer_list<AuxSpec> specs) {
    Alternative alt;
    alt.aux = specs;
    out.push_back(std::move(alt));
  };
  switch (node.rule) {
    case Rule::AndL:
      if (p.kind() == Formula::Kind::And) simple({{0, Side::Ante, p.lhs()}, {0, Side::Ante, p.rhs()}});
      break;
    case Rule::AndR:
      if (p.kind() == Formula::Kind::And) simple({{0, Side::Succ, p.lhs()}, {1, Side::Succ, p.rhs()}});
      break;
    case Rule::OrL:
      if (p.kind() == Formula::Kind::Or) simple({{0, Side::Ante, p.lhs()}, {1, Side::Ante, p.rhs()}});
      break;
    case Rule::OrR:
      if (p.kind() == Formula::Kind::Or) simple({{0, Side::Succ, p.lhs()}, {0, Side::Succ, p.rhs()}});
      break;
    case Rule::ImpL:
      if (p.kind() == Formula::Kind::Imp) simple({{0, Side::Succ, p.lhs()}, {1, Side::Ante, p.rhs()}});
      break;
    case Rule::ImpR:
      if (p.kind() == Formula::Kind::Imp) simple({{0, Side::Ante, p.lhs()}, {0, Side::Succ, p.rhs()}});
      break;
    case Rule::NegL:
      if (p.kind() == Formula::Kind::Neg) simple({{0, Side::Succ, p.operand()}});
      break;
    case Rule::NegR:
      if (p.kind() == Formula::Kind::Neg) simple({{0, Side::Ante, p.operand()}});
      break;
    case Rule::WL:
    case Rule::WR:
      simple({});
      break;
    case Rule::CL:
      simple({{0, Side::Ante, p}, {0, Side::Ante, p}});
      break;
    case Rule::CR:
      simple({{0, Side::Succ, p}, {0, Side::Succ, p}});
      break;
    case Rule::AllL:
    case Rule::ExR: {
      Side s = node.rule == Rule::AllL ? Side::Ante : Side::Succ;
      if (!epsilon_rules) {
        auto want = node.rule == Rule::AllL ? Formula::Kind::All : Formula::Kind::Ex;
        if (p.kind() == want) quantifier_alternatives(node, s, p.bound(), p.body(), false, std::nullopt, out);
        break;
      }
      // Principal formula B(e) with e = eps x. B(x), resp. eps x. ~B(x).
      std::vector<Term> seen;
      for (const auto& e : epsilon_subterms(p)) {
        if (std::any_of(seen.begin(), seen.end(), [&](const Term& u) { return alpha_eq(u, e); })) continue;
        seen.push_back(e);
        const Formula* body = &e.body();
        if (node.rule == Rule::AllL) {
          if (body->kind() != Formula::Kind::Neg) continue;
          body = &body->operand();
        }
        if (!alpha_eq(substitute(*body, e.name(), e), p)) continue;
        quantifier_alternatives(node, s, e.name(), *body, false, e, out);
      }
      // Vacuous quantifier: B(eps x. B) is B itself.
      NameSet used = free_vars(p);
      std::string x = fresh_name("x", used);
      Term e = Term::eps(x, node.rule == Rule::AllL ? Formula::neg(p) : p);
      quantifier_alternatives(node, s, x, p, false, e, out);
      break;
    }
    case Rule::AllR:
    case Rule::ExL: {
      auto want = node.rule == Rule::AllR ? Formula::Kind::All : Formula::Kind::Ex;
      if (p.kind() == want)
        quantifier_alternatives(node, principal_side(node.rule), p.bound(), p.body(), true, std::nullopt, out);
      break;
    }
    default:
      break;
  }
  return out;
}

void set_why(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
}

}  // namespace

std::optional<RuleMatch> match_rule(const ProofNode& node, bool epsilon_rules, std::string* why) {
  if (node.premises.size() != rule_arity(node.rule)) {
    set_why(why, "wrong number of premises");
    return std::nullopt;
  }
  RuleMatch out;
  const auto& concl = node.conclusion;

  switch (node.rule) {
    case Rule::Ax:
      if (concl.ante.size() == 1 && concl.succ.size() == 1 && alpha_eq(concl.ante[0], concl.succ[0])) return out;
      set_why(why, "axiom must have the form A |- A");
      return std::nullopt;

    case Rule::Cut: {
      const auto& left = node.premises[0].conclusion.succ;
      for (std::size_t i = 0; i < left.size(); ++i) {
        Alternative alt;
        alt.aux = {{0, Side::Succ, left[i]}, {1, Side::Ante, left[i]}};
        alt.cut_formula = left[i];
        if (link(node, std::nullopt, alt, nullptr, out)) return out;
      }
      set_why(why, "no cut formula joins the premises to the conclusion");
      return std::nullopt;
    }

    case Rule::Subst: {
      if (!node.data.var || !node.data.term) {
        set_why(why, "subst needs :var and :term");
        return std::nullopt;
      }
      std::string x = *node.data.var;
      Term t = *node.data.term;
      FormulaFn fn = [x, t](const Formula& f) { return substitute(f, x, t); };
      if (link(node, std::nullopt, Alternative{}, fn, out)) return out;
      set_why(why, "conclusion is not the substitution instance of the premise");
      return std::nullopt;
    }

    default:
      break;
  }

  Side s = principal_side(node.rule);
  const auto& formulas = side(concl, s);
  std::vector<std::size_t> candidates;
  if (node.data.principal) {
    if (*node.data.principal >= formulas.size()) {
      set_why(why, "principal index out of range");
      return std::nullopt;
    }
    candidates.push_back(*node.data.principal);
  } else {
    for (std::size_t i = 0; i < formulas.size(); ++i) candidates.push_back(i);
  }
  for (std::size_t i : candidates) {
    for (const auto& alt : alternatives(node, formulas[i], epsilon_rules)) {
      if (link(node, Occurrence{s, i}, alt, nullptr, out)) return out;
    }
  }
  set_why(why, std::string("sequents do not fit rule ") + std::string(rule_name(node.rule)));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Walkers

namespace {

template <typename F>
void walk(const ProofNode& p, const std::string& path, F&& visit) {
  visit(p, path);
  for (std::size_t i = 0; i < p.premises.size(); ++i) walk(p.premises[i], path + "/" + std::to_string(i), visit);
}

std::string child_path(const std::string& path, std::size_t i) {
  return (path == "/" ? "" : path) + "/" + std::to_string(i);
}

template <typename F>
void walk_paths(const ProofNode& p, const std::string& path, F&& visit) {
  visit(p, path);
  for (std::size_t i = 0; i < p.premises.size(); ++i) walk_paths(p.premises[i], child_path(path, i), visit);
}

}  // namespace

std::size_t count_rule(const ProofNode& p, Rule r) {
  std::size_t n = p.rule == r ? 1 : 0;
  for (const auto& q : p.premises) n += count_rule(q, r);
  return n;
}

bool is_cut_free(const ProofNode& p) { return count_rule(p, Rule::Cut) == 0; }

NameSet proof_names(const ProofNode& p) {
  NameSet out;
  walk(p, "", [&](const ProofNode& n, const std::string&) {
    for (const auto& f : n.conclusion.ante) collect_names(f, out);
    for (const auto& f : n.conclusion.succ) collect_names(f, out);
    if (n.data.eigenvariable) out.insert(*n.data.eigenvariable);
    if (n.data.witness) collect_names(*n.data.witness, out);
    if (n.data.var) out.insert(*n.data.var);
    if (n.data.term) collect_names(*n.data.term, out);
    if (n.data.origin) collect_names(*n.data.origin, out);
  });
  return out;
}

Metrics metrics(const ProofNode& p) {
  Metrics m;
  walk(p, "", [&](const ProofNode& n, const std::string&) {
    if (n.rule == Rule::Subst) return;
    ++m.sequent_count;
    if (n.rule != Rule::Ax) ++m.length;
    m.symbol_size += symbol_size(n.conclusion);
  });
  return m;
}

// ---------------------------------------------------------------------------
// Side variables

namespace {

struct StrongInference {
  std::string path;
  std::string eigenvariable;
  Formula principal;
};

std::vector<StrongInference> strong_inferences(const ProofNode& p) {
  std::vector<StrongInference> out;
  walk_paths(p, "/", [&](const ProofNode& n, const std::string& path) {
    if (!is_strong_rule(n.rule)) return;
    auto m = match_rule(n, false);
    if (!m || !m->eigenvariable || !m->principal) return;
    out.push_back({path, *m->eigenvariable, at(n.conclusion, *m->principal)});
  });
  return out;
}

SideVarGraph graph_of(const std::vector<StrongInference>& strong) {
  SideVarGraph g;
  for (const auto& s : strong) {
    g.nodes.insert(s.eigenvariable);
    // An eigenvariable free in its own main formula is its own side variable.
    for (const auto& b : free_vars(s.principal)) {
      g.nodes.insert(b);
      g.edges.emplace(s.eigenvariable, b);
    }
  }
  return g;
}

}  // namespace

SideVarGraph side_variable_relation(const ProofNode& p) { return graph_of(strong_inferences(p)); }

bool check_acyclic(const SideVarGraph& g) {
  // Kahn's algorithm.
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& n : g.nodes) indegree[n];
  for (const auto& [a, b] : g.edges) {
    indegree[a];
    ++indegree[b];
    succ[a].push_back(b);
  }
  std::vector<std::string> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.push_back(n);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::string n = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& m : succ[n])
      if (--indegree[m] == 0) ready.push_back(m);
  }
  return seen == indegree.size();
}

// ---------------------------------------------------------------------------
// Checking

CheckReport check(const ProofNode& root, Calculus c) {
  CheckReport report;
  report.calculus = c;
  const bool eps = c == Calculus::Leps;
  auto violate = [&](const std::string& path, std::string condition, std::string message) {
    report.violations.push_back({path, std::move(condition), std::move(message)});
  };

  walk_paths(root, "/", [&](const ProofNode& n, const std::string& path) {
    if (n.premises.size() != rule_arity(n.rule))
      throw MalformedTree(path + ": " + std::string(rule_name(n.rule)) + " needs " +
                          std::to_string(rule_arity(n.rule)) + " premise(s), got " +
                          std::to_string(n.premises.size()));
    if (n.rule == Rule::Subst && (!n.data.var || !n.data.term))
      throw MalformedTree(path + ": subst needs :var and :term");

    for (const auto* fs : {&n.conclusion.ante, &n.conclusion.succ}) {
      for (const auto& f : *fs) {
        if (eps && has_quantifier(f)) {
          violate(path, "epsilon language", "quantifier in " + to_string(f));
        } else if (!eps && has_epsilon(f)) {
          violate(path, "first-order language", "epsilon term in " + to_string(f));
        }
      }
    }

    if (eps && is_strong_rule(n.rule)) {
      violate(path, "forbidden rule", std::string(rule_name(n.rule)) + " is replaced by substitution in leps");
      return;
    }
    if (!eps && n.rule == Rule::Subst) {
      violate(path, "forbidden rule", "subst is only available in leps");
      return;
    }

    std::string why;
    auto m = match_rule(n, eps, &why);
    if (!m) {
      violate(path, "rule shape", why);
      return;
    }
    if (n.rule == Rule::Ax && !n.conclusion.ante[0].is_atom())
      violate(path, "axiom", "axiom formula is not atomic: " + to_string(n.conclusion.ante[0]));

    if (c == Calculus::LK && is_strong_rule(n.rule) && m->eigenvariable &&
        free_vars(n.conclusion).count(*m->eigenvariable)) {
      violate(path, "eigenvariable condition",
              "eigenvariable " + *m->eigenvariable + " occurs in the conclusion of " +
                  std::string(rule_name(n.rule)));
    }
  });

  auto strong = strong_inferences(root);
  report.side_var_graph = graph_of(strong);

  if (c == Calculus::LKplus || c == Calculus::LKplusplus) {
    NameSet end_vars = free_vars(root.conclusion);
    for (const auto& s : strong) {
      if (end_vars.count(s.eigenvariable))
        violate(s.path, "substitutability", "eigenvariable " + s.eigenvariable + " occurs in the end-sequent");
      for (const auto& other : strong) {
        if (&other == &s || other.eigenvariable != s.eigenvariable) continue;
        if (c == Calculus::LKplus) {
          violate(s.path, "weak regularity",
                  "eigenvariable " + s.eigenvariable + " is also used at " + other.path);
          break;
        }
        if (!alpha_eq(other.principal, s.principal)) {
          violate(s.path, "very weak regularity",
                  "eigenvariable " + s.eigenvariable + " is shared with " + other.path +
                      " whose main formula differs");
          break;
        }
      }
    }
    if (!check_acyclic(report.side_var_graph))
      violate("/", "side variable condition", "the side variable relation has a cycle");
  }

  report.metrics = metrics(root);
  report.valid = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Axiom expansion

namespace {

ProofNode node(Rule r, Sequent s, std::vector<ProofNode> premises = {}) {
  ProofNode n;
  n.rule = r;
  n.conclusion = std::move(s);
  n.premises = std::move(premises);
  return n;
}

ProofNode expand(const Formula& f, Calculus c, NameSet& avoid) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return node(Rule::Ax, {{f}, {f}});
    case Formula::Kind::And: {
      auto inner = node(Rule::AndR, {{f.lhs(), f.rhs()}, {f}},
                        {expand(f.lhs(), c, avoid), expand(f.rhs(), c, avoid)});
      return node(Rule::AndL, {{f}, {f}}, {std::move(inner)});
    }
    case Formula::Kind::Or: {
      auto inner = node(Rule::OrL, {{f}, {f.lhs(), f.rhs()}},
                        {expand(f.lhs(), c, avoid), expand(f.rhs(), c, avoid)});
      return node(Rule::OrR, {{f}, {f}}, {std::move(inner)});
    }
    case Formula::Kind::Imp: {
      auto inner = node(Rule::ImpL, {{f, f.lhs()}, {f.rhs()}},
                        {expand(f.lhs(), c, avoid), expand(f.rhs(), c, avoid)});
      return node(Rule::ImpR, {{f}, {f}}, {std::move(inner)});
    }
    case Formula::Kind::Neg: {
      auto inner = node(Rule::NegL, {{f, f.operand()}, {}}, {expand(f.operand(), c, avoid)});
      return node(Rule::NegR, {{f}, {f}}, {std::move(inner)});
    }
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      if (c == Calculus::Leps) throw InvalidInput("leps formulas contain no quantifiers: " + to_string(f));
      bool universal = f.kind() == Formula::Kind::All;
      std::string a = fresh_name(f.bound(), avoid);
      Term at = Term::var(a);
      Formula inst = substitute(f.body(), f.bound(), at);
      ProofNode top = expand(inst, c, avoid);
      ProofNode weak = universal ? node(Rule::AllL, {{f}, {inst}}, {std::move(top)})
                                 : node(Rule::ExR, {{inst}, {f}}, {std::move(top)});
      weak.data.witness = at;
      ProofNode strong = node(universal ? Rule::AllR : Rule::ExL, {{f}, {f}}, {std::move(weak)});
      strong.data.eigenvariable = a;
      return strong;
    }
  }
  return node(Rule::Ax, {{f}, {f}});
}

}  // namespace

ProofNode expand_axiom(const Formula& f, Calculus c, NameSet* avoid) {
  NameSet local;
  NameSet& used = avoid ? *avoid : local;
  collect_names(f, used);
  return expand(f, c, used);
}

}  // namespace epsforge
