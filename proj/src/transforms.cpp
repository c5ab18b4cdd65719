#include "epsforge/transforms.hpp"

#include <algorithm>
#include <functional>

#include "epsforge/errors.hpp"
#include "epsforge/proof_io.hpp"
#include "epsforge/translation.hpp"

namespace epsforge {

namespace {

ProofNode make(Rule r, Sequent s, std::vector<ProofNode> premises = {}) {
  ProofNode n;
  n.rule = r;
  n.conclusion = std::move(s);
  n.premises = std::move(premises);
  return n;
}

std::string child_path(const std::string& path, std::size_t i) {
  return (path == "/" ? "" : path) + "/" + std::to_string(i);
}

void require_valid(const ProofNode& p, Calculus c, const std::string& pass) {
  auto r = check(p, c);
  if (r.valid) return;
  const auto& v = r.violations.front();
  throw InvalidInput(pass + ": input is not " + std::string(calculus_name(c)) + "-valid (" + v.path + ": " +
                     v.condition + ": " + v.message + ")");
}

Sequent map_sequent(const Sequent& s, const std::function<Formula(const Formula&)>& fn) {
  Sequent out;
  for (const auto& f : s.ante) out.ante.push_back(fn(f));
  for (const auto& f : s.succ) out.succ.push_back(fn(f));
  return out;
}

TransformTrace start_trace(const std::string& pass, const ProofNode& in) {
  TransformTrace t;
  t.pass = pass;
  t.input = metrics(in);
  return t;
}

TransformResult finish(ProofNode out, TransformTrace trace) {
  trace.output = metrics(out);
  return {std::move(out), std::move(trace)};
}

Formula big_or(const std::vector<Formula>& fs) {
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disj(out, fs[i]);
  return out;
}

Formula big_and(const std::vector<Formula>& fs) {
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

}  // namespace

CriticalFormula make_critical(const std::string& x, const Formula& base, const Term& t) {
  Formula f = Formula::imp(substitute(base, x, t), substitute(base, x, Term::eps(x, base)));
  return {x, base, t, f};
}

ProofNode substitute_proof(const ProofNode& p, const TermMap& sigma) {
  if (sigma.empty()) return p;
  ProofNode out;
  out.rule = p.rule;
  out.conclusion = map_sequent(p.conclusion, [&](const Formula& f) { return substitute(f, sigma); });
  out.data = p.data;
  auto rename = [&](std::optional<std::string>& name) {
    if (!name) return;
    auto it = sigma.find(*name);
    if (it != sigma.end() && it->second.is_var()) name = it->second.name();
  };
  rename(out.data.eigenvariable);
  if (out.data.witness) out.data.witness = substitute(*out.data.witness, sigma);
  if (out.data.term) out.data.term = substitute(*out.data.term, sigma);
  if (out.data.var && sigma.count(*out.data.var)) {
    // A substitution node's own variable is bound by the node; only rename.
    rename(out.data.var);
  }
  if (out.data.origin) out.data.origin = substitute(*out.data.origin, sigma);
  for (const auto& q : p.premises) out.premises.push_back(substitute_proof(q, sigma));
  return out;
}

// ---------------------------------------------------------------------------
// Renaming apart

namespace {

// Names used anywhere except inside `skip`.
void names_outside(const ProofNode& m, const ProofNode* skip, NameSet& out) {
  if (&m == skip) return;
  ProofNode shallow;
  shallow.conclusion = m.conclusion;
  shallow.data = m.data;
  auto names = proof_names(shallow);
  out.insert(names.begin(), names.end());
  for (const auto& q : m.premises) names_outside(q, skip, out);
}

void eigenvariables_in(const ProofNode& n, NameSet& out) {
  if (is_strong_rule(n.rule) && n.data.eigenvariable) out.insert(*n.data.eigenvariable);
  for (const auto& q : n.premises) eigenvariables_in(q, out);
}

// Renames an eigenvariable over the highest subtree whose conclusion does
// not mention it, so that inferences sharing it in an LK++ proof are only
// separated where that leaves every rule instance intact.
void rename_walk(ProofNode& n, const ProofNode& root, NameSet& used) {
  NameSet evs;
  eigenvariables_in(n, evs);
  if (&n != &root) {
    auto fv = free_vars(n.conclusion);
    for (const auto& a : evs) {
      if (fv.count(a)) continue;
      NameSet outside;
      names_outside(root, &n, outside);
      if (!outside.count(a)) continue;
      n = substitute_proof(n, {{a, Term::var(fresh_name(a, used))}});
    }
  }
  for (auto& q : n.premises) rename_walk(q, root, used);
}

}  // namespace

ProofNode rename_eigenvariables_apart(const ProofNode& p) {
  ProofNode out = p;
  NameSet used = proof_names(p);
  rename_walk(out, out, used);
  return out;
}

// ---------------------------------------------------------------------------
// LK -> epsilon calculus

namespace {

ProofNode to_leps(const ProofNode& n, const std::string& path, TransformTrace& trace) {
  ProofNode out;
  out.conclusion = map_sequent(n.conclusion, to_epsilon);
  out.data = n.data;
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    out.premises.push_back(to_leps(n.premises[i], child_path(path, i), trace));

  if (is_strong_rule(n.rule)) {
    auto m = match_rule(n, false);
    const Formula& principal = at(n.conclusion, *m->principal);
    Formula body = to_epsilon(principal.body());
    Formula eps_body = n.rule == Rule::AllR ? Formula::neg(body) : body;
    out.rule = Rule::Subst;
    out.data = RuleData{};
    out.data.var = *m->eigenvariable;
    out.data.term = Term::eps(principal.bound(), eps_body);
    trace.steps.push_back({path, std::string(rule_name(n.rule)) + "-to-subst"});
    return out;
  }
  out.rule = n.rule;
  if (n.rule == Rule::Cut) {
    auto m = match_rule(n, false);
    out.data.origin = *m->cut_formula;
  }
  return out;
}

}  // namespace

TransformResult lk_to_leps(const ProofNode& p) {
  require_valid(p, Calculus::LK, "lk-to-leps");
  auto trace = start_trace("lk-to-leps", p);
  ProofNode out = to_leps(p, "/", trace);
  return finish(std::move(out), std::move(trace));
}

// ---------------------------------------------------------------------------
// Critical-formula form

namespace {

struct Carried {
  ProofNode node;
  std::vector<CriticalFormula> criticals;
};

CriticalFormula substitute_critical(const CriticalFormula& c, const std::string& x, const Term& t) {
  Term e = substitute(Term::eps(c.var, c.base), x, t);
  return make_critical(e.name(), e.body(), substitute(c.witness, x, t));
}

std::size_t auxiliary_index(const RuleMatch& m, Side s) {
  const auto& links = s == Side::Ante ? m.premises[0].ante : m.premises[0].succ;
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].kind == Link::Kind::Auxiliary) return i;
  throw Error("inference without auxiliary formula");
}

Carried critical_walk(const ProofNode& n, const std::string& path, TransformTrace& trace) {
  std::vector<Carried> kids;
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    kids.push_back(critical_walk(n.premises[i], child_path(path, i), trace));

  Carried out;
  if (n.rule == Rule::Subst) {
    for (const auto& c : kids[0].criticals) out.criticals.push_back(substitute_critical(c, *n.data.var, *n.data.term));
  } else {
    for (auto& k : kids) out.criticals.insert(out.criticals.end(), k.criticals.begin(), k.criticals.end());
  }
  auto with_carried = [&](Sequent s) {
    for (const auto& c : out.criticals) s.ante.push_back(c.formula);
    return s;
  };

  if (n.rule != Rule::ExR && n.rule != Rule::AllL) {
    out.node.rule = n.rule;
    out.node.data = n.data;
    out.node.conclusion = with_carried(n.conclusion);
    for (auto& k : kids) out.node.premises.push_back(std::move(k.node));
    return out;
  }

  auto m = match_rule(n, true);
  const Formula& principal = at(n.conclusion, *m->principal);
  const Term& e = *m->epsilon;
  ProofNode left = std::move(kids[0].node);
  ProofNode right;
  CriticalFormula crit;
  if (n.rule == Rule::ExR) {
    crit = make_critical(e.name(), e.body(), *m->witness);
    right = expand_axiom(principal, Calculus::Leps);
    trace.steps.push_back({path, "exr-critical"});
  } else {
    crit = make_critical(e.name(), e.body(), *m->witness);
    // negr moves the auxiliary A(t) to the succedent as ~A(t).
    Sequent s = left.conclusion;
    std::size_t i = auxiliary_index(*m, Side::Ante);
    s.ante.erase(s.ante.begin() + static_cast<std::ptrdiff_t>(i));
    s.succ.push_back(crit.formula.lhs());
    ProofNode negr = make(Rule::NegR, std::move(s), {std::move(left)});
    negr.data.principal = negr.conclusion.succ.size() - 1;
    left = std::move(negr);
    right = make(Rule::NegL, {{crit.formula.rhs(), principal}, {}}, {expand_axiom(principal, Calculus::Leps)});
    right.data.principal = 0;
    trace.steps.push_back({path, "alll-critical"});
  }
  out.criticals.push_back(crit);
  out.node = make(Rule::ImpL, with_carried(n.conclusion), {std::move(left), std::move(right)});
  out.node.data.principal = out.node.conclusion.ante.size() - 1;
  return out;
}

}  // namespace

CriticalForm to_critical_form(const ProofNode& p) {
  if (!is_cut_free(p)) throw UnsupportedCut("critical-form: the input contains a cut");
  require_valid(p, Calculus::Leps, "critical-form");
  auto trace = start_trace("critical-form", p);
  Carried c = critical_walk(p, "/", trace);

  std::vector<Formula> parts = p.conclusion.succ;
  for (const auto& f : p.conclusion.ante) parts.push_back(Formula::neg(f));
  if (parts.empty()) throw InvalidInput("critical-form: empty end-sequent");

  CriticalForm out;
  out.goal = big_or(parts);
  if (c.criticals.empty()) {
    out.tautology = out.goal;
  } else {
    std::vector<Formula> fs;
    for (const auto& k : c.criticals) fs.push_back(k.formula);
    out.tautology = Formula::imp(big_and(fs), out.goal);
  }
  for (const auto& k : c.criticals) trace.added_end_formulas.push_back(k.formula);
  out.criticals = std::move(c.criticals);
  out.trace = std::move(trace);
  out.trace.output = metrics(c.node);
  out.proof = std::move(c.node);
  return out;
}

// ---------------------------------------------------------------------------
// Cut universalization

namespace {

struct Extended {
  ProofNode node;
  std::vector<Formula> added;
};

// Derivation steps turning A -> A into the image of all v1..vk (M -> M).
ProofNode universalize(ProofNode impl, const Formula& origin, const Formula& cut) {
  if (!alpha_eq(to_epsilon(origin), cut))
    throw MatrixMismatch("cut formula " + to_string(cut) + " is not the translation of its origin " +
                         to_string(origin));
  MatrixResult mr;
  try {
    mr = matrix_with_vars(origin);
  } catch (const MatrixUndefined&) {
    throw MatrixMismatch("cut origin is not first-order: " + to_string(origin));
  }
  const Formula mm = Formula::imp(mr.formula, mr.formula);
  NameSet vars(mr.vars.begin(), mr.vars.end());
  auto sigma = match(mr.formula, vars, cut);
  if (!sigma) throw MatrixMismatch(to_string(cut) + " is not an instance of " + to_string(mr.formula));

  const std::size_t k = mr.vars.size();
  std::vector<Term> s;
  for (const auto& v : mr.vars) {
    auto it = sigma->find(v);
    s.push_back(it == sigma->end() ? Term::var(v) : it->second);
  }
  // level(j): image of all v_{j+1} .. v_k (M -> M) with v_1 .. v_j instantiated.
  auto level = [&](std::size_t j) {
    Formula g = mm;
    for (std::size_t i = k; i > j; --i) g = Formula::all(mr.vars[i - 1], g);
    TermMap inst;
    for (std::size_t i = 0; i < j; ++i) inst.emplace(mr.vars[i], s[i]);
    return substitute(to_epsilon(g), inst);
  };

  ProofNode cur = std::move(impl);
  std::size_t idx = cur.conclusion.ante.size() - 1;
  for (std::size_t j = k; j >= 1; --j) {
    Sequent sq = cur.conclusion;
    sq.ante[idx] = level(j - 1);
    ProofNode step = make(Rule::AllL, std::move(sq), {std::move(cur)});
    step.data.witness = s[j - 1];
    step.data.principal = idx;
    cur = std::move(step);
  }
  return cur;
}

Extended cut_walk(const ProofNode& n, const std::string& path, TransformTrace& trace) {
  std::vector<Extended> kids;
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    kids.push_back(cut_walk(n.premises[i], child_path(path, i), trace));

  Extended out;
  if (n.rule == Rule::Subst) {
    for (const auto& f : kids[0].added) out.added.push_back(substitute(f, *n.data.var, *n.data.term));
  } else {
    for (auto& k : kids) out.added.insert(out.added.end(), k.added.begin(), k.added.end());
  }
  Sequent concl = n.conclusion;
  for (const auto& f : out.added) concl.ante.push_back(f);

  if (n.rule != Rule::Cut) {
    out.node.rule = n.rule;
    out.node.data = n.data;
    out.node.conclusion = std::move(concl);
    for (auto& k : kids) out.node.premises.push_back(std::move(k.node));
    return out;
  }

  if (!n.data.origin) throw OriginRequired("cut at " + path + " has no :origin annotation");
  auto m = match_rule(n, true);
  const Formula& a = *m->cut_formula;
  concl.ante.push_back(Formula::imp(a, a));
  ProofNode impl = make(Rule::ImpL, std::move(concl), {std::move(kids[0].node), std::move(kids[1].node)});
  impl.data.principal = impl.conclusion.ante.size() - 1;
  out.node = universalize(std::move(impl), *n.data.origin, a);
  out.added.push_back(out.node.conclusion.ante.back());
  trace.steps.push_back({path, "cut-to-impl"});
  return out;
}

}  // namespace

TransformResult universalize_cuts(const ProofNode& p) {
  require_valid(p, Calculus::Leps, "universalize-cuts");
  auto trace = start_trace("universalize-cuts", p);
  Extended e = cut_walk(p, "/", trace);

  // Contract added formulas that already occur in the end-sequent.
  ProofNode cur = std::move(e.node);
  const std::size_t base = p.conclusion.ante.size();
  std::vector<bool> keep(e.added.size(), true);
  for (std::size_t i = 0; i < e.added.size(); ++i) {
    std::optional<std::size_t> copy;
    for (std::size_t j = 0; j < base && !copy; ++j)
      if (alpha_eq(p.conclusion.ante[j], e.added[i])) copy = j;
    for (std::size_t j = 0; j < i && !copy; ++j)
      if (keep[j] && alpha_eq(e.added[j], e.added[i])) copy = base + j;
    if (!copy) continue;
    keep[i] = false;
    Sequent sq = cur.conclusion;
    std::size_t pos = base;
    for (std::size_t j = 0; j < i; ++j)
      if (keep[j]) ++pos;
    // Position of occurrence i in the current antecedent: kept predecessors
    // are still there, contracted ones are gone.
    sq.ante.erase(sq.ante.begin() + static_cast<std::ptrdiff_t>(pos));
    std::size_t principal = *copy;
    if (principal >= base) {
      std::size_t kept_before = 0;
      for (std::size_t j = 0; j < principal - base; ++j)
        if (keep[j]) ++kept_before;
      principal = base + kept_before;
    }
    ProofNode cl = make(Rule::CL, std::move(sq), {std::move(cur)});
    cl.data.principal = principal;
    cur = std::move(cl);
    trace.steps.push_back({"/", "contract"});
  }
  for (std::size_t i = 0; i < e.added.size(); ++i)
    if (keep[i]) trace.added_end_formulas.push_back(e.added[i]);
  return finish(std::move(cur), std::move(trace));
}

// ---------------------------------------------------------------------------
// Unsound strong inferences

namespace {

struct Gadget {
  Formula formula;  // A(a) -> all x. A(x)  or  ex x. A(x) -> A(a)
  std::string eigenvariable;
  bool universal;
};

struct Unsound {
  ProofNode node;
  std::vector<Gadget> carried;
};

Unsound unsound_walk(const ProofNode& n, const std::string& path, NameSet& avoid, TransformTrace& trace) {
  std::vector<Unsound> kids;
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    kids.push_back(unsound_walk(n.premises[i], child_path(path, i), avoid, trace));

  Unsound out;
  for (auto& k : kids) out.carried.insert(out.carried.end(), k.carried.begin(), k.carried.end());
  Sequent concl = n.conclusion;
  for (const auto& g : out.carried) concl.ante.push_back(g.formula);

  bool unsound = false;
  std::optional<RuleMatch> m;
  if (is_strong_rule(n.rule)) {
    m = match_rule(n, false);
    unsound = free_vars(concl).count(*m->eigenvariable) > 0;
  }
  if (!unsound) {
    out.node.rule = n.rule;
    out.node.data = n.data;
    out.node.conclusion = std::move(concl);
    for (auto& k : kids) out.node.premises.push_back(std::move(k.node));
    return out;
  }

  const std::string a = *m->eigenvariable;
  const Formula& main = at(n.conclusion, *m->principal);
  const Formula inst = substitute(main.body(), main.bound(), Term::var(a));
  const bool universal = n.rule == Rule::AllR;
  Gadget g{universal ? Formula::imp(inst, main) : Formula::imp(main, inst), a, universal};
  concl.ante.push_back(g.formula);
  ProofNode axiom = expand_axiom(main, Calculus::LK, &avoid);
  std::vector<ProofNode> premises;
  if (universal) {
    premises.push_back(std::move(kids[0].node));
    premises.push_back(std::move(axiom));
  } else {
    premises.push_back(std::move(axiom));
    premises.push_back(std::move(kids[0].node));
  }
  out.node = make(Rule::ImpL, std::move(concl), std::move(premises));
  out.node.data.principal = out.node.conclusion.ante.size() - 1;
  out.carried.push_back(std::move(g));
  trace.steps.push_back({path, std::string(rule_name(n.rule)) + "-gadget"});
  return out;
}

// |- ex z. (P(z) -> all x. A(x))  resp.  |- ex z. (ex x. A(x) -> P(z)),
// where P(t) is the gadget formula with t for its eigenvariable.
ProofNode discharge_template(const Gadget& g, const Formula& d, NameSet& avoid) {
  const std::string c = fresh_name("c", avoid);
  const std::string e = fresh_name("d", avoid);
  const Term tc = Term::var(c), te = Term::var(e);
  const Formula& open = g.universal ? g.formula.lhs() : g.formula.rhs();
  const Formula& closed = g.universal ? g.formula.rhs() : g.formula.lhs();
  auto p = [&](const Term& t) { return substitute(open, g.eigenvariable, t); };
  auto inst = [&](const Term& t) {
    return g.universal ? Formula::imp(p(t), closed) : Formula::imp(closed, p(t));
  };

  ProofNode top = expand_axiom(p(tc), Calculus::LK, &avoid);
  ProofNode n5;
  if (g.universal) {
    ProofNode n2 = make(Rule::WR, {{p(tc)}, {p(tc), closed}}, {std::move(top)});
    ProofNode n3 = make(Rule::ImpR, {{}, {p(tc), inst(tc)}}, {std::move(n2)});
    ProofNode n4 = make(Rule::ExR, {{}, {p(tc), d}}, {std::move(n3)});
    n4.data.witness = tc;
    n5 = make(Rule::AllR, {{}, {closed, d}}, {std::move(n4)});
    n5.data.eigenvariable = c;
    ProofNode n6 = make(Rule::WL, {{p(te)}, {closed, d}}, {std::move(n5)});
    ProofNode n7 = make(Rule::ImpR, {{}, {inst(te), d}}, {std::move(n6)});
    ProofNode n8 = make(Rule::ExR, {{}, {d, d}}, {std::move(n7)});
    n8.data.witness = te;
    return make(Rule::CR, {{}, {d}}, {std::move(n8)});
  }
  ProofNode n2 = make(Rule::WL, {{closed, p(tc)}, {p(tc)}}, {std::move(top)});
  ProofNode n3 = make(Rule::ImpR, {{p(tc)}, {inst(tc)}}, {std::move(n2)});
  ProofNode n4 = make(Rule::ExR, {{p(tc)}, {d}}, {std::move(n3)});
  n4.data.witness = tc;
  n5 = make(Rule::ExL, {{closed}, {d}}, {std::move(n4)});
  n5.data.eigenvariable = c;
  ProofNode n6 = make(Rule::WR, {{closed}, {d, p(te)}}, {std::move(n5)});
  ProofNode n7 = make(Rule::ImpR, {{}, {d, inst(te)}}, {std::move(n6)});
  ProofNode n8 = make(Rule::ExR, {{}, {d, d}}, {std::move(n7)});
  n8.data.witness = te;
  return make(Rule::CR, {{}, {d}}, {std::move(n8)});
}

}  // namespace

TransformResult eliminate_unsound_inferences(const ProofNode& p) {
  require_valid(p, Calculus::LKplusplus, "eliminate-unsound");
  auto trace = start_trace("eliminate-unsound", p);
  NameSet avoid = proof_names(p);
  Unsound u = unsound_walk(p, "/", avoid, trace);
  ProofNode cur = std::move(u.node);
  const std::size_t base = p.conclusion.ante.size();

  // Identical gadget formulas share one discharge.
  std::vector<Gadget> pending;
  for (const auto& g : u.carried) {
    std::size_t pos = base + pending.size();
    auto same = std::find_if(pending.begin(), pending.end(),
                             [&](const Gadget& h) { return alpha_eq(h.formula, g.formula); });
    if (same == pending.end()) {
      pending.push_back(g);
      continue;
    }
    Sequent sq = cur.conclusion;
    sq.ante.erase(sq.ante.begin() + static_cast<std::ptrdiff_t>(pos));
    ProofNode cl = make(Rule::CL, std::move(sq), {std::move(cur)});
    cl.data.principal = base + static_cast<std::size_t>(same - pending.begin());
    cur = std::move(cl);
    trace.steps.push_back({"/", "contract"});
  }

  // An eigenvariable can be bound once no other pending formula mentions it.
  while (!pending.empty()) {
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size() && pick == pending.size(); ++i) {
      bool free_elsewhere = false;
      for (std::size_t j = 0; j < pending.size(); ++j)
        if (j != i && free_vars(pending[j].formula).count(pending[i].eigenvariable)) free_elsewhere = true;
      if (!free_elsewhere) pick = i;
    }
    if (pick == pending.size()) throw Error("eliminate-unsound: gadget formulas depend on each other cyclically");
    const Gadget g = pending[pick];
    const std::size_t pos = base + pick;
    const std::string z = fresh_name("z", avoid);
    const Formula d = Formula::ex(z, substitute(g.formula, g.eigenvariable, Term::var(z)));

    Sequent bound = cur.conclusion;
    bound.ante[pos] = d;
    ProofNode exl = make(Rule::ExL, bound, {std::move(cur)});
    exl.data.eigenvariable = g.eigenvariable;
    exl.data.principal = pos;
    Sequent rest = bound;
    rest.ante.erase(rest.ante.begin() + static_cast<std::ptrdiff_t>(pos));
    cur = make(Rule::Cut, std::move(rest), {discharge_template(g, d, avoid), std::move(exl)});
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    trace.steps.push_back({"/", "discharge " + g.eigenvariable});
  }
  return finish(std::move(cur), std::move(trace));
}

// ---------------------------------------------------------------------------
// Skolemization

namespace {

struct Frame {
  SkolemPlanPtr plan;
  Polarity pol = Polarity::Positive;
  std::vector<Term> args;
};

struct Frames {
  std::vector<Frame> ante;
  std::vector<Frame> succ;
};

SkolemPlanPtr plan_child(const SkolemPlanPtr& p, std::size_t i) { return p ? p->children.at(i) : nullptr; }

Polarity side_polarity(Side s) { return s == Side::Ante ? Polarity::Negative : Polarity::Positive; }

struct AuxFrame {
  std::size_t premise;
  Side side;
  Formula formula;
  Frame frame;
};

// Frames of the auxiliary formulas, in the order the rule matcher pairs them.
std::vector<AuxFrame> aux_frames(const ProofNode& n, const RuleMatch& m, const Frame& f) {
  const Formula& p = at(n.conclusion, *m.principal);
  auto sub = [&](std::size_t i, bool flip_pol, std::vector<Term> args) {
    return Frame{plan_child(f.plan, i), flip_pol ? flip(f.pol) : f.pol, std::move(args)};
  };
  switch (n.rule) {
    case Rule::AndL: return {{0, Side::Ante, p.lhs(), sub(0, false, f.args)}, {0, Side::Ante, p.rhs(), sub(1, false, f.args)}};
    case Rule::AndR: return {{0, Side::Succ, p.lhs(), sub(0, false, f.args)}, {1, Side::Succ, p.rhs(), sub(1, false, f.args)}};
    case Rule::OrL: return {{0, Side::Ante, p.lhs(), sub(0, false, f.args)}, {1, Side::Ante, p.rhs(), sub(1, false, f.args)}};
    case Rule::OrR: return {{0, Side::Succ, p.lhs(), sub(0, false, f.args)}, {0, Side::Succ, p.rhs(), sub(1, false, f.args)}};
    case Rule::ImpL: return {{0, Side::Succ, p.lhs(), sub(0, true, f.args)}, {1, Side::Ante, p.rhs(), sub(1, false, f.args)}};
    case Rule::ImpR: return {{0, Side::Ante, p.lhs(), sub(0, true, f.args)}, {0, Side::Succ, p.rhs(), sub(1, false, f.args)}};
    case Rule::NegL: return {{0, Side::Succ, p.operand(), sub(0, true, f.args)}};
    case Rule::NegR: return {{0, Side::Ante, p.operand(), sub(0, true, f.args)}};
    case Rule::CL: return {{0, Side::Ante, p, f}, {0, Side::Ante, p, f}};
    case Rule::CR: return {{0, Side::Succ, p, f}, {0, Side::Succ, p, f}};
    case Rule::AllL:
    case Rule::ExR: {
      auto args = f.args;
      args.push_back(*m.witness);
      Side s = n.rule == Rule::AllL ? Side::Ante : Side::Succ;
      return {{0, s, substitute(p.body(), p.bound(), *m.witness), sub(0, false, std::move(args))}};
    }
    case Rule::AllR:
    case Rule::ExL: {
      Side s = n.rule == Rule::ExL ? Side::Ante : Side::Succ;
      Term a = Term::var(*m.eigenvariable);
      return {{0, s, substitute(p.body(), p.bound(), a), sub(0, false, f.args)}};
    }
    default:
      return {};
  }
}

std::vector<Frames> premise_frames(const ProofNode& n, const RuleMatch& m, const Frames& fr) {
  std::vector<Frames> out(n.premises.size());
  std::vector<AuxFrame> aux;
  if (m.principal) {
    const auto& pf = m.principal->side == Side::Ante ? fr.ante : fr.succ;
    aux = aux_frames(n, m, pf[m.principal->index]);
  }
  std::vector<bool> used(aux.size(), false);
  for (std::size_t p = 0; p < n.premises.size(); ++p) {
    for (Side s : {Side::Ante, Side::Succ}) {
      const auto& links = s == Side::Ante ? m.premises[p].ante : m.premises[p].succ;
      const auto& formulas = side(n.premises[p].conclusion, s);
      auto& target = s == Side::Ante ? out[p].ante : out[p].succ;
      for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& l = links[i];
        if (l.kind == Link::Kind::Context) {
          const auto& src = l.target->side == Side::Ante ? fr.ante : fr.succ;
          target.push_back(src[l.target->index]);
        } else if (l.kind == Link::Kind::Cut) {
          target.push_back(Frame{nullptr, side_polarity(s), {}});
        } else {
          bool found = false;
          for (std::size_t k = 0; k < aux.size() && !found; ++k) {
            if (used[k] || aux[k].premise != p || aux[k].side != s || !alpha_eq(aux[k].formula, formulas[i])) continue;
            used[k] = found = true;
            target.push_back(aux[k].frame);
          }
          if (!found) throw Error("skolemize: unmatched auxiliary formula " + to_string(formulas[i]));
        }
      }
    }
  }
  return out;
}

Formula image(const Formula& f, const Frame& fr, const TermMap& sigma) {
  return substitute(skolem_image(f, fr.pol, fr.plan, fr.args), sigma);
}

Sequent image(const Sequent& s, const Frames& fr, const TermMap& sigma) {
  Sequent out;
  for (std::size_t i = 0; i < s.ante.size(); ++i) out.ante.push_back(image(s.ante[i], fr.ante[i], sigma));
  for (std::size_t i = 0; i < s.succ.size(); ++i) out.succ.push_back(image(s.succ[i], fr.succ[i], sigma));
  return out;
}

struct SkolemWalker {
  bool by_cuts;
  NameSet& avoid;
  TransformTrace& trace;

  ProofNode walk(const ProofNode& n, const Frames& fr, const TermMap& sigma, const std::string& path) {
    auto m = match_rule(n, false);
    if (!m) throw Error("skolemize: " + path + " does not match its rule");
    auto frames = premise_frames(n, *m, fr);

    const Frame* pf = nullptr;
    if (m->principal) pf = &(m->principal->side == Side::Ante ? fr.ante : fr.succ)[m->principal->index];
    const bool skolem_site = is_strong_rule(n.rule) && pf && pf->plan && !pf->plan->symbol.empty();

    if (skolem_site && !by_cuts) {
      Term s = substitute(Term::app(pf->plan->symbol, pf->args), sigma);
      TermMap inner = sigma;
      inner[*m->eigenvariable] = s;
      trace.steps.push_back({path, std::string(rule_name(n.rule)) + "-deleted"});
      return walk(n.premises[0], frames[0], inner, child_path(path, 0));
    }

    ProofNode out;
    out.rule = n.rule;
    out.data = n.data;
    if (out.data.witness) out.data.witness = substitute(*out.data.witness, sigma);
    out.conclusion = image(n.conclusion, fr, sigma);
    for (std::size_t i = 0; i < n.premises.size(); ++i)
      out.premises.push_back(walk(n.premises[i], frames[i], sigma, child_path(path, i)));
    if (!skolem_site) return out;

    // Keep the strong inference on the Skolemized body, then cut its
    // conclusion against  all x. J(x) |- J(s)  resp.  J(s) |- ex x. J(x).
    const Formula& p = at(n.conclusion, *m->principal);
    const Frame body_frame{plan_child(pf->plan, 0), pf->pol, pf->args};
    const Formula j = image(p.body(), body_frame, sigma);
    const Formula q = n.rule == Rule::AllR ? Formula::all(p.bound(), j) : Formula::ex(p.bound(), j);
    const Term s = substitute(Term::app(pf->plan->symbol, pf->args), sigma);
    const Formula js = substitute(j, p.bound(), s);
    const std::size_t idx = m->principal->index;

    Sequent strong = out.conclusion;
    side(strong, m->principal->side)[idx] = q;
    Sequent result = out.conclusion;
    out.conclusion = strong;

    ProofNode axiom = expand_axiom(js, Calculus::LK, &avoid);
    ProofNode cut;
    if (n.rule == Rule::AllR) {
      ProofNode gadget = make(Rule::AllL, {{q}, {js}}, {std::move(axiom)});
      gadget.data.witness = s;
      cut = make(Rule::Cut, std::move(result), {std::move(out), std::move(gadget)});
    } else {
      ProofNode gadget = make(Rule::ExR, {{js}, {q}}, {std::move(axiom)});
      gadget.data.witness = s;
      cut = make(Rule::Cut, std::move(result), {std::move(gadget), std::move(out)});
    }
    trace.steps.push_back({path, std::string(rule_name(n.rule)) + "-skolem-cut"});
    return cut;
  }
};

TransformResult skolemize(const ProofNode& p, bool by_cuts) {
  const std::string pass = by_cuts ? "skolem-cuts" : "skolem-cutfree";
  if (!by_cuts && !is_cut_free(p)) throw UnsupportedCut(pass + ": the input contains a cut");
  require_valid(p, Calculus::LK, pass);
  auto trace = start_trace(pass, p);
  ProofNode q = rename_eigenvariables_apart(p);
  NameSet used = proof_names(q);
  Frames fr;
  for (const auto& f : q.conclusion.ante)
    fr.ante.push_back({plan_skolem_symbols(f, Polarity::Negative, used), Polarity::Negative, {}});
  for (const auto& f : q.conclusion.succ)
    fr.succ.push_back({plan_skolem_symbols(f, Polarity::Positive, used), Polarity::Positive, {}});
  SkolemWalker w{by_cuts, used, trace};
  ProofNode out = w.walk(q, fr, {}, "/");
  return finish(std::move(out), std::move(trace));
}

}  // namespace

TransformResult skolemize_by_cuts(const ProofNode& p) { return skolemize(p, true); }

TransformResult skolemize_cut_free(const ProofNode& p) { return skolemize(p, false); }

// ---------------------------------------------------------------------------

nlohmann::json to_json(const TransformTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) steps.push_back({{"path", s.path}, {"action", s.action}});
  nlohmann::json added = nlohmann::json::array();
  for (const auto& f : t.added_end_formulas) added.push_back(to_string(f));
  return {{"pass", t.pass},
          {"input_metrics", to_json(t.input)},
          {"output_metrics", to_json(t.output)},
          {"steps", steps},
          {"added_end_formulas", added}};
}

}  // namespace epsforge
