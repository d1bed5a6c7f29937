#include "nsyl/proof.hpp"

#include <algorithm>
#include <sstream>

#include "nsyl/parser.hpp"

namespace nsyl {

std::set<Atom> Rule::atoms() const {
  std::set<Atom> out = atoms_of(antecedents);
  std::set<Atom> c = atoms_of(consequent);
  out.insert(c.begin(), c.end());
  return out;
}

std::size_t RuleSet::max_width() const {
  std::size_t r = 0;
  for (const Rule& rule : rules) r = std::max(r, rule.width());
  return r;
}

Formula apply_substitution(const Substitution& g, const Formula& f) {
  auto sub = [&](const Literal& l) {
    auto it = g.find(l.atom);
    if (it == g.end())
      throw InputError("substitution misses atom '" + l.atom.name() + "'");
    return Literal(it->second, l.positive);
  };
  return Formula(f.quant(), f.bound(), sub(f.first()), sub(f.second()));
}

Rule instantiate(const Rule& rule, const Substitution& g) {
  FormulaSet ants;
  for (const Formula& a : rule.antecedents)
    ants.insert(apply_substitution(g, a));
  return Rule{rule.name, std::move(ants),
              apply_substitution(g, rule.consequent)};
}

// ---- derivation trees ----

DerivationNode::DerivationNode(Kind kind, Formula conclusion)
    : kind_(kind), conclusion_(std::move(conclusion)) {}

Derivation DerivationNode::premise(Formula f, std::optional<int> discharge) {
  auto node = std::shared_ptr<DerivationNode>(
      new DerivationNode(Kind::Premise, std::move(f)));
  node->discharge_ = discharge;
  return node;
}

Derivation DerivationNode::rule_app(const Rule& rule, Substitution g,
                                    std::vector<Derivation> children) {
  Formula conclusion = apply_substitution(g, rule.consequent);
  auto node = std::shared_ptr<DerivationNode>(
      new DerivationNode(Kind::RuleApp, std::move(conclusion)));
  node->rule_ = std::make_shared<const Rule>(rule);
  node->subst_ = std::move(g);
  node->children_ = std::move(children);
  return node;
}

Derivation DerivationNode::raa(Formula conclusion, int tag,
                               Derivation refutation) {
  auto node = std::shared_ptr<DerivationNode>(
      new DerivationNode(Kind::Raa, std::move(conclusion)));
  node->tag_ = tag;
  node->children_.push_back(std::move(refutation));
  return node;
}

const Rule& DerivationNode::rule() const {
  if (kind_ != Kind::RuleApp)
    throw InputError("rule() is only defined on rule-application nodes");
  return *rule_;
}

const Substitution& DerivationNode::substitution() const {
  if (kind_ != Kind::RuleApp)
    throw InputError("substitution() is only defined on rule applications");
  return subst_;
}

int DerivationNode::tag() const {
  if (kind_ != Kind::Raa)
    throw InputError("tag() is only defined on raa nodes");
  return tag_;
}

Formula DerivationNode::assumption() const {
  if (kind_ != Kind::Raa)
    throw InputError("assumption() is only defined on raa nodes");
  return negate(conclusion_);
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const Derivation& c : d->children()) n += derivation_size(c);
  return n;
}

namespace {

void render_node(const Derivation& d, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  switch (d->kind()) {
    case DerivationNode::Kind::Premise:
      if (d->discharge())
        out += "[" + render(d->conclusion()) + "]^" +
               std::to_string(*d->discharge());
      else
        out += render(d->conclusion()) + "   premise";
      break;
    case DerivationNode::Kind::RuleApp:
      out += render(d->conclusion()) + "   (" + d->rule().name + ")";
      break;
    case DerivationNode::Kind::Raa:
      out += render(d->conclusion()) + "   (raa)^" + std::to_string(d->tag());
      break;
  }
  out += '\n';
  for (const Derivation& c : d->children()) render_node(c, depth + 1, out);
}

}  // namespace

std::string render_derivation(const Derivation& d) {
  std::string out;
  render_node(d, 0, out);
  return out;
}

Derivation rename_atoms(const Derivation& d,
                        const std::map<Atom, Atom>& map) {
  auto mapped = [&](const Atom& a) {
    auto it = map.find(a);
    if (it == map.end())
      throw InputError("atom map misses '" + a.name() + "'");
    return it->second;
  };
  auto map_formula = [&](const Formula& f) {
    return Formula(f.quant(), f.bound(),
                   Literal(mapped(f.first().atom), f.first().positive),
                   Literal(mapped(f.second().atom), f.second().positive));
  };
  switch (d->kind()) {
    case DerivationNode::Kind::Premise:
      return DerivationNode::premise(map_formula(d->conclusion()),
                                     d->discharge());
    case DerivationNode::Kind::RuleApp: {
      Substitution composed;
      for (const auto& [schematic, target] : d->substitution())
        composed.insert_or_assign(schematic, mapped(target));
      std::vector<Derivation> children;
      children.reserve(d->children().size());
      for (const Derivation& c : d->children())
        children.push_back(rename_atoms(c, map));
      return DerivationNode::rule_app(d->rule(), std::move(composed),
                                      std::move(children));
    }
    case DerivationNode::Kind::Raa:
      return DerivationNode::raa(map_formula(d->conclusion()), d->tag(),
                                 rename_atoms(d->children().front(), map));
  }
  throw std::logic_error("unreachable");
}

// ---- direct closure ----

namespace {

struct DirectProv {
  std::size_t rule_idx = 0;
  Substitution g;
  std::vector<Formula> ants;
};

using ProvMap = std::map<Formula, DirectProv>;

// Least superset of `start` closed under instances of x over `atoms`.
// Records, for each formula the closure adds, the first rule application
// deriving it; antecedents recorded there are already in the set.
FormulaSet close_under(const FormulaSet& start, const RuleSet& x,
                       const std::vector<Atom>& atoms, ProvMap* prov) {
  FormulaSet k = start;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t ri = 0; ri < x.rules.size(); ++ri) {
      const Rule& r = x.rules[ri];
      std::set<Atom> ratom_set = r.atoms();
      std::vector<Atom> ratoms(ratom_set.begin(), ratom_set.end());
      std::vector<Formula> ants(r.antecedents.begin(), r.antecedents.end());
      // Antecedents checked as soon as their last schematic atom is bound.
      std::vector<std::vector<const Formula*>> ready(ratoms.size() + 1);
      for (const Formula& a : ants) {
        std::size_t last = 0;
        for (const Atom& at : atoms_of(a))
          last = std::max(last, static_cast<std::size_t>(
                                    std::lower_bound(ratoms.begin(),
                                                     ratoms.end(), at) -
                                    ratoms.begin()) +
                                    1);
        ready[last].push_back(&a);
      }
      Substitution g;
      auto assign = [&](auto&& self, std::size_t idx) -> void {
        for (const Formula* a : ready[idx])
          if (!k.contains(apply_substitution(g, *a))) return;
        if (idx == ratoms.size()) {
          Formula c = apply_substitution(g, r.consequent);
          if (k.insert(c).second) {
            grew = true;
            if (prov) {
              DirectProv p{ri, g, {}};
              for (const Formula& a : ants)
                p.ants.push_back(apply_substitution(g, a));
              prov->emplace(std::move(c), std::move(p));
            }
          }
          return;
        }
        for (const Atom& a : atoms) {
          g.insert_or_assign(ratoms[idx], a);
          self(self, idx + 1);
        }
        g.erase(ratoms[idx]);
      };
      assign(assign, 0);
    }
  }
  return k;
}

}  // namespace

FormulaSet direct_closure(const FormulaSet& theta, const RuleSet& x,
                          const std::set<Atom>& atoms) {
  if (atoms.empty())
    throw InputError("direct_closure needs a nonempty atom set");
  for (const Formula& f : theta)
    for (const Atom& a : atoms_of(f))
      if (!atoms.contains(a))
        throw InputError("premise atom '" + a.name() +
                         "' is outside the given atom set");
  std::vector<Atom> av(atoms.begin(), atoms.end());
  return close_under(theta, x, av, nullptr);
}

namespace {

std::vector<Atom> query_atoms(const FormulaSet& theta, const Formula& goal) {
  std::set<Atom> s = atoms_of(theta);
  std::set<Atom> gs = atoms_of(goal);
  s.insert(gs.begin(), gs.end());
  return {s.begin(), s.end()};
}

Derivation build_direct(const Formula& goal, const FormulaSet& theta,
                        const RuleSet& x, const ProvMap& prov,
                        std::map<Formula, Derivation>& cache) {
  if (auto it = cache.find(goal); it != cache.end()) return it->second;
  Derivation out;
  if (theta.contains(goal)) {
    out = DerivationNode::premise(goal);
  } else {
    const DirectProv& p = prov.at(goal);
    std::vector<Derivation> children;
    children.reserve(p.ants.size());
    for (const Formula& a : p.ants)
      children.push_back(build_direct(a, theta, x, prov, cache));
    out = DerivationNode::rule_app(x.rules[p.rule_idx], p.g,
                                   std::move(children));
  }
  cache.emplace(goal, out);
  return out;
}

}  // namespace

std::optional<Derivation> derive_direct(const FormulaSet& theta,
                                        const RuleSet& x,
                                        const Formula& goal) {
  std::vector<Atom> atoms = query_atoms(theta, goal);
  ProvMap prov;
  FormulaSet k = close_under(theta, x, atoms, &prov);
  if (!k.contains(goal)) return std::nullopt;
  std::map<Formula, Derivation> cache;
  return build_direct(goal, theta, x, prov, cache);
}

// ---- indirect derivability ----

namespace {

struct RaaProv {
  Formula assumption;
  std::size_t child_ctx;
};

struct Ctx {
  FormulaSet k;  // premises, rule closure, and negations added by refutation
  ProvMap direct_prov;
  std::map<Formula, RaaProv> raa_prov;
  std::optional<Formula> absurdity;  // first absurdity in k
};

std::optional<Formula> first_absurdity(const FormulaSet& k) {
  for (const Formula& f : k)
    if (is_absurdity(f)) return f;
  return std::nullopt;
}

class IndirectEngine {
public:
  IndirectEngine(const FormulaSet& theta, const RuleSet& x,
                 const Formula& goal, const DeriveLimits& limits)
      : x_(x), limits_(limits), atoms_(query_atoms(theta, goal)) {
    // The assumption space: every formula over the query atoms, with bounds
    // drawn from the inputs. Assumptions with other bounds cannot feed any
    // rule instance, so leaving them out loses nothing; both-negative
    // argument pairs join only when the inputs already use that shape.
    bool dagger = false;
    std::set<Bound> bounds = {0};
    auto scan = [&](const Formula& f) {
      bounds.insert(f.bound());
      if (!f.first().positive && !f.second().positive) dagger = true;
    };
    for (const Formula& f : theta) scan(f);
    scan(goal);
    for (const Rule& r : x.rules) {
      for (const Formula& f : r.antecedents) scan(f);
      scan(r.consequent);
    }
    std::set<Atom> atom_set(atoms_.begin(), atoms_.end());
    auto lang = dagger ? LanguageId::sdagger(0) : LanguageId::s(0);
    for (const auto& [a, b] : literal_pairs(atom_set, lang))
      for (Bound i : bounds) {
        space_.insert(Formula::at_most(i, a, b));
        space_.insert(Formula::more_than(i, a, b));
      }
  }

  std::size_t eval(const FormulaSet& s) {
    ProvMap prov;
    FormulaSet k = close_under(s, x_, atoms_, &prov);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (ctxs_.size() >= limits_.max_contexts)
      throw ResourceLimitError(
          "indirect derivability exceeded its context budget");
    std::size_t id = ctxs_.size();
    ctxs_.emplace_back();
    memo_.emplace(k, id);
    Ctx ctx;
    ctx.direct_prov = std::move(prov);
    for (;;) {
      ctx.absurdity = first_absurdity(k);
      if (ctx.absurdity) break;
      bool added = false;
      for (const Formula& theta : space_) {
        if (k.contains(theta) || k.contains(negate(theta))) continue;
        FormulaSet s2 = k;
        s2.insert(theta);
        std::size_t child = eval(s2);
        if (!ctxs_[child].absurdity) continue;
        Formula nt = negate(theta);
        ctx.raa_prov.emplace(nt, RaaProv{theta, child});
        FormulaSet k2 = std::move(k);
        k2.insert(nt);
        k = close_under(k2, x_, atoms_, &ctx.direct_prov);
        added = true;
        break;
      }
      if (!added) break;
    }
    ctx.k = std::move(k);
    ctxs_[id] = std::move(ctx);
    return id;
  }

  const Ctx& ctx(std::size_t id) const { return ctxs_[id]; }

private:
  const RuleSet& x_;
  DeriveLimits limits_;
  std::vector<Atom> atoms_;
  FormulaSet space_;
  std::vector<Ctx> ctxs_;
  std::map<FormulaSet, std::size_t> memo_;
};

}  // namespace

std::optional<Derivation> derive_indirect(const FormulaSet& theta,
                                          const RuleSet& x,
                                          const Formula& goal,
                                          const DeriveLimits& limits) {
  if (auto direct = derive_direct(theta, x, goal)) return direct;
  IndirectEngine engine(theta, x, goal, limits);
  std::size_t root = engine.eval(theta);
  const Ctx& rc = engine.ctx(root);
  if (!rc.k.contains(goal) && !rc.absurdity) return std::nullopt;

  int next_tag = 1;
  std::vector<std::pair<Formula, int>> stack;  // active assumptions
  auto build = [&](auto&& self, std::size_t ctx_id,
                   const Formula& f) -> Derivation {
    const Ctx& c = engine.ctx(ctx_id);
    if (theta.contains(f)) return DerivationNode::premise(f);
    if (auto it = c.direct_prov.find(f); it != c.direct_prov.end()) {
      std::vector<Derivation> children;
      children.reserve(it->second.ants.size());
      for (const Formula& a : it->second.ants)
        children.push_back(self(self, ctx_id, a));
      return DerivationNode::rule_app(x.rules[it->second.rule_idx],
                                      it->second.g, std::move(children));
    }
    if (auto it = c.raa_prov.find(f); it != c.raa_prov.end()) {
      int tag = next_tag++;
      stack.emplace_back(it->second.assumption, tag);
      Derivation child =
          self(self, it->second.child_ctx,
               *engine.ctx(it->second.child_ctx).absurdity);
      stack.pop_back();
      return DerivationNode::raa(f, tag, std::move(child));
    }
    for (auto rit = stack.rbegin(); rit != stack.rend(); ++rit)
      if (rit->first == f) return DerivationNode::premise(f, rit->second);
    // f is outside the closure: any formula follows once an absurdity is
    // derivable, by an assumption discharged zero times.
    int tag = next_tag++;
    stack.emplace_back(negate(f), tag);
    Derivation child = self(self, ctx_id, *c.absurdity);
    stack.pop_back();
    return DerivationNode::raa(f, tag, std::move(child));
  };
  return build(build, root, goal);
}

// ---- verification ----

namespace {

bool rule_in_set(const Rule& r, const RuleSet& x) {
  for (const Rule& candidate : x.rules)
    if (candidate.antecedents == r.antecedents &&
        candidate.consequent == r.consequent)
      return true;
  return false;
}

struct Verifier {
  const FormulaSet& theta;
  const RuleSet& x;
  std::string diagnostic;

  bool check(const Derivation& d, std::map<int, Formula>& active) {
    switch (d->kind()) {
      case DerivationNode::Kind::Premise: {
        if (!d->discharge()) {
          if (theta.contains(d->conclusion())) return true;
          diagnostic = "undischarged premise " + render(d->conclusion()) +
                       " is not among the premises";
          return false;
        }
        auto it = active.find(*d->discharge());
        if (it == active.end()) {
          diagnostic = "discharge tag " + std::to_string(*d->discharge()) +
                       " is not bound by an enclosing raa";
          return false;
        }
        if (it->second != d->conclusion()) {
          diagnostic = "discharged premise " + render(d->conclusion()) +
                       " differs from the assumption of tag " +
                       std::to_string(*d->discharge());
          return false;
        }
        return true;
      }
      case DerivationNode::Kind::RuleApp: {
        if (!rule_in_set(d->rule(), x)) {
          diagnostic = "rule '" + d->rule().name + "' is not in the rule set";
          return false;
        }
        std::optional<Rule> inst;
        try {
          inst = instantiate(d->rule(), d->substitution());
        } catch (const InputError& e) {
          diagnostic = e.what();
          return false;
        }
        if (d->conclusion() != inst->consequent) {
          diagnostic = "conclusion " + render(d->conclusion()) +
                       " is not the instantiated consequent";
          return false;
        }
        FormulaSet concluded;
        for (const Derivation& c : d->children()) {
          if (!inst->antecedents.contains(c->conclusion())) {
            diagnostic = "child conclusion " + render(c->conclusion()) +
                         " is not an instantiated antecedent";
            return false;
          }
          concluded.insert(c->conclusion());
        }
        if (concluded != inst->antecedents) {
          diagnostic = "rule application is missing an antecedent";
          return false;
        }
        for (const Derivation& c : d->children())
          if (!check(c, active)) return false;
        return true;
      }
      case DerivationNode::Kind::Raa: {
        if (!is_absurdity(d->children().front()->conclusion())) {
          diagnostic = "raa child concludes " +
                       render(d->children().front()->conclusion()) +
                       ", which is not an absurdity";
          return false;
        }
        if (active.contains(d->tag())) {
          diagnostic = "raa tag " + std::to_string(d->tag()) +
                       " shadows an enclosing tag";
          return false;
        }
        active.emplace(d->tag(), d->assumption());
        bool ok = check(d->children().front(), active);
        active.erase(d->tag());
        return ok;
      }
    }
    diagnostic = "corrupt node kind";
    return false;
  }
};

}  // namespace

VerificationResult verify_derivation(const Derivation& d,
                                     const FormulaSet& theta,
                                     const RuleSet& x) {
  if (!d) return {false, "empty derivation"};
  Verifier v{theta, x, {}};
  std::map<int, Formula> active;
  bool ok = v.check(d, active);
  return {ok, v.diagnostic};
}

// ---- semantic soundness ----

RuleSoundness check_rule_sound(const Rule& rule, Bound z,
                               const SolverConfig& config) {
  FormulaSet question = rule.antecedents;
  question.insert(negate(rule.consequent));
  SatResult r = satisfiable(question, z, Engine::Witness, config);
  if (r.verdict == Verdict::Unsat) return {true, std::nullopt};
  return {false, r.model->expand()};
}

std::map<std::string, RuleSet> builtin_rulesets(Bound z) {
  Literal p = pos(Atom("p"));
  Literal q = pos(Atom("q"));
  Literal o = pos(Atom("o"));
  Literal no = neg(Atom("o"));

  RuleSet darii_ferio;
  darii_ferio.rules.push_back(
      Rule{"darii",
           {Formula::at_most(0, q, no), Formula::more_than(0, p, q)},
           Formula::more_than(0, p, o)});
  darii_ferio.rules.push_back(
      Rule{"ferio",
           {Formula::at_most(0, q, o), Formula::more_than(0, p, q)},
           Formula::more_than(0, p, no)});

  RuleSet transfer;
  for (Bound i = 0; i <= z; ++i) {
    for (Bound j = i; j <= z; ++j) {
      std::string tag = std::to_string(i) + "_" + std::to_string(j);
      transfer.rules.push_back(
          Rule{"transfer_pos_" + tag,
               {Formula::at_most(i, q, no), Formula::more_than(j, p, q)},
               Formula::more_than(j - i, p, o)});
      transfer.rules.push_back(
          Rule{"transfer_neg_" + tag,
               {Formula::at_most(i, q, o), Formula::more_than(j, p, q)},
               Formula::more_than(j - i, p, no)});
    }
  }
  return {{"darii_ferio", std::move(darii_ferio)},
          {"transfer_z", std::move(transfer)}};
}

}  // namespace nsyl
