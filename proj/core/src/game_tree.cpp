#include <algorithm>

#include "csgame/errors.hpp"
#include "game_internal.hpp"

namespace csgame {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::SpoilerWins: return "spoiler";
    case Outcome::DuplicatorWins: return "duplicator";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

std::size_t node_count(const StrategyTree& tree) {
  std::size_t n = 1;
  for (const auto& c : tree.children) n += node_count(c);
  return n;
}

FormulaPtr strategy_to_formula(const StrategyTree& tree, const GameConfig& cfg) {
  auto need = [&](std::size_t n) {
    if (tree.children.size() != n) throw ContractError("malformed strategy tree: wrong number of children");
  };
  switch (tree.kind) {
    case Kind::Atom:
      need(0);
      if (!tree.atom || tree.atom->kind != Kind::Atom) throw ContractError("malformed strategy tree: leaf without atom");
      return tree.atom;
    case Kind::Not:
      need(1);
      return neg(strategy_to_formula(tree.children[0], cfg));
    case Kind::Or:
    case Kind::And: {
      need(2);
      FormulaPtr a = strategy_to_formula(tree.children[0], cfg);
      FormulaPtr b = strategy_to_formula(tree.children[1], cfg);
      return tree.kind == Kind::Or ? disj(a, b) : conj(a, b);
    }
    case Kind::Exists:
    case Kind::Forall: {
      need(1);
      FormulaPtr body = strategy_to_formula(tree.children[0], cfg);
      if (tree.guard >= 0) {
        FormulaPtr g = atom(cfg.guard_relation, {Term::variable(tree.guard), Term::variable(tree.var)});
        body = tree.kind == Kind::Exists ? conj(g, body) : disj(neg(g), body);
      }
      return tree.kind == Kind::Exists ? exists(tree.k, tree.var, body) : forall(tree.k, tree.var, body);
    }
  }
  throw ContractError("malformed strategy tree");
}

namespace {

StrategyTree build(const FormulaPtr& f, const Family& a, const Family& b) {
  StrategyTree node;
  node.kind = f->kind;
  node.left = a;
  node.right = b;
  switch (f->kind) {
    case Kind::Atom:
      node.atom = f;
      return node;
    case Kind::Not:
      node.move.kind = MoveKind::Not;
      node.children.push_back(build(f->left, b, a));
      return node;
    case Kind::Or:
    case Kind::And: {
      const bool is_or = f->kind == Kind::Or;
      const Family& split = is_or ? a : b;
      std::vector<bool> s1 = eval_family(*f->left, split);
      std::vector<bool> s2 = eval_family(*f->right, split);
      node.move.kind = is_or ? MoveKind::Or : MoveKind::And;
      node.move.u = size(*f->left);
      node.move.v = size(*f->right);
      std::vector<bool> first(split.size()), second(split.size());
      for (std::size_t i = 0; i < split.size(); ++i) {
        // Or: members satisfying psi_i; And: members falsifying psi_i.
        first[i] = is_or ? s1[i] : !s1[i];
        second[i] = is_or ? s2[i] : !s2[i];
        node.move.side.push_back((first[i] ? 1 : 0) | (second[i] ? 2 : 0));
      }
      Family c = split.select(first), d = split.select(second);
      if (is_or) {
        node.children.push_back(build(f->left, c, b));
        node.children.push_back(build(f->right, d, b));
      } else {
        node.children.push_back(build(f->left, a, c));
        node.children.push_back(build(f->right, a, d));
      }
      return node;
    }
    case Kind::Exists:
    case Kind::Forall: {
      const bool ex = f->kind == Kind::Exists;
      node.k = f->k;
      node.var = f->var;
      node.move.kind = ex ? MoveKind::Exists : MoveKind::Forall;
      node.move.k = f->k;
      node.move.var = f->var;
      const Family& active = ex ? a : b;
      const Family& passive = ex ? b : a;
      // Active members pick their first k witnesses of psi (Exists) or ~psi
      // (Forall); passive members drop every extension with the wrong value.
      Family act_all = multiply(active, f->var);
      std::vector<bool> act_val = eval_family(*f->left, act_all);
      const std::size_t n_act = static_cast<std::size_t>(active.structure().size());
      for (std::size_t i = 0; i < active.size(); ++i) {
        std::vector<Element> pick;
        for (std::size_t e = 0; e < n_act && static_cast<int>(pick.size()) < f->k; ++e) {
          Assignment ext = active.members()[i].with(f->var, static_cast<Element>(e));
          auto pos = std::lower_bound(act_all.members().begin(), act_all.members().end(), ext);
          bool v = act_val[static_cast<std::size_t>(pos - act_all.members().begin())];
          if (v == ex) pick.push_back(static_cast<Element>(e));
        }
        node.move.choices.push_back(pick);
      }
      Family pas_all = multiply(passive, f->var);
      std::vector<bool> pas_val = eval_family(*f->left, pas_all);
      const std::size_t n_pas = static_cast<std::size_t>(passive.structure().size());
      for (std::size_t i = 0; i < passive.size(); ++i) {
        std::vector<Element> drop;
        if (n_pas >= static_cast<std::size_t>(f->k)) {
          for (std::size_t e = 0; e < n_pas; ++e) {
            Assignment ext = passive.members()[i].with(f->var, static_cast<Element>(e));
            auto pos = std::lower_bound(pas_all.members().begin(), pas_all.members().end(), ext);
            bool v = pas_val[static_cast<std::size_t>(pos - pas_all.members().begin())];
            if (v == ex) drop.push_back(static_cast<Element>(e));
          }
        }
        node.move.exclusions.push_back(drop);
      }
      Family act_child = detail::active_extend(active, f->var, node.move.choices);
      GameConfig plain;
      Family pas_child = detail::passive_extend(passive, f->var, f->k, node.move.exclusions, -1, plain);
      if (ex) {
        node.children.push_back(build(f->left, act_child, pas_child));
      } else {
        node.children.push_back(build(f->left, pas_child, act_child));
      }
      return node;
    }
  }
  return node;
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

StrategyTree formula_to_tree(const FormulaPtr& f, const Family& a, const Family& b) {
  if (!f) throw ContractError("null formula");
  if (!distinguishes(*f, a, b)) throw ContractError("formula does not distinguish the families");
  return build(f, a, b);
}

bool validate_tree(const StrategyTree& tree, const GameConfig& cfg, std::string* why) {
  if (tree.left.dom() != tree.right.dom()) return fail(why, "node families have different domains");
  if (tree.kind == Kind::Atom) {
    if (!tree.children.empty()) return fail(why, "leaf with children");
    if (!tree.atom || tree.atom->kind != Kind::Atom) return fail(why, "leaf without an atom");
    if (metrics(*tree.atom).variables >= var_bit(cfg.m)) return fail(why, "leaf atom uses too many variables");
    try {
      if (!distinguishes(*tree.atom, tree.left, tree.right)) {
        return fail(why, "leaf atom " + to_string(*tree.atom) + " does not distinguish its labels");
      }
    } catch (const std::exception& e) {
      return fail(why, std::string("leaf atom invalid: ") + e.what());
    }
    return true;
  }
  static const MoveKind kinds[] = {MoveKind::Not, MoveKind::Not, MoveKind::Or, MoveKind::And, MoveKind::Exists,
                                   MoveKind::Forall};
  if (tree.move.kind != kinds[static_cast<int>(tree.kind)]) return fail(why, "syntax label and move disagree");
  if ((tree.kind == Kind::Exists || tree.kind == Kind::Forall) &&
      (tree.k != tree.move.k || tree.var != tree.move.var || tree.guard != tree.move.guard)) {
    return fail(why, "quantifier label and move disagree");
  }
  std::vector<Family> fam;
  try {
    fam = detail::child_families(tree.left, tree.right, tree.move, cfg);
  } catch (const std::exception& e) {
    return fail(why, std::string("illegal move: ") + e.what());
  }
  const std::size_t expected = fam.size() / 2;
  if (tree.children.size() != expected) return fail(why, "wrong number of children");
  for (std::size_t i = 0; i < expected; ++i) {
    const StrategyTree& c = tree.children[i];
    if (!(c.left == fam[2 * i]) || !(c.right == fam[2 * i + 1])) {
      return fail(why, "child labels do not follow from the move " + describe(tree.move));
    }
  }
  if (tree.budget > 0) {
    if (tree.move.kind == MoveKind::Or || tree.move.kind == MoveKind::And) {
      if (tree.move.u + tree.move.v != tree.budget || tree.children[0].budget != tree.move.u ||
          tree.children[1].budget != tree.move.v || tree.move.u < 1 || tree.move.v < 1) {
        return fail(why, "binary budgets inconsistent");
      }
    } else if (tree.budget < 2 || tree.children[0].budget != tree.budget - 1) {
      return fail(why, "unary budget inconsistent");
    }
  }
  for (const auto& c : tree.children) {
    if (!validate_tree(c, cfg, why)) return false;
  }
  return true;
}

}  // namespace csgame
