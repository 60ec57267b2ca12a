#include "fok/construct.hpp"

#include <algorithm>
#include <functional>

#include "fok/errors.hpp"
#include "json.hpp"

namespace fok {

std::size_t TreeModel::depth(WorldId node) const {
  std::size_t d = 0;
  for (WorldId w = node; parent.at(w) >= 0; w = parent[w]) ++d;
  return d;
}

WorldId TreeModel::meet(WorldId a, WorldId b) const {
  while (depth(a) > depth(b)) a = parent[a];
  while (depth(b) > depth(a)) b = parent[b];
  while (a != b) {
    a = parent[a];
    b = parent[b];
  }
  return a;
}

namespace {

void link_children(TreeModel& t) {
  t.children.assign(t.parent.size(), {});
  for (std::size_t v = 0; v < t.parent.size(); ++v) {
    if (t.parent[v] >= 0) t.children[t.parent[v]].push_back(static_cast<WorldId>(v));
  }
}

std::vector<ElementId> decode(std::size_t index, unsigned arity, std::size_t base) {
  std::vector<ElementId> tuple(arity, 0);
  for (unsigned i = arity; i-- > 0;) {
    tuple[i] = static_cast<ElementId>(index % base);
    index /= base;
  }
  return tuple;
}

/// Tree over `parent` whose node i copies domain and facts from world last[i].
TreeModel tree_copy(const KripkeModel& src, const std::vector<std::string>& names,
                    const std::vector<WorldId>& parent, const std::vector<WorldId>& last) {
  KripkeModel::Builder b;
  for (const auto& n : names) b.add_world(n);
  for (std::size_t e = 0; e < src.element_count(); ++e) {
    b.add_element(src.element_name(static_cast<ElementId>(e)));
  }
  for (const auto& p : src.predicates()) b.declare_predicate(p.name, p.arity);
  const std::size_t elems = src.element_count();
  for (std::size_t v = 0; v < names.size(); ++v) {
    const auto node = static_cast<WorldId>(v);
    if (parent[v] >= 0) b.add_order(parent[v], node);
    for (ElementId e : src.domain(last[v])) b.add_to_domain(node, e);
    for (const auto& p : src.predicates()) {
      std::size_t stride = 1;
      for (unsigned i = 0; i < p.arity; ++i) stride *= elems;
      for (std::size_t t = 0; t < stride; ++t) {
        if (p.bits[static_cast<std::size_t>(last[v]) * stride + t]) {
          b.set_fact(node, p.name, decode(t, p.arity, elems));
        }
      }
    }
  }
  b.close_order();
  TreeModel t;
  t.model = b.build();
  t.root = 0;
  t.parent = parent;
  t.last_map = last;
  link_children(t);
  return t;
}

struct Unraveling {
  std::vector<std::string> names;
  std::vector<WorldId> parent;
  std::vector<WorldId> last;

  void add(const std::string& name, WorldId p, WorldId w) {
    if (names.size() >= kUnravelNodeBudget) {
      throw UsageError("unraveling exceeds the node budget of " +
                       std::to_string(kUnravelNodeBudget));
    }
    names.push_back(name);
    parent.push_back(p);
    last.push_back(w);
  }
};

void check_world(const KripkeModel& model, WorldId w) {
  if (w < 0 || static_cast<std::size_t>(w) >= model.world_count()) {
    throw UsageError("root world out of range");
  }
}

}  // namespace

TreeModel tree_from_model(const KripkeModel& model) {
  require_valid(model);
  if (!is_antisymmetric(model)) throw InvalidModelError("order is not antisymmetric, not a tree");
  const std::size_t n = model.world_count();
  std::optional<WorldId> root;
  for (std::size_t r = 0; r < n && !root; ++r) {
    if (model.upset(static_cast<WorldId>(r)).size() == n) root = static_cast<WorldId>(r);
  }
  if (!root) throw InvalidModelError("order has no least world, not a rooted tree");

  TreeModel t;
  t.model = model;
  t.root = *root;
  t.parent.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<WorldId> below;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && model.leq(static_cast<WorldId>(u), static_cast<WorldId>(v))) {
        below.push_back(static_cast<WorldId>(u));
      }
    }
    for (WorldId a : below) {
      for (WorldId c : below) {
        if (!model.leq(a, c) && !model.leq(c, a)) {
          throw InvalidModelError("world '" + model.world_name(static_cast<WorldId>(v)) +
                                  "' has incomparable predecessors, not a tree");
        }
      }
    }
    for (WorldId a : below) {
      bool maximal = true;
      for (WorldId c : below) maximal = maximal && (c == a || !model.leq(a, c));
      if (maximal) t.parent[v] = a;
    }
  }
  link_children(t);
  return t;
}

TreeModel unravel_strict(const KripkeModel& model, WorldId root) {
  check_world(model, root);
  if (!is_antisymmetric(model)) {
    throw UsageError("order has cycles; strict unraveling needs a partial order (use the "
                     "stuttered unraveling)");
  }
  const std::size_t n = model.world_count();
  // covers[u]: immediate successors of u.
  std::vector<std::vector<WorldId>> covers(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !model.leq(static_cast<WorldId>(u), static_cast<WorldId>(v))) continue;
      bool immediate = true;
      for (std::size_t t = 0; t < n && immediate; ++t) {
        if (t != u && t != v && model.leq(static_cast<WorldId>(u), static_cast<WorldId>(t)) &&
            model.leq(static_cast<WorldId>(t), static_cast<WorldId>(v))) {
          immediate = false;
        }
      }
      if (immediate) covers[u].push_back(static_cast<WorldId>(v));
    }
  }
  Unraveling u;
  std::function<void(const std::string&, WorldId, WorldId)> walk =
      [&](const std::string& name, WorldId parent, WorldId w) {
        const auto self = static_cast<WorldId>(u.names.size());
        u.add(name, parent, w);
        for (WorldId c : covers[w]) walk(name + "." + model.world_name(c), self, c);
      };
  walk(model.world_name(root), -1, root);
  return tree_copy(model, u.names, u.parent, u.last);
}

TreeModel unravel_stuttered(const KripkeModel& model, WorldId root, unsigned length_bound) {
  check_world(model, root);
  if (length_bound < 1) throw UsageError("length bound must be at least 1");
  const std::size_t n = model.world_count();
  Unraveling u;
  std::function<void(const std::string&, WorldId, WorldId, unsigned)> walk =
      [&](const std::string& name, WorldId parent, WorldId w, unsigned length) {
        const auto self = static_cast<WorldId>(u.names.size());
        u.add(name, parent, w);
        if (length == length_bound) return;
        for (std::size_t v = 0; v < n; ++v) {
          if (model.leq(w, static_cast<WorldId>(v))) {
            walk(name + "." + model.world_name(static_cast<WorldId>(v)), self,
                 static_cast<WorldId>(v), length + 1);
          }
        }
      };
  walk(model.world_name(root), -1, root, 1);
  TreeModel t = tree_copy(model, u.names, u.parent, u.last);
  t.truncated = true;
  return t;
}

bool bars(const TreeModel& tree, WorldId node, const std::set<WorldId>& b) {
  if (b.contains(node)) return true;
  const auto& kids = tree.children.at(node);
  if (kids.empty()) return false;
  return std::all_of(kids.begin(), kids.end(), [&](WorldId c) { return bars(tree, c, b); });
}

std::set<WorldId> upset_of(const TreeModel& tree, WorldId node) {
  const auto& up = tree.model.upset(node);
  return {up.begin(), up.end()};
}

bool is_upward_closed(const TreeModel& tree, const std::set<WorldId>& nodes) {
  for (WorldId w : nodes) {
    if (w < 0 || static_cast<std::size_t>(w) >= tree.size()) return false;
    for (WorldId c : tree.children[w]) {
      if (!nodes.contains(c)) return false;
    }
  }
  return true;
}

UpwardClosedSet::UpwardClosedSet(const TreeModel& tree, std::set<WorldId> nodes)
    : nodes_(std::move(nodes)) {
  if (!is_upward_closed(tree, nodes_)) throw UsageError("node set is not upward closed");
}

std::vector<Block> partition_upward_closed(const TreeModel& tree, const UpwardClosedSet& v) {
  std::vector<Block> out;
  for (WorldId w : v.nodes()) {
    const WorldId p = tree.parent[w];
    if (p >= 0 && v.contains(p)) continue;
    out.push_back(Block{w, upset_of(tree, w)});
  }
  return out;
}

std::vector<std::string> choice_function_violations(const TreeModel& tree,
                                                    const ChoiceFunction& f) {
  std::vector<std::string> out;
  std::set<WorldId> dom;
  for (const auto& [w, e] : f) {
    if (w < 0 || static_cast<std::size_t>(w) >= tree.size()) {
      out.push_back("node " + std::to_string(w) + " is not in the tree");
      continue;
    }
    dom.insert(w);
    if (!tree.model.in_domain(w, e)) {
      out.push_back("value at " + tree.model.world_name(w) + " is outside D'");
    }
    for (WorldId c : tree.children[w]) {
      auto it = f.find(c);
      if (it == f.end()) {
        out.push_back("domain not upward closed at " + tree.model.world_name(w));
      } else if (it->second != e) {
        out.push_back("value changes between " + tree.model.world_name(w) + " and " +
                      tree.model.world_name(c));
      }
    }
  }
  if (!bars(tree, tree.root, dom)) out.push_back("domain does not bar the root");
  return out;
}

bool is_choice_function(const TreeModel& tree, const ChoiceFunction& f) {
  return choice_function_violations(tree, f).empty();
}

std::string render(const ChoiceFunction& f, const TreeModel& tree) {
  std::string out = "{";
  bool first = true;
  for (const auto& [w, e] : f) {
    if (!first) out += ", ";
    out += tree.model.world_name(w) + "->" + tree.model.element_name(e);
    first = false;
  }
  return out + "}";
}

ChoiceFunction extend_choice(const TreeModel& tree, const UpwardClosedSet& s, WorldId w,
                             const std::map<WorldId, ElementId>& pins) {
  if (w < 0 || static_cast<std::size_t>(w) >= tree.size()) throw UsageError("node out of range");
  if (!bars(tree, tree.root, s.nodes())) throw UsageError("S' does not bar the root");

  std::set<WorldId> v;
  for (WorldId u : s.nodes()) {
    if (tree.leq(w, u)) v.insert(u);
  }
  const auto blocks = partition_upward_closed(tree, UpwardClosedSet(tree, v));
  for (const auto& [node, e] : pins) {
    const bool is_min =
        std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.minimum == node; });
    if (!is_min) throw UsageError("pin at a node that is not a block minimum");
    if (!tree.model.in_domain(node, e)) {
      throw UsageError("pinned element is outside D' of " + tree.model.world_name(node));
    }
  }

  ChoiceFunction g;
  auto first_element = [&](WorldId node) {
    const auto& d = tree.model.domain(node);
    if (d.empty()) throw InvalidModelError("empty domain in tree model");
    return d.front();
  };
  for (const auto& b : blocks) {
    auto it = pins.find(b.minimum);
    const ElementId e = it != pins.end() ? it->second : first_element(b.minimum);
    for (WorldId u : b.nodes) g[u] = e;
  }

  std::set<WorldId> incomparable;
  for (std::size_t u = 0; u < tree.size(); ++u) {
    const auto node = static_cast<WorldId>(u);
    const bool ok = std::all_of(blocks.begin(), blocks.end(), [&](const Block& b) {
      return !tree.leq(node, b.minimum) && !tree.leq(b.minimum, node);
    });
    if (ok) incomparable.insert(node);
  }
  for (const auto& b : partition_upward_closed(tree, UpwardClosedSet(tree, incomparable))) {
    const ElementId e = first_element(b.minimum);
    for (WorldId u : b.nodes) g[u] = e;
  }
  return g;
}

std::vector<ChoiceFunction> enumerate_Dpp(const TreeModel& tree, std::size_t budget) {
  auto over_budget = [budget](std::size_t n) {
    if (n > budget) {
      throw UsageError("D'' exceeds the enumeration budget of " + std::to_string(budget));
    }
  };
  std::function<std::vector<ChoiceFunction>(WorldId)> options = [&](WorldId node) {
    std::vector<ChoiceFunction> out;
    const auto up = upset_of(tree, node);
    for (ElementId e : tree.model.domain(node)) {
      ChoiceFunction f;
      bool ok = true;
      for (WorldId u : up) {
        if (!tree.model.in_domain(u, e)) ok = false;
        f[u] = e;
      }
      if (ok) out.push_back(std::move(f));
    }
    const auto& kids = tree.children[node];
    if (kids.empty()) return out;
    std::vector<ChoiceFunction> combos{ChoiceFunction{}};
    for (WorldId c : kids) {
      const auto sub = options(c);
      over_budget(combos.size() * sub.size());
      std::vector<ChoiceFunction> next;
      next.reserve(combos.size() * sub.size());
      for (const auto& base : combos) {
        for (const auto& s : sub) {
          ChoiceFunction f = base;
          f.insert(s.begin(), s.end());
          next.push_back(std::move(f));
        }
      }
      combos = std::move(next);
    }
    over_budget(out.size() + combos.size());
    out.insert(out.end(), std::make_move_iterator(combos.begin()),
               std::make_move_iterator(combos.end()));
    return out;
  };
  return options(tree.root);
}

CompletedModel complete_to_constant_domain(const TreeModel& tree, std::size_t budget) {
  CompletedModel c;
  c.elements = enumerate_Dpp(tree, budget);
  const KripkeModel& k = tree.model;
  const std::size_t n = k.world_count();
  const std::size_t m = c.elements.size();

  KripkeModel::Builder b;
  for (std::size_t w = 0; w < n; ++w) b.add_world(k.world_name(static_cast<WorldId>(w)));
  for (std::size_t i = 0; i < m; ++i) b.add_element("F" + std::to_string(i));
  for (std::size_t w = 0; w < n; ++w) {
    for (WorldId v : k.upset(static_cast<WorldId>(w))) b.add_order(static_cast<WorldId>(w), v);
    for (std::size_t i = 0; i < m; ++i) {
      b.add_to_domain(static_cast<WorldId>(w), static_cast<ElementId>(i));
    }
  }
  for (std::size_t pi = 0; pi < k.predicates().size(); ++pi) {
    const auto& p = k.predicates()[pi];
    b.declare_predicate(p.name, p.arity);
    std::size_t tuples = 1;
    for (unsigned i = 0; i < p.arity; ++i) {
      tuples *= m;
      if (tuples > budget) throw UsageError("K'' interpretation exceeds the budget");
    }
    for (std::size_t t = 0; t < tuples; ++t) {
      const auto fs = decode(t, p.arity, m);
      for (std::size_t w = 0; w < n; ++w) {
        bool value = true;
        for (WorldId v : k.upset(static_cast<WorldId>(w))) {
          std::vector<ElementId> args;
          bool defined = true;
          for (ElementId f : fs) {
            auto it = c.elements[static_cast<std::size_t>(f)].find(v);
            if (it == c.elements[static_cast<std::size_t>(f)].end()) {
              defined = false;
              break;
            }
            args.push_back(it->second);
          }
          if (defined && !k.holds(v, pi, k.tuple_index(args))) {
            value = false;
            break;
          }
        }
        if (value) b.set_fact(static_cast<WorldId>(w), p.name, fs);
      }
    }
  }
  c.model = b.build();
  return c;
}

ChoiceFunction constant_choice(const TreeModel& tree, ElementId e) {
  ChoiceFunction f;
  for (std::size_t w = 0; w < tree.size(); ++w) {
    if (!tree.model.in_domain(static_cast<WorldId>(w), e)) {
      throw UsageError("element is not in every D'(w)");
    }
    f[static_cast<WorldId>(w)] = e;
  }
  return f;
}

Assignment lift_assignment(const TreeModel& tree, const CompletedModel& completed,
                           const Assignment& rho_star) {
  Assignment out;
  for (const auto& [x, e] : rho_star) {
    if (!tree.model.in_domain(tree.root, e)) {
      throw UsageError("assignment maps '" + x + "' outside D' of the root");
    }
    const ChoiceFunction f = constant_choice(tree, e);
    auto it = std::find(completed.elements.begin(), completed.elements.end(), f);
    if (it == completed.elements.end()) throw DomainError("constant choice function missing");
    out = out.bind(x, static_cast<ElementId>(it - completed.elements.begin()));
  }
  return out;
}

std::string_view to_string(MainLemmaReport::Outcome outcome) {
  switch (outcome) {
    case MainLemmaReport::Outcome::Holds:
      return "holds";
    case MainLemmaReport::Outcome::Fails:
      return "fails";
    case MainLemmaReport::Outcome::PreconditionFailed:
      return "precondition-failed";
  }
  return "?";
}

namespace {

/// Assignments of `vars` into elements 0..elems-1, last variable fastest.
template <class Visit>
void for_each_assignment(const std::vector<std::string>& vars, std::size_t elems, Visit&& visit) {
  if (!vars.empty() && elems == 0) return;
  std::vector<ElementId> digits(vars.size(), 0);
  for (;;) {
    Assignment rho;
    for (std::size_t i = 0; i < vars.size(); ++i) rho = rho.bind(vars[i], digits[i]);
    if (!visit(rho, digits)) return;
    std::size_t i = vars.size();
    while (i > 0 && static_cast<std::size_t>(++digits[i - 1]) == elems) digits[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace

std::string bar_property_failure(const TreeModel& tree, const Formula& phi) {
  const auto& k = tree.model;
  const std::vector<std::string> vars(phi.free_vars().begin(), phi.free_vars().end());
  Evaluator ev(k);
  std::string failure;
  for_each_assignment(vars, k.element_count(), [&](const Assignment& rho, const auto& digits) {
    const auto values = ev.values(phi, rho);
    for (std::size_t w = 0; w < tree.size(); ++w) {
      const auto node = static_cast<WorldId>(w);
      const bool in_range = std::all_of(digits.begin(), digits.end(),
                                        [&](ElementId e) { return k.in_domain(node, e); });
      if (!in_range) continue;
      std::set<WorldId> ones;
      for (WorldId v : k.upset(node)) {
        if (values[static_cast<std::size_t>(v)]) ones.insert(v);
      }
      if ((values[w] != 0) != bars(tree, node, ones)) {
        failure = "bar property fails for " + phi.text() + " at " + k.world_name(node) +
                  " under " + render(rho, k);
        return false;
      }
    }
    return true;
  });
  return failure;
}

MainLemmaReport check_main_lemma_instance(const TreeModel& tree, const CompletedModel& completed,
                                          const Formula& phi, WorldId w,
                                          const Assignment& rho) {
  if (w < 0 || static_cast<std::size_t>(w) >= tree.size()) throw UsageError("node out of range");
  MainLemmaReport r;
  Assignment restricted;
  std::set<WorldId> common;
  for (std::size_t v = 0; v < tree.size(); ++v) common.insert(static_cast<WorldId>(v));
  for (const auto& x : phi.free_vars()) {
    auto e = rho.find(x);
    if (!e || *e < 0 || static_cast<std::size_t>(*e) >= completed.elements.size()) {
      throw UsageError("assignment must map '" + x + "' into D''");
    }
    restricted = restricted.bind(x, *e);
    std::set<WorldId> keep;
    for (const auto& [node, value] : completed.elements[static_cast<std::size_t>(*e)]) {
      if (common.contains(node)) keep.insert(node);
    }
    common = std::move(keep);
  }

  r.lhs = eval_formula(completed.model, w, restricted, phi);
  r.rhs = true;
  Evaluator ev(tree.model);
  for (WorldId v : tree.model.upset(w)) {
    if (!common.contains(v)) continue;
    Assignment local;
    for (const auto& [x, f] : restricted) {
      local = local.bind(x, completed.elements[static_cast<std::size_t>(f)].at(v));
    }
    if (!ev.value(v, local, phi)) {
      r.rhs = false;
      break;
    }
  }
  r.equivalent = r.lhs == r.rhs;

  for (const auto& sub : subformulas(phi)) {
    r.detail = bar_property_failure(tree, sub);
    if (!r.detail.empty()) {
      r.bar_property = false;
      break;
    }
  }
  if (!r.bar_property) {
    r.outcome = MainLemmaReport::Outcome::PreconditionFailed;
  } else {
    r.outcome = r.equivalent ? MainLemmaReport::Outcome::Holds : MainLemmaReport::Outcome::Fails;
  }
  return r;
}

std::string to_json(const MainLemmaReport& r) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(r.outcome));
  j["lhs"] = r.lhs ? 1 : 0;
  j["rhs"] = r.rhs ? 1 : 0;
  j["equivalent"] = r.equivalent;
  j["bar_property"] = r.bar_property;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump(2);
}

PipelineReport run_pipeline(const KripkeModel& model, WorldId w_star, const Assignment& rho_star,
                            const Sequent& sequent) {
  require_valid(model);
  if (eval_sequent(model, w_star, rho_star, sequent)) {
    throw UsageError("(w*, rho*) is not a refutation point of the sequent");
  }
  PipelineReport r;
  const TreeModel tree = unravel_strict(model, w_star);
  r.tree_nodes = tree.size();
  r.refuted_in_tree = !eval_sequent(tree.model, tree.root, rho_star, sequent);

  const CompletedModel completed = complete_to_constant_domain(tree);
  r.completion_elements = completed.elements.size();
  const Assignment lifted = lift_assignment(tree, completed, rho_star);

  bool all_hold = true;
  auto check = [&](const Formula& f) {
    r.formulas.push_back(check_main_lemma_instance(tree, completed, f, tree.root, lifted));
    all_hold = all_hold && r.formulas.back().outcome == MainLemmaReport::Outcome::Holds;
  };
  for (const auto& f : sequent.antecedent()) check(f);
  for (const auto& f : sequent.succedent()) check(f);

  r.refuted_in_completion = !eval_sequent(completed.model, tree.root, lifted, sequent);
  if (all_hold && r.refuted_in_tree && r.refuted_in_completion) {
    r.outcome = PipelineReport::Outcome::Refuted;
  }
  return r;
}

}  // namespace fok
