#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fok/semantics.hpp"

namespace fok {

/// A Kripke model whose order is a rooted tree.
struct TreeModel {
  KripkeModel model;
  WorldId root = 0;
  std::vector<WorldId> parent;  ///< -1 at the root
  std::vector<std::vector<WorldId>> children;
  /// Node → world of the unraveled model. Empty unless produced by unraveling.
  std::vector<WorldId> last_map;
  /// Set by unravel_stuttered: value preservation and the bar property hold
  /// only in the limit.
  bool truncated = false;

  std::size_t size() const { return parent.size(); }
  bool leq(WorldId a, WorldId b) const { return model.leq(a, b); }
  std::size_t depth(WorldId node) const;
  /// Deepest common ancestor.
  WorldId meet(WorldId a, WorldId b) const;
};

/// Reads the tree structure off a valid model. Throws InvalidModelError if
/// the order is not a rooted tree.
TreeModel tree_from_model(const KripkeModel& model);

inline constexpr std::size_t kUnravelNodeBudget = 100000;

/// Nodes are the covering-step chains from `root` (each step goes to an
/// immediate successor). Requires an antisymmetric order.
TreeModel unravel_strict(const KripkeModel& model, WorldId root);

/// Nodes are the non-decreasing sequences from `root` of length at most
/// `length_bound`. Marked truncated.
TreeModel unravel_stuttered(const KripkeModel& model, WorldId root, unsigned length_bound);

/// Every maximal chain of the subtree at `node` meets `b`.
bool bars(const TreeModel& tree, WorldId node, const std::set<WorldId>& b);

class UpwardClosedSet {
 public:
  /// Throws UsageError unless `nodes` is upward closed in `tree`.
  UpwardClosedSet(const TreeModel& tree, std::set<WorldId> nodes);

  const std::set<WorldId>& nodes() const { return nodes_; }
  bool contains(WorldId w) const { return nodes_.contains(w); }
  bool empty() const { return nodes_.empty(); }

 private:
  std::set<WorldId> nodes_;
};

bool is_upward_closed(const TreeModel& tree, const std::set<WorldId>& nodes);

/// {v | node ⪯ v}
std::set<WorldId> upset_of(const TreeModel& tree, WorldId node);

struct Block {
  WorldId minimum;
  std::set<WorldId> nodes;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Classes of the equivalence generated by parent-child links inside `v`,
/// ordered by minimum.
std::vector<Block> partition_upward_closed(const TreeModel& tree, const UpwardClosedSet& v);

/// Partial map node → element.
using ChoiceFunction = std::map<WorldId, ElementId>;

/// Invariants violated by `f` as an element of D'' (empty when valid).
std::vector<std::string> choice_function_violations(const TreeModel& tree, const ChoiceFunction& f);
bool is_choice_function(const TreeModel& tree, const ChoiceFunction& f);

std::string render(const ChoiceFunction& f, const TreeModel& tree);

/// G ∈ D'' with upset(w) ∩ S ⊆ dom(G) and G(vᵢ) = pins[vᵢ] at the block
/// minima vᵢ. Blocks without a pin, and blocks of the region incomparable
/// with every vᵢ, take the first element of D'(minimum).
ChoiceFunction extend_choice(const TreeModel& tree, const UpwardClosedSet& s, WorldId w,
                             const std::map<WorldId, ElementId>& pins);

inline constexpr std::size_t kChoiceBudget = 200000;

/// All of D'' in a fixed order: at each node first "defined here" with each
/// element of D'(node), then "undefined here" combining the children.
std::vector<ChoiceFunction> enumerate_Dpp(const TreeModel& tree,
                                          std::size_t budget = kChoiceBudget);

/// K'' over the same tree; element i of the model is `elements[i]`.
struct CompletedModel {
  KripkeModel model;
  std::vector<ChoiceFunction> elements;
};

CompletedModel complete_to_constant_domain(const TreeModel& tree,
                                           std::size_t budget = kChoiceBudget);

/// The total function constantly e. Requires e ∈ D'(root).
ChoiceFunction constant_choice(const TreeModel& tree, ElementId e);

/// Maps each variable to the element of K'' constantly equal to ρ⋆(x).
Assignment lift_assignment(const TreeModel& tree, const CompletedModel& completed,
                           const Assignment& rho_star);

struct MainLemmaReport {
  enum class Outcome { Holds, Fails, PreconditionFailed };
  Outcome outcome = Outcome::Holds;
  bool lhs = false;  ///< ‖φ‖ in K'' at (w', ρ'')
  bool rhs = false;  ///< the K' side over the common domain of ρ''
  bool equivalent = true;
  bool bar_property = true;
  std::string detail;  ///< first bar-property failure, if any
};

std::string_view to_string(MainLemmaReport::Outcome outcome);

/// Evaluates both sides of the lemma relating K'' and K'. The bar property
/// is checked for every subformula, node and assignment; when it fails the
/// outcome is PreconditionFailed.
MainLemmaReport check_main_lemma_instance(const TreeModel& tree, const CompletedModel& completed,
                                          const Formula& phi, WorldId w,
                                          const Assignment& rho);

std::string to_json(const MainLemmaReport& report);

/// Bar property for one formula over the whole tree; returns a description
/// of the first failure, or an empty string.
std::string bar_property_failure(const TreeModel& tree, const Formula& phi);

/// K → K' → K'' for a refutation point (w⋆, ρ⋆) of S.
struct PipelineReport {
  enum class Outcome { Refuted, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  bool refuted_in_tree = false;
  bool refuted_in_completion = false;
  std::size_t tree_nodes = 0;
  std::size_t completion_elements = 0;
  std::vector<MainLemmaReport> formulas;
};

PipelineReport run_pipeline(const KripkeModel& model, WorldId w_star, const Assignment& rho_star,
                            const Sequent& sequent);

}  // namespace fok
