#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fok/syntax.hpp"

namespace fok {

using WorldId = int;
using ElementId = int;

/// Finite Kripke model ⟨W, ⪯, D, I⟩.
///
/// Worlds and elements are dense indices with names. Predicate
/// interpretations are dense bit tables indexed by (world, tuple); entries
/// not set are 0. Construct through KripkeModel::Builder. A built model may
/// still violate the Kripke invariants; validate_model reports them.
class KripkeModel {
 public:
  class Builder;

  KripkeModel() = default;

  std::size_t world_count() const { return world_names_.size(); }
  std::size_t element_count() const { return element_names_.size(); }
  const std::string& world_name(WorldId w) const { return world_names_.at(w); }
  const std::string& element_name(ElementId e) const { return element_names_.at(e); }
  std::optional<WorldId> find_world(std::string_view name) const;
  std::optional<ElementId> find_element(std::string_view name) const;

  bool leq(WorldId w, WorldId v) const { return order_[w * world_count() + v] != 0; }
  /// All v with w ⪯ v, ascending, including w when the order is reflexive.
  const std::vector<WorldId>& upset(WorldId w) const { return upsets_.at(w); }

  /// D(w) in element declaration order.
  const std::vector<ElementId>& domain(WorldId w) const { return domains_.at(w); }
  bool in_domain(WorldId w, ElementId e) const {
    return member_[w * element_count() + e] != 0;
  }

  struct PredicateTable {
    std::string name;
    unsigned arity = 0;
    std::vector<std::uint8_t> bits;  ///< [world * E^arity + tuple index]
  };

  const std::vector<PredicateTable>& predicates() const { return predicates_; }
  std::optional<std::size_t> predicate_index(std::string_view name) const;

  /// Tuple index: elements read as digits base E, first argument most significant.
  std::size_t tuple_index(std::span<const ElementId> tuple) const;
  bool holds(WorldId w, std::size_t predicate, std::size_t tuple_index) const;
  /// I(w, p)(tuple); unknown predicates are 0 everywhere.
  bool holds(WorldId w, std::string_view predicate, std::span<const ElementId> tuple) const;

  /// Same frame, domains and names with the predicate tables replaced. Table
  /// shapes must match the current ones.
  KripkeModel with_tables(std::vector<PredicateTable> tables) const;

 private:
  friend class Builder;
  void finalize();

  std::vector<std::string> world_names_;
  std::vector<std::string> element_names_;
  std::vector<std::uint8_t> order_;
  std::vector<std::vector<WorldId>> upsets_;
  std::vector<std::vector<ElementId>> domains_;
  std::vector<std::uint8_t> member_;
  std::vector<PredicateTable> predicates_;
};

class KripkeModel::Builder {
 public:
  WorldId add_world(const std::string& name);
  ElementId add_element(const std::string& name);
  WorldId world(const std::string& name);      ///< find or add
  ElementId element(const std::string& name);  ///< find or add
  void declare_predicate(const std::string& name, unsigned arity);

  /// Records w ⪯ v.
  void add_order(WorldId w, WorldId v);
  void add_to_domain(WorldId w, ElementId e);
  void set_fact(WorldId w, const std::string& predicate, std::vector<ElementId> tuple,
                bool value = true);

  /// Closes the recorded relation reflexively and transitively.
  Builder& close_order();

  std::size_t world_count() const { return worlds_.size(); }
  std::size_t element_count() const { return elements_.size(); }

  KripkeModel build() const;

 private:
  std::vector<std::string> worlds_;
  std::vector<std::string> elements_;
  std::vector<std::pair<WorldId, WorldId>> order_;
  std::vector<std::vector<ElementId>> domains_;
  std::vector<std::pair<std::string, unsigned>> predicates_;
  struct Fact {
    WorldId world;
    std::string predicate;
    std::vector<ElementId> tuple;
    bool value;
  };
  std::vector<Fact> facts_;
};

/// Partial map from variables to elements.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, ElementId>> init)
      : map_(init) {}

  /// ρ[x ↦ a]
  Assignment bind(const std::string& var, ElementId e) const;
  std::optional<ElementId> find(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.contains(var); }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  /// Restriction to the given variables.
  Assignment restrict(const std::set<std::string>& vars) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::map<std::string, ElementId> map_;
};

std::string render(const Assignment& rho, const KripkeModel& model);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind {
    NotReflexive,
    NotTransitive,
    EmptyDomain,
    DomainNotMonotone,
    FactOutsideDomain,
    HeredityViolated
  };
  Kind kind;
  std::string message;
  std::vector<WorldId> worlds;
  std::vector<ElementId> tuple;
};

std::string_view to_string(Violation::Kind kind);

/// Every violated Kripke invariant with the offending worlds / tuples.
std::vector<Violation> validate_model(const KripkeModel& model);

/// Throws InvalidModelError listing the first few violations.
void require_valid(const KripkeModel& model);

bool is_constant_domain(const KripkeModel& model);
bool is_antisymmetric(const KripkeModel& model);

// ---------------------------------------------------------------------------
// Evaluation

/// Formula evaluator over one model.
///
/// Values are computed for all worlds at once: for an assignment ρ the
/// result vector holds ‖φ‖ at every world whose domain contains ρ's image;
/// entries for other worlds are meaningless and never consumed. With
/// memoization enabled, results are cached by (formula node, ρ restricted to
/// FV(φ)). An Evaluator is not safe for concurrent use; give each worker its
/// own.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& model, bool memoize = false);

  /// ‖φ‖ at w under ρ. Throws UsageError if ρ misses a free variable of φ or
  /// maps one outside D(w).
  bool value(WorldId w, const Assignment& rho, const Formula& phi);

  /// ‖φ‖ at every world; see the class comment about worlds outside ρ's range.
  std::vector<std::uint8_t> values(const Formula& phi, const Assignment& rho);

  bool sequent_value(WorldId w, const Assignment& rho, const Sequent& s);

  const KripkeModel& model() const { return model_; }

 private:
  class Impl;
  const KripkeModel& model_;
  bool memoize_;
  std::shared_ptr<Impl> impl_;
};

bool eval_formula(const KripkeModel& model, WorldId w, const Assignment& rho,
                  const Formula& phi);

/// 0 iff every antecedent is 1 and every succedent is 0 at (w, ρ).
bool eval_sequent(const KripkeModel& model, WorldId w, const Assignment& rho, const Sequent& s);

struct Counterwitness {
  WorldId world;
  Assignment assignment;
  friend bool operator==(const Counterwitness&, const Counterwitness&) = default;
};

struct ModelCheck {
  bool valid = true;
  std::optional<Counterwitness> counterwitness;
};

/// Checks S at every world and every assignment of FV(S) into D(w). The
/// counterwitness is the first in the order: worlds by index, then
/// assignments lexicographically (variables sorted, elements in declaration
/// order). With single_succedent set, |Δ| must be 1.
ModelCheck model_validates(const KripkeModel& model, const Sequent& s,
                           bool single_succedent = false);

/// A classical first-order structure: a nonempty domain and the true atoms.
struct ClassicalStructure {
  std::vector<std::string> elements;
  std::map<std::string, unsigned> predicates;
  /// True facts: predicate name → tuples of element indices.
  std::map<std::string, std::set<std::vector<ElementId>>> facts;
};

/// Classical (two-valued, Tarskian) value of φ.
bool classical_eval(const ClassicalStructure& structure, const Assignment& rho,
                    const Formula& phi);

/// The one-world Kripke model induced by a classical structure.
KripkeModel one_world_model(const ClassicalStructure& structure);

}  // namespace fok
