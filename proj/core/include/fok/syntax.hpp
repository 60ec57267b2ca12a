#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fok/truthfun.hpp"

namespace fok {

/// Predicate symbols with arities and connective symbols with truth functions.
/// Connective and predicate names share one namespace; `forall` and `exists`
/// are reserved.
class Signature {
 public:
  Signature() = default;

  /// Signature holding the builtin connectives and no predicates.
  static Signature with_builtins();

  void add_predicate(const std::string& name, unsigned arity);
  void add_connective(const std::string& name, TruthFunction f);

  bool has_predicate(std::string_view name) const;
  bool has_connective(std::string_view name) const;
  unsigned predicate_arity(std::string_view name) const;
  const TruthFunction& connective(std::string_view name) const;

  const std::map<std::string, unsigned, std::less<>>& predicates() const { return predicates_; }
  const std::map<std::string, TruthFunction, std::less<>>& connectives() const {
    return connectives_;
  }

  /// `{"predicates": {"p": 1}, "connectives": {"or": {"arity": 2, "table": "0111"}}}`.
  /// A connective value may also be the name of a builtin, e.g. `"or"`.
  std::string to_json() const;
  static Signature from_json(std::string_view text);

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, unsigned, std::less<>> predicates_;
  std::map<std::string, TruthFunction, std::less<>> connectives_;
};

bool is_reserved_word(std::string_view name);
bool is_identifier(std::string_view text);

/// Immutable first-order formula with shared structure.
///
/// Equality and ordering are structural; the canonical rendering is computed
/// once per node and used as the comparison key.
class Formula {
 public:
  enum class Kind { Atom, Conn, Forall, Exists };

  static Formula atom(std::string predicate, std::vector<std::string> variables = {});
  static Formula conn(std::string name, TruthFunction f, std::vector<Formula> args);
  static Formula forall(std::string variable, Formula body);
  static Formula exists(std::string variable, Formula body);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }

  /// Predicate name for atoms, connective name for connectives.
  const std::string& symbol() const;
  /// Atom arguments.
  const std::vector<std::string>& variables() const;
  /// Connective arguments.
  const std::vector<Formula>& args() const;
  const TruthFunction& function() const;
  /// Bound variable of a quantifier.
  const std::string& bound_variable() const;
  const Formula& body() const;

  const std::set<std::string>& free_vars() const;
  unsigned depth() const;
  const std::string& text() const;

  /// Stable identity of the shared node; equal formulas may have distinct ids.
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Formula& f);

/// All subformulas including f itself, duplicates removed, in post-order.
std::vector<Formula> subformulas(const Formula& f);

/// Canonical concrete syntax, e.g. `forall x. or(p(x), q(x))`.
std::string render(const Formula& f);

/// Γ ⇒ Δ with set semantics on both sides (canonically ordered).
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::vector<Formula> antecedent, std::vector<Formula> succedent);

  const std::set<Formula>& antecedent() const { return antecedent_; }
  const std::set<Formula>& succedent() const { return succedent_; }

  std::set<std::string> free_vars() const;
  /// Predicate symbols with arities occurring in the sequent.
  std::map<std::string, unsigned> predicates() const;

  friend bool operator==(const Sequent&, const Sequent&) = default;

 private:
  std::set<Formula> antecedent_;
  std::set<Formula> succedent_;
};

std::string render(const Sequent& s);

/// How the parser treats identifiers that the signature does not declare.
enum class UnknownPredicates {
  Reject,  ///< unknown symbol error
  Declare  ///< declare as a predicate of the arity used (the signature is updated)
};

Formula parse_formula(std::string_view text, const Signature& signature);
Formula parse_formula(std::string_view text, Signature& signature, UnknownPredicates policy);
Sequent parse_sequent(std::string_view text, const Signature& signature);
Sequent parse_sequent(std::string_view text, Signature& signature, UnknownPredicates policy);

/// Checks arity agreement of every atom and connective against `signature`.
/// Throws InvalidSignatureError describing the first mismatch.
void check_well_formed(const Formula& f, const Signature& signature);

}  // namespace fok
