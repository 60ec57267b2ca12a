#include "fok/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <variant>

#include "fok/errors.hpp"
#include "json.hpp"

namespace fok {

// ---------------------------------------------------------------------------
// Signature

Signature Signature::with_builtins() {
  Signature sig;
  for (const auto& name : builtin_names()) sig.add_connective(name, builtin(name));
  return sig;
}

bool is_reserved_word(std::string_view name) { return name == "forall" || name == "exists"; }

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  const auto first = static_cast<unsigned char>(text.front());
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u == '\'';
  });
}

void Signature::add_predicate(const std::string& name, unsigned arity) {
  if (!is_identifier(name) || is_reserved_word(name)) {
    throw InvalidSignatureError("invalid predicate name '" + name + "'");
  }
  if (connectives_.contains(name)) {
    throw InvalidSignatureError("'" + name + "' is already a connective");
  }
  if (auto it = predicates_.find(name); it != predicates_.end()) {
    if (it->second != arity) {
      throw InvalidSignatureError("predicate '" + name + "' redeclared with a different arity");
    }
    return;
  }
  predicates_.emplace(name, arity);
}

void Signature::add_connective(const std::string& name, TruthFunction f) {
  if (!is_identifier(name) || is_reserved_word(name)) {
    throw InvalidSignatureError("invalid connective name '" + name + "'");
  }
  if (predicates_.contains(name)) {
    throw InvalidSignatureError("'" + name + "' is already a predicate");
  }
  if (auto it = connectives_.find(name); it != connectives_.end()) {
    if (!(it->second == f)) {
      throw InvalidSignatureError("connective '" + name + "' redeclared with a different table");
    }
    return;
  }
  connectives_.emplace(name, std::move(f));
}

bool Signature::has_predicate(std::string_view name) const { return predicates_.contains(name); }
bool Signature::has_connective(std::string_view name) const { return connectives_.contains(name); }

unsigned Signature::predicate_arity(std::string_view name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw UsageError("unknown predicate '" + std::string(name) + "'");
  return it->second;
}

const TruthFunction& Signature::connective(std::string_view name) const {
  auto it = connectives_.find(name);
  if (it == connectives_.end()) throw UsageError("unknown connective '" + std::string(name) + "'");
  return it->second;
}

std::string Signature::to_json() const {
  nlohmann::ordered_json j;
  j["predicates"] = nlohmann::ordered_json::object();
  for (const auto& [name, arity] : predicates_) j["predicates"][name] = arity;
  j["connectives"] = nlohmann::ordered_json::object();
  for (const auto& [name, f] : connectives_) {
    j["connectives"][name] = {{"arity", f.arity()}, {"table", f.table_bits()}};
  }
  return j.dump(2);
}

Signature Signature::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidSignatureError(std::string("signature JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidSignatureError("signature must be a JSON object");
  Signature sig;
  if (j.contains("predicates")) {
    if (!j["predicates"].is_object()) throw InvalidSignatureError("'predicates' must be an object");
    for (const auto& [name, arity] : j["predicates"].items()) {
      if (!arity.is_number_unsigned()) {
        throw InvalidSignatureError("arity of '" + name + "' must be a nonnegative integer");
      }
      sig.add_predicate(name, arity.get<unsigned>());
    }
  }
  if (j.contains("connectives")) {
    if (!j["connectives"].is_object()) {
      throw InvalidSignatureError("'connectives' must be an object");
    }
    for (const auto& [name, value] : j["connectives"].items()) {
      try {
        if (value.is_string()) {
          sig.add_connective(name, builtin(value.get<std::string>()));
        } else {
          sig.add_connective(name, TruthFunction::from_json(value.dump()));
        }
      } catch (const UsageError& e) {
        throw InvalidSignatureError("connective '" + name + "': " + e.what());
      }
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  struct AtomData {
    std::string predicate;
    std::vector<std::string> variables;
  };
  struct ConnData {
    std::string name;
    TruthFunction function;
    std::vector<Formula> args;
  };
  struct QuantData {
    bool universal;
    std::string variable;
    Formula body;
  };

  std::variant<AtomData, ConnData, QuantData> data;
  std::set<std::string> free;
  unsigned depth = 0;
  std::string text;
};

Formula Formula::make(Node node) {
  // Derived attributes.
  std::visit(
      [&node](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::AtomData>) {
          node.free.insert(d.variables.begin(), d.variables.end());
          node.depth = 0;
          node.text = d.predicate;
          if (!d.variables.empty()) {
            node.text += '(';
            for (std::size_t i = 0; i < d.variables.size(); ++i) {
              if (i != 0) node.text += ", ";
              node.text += d.variables[i];
            }
            node.text += ')';
          }
        } else if constexpr (std::is_same_v<T, Node::ConnData>) {
          unsigned depth = 0;
          node.text = d.name;
          if (!d.args.empty()) node.text += '(';
          for (std::size_t i = 0; i < d.args.size(); ++i) {
            const auto& a = d.args[i];
            node.free.insert(a.free_vars().begin(), a.free_vars().end());
            depth = std::max(depth, a.depth());
            if (i != 0) node.text += ", ";
            node.text += a.text();
          }
          if (!d.args.empty()) node.text += ')';
          node.depth = depth + 1;
        } else {
          node.free = d.body.free_vars();
          node.free.erase(d.variable);
          node.depth = d.body.depth() + 1;
          node.text = std::string(d.universal ? "forall " : "exists ") + d.variable + ". " +
                      d.body.text();
        }
      },
      node.data);
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::atom(std::string predicate, std::vector<std::string> variables) {
  if (!is_identifier(predicate) || is_reserved_word(predicate)) {
    throw UsageError("invalid predicate symbol '" + predicate + "'");
  }
  for (const auto& v : variables) {
    if (!is_identifier(v) || is_reserved_word(v)) throw UsageError("invalid variable '" + v + "'");
  }
  return make(Node{Node::AtomData{std::move(predicate), std::move(variables)}, {}, 0, {}});
}

Formula Formula::conn(std::string name, TruthFunction f, std::vector<Formula> args) {
  if (!is_identifier(name) || is_reserved_word(name)) {
    throw UsageError("invalid connective symbol '" + name + "'");
  }
  if (args.size() != f.arity()) {
    throw UsageError("connective '" + name + "' of arity " + std::to_string(f.arity()) +
                     " applied to " + std::to_string(args.size()) + " arguments");
  }
  return make(Node{Node::ConnData{std::move(name), std::move(f), std::move(args)}, {}, 0, {}});
}

Formula Formula::forall(std::string variable, Formula body) {
  if (!is_identifier(variable) || is_reserved_word(variable)) {
    throw UsageError("invalid variable '" + variable + "'");
  }
  return make(Node{Node::QuantData{true, std::move(variable), std::move(body)}, {}, 0, {}});
}

Formula Formula::exists(std::string variable, Formula body) {
  if (!is_identifier(variable) || is_reserved_word(variable)) {
    throw UsageError("invalid variable '" + variable + "'");
  }
  return make(Node{Node::QuantData{false, std::move(variable), std::move(body)}, {}, 0, {}});
}

Formula::Kind Formula::kind() const {
  if (std::holds_alternative<Node::AtomData>(node_->data)) return Kind::Atom;
  if (std::holds_alternative<Node::ConnData>(node_->data)) return Kind::Conn;
  return std::get<Node::QuantData>(node_->data).universal ? Kind::Forall : Kind::Exists;
}

const std::string& Formula::symbol() const {
  if (const auto* a = std::get_if<Node::AtomData>(&node_->data)) return a->predicate;
  if (const auto* c = std::get_if<Node::ConnData>(&node_->data)) return c->name;
  throw UsageError("quantified formula has no head symbol");
}

const std::vector<std::string>& Formula::variables() const {
  if (const auto* a = std::get_if<Node::AtomData>(&node_->data)) return a->variables;
  throw UsageError("not an atom");
}

const std::vector<Formula>& Formula::args() const {
  if (const auto* c = std::get_if<Node::ConnData>(&node_->data)) return c->args;
  throw UsageError("not a connective application");
}

const TruthFunction& Formula::function() const {
  if (const auto* c = std::get_if<Node::ConnData>(&node_->data)) return c->function;
  throw UsageError("not a connective application");
}

const std::string& Formula::bound_variable() const {
  if (const auto* q = std::get_if<Node::QuantData>(&node_->data)) return q->variable;
  throw UsageError("not a quantified formula");
}

const Formula& Formula::body() const {
  if (const auto* q = std::get_if<Node::QuantData>(&node_->data)) return q->body;
  throw UsageError("not a quantified formula");
}

const std::set<std::string>& Formula::free_vars() const { return node_->free; }
unsigned Formula::depth() const { return node_->depth; }
const std::string& Formula::text() const { return node_->text; }

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.node_->text == b.node_->text;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return a.node_->text <=> b.node_->text;
}

std::set<std::string> free_vars(const Formula& f) { return f.free_vars(); }

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::Atom:
        break;
      case Formula::Kind::Conn:
        for (const auto& a : g.args()) walk(a);
        break;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        walk(g.body());
        break;
    }
    if (seen.insert(g).second) out.push_back(g);
  };
  walk(f);
  return out;
}

std::string render(const Formula& f) { return f.text(); }

void check_well_formed(const Formula& f, const Signature& signature) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (!signature.has_predicate(f.symbol())) {
        throw InvalidSignatureError("undeclared predicate '" + f.symbol() + "'");
      }
      if (signature.predicate_arity(f.symbol()) != f.variables().size()) {
        throw InvalidSignatureError("arity mismatch for predicate '" + f.symbol() + "'");
      }
      return;
    case Formula::Kind::Conn:
      if (!signature.has_connective(f.symbol())) {
        throw InvalidSignatureError("undeclared connective '" + f.symbol() + "'");
      }
      if (!(signature.connective(f.symbol()) == f.function())) {
        throw InvalidSignatureError("connective '" + f.symbol() + "' has a different table");
      }
      for (const auto& a : f.args()) check_well_formed(a, signature);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      check_well_formed(f.body(), signature);
      return;
  }
}

// ---------------------------------------------------------------------------
// Sequent

Sequent::Sequent(std::vector<Formula> antecedent, std::vector<Formula> succedent)
    : antecedent_(antecedent.begin(), antecedent.end()),
      succedent_(succedent.begin(), succedent.end()) {}

std::set<std::string> Sequent::free_vars() const {
  std::set<std::string> out;
  for (const auto& f : antecedent_) out.insert(f.free_vars().begin(), f.free_vars().end());
  for (const auto& f : succedent_) out.insert(f.free_vars().begin(), f.free_vars().end());
  return out;
}

namespace {

void collect_predicates(const Formula& f, std::map<std::string, unsigned>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto [it, inserted] = out.emplace(f.symbol(), static_cast<unsigned>(f.variables().size()));
      if (!inserted && it->second != f.variables().size()) {
        throw InvalidSignatureError("predicate '" + f.symbol() + "' used with two arities");
      }
      return;
    }
    case Formula::Kind::Conn:
      for (const auto& a : f.args()) collect_predicates(a, out);
      return;
    default:
      collect_predicates(f.body(), out);
  }
}

}  // namespace

std::map<std::string, unsigned> Sequent::predicates() const {
  std::map<std::string, unsigned> out;
  for (const auto& f : antecedent_) collect_predicates(f, out);
  for (const auto& f : succedent_) collect_predicates(f, out);
  return out;
}

std::string render(const Sequent& s) {
  std::string out;
  bool first = true;
  for (const auto& f : s.antecedent()) {
    if (!first) out += ", ";
    out += f.text();
    first = false;
  }
  out += s.antecedent().empty() ? "=>" : " =>";
  for (bool lead = true; const auto& f : s.succedent()) {
    out += lead ? " " : ", ";
    out += f.text();
    lead = false;
  }
  return out;
}

}  // namespace fok
