#include "fok/semantics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "fok/errors.hpp"

namespace fok {

// ---------------------------------------------------------------------------
// KripkeModel

std::optional<WorldId> KripkeModel::find_world(std::string_view name) const {
  for (std::size_t i = 0; i < world_names_.size(); ++i) {
    if (world_names_[i] == name) return static_cast<WorldId>(i);
  }
  return std::nullopt;
}

std::optional<ElementId> KripkeModel::find_element(std::string_view name) const {
  for (std::size_t i = 0; i < element_names_.size(); ++i) {
    if (element_names_[i] == name) return static_cast<ElementId>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> KripkeModel::predicate_index(std::string_view name) const {
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t KripkeModel::tuple_index(std::span<const ElementId> tuple) const {
  std::size_t idx = 0;
  for (ElementId e : tuple) {
    if (e < 0 || static_cast<std::size_t>(e) >= element_count()) {
      throw UsageError("element id out of range");
    }
    idx = idx * element_count() + static_cast<std::size_t>(e);
  }
  return idx;
}

bool KripkeModel::holds(WorldId w, std::size_t predicate, std::size_t tuple_index) const {
  const auto& t = predicates_[predicate];
  const std::size_t stride = t.bits.size() / std::max<std::size_t>(world_count(), 1);
  return t.bits[static_cast<std::size_t>(w) * stride + tuple_index] != 0;
}

bool KripkeModel::holds(WorldId w, std::string_view predicate,
                        std::span<const ElementId> tuple) const {
  auto p = predicate_index(predicate);
  if (!p) return false;
  if (predicates_[*p].arity != tuple.size()) {
    throw UsageError("arity mismatch for predicate '" + std::string(predicate) + "'");
  }
  return holds(w, *p, tuple_index(tuple));
}

KripkeModel KripkeModel::with_tables(std::vector<PredicateTable> tables) const {
  if (tables.size() != predicates_.size()) throw UsageError("predicate table count mismatch");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].name != predicates_[i].name || tables[i].arity != predicates_[i].arity ||
        tables[i].bits.size() != predicates_[i].bits.size()) {
      throw UsageError("predicate table shape mismatch for '" + tables[i].name + "'");
    }
  }
  KripkeModel out = *this;
  out.predicates_ = std::move(tables);
  return out;
}

void KripkeModel::finalize() {
  const std::size_t n = world_count();
  upsets_.assign(n, {});
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = 0; v < n; ++v) {
      if (order_[w * n + v]) upsets_[w].push_back(static_cast<WorldId>(v));
    }
  }
  member_.assign(n * element_count(), 0);
  for (std::size_t w = 0; w < n; ++w) {
    auto& d = domains_[w];
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (ElementId e : d) member_[w * element_count() + static_cast<std::size_t>(e)] = 1;
  }
}

// ---------------------------------------------------------------------------
// Builder

WorldId KripkeModel::Builder::add_world(const std::string& name) {
  if (std::find(worlds_.begin(), worlds_.end(), name) != worlds_.end()) {
    throw InvalidModelError("duplicate world '" + name + "'");
  }
  worlds_.push_back(name);
  domains_.emplace_back();
  return static_cast<WorldId>(worlds_.size() - 1);
}

ElementId KripkeModel::Builder::add_element(const std::string& name) {
  if (std::find(elements_.begin(), elements_.end(), name) != elements_.end()) {
    throw InvalidModelError("duplicate element '" + name + "'");
  }
  elements_.push_back(name);
  return static_cast<ElementId>(elements_.size() - 1);
}

WorldId KripkeModel::Builder::world(const std::string& name) {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it != worlds_.end()) return static_cast<WorldId>(it - worlds_.begin());
  return add_world(name);
}

ElementId KripkeModel::Builder::element(const std::string& name) {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it != elements_.end()) return static_cast<ElementId>(it - elements_.begin());
  return add_element(name);
}

void KripkeModel::Builder::declare_predicate(const std::string& name, unsigned arity) {
  for (const auto& [n, a] : predicates_) {
    if (n == name) {
      if (a != arity) throw InvalidModelError("predicate '" + name + "' declared twice");
      return;
    }
  }
  predicates_.emplace_back(name, arity);
}

void KripkeModel::Builder::add_order(WorldId w, WorldId v) {
  if (w < 0 || v < 0 || static_cast<std::size_t>(w) >= worlds_.size() ||
      static_cast<std::size_t>(v) >= worlds_.size()) {
    throw InvalidModelError("order pair references unknown world");
  }
  order_.emplace_back(w, v);
}

void KripkeModel::Builder::add_to_domain(WorldId w, ElementId e) {
  if (static_cast<std::size_t>(w) >= worlds_.size() ||
      static_cast<std::size_t>(e) >= elements_.size() || w < 0 || e < 0) {
    throw InvalidModelError("domain entry references unknown world or element");
  }
  domains_[static_cast<std::size_t>(w)].push_back(e);
}

void KripkeModel::Builder::set_fact(WorldId w, const std::string& predicate,
                                    std::vector<ElementId> tuple, bool value) {
  if (w < 0 || static_cast<std::size_t>(w) >= worlds_.size()) {
    throw InvalidModelError("fact references unknown world");
  }
  for (ElementId e : tuple) {
    if (e < 0 || static_cast<std::size_t>(e) >= elements_.size()) {
      throw InvalidModelError("fact references unknown element");
    }
  }
  bool declared = false;
  for (const auto& [n, a] : predicates_) {
    if (n == predicate) {
      if (a != tuple.size()) {
        throw InvalidModelError("fact for '" + predicate + "' has wrong arity");
      }
      declared = true;
    }
  }
  if (!declared) declare_predicate(predicate, static_cast<unsigned>(tuple.size()));
  facts_.push_back({w, predicate, std::move(tuple), value});
}

KripkeModel::Builder& KripkeModel::Builder::close_order() {
  const std::size_t n = worlds_.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (auto [w, v] : order_) m[static_cast<std::size_t>(w) * n + static_cast<std::size_t>(v)] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[k * n + j]) m[i * n + j] = 1;
      }
    }
  }
  order_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i * n + j]) order_.emplace_back(static_cast<WorldId>(i), static_cast<WorldId>(j));
    }
  }
  return *this;
}

KripkeModel KripkeModel::Builder::build() const {
  KripkeModel m;
  m.world_names_ = worlds_;
  m.element_names_ = elements_;
  const std::size_t n = worlds_.size();
  m.order_.assign(n * n, 0);
  for (auto [w, v] : order_) m.order_[static_cast<std::size_t>(w) * n + static_cast<std::size_t>(v)] = 1;
  m.domains_ = domains_;
  const std::size_t e = elements_.size();
  for (const auto& [name, arity] : predicates_) {
    PredicateTable t;
    t.name = name;
    t.arity = arity;
    std::size_t tuples = 1;
    for (unsigned i = 0; i < arity; ++i) tuples *= e;
    t.bits.assign(n * tuples, 0);
    m.predicates_.push_back(std::move(t));
  }
  m.finalize();
  for (const auto& f : facts_) {
    auto p = *m.predicate_index(f.predicate);
    auto& t = m.predicates_[p];
    const std::size_t stride = t.bits.size() / std::max<std::size_t>(n, 1);
    t.bits[static_cast<std::size_t>(f.world) * stride + m.tuple_index(f.tuple)] = f.value ? 1 : 0;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Assignment

Assignment Assignment::bind(const std::string& var, ElementId e) const {
  Assignment out = *this;
  out.map_[var] = e;
  return out;
}

std::optional<ElementId> Assignment::find(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Assignment Assignment::restrict(const std::set<std::string>& vars) const {
  Assignment out;
  for (const auto& [k, v] : map_) {
    if (vars.contains(k)) out.map_.emplace(k, v);
  }
  return out;
}

std::string render(const Assignment& rho, const KripkeModel& model) {
  if (rho.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [var, e] : rho) {
    if (!first) out += ", ";
    out += var + "->" + model.element_name(e);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NotReflexive: return "not-reflexive";
    case Violation::Kind::NotTransitive: return "not-transitive";
    case Violation::Kind::EmptyDomain: return "empty-domain";
    case Violation::Kind::DomainNotMonotone: return "domain-not-monotone";
    case Violation::Kind::FactOutsideDomain: return "fact-outside-domain";
    case Violation::Kind::HeredityViolated: return "heredity-violated";
  }
  return "unknown";
}

namespace {

std::vector<ElementId> decode_tuple(std::size_t index, unsigned arity, std::size_t base) {
  std::vector<ElementId> tuple(arity);
  for (unsigned i = arity; i-- > 0;) {
    tuple[i] = static_cast<ElementId>(index % base);
    index /= base;
  }
  return tuple;
}

// Last position fastest; false once every combination has been produced.
bool advance_odometer(std::vector<int>& digits, std::size_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (static_cast<std::size_t>(++digits[i]) < base) return true;
    digits[i] = 0;
  }
  return false;
}

std::string tuple_text(const KripkeModel& m, const std::vector<ElementId>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i != 0) out += ",";
    out += m.element_name(tuple[i]);
  }
  return out + ")";
}

}  // namespace

std::vector<Violation> validate_model(const KripkeModel& m) {
  std::vector<Violation> out;
  const auto n = static_cast<WorldId>(m.world_count());
  for (WorldId w = 0; w < n; ++w) {
    if (!m.leq(w, w)) {
      out.push_back({Violation::Kind::NotReflexive, "world " + m.world_name(w) + " is not reflexive",
                     {w}, {}});
    }
  }
  for (WorldId w = 0; w < n; ++w) {
    for (WorldId v = 0; v < n; ++v) {
      if (!m.leq(w, v)) continue;
      for (WorldId u = 0; u < n; ++u) {
        if (m.leq(v, u) && !m.leq(w, u)) {
          out.push_back({Violation::Kind::NotTransitive,
                         m.world_name(w) + " <= " + m.world_name(v) + " <= " + m.world_name(u) +
                             " but not " + m.world_name(w) + " <= " + m.world_name(u),
                         {w, v, u}, {}});
        }
      }
    }
  }
  for (WorldId w = 0; w < n; ++w) {
    if (m.domain(w).empty()) {
      out.push_back({Violation::Kind::EmptyDomain, "D(" + m.world_name(w) + ") is empty", {w}, {}});
    }
  }
  for (WorldId w = 0; w < n; ++w) {
    for (WorldId v = 0; v < n; ++v) {
      if (w == v || !m.leq(w, v)) continue;
      for (ElementId e : m.domain(w)) {
        if (!m.in_domain(v, e)) {
          out.push_back({Violation::Kind::DomainNotMonotone,
                         m.element_name(e) + " in D(" + m.world_name(w) + ") but not in D(" +
                             m.world_name(v) + ")",
                         {w, v}, {e}});
        }
      }
    }
  }
  const std::size_t base = m.element_count();
  for (const auto& table : m.predicates()) {
    std::size_t tuples = 1;
    for (unsigned i = 0; i < table.arity; ++i) tuples *= base;
    const auto p = *m.predicate_index(table.name);
    for (WorldId w = 0; w < n; ++w) {
      for (std::size_t t = 0; t < tuples; ++t) {
        if (!m.holds(w, p, t)) continue;
        auto tuple = decode_tuple(t, table.arity, base);
        const bool inside = std::all_of(tuple.begin(), tuple.end(),
                                        [&](ElementId e) { return m.in_domain(w, e); });
        if (!inside) {
          out.push_back({Violation::Kind::FactOutsideDomain,
                         table.name + tuple_text(m, tuple) + " set at " + m.world_name(w) +
                             " outside its domain",
                         {w}, tuple});
          continue;
        }
        for (WorldId v = 0; v < n; ++v) {
          if (v != w && m.leq(w, v) && !m.holds(v, p, t)) {
            out.push_back({Violation::Kind::HeredityViolated,
                           table.name + tuple_text(m, tuple) + " holds at " + m.world_name(w) +
                               " but not at " + m.world_name(v),
                           {w, v}, tuple});
          }
        }
      }
    }
  }
  return out;
}

void require_valid(const KripkeModel& model) {
  auto violations = validate_model(model);
  if (violations.empty()) return;
  std::string msg = "invalid Kripke model:";
  for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
    msg += "\n  " + std::string(to_string(violations[i].kind)) + ": " + violations[i].message;
  }
  if (violations.size() > 5) msg += "\n  ... (" + std::to_string(violations.size()) + " total)";
  throw InvalidModelError(msg);
}

bool is_constant_domain(const KripkeModel& model) {
  for (std::size_t w = 1; w < model.world_count(); ++w) {
    if (model.domain(static_cast<WorldId>(w)) != model.domain(0)) return false;
  }
  return true;
}

bool is_antisymmetric(const KripkeModel& model) {
  const auto n = static_cast<WorldId>(model.world_count());
  for (WorldId w = 0; w < n; ++w) {
    for (WorldId v = w + 1; v < n; ++v) {
      if (model.leq(w, v) && model.leq(v, w)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluator

class Evaluator::Impl {
 public:
  using Values = std::vector<std::uint8_t>;

  explicit Impl(const KripkeModel& m) : m_(m) {}

  struct Compiled {
    Formula::Kind kind;
    const void* id = nullptr;
    int predicate = -1;  // -1: predicate absent from the model, always 0
    std::vector<int> slots;
    const TruthFunction* function = nullptr;
    std::vector<const Compiled*> children;
    int bound = -1;
    std::vector<int> free_slots;
  };

  const Compiled& compile(const Formula& f) {
    if (auto it = compiled_.find(f.node_id()); it != compiled_.end()) return *it->second;
    keep_.push_back(f);
    auto c = std::make_unique<Compiled>();
    c->kind = f.kind();
    c->id = f.node_id();
    for (const auto& v : f.free_vars()) c->free_slots.push_back(slot(v));
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        auto p = m_.predicate_index(f.symbol());
        if (p && m_.predicates()[*p].arity == f.variables().size()) {
          c->predicate = static_cast<int>(*p);
        } else if (p) {
          throw UsageError("predicate '" + f.symbol() + "' has a different arity in the model");
        }
        for (const auto& v : f.variables()) c->slots.push_back(slot(v));
        break;
      }
      case Formula::Kind::Conn:
        c->function = &f.function();
        for (const auto& a : f.args()) c->children.push_back(&compile(a));
        break;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        c->bound = slot(f.bound_variable());
        c->children.push_back(&compile(f.body()));
        break;
    }
    const Compiled* raw = c.get();
    compiled_.emplace(f.node_id(), std::move(c));
    return *raw;
  }

  int slot(const std::string& var) {
    auto [it, inserted] = slots_.emplace(var, static_cast<int>(slots_.size()));
    if (inserted) env_.push_back(-1);
    return it->second;
  }

  void set_env(const Formula& f, const Assignment& rho) {
    for (const auto& v : f.free_vars()) {
      auto e = rho.find(v);
      if (!e) throw UsageError("assignment does not bind free variable '" + v + "'");
      if (*e < 0 || static_cast<std::size_t>(*e) >= m_.element_count()) {
        throw UsageError("assignment maps '" + v + "' to an unknown element");
      }
      env_[static_cast<std::size_t>(slot(v))] = *e;
    }
  }

  Values eval(const Compiled& c, bool memoize) {
    if (!memoize) return compute(c, memoize);
    std::vector<int> key;
    key.reserve(c.free_slots.size());
    for (int s : c.free_slots) key.push_back(env_[static_cast<std::size_t>(s)]);
    auto mk = std::make_pair(c.id, std::move(key));
    if (auto it = memo_.find(mk); it != memo_.end()) return it->second;
    Values v = compute(c, memoize);
    memo_.emplace(std::move(mk), v);
    return v;
  }

 private:
  Values compute(const Compiled& c, bool memoize) {
    const std::size_t n = m_.world_count();
    Values out(n, 0);
    switch (c.kind) {
      case Formula::Kind::Atom: {
        if (c.predicate < 0) return out;
        const auto& table = m_.predicates()[static_cast<std::size_t>(c.predicate)];
        const std::size_t stride = table.bits.size() / std::max<std::size_t>(n, 1);
        std::size_t idx = 0;
        for (int s : c.slots) {
          idx = idx * m_.element_count() + static_cast<std::size_t>(env_[static_cast<std::size_t>(s)]);
        }
        for (std::size_t w = 0; w < n; ++w) out[w] = table.bits[w * stride + idx];
        return out;
      }
      case Formula::Kind::Conn: {
        std::vector<Values> kids;
        kids.reserve(c.children.size());
        for (const auto* k : c.children) kids.push_back(eval(*k, memoize));
        Values local(n, 0);
        const unsigned arity = c.function->arity();
        for (std::size_t v = 0; v < n; ++v) {
          std::uint32_t idx = 0;
          for (unsigned i = 0; i < arity; ++i) idx = (idx << 1) | kids[i][v];
          local[v] = c.function->at(idx) ? 1 : 0;
        }
        for (std::size_t w = 0; w < n; ++w) {
          std::uint8_t all = 1;
          for (WorldId v : m_.upset(static_cast<WorldId>(w))) all &= local[static_cast<std::size_t>(v)];
          out[w] = all;
        }
        return out;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const bool universal = c.kind == Formula::Kind::Forall;
        const auto slot = static_cast<std::size_t>(c.bound);
        const int saved = env_[slot];
        const std::size_t elems = m_.element_count();
        std::vector<Values> body(elems);
        for (std::size_t e = 0; e < elems; ++e) {
          env_[slot] = static_cast<int>(e);
          body[e] = eval(*c.children[0], memoize);
        }
        env_[slot] = saved;
        if (universal) {
          // Holds at v for every element of D(v).
          Values local(n, 1);
          for (std::size_t v = 0; v < n; ++v) {
            for (ElementId e : m_.domain(static_cast<WorldId>(v))) {
              local[v] &= body[static_cast<std::size_t>(e)][v];
            }
          }
          for (std::size_t w = 0; w < n; ++w) {
            std::uint8_t all = 1;
            for (WorldId v : m_.upset(static_cast<WorldId>(w))) all &= local[static_cast<std::size_t>(v)];
            out[w] = all;
          }
        } else {
          for (std::size_t w = 0; w < n; ++w) {
            std::uint8_t any = 0;
            for (ElementId e : m_.domain(static_cast<WorldId>(w))) any |= body[static_cast<std::size_t>(e)][w];
            out[w] = any;
          }
        }
        return out;
      }
    }
    return out;
  }

  const KripkeModel& m_;
  std::vector<Formula> keep_;
  std::map<const void*, std::unique_ptr<Compiled>> compiled_;
  std::map<std::string, int> slots_;
  std::vector<int> env_;
  std::map<std::pair<const void*, std::vector<int>>, Values> memo_;
};

Evaluator::Evaluator(const KripkeModel& model, bool memoize)
    : model_(model), memoize_(memoize), impl_(std::make_shared<Impl>(model)) {}

std::vector<std::uint8_t> Evaluator::values(const Formula& phi, const Assignment& rho) {
  const auto& c = impl_->compile(phi);
  impl_->set_env(phi, rho);
  return impl_->eval(c, memoize_);
}

bool Evaluator::value(WorldId w, const Assignment& rho, const Formula& phi) {
  if (w < 0 || static_cast<std::size_t>(w) >= model_.world_count()) {
    throw UsageError("world id out of range");
  }
  for (const auto& v : phi.free_vars()) {
    auto e = rho.find(v);
    if (!e) throw UsageError("assignment does not bind free variable '" + v + "'");
    if (*e < 0 || static_cast<std::size_t>(*e) >= model_.element_count() ||
        !model_.in_domain(w, *e)) {
      throw UsageError("assignment maps '" + v + "' outside D(" + model_.world_name(w) + ")");
    }
  }
  return values(phi, rho)[static_cast<std::size_t>(w)] != 0;
}

bool Evaluator::sequent_value(WorldId w, const Assignment& rho, const Sequent& s) {
  for (const auto& a : s.antecedent()) {
    if (!value(w, rho, a)) return true;
  }
  for (const auto& b : s.succedent()) {
    if (value(w, rho, b)) return true;
  }
  return false;
}

bool eval_formula(const KripkeModel& model, WorldId w, const Assignment& rho,
                  const Formula& phi) {
  return Evaluator(model).value(w, rho, phi);
}

bool eval_sequent(const KripkeModel& model, WorldId w, const Assignment& rho, const Sequent& s) {
  return Evaluator(model).sequent_value(w, rho, s);
}

ModelCheck model_validates(const KripkeModel& model, const Sequent& s, bool single_succedent) {
  if (single_succedent && s.succedent().size() != 1) {
    throw UsageError("single-succedent check requires exactly one succedent formula");
  }
  const std::set<std::string> fv = s.free_vars();
  const std::vector<std::string> vars(fv.begin(), fv.end());
  const std::size_t elems = model.element_count();
  const std::size_t n = model.world_count();
  if (n == 0) return {};
  if (!vars.empty() && elems == 0) return {};

  Evaluator ev(model);
  std::optional<Counterwitness> best;
  std::vector<int> digits(vars.size(), 0);
  for (;;) {
    Assignment rho;
    for (std::size_t i = 0; i < vars.size(); ++i) rho = rho.bind(vars[i], digits[i]);

    std::vector<std::uint8_t> refuted(n, 1);
    for (const auto& a : s.antecedent()) {
      auto v = ev.values(a, rho);
      for (std::size_t w = 0; w < n; ++w) refuted[w] &= v[w];
    }
    for (const auto& b : s.succedent()) {
      auto v = ev.values(b, rho);
      for (std::size_t w = 0; w < n; ++w) refuted[w] &= static_cast<std::uint8_t>(1 - v[w]);
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (!refuted[w]) continue;
      const bool in_range = std::all_of(digits.begin(), digits.end(), [&](int e) {
        return model.in_domain(static_cast<WorldId>(w), e);
      });
      if (!in_range) continue;
      if (!best || static_cast<std::size_t>(best->world) > w) {
        best = Counterwitness{static_cast<WorldId>(w), rho};
      }
      break;
    }
    if (best && best->world == 0) break;

    if (vars.empty() || !advance_odometer(digits, elems)) break;
  }
  if (best) return {false, best};
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Classical semantics

bool classical_eval(const ClassicalStructure& st, const Assignment& rho, const Formula& phi) {
  if (st.elements.empty()) throw UsageError("classical structure needs a nonempty domain");
  switch (phi.kind()) {
    case Formula::Kind::Atom: {
      std::vector<ElementId> tuple;
      for (const auto& v : phi.variables()) {
        auto e = rho.find(v);
        if (!e) throw UsageError("assignment does not bind free variable '" + v + "'");
        if (*e < 0 || static_cast<std::size_t>(*e) >= st.elements.size()) {
          throw UsageError("assignment maps '" + v + "' outside the domain");
        }
        tuple.push_back(*e);
      }
      auto it = st.facts.find(phi.symbol());
      return it != st.facts.end() && it->second.contains(tuple);
    }
    case Formula::Kind::Conn: {
      std::vector<int> bits;
      for (const auto& a : phi.args()) bits.push_back(classical_eval(st, rho, a) ? 1 : 0);
      return phi.function()(TruthVector(bits));
    }
    case Formula::Kind::Forall:
      for (std::size_t e = 0; e < st.elements.size(); ++e) {
        if (!classical_eval(st, rho.bind(phi.bound_variable(), static_cast<ElementId>(e)), phi.body())) {
          return false;
        }
      }
      return true;
    case Formula::Kind::Exists:
      for (std::size_t e = 0; e < st.elements.size(); ++e) {
        if (classical_eval(st, rho.bind(phi.bound_variable(), static_cast<ElementId>(e)), phi.body())) {
          return true;
        }
      }
      return false;
  }
  return false;
}

KripkeModel one_world_model(const ClassicalStructure& st) {
  KripkeModel::Builder b;
  const WorldId w = b.add_world("w");
  for (const auto& name : st.elements) b.add_to_domain(w, b.add_element(name));
  for (const auto& [p, arity] : st.predicates) b.declare_predicate(p, arity);
  for (const auto& [p, tuples] : st.facts) {
    for (const auto& t : tuples) b.set_fact(w, p, t);
  }
  b.close_order();
  return b.build();
}

}  // namespace fok
