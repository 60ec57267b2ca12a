#include "fok/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "fok/errors.hpp"

namespace fok {

std::string_view to_string(FrameShape shape) {
  switch (shape) {
    case FrameShape::AnyPreorder:
      return "any-preorder";
    case FrameShape::Poset:
      return "poset";
    case FrameShape::Tree:
      return "tree";
    case FrameShape::Chain:
      return "chain";
  }
  return "?";
}

FrameShape parse_shape(std::string_view text) {
  if (text == "any-preorder" || text == "preorder") return FrameShape::AnyPreorder;
  if (text == "poset") return FrameShape::Poset;
  if (text == "tree") return FrameShape::Tree;
  if (text == "chain") return FrameShape::Chain;
  throw UsageError("unknown shape '" + std::string(text) +
                   "' (expected any-preorder, poset, tree or chain)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Kripke:
      return "kripke";
    case Mode::ConstantDomain:
      return "cd";
    case Mode::Classical:
      return "classical";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "kripke") return Mode::Kripke;
  if (text == "cd") return Mode::ConstantDomain;
  if (text == "classical") return Mode::Classical;
  throw UsageError("unknown mode '" + std::string(text) + "' (expected kripke, cd or classical)");
}

SearchBounds effective_bounds(Mode mode, SearchBounds bounds) {
  if (mode == Mode::ConstantDomain) bounds.constant_domain = true;
  if (mode == Mode::Classical) {
    bounds.max_worlds = 1;
    bounds.constant_domain = true;
  }
  return bounds;
}

namespace {

int max_worlds_for(FrameShape shape) {
  switch (shape) {
    case FrameShape::AnyPreorder:
      return 5;
    case FrameShape::Poset:
      return 6;
    case FrameShape::Tree:
      return 8;
    case FrameShape::Chain:
      return 16;
  }
  return 1;
}

}  // namespace

void check_bounds(const SearchBounds& b) {
  if (b.max_worlds < 1 || b.max_domain < 1) {
    throw UsageError("bounds must be positive (max_worlds, max_domain >= 1)");
  }
  if (b.max_domain > 8) throw UsageError("max_domain above 8 exceeds the search budget");
  if (b.max_worlds > max_worlds_for(b.shape)) {
    throw UsageError("max_worlds above " + std::to_string(max_worlds_for(b.shape)) +
                     " exceeds the search budget for shape " + std::string(to_string(b.shape)));
  }
  if (b.max_worlds * b.max_domain > kBoundsBudget) {
    throw UsageError("max_worlds * max_domain exceeds the search budget of " +
                     std::to_string(kBoundsBudget));
  }
}

std::string describe(const SearchBounds& b) {
  return "worlds<=" + std::to_string(b.max_worlds) + " domain<=" + std::to_string(b.max_domain) +
         " shape=" + std::string(to_string(b.shape)) +
         (b.constant_domain ? " constant-domain" : "");
}

// ---------------------------------------------------------------------------
// Frames

namespace {

using Order = std::vector<std::uint8_t>;

bool transitive(const Order& o, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!o[i * n + j]) continue;
      for (int k = 0; k < n; ++k) {
        if (o[j * n + k] && !o[i * n + k]) return false;
      }
    }
  }
  return true;
}

Order identity(int n) {
  Order o(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) o[i * n + i] = 1;
  return o;
}

std::vector<Order> orders(int n, FrameShape shape) {
  std::vector<Order> out;
  switch (shape) {
    case FrameShape::Chain: {
      Order o(static_cast<std::size_t>(n * n), 0);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) o[i * n + j] = 1;
      }
      out.push_back(std::move(o));
      break;
    }
    case FrameShape::Tree: {
      // parent[i] < i; parent[1] varies slowest.
      std::vector<int> parent(static_cast<std::size_t>(n), 0);
      for (;;) {
        Order o = identity(n);
        for (int i = 1; i < n; ++i) {
          for (int a = parent[i];; a = parent[a]) {
            o[a * n + i] = 1;
            if (a == 0) break;
          }
        }
        out.push_back(std::move(o));
        int i = n - 1;
        while (i >= 1 && parent[i] == i - 1) parent[i--] = 0;
        if (i < 1) break;
        ++parent[i];
      }
      break;
    }
    case FrameShape::Poset:
    case FrameShape::AnyPreorder: {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          if (shape == FrameShape::Poset && j < i) continue;
          pairs.emplace_back(i, j);
        }
      }
      const std::uint64_t limit = std::uint64_t{1} << pairs.size();
      for (std::uint64_t mask = 0; mask < limit; ++mask) {
        Order o = identity(n);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          if (mask >> k & 1) o[pairs[k].first * n + pairs[k].second] = 1;
        }
        if (transitive(o, n)) out.push_back(std::move(o));
      }
      break;
    }
  }
  return out;
}

void domain_assignments(int n, const Order& o, int max_domain, std::vector<Frame>& out) {
  const std::uint32_t full = (std::uint32_t{1} << max_domain) - 1;
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
  auto is_prefix = [](std::uint32_t m) { return (m & (m + 1)) == 0; };

  auto rec = [&](auto&& self, int w) -> void {
    if (w == n) {
      std::uint32_t all = 0;
      for (auto m : masks) all |= m;
      if (!is_prefix(all)) return;
      out.push_back(Frame{n, std::popcount(all), o, masks});
      return;
    }
    for (std::uint32_t m = 1; m <= full; ++m) {
      if (w == 0 && !is_prefix(m)) continue;
      bool ok = true;
      for (int u = 0; u < w && ok; ++u) {
        if (o[u * n + w] && (masks[u] & ~m)) ok = false;
        if (o[w * n + u] && (m & ~masks[u])) ok = false;
      }
      if (!ok) continue;
      masks[w] = m;
      self(self, w + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Frame> enumerate_frames(const SearchBounds& bounds) {
  check_bounds(bounds);
  std::vector<Frame> out;
  for (int n = 1; n <= bounds.max_worlds; ++n) {
    for (const auto& o : orders(n, bounds.shape)) {
      if (bounds.constant_domain) {
        for (int k = 1; k <= bounds.max_domain; ++k) {
          const std::uint32_t m = (std::uint32_t{1} << k) - 1;
          out.push_back(Frame{n, k, o, std::vector<std::uint32_t>(static_cast<std::size_t>(n), m)});
        }
      } else {
        domain_assignments(n, o, bounds.max_domain, out);
      }
    }
  }
  return out;
}

KripkeModel frame_model(const Frame& frame, const std::map<std::string, unsigned>& predicates) {
  KripkeModel::Builder b;
  for (int w = 0; w < frame.worlds; ++w) b.add_world("w" + std::to_string(w));
  for (int e = 0; e < frame.elements; ++e) b.add_element("a" + std::to_string(e));
  for (int w = 0; w < frame.worlds; ++w) {
    for (int v = 0; v < frame.worlds; ++v) {
      if (frame.order[w * frame.worlds + v]) b.add_order(w, v);
    }
    for (int e = 0; e < frame.elements; ++e) {
      if (frame.domains[w] >> e & 1) b.add_to_domain(w, e);
    }
  }
  for (const auto& [name, arity] : predicates) b.declare_predicate(name, arity);
  return b.build();
}

// ---------------------------------------------------------------------------
// Interpretations

namespace {

std::size_t ipow(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Enumerates all hereditary interpretations over one frame.
class InterpretationEnumerator {
 public:
  InterpretationEnumerator(const Frame& frame, const std::map<std::string, unsigned>& predicates)
      : base_(frame_model(frame, predicates)) {
    const int n = frame.worlds;
    const std::size_t e = static_cast<std::size_t>(frame.elements);
    tables_ = base_.predicates();
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
    for (int w = 0; w < n; ++w) {
      for (std::size_t p = 0; p < tables_.size(); ++p) {
        const unsigned arity = tables_[p].arity;
        const std::size_t stride = ipow(e, arity);
        for (std::size_t t = 0; t < stride; ++t) {
          // Skip tuples leaving D(w).
          bool inside = true;
          for (std::size_t rest = t, i = 0; i < arity; ++i, rest /= e) {
            if (!(frame.domains[w] >> (rest % e) & 1)) inside = false;
          }
          if (!inside) continue;
          Slot s{static_cast<std::size_t>(p), static_cast<std::size_t>(w) * stride + t, {}, {}};
          for (int u = 0; u < w; ++u) {
            auto it = index.find({u, p, t});
            if (it == index.end()) continue;
            if (frame.order[u * n + w]) s.below.push_back(it->second);
            if (frame.order[w * n + u]) s.above.push_back(it->second);
          }
          index.emplace(std::make_tuple(w, p, t), slots_.size());
          slots_.push_back(std::move(s));
        }
      }
    }
    values_.assign(slots_.size(), 0);
  }

  std::size_t slot_count() const { return slots_.size(); }

  /// Calls visit(model) in canonical order until it returns false. Returns
  /// false if stopped early.
  template <class Visit>
  bool run(Visit&& visit) {
    return rec(0, visit);
  }

 private:
  struct Slot {
    std::size_t predicate;
    std::size_t bit;
    std::vector<std::size_t> below;  // earlier slots u ⪯ w, same tuple
    std::vector<std::size_t> above;  // earlier slots w ⪯ u, same tuple
  };

  bool allowed(const Slot& s, std::uint8_t v) const {
    if (v == 0) {
      for (auto k : s.below) {
        if (values_[k]) return false;
      }
    } else {
      for (auto k : s.above) {
        if (!values_[k]) return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool rec(std::size_t i, Visit& visit) {
    if (i == slots_.size()) {
      auto tables = tables_;
      for (std::size_t k = 0; k < slots_.size(); ++k) {
        tables[slots_[k].predicate].bits[slots_[k].bit] = values_[k];
      }
      return visit(base_.with_tables(std::move(tables)));
    }
    for (std::uint8_t v = 0; v <= 1; ++v) {
      if (!allowed(slots_[i], v)) continue;
      values_[i] = v;
      if (!rec(i + 1, visit)) return false;
    }
    return true;
  }

  KripkeModel base_;
  std::vector<KripkeModel::PredicateTable> tables_;
  std::vector<Slot> slots_;
  std::vector<std::uint8_t> values_;
};

void check_slot_budget(const std::map<std::string, unsigned>& predicates, const SearchBounds& b) {
  std::size_t per_world = 0;
  for (const auto& [name, arity] : predicates) {
    per_world += ipow(static_cast<std::size_t>(b.max_domain), arity);
    if (per_world > static_cast<std::size_t>(kSlotBudget)) break;
  }
  if (per_world * static_cast<std::size_t>(b.max_worlds) > static_cast<std::size_t>(kSlotBudget)) {
    throw UsageError("interpretation space exceeds the search budget (" +
                     std::to_string(kSlotBudget) + " bits per frame)");
  }
}

}  // namespace

std::uint64_t enumerate_models(const std::map<std::string, unsigned>& predicates,
                               const SearchBounds& bounds,
                               const std::function<bool(const KripkeModel&)>& visit) {
  check_bounds(bounds);
  check_slot_budget(predicates, bounds);
  std::uint64_t count = 0;
  for (const auto& frame : enumerate_frames(bounds)) {
    InterpretationEnumerator gen(frame, predicates);
    const bool more = gen.run([&](const KripkeModel& m) {
      ++count;
      return visit(m);
    });
    if (!more) break;
  }
  return count;
}

std::uint64_t enumerate_models(const Signature& signature, const SearchBounds& bounds,
                               const std::function<bool(const KripkeModel&)>& visit) {
  const std::map<std::string, unsigned> predicates(signature.predicates().begin(),
                                                   signature.predicates().end());
  return enumerate_models(predicates, bounds, visit);
}

// ---------------------------------------------------------------------------
// decide

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FOK_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

Verdict decide(const Sequent& sequent, Mode mode, const SearchBounds& bounds,
               const SearchOptions& options) {
  const SearchBounds eff = effective_bounds(mode, bounds);
  const auto predicates = sequent.predicates();
  check_bounds(eff);
  check_slot_budget(predicates, eff);
  if (options.single_succedent && sequent.succedent().size() != 1) {
    throw UsageError("single-succedent check requires exactly one succedent formula");
  }

  const std::vector<Frame> frames = enumerate_frames(eff);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::vector<std::uint64_t> counts(frames.size(), 0);
  std::vector<std::optional<Countermodel>> found(frames.size());
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= frames.size() || i > best.load()) return;
        InterpretationEnumerator gen(frames[i], predicates);
        gen.run([&](const KripkeModel& m) {
          if (best.load() < i) return false;
          ++counts[i];
          auto check = model_validates(m, sequent, options.single_succedent);
          if (check.valid) return true;
          found[i] = Countermodel{m, *check.counterwitness};
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return false;
        });
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };

  const unsigned workers =
      std::min<unsigned>(resolve_workers(options.workers),
                         static_cast<unsigned>(std::max<std::size_t>(frames.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  Verdict v;
  v.mode = mode;
  v.bounds = eff;
  const std::size_t b = best.load();
  const std::size_t last = b == kNone ? frames.size() : b + 1;
  for (std::size_t i = 0; i < last; ++i) v.models_examined += counts[i];
  if (b != kNone) {
    v.kind = Verdict::Kind::Refuted;
    v.countermodel = std::move(found[b]);
  }
  return v;
}

bool recheck(const Sequent& sequent, const Verdict& verdict) {
  if (!verdict.refuted() || !verdict.countermodel) return false;
  const auto& cm = *verdict.countermodel;
  if (!validate_model(cm.model).empty()) return false;
  if (verdict.mode != Mode::Kripke && !is_constant_domain(cm.model)) return false;
  if (verdict.mode == Mode::Classical && cm.model.world_count() != 1) return false;
  return !eval_sequent(cm.model, cm.witness.world, cm.witness.assignment, sequent);
}

// ---------------------------------------------------------------------------
// Classification

Census classify_connectives(unsigned arity, unsigned cap) {
  Census c;
  c.arity = arity;
  for (const TruthFunction& f : enumerate_truth_functions(arity, cap)) {
    const int sm = is_supermultiplicative(f).holds ? 1 : 0;
    const int mono = is_monotonic(f) ? 1 : 0;
    ++c.total;
    ++c.counts[sm][mono];
    c.members[sm][mono].push_back(f);
  }
  return c;
}

namespace {

/// Least a ⊑ b (a outer) with f(a) = 1 and f(b) = 0.
std::optional<std::pair<TruthVector, TruthVector>> monotonicity_witness(const TruthFunction& f) {
  const unsigned n = f.arity();
  const std::uint32_t size = std::uint32_t{1} << n;
  for (std::uint32_t a = 0; a < size; ++a) {
    if (!f.at(a)) continue;
    for (std::uint32_t b = 0; b < size; ++b) {
      if ((a & ~b) == 0 && !f.at(b)) {
        return std::make_pair(TruthVector::from_index(a, n), TruthVector::from_index(b, n));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RelationReport report_relations(const Signature& signature) {
  RelationReport r;
  for (const auto& [name, f] : signature.connectives()) {
    const auto sm = is_supermultiplicative(f);
    if (!sm.holds) {
      r.ils_equals_cds = false;
      r.not_supermultiplicative.push_back(name);
      r.reasons.push_back(name + " is not supermultiplicative: f" + sm.witness->first.to_string() +
                          " = f" + sm.witness->second.to_string() + " = 1 but f" +
                          tv_meet(sm.witness->first, sm.witness->second).to_string() + " = 0");
    }
    if (auto w = monotonicity_witness(f)) {
      r.cds_equals_cls = false;
      r.not_monotonic.push_back(name);
      r.reasons.push_back(name + " is not monotonic: " + w->first.to_string() + " <= " +
                          w->second.to_string() + " but f" + w->first.to_string() + " = 1 > f" +
                          w->second.to_string() + " = 0");
    }
  }
  r.ils_equals_cls = r.ils_equals_cds && r.cds_equals_cls;
  return r;
}

}  // namespace fok
