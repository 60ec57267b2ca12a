#include "fok/corpus.hpp"

#include <random>
#include <set>

#include "fok/errors.hpp"

namespace fok {

Signature corpus_signature(const std::vector<std::string>& builtin_connectives) {
  Signature sig;
  sig.add_predicate("p", 1);
  sig.add_predicate("q", 1);
  sig.add_predicate("r", 0);
  for (const auto& name : builtin_connectives) sig.add_connective(name, builtin(name));
  return sig;
}

namespace {

class Generator {
 public:
  Generator(const Signature& sig, std::uint64_t seed) : rng_(seed) {
    for (const auto& [name, f] : sig.connectives()) connectives_.emplace_back(name, f);
    for (const auto& [name, arity] : sig.predicates()) {
      if (arity > 1) throw UsageError("corpus predicates must have arity 0 or 1");
      predicates_.emplace_back(name, arity);
    }
    if (predicates_.empty()) throw UsageError("corpus signature has no predicates");
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula atom() {
    const auto& [name, arity] = predicates_[pick(predicates_.size())];
    if (arity == 0) return Formula::atom(name, {});
    return Formula::atom(name, {kVars[pick(2)]});
  }

  /// A formula of depth exactly d.
  Formula formula(unsigned d) {
    if (d == 0) return atom();
    const std::size_t choices = connectives_.size() + 2;
    const std::size_t k = pick(choices);
    if (k >= connectives_.size()) {
      std::string v = kVars[pick(2)];
      Formula body = formula(d - 1);
      return k == connectives_.size() ? Formula::forall(std::move(v), std::move(body))
                                      : Formula::exists(std::move(v), std::move(body));
    }
    const auto& [name, f] = connectives_[k];
    if (f.arity() == 0) return Formula::conn(name, f, {});
    std::vector<Formula> args;
    const std::size_t deep = pick(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i) {
      args.push_back(formula(i == deep ? d - 1 : static_cast<unsigned>(pick(d))));
    }
    return Formula::conn(name, f, std::move(args));
  }

 private:
  static constexpr const char* kVars[2] = {"x", "y"};
  std::mt19937_64 rng_;
  std::vector<std::pair<std::string, TruthFunction>> connectives_;
  std::vector<std::pair<std::string, unsigned>> predicates_;
};

}  // namespace

std::vector<Sequent> generate_corpus(const Signature& signature, const CorpusOptions& options) {
  Generator gen(signature, options.seed);
  std::vector<Sequent> out;
  std::set<std::string> seen;
  const std::size_t attempts = options.size * 50 + 100;
  for (std::size_t t = 0; t < attempts && out.size() < options.size; ++t) {
    auto side = [&](std::size_t count) {
      std::vector<Formula> fs;
      for (std::size_t i = 0; i < count; ++i) {
        fs.push_back(gen.formula(static_cast<unsigned>(gen.pick(options.max_depth + 1))));
      }
      return fs;
    };
    auto left = side(gen.pick(options.max_side + 1));
    auto right = side(1 + gen.pick(options.max_side));
    Sequent s(std::move(left), std::move(right));
    if (seen.insert(render(s)).second) out.push_back(std::move(s));
  }
  return out;
}

TransferReport check_refutation_transfer(const std::vector<Sequent>& corpus, Mode source,
                                         const SearchBounds& source_bounds, Mode target,
                                         const SearchBounds& target_bounds,
                                         const SearchOptions& options) {
  TransferReport report;
  for (const auto& s : corpus) {
    TransferRecord rec{s, false, false};
    rec.source_refuted = decide(s, source, source_bounds, options).refuted();
    if (rec.source_refuted) {
      rec.target_refuted = decide(s, target, target_bounds, options).refuted();
      ++report.source_refuted;
      ++(rec.target_refuted ? report.transferred : report.not_transferred);
    }
    ++report.total;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace fok
