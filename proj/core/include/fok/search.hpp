#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fok/semantics.hpp"
#include "fok/syntax.hpp"

namespace fok {

enum class FrameShape { AnyPreorder, Poset, Tree, Chain };

std::string_view to_string(FrameShape shape);
/// "any-preorder", "poset", "tree" or "chain".
FrameShape parse_shape(std::string_view text);

struct SearchBounds {
  int max_worlds = 2;
  int max_domain = 2;
  FrameShape shape = FrameShape::Poset;
  bool constant_domain = false;

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

/// max_worlds * max_domain may not exceed this.
inline constexpr int kBoundsBudget = 16;
/// Upper bound on interpretation bits (world, predicate, tuple) per frame.
inline constexpr int kSlotBudget = 48;

/// Throws UsageError for bounds outside the supported envelope.
void check_bounds(const SearchBounds& bounds);

std::string describe(const SearchBounds& bounds);

/// Order plus domains over worlds 0..n-1 and elements 0..k-1.
struct Frame {
  int worlds = 0;
  int elements = 0;
  std::vector<std::uint8_t> order;        ///< n*n, reflexive-transitive
  std::vector<std::uint32_t> domains;     ///< bitmask of elements per world
};

/// All frames within bounds in canonical order: world count ascending, then
/// order relations, then domain assignments. Worlds of partial-order shapes
/// are labeled along a linear extension; for non-constant domains, D(0) and
/// the union of all domains are initial segments of the elements.
std::vector<Frame> enumerate_frames(const SearchBounds& bounds);

/// Streams every valid model within bounds over the given predicates.
/// `visit` returns false to stop early. Returns the number of models visited.
std::uint64_t enumerate_models(const std::map<std::string, unsigned>& predicates,
                               const SearchBounds& bounds,
                               const std::function<bool(const KripkeModel&)>& visit);
std::uint64_t enumerate_models(const Signature& signature, const SearchBounds& bounds,
                               const std::function<bool(const KripkeModel&)>& visit);

/// Builds the model for one frame and one assignment of interpretation bits.
KripkeModel frame_model(const Frame& frame, const std::map<std::string, unsigned>& predicates);

enum class Mode { Kripke, ConstantDomain, Classical };

std::string_view to_string(Mode mode);
/// "kripke", "cd" or "classical".
Mode parse_mode(std::string_view text);

/// Bounds actually searched for a mode: cd forces constant domains,
/// classical forces a single world.
SearchBounds effective_bounds(Mode mode, SearchBounds bounds);

struct Countermodel {
  KripkeModel model;
  Counterwitness witness;
};

/// Outcome of a bounded search. Refutations are sound; validity is only
/// claimed up to the searched bounds.
struct Verdict {
  enum class Kind { ValidUpToBounds, Refuted };
  Kind kind = Kind::ValidUpToBounds;
  Mode mode = Mode::Kripke;
  SearchBounds bounds;
  std::optional<Countermodel> countermodel;
  /// Models examined in canonical order up to the verdict; independent of
  /// the worker count.
  std::uint64_t models_examined = 0;

  bool refuted() const { return kind == Kind::Refuted; }
};

struct SearchOptions {
  /// 0 selects FOK_WORKERS from the environment, else 1.
  unsigned workers = 0;
  bool single_succedent = false;
};

unsigned resolve_workers(unsigned requested);

/// First countermodel in canonical order, or ValidUpToBounds.
Verdict decide(const Sequent& sequent, Mode mode, const SearchBounds& bounds,
               const SearchOptions& options = {});

/// Re-validates a Refuted verdict: the model passes validate_model and the
/// sequent evaluates to 0 at the witness.
bool recheck(const Sequent& sequent, const Verdict& verdict);

// ---------------------------------------------------------------------------
// Connective classification

struct Census {
  unsigned arity = 0;
  std::uint64_t total = 0;
  /// Indexed [supermultiplicative][monotonic].
  std::uint64_t counts[2][2] = {{0, 0}, {0, 0}};
  std::vector<TruthFunction> members[2][2];
};

Census classify_connectives(unsigned arity, unsigned cap = kDefaultEnumerationCap);

struct RelationReport {
  bool ils_equals_cds = true;
  bool cds_equals_cls = true;
  bool ils_equals_cls = true;
  std::vector<std::string> not_supermultiplicative;
  std::vector<std::string> not_monotonic;
  std::vector<std::string> reasons;
};

/// Which of FOILS = FOCDS, FOCDS = FOCLS, FOILS = FOCLS hold for the
/// signature's connectives, per the classification by supermultiplicativity
/// and monotonicity.
RelationReport report_relations(const Signature& signature);

}  // namespace fok
