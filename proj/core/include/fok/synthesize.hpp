#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fok/search.hpp"

namespace fok {

/// f(a) = f(b) = 1 and f(a ⊓ b) = 0.
struct WitnessPair {
  TruthVector a;
  TruthVector b;
};

/// Lexicographically least witness. Throws DomainError if f is supermultiplicative.
WitnessPair find_witness(const TruthFunction& f);

/// Joint-0 positions of (a, b) set to 1 in both.
struct StarVectors {
  TruthVector a_star;
  TruthVector b_star;
};

StarVectors star_vectors(const TruthVector& a, const TruthVector& b);

enum class SeparationCase { A, B, C, D, E };

char to_char(SeparationCase c);

/// A if f(𝟏) = 0, else B if f(a*) = 1, else C if f(b*) = 1, else D if
/// f(a* ⊓ b*) = 0, else E. Throws UsageError if (a, b) is not a witness.
SeparationCase case_select(const TruthFunction& f, const WitnessPair& w, const StarVectors& s);

/// Names of the two unary and two 0-ary predicates of the construction.
struct SynthesisSymbols {
  std::string p = "p";
  std::string q = "q";
  std::string t = "T";
  std::string r = "R";
};

/// p, q, T, R, each suffixed with the least number that avoids `taken`.
SynthesisSymbols fresh_symbols(const Signature& taken);

/// α ↔_c β = c(θ₁, …, θₙ) with θᵢ = α, β or T for (a*ᵢ, b*ᵢ) = (0,1), (1,0), (1,1).
/// Throws UsageError unless f(a*) = f(b*) = 0 and f(a* ⊓ b*) = f(𝟏) = 1.
Formula biconditional(const std::string& name, const TruthFunction& f, const StarVectors& s,
                      const Formula& alpha, const Formula& beta,
                      const SynthesisSymbols& symbols = {});

/// The separating sequent for the given case. Throws UsageError when the
/// case tag does not match case_select.
Sequent build_sequent(const std::string& name, const TruthFunction& f, SeparationCase tag,
                      const WitnessPair& w, const SynthesisSymbols& symbols = {});

/// Two worlds w1 ⪯ w2, D(w1) = {a1}, D(w2) = {a1, a2}; p(a1) and T hold at
/// both worlds, q(a2) holds at w2, everything else is 0.
KripkeModel kstar(const SynthesisSymbols& symbols = {});

struct SeparationCertificate {
  std::string connective;
  TruthFunction function;
  SeparationCase tag = SeparationCase::A;
  WitnessPair witness;
  StarVectors stars;
  SynthesisSymbols symbols;
  Sequent sequent;
  KripkeModel model;  ///< K*
  WorldId world = 0;  ///< w1
  std::vector<bool> antecedent_values;
  std::vector<bool> succedent_values;
  bool sequent_value = true;
  std::optional<Verdict> cd_verdict;
};

struct SynthesisOptions {
  /// Symbols of the surrounding signature to avoid.
  Signature context;
  bool run_cd_search = true;
  SearchBounds cd_bounds{3, 2, FrameShape::Poset, true};
  SearchOptions search;
};

/// Witness, stars, case, sequent, the K* refutation at (w1, ∅), and a
/// bounded constant-domain search. Throws DomainError if f is supermultiplicative.
SeparationCertificate synthesize(const std::string& name, const TruthFunction& f,
                                 const SynthesisOptions& options = {});

/// Re-evaluates the certificate's sequent on its model at (w1, ∅).
bool certificate_rechecks(const SeparationCertificate& cert);

/// Structured text: key/value lines, then K* in the model file format.
std::string render(const SeparationCertificate& cert);

}  // namespace fok
