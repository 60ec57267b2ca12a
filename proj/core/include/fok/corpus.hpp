#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fok/search.hpp"

namespace fok {

/// Seeded random sequents over p/1, q/1 and r/0 with variables x and y.
struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t size = 200;
  unsigned max_depth = 3;
  unsigned max_side = 2;
};

/// p, q unary and r 0-ary plus the named builtin connectives.
Signature corpus_signature(const std::vector<std::string>& builtin_connectives);

/// Distinct sequents in generation order. Deterministic for a given seed.
std::vector<Sequent> generate_corpus(const Signature& signature, const CorpusOptions& options);

/// Does a refutation in one mode carry over to another?
struct TransferRecord {
  Sequent sequent;
  bool source_refuted = false;
  bool target_refuted = false;
};

struct TransferReport {
  std::size_t total = 0;
  std::size_t source_refuted = 0;
  std::size_t transferred = 0;
  /// Refuted at the source, no countermodel found at the target bounds.
  std::size_t not_transferred = 0;
  std::vector<TransferRecord> records;

  double not_transferred_rate() const {
    return total == 0 ? 0.0 : static_cast<double>(not_transferred) / static_cast<double>(total);
  }
};

TransferReport check_refutation_transfer(const std::vector<Sequent>& corpus, Mode source,
                                         const SearchBounds& source_bounds, Mode target,
                                         const SearchBounds& target_bounds,
                                         const SearchOptions& options = {});

}  // namespace fok
