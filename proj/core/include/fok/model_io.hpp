#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fok/semantics.hpp"

namespace fok {

/// Line-oriented model file:
///
///     # comment
///     predicate p 1
///     worlds w1 w2
///     elements a1 a2
///     order w1 w2          # w1 ⪯ w2; the loader closes the relation
///     domain w2 a1 a2
///     fact w2 p a2         # 1-entries only; everything else is 0
///     fact w1 T
///     root w1              # optional tree metadata
///     last w1.w2 w2        # optional: unraveled node -> original world
///     note text...         # optional free-form annotation
struct ModelDocument {
  KripkeModel model;
  std::optional<std::string> root;
  std::map<std::string, std::string> last;
  std::vector<std::string> notes;
};

/// Parses and closes the order reflexively-transitively. Does not validate
/// the Kripke invariants; see validate_model.
ModelDocument parse_model_document(std::string_view text);
KripkeModel parse_model(std::string_view text);

struct ModelWriteOptions {
  std::optional<std::string> root;
  std::map<std::string, std::string> last;
  std::vector<std::string> notes;
};

/// Canonical text: order written as the covering relation for partial orders
/// and as all strict pairs otherwise.
std::string write_model(const KripkeModel& model, const ModelWriteOptions& options = {});

}  // namespace fok
