#include "fok/errors.hpp"

namespace fok {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : UsageError("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

}  // namespace fok
