#include "fok/truthfun.hpp"

#include <algorithm>
#include <array>

#include "fok/errors.hpp"
#include "json.hpp"

namespace fok {

namespace {

constexpr unsigned kMaxVectorLength = 31;

void require_same_length(const TruthVector& a, const TruthVector& b) {
  if (a.size() != b.size()) {
    throw UsageError("truth vector length mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

}  // namespace

TruthVector::TruthVector(std::initializer_list<int> bits)
    : TruthVector(std::vector<int>(bits)) {}

TruthVector::TruthVector(const std::vector<int>& bits) {
  if (bits.size() > kMaxVectorLength) throw UsageError("truth vector too long");
  size_ = static_cast<unsigned>(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw UsageError("truth vector entries must be 0 or 1");
    bits_ = (bits_ << 1) | static_cast<std::uint32_t>(b);
  }
}

TruthVector TruthVector::from_index(std::uint32_t index, unsigned length) {
  if (length > kMaxVectorLength) throw UsageError("truth vector too long");
  if (length < 32 && (index >> length) != 0) throw UsageError("index out of range for length");
  TruthVector v;
  v.bits_ = index;
  v.size_ = length;
  return v;
}

TruthVector TruthVector::ones(unsigned length) {
  return from_index(length == 0 ? 0 : (std::uint32_t{1} << length) - 1, length);
}

bool TruthVector::operator[](unsigned i) const {
  if (i >= size_) throw UsageError("truth vector component out of range");
  return ((bits_ >> (size_ - 1 - i)) & 1u) != 0;
}

std::string TruthVector::to_string() const {
  std::string out = "(";
  for (unsigned i = 0; i < size_; ++i) {
    if (i != 0) out += ',';
    out += (*this)[i] ? '1' : '0';
  }
  out += ')';
  return out;
}

std::string TruthVector::to_bits() const {
  std::string out;
  for (unsigned i = 0; i < size_; ++i) out += (*this)[i] ? '1' : '0';
  return out;
}

bool tv_leq(const TruthVector& a, const TruthVector& b) {
  require_same_length(a, b);
  return (a.index() & ~b.index()) == 0;
}

TruthVector tv_meet(const TruthVector& a, const TruthVector& b) {
  require_same_length(a, b);
  return TruthVector::from_index(a.index() & b.index(), a.size());
}

TruthVector tv_join(const TruthVector& a, const TruthVector& b) {
  require_same_length(a, b);
  return TruthVector::from_index(a.index() | b.index(), a.size());
}

// ---------------------------------------------------------------------------

TruthFunction::TruthFunction(unsigned arity, std::vector<bool> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity_ > kMaxTableArity) {
    throw UsageError("truth function arity " + std::to_string(arity_) + " exceeds " +
                     std::to_string(kMaxTableArity));
  }
  if (table_.size() != (std::size_t{1} << arity_)) {
    throw UsageError("truth table length " + std::to_string(table_.size()) +
                     " does not equal 2^" + std::to_string(arity_));
  }
}

TruthFunction TruthFunction::from_bits(std::string_view bits) {
  std::vector<bool> table;
  table.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw UsageError("truth table must be a string over {0,1}");
    table.push_back(c == '1');
  }
  unsigned arity = 0;
  while ((std::size_t{1} << arity) < table.size() && arity <= kMaxTableArity) ++arity;
  if ((std::size_t{1} << arity) != table.size()) {
    throw UsageError("truth table length " + std::to_string(table.size()) +
                     " is not a power of two");
  }
  return TruthFunction(arity, std::move(table));
}

TruthFunction TruthFunction::from_code(unsigned arity, std::uint64_t code) {
  if (arity > 6) throw UsageError("from_code supports arity <= 6");
  const std::size_t n = std::size_t{1} << arity;
  std::vector<bool> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = ((code >> (n - 1 - i)) & 1u) != 0;
  return TruthFunction(arity, std::move(table));
}

bool TruthFunction::operator()(const TruthVector& input) const {
  if (input.size() != arity_) {
    throw UsageError("truth function of arity " + std::to_string(arity_) +
                     " applied to vector of length " + std::to_string(input.size()));
  }
  return table_[input.index()];
}

std::string TruthFunction::table_bits() const {
  std::string out;
  out.reserve(table_.size());
  for (bool b : table_) out += b ? '1' : '0';
  return out;
}

std::string TruthFunction::to_json() const {
  nlohmann::ordered_json j;
  j["arity"] = arity_;
  j["table"] = table_bits();
  return j.dump();
}

TruthFunction TruthFunction::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("arity") || !j.contains("table") ||
      !j["arity"].is_number_unsigned() || !j["table"].is_string()) {
    throw UsageError(R"(truth function JSON must be {"arity": n, "table": "bits"})");
  }
  auto f = from_bits(j["table"].get<std::string>());
  if (f.arity() != j["arity"].get<unsigned>()) {
    throw UsageError("declared arity does not match table length");
  }
  return f;
}

// ---------------------------------------------------------------------------

SupermultiplicativityReport is_supermultiplicative(const TruthFunction& f) {
  const unsigned n = f.arity();
  const std::uint32_t size = std::uint32_t{1} << n;
  for (std::uint32_t a = 0; a < size; ++a) {
    if (!f.at(a)) continue;
    for (std::uint32_t b = 0; b < size; ++b) {
      if (f.at(b) && !f.at(a & b)) {
        return {false, std::pair{TruthVector::from_index(a, n), TruthVector::from_index(b, n)}};
      }
    }
  }
  return {true, std::nullopt};
}

bool is_monotonic(const TruthFunction& f) {
  const std::uint32_t size = std::uint32_t{1} << f.arity();
  // Covering pairs suffice: flip one 0 to 1.
  for (std::uint32_t a = 0; a < size; ++a) {
    for (unsigned bit = 0; bit < f.arity(); ++bit) {
      const std::uint32_t b = a | (std::uint32_t{1} << bit);
      if (b != a && f.at(a) && !f.at(b)) return false;
    }
  }
  return true;
}

bool nary_meet_closure(const TruthFunction& f, unsigned n) {
  if (n == 0) throw UsageError("nary_meet_closure requires n >= 1");
  const std::uint32_t size = std::uint32_t{1} << f.arity();
  std::vector<char> ones(size, 0);
  for (std::uint32_t a = 0; a < size; ++a) ones[a] = f.at(a) ? 1 : 0;

  // reach[m] == 1 iff m is the meet of some k-tuple of 1-vectors.
  std::vector<char> reach = ones;
  for (unsigned k = 1; k < n; ++k) {
    std::vector<char> next(size, 0);
    for (std::uint32_t m = 0; m < size; ++m) {
      if (!reach[m]) continue;
      for (std::uint32_t a = 0; a < size; ++a) {
        if (ones[a]) next[m & a] = 1;
      }
    }
    reach = std::move(next);
  }
  for (std::uint32_t m = 0; m < size; ++m) {
    if (reach[m] && !ones[m]) return false;
  }
  return true;
}

TruthFunctionRange enumerate_truth_functions(unsigned arity, unsigned cap) {
  if (arity > cap) {
    throw UsageError("arity " + std::to_string(arity) + " exceeds enumeration cap " +
                     std::to_string(cap));
  }
  if (arity > 5) throw UsageError("enumeration beyond arity 5 is not representable");
  const std::uint64_t table_size = std::uint64_t{1} << arity;
  const std::uint64_t count =
      table_size >= 64 ? 0 : (std::uint64_t{1} << table_size);
  return TruthFunctionRange(arity, count);
}

namespace {

struct BuiltinEntry {
  std::string_view name;
  std::string_view symbol;
  std::string_view table;
};

constexpr std::array<BuiltinEntry, 6> kBuiltins{{
    {"not", "¬", "10"},
    {"and", "∧", "0001"},
    {"or", "∨", "0111"},
    {"imp", "→", "1101"},
    {"xor", "⊻", "0110"},
    {"iff", "↔", "1001"},
}};

const BuiltinEntry* find_builtin(std::string_view name) {
  for (const auto& e : kBuiltins) {
    if (e.name == name || e.symbol == name) return &e;
  }
  return nullptr;
}

}  // namespace

TruthFunction builtin(std::string_view name) {
  const auto* e = find_builtin(name);
  if (e == nullptr) throw UsageError("unknown builtin connective '" + std::string(name) + "'");
  return TruthFunction::from_bits(e->table);
}

bool is_builtin(std::string_view name) { return find_builtin(name) != nullptr; }

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kBuiltins) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

}  // namespace fok
