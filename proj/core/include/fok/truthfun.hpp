#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fok {

/// Largest arity a TruthFunction table may have.
inline constexpr unsigned kMaxTableArity = 16;

/// Default cap for exhaustive enumeration of truth functions.
inline constexpr unsigned kDefaultEnumerationCap = 4;

/// A fixed-length vector over {0,1}.
///
/// Component 0 is the leftmost one. The vector doubles as a table index:
/// read left to right as a binary number, most significant bit first, so
/// (0,...,0) is index 0 and (1,...,1) is the last index.
class TruthVector {
 public:
  TruthVector() = default;
  TruthVector(std::initializer_list<int> bits);
  explicit TruthVector(const std::vector<int>& bits);

  static TruthVector from_index(std::uint32_t index, unsigned length);
  static TruthVector zeros(unsigned length) { return from_index(0, length); }
  static TruthVector ones(unsigned length);

  unsigned size() const noexcept { return size_; }
  bool operator[](unsigned i) const;
  std::uint32_t index() const noexcept { return bits_; }

  /// "(0,1,1)"; the empty vector prints as "()".
  std::string to_string() const;
  /// Plain bit string, e.g. "011".
  std::string to_bits() const;

  // Lexicographic on equal lengths; shorter vectors order first.
  friend std::strong_ordering operator<=>(const TruthVector& a, const TruthVector& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }
  friend bool operator==(const TruthVector&, const TruthVector&) = default;

 private:
  std::uint32_t bits_ = 0;
  unsigned size_ = 0;
};

/// Componentwise order a ⊑ b.
bool tv_leq(const TruthVector& a, const TruthVector& b);
/// Componentwise minimum.
TruthVector tv_meet(const TruthVector& a, const TruthVector& b);
/// Componentwise maximum.
TruthVector tv_join(const TruthVector& a, const TruthVector& b);

class TruthFunction {
 public:
  TruthFunction() : TruthFunction(0, {false}) {}
  TruthFunction(unsigned arity, std::vector<bool> table);

  /// Builds from a bit string whose length must be a power of two.
  static TruthFunction from_bits(std::string_view bits);
  /// The `code`-th function of the given arity in table order: the table
  /// string read as a binary number (index 0 most significant) equals code.
  static TruthFunction from_code(unsigned arity, std::uint64_t code);

  unsigned arity() const noexcept { return arity_; }
  std::size_t table_size() const noexcept { return table_.size(); }
  bool at(std::uint32_t index) const { return table_.at(index); }
  bool operator()(const TruthVector& input) const;

  std::string table_bits() const;

  /// `{"arity": n, "table": "0110"}`
  std::string to_json() const;
  static TruthFunction from_json(std::string_view text);

  friend bool operator==(const TruthFunction&, const TruthFunction&) = default;

 private:
  unsigned arity_;
  std::vector<bool> table_;
};

struct SupermultiplicativityReport {
  bool holds = true;
  /// Lexicographically least (a, b) with f(a) = f(b) = 1 and f(a ⊓ b) = 0.
  std::optional<std::pair<TruthVector, TruthVector>> witness;
};

SupermultiplicativityReport is_supermultiplicative(const TruthFunction& f);

/// Order preservation: a ⊑ b implies f(a) <= f(b).
bool is_monotonic(const TruthFunction& f);

/// True iff the meet of any n vectors mapped to 1 is mapped to 1.
bool nary_meet_closure(const TruthFunction& f, unsigned n);

/// Input range over all 2^(2^arity) functions of one arity, in table order.
class TruthFunctionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = TruthFunction;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(unsigned arity, std::uint64_t code) : arity_(arity), code_(code) {}

    TruthFunction operator*() const { return TruthFunction::from_code(arity_, code_); }
    iterator& operator++() {
      ++code_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++code_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.code_ == b.code_; }

   private:
    unsigned arity_ = 0;
    std::uint64_t code_ = 0;
  };

  TruthFunctionRange(unsigned arity, std::uint64_t count) : arity_(arity), count_(count) {}

  iterator begin() const { return {arity_, 0}; }
  iterator end() const { return {arity_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  unsigned arity_;
  std::uint64_t count_;
};

/// Throws UsageError if arity exceeds cap.
TruthFunctionRange enumerate_truth_functions(unsigned arity,
                                             unsigned cap = kDefaultEnumerationCap);

/// Standard tables for not, and, or, imp, xor, iff. The Unicode symbols
/// ¬ ∧ ∨ → ⊻ ↔ are accepted as aliases.
TruthFunction builtin(std::string_view name);
bool is_builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

}  // namespace fok
