// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemp/bit_state.hpp"

namespace edgemp {

/// Immutable recursive state for symmetric protocols: an atom (bit string or
/// integer), a tuple, or a multiset.
///
/// Every value carries a canonical self-delimiting byte encoding. Multisets
/// keep their elements sorted by that encoding, so two multisets with the
/// same elements compare equal regardless of insertion order, and equality,
/// ordering and hashing all reduce to comparing encodings.
class Value {
 public:
  enum class Kind : std::uint8_t { bits, integer, tuple, multiset };

  /// Integer zero, the unbounded-mode initial state.
  Value();

  static Value bits(BitState b);
  static Value integer(std::int64_t v);
  static Value tuple(std::vector<Value> elements);
  static Value multiset(std::vector<Value> elements);

  Kind kind() const;
  bool is_bits() const { return kind() == Kind::bits; }
  bool is_integer() const { return kind() == Kind::integer; }
  bool is_tuple() const { return kind() == Kind::tuple; }
  bool is_multiset() const { return kind() == Kind::multiset; }

  const BitState& as_bits() const;
  std::int64_t as_integer() const;
  /// Elements of a tuple (in order) or multiset (canonical order).
  std::span<const Value> elements() const;
  const Value& at(std::size_t i) const;
  std::size_t size() const { return elements().size(); }

  /// Numeric reading of an atom: integer value, or a bit string read as an
  /// unsigned integer.
  std::uint64_t as_count() const;

  const std::string& encoding() const;
  /// Size used for memory accounting: the bit width of a bit-string atom,
  /// otherwise eight bits per encoded byte.
  std::size_t size_bits() const;

  nlohmann::json to_json() const;

  friend bool operator==(const Value& a, const Value& b) { return a.encoding() == b.encoding(); }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    return a.encoding().compare(b.encoding()) <=> 0;
  }

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return std::hash<std::string>{}(v.encoding()); }
};

}  // namespace edgemp
