// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace edgemp {

/// Fixed-width bit string, the state of one processor in a memory-bounded
/// protocol. Bit 0 is the "first bit" read as a node's output.
class BitState {
 public:
  BitState() = default;
  explicit BitState(std::size_t width) : bits_(width, false) {}

  static BitState from_uint(std::uint64_t value, std::size_t width);
  static BitState from_hex(std::string_view hex, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_.at(i); }
  void set(std::size_t i, bool value) { bits_.at(i) = value; }

  /// Reads `width` bits starting at `offset` as an unsigned integer, bit
  /// `offset` least significant.
  std::uint64_t read_uint(std::size_t offset, std::size_t width) const;
  void write_uint(std::size_t offset, std::size_t width, std::uint64_t value);
  std::uint64_t to_uint() const { return read_uint(0, size()); }

  BitState slice(std::size_t offset, std::size_t width) const;
  void write(std::size_t offset, const BitState& bits);

  bool any() const;

  /// Hex dump, nibble k holding bits 4k..4k+3 with bit 4k least significant;
  /// nibble 0 is written first.
  std::string to_hex() const;

  friend bool operator==(const BitState&, const BitState&) = default;
  friend auto operator<=>(const BitState& a, const BitState& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<bool> bits_;
};

/// Bits needed to store every integer in [0, max_value]; at least 1.
std::size_t bits_for(std::uint64_t max_value);

}  // namespace edgemp
