// SPDX-License-Identifier: Apache-2.0
#include "edgemp/bit_state.hpp"

#include "edgemp/errors.hpp"

namespace edgemp {

BitState BitState::from_uint(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0)
    throw MemoryBudgetViolation("value " + std::to_string(value) + " does not fit in " +
                                std::to_string(width) + " bits");
  BitState s(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) s.bits_[i] = (value >> i) & 1U;
  return s;
}

BitState BitState::from_hex(std::string_view hex, std::size_t width) {
  if (hex.size() != (width + 3) / 4) throw InvalidParameter("hex length does not match width");
  BitState s(width);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[k];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
    else throw InvalidParameter("bad hex digit");
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + b;
      const bool bit = (nibble >> b) & 1U;
      if (i < width) s.bits_[i] = bit;
      else if (bit) throw InvalidParameter("hex sets bits beyond width");
    }
  }
  return s;
}

std::uint64_t BitState::read_uint(std::size_t offset, std::size_t width) const {
  if (width > 64) throw InvalidParameter("read_uint supports at most 64 bits");
  if (offset + width > size()) throw InvalidParameter("bit range out of bounds");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i)
    if (bits_[offset + i]) v |= std::uint64_t{1} << i;
  return v;
}

void BitState::write_uint(std::size_t offset, std::size_t width, std::uint64_t value) {
  write(offset, from_uint(value, width));
}

BitState BitState::slice(std::size_t offset, std::size_t width) const {
  if (offset + width > size()) throw InvalidParameter("bit range out of bounds");
  BitState s(width);
  for (std::size_t i = 0; i < width; ++i) s.bits_[i] = bits_[offset + i];
  return s;
}

void BitState::write(std::size_t offset, const BitState& bits) {
  if (offset + bits.size() > size()) throw InvalidParameter("bit range out of bounds");
  for (std::size_t i = 0; i < bits.size(); ++i) bits_[offset + i] = bits.bits_[i];
}

bool BitState::any() const {
  for (bool b : bits_)
    if (b) return true;
  return false;
}

std::string BitState::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t k = 0; 4 * k < size(); ++k) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4 && 4 * k + b < size(); ++b)
      if (bits_[4 * k + b]) nibble |= 1U << b;
    out.push_back(digits[nibble]);
  }
  return out;
}

std::size_t bits_for(std::uint64_t max_value) {
  std::size_t bits = 1;
  while (bits < 64 && (max_value >> bits) != 0) ++bits;
  return bits;
}

}  // namespace edgemp
