// SPDX-License-Identifier: Apache-2.0
#include "edgemp/value.hpp"

#include <algorithm>

#include "edgemp/errors.hpp"

namespace edgemp {

struct Value::Node {
  Kind kind = Kind::integer;
  BitState bits;
  std::int64_t integer = 0;
  std::vector<Value> elements;
  std::string encoding;
};

namespace {

// Tags double as a type order inside multisets: bits < integer < tuple < multiset.
constexpr char kTagBits = 'b';
constexpr char kTagInteger = 'i';
constexpr char kTagTuple = 't';
constexpr char kTagMultiset = 'm';

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

// Big-endian fixed width keeps byte order consistent with numeric order
// for lengths and integers inside sorted multisets.
void put_u64_be(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
}

}  // namespace

Value::Value() : Value(integer(0)) {}

Value Value::bits(BitState b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::bits;
  node->encoding.push_back(kTagBits);
  put_u64_be(node->encoding, b.size());
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) byte |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    if (i % 8 == 7) {
      node->encoding.push_back(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (b.size() % 8 != 0) node->encoding.push_back(static_cast<char>(byte));
  node->bits = std::move(b);
  return Value(std::move(node));
}

Value Value::integer(std::int64_t v) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::integer;
  node->integer = v;
  node->encoding.push_back(kTagInteger);
  // Flip the sign bit so unsigned byte order matches signed numeric order.
  put_u64_be(node->encoding, static_cast<std::uint64_t>(v) ^ 0x8000000000000000ULL);
  return Value(std::move(node));
}

Value Value::tuple(std::vector<Value> elements) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::tuple;
  node->encoding.push_back(kTagTuple);
  put_varint(node->encoding, elements.size());
  for (const auto& e : elements) node->encoding += e.encoding();
  node->elements = std::move(elements);
  return Value(std::move(node));
}

Value Value::multiset(std::vector<Value> elements) {
  std::sort(elements.begin(), elements.end());
  auto node = std::make_shared<Node>();
  node->kind = Kind::multiset;
  node->encoding.push_back(kTagMultiset);
  put_varint(node->encoding, elements.size());
  for (const auto& e : elements) node->encoding += e.encoding();
  node->elements = std::move(elements);
  return Value(std::move(node));
}

Value::Kind Value::kind() const { return node_->kind; }

const BitState& Value::as_bits() const {
  if (!is_bits()) throw InvalidProtocol("value is not a bit string");
  return node_->bits;
}

std::int64_t Value::as_integer() const {
  if (!is_integer()) throw InvalidProtocol("value is not an integer");
  return node_->integer;
}

std::span<const Value> Value::elements() const {
  if (!is_tuple() && !is_multiset()) throw InvalidProtocol("value is not a tuple or multiset");
  return node_->elements;
}

const Value& Value::at(std::size_t i) const {
  auto el = elements();
  if (i >= el.size()) throw InvalidProtocol("tuple index out of range");
  return el[i];
}

std::uint64_t Value::as_count() const {
  if (is_bits()) return node_->bits.to_uint();
  if (is_integer()) {
    if (node_->integer < 0) throw InvalidProtocol("negative count");
    return static_cast<std::uint64_t>(node_->integer);
  }
  throw InvalidProtocol("value is not an atom");
}

const std::string& Value::encoding() const { return node_->encoding; }

std::size_t Value::size_bits() const {
  if (is_bits()) return node_->bits.size();
  return 8 * node_->encoding.size();
}

nlohmann::json Value::to_json() const {
  switch (kind()) {
    case Kind::bits:
      return {{"bits", node_->bits.to_hex()}, {"width", node_->bits.size()}};
    case Kind::integer:
      return node_->integer;
    case Kind::tuple:
    case Kind::multiset: {
      nlohmann::json items = nlohmann::json::array();
      for (const auto& e : node_->elements) items.push_back(e.to_json());
      return {{is_tuple() ? "tuple" : "multiset", std::move(items)}};
    }
  }
  return nullptr;
}

}  // namespace edgemp
