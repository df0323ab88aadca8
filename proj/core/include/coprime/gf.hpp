#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace coprime {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field GF(p^k).
///
/// Elements are identified with the integers 0..q-1: an element is a degree
/// < k polynomial over GF(p) in the generator z, and its id packs the
/// coefficient vector in base p with the constant term least significant.
/// So 0 and 1 mean what they say, and for k > 1 the element `p` is z itself.
///
/// For k > 1 arithmetic is modulo a fixed irreducible monic modulus, chosen
/// deterministically (see build_field). Fields of order <= 256 precompute
/// full add/mul/inv tables; larger fields compute on the fly.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return k_; }
  std::uint64_t order() const { return q_; }

  /// Modulus coefficients c[0..k], constant term first, c[k] == 1.
  /// Empty for prime fields (k == 1), which need no modulus.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws std::domain_error on 0
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Coefficient vector (length k, entries in [0,p)) of an element id.
  std::vector<std::uint32_t> element_coeffs(std::uint32_t a) const;
  std::uint32_t element_from_coeffs(const std::vector<std::uint32_t>& c) const;

  /// All element ids in canonical enumeration order: 0, 1, ..., q-1.
  /// This order is the single source of truth for every "digit" encoding
  /// elsewhere in the library.
  std::vector<std::uint32_t> elements() const;

  /// Human-readable form, e.g. "z+1" in GF(4), "2" in GF(3).
  std::string element_str(std::uint32_t a) const;

  bool same_field(const Field& other) const;

 private:
  friend FieldPtr build_field(std::uint32_t, std::uint32_t);

  Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  void check(std::uint32_t a) const;
  std::uint32_t mul_generic(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t add_generic(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_generic(std::uint32_t a) const;

  std::uint32_t p_, k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  // Flat q*q tables when q <= 256, else empty.
  std::vector<std::uint16_t> add_table_, mul_table_;
  std::vector<std::uint16_t> neg_table_, inv_table_;
};

/// Construct (or fetch the cached) GF(p^k).
///
/// Throws std::invalid_argument if p is not prime or k == 0, and
/// std::domain_error if p^k exceeds Field::kMaxOrder.
///
/// For k > 1 the modulus is the irreducible monic polynomial of degree k
/// with the lexicographically smallest coefficient vector
/// (c0, c1, ..., c_{k-1}), the constant term compared first — e.g. x^2+x+1
/// for GF(4), x^3+x^2+1 for GF(8). Repeated calls return the same shared
/// instance, so pointer equality identifies a field.
FieldPtr build_field(std::uint32_t p, std::uint32_t k);

/// Factor q as p^k and build that field; throws if q is not a prime power.
FieldPtr field_of_order(std::uint64_t q);

/// An element bundled with its field, with checked operator arithmetic.
/// Mixing elements of different fields throws std::invalid_argument.
class FieldElem {
 public:
  FieldElem(FieldPtr field, std::uint32_t value);

  const FieldPtr& field() const { return field_; }
  std::uint32_t value() const { return value_; }
  std::string str() const { return field_->element_str(value_); }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const;
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

 private:
  void require_same(const FieldElem& o) const;
  FieldPtr field_;
  std::uint32_t value_;
};

}  // namespace coprime
