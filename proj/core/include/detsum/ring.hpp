#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "detsum/poly.hpp"

namespace detsum {

enum class RingKind { Integers, Rationals, PrimeField, ModRing, Product, PolyOverZ };

class RingElement;

/// Names one of the supported commutative rings. Cheap to copy; the
/// description itself is immutable and shared.
///
/// Invariants enforced at construction: prime fields carry a prime, modular
/// rings have N >= 2, products are non-empty and flat.
class RingDescriptor {
 public:
  /// The ring of integers.
  RingDescriptor();

  static RingDescriptor integers();
  static RingDescriptor rationals();
  static RingDescriptor prime_field(const Integer& p);
  static RingDescriptor mod_ring(const Integer& n);
  static RingDescriptor product(std::vector<RingDescriptor> components);
  static RingDescriptor poly_over_z(std::size_t var_count);

  RingKind kind() const noexcept;
  /// p for a prime field, N for Z/N, zero otherwise.
  const Integer& modulus() const noexcept;
  /// Flat component list of a product ring; empty for every other kind.
  const std::vector<RingDescriptor>& components() const noexcept;
  std::size_t var_count() const noexcept;

  bool is_field() const;
  /// True for rings known to have exactly one maximal ideal: fields, Z/p^k,
  /// and one-component products of those.
  bool is_local() const;
  /// Rings where exact division is available for fraction-free elimination.
  bool supports_exact_division() const noexcept;
  Integer characteristic() const;

  std::string to_string() const;

  RingElement zero() const;
  RingElement one() const;
  /// Image of k under the unique ring map Z -> R.
  RingElement from_integer(const Integer& k) const;
  RingElement rational(const Integer& num, const Integer& den) const;
  RingElement tuple(std::vector<RingElement> components) const;
  RingElement poly(SparsePoly value) const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b);

 private:
  struct Impl;
  explicit RingDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// A value tagged with the ring it lives in. Residues are kept in [0, N),
/// rationals in lowest terms with positive denominator.
class RingElement {
 public:
  /// Integer zero.
  RingElement();

  const RingDescriptor& ring() const noexcept { return ring_; }

  /// Integer value or residue (Integers, PrimeField, ModRing).
  const Integer& integer() const;
  const Rational& rational() const;
  const std::vector<RingElement>& components() const;
  const SparsePoly& poly() const;

  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  friend bool operator==(const RingElement& a, const RingElement& b);

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);

  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

 private:
  friend class RingDescriptor;
  using Payload = std::variant<Integer, Rational, std::vector<RingElement>, SparsePoly>;

  RingElement(RingDescriptor ring, Payload value)
      : ring_(std::move(ring)), value_(std::move(value)) {}

  RingDescriptor ring_;
  Payload value_;
};

enum class RingOp { Add, Sub, Mul, Neg };

/// Binary ring operation; Neg ignores `b`.
RingElement ring_arith(const RingElement& a, const RingElement& b, RingOp op);

bool is_unit(const RingElement& a);
std::optional<RingElement> try_inverse(const RingElement& a);
RingElement pow(const RingElement& base, std::uint64_t exponent);

/// a / b where b divides a exactly. Only for rings with
/// `supports_exact_division()`; throws UnsupportedAlgorithm otherwise.
RingElement exact_divide(const RingElement& a, const RingElement& b);

/// Evaluates f at `point`, mapping integer coefficients through Z -> R.
/// The ring is taken from the point entries.
RingElement poly_eval(const SparsePoly& f, std::span<const RingElement> point);
/// Same, with the target ring given explicitly (needed when f has no variables).
RingElement poly_eval(const SparsePoly& f, std::span<const RingElement> point,
                      const RingDescriptor& ring);

/// gcd(0, 0) = 0; the result is never negative.
Integer gcd_nonneg(const Integer& a, const Integer& b);
bool is_prime(const Integer& p);
bool is_prime_power(const Integer& n);

}  // namespace detsum
