#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace detsum {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients over a fixed number of variables x0..x{k-1}.
///
/// The term map never stores a zero coefficient, so two equal polynomials
/// always have identical maps and the zero polynomial is the empty map.
class SparsePoly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Integer>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t var_count) : var_count_(var_count) {}

  static SparsePoly constant(std::size_t var_count, const Integer& value);
  static SparsePoly variable(std::size_t var_count, std::size_t index);

  std::size_t var_count() const noexcept { return var_count_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// The value when the polynomial has no non-constant term.
  std::optional<Integer> constant_value() const;
  Integer coefficient(const Exponents& exponents) const;

  /// Adds `coeff * x^exponents`, merging with an existing term.
  void add_term(const Exponents& exponents, const Integer& coeff);
  /// this += scale * other
  void add_scaled(const SparsePoly& other, const Integer& scale);

  SparsePoly& operator+=(const SparsePoly& other);
  SparsePoly& operator-=(const SparsePoly& other);
  SparsePoly& operator*=(const SparsePoly& other);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.var_count_ == b.var_count_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "x0^2 + 2*x0*x1 - 1".
  std::string to_string() const;

 private:
  void check_arity(const SparsePoly& other) const;

  std::size_t var_count_ = 0;
  TermMap terms_;
};

std::uint64_t total_degree(const SparsePoly::Exponents& exponents);

/// Degree d when every term has total degree d. The zero polynomial reports 0.
std::optional<std::uint64_t> is_homogeneous(const SparsePoly& f);

}  // namespace detsum
