#include "detsum/poly.hpp"

#include <numeric>
#include <sstream>

#include "detsum/error.hpp"

namespace detsum {

SparsePoly SparsePoly::constant(std::size_t var_count, const Integer& value) {
  SparsePoly p(var_count);
  p.add_term(Exponents(var_count, 0), value);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t var_count, std::size_t index) {
  if (index >= var_count) {
    throw Error(ErrorCode::ArityMismatch, "variable index " + std::to_string(index) +
                                              " out of range for " + std::to_string(var_count) +
                                              " variables");
  }
  SparsePoly p(var_count);
  Exponents e(var_count, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Integer(1));
  return p;
}

std::optional<Integer> SparsePoly::constant_value() const {
  if (terms_.empty()) return Integer(0);
  if (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0) {
    return terms_.begin()->second;
  }
  return std::nullopt;
}

Integer SparsePoly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Integer(0) : it->second;
}

void SparsePoly::add_term(const Exponents& exponents, const Integer& coeff) {
  if (exponents.size() != var_count_) {
    throw Error(ErrorCode::ArityMismatch, "exponent vector length " +
                                              std::to_string(exponents.size()) + " != " +
                                              std::to_string(var_count_));
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void SparsePoly::add_scaled(const SparsePoly& other, const Integer& scale) {
  check_arity(other);
  if (scale == 0) return;
  for (const auto& [e, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(e);
    it->second += scale * c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  add_scaled(other, Integer(1));
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
  add_scaled(other, Integer(-1));
  return *this;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& other) {
  *this = *this * other;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_arity(b);
  SparsePoly out(a.var_count_);
  SparsePoly::Exponents e(a.var_count_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      auto [it, inserted] = out.terms_.try_emplace(e);
      it->second += ca * cb;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

SparsePoly operator-(const SparsePoly& a) {
  SparsePoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

void SparsePoly::check_arity(const SparsePoly& other) const {
  if (other.var_count_ != var_count_) {
    throw Error(ErrorCode::ArityMismatch, "polynomials over " + std::to_string(var_count_) +
                                              " and " + std::to_string(other.var_count_) +
                                              " variables");
  }
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest exponent vectors first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = total_degree(e) == 0;
    bool wrote = false;
    if (mag != 1 || constant) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (wrote) out << "*";
      out << "x" << v;
      if (e[v] > 1) out << "^" << e[v];
      wrote = true;
    }
  }
  return out.str();
}

std::uint64_t total_degree(const SparsePoly::Exponents& exponents) {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
}

std::optional<std::uint64_t> is_homogeneous(const SparsePoly& f) {
  if (f.is_zero()) return 0;
  std::uint64_t d = total_degree(f.terms().begin()->first);
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) != d) return std::nullopt;
  }
  return d;
}

}  // namespace detsum
