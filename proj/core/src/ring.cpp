#include "detsum/ring.hpp"

#include <algorithm>
#include <sstream>

#include "detsum/error.hpp"

namespace detsum {

struct RingDescriptor::Impl {
  RingKind kind = RingKind::Integers;
  Integer modulus = 0;
  std::vector<RingDescriptor> components;
  std::size_t var_count = 0;
};

namespace {

Integer reduce(const Integer& x, const Integer& n) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

[[noreturn]] void mismatch(const RingElement& a, const RingElement& b) {
  throw Error(ErrorCode::RingMismatch,
              "operands live in " + a.ring().to_string() + " and " + b.ring().to_string());
}

}  // namespace

bool is_prime(const Integer& p) {
  if (p < 2) return false;
  // BPSW plus Miller-Rabin rounds; exact below 2^64.
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

bool is_prime_power(const Integer& n) {
  if (n < 2) return false;
  if (is_prime(n)) return true;
  if (mpz_perfect_power_p(n.get_mpz_t()) == 0) return false;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = 2; k <= bits; ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && is_prime(root)) return true;
  }
  return false;
}

Integer gcd_nonneg(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// ---------------------------------------------------------------------------
// RingDescriptor

RingDescriptor::RingDescriptor() {
  static const auto impl = std::make_shared<const Impl>();
  impl_ = impl;
}

RingDescriptor RingDescriptor::integers() { return RingDescriptor(); }

RingDescriptor RingDescriptor::rationals() {
  static const auto impl = std::make_shared<const Impl>(Impl{RingKind::Rationals, 0, {}, 0});
  return RingDescriptor(impl);
}

RingDescriptor RingDescriptor::prime_field(const Integer& p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidDescriptor, "prime field modulus " + p.get_str() + " is not prime");
  }
  return RingDescriptor(std::make_shared<const Impl>(Impl{RingKind::PrimeField, p, {}, 0}));
}

RingDescriptor RingDescriptor::mod_ring(const Integer& n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidDescriptor, "modulus " + n.get_str() + " must be >= 2");
  }
  return RingDescriptor(std::make_shared<const Impl>(Impl{RingKind::ModRing, n, {}, 0}));
}

RingDescriptor RingDescriptor::product(std::vector<RingDescriptor> components) {
  if (components.empty()) {
    throw Error(ErrorCode::InvalidDescriptor, "product ring needs at least one component");
  }
  std::vector<RingDescriptor> flat;
  for (auto& c : components) {
    if (c.kind() == RingKind::Product) {
      flat.insert(flat.end(), c.components().begin(), c.components().end());
    } else {
      flat.push_back(std::move(c));
    }
  }
  return RingDescriptor(
      std::make_shared<const Impl>(Impl{RingKind::Product, 0, std::move(flat), 0}));
}

RingDescriptor RingDescriptor::poly_over_z(std::size_t var_count) {
  return RingDescriptor(
      std::make_shared<const Impl>(Impl{RingKind::PolyOverZ, 0, {}, var_count}));
}

RingKind RingDescriptor::kind() const noexcept { return impl_->kind; }
const Integer& RingDescriptor::modulus() const noexcept { return impl_->modulus; }
const std::vector<RingDescriptor>& RingDescriptor::components() const noexcept {
  return impl_->components;
}
std::size_t RingDescriptor::var_count() const noexcept { return impl_->var_count; }

bool RingDescriptor::is_field() const {
  switch (kind()) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return true;
    case RingKind::ModRing:
      return is_prime(modulus());
    case RingKind::Product:
      return components().size() == 1 && components().front().is_field();
    default:
      return false;
  }
}

bool RingDescriptor::is_local() const {
  switch (kind()) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return true;
    case RingKind::ModRing:
      return is_prime_power(modulus());
    case RingKind::Product:
      return components().size() == 1 && components().front().is_local();
    default:
      return false;
  }
}

bool RingDescriptor::supports_exact_division() const noexcept {
  auto k = kind();
  return k == RingKind::Integers || k == RingKind::Rationals || k == RingKind::PrimeField;
}

Integer RingDescriptor::characteristic() const {
  switch (kind()) {
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return modulus();
    case RingKind::Product: {
      Integer l = 1;
      for (const auto& c : components()) {
        Integer ch = c.characteristic();
        if (ch == 0) return 0;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ch.get_mpz_t());
      }
      return l;
    }
    default:
      return 0;
  }
}

std::string RingDescriptor::to_string() const {
  switch (kind()) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F_" + modulus().get_str();
    case RingKind::ModRing: return "Z/" + modulus().get_str();
    case RingKind::PolyOverZ: return "Z[" + std::to_string(var_count()) + " vars]";
    case RingKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < components().size(); ++i) {
        if (i) out += " x ";
        out += components()[i].to_string();
      }
      return components().size() == 1 ? "(" + out + ")" : out;
    }
  }
  return "?";
}

bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
  if (a.impl_ == b.impl_) return true;
  return a.kind() == b.kind() && a.modulus() == b.modulus() && a.var_count() == b.var_count() &&
         a.components() == b.components();
}

RingElement RingDescriptor::zero() const { return from_integer(0); }
RingElement RingDescriptor::one() const { return from_integer(1); }

RingElement RingDescriptor::from_integer(const Integer& k) const {
  switch (kind()) {
    case RingKind::Integers:
      return RingElement(*this, k);
    case RingKind::Rationals:
      return RingElement(*this, Rational(k));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return RingElement(*this, reduce(k, modulus()));
    case RingKind::Product: {
      std::vector<RingElement> parts;
      parts.reserve(components().size());
      for (const auto& c : components()) parts.push_back(c.from_integer(k));
      return RingElement(*this, std::move(parts));
    }
    case RingKind::PolyOverZ:
      return RingElement(*this, SparsePoly::constant(var_count(), k));
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown ring kind");
}

RingElement RingDescriptor::rational(const Integer& num, const Integer& den) const {
  if (kind() != RingKind::Rationals) {
    throw Error(ErrorCode::RingMismatch, "rational value requested in " + to_string());
  }
  if (den == 0) throw Error(ErrorCode::InvalidParameters, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return RingElement(*this, std::move(q));
}

RingElement RingDescriptor::tuple(std::vector<RingElement> parts) const {
  if (kind() != RingKind::Product) {
    throw Error(ErrorCode::RingMismatch, "tuple value requested in " + to_string());
  }
  if (parts.size() != components().size()) {
    throw Error(ErrorCode::ArityMismatch, "tuple of arity " + std::to_string(parts.size()) +
                                              " for " + to_string());
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].ring() == components()[i])) {
      throw Error(ErrorCode::RingMismatch, "component " + std::to_string(i) + " lives in " +
                                               parts[i].ring().to_string() + ", expected " +
                                               components()[i].to_string());
    }
  }
  return RingElement(*this, std::move(parts));
}

RingElement RingDescriptor::poly(SparsePoly value) const {
  if (kind() != RingKind::PolyOverZ) {
    throw Error(ErrorCode::RingMismatch, "polynomial value requested in " + to_string());
  }
  if (value.var_count() != var_count()) {
    throw Error(ErrorCode::ArityMismatch, "polynomial over " + std::to_string(value.var_count()) +
                                              " variables in " + to_string());
  }
  return RingElement(*this, std::move(value));
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement() : value_(Integer(0)) {}

const Integer& RingElement::integer() const {
  if (auto* v = std::get_if<Integer>(&value_)) return *v;
  throw Error(ErrorCode::RingMismatch, "no integer payload in " + ring_.to_string());
}

const Rational& RingElement::rational() const {
  if (auto* v = std::get_if<Rational>(&value_)) return *v;
  throw Error(ErrorCode::RingMismatch, "no rational payload in " + ring_.to_string());
}

const std::vector<RingElement>& RingElement::components() const {
  if (auto* v = std::get_if<std::vector<RingElement>>(&value_)) return *v;
  throw Error(ErrorCode::RingMismatch, "no tuple payload in " + ring_.to_string());
}

const SparsePoly& RingElement::poly() const {
  if (auto* v = std::get_if<SparsePoly>(&value_)) return *v;
  throw Error(ErrorCode::RingMismatch, "no polynomial payload in " + ring_.to_string());
}

bool RingElement::is_zero() const {
  switch (ring_.kind()) {
    case RingKind::Rationals: return rational() == 0;
    case RingKind::Product:
      return std::all_of(components().begin(), components().end(),
                         [](const RingElement& c) { return c.is_zero(); });
    case RingKind::PolyOverZ: return poly().is_zero();
    default: return integer() == 0;
  }
}

bool RingElement::is_one() const { return *this == ring_.one(); }

std::string RingElement::to_string() const {
  switch (ring_.kind()) {
    case RingKind::Rationals: return rational().get_str();
    case RingKind::PolyOverZ: return poly().to_string();
    case RingKind::Product: {
      std::string out = "(";
      for (std::size_t i = 0; i < components().size(); ++i) {
        if (i) out += ", ";
        out += components()[i].to_string();
      }
      return out + ")";
    }
    default: return integer().get_str();
  }
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.ring_ == b.ring_ && a.value_ == b.value_;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  return ring_arith(a, b, RingOp::Add);
}
RingElement operator-(const RingElement& a, const RingElement& b) {
  return ring_arith(a, b, RingOp::Sub);
}
RingElement operator*(const RingElement& a, const RingElement& b) {
  return ring_arith(a, b, RingOp::Mul);
}
RingElement operator-(const RingElement& a) { return ring_arith(a, a, RingOp::Neg); }

RingElement ring_arith(const RingElement& a, const RingElement& b, RingOp op) {
  if (op != RingOp::Neg && !(a.ring() == b.ring())) mismatch(a, b);
  const RingDescriptor& ring = a.ring();
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing: {
      const Integer& x = a.integer();
      Integer r;
      switch (op) {
        case RingOp::Add: r = x + b.integer(); break;
        case RingOp::Sub: r = x - b.integer(); break;
        case RingOp::Mul: r = x * b.integer(); break;
        case RingOp::Neg: r = -x; break;
      }
      return ring.from_integer(r);
    }
    case RingKind::Rationals: {
      const Rational& x = a.rational();
      Rational r;
      switch (op) {
        case RingOp::Add: r = x + b.rational(); break;
        case RingOp::Sub: r = x - b.rational(); break;
        case RingOp::Mul: r = x * b.rational(); break;
        case RingOp::Neg: r = -x; break;
      }
      return ring.rational(r.get_num(), r.get_den());
    }
    case RingKind::Product: {
      const auto& xs = a.components();
      std::vector<RingElement> parts;
      parts.reserve(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        parts.push_back(ring_arith(xs[i], op == RingOp::Neg ? xs[i] : b.components()[i], op));
      }
      return ring.tuple(std::move(parts));
    }
    case RingKind::PolyOverZ: {
      switch (op) {
        case RingOp::Add: return ring.poly(a.poly() + b.poly());
        case RingOp::Sub: return ring.poly(a.poly() - b.poly());
        case RingOp::Mul: return ring.poly(a.poly() * b.poly());
        case RingOp::Neg: return ring.poly(-a.poly());
      }
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown ring kind");
}

bool is_unit(const RingElement& a) {
  switch (a.ring().kind()) {
    case RingKind::Integers: return abs(a.integer()) == 1;
    case RingKind::Rationals: return a.rational() != 0;
    case RingKind::PrimeField: return a.integer() != 0;
    case RingKind::ModRing: return gcd_nonneg(a.integer(), a.ring().modulus()) == 1;
    case RingKind::Product:
      return std::all_of(a.components().begin(), a.components().end(),
                         [](const RingElement& c) { return is_unit(c); });
    case RingKind::PolyOverZ: {
      auto c = a.poly().constant_value();
      return c && abs(*c) == 1;
    }
  }
  return false;
}

std::optional<RingElement> try_inverse(const RingElement& a) {
  const RingDescriptor& ring = a.ring();
  if (!is_unit(a)) return std::nullopt;
  switch (ring.kind()) {
    case RingKind::Integers:
      return a;
    case RingKind::Rationals: {
      const Rational& q = a.rational();
      return ring.rational(q.get_den(), q.get_num());
    }
    case RingKind::PrimeField:
    case RingKind::ModRing: {
      Integer inv;
      mpz_invert(inv.get_mpz_t(), a.integer().get_mpz_t(), ring.modulus().get_mpz_t());
      return ring.from_integer(inv);
    }
    case RingKind::Product: {
      std::vector<RingElement> parts;
      for (const auto& c : a.components()) parts.push_back(*try_inverse(c));
      return ring.tuple(std::move(parts));
    }
    case RingKind::PolyOverZ:
      return a;
  }
  return std::nullopt;
}

RingElement pow(const RingElement& base, std::uint64_t exponent) {
  RingElement result = base.ring().one();
  RingElement square = base;
  while (exponent) {
    if (exponent & 1) result *= square;
    exponent >>= 1;
    if (exponent) square *= square;
  }
  return result;
}

RingElement exact_divide(const RingElement& a, const RingElement& b) {
  if (!(a.ring() == b.ring())) mismatch(a, b);
  const RingDescriptor& ring = a.ring();
  if (b.is_zero()) throw Error(ErrorCode::InvalidParameters, "division by zero");
  switch (ring.kind()) {
    case RingKind::Integers: {
      Integer q;
      mpz_divexact(q.get_mpz_t(), a.integer().get_mpz_t(), b.integer().get_mpz_t());
      return ring.from_integer(q);
    }
    case RingKind::Rationals: {
      Rational q = a.rational() / b.rational();
      return ring.rational(q.get_num(), q.get_den());
    }
    case RingKind::PrimeField:
      return a * *try_inverse(b);
    default:
      throw Error(ErrorCode::UnsupportedAlgorithm, "exact division in " + ring.to_string());
  }
}

RingElement poly_eval(const SparsePoly& f, std::span<const RingElement> point) {
  if (point.empty()) {
    if (f.var_count() != 0) {
      throw Error(ErrorCode::ArityMismatch, "empty point for polynomial in " +
                                                std::to_string(f.var_count()) + " variables");
    }
    return poly_eval(f, point, RingDescriptor::integers());
  }
  return poly_eval(f, point, point.front().ring());
}

RingElement poly_eval(const SparsePoly& f, std::span<const RingElement> point,
                      const RingDescriptor& ring) {
  if (point.size() != f.var_count()) {
    throw Error(ErrorCode::ArityMismatch, "point of length " + std::to_string(point.size()) +
                                              " for " + std::to_string(f.var_count()) +
                                              " variables");
  }
  for (const auto& p : point) {
    if (!(p.ring() == ring)) {
      throw Error(ErrorCode::RingMismatch,
                  "point entry in " + p.ring().to_string() + ", expected " + ring.to_string());
    }
  }
  // Powers are cached per variable since many terms share them.
  std::vector<std::vector<RingElement>> powers(point.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const RingElement& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(ring.one());
    while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
    return cache[e];
  };
  RingElement sum = ring.zero();
  for (const auto& [exps, coeff] : f.terms()) {
    RingElement term = ring.from_integer(coeff);
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v]) term *= power(v, exps[v]);
    }
    sum += term;
  }
  return sum;
}

}  // namespace detsum
