#include "serialize.hpp"

#include <cstdio>

#include "detsum/error.hpp"

namespace detsum::cli {

namespace {

const Integer kSafeBound = Integer(1) << 53;  // NOLINT(cert-err58-cpp)

[[noreturn]] void schema_fail(std::string_view where, std::string_view what) {
  throw SchemaError(std::string(where) + ": " + std::string(what));
}

const Json& field(const Json& obj, const char* key, std::string_view where) {
  if (!obj.is_object()) schema_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& obj, const char* key, std::string_view where) {
  const Json& value = field(obj, key, where);
  if (!value.is_array()) schema_fail(std::string(where) + "." + key, "expected an array");
  return value;
}

bool is_decimal(std::string_view s) {
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::size_t size_from_json(const Json& j, std::string_view where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_fail(where, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json integer_to_json(const Integer& x) {
  if (abs(x) < kSafeBound) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j, std::string_view where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                  : Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (is_decimal(s)) return Integer(s);
  }
  schema_fail(where, "expected an integer or a decimal string, got " + j.dump());
}

Json ring_to_json(const RingDescriptor& ring) {
  Json j;
  switch (ring.kind()) {
    case RingKind::Integers:
      j["kind"] = "integers";
      break;
    case RingKind::Rationals:
      j["kind"] = "rationals";
      break;
    case RingKind::PrimeField:
      j["kind"] = "prime_field";
      j["p"] = integer_to_json(ring.modulus());
      break;
    case RingKind::ModRing:
      j["kind"] = "mod";
      j["N"] = integer_to_json(ring.modulus());
      break;
    case RingKind::Product: {
      j["kind"] = "product";
      Json parts = Json::array();
      for (const auto& c : ring.components()) parts.push_back(ring_to_json(c));
      j["components"] = std::move(parts);
      break;
    }
    case RingKind::PolyOverZ:
      j["kind"] = "poly";
      j["vars"] = ring.var_count();
      break;
  }
  return j;
}

RingDescriptor ring_from_json(const Json& j) {
  const std::string_view where = "ring";
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) schema_fail("ring.kind", "expected a string");
  const auto& k = kind.get_ref<const std::string&>();
  if (k == "integers") return RingDescriptor::integers();
  if (k == "rationals") return RingDescriptor::rationals();
  if (k == "prime_field") return RingDescriptor::prime_field(integer_from_json(field(j, "p", where), "ring.p"));
  if (k == "mod") return RingDescriptor::mod_ring(integer_from_json(field(j, "N", where), "ring.N"));
  if (k == "product") {
    std::vector<RingDescriptor> parts;
    for (const auto& c : array_field(j, "components", where)) parts.push_back(ring_from_json(c));
    return RingDescriptor::product(std::move(parts));
  }
  if (k == "poly") return RingDescriptor::poly_over_z(size_from_json(field(j, "vars", where), "ring.vars"));
  schema_fail("ring.kind", "unknown kind \"" + k + "\"");
}

Json poly_to_json(const SparsePoly& f) {
  Json terms = Json::array();
  for (const auto& [exps, coeff] : f.terms()) terms.push_back(Json::array({exps, integer_to_json(coeff)}));
  return terms;
}

SparsePoly poly_from_json(const Json& j, std::size_t vars, std::string_view where) {
  if (!j.is_array()) schema_fail(where, "expected an array of [exponents, coefficient] terms");
  SparsePoly f(vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string at = std::string(where) + "[" + std::to_string(t) + "]";
    const Json& term = j[t];
    if (!term.is_array() || term.size() != 2 || !term[0].is_array()) {
      schema_fail(at, "expected [exponents, coefficient]");
    }
    SparsePoly::Exponents exps;
    for (const auto& e : term[0]) {
      const std::size_t v = size_from_json(e, at);
      if (v > UINT32_MAX) schema_fail(at, "exponent too large");
      exps.push_back(static_cast<std::uint32_t>(v));
    }
    f.add_term(exps, integer_from_json(term[1], at));
  }
  return f;
}

Json element_to_json(const RingElement& x) {
  switch (x.ring().kind()) {
    case RingKind::Rationals: {
      const Rational& q = x.rational();
      if (q.get_den() == 1) return integer_to_json(q.get_num());
      return Json(q.get_str());
    }
    case RingKind::Product: {
      Json parts = Json::array();
      for (const auto& c : x.components()) parts.push_back(element_to_json(c));
      return parts;
    }
    case RingKind::PolyOverZ:
      return poly_to_json(x.poly());
    default:
      return integer_to_json(x.integer());
  }
}

RingElement element_from_json(const RingDescriptor& ring, const Json& j, std::string_view where) {
  switch (ring.kind()) {
    case RingKind::Rationals: {
      if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
          const std::string num = s.substr(0, slash);
          const std::string den = s.substr(slash + 1);
          if (!is_decimal(num) || !is_decimal(den)) schema_fail(where, "malformed rational \"" + s + "\"");
          const Integer d(den);
          if (d == 0) schema_fail(where, "zero denominator");
          return ring.rational(Integer(num), d);
        }
      }
      return ring.from_integer(integer_from_json(j, where));
    }
    case RingKind::Product: {
      const auto& parts = ring.components();
      if (!j.is_array() || j.size() != parts.size()) {
        schema_fail(where, "expected an array of " + std::to_string(parts.size()) + " components");
      }
      std::vector<RingElement> out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        out.push_back(element_from_json(parts[i], j[i], std::string(where) + "[" + std::to_string(i) + "]"));
      }
      return ring.tuple(std::move(out));
    }
    case RingKind::PolyOverZ:
      return ring.poly(poly_from_json(j, ring.var_count(), where));
    default:
      return ring.from_integer(integer_from_json(j, where));
  }
}

Json matrix_to_json(const SquareMatrix& a) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < a.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < a.size(); ++c) row.push_back(element_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SquareMatrix matrix_from_json(const RingDescriptor& ring, std::size_t n, const Json& j,
                              std::string_view where) {
  if (!j.is_array() || j.size() != n) schema_fail(where, "expected " + std::to_string(n) + " rows");
  std::vector<RingElement> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row_at = std::string(where) + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != n) schema_fail(row_at, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      entries.push_back(element_from_json(ring, j[r][c], row_at + "[" + std::to_string(c) + "]"));
    }
  }
  return SquareMatrix(ring, n, std::move(entries));
}

Json mask_to_json(const std::optional<SubsetMask>& mask) {
  if (!mask) return Json(nullptr);
  return Json(mask->indices());
}

MatrixDocument load_matrices(const Json& doc) {
  if (!doc.is_object()) schema_fail("document", "expected an object");
  MatrixDocument out;
  out.ring = ring_from_json(field(doc, "ring", "document"));
  out.n = size_from_json(field(doc, "n", "document"), "n");
  if (out.n < 1 || out.n > kMaxEliminationSize) {
    schema_fail("n", "must lie in [1, " + std::to_string(kMaxEliminationSize) + "]");
  }
  const Json& ms = array_field(doc, "matrices", "document");
  if (ms.size() > SubsetMask::kMaxFamily) schema_fail("matrices", "at most 64 matrices");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    out.matrices.push_back(matrix_from_json(out.ring, out.n, ms[i], "matrices[" + std::to_string(i) + "]"));
  }
  if (doc.contains("B")) out.base = matrix_from_json(out.ring, out.n, doc["B"], "B");
  return out;
}

Json matrices_to_json(const MatrixDocument& doc) {
  Json j;
  j["ring"] = ring_to_json(doc.ring);
  j["n"] = doc.n;
  Json ms = Json::array();
  for (const auto& a : doc.matrices) ms.push_back(matrix_to_json(a));
  j["matrices"] = std::move(ms);
  if (doc.base) j["B"] = matrix_to_json(*doc.base);
  return j;
}

SemilocalInstance load_semilocal(const Json& doc) {
  RingDescriptor ring = ring_from_json(field(doc, "ring", "document"));
  const Json& xs = array_field(doc, "elements", "document");
  std::vector<RingElement> elements;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    elements.push_back(element_from_json(ring, xs[i], "elements[" + std::to_string(i) + "]"));
  }
  return SemilocalInstance::make(std::move(ring), std::move(elements));
}

Json semilocal_to_json(const SemilocalInstance& instance) {
  Json j;
  j["ring"] = ring_to_json(instance.ring);
  Json xs = Json::array();
  for (const auto& x : instance.elements) xs.push_back(element_to_json(x));
  j["elements"] = std::move(xs);
  return j;
}

HomogeneousDocument load_homogeneous(const Json& doc) {
  HomogeneousDocument out{ring_from_json(field(doc, "ring", "document")), SparsePoly(0), {}};
  const Json& poly = field(doc, "poly", "document");
  const std::size_t vars = size_from_json(field(poly, "vars", "poly"), "poly.vars");
  out.poly = poly_from_json(array_field(poly, "terms", "poly"), vars, "poly.terms");
  const Json& vs = array_field(doc, "vectors", "document");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string at = "vectors[" + std::to_string(i) + "]";
    if (!vs[i].is_array() || vs[i].size() != vars) {
      schema_fail(at, "expected " + std::to_string(vars) + " coordinates");
    }
    std::vector<RingElement> v;
    for (std::size_t k = 0; k < vars; ++k) {
      v.push_back(element_from_json(out.ring, vs[i][k], at + "[" + std::to_string(k) + "]"));
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

Json homogeneous_to_json(const HomogeneousDocument& doc) {
  Json j;
  j["ring"] = ring_to_json(doc.ring);
  j["poly"] = {{"vars", doc.poly.var_count()}, {"terms", poly_to_json(doc.poly)}};
  Json vs = Json::array();
  for (const auto& v : doc.vectors) {
    Json coords = Json::array();
    for (const auto& x : v) coords.push_back(element_to_json(x));
    vs.push_back(std::move(coords));
  }
  j["vectors"] = std::move(vs);
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detsum::cli
