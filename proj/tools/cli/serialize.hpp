#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "detsum/matrix.hpp"
#include "detsum/ring.hpp"
#include "detsum/search.hpp"
#include "detsum/subset.hpp"

namespace detsum::cli {

using Json = nlohmann::ordered_json;

/// Input that does not match the expected document shape.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; malformed input is reported with its byte offset.
Json parse_document(std::string_view text);

/// Decimal string when |x| >= 2^53, plain number otherwise.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j, std::string_view where);

Json ring_to_json(const RingDescriptor& ring);
RingDescriptor ring_from_json(const Json& j);

Json element_to_json(const RingElement& x);
RingElement element_from_json(const RingDescriptor& ring, const Json& j, std::string_view where);

Json matrix_to_json(const SquareMatrix& a);
SquareMatrix matrix_from_json(const RingDescriptor& ring, std::size_t n, const Json& j,
                              std::string_view where);

Json mask_to_json(const std::optional<SubsetMask>& mask);

/// {"ring", "n", "matrices"} plus an optional base matrix "B".
struct MatrixDocument {
  RingDescriptor ring;
  std::size_t n = 0;
  std::vector<SquareMatrix> matrices;
  std::optional<SquareMatrix> base;
};

MatrixDocument load_matrices(const Json& doc);
Json matrices_to_json(const MatrixDocument& doc);

/// {"ring", "elements"} over a product of prime fields.
SemilocalInstance load_semilocal(const Json& doc);
Json semilocal_to_json(const SemilocalInstance& instance);

/// {"ring", "poly": {"vars", "terms": [[exponents, coeff], ...]}, "vectors"}.
struct HomogeneousDocument {
  RingDescriptor ring;
  SparsePoly poly;
  std::vector<std::vector<RingElement>> vectors;
};

HomogeneousDocument load_homogeneous(const Json& doc);
Json homogeneous_to_json(const HomogeneousDocument& doc);

Json poly_to_json(const SparsePoly& f);
SparsePoly poly_from_json(const Json& j, std::size_t vars, std::string_view where);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace detsum::cli
