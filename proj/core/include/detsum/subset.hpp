#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace detsum {

/// A subset S of an index family [m] = {0, ..., m-1}, m <= 64.
class SubsetMask {
 public:
  static constexpr std::size_t kMaxFamily = 64;

  SubsetMask() = default;
  /// Throws MaskOutOfRange if a bit >= m is set or m > 64.
  SubsetMask(std::uint64_t bits, std::size_t family_size);

  static SubsetMask empty(std::size_t family_size) { return {0, family_size}; }
  static SubsetMask full(std::size_t family_size);
  static SubsetMask from_indices(const std::vector<std::size_t>& indices, std::size_t family_size);

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t family_size() const noexcept { return family_size_; }
  std::size_t cardinality() const noexcept;
  bool contains(std::size_t index) const noexcept {
    return index < 64 && ((bits_ >> index) & 1u) != 0;
  }
  bool is_empty() const noexcept { return bits_ == 0; }
  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  /// Search order: increasing cardinality, ties by ascending bit value.
  friend std::strong_ordering search_order(const SubsetMask& a, const SubsetMask& b);

 private:
  std::uint64_t bits_ = 0;
  std::size_t family_size_ = 0;
};

/// Next mask of [m] with the same popcount in ascending order, if any.
std::optional<std::uint64_t> next_same_cardinality(std::uint64_t bits, std::size_t family_size);

/// Visits subsets of [m] with cardinality in [min_card, max_card] in search
/// order. Stops early when `visit` returns false; returns false in that case.
bool for_each_subset_in_order(std::size_t family_size, std::size_t min_card, std::size_t max_card,
                              const std::function<bool(const SubsetMask&)>& visit);

struct ExecutionOptions {
  unsigned threads = 1;
};

/// The first subset in search order satisfying `pred`. With several threads
/// the answer is identical to the sequential one: each cardinality level is
/// split across workers and the smallest hit wins.
std::optional<SubsetMask> first_subset_in_order(
    std::size_t family_size, std::size_t min_card, std::size_t max_card,
    const std::function<bool(const SubsetMask&)>& pred, ExecutionOptions exec = {});

}  // namespace detsum
