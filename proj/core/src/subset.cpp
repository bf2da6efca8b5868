#include "detsum/subset.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <limits>
#include <thread>

#include "detsum/error.hpp"

namespace detsum {

namespace {

std::uint64_t low_bits(std::size_t count) {
  return count >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << count) - 1;
}

void check_family(std::size_t family_size) {
  if (family_size > SubsetMask::kMaxFamily) {
    throw Error(ErrorCode::MaskOutOfRange,
                "family size " + std::to_string(family_size) + " exceeds 64");
  }
}

}  // namespace

SubsetMask::SubsetMask(std::uint64_t bits, std::size_t family_size)
    : bits_(bits), family_size_(family_size) {
  check_family(family_size);
  if ((bits & ~low_bits(family_size)) != 0) {
    throw Error(ErrorCode::MaskOutOfRange, "mask has bits beyond family size " +
                                               std::to_string(family_size));
  }
}

SubsetMask SubsetMask::full(std::size_t family_size) {
  check_family(family_size);
  return {low_bits(family_size), family_size};
}

SubsetMask SubsetMask::from_indices(const std::vector<std::size_t>& indices,
                                    std::size_t family_size) {
  check_family(family_size);
  std::uint64_t bits = 0;
  for (auto i : indices) {
    if (i >= family_size) {
      throw Error(ErrorCode::MaskOutOfRange,
                  "index " + std::to_string(i) + " >= family size " + std::to_string(family_size));
    }
    bits |= std::uint64_t{1} << i;
  }
  return {bits, family_size};
}

std::size_t SubsetMask::cardinality() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<std::size_t> SubsetMask::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

std::string SubsetMask::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto i : indices()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::strong_ordering search_order(const SubsetMask& a, const SubsetMask& b) {
  if (auto c = a.cardinality() <=> b.cardinality(); c != 0) return c;
  return a.bits() <=> b.bits();
}

std::optional<std::uint64_t> next_same_cardinality(std::uint64_t bits, std::size_t family_size) {
  if (bits == 0) return std::nullopt;
  // Gosper's hack.
  const std::uint64_t lowest = bits & (~bits + 1);
  const std::uint64_t ripple = bits + lowest;
  if (ripple == 0) return std::nullopt;
  const std::uint64_t next = (((ripple ^ bits) >> 2) / lowest) | ripple;
  if ((next & ~low_bits(family_size)) != 0) return std::nullopt;
  return next;
}

bool for_each_subset_in_order(std::size_t family_size, std::size_t min_card, std::size_t max_card,
                              const std::function<bool(const SubsetMask&)>& visit) {
  check_family(family_size);
  max_card = std::min(max_card, family_size);
  for (std::size_t k = min_card; k <= max_card; ++k) {
    std::optional<std::uint64_t> bits = low_bits(k);
    if (k == 0) {
      if (!visit(SubsetMask(0, family_size))) return false;
      continue;
    }
    for (; bits; bits = next_same_cardinality(*bits, family_size)) {
      if (!visit(SubsetMask(*bits, family_size))) return false;
    }
  }
  return true;
}

std::optional<SubsetMask> first_subset_in_order(
    std::size_t family_size, std::size_t min_card, std::size_t max_card,
    const std::function<bool(const SubsetMask&)>& pred, ExecutionOptions exec) {
  check_family(family_size);
  if (exec.threads <= 1) {
    std::optional<SubsetMask> found;
    for_each_subset_in_order(family_size, min_card, max_card, [&](const SubsetMask& s) {
      if (pred(s)) {
        found = s;
        return false;
      }
      return true;
    });
    return found;
  }

  max_card = std::min(max_card, family_size);
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t k = min_card; k <= max_card; ++k) {
    if (k == 0) {
      SubsetMask e(0, family_size);
      if (pred(e)) return e;
      continue;
    }
    // A full 64-element mask collides with kNone; the single full subset is
    // handled sequentially.
    if (k == 64) {
      SubsetMask f = SubsetMask::full(family_size);
      if (pred(f)) return f;
      continue;
    }
    std::atomic<std::uint64_t> best{kNone};
    std::vector<std::exception_ptr> failures(exec.threads);
    std::vector<std::thread> workers;
    const unsigned count = exec.threads;
    for (unsigned t = 0; t < count; ++t) {
      workers.emplace_back([&, t] {
        try {
          std::optional<std::uint64_t> bits = low_bits(k);
          std::uint64_t position = 0;
          for (; bits; bits = next_same_cardinality(*bits, family_size), ++position) {
            if (*bits >= best.load(std::memory_order_relaxed)) return;
            if (position % count != t) continue;
            if (pred(SubsetMask(*bits, family_size))) {
              std::uint64_t current = best.load();
              while (*bits < current && !best.compare_exchange_weak(current, *bits)) {
              }
              return;
            }
          }
        } catch (...) {
          failures[t] = std::current_exception();
          best.store(0);
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    if (best.load() != kNone) return SubsetMask(best.load(), family_size);
  }
  return std::nullopt;
}

}  // namespace detsum
