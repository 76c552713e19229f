#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mod4sum {

// Exact success probability stored as a count pair. Comparisons are
// cross-multiplications in 128-bit, so an argmax over 2^28 chains cannot
// depend on floating-point rounding.
struct SuccessProbability {
  std::uint64_t correct = 0;
  std::uint64_t total = 1;

  SuccessProbability() = default;
  SuccessProbability(std::uint64_t correct_count, std::uint64_t total_count)
      : correct(correct_count), total(total_count) {
    if (total == 0) {
      throw std::invalid_argument("SuccessProbability: total must be positive");
    }
    if (correct > total) {
      throw std::invalid_argument("SuccessProbability: correct exceeds total");
    }
  }

  double approx() const {
    return static_cast<double>(correct) / static_cast<double>(total);
  }

  // Reduced numerator/denominator (counts are kept as stored).
  std::uint64_t num() const { return correct / std::gcd(correct, total); }
  std::uint64_t den() const { return total / std::gcd(correct, total); }

  friend std::weak_ordering operator<=>(const SuccessProbability& a,
                                        const SuccessProbability& b) {
    const auto lhs = static_cast<unsigned __int128>(a.correct) * b.total;
    const auto rhs = static_cast<unsigned __int128>(b.correct) * a.total;
    if (lhs < rhs) return std::weak_ordering::less;
    if (lhs > rhs) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  friend bool operator==(const SuccessProbability& a, const SuccessProbability& b) {
    return (a <=> b) == std::weak_ordering::equivalent;
  }
};

inline std::string to_fraction_string(const SuccessProbability& p) {
  return std::to_string(p.num()) + "/" + std::to_string(p.den());
}

// Accepts "5/8", "0.625" and "1". Decimal forms become an exact
// power-of-ten ratio before reduction, so nothing is rounded.
SuccessProbability parse_probability(std::string_view text);

}  // namespace mod4sum
