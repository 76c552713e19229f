#include "mod4sum/rational.hpp"

#include <charconv>

namespace mod4sum {

namespace {

std::uint64_t parse_u64(std::string_view digits, const char* what) {
  std::uint64_t value = 0;
  if (digits.empty()) throw std::invalid_argument(std::string(what) + ": missing digits");
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument(std::string(what) + ": not a valid number");
  }
  return value;
}

}  // namespace

SuccessProbability parse_probability(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::uint64_t num = parse_u64(text.substr(0, slash), "probability numerator");
    const std::uint64_t den = parse_u64(text.substr(slash + 1), "probability denominator");
    if (den == 0) throw std::invalid_argument("probability denominator is zero");
    if (num > den) throw std::invalid_argument("probability exceeds 1");
    const std::uint64_t g = std::gcd(num, den);
    return SuccessProbability(num / g, den / g);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) {
      throw std::invalid_argument("decimal probability has too many digits");
    }
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole, "probability");
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac, "probability");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (w > 1 || (w == 1 && f != 0)) throw std::invalid_argument("probability exceeds 1");
    const std::uint64_t num = w * den + f;
    const std::uint64_t g = std::gcd(num == 0 ? den : num, den);
    return SuccessProbability(num / g, den / g);
  }
  const std::uint64_t w = parse_u64(text, "probability");
  if (w > 1) throw std::invalid_argument("probability exceeds 1");
  return SuccessProbability(w, 1);
}

}  // namespace mod4sum
