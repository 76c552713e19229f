#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mod4sum {

// A party's two-bit input symbol, 0..3.
using InputSymbol = std::uint8_t;

using MessageBit = std::uint8_t;

inline constexpr int kMinParties = 3;
// Input enumeration walks 4^(N-1) prefixes in a 64-bit counter.
inline constexpr int kMaxEnumerableParties = 31;

bool parity_ok(std::span<const InputSymbol> symbols);

// N symbols whose sum is even. The promise is enforced at construction,
// so a live tuple always satisfies it.
class InputTuple {
 public:
  explicit InputTuple(std::vector<InputSymbol> symbols);

  int n_parties() const { return static_cast<int>(symbols_.size()); }
  std::span<const InputSymbol> symbols() const { return symbols_; }
  InputSymbol symbol(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  InputSymbol last() const { return symbols_.back(); }

  friend bool operator==(const InputTuple&, const InputTuple&) = default;

 private:
  std::vector<InputSymbol> symbols_;
};

// F = ((sum x_i) mod 4) / 2, which the promise keeps in {0, 1}.
int mod4_target(const InputTuple& inputs);

std::string format_tuple(const InputTuple& inputs);      // "1,1,2"
InputTuple parse_tuple(std::string_view text);

// Per-party message lookup table. The first party keys on her symbol alone
// (4 entries); inner parties key on (symbol, received bit) packed as
// 2*x + m (8 entries). Entry n is character n of the bit string, counted
// from the left; as an integer the string is read big-endian.
class ProtocolTable {
 public:
  enum class Arity { First, Inner };

  ProtocolTable(Arity arity, std::uint8_t packed);
  static ProtocolTable from_string(std::string_view bits);

  Arity arity() const { return arity_; }
  int size() const { return arity_ == Arity::First ? 4 : 8; }
  std::uint8_t packed() const { return packed_; }

  MessageBit bit(int index) const {
    return static_cast<MessageBit>((packed_ >> (size() - 1 - index)) & 1u);
  }

  std::string to_string() const;

  friend bool operator==(const ProtocolTable&, const ProtocolTable&) = default;

 private:
  Arity arity_;
  std::uint8_t packed_;
};

// The (N-1)-tuple of tables defining a deterministic sequential protocol:
// one First table for party 1 and N-2 Inner tables for parties 2..N-1.
class ProtocolChain {
 public:
  ProtocolChain(ProtocolTable first, std::vector<ProtocolTable> inners);

  int n_parties() const { return static_cast<int>(inners_.size()) + 2; }
  const ProtocolTable& first() const { return first_; }
  std::span<const ProtocolTable> inners() const { return inners_; }

  friend bool operator==(const ProtocolChain&, const ProtocolChain&) = default;

 private:
  ProtocolTable first_;
  std::vector<ProtocolTable> inners_;
};

// Sequential relay: m_1 = first[x_1], m_j = inner_j[2*x_j + m_{j-1}],
// returns m_{N-1}. The last party's symbol is never read here.
MessageBit run_chain(const ProtocolChain& chain, const InputTuple& inputs);

// '|'-separated bit strings, first of length 4, the rest of length 8.
ProtocolChain parse_chain(std::string_view text);
std::string format_chain(const ProtocolChain& chain);

// Streams every promise-satisfying tuple exactly once, in lexicographic
// order: 4^N/2 tuples, or 4^(N-1)/2 when the last symbol is fixed.
class InputEnumerator {
 public:
  explicit InputEnumerator(int n_parties,
                           std::optional<InputSymbol> fixed_last = std::nullopt);

  std::optional<InputTuple> next();

 private:
  int n_;
  std::optional<InputSymbol> fixed_last_;
  std::uint64_t prefix_ = 0;
  std::uint64_t prefix_count_;
  int pick_ = 0;
};

std::vector<InputTuple> enumerate_inputs(
    int n_parties, std::optional<InputSymbol> fixed_last = std::nullopt);

}  // namespace mod4sum
