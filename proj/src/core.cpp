#include "mod4sum/core.hpp"

#include <charconv>
#include <stdexcept>

namespace mod4sum {

namespace {

void check_symbol(InputSymbol s) {
  if (s > 3) {
    throw std::invalid_argument("input symbol out of range [0,3]");
  }
}

void check_parties(int n) {
  if (n < kMinParties) {
    throw std::invalid_argument("need at least 3 parties");
  }
  if (n > kMaxEnumerableParties) {
    throw std::invalid_argument("party count exceeds supported maximum");
  }
}

}  // namespace

bool parity_ok(std::span<const InputSymbol> symbols) {
  unsigned sum = 0;
  for (InputSymbol s : symbols) {
    check_symbol(s);
    sum += s;
  }
  return (sum & 1u) == 0;
}

InputTuple::InputTuple(std::vector<InputSymbol> symbols) : symbols_(std::move(symbols)) {
  check_parties(static_cast<int>(symbols_.size()));
  if (!parity_ok(symbols_)) {
    throw std::invalid_argument("input tuple violates the even-sum promise");
  }
}

int mod4_target(const InputTuple& inputs) {
  unsigned sum = 0;
  for (InputSymbol s : inputs.symbols()) sum += s;
  return static_cast<int>((sum & 3u) >> 1);
}

std::string format_tuple(const InputTuple& inputs) {
  std::string out;
  for (InputSymbol s : inputs.symbols()) {
    if (!out.empty()) out += ',';
    out += static_cast<char>('0' + s);
  }
  return out;
}

InputTuple parse_tuple(std::string_view text) {
  std::vector<InputSymbol> symbols;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view digit = text.substr(pos, comma - pos);
    if (digit.size() != 1 || digit[0] < '0' || digit[0] > '3') {
      throw std::invalid_argument("tuple entries must be single digits 0..3");
    }
    symbols.push_back(static_cast<InputSymbol>(digit[0] - '0'));
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return InputTuple(std::move(symbols));
}

ProtocolTable::ProtocolTable(Arity arity, std::uint8_t packed)
    : arity_(arity), packed_(packed) {
  if (arity_ == Arity::First && packed_ > 0xF) {
    throw std::invalid_argument("first-party table holds only 4 bits");
  }
}

ProtocolTable ProtocolTable::from_string(std::string_view bits) {
  Arity arity;
  if (bits.size() == 4) {
    arity = Arity::First;
  } else if (bits.size() == 8) {
    arity = Arity::Inner;
  } else {
    throw std::invalid_argument("table must be 4 or 8 bits long");
  }
  std::uint8_t packed = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("table may contain only '0' and '1'");
    }
    packed = static_cast<std::uint8_t>((packed << 1) | (c - '0'));
  }
  return ProtocolTable(arity, packed);
}

std::string ProtocolTable::to_string() const {
  std::string out(static_cast<std::size_t>(size()), '0');
  for (int i = 0; i < size(); ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<char>('0' + bit(i));
  }
  return out;
}

ProtocolChain::ProtocolChain(ProtocolTable first, std::vector<ProtocolTable> inners)
    : first_(first), inners_(std::move(inners)) {
  if (first_.arity() != ProtocolTable::Arity::First) {
    throw std::invalid_argument("chain must start with a 4-bit table");
  }
  if (inners_.empty()) {
    throw std::invalid_argument("chain needs at least one inner table (N >= 3)");
  }
  for (const ProtocolTable& t : inners_) {
    if (t.arity() != ProtocolTable::Arity::Inner) {
      throw std::invalid_argument("inner tables must hold 8 bits");
    }
  }
}

MessageBit run_chain(const ProtocolChain& chain, const InputTuple& inputs) {
  if (chain.n_parties() != inputs.n_parties()) {
    throw std::invalid_argument("chain and input tuple disagree on party count");
  }
  MessageBit m = chain.first().bit(inputs.symbol(0));
  for (int j = 0; j < static_cast<int>(chain.inners().size()); ++j) {
    m = chain.inners()[static_cast<std::size_t>(j)].bit(2 * inputs.symbol(j + 1) + m);
  }
  return m;
}

ProtocolChain parse_chain(std::string_view text) {
  std::vector<std::string_view> segments;
  std::size_t pos = 0;
  while (true) {
    const std::size_t bar = std::min(text.find('|', pos), text.size());
    segments.push_back(text.substr(pos, bar - pos));
    if (bar == text.size()) break;
    pos = bar + 1;
  }
  if (segments.size() < 2) {
    throw std::invalid_argument("chain needs at least two '|'-separated tables");
  }
  if (segments[0].size() != 4) {
    throw std::invalid_argument("first table must be 4 bits long");
  }
  ProtocolTable first = ProtocolTable::from_string(segments[0]);
  std::vector<ProtocolTable> inners;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].size() != 8) {
      throw std::invalid_argument("inner tables must be 8 bits long");
    }
    inners.push_back(ProtocolTable::from_string(segments[i]));
  }
  return ProtocolChain(first, std::move(inners));
}

std::string format_chain(const ProtocolChain& chain) {
  std::string out = chain.first().to_string();
  for (const ProtocolTable& t : chain.inners()) {
    out += '|';
    out += t.to_string();
  }
  return out;
}

InputEnumerator::InputEnumerator(int n_parties, std::optional<InputSymbol> fixed_last)
    : n_(n_parties), fixed_last_(fixed_last) {
  check_parties(n_parties);
  if (fixed_last_) check_symbol(*fixed_last_);
  prefix_count_ = std::uint64_t{1} << (2 * (n_ - 1));
}

std::optional<InputTuple> InputEnumerator::next() {
  while (prefix_ < prefix_count_) {
    std::vector<InputSymbol> symbols(static_cast<std::size_t>(n_));
    unsigned prefix_sum = 0;
    for (int i = 0; i < n_ - 1; ++i) {
      const auto digit =
          static_cast<InputSymbol>((prefix_ >> (2 * (n_ - 2 - i))) & 3u);
      symbols[static_cast<std::size_t>(i)] = digit;
      prefix_sum += digit;
    }
    const unsigned parity = prefix_sum & 1u;
    if (fixed_last_) {
      ++prefix_;
      if ((*fixed_last_ & 1u) != parity) continue;
      symbols.back() = *fixed_last_;
      return InputTuple(std::move(symbols));
    }
    // the two symbols matching the prefix parity, in increasing order
    symbols.back() = static_cast<InputSymbol>(parity + 2 * pick_);
    if (++pick_ == 2) {
      pick_ = 0;
      ++prefix_;
    }
    return InputTuple(std::move(symbols));
  }
  return std::nullopt;
}

std::vector<InputTuple> enumerate_inputs(int n_parties,
                                         std::optional<InputSymbol> fixed_last) {
  InputEnumerator it(n_parties, fixed_last);
  std::vector<InputTuple> out;
  while (auto tuple = it.next()) out.push_back(std::move(*tuple));
  return out;
}

}  // namespace mod4sum
