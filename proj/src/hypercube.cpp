#include "montest/hypercube.hpp"

#include <array>
#include <bit>
#include <mutex>

#include "montest/errors.hpp"

namespace montest {

namespace {

// Positions whose bit j-1 is zero, for in-word directions j = 1..6.
constexpr std::array<std::uint64_t, 6> kLowerMask = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::uint64_t valid_bits(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << n)) - 1;
}

void require_same_dimension(int a, int b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

struct EdgeCounts {
  std::size_t up = 0;    // 01-edges
  std::size_t down = 0;  // 10-edges
};

// Bit-parallel count of 01- and 10-edges. With stop_on_violation, returns as
// soon as one 10-edge is seen.
EdgeCounts count_edges(const BooleanFunction& f, bool stop_on_violation) {
  EdgeCounts counts;
  const int n = f.dimension();
  const auto& words = f.words();
  const std::uint64_t valid = valid_bits(n);
  const int in_word = n < 6 ? n : 6;
  for (const std::uint64_t w : words) {
    for (int j = 0; j < in_word; ++j) {
      const std::uint64_t mask = kLowerMask[j] & valid;
      const std::uint64_t lower = w & mask;
      const std::uint64_t upper = (w >> (1u << j)) & mask;
      const auto down = static_cast<std::size_t>(std::popcount(lower & ~upper));
      counts.down += down;
      if (stop_on_violation && down != 0) return counts;
      counts.up += static_cast<std::size_t>(std::popcount(upper & ~lower));
    }
  }
  for (int j = 7; j <= n; ++j) {
    const std::size_t step = std::size_t{1} << (j - 7);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if ((i & step) != 0) continue;
      const std::uint64_t lower = words[i];
      const std::uint64_t upper = words[i | step];
      const auto down = static_cast<std::size_t>(std::popcount(lower & ~upper));
      counts.down += down;
      if (stop_on_violation && down != 0) return counts;
      counts.up += static_cast<std::size_t>(std::popcount(upper & ~lower));
    }
  }
  return counts;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void require_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw UnsupportedSize("dimension must lie in [1, " + std::to_string(kMaxDimension) +
                          "], got " + std::to_string(n));
  }
}

Point::Point(int n, std::uint32_t index) : n_(n), index_(index) {
  require_dimension(n);
  if (index >= (std::uint32_t{1} << n)) {
    throw InvalidInput("point index " + std::to_string(index) + " out of range for n = " +
                       std::to_string(n));
  }
}

Point Point::flipped(int j) const {
  if (j < 1 || j > n_) throw InvalidInput("direction out of range");
  return Point(n_, index_ ^ (std::uint32_t{1} << (j - 1)));
}

bool precedes(const Point& x, const Point& y) {
  require_same_dimension(x.dimension(), y.dimension());
  return (x.index() & y.index()) == x.index();
}

HypercubeEdge make_edge(const Point& lower, int direction) {
  if (direction < 1 || direction > lower.dimension() || lower.coordinate(direction)) {
    throw InvalidInput("edge direction must point upward from the lower endpoint");
  }
  return HypercubeEdge{lower, lower.flipped(direction), direction};
}

BooleanFunction::BooleanFunction(int n) : n_(n) {
  require_dimension(n);
  words_.assign(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0);
}

BooleanFunction BooleanFunction::from_word(int n, std::uint64_t bits) {
  if (n > 6) throw UnsupportedSize("from_word needs n <= 6");
  BooleanFunction f(n);
  if ((bits & ~valid_bits(n)) != 0) throw InvalidInput("table bits beyond 2^n");
  f.words_[0] = bits;
  return f;
}

BooleanFunction BooleanFunction::from_table(int n, const std::vector<bool>& table) {
  BooleanFunction f(n);
  if (table.size() != f.size()) {
    throw InvalidInput("truth table must have exactly 2^n entries");
  }
  for (std::uint32_t i = 0; i < table.size(); ++i) f.set(i, table[i]);
  return f;
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
  BooleanFunction f(n);
  if (value) {
    for (auto& w : f.words_) w = ~std::uint64_t{0};
    f.words_[0] &= valid_bits(n);
  }
  return f;
}

BooleanFunction BooleanFunction::dictator(int n, int j) {
  BooleanFunction f(n);
  if (j < 1 || j > n) throw InvalidInput("dictator coordinate out of range");
  for (std::uint32_t i = 0; i < f.size(); ++i) f.set(i, ((i >> (j - 1)) & 1u) != 0);
  return f;
}

BooleanFunction BooleanFunction::anti_dictator(int n, int j) {
  BooleanFunction f(n);
  if (j < 1 || j > n) throw InvalidInput("dictator coordinate out of range");
  for (std::uint32_t i = 0; i < f.size(); ++i) f.set(i, ((i >> (j - 1)) & 1u) == 0);
  return f;
}

BooleanFunction BooleanFunction::parity(int n) {
  BooleanFunction f(n);
  for (std::uint32_t i = 0; i < f.size(); ++i) f.set(i, (std::popcount(i) & 1) != 0);
  return f;
}

BooleanFunction BooleanFunction::majority(int n) {
  if (n % 2 == 0) throw InvalidInput("majority needs an odd number of bits");
  BooleanFunction f(n);
  for (std::uint32_t i = 0; i < f.size(); ++i) f.set(i, 2 * std::popcount(i) > n);
  return f;
}

void BooleanFunction::set(std::uint32_t index, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (index & 63);
  if (value) {
    words_[index >> 6] |= bit;
  } else {
    words_[index >> 6] &= ~bit;
  }
}

std::size_t BooleanFunction::count_ones() const {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t hamming_distance(const BooleanFunction& f, const BooleanFunction& g) {
  require_same_dimension(f.dimension(), g.dimension());
  std::size_t total = 0;
  for (std::size_t i = 0; i < f.words().size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(f.word(i) ^ g.word(i)));
  }
  return total;
}

bool evaluate(const BooleanFunction& f, const Point& x) {
  require_same_dimension(f.dimension(), x.dimension());
  return f(x.index());
}

std::string format_function(const BooleanFunction& f) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const std::size_t digits = (f.size() + 3) / 4;
  std::string hex(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int value = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t index = 4 * d + static_cast<std::size_t>(b);
      if (index < f.size() && f(static_cast<std::uint32_t>(index))) value |= 1 << b;
    }
    hex[digits - 1 - d] = kDigits[value];
  }
  return std::to_string(f.dimension()) + ":" + hex;
}

BooleanFunction parse_function(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw InvalidInput("function literal must look like n:HEX, got '" + std::string(literal) +
                       "'");
  }
  int n = 0;
  for (const char c : literal.substr(0, colon)) {
    if (c < '0' || c > '9' || n > kMaxDimension) {
      throw InvalidInput("bad dimension in literal '" + std::string(literal) + "'");
    }
    n = n * 10 + (c - '0');
  }
  require_dimension(n);
  const auto hex = literal.substr(colon + 1);
  BooleanFunction f(n);
  const std::size_t digits = (f.size() + 3) / 4;
  if (hex.size() != digits) {
    throw InvalidInput("literal for n = " + std::to_string(n) + " needs exactly " +
                       std::to_string(digits) + " hex digits, got '" + std::string(literal) +
                       "'");
  }
  for (std::size_t d = 0; d < digits; ++d) {
    const int value = hex_value(hex[digits - 1 - d]);
    if (value < 0) throw InvalidInput("bad hex digit in '" + std::string(literal) + "'");
    for (int b = 0; b < 4; ++b) {
      if (((value >> b) & 1) == 0) continue;
      const std::size_t index = 4 * d + static_cast<std::size_t>(b);
      if (index >= f.size()) {
        throw InvalidInput("literal sets bits beyond 2^n: '" + std::string(literal) + "'");
      }
      f.set(static_cast<std::uint32_t>(index), true);
    }
  }
  return f;
}

EdgeRange::iterator::iterator(int n, std::uint32_t lower, int direction)
    : n_(n), lower_(lower), direction_(direction) {
  skip_to_valid();
}

void EdgeRange::iterator::skip_to_valid() {
  const std::uint32_t end = std::uint32_t{1} << n_;
  while (lower_ < end) {
    while (direction_ <= n_ && ((lower_ >> (direction_ - 1)) & 1u) != 0) ++direction_;
    if (direction_ <= n_) return;
    ++lower_;
    direction_ = 1;
  }
  direction_ = 1;
}

HypercubeEdge EdgeRange::iterator::operator*() const {
  const Point lower(n_, lower_);
  return HypercubeEdge{lower, lower.flipped(direction_), direction_};
}

EdgeRange::iterator& EdgeRange::iterator::operator++() {
  ++direction_;
  skip_to_valid();
  return *this;
}

EdgeRange::EdgeRange(int n) : n_(n) { require_dimension(n); }

EdgeRange::iterator EdgeRange::begin() const { return iterator(n_, 0, 1); }

EdgeRange::iterator EdgeRange::end() const { return iterator(n_, std::uint32_t{1} << n_, 1); }

EdgeRange edges(int n) { return EdgeRange(n); }

EdgeLabel classify_edge(const BooleanFunction& f, const HypercubeEdge& e) {
  require_same_dimension(f.dimension(), e.lower.dimension());
  const unsigned a = f(e.lower.index()) ? 1u : 0u;
  const unsigned b = f(e.upper.index()) ? 1u : 0u;
  return static_cast<EdgeLabel>((a << 1) | b);
}

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::k00: return "00";
    case EdgeLabel::k01: return "01";
    case EdgeLabel::k10: return "10";
    case EdgeLabel::k11: return "11";
  }
  return "??";
}

std::size_t count_01_edges(const BooleanFunction& f) { return count_edges(f, false).up; }

std::size_t count_10_edges(const BooleanFunction& f) { return count_edges(f, false).down; }

bool is_monotone(const BooleanFunction& f) { return count_edges(f, true).down == 0; }

Rational total_influence(const BooleanFunction& f) {
  const auto counts = count_edges(f, false);
  return Rational(static_cast<std::int64_t>(counts.up + counts.down),
                  std::int64_t{1} << (f.dimension() - 1));
}

std::vector<BooleanFunction> enumerate_monotone(int n) {
  require_dimension(n);
  if (n > kMaxEnumerationDimension) {
    throw UnsupportedSize("enumerate_monotone supports n <= " +
                          std::to_string(kMaxEnumerationDimension) + ", got " +
                          std::to_string(n));
  }
  // Inlined single-word version of the edge scan: at n = 5 this runs over
  // all 2^32 tables.
  const std::uint64_t valid = valid_bits(n);
  std::array<std::uint64_t, 5> masks{};
  for (int j = 0; j < n; ++j) masks[j] = kLowerMask[j] & valid;
  std::vector<BooleanFunction> result;
  const std::uint64_t last = valid;
  for (std::uint64_t t = 0;; ++t) {
    bool monotone = true;
    for (int j = 0; j < n; ++j) {
      if ((t & masks[j] & ~(t >> (1u << j))) != 0) {
        monotone = false;
        break;
      }
    }
    if (monotone) result.push_back(BooleanFunction::from_word(n, t));
    if (t == last) break;
  }
  return result;
}

const std::vector<BooleanFunction>& monotone_functions(int n) {
  require_dimension(n);
  if (n > kMaxEnumerationDimension) {
    throw UnsupportedSize("monotone_functions supports n <= 5");
  }
  static std::array<std::once_flag, kMaxEnumerationDimension + 1> once;
  static std::array<std::vector<BooleanFunction>, kMaxEnumerationDimension + 1> cache;
  std::call_once(once[n], [n] { cache[n] = enumerate_monotone(n); });
  return cache[n];
}

}  // namespace montest
