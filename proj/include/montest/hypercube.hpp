#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "montest/rational.hpp"

namespace montest {

inline constexpr int kMaxDimension = 20;
inline constexpr int kMaxEnumerationDimension = 5;

void require_dimension(int n);

/// A vertex of {0,1}^n. Coordinate x_j (1-based) is bit j-1 of the index.
class Point {
 public:
  Point(int n, std::uint32_t index);

  int dimension() const { return n_; }
  std::uint32_t index() const { return index_; }

  /// Coordinate x_j, 1 <= j <= n.
  bool coordinate(int j) const { return ((index_ >> (j - 1)) & 1u) != 0; }

  /// x with the j-th bit flipped.
  Point flipped(int j) const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  int n_;
  std::uint32_t index_;
};

/// x ⪯ y in the bitwise order.
bool precedes(const Point& x, const Point& y);

struct HypercubeEdge {
  Point lower;
  Point upper;
  int direction;  // 1-based coordinate that differs

  friend bool operator==(const HypercubeEdge&, const HypercubeEdge&) = default;
};

/// The edge leaving `lower` upward along `direction`; that bit must be 0.
HypercubeEdge make_edge(const Point& lower, int direction);

/// Explicit truth table of f: {0,1}^n -> {0,1}, packed 64 bits per word.
class BooleanFunction {
 public:
  /// All-zero table.
  explicit BooleanFunction(int n);

  /// Table from the low 2^n bits of `bits`; requires n <= 6.
  static BooleanFunction from_word(int n, std::uint64_t bits);
  static BooleanFunction from_table(int n, const std::vector<bool>& table);

  static BooleanFunction constant(int n, bool value);
  static BooleanFunction dictator(int n, int j);
  static BooleanFunction anti_dictator(int n, int j);
  static BooleanFunction parity(int n);
  /// Majority of n bits; n must be odd.
  static BooleanFunction majority(int n);

  int dimension() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }

  bool operator()(std::uint32_t index) const {
    return ((words_[index >> 6] >> (index & 63)) & 1u) != 0;
  }
  void set(std::uint32_t index, bool value);

  std::size_t count_ones() const;

  /// Low word of the table; the whole table when n <= 6.
  std::uint64_t word(std::size_t i = 0) const { return words_[i]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// Number of points where f and g differ.
std::size_t hamming_distance(const BooleanFunction& f, const BooleanFunction& g);

bool evaluate(const BooleanFunction& f, const Point& x);

/// Truth-table literal `n:HEX`: ceil(2^n/4) hex digits, table bit 0 is the
/// least significant bit of the hex value. XOR on two bits is `2:6`.
std::string format_function(const BooleanFunction& f);
BooleanFunction parse_function(std::string_view literal);

/// Forward range over all n*2^(n-1) edges, ascending lower index then
/// ascending direction.
class EdgeRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = HypercubeEdge;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = HypercubeEdge;

    iterator() = default;
    iterator(int n, std::uint32_t lower, int direction);

    HypercubeEdge operator*() const;
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.lower_ == b.lower_ && a.direction_ == b.direction_;
    }

   private:
    void skip_to_valid();

    int n_ = 0;
    std::uint32_t lower_ = 0;
    int direction_ = 1;
  };

  explicit EdgeRange(int n);

  iterator begin() const;
  iterator end() const;
  std::size_t size() const { return static_cast<std::size_t>(n_) << (n_ - 1); }

 private:
  int n_;
};

EdgeRange edges(int n);

enum class EdgeLabel : std::uint8_t { k00 = 0b00, k01 = 0b01, k10 = 0b10, k11 = 0b11 };

/// (f(lower), f(upper)) packed with f(lower) as the high bit.
EdgeLabel classify_edge(const BooleanFunction& f, const HypercubeEdge& e);
std::string_view to_string(EdgeLabel label);

std::size_t count_01_edges(const BooleanFunction& f);
std::size_t count_10_edges(const BooleanFunction& f);

/// Edge-local check: the order is the transitive closure of the edges.
bool is_monotone(const BooleanFunction& f);

/// Bichromatic edges divided by 2^(n-1).
Rational total_influence(const BooleanFunction& f);

/// Every monotone function on n <= 5 bits in ascending table order, found by
/// filtering all 2^(2^n) tables. Throws UnsupportedSize above n = 5.
std::vector<BooleanFunction> enumerate_monotone(int n);

/// Cached copy of enumerate_monotone(n).
const std::vector<BooleanFunction>& monotone_functions(int n);

}  // namespace montest
