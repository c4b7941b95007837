#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psq/carrier.hpp"
#include "psq/quantale.hpp"

namespace psq {

/// Words over `alphabet` of length at most `max_len`; over-length concatenations are undefined.
[[nodiscard]] CarrierPtr make_language(const std::string& alphabet, std::size_t max_len);

/// Ordered pairs over points 1..n; (a,b)·(b,c) = (a,c). No carrier unit.
[[nodiscard]] CarrierPtr make_relation(std::size_t points);

/// Alternating words p0 a1 p1 ... with at most `max_transitions` letters, composed by fusion.
[[nodiscard]] CarrierPtr make_trace(const std::string& states, const std::string& labels,
                                    std::size_t max_transitions);

enum class IntervalMode : std::uint8_t { fusion, nofusion };

/// An interval with endpoints in a finite chain; open ends are allowed without fusion.
struct Interval {
  bool empty = false;
  int lo = 0;
  int hi = 0;
  bool lo_closed = true;
  bool hi_closed = true;

  /// First and last integer points contained; nullopt when none.
  [[nodiscard]] std::optional<std::pair<int, int>> points() const;
  [[nodiscard]] std::string label() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

[[nodiscard]] std::vector<Interval> enumerate_intervals(std::size_t chain, IntervalMode mode);
[[nodiscard]] CarrierPtr make_interval(std::size_t chain, IntervalMode mode);

/// Symbols composing only with themselves: x∗x = x.
[[nodiscard]] CarrierPtr make_symbol_carrier(const std::string& symbols);

enum class SeparatingKind : std::uint8_t { multiset_cap, disjoint_sets, heaplet, vector };

struct SeparatingParams {
  /// Multiset symbols.
  std::string symbols = "ab";
  /// Multiplicity cap for multisets, maximum value for vectors.
  int cap = 3;
  /// Per-symbol multiplicity caps overriding `cap` when nonempty.
  std::vector<int> caps;
  /// Points of the set universe, locations of heaplets, vector dimension.
  std::size_t size = 3;
  /// Number of distinct heaplet values.
  int values = 2;
};

/// Commutative partial monoids separated by disjointness.
[[nodiscard]] CarrierPtr make_separating(SeparatingKind kind, const SeparatingParams& params);

/// Label of a heaplet assigning `cells[i]` (or nothing when negative) to location i+1.
[[nodiscard]] std::string heaplet_label(const std::vector<int>& cells);

/// Separation of integer vectors: the sum when supports are disjoint.
[[nodiscard]] std::optional<std::vector<long>> separate(const std::vector<long>& a,
                                                        const std::vector<long>& b);

/// Matrix-vector product over the integers.
[[nodiscard]] std::vector<long> apply_linear(const std::vector<std::vector<long>>& m,
                                             const std::vector<long>& v);

/// Subsets of a small carrier under the complex product.
[[nodiscard]] CarrierPtr make_powerset_carrier(const CarrierPtr& base);

/// Boxes x▫y of fusion intervals; ∘ fuses x when y agrees, • fuses y when x agrees.
[[nodiscard]] BiCarrier make_box2d(std::size_t chain);

/// Square matrices over {0..max_value} with block-disjoint parallel composition.
[[nodiscard]] CarrierPtr make_matrix_parallel_carrier(std::size_t dimension, int max_value);

}  // namespace psq
