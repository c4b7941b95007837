#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psq/carrier.hpp"
#include "psq/law_harness.hpp"
#include "psq/power_series.hpp"

namespace psq {

/// Bit set over the elements of a state carrier (at most 64 states).
using StateSet = std::uint64_t;

/**
 * A map from states to sets of successor states. States in `faults`
 * abort; their image is ignored by the Kleisli lift.
 */
struct StateTransformer {
  CarrierPtr domain;
  std::vector<StateSet> image;
  StateSet faults = 0;
};

StateTransformer transformer_of_relation(const CarrierPtr& domain,
                                         const std::vector<std::pair<std::string, std::string>>& pairs);

/// Predicate transformers are series from predicates (elements of 2^S) to predicates.
using PredicateTransformer = PowerSeries<StateSet>;

struct NamedTransformer {
  std::string name;
  PredicateTransformer pt;
};

class PredicateSpace {
 public:
  explicit PredicateSpace(CarrierPtr states);

  [[nodiscard]] const CarrierPtr& states() const noexcept { return states_; }
  [[nodiscard]] const CarrierPtr& predicates() const noexcept { return predicates_; }
  [[nodiscard]] const PowersetQuantale& target() const noexcept { return q_; }
  [[nodiscard]] std::size_t predicate_count() const noexcept { return predicates_->size(); }
  [[nodiscard]] StateSet full() const noexcept { return q_.top(); }

  /// Complex product of predicates.
  [[nodiscard]] StateSet star(StateSet p, StateSet q) const { return q_.mult(p, q); }
  [[nodiscard]] StateSet predicate(const std::vector<std::string>& labels) const { return q_.set_of(labels); }
  [[nodiscard]] std::string format(StateSet p) const { return q_.format(p); }

  [[nodiscard]] StateSet apply(const PredicateTransformer& f, StateSet p) const {
    return f[Element{static_cast<std::uint32_t>(p)}];
  }

  [[nodiscard]] PredicateTransformer identity() const;
  [[nodiscard]] PredicateTransformer constant(StateSet p) const;
  /// Y ↦ {x | x does not fault and f x ⊆ Y}.
  [[nodiscard]] PredicateTransformer kleisli_lift(const StateTransformer& f) const;
  /// p ↦ f(g p).
  [[nodiscard]] PredicateTransformer pt_compose(const PredicateTransformer& f, const PredicateTransformer& g) const;
  /// Convolution over the complex-product monoid of predicates.
  [[nodiscard]] PredicateTransformer pt_convolve(const PredicateTransformer& f, const PredicateTransformer& g) const;
  [[nodiscard]] PredicateTransformer pt_join(const PredicateTransformer& f, const PredicateTransformer& g) const;

  /// f∗id ≤ f.
  [[nodiscard]] LawReport is_local(const PredicateTransformer& f) const;
  /// (f p)∗q ≤ f(p∗q) for all p, q.
  [[nodiscard]] LawReport is_local_pointwise(const PredicateTransformer& f) const;

  /// (p ≤ f q) ⇒ (p∗r ≤ f(q∗r)); throws UsageError when f is not local.
  [[nodiscard]] bool frame_check(const PredicateTransformer& f, StateSet p, StateSet q, StateSet r) const;
  /// Frame rule over every (p, r) for fixed q.
  [[nodiscard]] LawReport frame_sweep(const PredicateTransformer& f, StateSet q) const;
  /// Frame rule over sampled (p, q, r), or every triple when the options allow.
  [[nodiscard]] LawReport frame_sample(const PredicateTransformer& f, const CheckOptions& options) const;

  /// Kleisli lift preserves meets of families of size `min_family`..3, exhaustively.
  [[nodiscard]] LawReport check_multiplicative(const StateTransformer& f, std::size_t min_family = 0) const;

 private:
  CarrierPtr states_;
  PowersetQuantale q_;
  CarrierPtr predicates_;
};

/// Commands over a heaplet carrier built by make_separating(heaplet, ...).
class HeapCommands {
 public:
  HeapCommands(CarrierPtr heaplets, std::size_t locations, int values);

  [[nodiscard]] const CarrierPtr& heaplets() const noexcept { return heaplets_; }
  /// Cell contents of a heaplet, -1 for unallocated.
  [[nodiscard]] const std::vector<int>& cells(Element h) const { return cells_[h.index]; }
  [[nodiscard]] Element element(const std::vector<int>& cells) const;
  [[nodiscard]] StateSet where(const std::function<bool(const std::vector<int>&)>& pred) const;

  /// [l] := v, faulting when l is unallocated.
  [[nodiscard]] StateTransformer write(std::size_t l, int v) const;
  /// [l] := v with no successor (instead of a fault) when l is unallocated.
  [[nodiscard]] StateTransformer write_miraculous(std::size_t l, int v) const;
  /// Continue when [l] = v, block otherwise, fault when unallocated.
  [[nodiscard]] StateTransformer read_guard(std::size_t l, int v) const;
  [[nodiscard]] StateTransformer dispose(std::size_t l) const;
  /// Allocate any free location with any value; no successor when the heap is full.
  [[nodiscard]] StateTransformer alloc_any() const;

 private:
  CarrierPtr heaplets_;
  std::size_t locations_;
  int values_;
  std::vector<std::vector<int>> cells_;
};

/// Heap commands, constants, joins, compositions and seeded random lifts.
std::vector<NamedTransformer> generate_transformers(const PredicateSpace& space, const HeapCommands& heap,
                                                    std::uint64_t seed, std::size_t random_count = 12);

/// First (f, g1, g2) with f∘(g1+g2) ≠ f∘g1 + f∘g2.
LawReport check_compose_left_distributivity(const PredicateSpace& space, const std::vector<NamedTransformer>& pool);
/// (f+g)∘h = f∘h + g∘h over the pool.
LawReport check_compose_right_distributivity(const PredicateSpace& space, const std::vector<NamedTransformer>& pool);

}  // namespace psq
