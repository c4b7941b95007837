#pragma once

#include <string>
#include <vector>

#include "psq/bi_series.hpp"
#include "psq/instances.hpp"
#include "psq/quantale.hpp"
#include "psq/stream.hpp"

namespace psq {

using BoolBiSeries = BiSeries<BooleanQuantale::value_type>;

/// Intervals over a chain of `shape.times` points paired with streams over the same times.
struct IntervalStream {
  IntervalMode intervals = IntervalMode::nofusion;
  StreamShape shape;
  StreamSplit split = StreamSplit::pointwise;
  CarrierPtr s1;
  CarrierPtr s2;
  std::vector<Interval> items;
};

[[nodiscard]] IntervalStream make_interval_stream(IntervalMode intervals, const StreamShape& shape,
                                                  StreamSplit split);

/// ∀t∈x. test(f t); holds on intervals without points.
[[nodiscard]] BoolBiSeries forall_series(const IntervalStream& inst, const PointTest& test);

/// ∀-predicates on components 1 and 2 used to seed suite pools.
[[nodiscard]] Pool<BoolBiSeries> stream_predicate_seeds(const IntervalStream& inst);

/**
 * Quantale laws for ∘ (prefix "hconv/") and • (prefix "vconv/"), the
 * section identities, and commutativity of ∘, which is expected to fail.
 */
[[nodiscard]] std::vector<LawReport> check_biquantale(const IntervalStream& inst, const CheckOptions& options);

/// A pair of series with F∘G ≠ G∘F at a recorded point, kept as a regression fixture.
struct NoncommutativityWitness {
  IntervalMode intervals = IntervalMode::nofusion;
  StreamShape shape;
  StreamSplit split = StreamSplit::pointwise;
  /// Cells holding 1, as (interval label, stream label).
  std::vector<std::pair<std::string, std::string>> f;
  std::vector<std::pair<std::string, std::string>> g;
  std::string x;
  std::string y;
};

/// Rebuilds both series and checks (F∘G) x y ≠ (G∘F) x y; the note explains a failure.
[[nodiscard]] LawReport verify_noncommutativity(const NoncommutativityWitness& w);
[[nodiscard]] NoncommutativityWitness noncommutativity_from_json(const std::string& text);
[[nodiscard]] std::string noncommutativity_to_json(const NoncommutativityWitness& w);

}  // namespace psq
