#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psq/instances.hpp"
#include "psq/stream.hpp"

namespace psq {

/**
 * Inequalities between chop (·, over intervals) and separation (∗, over
 * streams) of interval-stream predicates. The first four are refutable;
 * the meet laws are controls.
 */
enum class InterchangeLaw : std::uint8_t {
  FG_le_FsG,    ///< F·G ≤ F∗G
  small_left,   ///< (F∗G)·H ≤ F∗(G·H)
  small_right,  ///< F·(G∗H) ≤ (F·G)∗H
  weak,         ///< (F∗G)·(H∗K) ≤ (F·H)∗(G·K)
  meet_seq,     ///< (F⊓G)·(H⊓K) ≤ (F·H)⊓(G·K)
  meet_conc,    ///< (F⊓G)∗(H⊓K) = (F∗H)⊓(G∗K)
};

[[nodiscard]] std::string to_string(InterchangeLaw law);
[[nodiscard]] InterchangeLaw parse_interchange_law(const std::string& text);
[[nodiscard]] std::size_t law_arity(InterchangeLaw law);
[[nodiscard]] std::string law_formula(InterchangeLaw law);

/**
 * ∀t∈x. φ(f t) for some disjunct φ. Each disjunct is a truth table over
 * vectors in {0,1}^dim: bit v is set when the vector whose component i is
 * bit i of v passes.
 */
struct StreamPredicate {
  std::string name;
  std::vector<std::uint32_t> disjuncts;

  friend bool operator==(const StreamPredicate&, const StreamPredicate&) = default;
};

/// Pointwise meet: conjunction of every pair of disjuncts.
[[nodiscard]] StreamPredicate predicate_meet(const StreamPredicate& a, const StreamPredicate& b);

/// Truth table of a named point test over {0,1}^dim: "f1=1", "f2<f3", "f1=0|f2=0", "true".
[[nodiscard]] std::uint32_t point_table(const std::string& test, std::size_t dim);
[[nodiscard]] StreamPredicate forall(const std::string& test, std::size_t dim);

/**
 * Seeds first, then atoms (components equal to a constant, strict
 * comparisons, pairwise "one of them is 0", true), pairwise meets
 * deduplicated by truth table, and pairwise joins of atoms.
 */
[[nodiscard]] std::vector<StreamPredicate> predicate_family(std::size_t dim);
[[nodiscard]] std::vector<StreamPredicate> seed_predicates(std::size_t dim);

struct InterchangeInstance {
  std::size_t chain = 5;
  IntervalMode intervals = IntervalMode::fusion;
  std::size_t dim = 2;
  StreamSplit split = StreamSplit::pointwise;

  /// Streams over the chain with values {0,1}.
  [[nodiscard]] StreamShape shape() const { return {chain, dim, 1}; }
  [[nodiscard]] std::string label() const;
};

struct InterchangeWitness {
  InterchangeLaw law = InterchangeLaw::FG_le_FsG;
  InterchangeInstance instance;
  std::vector<StreamPredicate> predicates;
  /// Positions of the predicates in the searched family; empty for constructions.
  std::vector<std::size_t> indices;
  std::string interval;
  StreamCells stream;
  bool lhs = true;
  bool rhs = false;
  std::string source;
};

struct InterchangeSides {
  bool lhs = false;
  bool rhs = false;
};

/// Both sides at the witness point, from the definitions over full streams.
[[nodiscard]] InterchangeSides evaluate_literal(const InterchangeWitness& w);
/// True when literal evaluation reproduces the stored sides and they violate the law.
[[nodiscard]] bool verify_witness(const InterchangeWitness& w);

/// The refutation candidates transcribed to the discrete chain; nullopt for controls or small dim.
[[nodiscard]] std::optional<InterchangeWitness> interchange_construction(InterchangeLaw law,
                                                                         const InterchangeInstance& inst);

struct InterchangeResult {
  InterchangeLaw law = InterchangeLaw::FG_le_FsG;
  InterchangeInstance instance;
  std::size_t family_size = 0;
  std::uint64_t tuples_checked = 0;
  /// Every tuple of the family was examined.
  bool exhausted = false;
  /// "refutes", "does not refute" or "none".
  std::string construction;
  std::optional<InterchangeWitness> witness;
};

/**
 * Tries the transcribed construction, then enumerates predicate tuples in
 * shells of increasing largest index, each against every interval and
 * stream, until a violation or `budget` tuples.
 */
[[nodiscard]] InterchangeResult interchange_search(const InterchangeInstance& inst, InterchangeLaw law,
                                                   const std::vector<StreamPredicate>& family,
                                                   std::uint64_t budget);

/// Both sides at one point, computed by the search's memoised local evaluator.
[[nodiscard]] InterchangeSides evaluate_local(const InterchangeInstance& inst, InterchangeLaw law,
                                              std::span<const StreamPredicate> preds,
                                              const std::string& interval, const StreamCells& stream);

/// Evaluates one tuple of the family on every interval and stream; returns the first violation.
[[nodiscard]] std::optional<InterchangeWitness> check_tuple(const InterchangeInstance& inst,
                                                            InterchangeLaw law,
                                                            std::span<const StreamPredicate> preds);

[[nodiscard]] std::string witness_to_json(const InterchangeWitness& w);
/// Parses a witness; throws UsageError on malformed input.
[[nodiscard]] InterchangeWitness witness_from_json(const std::string& text);

}  // namespace psq
