#pragma once

#include <set>
#include <string>
#include <vector>

#include "psq/carrier.hpp"
#include "psq/carrier_laws.hpp"
#include "psq/law_suites.hpp"
#include "psq/lifted_algebra.hpp"

namespace psq {

/**
 * Finite words up to `finite_cap` plus one token ℓ^ω per letter.
 *
 * Single-letter words saturate at ℓ^cap on overflow and every other
 * overflowing product is undefined; v·ℓ^ω = ℓ^ω for v in ℓ*.
 */
CarrierPtr make_infinite_words(const std::string& alphabet, std::size_t finite_cap);

/// Closed intervals [a,b] over the chain {0..n-1} plus unbounded [a,∞].
CarrierPtr make_futuristic_intervals(std::size_t chain_size);

/// Same table, every element classified bounded.
CarrierPtr make_bounded_only(const CarrierPtr& c);

/// Laws expected to fail once the carrier has an unbounded element.
std::set<std::string> futuristic_expected_failures(const Carrier& c);

/**
 * Quantale laws of the futuristic convolution plus the carrier
 * classification invariant. Failures of the laws named by
 * futuristic_expected_failures are the expected refutations.
 */
template <Quantale Q>
std::vector<LawReport> check_futuristic_laws(const LiftedAlgebra<Q>& alg, const Pool<typename LiftedAlgebra<Q>::value_type>& pool,
                                             const CheckOptions& options) {
  if (alg.kind() != ConvolutionKind::futuristic) throw UsageError("check_futuristic_laws: needs the futuristic convolution");
  auto out = check_lifted_laws(alg, pool, options);
  out.push_back(check_futuristic_carrier(*alg.carrier()));
  return out;
}

/// Empty when the reports show exactly the expected pass/refute pattern, else the mismatches.
std::vector<std::string> futuristic_pattern_mismatches(const Carrier& c, const std::vector<LawReport>& reports);

}  // namespace psq
