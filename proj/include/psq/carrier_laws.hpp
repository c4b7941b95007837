#pragma once

#include <vector>

#include "psq/carrier.hpp"
#include "psq/law_report.hpp"

namespace psq {

/// Exhaustive associativity, unit and (when hinted) commutativity checks on the table.
[[nodiscard]] std::vector<LawReport> check_carrier_laws(const Carrier& c);

/// Checks that splittings(x) lists exactly the defined factorizations of x.
[[nodiscard]] LawReport check_splitting_index(const Carrier& c);

/// Checks the futuristic invariants: unbounded elements compose with nothing on the
/// right, and bounded products have bounded left factors.
[[nodiscard]] LawReport check_futuristic_carrier(const Carrier& c);

[[nodiscard]] bool all_passed(const std::vector<LawReport>& reports);

}  // namespace psq
