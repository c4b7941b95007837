#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lawcheck {

[[nodiscard]] const std::vector<std::string>& demo_names();

/// Prints a worked example with computed and expected values; returns 0 when all agree, else 1.
int run_demo(const std::string& name, std::ostream& out);

}  // namespace lawcheck
