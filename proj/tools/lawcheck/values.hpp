#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psq/law_report.hpp"

namespace lawcheck {

using Multiset = std::map<std::string, long>;

/// Multisets as tropical series over single symbols; op is "sum", "join" or "meet".
[[nodiscard]] Multiset multiset_op(const std::string& op, const std::string& symbols, long cap, const Multiset& f,
                                   const Multiset& g);
[[nodiscard]] std::string multiset_label(const Multiset& m);

struct Edge {
  int from;
  int to;
  char label;
};

/// A small automaton whose transition matrix has truncated-language entries.
struct Automaton {
  int states = 3;
  std::string alphabet = "ab";
  std::size_t cap = 3;
  std::vector<Edge> edges;
};

/// The three-state machine with a, b loops on state 1, 1 -b-> 2 and 2 -a-> 3.
[[nodiscard]] Automaton worked_automaton();

/// Entry (from, to) of M^power, states numbered from 1.
[[nodiscard]] std::set<std::string> automaton_power(const Automaton& a, int power, int from, int to);
/// Labels of all paths of exactly `length` edges.
[[nodiscard]] std::set<std::string> automaton_paths(const Automaton& a, int from, int to, int length);
[[nodiscard]] std::set<std::string> automaton_star(const Automaton& a, int from, int to);

/// Every M^k entry against the path oracle for k = 1..max_power, and the star against paths up to the cap.
[[nodiscard]] psq::LawReport check_automaton_oracle(const Automaton& a, int max_power);

}  // namespace lawcheck
