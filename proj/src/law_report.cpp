#include "psq/law_report.hpp"

#include <sstream>

#include "psq/law_harness.hpp"

namespace psq {

std::string to_string(LawStatus status) {
  switch (status) {
    case LawStatus::pass:
      return "pass";
    case LawStatus::fail:
      return "fail";
    case LawStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

std::string summarize(const LawReport& report) {
  std::ostringstream out;
  out << report.law << ": " << to_string(report.status) << " (" << report.tuples_checked
      << (report.mode.kind == CheckMode::Kind::exhaustive ? " exhaustive" : " sampled") << ")";
  if (report.premises_held) out << " premises held " << *report.premises_held;
  if (report.witness) {
    out << " witness [";
    for (std::size_t i = 0; i < report.witness->items.size(); ++i) {
      if (i) out << ", ";
      out << report.witness->items[i];
    }
    out << "]";
    if (!report.witness->detail.empty()) out << " " << report.witness->detail;
  }
  if (!report.note.empty()) out << " note: " << report.note;
  return out.str();
}

const LawReport* find_report(const std::vector<LawReport>& reports, const std::string& law) {
  for (const auto& r : reports) {
    if (r.law == law) return &r;
  }
  return nullptr;
}

__extension__ using wide = unsigned __int128;

std::uint64_t tuple_count(std::size_t pool, TupleShape shape) {
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  wide total = 1;
  for (std::size_t i = 0; i < shape.prefix; ++i) {
    total *= pool;
    if (total > cap) return cap;
  }
  // Multisets of size k from n: C(n + k - 1, k).
  wide multi = 1;
  for (std::size_t i = 1; i <= shape.family; ++i) {
    multi = multi * (pool + shape.family - i) / i;
  }
  total *= multi;
  return total > cap ? cap : static_cast<std::uint64_t>(total);
}

std::uint64_t law_seed(std::uint64_t seed, std::string_view law) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : law) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

}  // namespace psq
