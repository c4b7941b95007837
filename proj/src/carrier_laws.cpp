#include "psq/carrier_laws.hpp"

#include <algorithm>

namespace psq {
namespace {

std::string show(const Carrier& c, PartialProduct p) {
  return p ? c.label(*p) : std::string("undefined");
}

LawReport exhaustive(std::string law, std::uint64_t count) {
  LawReport r;
  r.law = std::move(law);
  r.mode = {CheckMode::Kind::exhaustive, 0, count};
  return r;
}

void fail(LawReport& r, std::vector<std::string> items, std::string detail) {
  r.status = LawStatus::fail;
  r.witness = Witness{std::move(items), std::move(detail)};
}

}  // namespace

std::vector<LawReport> check_carrier_laws(const Carrier& c) {
  const auto n = static_cast<std::uint32_t>(c.size());
  std::vector<LawReport> out;

  LawReport assoc = exhaustive(c.name() + ".associativity", std::uint64_t{n} * n * n);
  for (std::uint32_t x = 0; x < n && !assoc.witness; ++x) {
    for (std::uint32_t y = 0; y < n && !assoc.witness; ++y) {
      PartialProduct xy = c.compose(Element{x}, Element{y});
      for (std::uint32_t z = 0; z < n; ++z) {
        ++assoc.tuples_checked;
        PartialProduct yz = c.compose(Element{y}, Element{z});
        PartialProduct lhs = xy ? c.compose(*xy, Element{z}) : std::nullopt;
        PartialProduct rhs = yz ? c.compose(Element{x}, *yz) : std::nullopt;
        if (lhs != rhs) {
          fail(assoc, {c.label(Element{x}), c.label(Element{y}), c.label(Element{z})},
               "(xy)z=" + show(c, lhs) + " x(yz)=" + show(c, rhs));
          break;
        }
      }
    }
  }
  out.push_back(std::move(assoc));

  LawReport unit = exhaustive(c.name() + ".unit", n);
  if (auto e = c.unit()) {
    for (std::uint32_t x = 0; x < n; ++x) {
      ++unit.tuples_checked;
      PartialProduct l = c.compose(*e, Element{x});
      PartialProduct r = c.compose(Element{x}, *e);
      if (l != Element{x} || r != Element{x}) {
        fail(unit, {c.label(Element{x})}, "1x=" + show(c, l) + " x1=" + show(c, r));
        break;
      }
    }
  } else {
    unit.status = LawStatus::skipped;
    unit.note = "no unit";
  }
  out.push_back(std::move(unit));

  LawReport comm = exhaustive(c.name() + ".commutativity", std::uint64_t{n} * n);
  if (c.commutative_hint()) {
    for (std::uint32_t x = 0; x < n && !comm.witness; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        ++comm.tuples_checked;
        PartialProduct a = c.compose(Element{x}, Element{y});
        PartialProduct b = c.compose(Element{y}, Element{x});
        if (a != b) {
          fail(comm, {c.label(Element{x}), c.label(Element{y})},
               "xy=" + show(c, a) + " yx=" + show(c, b));
          break;
        }
      }
    }
  } else {
    comm.status = LawStatus::skipped;
    comm.note = "not hinted";
  }
  out.push_back(std::move(comm));
  return out;
}

LawReport check_splitting_index(const Carrier& c) {
  const auto n = static_cast<std::uint32_t>(c.size());
  LawReport r = exhaustive(c.name() + ".splittings", std::uint64_t{n} * n);
  std::vector<std::size_t> seen(n, 0);
  for (std::uint32_t y = 0; y < n && !r.witness; ++y) {
    for (std::uint32_t z = 0; z < n; ++z) {
      ++r.tuples_checked;
      PartialProduct p = c.compose(Element{y}, Element{z});
      if (!p) continue;
      auto s = c.splittings(*p);
      if (std::find(s.begin(), s.end(), Split{Element{y}, Element{z}}) == s.end()) {
        fail(r, {c.label(Element{y}), c.label(Element{z})}, "missing from index");
        break;
      }
      ++seen[p->index];
    }
  }
  for (std::uint32_t x = 0; x < n && !r.witness; ++x) {
    auto s = c.splittings(Element{x});
    bool sorted = std::is_sorted(s.begin(), s.end(), [](const Split& a, const Split& b) {
      return std::pair(a.left, a.right) < std::pair(b.left, b.right);
    });
    if (s.size() != seen[x] || !sorted) fail(r, {c.label(Element{x})}, "index mismatch");
  }
  return r;
}

LawReport check_futuristic_carrier(const Carrier& c) {
  const auto n = static_cast<std::uint32_t>(c.size());
  LawReport r = exhaustive(c.name() + ".futuristic-classification", std::uint64_t{n} * n);
  if (!c.has_classification()) {
    r.status = LawStatus::skipped;
    r.note = "no classification";
    return r;
  }
  for (std::uint32_t x = 0; x < n && !r.witness; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      ++r.tuples_checked;
      PartialProduct p = c.compose(Element{x}, Element{y});
      if (!p) continue;
      if (c.unbounded(Element{x})) {
        fail(r, {c.label(Element{x}), c.label(Element{y})}, "unbounded left factor composes");
        break;
      }
    }
  }
  return r;
}

bool all_passed(const std::vector<LawReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.failed(); });
}

}  // namespace psq
