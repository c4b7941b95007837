#include "psq/futuristic.hpp"

#include <algorithm>
#include <optional>

#include "psq/errors.hpp"

namespace psq {

namespace {

struct Word {
  std::string text;
  char omega = 0;  // letter of an ω-token, 0 for finite words
};

bool power_of(const std::string& w, char letter) {
  return std::all_of(w.begin(), w.end(), [&](char ch) { return ch == letter; });
}

}  // namespace

CarrierPtr make_infinite_words(const std::string& alphabet, std::size_t finite_cap) {
  if (alphabet.empty()) throw UsageError("inf_words: alphabet must be nonempty");
  std::vector<Word> items{{"", 0}};
  for (std::size_t begin = 0, len = 1; len <= finite_cap; ++len) {
    const std::size_t end = items.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char ch : alphabet) items.push_back({items[i].text + ch, 0});
      if (items.size() > 4096) throw UsageError("inf_words: carrier too large");
    }
    begin = end;
  }
  for (char ch : alphabet) items.push_back({"", ch});

  auto index_of = [&](const Word& w) -> PartialProduct {
    for (std::uint32_t i = 0; i < items.size(); ++i) {
      if (items[i].omega == w.omega && items[i].text == w.text) return Element{i};
    }
    return std::nullopt;
  };

  Carrier::Options opt;
  for (const auto& w : items) {
    opt.labels.push_back(w.omega ? std::string(1, w.omega) + "^ω" : (w.text.empty() ? "ε" : w.text));
    opt.classification.push_back(w.omega ? Boundedness::unbounded : Boundedness::bounded);
  }
  return make_carrier(Carrier::from_function(
      "inf_words(" + alphabet + "," + std::to_string(finite_cap) + ")", items.size(),
      [&](Element x, Element y) -> PartialProduct {
        const Word& u = items[x.index];
        const Word& v = items[y.index];
        if (u.omega) return std::nullopt;
        if (v.omega) {
          if (!power_of(u.text, v.omega)) return std::nullopt;
          return y;
        }
        std::string uv = u.text + v.text;
        if (uv.size() > finite_cap) {
          if (uv.empty() || !power_of(uv, uv[0])) return std::nullopt;
          uv.resize(finite_cap);
        }
        return index_of({uv, 0});
      },
      std::move(opt)));
}

CarrierPtr make_futuristic_intervals(std::size_t chain_size) {
  if (chain_size == 0) throw UsageError("fut_intervals: chain must be nonempty");
  struct Iv {
    std::size_t lo;
    std::optional<std::size_t> hi;
  };
  std::vector<Iv> items;
  for (std::size_t a = 0; a < chain_size; ++a) {
    for (std::size_t b = a; b < chain_size; ++b) items.push_back({a, b});
  }
  for (std::size_t a = 0; a < chain_size; ++a) items.push_back({a, std::nullopt});

  Carrier::Options opt;
  for (const auto& iv : items) {
    opt.labels.push_back("[" + std::to_string(iv.lo) + "," + (iv.hi ? std::to_string(*iv.hi) : "∞") + "]");
    opt.classification.push_back(iv.hi ? Boundedness::bounded : Boundedness::unbounded);
  }
  return make_carrier(Carrier::from_function(
      "fut_intervals(" + std::to_string(chain_size) + ")", items.size(),
      [&](Element x, Element y) -> PartialProduct {
        const Iv& u = items[x.index];
        const Iv& v = items[y.index];
        if (!u.hi || *u.hi != v.lo) return std::nullopt;
        for (std::uint32_t i = 0; i < items.size(); ++i) {
          if (items[i].lo == u.lo && items[i].hi == v.hi) return Element{i};
        }
        return std::nullopt;
      },
      std::move(opt)));
}

CarrierPtr make_bounded_only(const CarrierPtr& c) {
  auto opt = c->options();
  opt.classification.assign(c->size(), Boundedness::bounded);
  return make_carrier(c->name() + "[bounded]", c->size(), c->table(), std::move(opt));
}

std::set<std::string> futuristic_expected_failures(const Carrier& c) {
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    if (c.unbounded(Element{x})) return {"right-annihilation", "left-distributivity/0"};
  }
  return {};
}

std::vector<std::string> futuristic_pattern_mismatches(const Carrier& c, const std::vector<LawReport>& reports) {
  const auto expected = futuristic_expected_failures(c);
  std::vector<std::string> out;
  for (const auto& r : reports) {
    const bool should_fail = expected.contains(r.law);
    if (should_fail && !r.failed()) out.push_back(r.law + ": expected a refutation");
    if (!should_fail && r.failed()) out.push_back(r.law + ": unexpected violation");
  }
  for (const auto& law : expected) {
    if (!find_report(reports, law)) out.push_back(law + ": not checked");
  }
  return out;
}

}  // namespace psq
