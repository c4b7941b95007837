#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace psq {

/// Position of an element in a carrier's enumeration.
struct Element {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Result of a partial composition; nullopt plays the role of the undefined product.
using PartialProduct = std::optional<Element>;

struct Split {
  Element left;
  Element right;

  friend constexpr bool operator==(const Split&, const Split&) = default;
};

enum class Boundedness : std::uint8_t { bounded, unbounded };

struct CarrierOptions {
  std::optional<Element> unit;
  bool commutative_hint = false;
  std::vector<std::string> labels;
  std::vector<Boundedness> classification;
};

/**
 * A finite partial semigroup given by a dense composition table.
 *
 * Construction does not verify the semigroup laws, so that corrupted
 * tables can be represented and rejected by check_carrier_laws.
 */
class Carrier {
 public:
  static constexpr std::int32_t undefined = -1;

  using Options = CarrierOptions;

  Carrier(std::string name, std::size_t size, std::vector<std::int32_t> table,
          Options options = {});

  template <class Compose>
  static Carrier from_function(std::string name, std::size_t size, Compose&& compose,
                               Options options = {}) {
    std::vector<std::int32_t> table(size * size, undefined);
    for (std::uint32_t x = 0; x < size; ++x) {
      for (std::uint32_t y = 0; y < size; ++y) {
        PartialProduct p = compose(Element{x}, Element{y});
        if (p) table[x * size + y] = static_cast<std::int32_t>(p->index);
      }
    }
    return Carrier(std::move(name), size, std::move(table), std::move(options));
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  [[nodiscard]] PartialProduct compose(Element x, Element y) const {
    std::int32_t v = table_[x.index * size_ + y.index];
    if (v == undefined) return std::nullopt;
    return Element{static_cast<std::uint32_t>(v)};
  }

  /// All (y, z) with compose(y, z) = x, ordered by (y.index, z.index).
  [[nodiscard]] std::span<const Split> splittings(Element x) const {
    return {splits_.data() + offsets_[x.index], offsets_[x.index + 1] - offsets_[x.index]};
  }

  [[nodiscard]] std::size_t total_splittings() const noexcept { return splits_.size(); }

  [[nodiscard]] std::optional<Element> unit() const noexcept { return options_.unit; }
  [[nodiscard]] bool commutative_hint() const noexcept { return options_.commutative_hint; }
  [[nodiscard]] bool has_classification() const noexcept {
    return !options_.classification.empty();
  }
  [[nodiscard]] Boundedness classification(Element x) const;
  [[nodiscard]] bool unbounded(Element x) const {
    return has_classification() && classification(x) == Boundedness::unbounded;
  }

  [[nodiscard]] std::string label(Element x) const;
  [[nodiscard]] std::optional<Element> find(std::string_view label) const;
  /// Like find, but throws UsageError for unknown labels.
  [[nodiscard]] Element at(std::string_view label) const;

  [[nodiscard]] const std::vector<std::int32_t>& table() const noexcept { return table_; }
  [[nodiscard]] const Options& options() const noexcept { return options_; }

  /// The carrier with arguments of the composition swapped.
  [[nodiscard]] Carrier opposite() const;

 private:
  std::string name_;
  std::size_t size_;
  std::vector<std::int32_t> table_;
  Options options_;
  std::vector<std::size_t> offsets_;
  std::vector<Split> splits_;
  std::unordered_map<std::string, std::uint32_t> by_label_;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

template <class... Args>
CarrierPtr make_carrier(Args&&... args) {
  return std::make_shared<const Carrier>(std::forward<Args>(args)...);
}

/// One element set carrying two composition tables, for horizontal and vertical products.
struct BiCarrier {
  CarrierPtr horizontal;
  CarrierPtr vertical;

  BiCarrier(CarrierPtr h, CarrierPtr v);
  [[nodiscard]] std::size_t size() const noexcept { return horizontal->size(); }
};

}  // namespace psq
