#include "psq/carrier.hpp"

#include "psq/errors.hpp"

namespace psq {

Carrier::Carrier(std::string name, std::size_t size, std::vector<std::int32_t> table,
                 Options options)
    : name_(std::move(name)), size_(size), table_(std::move(table)), options_(std::move(options)) {
  if (table_.size() != size_ * size_) {
    throw UsageError("carrier " + name_ + ": table must have size^2 entries");
  }
  for (std::int32_t v : table_) {
    if (v < undefined || v >= static_cast<std::int32_t>(size_)) {
      throw UsageError("carrier " + name_ + ": table entry out of range");
    }
  }
  if (options_.unit && options_.unit->index >= size_) {
    throw UsageError("carrier " + name_ + ": unit out of range");
  }
  if (!options_.labels.empty() && options_.labels.size() != size_) {
    throw UsageError("carrier " + name_ + ": label count must match size");
  }
  if (!options_.classification.empty() && options_.classification.size() != size_) {
    throw UsageError("carrier " + name_ + ": classification count must match size");
  }

  offsets_.assign(size_ + 1, 0);
  for (std::int32_t v : table_) {
    if (v != undefined) ++offsets_[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t i = 0; i < size_; ++i) offsets_[i + 1] += offsets_[i];
  splits_.resize(offsets_[size_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t y = 0; y < size_; ++y) {
    for (std::uint32_t z = 0; z < size_; ++z) {
      std::int32_t v = table_[y * size_ + z];
      if (v != undefined) splits_[fill[static_cast<std::size_t>(v)]++] = Split{Element{y}, Element{z}};
    }
  }

  for (std::uint32_t i = 0; i < options_.labels.size(); ++i) {
    by_label_.emplace(options_.labels[i], i);
  }
}

Boundedness Carrier::classification(Element x) const {
  if (options_.classification.empty()) return Boundedness::bounded;
  return options_.classification.at(x.index);
}

std::string Carrier::label(Element x) const {
  if (options_.labels.empty()) return "#" + std::to_string(x.index);
  return options_.labels.at(x.index);
}

std::optional<Element> Carrier::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return Element{it->second};
}

Element Carrier::at(std::string_view label) const {
  auto e = find(label);
  if (!e) throw UsageError("carrier " + name_ + ": no element labelled '" + std::string(label) + "'");
  return *e;
}

Carrier Carrier::opposite() const {
  std::vector<std::int32_t> swapped(table_.size());
  for (std::size_t x = 0; x < size_; ++x) {
    for (std::size_t y = 0; y < size_; ++y) swapped[y * size_ + x] = table_[x * size_ + y];
  }
  return Carrier(name_ + "^op", size_, std::move(swapped), options_);
}

BiCarrier::BiCarrier(CarrierPtr h, CarrierPtr v) : horizontal(std::move(h)), vertical(std::move(v)) {
  if (!horizontal || !vertical || horizontal->size() != vertical->size()) {
    throw UsageError("bi-carrier tables must share one element set");
  }
}

}  // namespace psq
