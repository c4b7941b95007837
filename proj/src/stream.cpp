#include "psq/stream.hpp"

#include "psq/errors.hpp"

namespace psq {

namespace {

constexpr std::size_t max_streams = 4096;

}  // namespace

std::string to_string(StreamSplit mode) {
  return mode == StreamSplit::pointwise ? "pointwise" : "uniform";
}

StreamSplit parse_stream_split(const std::string& text) {
  if (text == "pointwise") return StreamSplit::pointwise;
  if (text == "uniform") return StreamSplit::uniform;
  throw UsageError("unknown split mode '" + text + "' (expected pointwise or uniform)");
}

std::size_t StreamShape::count() const {
  if (times == 0 || dim == 0 || max_value < 1) {
    throw UsageError("stream: need times >= 1, dim >= 1, max_value >= 1");
  }
  std::size_t n = 1;
  const auto base = static_cast<std::size_t>(max_value) + 1;
  for (std::size_t i = 0; i < cells(); ++i) {
    n *= base;
    if (n > max_streams) {
      throw UsageError("stream: more than " + std::to_string(max_streams) + " streams");
    }
  }
  return n;
}

StreamCells decode_stream(const StreamShape& shape, Element e) {
  const auto base = static_cast<std::uint32_t>(shape.max_value) + 1;
  StreamCells cells(shape.cells());
  std::uint32_t v = e.index;
  for (auto& c : cells) {
    c = static_cast<int>(v % base);
    v /= base;
  }
  return cells;
}

Element encode_stream(const StreamShape& shape, std::span<const int> cells) {
  if (cells.size() != shape.cells()) throw UsageError("stream: wrong number of cells");
  const auto base = static_cast<std::uint32_t>(shape.max_value) + 1;
  std::uint32_t v = 0;
  for (std::size_t i = cells.size(); i-- > 0;) {
    if (cells[i] < 0 || cells[i] > shape.max_value) throw UsageError("stream: value out of range");
    v = v * base + static_cast<std::uint32_t>(cells[i]);
  }
  return Element{v};
}

std::string stream_label(const StreamShape& shape, std::span<const int> cells) {
  std::string out;
  for (std::size_t t = 0; t < shape.times; ++t) {
    if (t > 0) out += '|';
    for (std::size_t i = 0; i < shape.dim; ++i) {
      if (i > 0) out += ',';
      out += std::to_string(cells[t * shape.dim + i]);
    }
  }
  return out;
}

std::optional<StreamCells> separate_streams(const StreamShape& shape, StreamSplit mode,
                                            std::span<const int> a, std::span<const int> b) {
  StreamCells r(shape.cells());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (a[k] != 0 && b[k] != 0) return std::nullopt;
    r[k] = a[k] + b[k];
  }
  if (mode == StreamSplit::uniform) {
    for (std::size_t i = 0; i < shape.dim; ++i) {
      bool in_a = false;
      bool in_b = false;
      for (std::size_t t = 0; t < shape.times; ++t) {
        in_a |= a[t * shape.dim + i] != 0;
        in_b |= b[t * shape.dim + i] != 0;
      }
      if (in_a && in_b) return std::nullopt;
    }
  }
  return r;
}

CarrierPtr make_stream_carrier(const StreamShape& shape, StreamSplit mode) {
  const std::size_t n = shape.count();
  std::vector<StreamCells> all;
  all.reserve(n);
  Carrier::Options opt;
  opt.unit = Element{0};
  opt.commutative_hint = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    all.push_back(decode_stream(shape, Element{i}));
    opt.labels.push_back(stream_label(shape, all.back()));
  }
  std::string name = "stream(" + std::to_string(shape.times) + "," + std::to_string(shape.dim) +
                     "," + std::to_string(shape.max_value) + "," + to_string(mode) + ")";
  return make_carrier(Carrier::from_function(
      std::move(name), n,
      [&](Element x, Element y) -> PartialProduct {
        auto r = separate_streams(shape, mode, all[x.index], all[y.index]);
        if (!r) return std::nullopt;
        return encode_stream(shape, *r);
      },
      std::move(opt)));
}

}  // namespace psq
