#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "psq/carrier.hpp"

namespace psq {

/// How a vector stream splits into two parts.
enum class StreamSplit : std::uint8_t {
  /// Each time point separates independently.
  pointwise,
  /// Each component goes wholly to one side for all times.
  uniform,
};

[[nodiscard]] std::string to_string(StreamSplit mode);
[[nodiscard]] StreamSplit parse_stream_split(const std::string& text);

/// Streams {0..times-1} → {0..max_value}^dim.
struct StreamShape {
  std::size_t times = 4;
  std::size_t dim = 2;
  int max_value = 1;

  [[nodiscard]] std::size_t cells() const noexcept { return times * dim; }
  /// Number of streams; throws UsageError above the carrier bound.
  [[nodiscard]] std::size_t count() const;
};

/// Values of a stream, component i at time t stored at t*dim + i.
using StreamCells = std::vector<int>;

[[nodiscard]] StreamCells decode_stream(const StreamShape& shape, Element e);
[[nodiscard]] Element encode_stream(const StreamShape& shape, std::span<const int> cells);
/// Times separated by '|', components by ','; e.g. "1,0|0,0".
[[nodiscard]] std::string stream_label(const StreamShape& shape, std::span<const int> cells);

/// Separation of two streams under the given mode; empty when undefined.
[[nodiscard]] std::optional<StreamCells> separate_streams(const StreamShape& shape, StreamSplit mode,
                                                          std::span<const int> a,
                                                          std::span<const int> b);

/// Commutative monoid of all streams of the shape; unit is the zero stream.
[[nodiscard]] CarrierPtr make_stream_carrier(const StreamShape& shape, StreamSplit mode);

/// A test on the vector a stream holds at one time point.
using PointTest = std::function<bool(std::span<const int>)>;

}  // namespace psq
