#include "psq/power_series.hpp"

namespace psq {

PowerSeries<BooleanQuantale::value_type> wand(const PowerSeries<BooleanQuantale::value_type>& f,
                                              const PowerSeries<BooleanQuantale::value_type>& g) {
  require_same_carrier(f.carrier(), g.carrier());
  const Carrier& c = *f.carrier();
  PowerSeries<BooleanQuantale::value_type> r(f.carrier(), 1);
  for (std::uint32_t y = 0; y < c.size(); ++y) {
    for (std::uint32_t z = 0; z < c.size(); ++z) {
      PartialProduct zy = c.compose(Element{z}, Element{y});
      if (zy && f[Element{z}] && !g[*zy]) {
        r[Element{y}] = 0;
        break;
      }
    }
  }
  return r;
}

std::vector<Element> support(const PowerSeries<BooleanQuantale::value_type>& f) {
  std::vector<Element> out;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (f[Element{x}]) out.push_back(Element{x});
  }
  return out;
}

}  // namespace psq
