#include "psq/biquantale.hpp"

#include <algorithm>

#include <json.hpp>

#include "psq/errors.hpp"

namespace psq {

IntervalStream make_interval_stream(IntervalMode intervals, const StreamShape& shape, StreamSplit split) {
  IntervalStream inst;
  inst.intervals = intervals;
  inst.shape = shape;
  inst.split = split;
  inst.s1 = make_interval(shape.times, intervals);
  inst.s2 = make_stream_carrier(shape, split);
  inst.items = enumerate_intervals(shape.times, intervals);
  return inst;
}

BoolBiSeries forall_series(const IntervalStream& inst, const PointTest& test) {
  BoolBiSeries r(inst.s1, inst.s2, 0);
  const StreamShape& sh = inst.shape;
  for (std::uint32_t y = 0; y < inst.s2->size(); ++y) {
    const StreamCells f = decode_stream(sh, Element{y});
    for (std::uint32_t x = 0; x < inst.items.size(); ++x) {
      bool all = true;
      if (auto pts = inst.items[x].points()) {
        for (int t = pts->first; t <= pts->second && all; ++t) {
          all = test(std::span<const int>(f).subspan(static_cast<std::size_t>(t) * sh.dim, sh.dim));
        }
      }
      r(Element{x}, Element{y}) = all ? 1 : 0;
    }
  }
  return r;
}

Pool<BoolBiSeries> stream_predicate_seeds(const IntervalStream& inst) {
  Pool<BoolBiSeries> out;
  out.push_back({"∀(f1=1)", forall_series(inst, [](auto v) { return v[0] == 1; })});
  if (inst.shape.dim >= 2) {
    out.push_back({"∀(f2=0)", forall_series(inst, [](auto v) { return v[1] == 0; })});
    out.push_back({"∀(f1<f2)", forall_series(inst, [](auto v) { return v[0] < v[1]; })});
    out.push_back({"∀(f1=0|f2=0)", forall_series(inst, [](auto v) { return v[0] == 0 || v[1] == 0; })});
  } else {
    out.push_back({"∀(f1=0)", forall_series(inst, [](auto v) { return v[0] == 0; })});
  }
  return out;
}

std::vector<LawReport> check_biquantale(const IntervalStream& inst, const CheckOptions& options) {
  const BooleanQuantale q;
  const auto seeds = stream_predicate_seeds(inst);
  BiAlgebra<BooleanQuantale> h(inst.s1, inst.s2, q, BiDirection::horizontal, seeds);
  BiAlgebra<BooleanQuantale> v(inst.s1, inst.s2, q, BiDirection::vertical, seeds);
  // Four randoms keep the exhaustive • distributivity checks to seconds.
  CheckOptions pool_options = options;
  pool_options.random_series = std::min<std::size_t>(options.random_series, 4);
  const auto pool = h.pool(pool_options);

  std::vector<LawReport> out = prefixed(check_lifted_laws(h, pool, options), "hconv/");
  // The declared-commutativity report is replaced by the unconditional check below.
  std::erase_if(out, [](const LawReport& r) { return r.law == "hconv/commutativity"; });
  auto comm = check_commutativity(h, pool, options);
  comm.law = "hconv/commutativity";
  out.push_back(std::move(comm));
  for (auto& r : prefixed(check_lifted_laws(v, pool, options), "vconv/")) out.push_back(std::move(r));
  for (auto& r : check_section_laws(q, inst.s1, inst.s2, pool, options)) out.push_back(std::move(r));
  return out;
}

namespace {

using Cells = std::vector<std::pair<std::string, std::string>>;

BoolBiSeries build(const IntervalStream& inst, const Cells& cells) {
  BoolBiSeries r(inst.s1, inst.s2, 0);
  for (const auto& [x, y] : cells) r(inst.s1->at(x), inst.s2->at(y)) = 1;
  return r;
}

std::string show(const Cells& cells) {
  std::string out;
  for (const auto& [x, y] : cells) out += (out.empty() ? "" : " ") + x + "/" + y;
  return "{" + out + "}";
}

}  // namespace

LawReport verify_noncommutativity(const NoncommutativityWitness& w) {
  LawReport r;
  r.law = "hconv/noncommutativity-fixture";
  r.tuples_checked = 1;
  const auto inst = make_interval_stream(w.intervals, w.shape, w.split);
  const BooleanQuantale q;
  const auto f = build(inst, w.f);
  const auto g = build(inst, w.g);
  const Element x = inst.s1->at(w.x);
  const Element y = inst.s2->at(w.y);
  const int fg = hconvolve(q, f, g)(x, y);
  const int gf = hconvolve(q, g, f)(x, y);
  r.note = "(F∘G)=" + std::to_string(fg) + " (G∘F)=" + std::to_string(gf) + " at " + w.x + "/" + w.y;
  if (fg == gf) {
    r.status = LawStatus::fail;
    r.witness = Witness{{show(w.f), show(w.g)}, "stored point no longer separates F∘G from G∘F: " + r.note};
  }
  return r;
}

std::string noncommutativity_to_json(const NoncommutativityWitness& w) {
  nlohmann::ordered_json j;
  j["intervals"] = w.intervals == IntervalMode::fusion ? "fusion" : "nofusion";
  j["times"] = w.shape.times;
  j["dim"] = w.shape.dim;
  j["max_value"] = w.shape.max_value;
  j["split"] = to_string(w.split);
  j["F"] = w.f;
  j["G"] = w.g;
  j["x"] = w.x;
  j["y"] = w.y;
  return j.dump(2);
}

NoncommutativityWitness noncommutativity_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    NoncommutativityWitness w;
    const auto iv = j.at("intervals").get<std::string>();
    if (iv != "fusion" && iv != "nofusion") throw UsageError("fixture: bad intervals '" + iv + "'");
    w.intervals = iv == "fusion" ? IntervalMode::fusion : IntervalMode::nofusion;
    w.shape.times = j.at("times").get<std::size_t>();
    w.shape.dim = j.at("dim").get<std::size_t>();
    w.shape.max_value = j.at("max_value").get<int>();
    w.split = parse_stream_split(j.at("split").get<std::string>());
    w.f = j.at("F").get<Cells>();
    w.g = j.at("G").get<Cells>();
    w.x = j.at("x").get<std::string>();
    w.y = j.at("y").get<std::string>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("fixture: ") + e.what());
  }
}

}  // namespace psq
