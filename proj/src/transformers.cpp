#include "psq/transformers.hpp"

#include <bit>
#include <random>

#include "psq/errors.hpp"
#include "psq/instances.hpp"

namespace psq {

namespace {

LawReport exhaustive_report(std::string law, std::uint64_t space) {
  LawReport r;
  r.law = std::move(law);
  r.mode = {CheckMode::Kind::exhaustive, 0, space};
  return r;
}

void record(LawReport& r, std::vector<std::string> items, std::string detail) {
  r.status = LawStatus::fail;
  r.witness = Witness{std::move(items), std::move(detail)};
}

}  // namespace

StateTransformer transformer_of_relation(const CarrierPtr& domain,
                                         const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (domain->size() > 64) throw UsageError("state transformer: at most 64 states");
  StateTransformer t{domain, std::vector<StateSet>(domain->size(), 0), 0};
  for (const auto& [a, b] : pairs) t.image[domain->at(a).index] |= StateSet{1} << domain->at(b).index;
  return t;
}

PredicateSpace::PredicateSpace(CarrierPtr states)
    : states_(std::move(states)), q_(states_), predicates_(make_powerset_carrier(states_)) {}

PredicateTransformer PredicateSpace::identity() const {
  PredicateTransformer f(predicates_, 0);
  for (std::uint32_t p = 0; p < predicates_->size(); ++p) f[Element{p}] = p;
  return f;
}

PredicateTransformer PredicateSpace::constant(StateSet p) const { return {predicates_, p}; }

PredicateTransformer PredicateSpace::kleisli_lift(const StateTransformer& f) const {
  if (f.domain != states_) throw UsageError("kleisli_lift: transformer over a different state carrier");
  PredicateTransformer out(predicates_, 0);
  for (std::uint32_t y = 0; y < predicates_->size(); ++y) {
    StateSet r = 0;
    for (std::uint32_t x = 0; x < states_->size(); ++x) {
      const StateSet bit = StateSet{1} << x;
      if ((f.faults & bit) == 0 && (f.image[x] & ~StateSet{y}) == 0) r |= bit;
    }
    out[Element{y}] = r;
  }
  return out;
}

PredicateTransformer PredicateSpace::pt_compose(const PredicateTransformer& f, const PredicateTransformer& g) const {
  PredicateTransformer out(predicates_, 0);
  for (std::uint32_t p = 0; p < predicates_->size(); ++p) out[Element{p}] = apply(f, g[Element{p}]);
  return out;
}

PredicateTransformer PredicateSpace::pt_convolve(const PredicateTransformer& f, const PredicateTransformer& g) const {
  return convolve(q_, f, g);
}

PredicateTransformer PredicateSpace::pt_join(const PredicateTransformer& f, const PredicateTransformer& g) const {
  return join(q_, f, g);
}

LawReport PredicateSpace::is_local(const PredicateTransformer& f) const {
  const auto n = static_cast<std::uint32_t>(predicates_->size());
  LawReport r = exhaustive_report("locality", n);
  const auto framed = pt_convolve(f, identity());
  for (std::uint32_t p = 0; p < n; ++p) {
    ++r.tuples_checked;
    const StateSet lhs = framed[Element{p}];
    const StateSet rhs = f[Element{p}];
    if ((lhs & ~rhs) != 0) {
      record(r, {format(p)}, "(f*id) p=" + format(lhs) + " f p=" + format(rhs));
      break;
    }
  }
  return r;
}

LawReport PredicateSpace::is_local_pointwise(const PredicateTransformer& f) const {
  const auto n = static_cast<std::uint32_t>(predicates_->size());
  LawReport r = exhaustive_report("locality-pointwise", std::uint64_t{n} * n);
  for (std::uint32_t p = 0; p < n && !r.witness; ++p) {
    const StateSet fp = f[Element{p}];
    for (std::uint32_t q = 0; q < n; ++q) {
      ++r.tuples_checked;
      const StateSet lhs = star(fp, q);
      const StateSet rhs = apply(f, star(p, q));
      if ((lhs & ~rhs) != 0) {
        record(r, {format(p), format(q)}, "(f p)*q=" + format(lhs) + " f(p*q)=" + format(rhs));
        break;
      }
    }
  }
  return r;
}

bool PredicateSpace::frame_check(const PredicateTransformer& f, StateSet p, StateSet q, StateSet r) const {
  if (!is_local(f).passed()) throw UsageError("frame_check: transformer is not local");
  if ((p & ~apply(f, q)) != 0) return true;
  return (star(p, r) & ~apply(f, star(q, r))) == 0;
}

LawReport PredicateSpace::frame_sweep(const PredicateTransformer& f, StateSet q) const {
  if (!is_local(f).passed()) throw UsageError("frame_sweep: transformer is not local");
  const auto n = static_cast<std::uint32_t>(predicates_->size());
  LawReport rep = exhaustive_report("frame-rule/q=" + format(q), std::uint64_t{n} * n);
  std::uint64_t premises = 0;
  const StateSet fq = apply(f, q);
  for (std::uint32_t p = 0; p < n && !rep.witness; ++p) {
    for (std::uint32_t r = 0; r < n; ++r) {
      ++rep.tuples_checked;
      if ((p & ~fq) != 0) continue;
      ++premises;
      const StateSet lhs = star(p, r);
      const StateSet rhs = apply(f, star(q, r));
      if ((lhs & ~rhs) != 0) {
        record(rep, {format(p), format(q), format(r)}, "p*r=" + format(lhs) + " f(q*r)=" + format(rhs));
        break;
      }
    }
  }
  rep.premises_held = premises;
  return rep;
}

LawReport PredicateSpace::frame_sample(const PredicateTransformer& f, const CheckOptions& options) const {
  if (!is_local(f).passed()) throw UsageError("frame_sample: transformer is not local");
  std::vector<std::string> names;
  for (std::uint32_t p = 0; p < predicates_->size(); ++p) names.push_back(predicates_->label(Element{p}));
  return check_law("frame-rule", names, {3, 0}, options, [&](auto idx) {
    const auto p = static_cast<StateSet>(idx[0]);
    const auto q = static_cast<StateSet>(idx[1]);
    const auto r = static_cast<StateSet>(idx[2]);
    if ((p & ~apply(f, q)) != 0) return Outcome::vacuous();
    const StateSet lhs = star(p, r);
    const StateSet rhs = apply(f, star(q, r));
    if ((lhs & ~rhs) == 0) return Outcome::ok();
    return Outcome::violated("p*r=" + format(lhs) + " f(q*r)=" + format(rhs));
  });
}

LawReport PredicateSpace::check_multiplicative(const StateTransformer& f, std::size_t min_family) const {
  const auto lift = kleisli_lift(f);
  const auto n = static_cast<std::uint32_t>(predicates_->size());
  const std::uint64_t space = tuple_count(n, {0, 0}) * (min_family == 0) + (min_family <= 1 ? tuple_count(n, {0, 1}) : 0) +
                              tuple_count(n, {0, 2}) + tuple_count(n, {0, 3});
  LawReport r = exhaustive_report("kleisli-multiplicative", space);
  auto t = [&](std::uint32_t y) { return lift[Element{y}]; };
  if (min_family == 0) {
    ++r.tuples_checked;
    if (t(static_cast<std::uint32_t>(full())) != full()) {
      record(r, {}, "lift of the full predicate is " + format(t(static_cast<std::uint32_t>(full()))));
      return r;
    }
  }
  if (min_family <= 1) r.tuples_checked += n;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a; b < n; ++b) {
      ++r.tuples_checked;
      if (t(a & b) != (t(a) & t(b))) {
        record(r, {format(a), format(b)}, "lift of meet differs from meet of lifts");
        return r;
      }
      const StateSet ab = t(a) & t(b);
      for (std::uint32_t c = b; c < n; ++c) {
        ++r.tuples_checked;
        if (t(a & b & c) != (ab & t(c))) {
          record(r, {format(a), format(b), format(c)}, "lift of meet differs from meet of lifts");
          return r;
        }
      }
    }
  }
  return r;
}

HeapCommands::HeapCommands(CarrierPtr heaplets, std::size_t locations, int values)
    : heaplets_(std::move(heaplets)), locations_(locations), values_(values), cells_(heaplets_->size()) {
  std::vector<int> c(locations_, -1);
  std::size_t seen = 0;
  for (;;) {
    cells_[heaplets_->at(heaplet_label(c)).index] = c;
    ++seen;
    std::size_t i = 0;
    while (i < locations_ && c[i] == values_ - 1) c[i++] = -1;
    if (i == locations_) break;
    ++c[i];
  }
  if (seen != heaplets_->size()) throw UsageError("heap commands: carrier is not a full heaplet monoid");
}

Element HeapCommands::element(const std::vector<int>& cells) const { return heaplets_->at(heaplet_label(cells)); }

StateSet HeapCommands::where(const std::function<bool(const std::vector<int>&)>& pred) const {
  StateSet s = 0;
  for (std::uint32_t h = 0; h < cells_.size(); ++h) {
    if (pred(cells_[h])) s |= StateSet{1} << h;
  }
  return s;
}

namespace {

StateTransformer build(const HeapCommands& heap,
                       const std::function<std::optional<std::vector<std::vector<int>>>(const std::vector<int>&)>& step) {
  const auto& c = heap.heaplets();
  StateTransformer t{c, std::vector<StateSet>(c->size(), 0), 0};
  for (std::uint32_t h = 0; h < c->size(); ++h) {
    auto next = step(heap.cells(Element{h}));
    if (!next) {
      t.faults |= StateSet{1} << h;
      continue;
    }
    for (const auto& n : *next) t.image[h] |= StateSet{1} << heap.element(n).index;
  }
  return t;
}

}  // namespace

StateTransformer HeapCommands::write(std::size_t l, int v) const {
  return build(*this, [&](const std::vector<int>& h) -> std::optional<std::vector<std::vector<int>>> {
    if (h[l] < 0) return std::nullopt;
    auto n = h;
    n[l] = v;
    return std::vector<std::vector<int>>{n};
  });
}

StateTransformer HeapCommands::write_miraculous(std::size_t l, int v) const {
  return build(*this, [&](const std::vector<int>& h) -> std::optional<std::vector<std::vector<int>>> {
    if (h[l] < 0) return std::vector<std::vector<int>>{};
    auto n = h;
    n[l] = v;
    return std::vector<std::vector<int>>{n};
  });
}

StateTransformer HeapCommands::read_guard(std::size_t l, int v) const {
  return build(*this, [&](const std::vector<int>& h) -> std::optional<std::vector<std::vector<int>>> {
    if (h[l] < 0) return std::nullopt;
    if (h[l] != v) return std::vector<std::vector<int>>{};
    return std::vector<std::vector<int>>{h};
  });
}

StateTransformer HeapCommands::dispose(std::size_t l) const {
  return build(*this, [&](const std::vector<int>& h) -> std::optional<std::vector<std::vector<int>>> {
    if (h[l] < 0) return std::nullopt;
    auto n = h;
    n[l] = -1;
    return std::vector<std::vector<int>>{n};
  });
}

StateTransformer HeapCommands::alloc_any() const {
  return build(*this, [&](const std::vector<int>& h) -> std::optional<std::vector<std::vector<int>>> {
    std::vector<std::vector<int>> out;
    for (std::size_t l = 0; l < h.size(); ++l) {
      if (h[l] >= 0) continue;
      for (int v = 0; v < values_; ++v) {
        auto n = h;
        n[l] = v;
        out.push_back(n);
      }
    }
    return out;
  });
}

std::vector<NamedTransformer> generate_transformers(const PredicateSpace& space, const HeapCommands& heap,
                                                    std::uint64_t seed, std::size_t random_count) {
  std::vector<NamedTransformer> out;
  const std::size_t locs = heap.cells(Element{0}).size();
  int values = 0;
  for (std::uint32_t h = 0; h < heap.heaplets()->size(); ++h) {
    for (int v : heap.cells(Element{h})) values = std::max(values, v + 1);
  }
  std::vector<NamedTransformer> primitives;
  for (std::size_t l = 0; l < locs; ++l) {
    const std::string loc = "l" + std::to_string(l + 1);
    for (int v = 0; v < values; ++v) {
      const std::string val = std::to_string(v);
      primitives.push_back({"write(" + loc + "," + val + ")", space.kleisli_lift(heap.write(l, v))});
      primitives.push_back({"guard(" + loc + "=" + val + ")", space.kleisli_lift(heap.read_guard(l, v))});
      out.push_back({"write-miraculous(" + loc + "," + val + ")", space.kleisli_lift(heap.write_miraculous(l, v))});
    }
    primitives.push_back({"dispose(" + loc + ")", space.kleisli_lift(heap.dispose(l))});
  }
  primitives.push_back({"alloc", space.kleisli_lift(heap.alloc_any())});
  primitives.push_back({"id", space.identity()});
  out.insert(out.begin(), primitives.begin(), primitives.end());

  out.push_back({"const(full)", space.constant(space.full())});
  out.push_back({"const(none)", space.constant(0)});
  out.push_back({"const(emp)", space.constant(space.predicate({"{}"}))});

  for (std::size_t i = 0; i + 1 < primitives.size(); ++i) {
    const auto& a = primitives[i];
    const auto& b = primitives[(i * 3 + 1) % primitives.size()];
    out.push_back({a.name + "+" + b.name, space.pt_join(a.pt, b.pt)});
    out.push_back({a.name + ";" + b.name, space.pt_compose(a.pt, b.pt)});
  }

  std::mt19937_64 rng(law_seed(seed, "transformers"));
  const auto n = heap.heaplets()->size();
  for (std::size_t k = 0; k < random_count; ++k) {
    StateTransformer t{heap.heaplets(), std::vector<StateSet>(n, 0), 0};
    for (std::size_t x = 0; x < n; ++x) {
      if (rng() % 6 == 0) t.faults |= StateSet{1} << x;
      for (std::size_t y = 0; y < n; ++y) {
        if (rng() % 4 == 0) t.image[x] |= StateSet{1} << y;
      }
    }
    out.push_back({"random" + std::to_string(k), space.kleisli_lift(t)});
  }
  return out;
}

LawReport check_compose_left_distributivity(const PredicateSpace& space, const std::vector<NamedTransformer>& pool) {
  std::vector<std::string> names;
  for (const auto& t : pool) names.push_back(t.name);
  CheckOptions exhaustive;
  exhaustive.exhaustive_limit = std::uint64_t{1} << 40;
  return check_law("pt-compose-left-distributivity", names, {1, 2}, exhaustive, [&](auto idx) {
    const auto& f = pool[idx[0]].pt;
    auto lhs = space.pt_compose(f, space.pt_join(pool[idx[1]].pt, pool[idx[2]].pt));
    auto rhs = space.pt_join(space.pt_compose(f, pool[idx[1]].pt), space.pt_compose(f, pool[idx[2]].pt));
    if (lhs == rhs) return Outcome::ok();
    for (std::uint32_t p = 0; p < lhs.size(); ++p) {
      if (lhs[Element{p}] != rhs[Element{p}]) {
        return Outcome::violated("at " + space.format(p) + ": lhs=" + space.format(lhs[Element{p}]) +
                                 " rhs=" + space.format(rhs[Element{p}]));
      }
    }
    return Outcome::violated("differ");
  });
}

LawReport check_compose_right_distributivity(const PredicateSpace& space, const std::vector<NamedTransformer>& pool) {
  std::vector<std::string> names;
  for (const auto& t : pool) names.push_back(t.name);
  CheckOptions exhaustive;
  exhaustive.exhaustive_limit = std::uint64_t{1} << 40;
  return check_law("pt-compose-right-distributivity", names, {1, 2}, exhaustive, [&](auto idx) {
    const auto& h = pool[idx[0]].pt;
    auto lhs = space.pt_compose(space.pt_join(pool[idx[1]].pt, pool[idx[2]].pt), h);
    auto rhs = space.pt_join(space.pt_compose(pool[idx[1]].pt, h), space.pt_compose(pool[idx[2]].pt, h));
    return lhs == rhs ? Outcome::ok() : Outcome::violated("differ");
  });
}

}  // namespace psq
