#include "psq/interchange.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

#include "psq/errors.hpp"

namespace psq {

namespace {

constexpr std::size_t max_local_bits = 20;

using Key = std::vector<std::uint32_t>;

struct LawInfo {
  InterchangeLaw law;
  const char* id;
  std::size_t arity;
  const char* formula;
};

constexpr LawInfo law_table[] = {
    {InterchangeLaw::FG_le_FsG, "FG_le_FsG", 2, "F.G <= F*G"},
    {InterchangeLaw::small_left, "small_left", 3, "(F*G).H <= F*(G.H)"},
    {InterchangeLaw::small_right, "small_right", 3, "F.(G*H) <= (F.G)*H"},
    {InterchangeLaw::weak, "weak", 4, "(F*G).(H*K) <= (F.H)*(G.K)"},
    {InterchangeLaw::meet_seq, "meet_seq", 4, "(F&G).(H&K) <= (F.H)&(G.K)"},
    {InterchangeLaw::meet_conc, "meet_conc", 4, "(F&G)*(H&K) = (F*H)&(G*K)"},
};

const LawInfo& info(InterchangeLaw law) {
  for (const auto& i : law_table) {
    if (i.law == law) return i;
  }
  throw UsageError("unknown interchange law");
}

/// Component index (0-based) of a token "fK".
std::size_t component(const std::string& tok, std::size_t dim) {
  if (tok.size() < 2 || tok[0] != 'f') throw UsageError("bad component '" + tok + "'");
  std::size_t k = 0;
  try {
    k = std::stoul(tok.substr(1));
  } catch (const std::exception&) {
    throw UsageError("bad component '" + tok + "'");
  }
  if (k < 1 || k > dim) throw UsageError("component '" + tok + "' out of range");
  return k - 1;
}

bool point_passes(const std::string& part, std::size_t dim, std::uint32_t v) {
  if (part == "true") return true;
  auto bit = [&](std::size_t i) { return static_cast<int>((v >> i) & 1U); };
  if (auto p = part.find('<'); p != std::string::npos) {
    return bit(component(part.substr(0, p), dim)) < bit(component(part.substr(p + 1), dim));
  }
  if (auto p = part.find('='); p != std::string::npos) {
    const std::string c = part.substr(p + 1);
    if (c != "0" && c != "1") throw UsageError("bad constant in '" + part + "'");
    return bit(component(part.substr(0, p), dim)) == (c == "1" ? 1 : 0);
  }
  throw UsageError("bad point test '" + part + "'");
}

Key key_of(const StreamPredicate& p) {
  Key k = p.disjuncts;
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

/// Intervals with their integer points and splittings, shared by both evaluators.
struct Geometry {
  struct Part {
    std::uint32_t left;
    std::uint32_t right;
    int left_offset;
    int right_offset;
  };

  std::size_t chain;
  std::size_t dim;
  std::vector<Interval> items;
  CarrierPtr carrier;
  std::vector<int> first;
  std::vector<int> len;
  std::vector<std::vector<Part>> parts;

  explicit Geometry(const InterchangeInstance& inst)
      : chain(inst.chain), dim(inst.dim), items(enumerate_intervals(inst.chain, inst.intervals)),
        carrier(make_interval(inst.chain, inst.intervals)) {
    if (inst.dim == 0 || inst.dim > 5) throw UsageError("interchange: dim must be 1..5");
    if (inst.chain * inst.dim > max_local_bits) {
      throw UsageError("interchange: chain x dim exceeds " + std::to_string(max_local_bits));
    }
    for (const auto& iv : items) {
      auto p = iv.points();
      first.push_back(p ? p->first : 0);
      len.push_back(p ? p->second - p->first + 1 : 0);
    }
    parts.resize(items.size());
    for (std::uint32_t x = 0; x < items.size(); ++x) {
      for (const Split& s : carrier->splittings(Element{x})) {
        auto off = [&](std::uint32_t y) { return len[y] > 0 ? first[y] - first[x] : 0; };
        parts[x].push_back({s.left.index, s.right.index, off(s.left.index), off(s.right.index)});
      }
    }
  }

  [[nodiscard]] std::size_t codes(std::uint32_t x) const { return std::size_t{1} << (dim * len[x]); }

  [[nodiscard]] std::uint32_t restrict(std::uint32_t code, int offset, std::uint32_t y) const {
    const std::uint32_t bits = static_cast<std::uint32_t>(dim * len[y]);
    const std::uint32_t mask = bits >= 32 ? ~0U : ((1U << bits) - 1);
    return (code >> (static_cast<std::uint32_t>(offset) * dim)) & mask;
  }

  [[nodiscard]] std::uint32_t index_of(const std::string& label) const {
    return carrier->at(label).index;
  }
};

class Table {
 public:
  Table() = default;
  explicit Table(const Geometry& g) : rows_(g.items.size()) {
    for (std::uint32_t x = 0; x < rows_.size(); ++x) rows_[x].assign((g.codes(x) + 63) / 64, 0);
  }
  [[nodiscard]] bool get(std::uint32_t x, std::uint32_t c) const { return (rows_[x][c >> 6] >> (c & 63)) & 1U; }
  void set(std::uint32_t x, std::uint32_t c) { rows_[x][c >> 6] |= std::uint64_t{1} << (c & 63); }

  [[nodiscard]] Table meet(const Table& o) const {
    Table r = *this;
    for (std::size_t x = 0; x < rows_.size(); ++x) {
      for (std::size_t w = 0; w < rows_[x].size(); ++w) r.rows_[x][w] &= o.rows_[x][w];
    }
    return r;
  }

 private:
  std::vector<std::vector<std::uint64_t>> rows_;
};

/**
 * Values of terms at (x, c) where c encodes the stream on the points of x
 * only; bit t*dim+i is component i at the t-th point of x. Predicate and
 * pair tables are memoised.
 */
class LocalEvaluator {
 public:
  LocalEvaluator(const InterchangeInstance& inst) : inst_(inst), geo_(inst) {}

  [[nodiscard]] const Geometry& geometry() const noexcept { return geo_; }

  const Table& pred(const StreamPredicate& p) {
    Key k = key_of(p);
    auto it = preds_.find(k);
    if (it != preds_.end()) return it->second;
    Table t(geo_);
    const std::uint32_t vmask = (1U << geo_.dim) - 1;
    for (std::uint32_t x = 0; x < geo_.items.size(); ++x) {
      for (std::uint32_t c = 0; c < geo_.codes(x); ++c) {
        for (std::uint32_t d : k) {
          bool all = true;
          for (int s = 0; s < geo_.len[x] && all; ++s) {
            all = (d >> ((c >> (static_cast<std::uint32_t>(s) * geo_.dim)) & vmask)) & 1U;
          }
          if (all) {
            t.set(x, c);
            break;
          }
        }
      }
    }
    return preds_.emplace(std::move(k), std::move(t)).first->second;
  }

  [[nodiscard]] Table hconv(const Table& a, const Table& b) const {
    Table r(geo_);
    for (std::uint32_t x = 0; x < geo_.items.size(); ++x) {
      for (std::uint32_t c = 0; c < geo_.codes(x); ++c) {
        for (const auto& p : geo_.parts[x]) {
          if (a.get(p.left, geo_.restrict(c, p.left_offset, p.left)) &&
              b.get(p.right, geo_.restrict(c, p.right_offset, p.right))) {
            r.set(x, c);
            break;
          }
        }
      }
    }
    return r;
  }

  [[nodiscard]] bool vconv_at(const Table& a, const Table& b, std::uint32_t x, std::uint32_t c) const {
    if (inst_.split == StreamSplit::pointwise) {
      for (std::uint32_t g = c;; g = (g - 1) & c) {
        if (a.get(x, g) && b.get(x, c ^ g)) return true;
        if (g == 0) return false;
      }
    }
    for (std::uint32_t s = 0; s < (1U << geo_.dim); ++s) {
      std::uint32_t m = 0;
      for (int t = 0; t < geo_.len[x]; ++t) m |= s << (static_cast<std::uint32_t>(t) * geo_.dim);
      const std::uint32_t g = c & m;
      if (a.get(x, g) && b.get(x, c ^ g)) return true;
    }
    return false;
  }

  [[nodiscard]] Table vconv(const Table& a, const Table& b) const {
    Table r(geo_);
    for (std::uint32_t x = 0; x < geo_.items.size(); ++x) {
      for (std::uint32_t c = 0; c < geo_.codes(x); ++c) {
        if (vconv_at(a, b, x, c)) r.set(x, c);
      }
    }
    return r;
  }

  const Table& hpair(const StreamPredicate& p, const StreamPredicate& q) {
    auto k = std::pair(key_of(p), key_of(q));
    auto it = hpairs_.find(k);
    if (it != hpairs_.end()) return it->second;
    return hpairs_.emplace(std::move(k), hconv(pred(p), pred(q))).first->second;
  }

  /// Pointwise separation of two ∀-predicates is again one, so the pair reduces to a predicate.
  const Table& vpair(const StreamPredicate& p, const StreamPredicate& q) {
    auto k = std::pair(key_of(p), key_of(q));
    auto it = vpairs_.find(k);
    if (it != vpairs_.end()) return it->second;
    Table t = inst_.split == StreamSplit::pointwise ? pred(separated(p, q)) : vconv(pred(p), pred(q));
    return vpairs_.emplace(std::move(k), std::move(t)).first->second;
  }

  [[nodiscard]] StreamPredicate separated(const StreamPredicate& p, const StreamPredicate& q) const {
    StreamPredicate r;
    const std::uint32_t points = 1U << geo_.dim;
    for (std::uint32_t a : p.disjuncts) {
      for (std::uint32_t b : q.disjuncts) {
        std::uint32_t t = 0;
        for (std::uint32_t v = 0; v < points; ++v) {
          for (std::uint32_t g = v;; g = (g - 1) & v) {
            if (((a >> g) & 1U) && ((b >> (v ^ g)) & 1U)) {
              t |= 1U << v;
              break;
            }
            if (g == 0) break;
          }
        }
        r.disjuncts.push_back(t);
      }
    }
    return r;
  }

  /// First point where the law fails, in (interval, local code) order.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> violation(InterchangeLaw law,
                                                                    std::span<const StreamPredicate> p) {
    trim();
    Table lhs;
    std::function<bool(std::uint32_t, std::uint32_t)> rhs_at;
    std::optional<Table> rhs;
    switch (law) {
      case InterchangeLaw::FG_le_FsG:
        lhs = hpair(p[0], p[1]);
        rhs = vpair(p[0], p[1]);
        break;
      case InterchangeLaw::small_left: {
        lhs = hconv(vpair(p[0], p[1]), pred(p[2]));
        const Table& f = pred(p[0]);
        const Table& gh = hpair(p[1], p[2]);
        rhs_at = [this, &f, &gh](std::uint32_t x, std::uint32_t c) { return vconv_at(f, gh, x, c); };
        break;
      }
      case InterchangeLaw::small_right: {
        lhs = hconv(pred(p[0]), vpair(p[1], p[2]));
        const Table& fg = hpair(p[0], p[1]);
        const Table& h = pred(p[2]);
        rhs_at = [this, &fg, &h](std::uint32_t x, std::uint32_t c) { return vconv_at(fg, h, x, c); };
        break;
      }
      case InterchangeLaw::weak: {
        lhs = hconv(vpair(p[0], p[1]), vpair(p[2], p[3]));
        const Table& fh = hpair(p[0], p[2]);
        const Table& gk = hpair(p[1], p[3]);
        rhs_at = [this, &fh, &gk](std::uint32_t x, std::uint32_t c) { return vconv_at(fh, gk, x, c); };
        break;
      }
      case InterchangeLaw::meet_seq:
        lhs = hconv(pred(p[0]).meet(pred(p[1])), pred(p[2]).meet(pred(p[3])));
        rhs = hpair(p[0], p[2]).meet(hpair(p[1], p[3]));
        break;
      case InterchangeLaw::meet_conc:
        lhs = vpair(predicate_meet(p[0], p[1]), predicate_meet(p[2], p[3]));
        rhs = vpair(p[0], p[2]).meet(vpair(p[1], p[3]));
        break;
    }
    const bool equality = law == InterchangeLaw::meet_conc;
    for (std::uint32_t x = 0; x < geo_.items.size(); ++x) {
      for (std::uint32_t c = 0; c < geo_.codes(x); ++c) {
        const bool l = lhs.get(x, c);
        if (!l && !equality) continue;
        const bool r = rhs ? rhs->get(x, c) : rhs_at(x, c);
        if (l != r && (l || equality)) return std::pair(x, c);
      }
    }
    return std::nullopt;
  }

  InterchangeSides sides(InterchangeLaw law, std::span<const StreamPredicate> p, std::uint32_t x,
                         std::uint32_t c) {
    trim();
    auto at = [&](const Table& t) { return t.get(x, c); };
    switch (law) {
      case InterchangeLaw::FG_le_FsG:
        return {at(hpair(p[0], p[1])), at(vpair(p[0], p[1]))};
      case InterchangeLaw::small_left:
        return {at(hconv(vpair(p[0], p[1]), pred(p[2]))), vconv_at(pred(p[0]), hpair(p[1], p[2]), x, c)};
      case InterchangeLaw::small_right:
        return {at(hconv(pred(p[0]), vpair(p[1], p[2]))), vconv_at(hpair(p[0], p[1]), pred(p[2]), x, c)};
      case InterchangeLaw::weak:
        return {at(hconv(vpair(p[0], p[1]), vpair(p[2], p[3]))),
                vconv_at(hpair(p[0], p[2]), hpair(p[1], p[3]), x, c)};
      case InterchangeLaw::meet_seq:
        return {at(hconv(pred(p[0]).meet(pred(p[1])), pred(p[2]).meet(pred(p[3])))),
                at(hpair(p[0], p[2])) && at(hpair(p[1], p[3]))};
      case InterchangeLaw::meet_conc:
        return {at(vpair(predicate_meet(p[0], p[1]), predicate_meet(p[2], p[3]))),
                at(vpair(p[0], p[2])) && at(vpair(p[1], p[3]))};
    }
    return {};
  }

  /// Full stream agreeing with `c` on the points of x and zero elsewhere.
  [[nodiscard]] StreamCells stream_of(std::uint32_t x, std::uint32_t c) const {
    StreamCells f(geo_.chain * geo_.dim, 0);
    for (int t = 0; t < geo_.len[x]; ++t) {
      for (std::size_t i = 0; i < geo_.dim; ++i) {
        f[static_cast<std::size_t>(geo_.first[x] + t) * geo_.dim + i] =
            static_cast<int>((c >> (static_cast<std::size_t>(t) * geo_.dim + i)) & 1U);
      }
    }
    return f;
  }

  [[nodiscard]] std::uint32_t code_of(std::uint32_t x, const StreamCells& f) const {
    std::uint32_t c = 0;
    for (int t = 0; t < geo_.len[x]; ++t) {
      for (std::size_t i = 0; i < geo_.dim; ++i) {
        if (f[static_cast<std::size_t>(geo_.first[x] + t) * geo_.dim + i] != 0) {
          c |= 1U << (static_cast<std::size_t>(t) * geo_.dim + i);
        }
      }
    }
    return c;
  }

 private:
  /// Drops pair tables; only called before any reference into the caches is taken.
  void trim() {
    if (hpairs_.size() + vpairs_.size() > 20000) {
      hpairs_.clear();
      vpairs_.clear();
    }
  }

  InterchangeInstance inst_;
  Geometry geo_;
  std::map<Key, Table> preds_;
  std::map<std::pair<Key, Key>, Table> hpairs_;
  std::map<std::pair<Key, Key>, Table> vpairs_;
};

/// Direct reading of the definitions on full streams; no locality, no memoisation.
class LiteralEvaluator {
 public:
  using Term = std::function<bool(std::uint32_t, const StreamCells&)>;

  explicit LiteralEvaluator(const InterchangeInstance& inst) : inst_(inst), geo_(inst) {}

  [[nodiscard]] Term pred(const StreamPredicate& p) const {
    return [this, p](std::uint32_t x, const StreamCells& f) {
      auto pts = geo_.items[x].points();
      for (std::uint32_t d : p.disjuncts) {
        bool all = true;
        for (int t = pts ? pts->first : 1; pts && t <= pts->second && all; ++t) {
          std::uint32_t v = 0;
          for (std::size_t i = 0; i < geo_.dim; ++i) {
            if (f[static_cast<std::size_t>(t) * geo_.dim + i] != 0) v |= 1U << i;
          }
          all = (d >> v) & 1U;
        }
        if (all) return true;
      }
      return false;
    };
  }

  [[nodiscard]] Term chop(Term a, Term b) const {
    return [this, a, b](std::uint32_t x, const StreamCells& f) {
      for (const Split& s : geo_.carrier->splittings(Element{x})) {
        if (a(s.left.index, f) && b(s.right.index, f)) return true;
      }
      return false;
    };
  }

  [[nodiscard]] Term sep(Term a, Term b) const {
    return [this, a, b](std::uint32_t x, const StreamCells& f) {
      std::vector<std::size_t> ones;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] != 0) ones.push_back(k);
      }
      const StreamShape shape = inst_.shape();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << ones.size()); ++m) {
        StreamCells g(f.size(), 0);
        StreamCells h(f.size(), 0);
        for (std::size_t j = 0; j < ones.size(); ++j) ((m >> j) & 1U ? g : h)[ones[j]] = f[ones[j]];
        auto joined = separate_streams(shape, inst_.split, g, h);
        if (!joined || *joined != f) continue;
        if (a(x, g) && b(x, h)) return true;
      }
      return false;
    };
  }

  [[nodiscard]] static Term both(Term a, Term b) {
    return [a, b](std::uint32_t x, const StreamCells& f) { return a(x, f) && b(x, f); };
  }

  [[nodiscard]] InterchangeSides sides(InterchangeLaw law, std::span<const StreamPredicate> p,
                                       std::uint32_t x, const StreamCells& f) const {
    std::vector<Term> t;
    for (const auto& q : p) t.push_back(pred(q));
    Term lhs;
    Term rhs;
    switch (law) {
      case InterchangeLaw::FG_le_FsG:
        lhs = chop(t[0], t[1]);
        rhs = sep(t[0], t[1]);
        break;
      case InterchangeLaw::small_left:
        lhs = chop(sep(t[0], t[1]), t[2]);
        rhs = sep(t[0], chop(t[1], t[2]));
        break;
      case InterchangeLaw::small_right:
        lhs = chop(t[0], sep(t[1], t[2]));
        rhs = sep(chop(t[0], t[1]), t[2]);
        break;
      case InterchangeLaw::weak:
        lhs = chop(sep(t[0], t[1]), sep(t[2], t[3]));
        rhs = sep(chop(t[0], t[2]), chop(t[1], t[3]));
        break;
      case InterchangeLaw::meet_seq:
        lhs = chop(both(t[0], t[1]), both(t[2], t[3]));
        rhs = both(chop(t[0], t[2]), chop(t[1], t[3]));
        break;
      case InterchangeLaw::meet_conc:
        lhs = sep(both(t[0], t[1]), both(t[2], t[3]));
        rhs = both(sep(t[0], t[2]), sep(t[1], t[3]));
        break;
    }
    return {lhs(x, f), rhs(x, f)};
  }

  [[nodiscard]] const Geometry& geometry() const noexcept { return geo_; }

 private:
  InterchangeInstance inst_;
  Geometry geo_;
};

bool violates(InterchangeLaw law, InterchangeSides s) {
  if (law == InterchangeLaw::meet_conc) return s.lhs != s.rhs;
  return s.lhs && !s.rhs;
}

std::string join_tests(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

std::string to_string(InterchangeLaw law) { return info(law).id; }

InterchangeLaw parse_interchange_law(const std::string& text) {
  for (const auto& i : law_table) {
    if (text == i.id) return i.law;
  }
  throw UsageError("unknown interchange law '" + text + "'");
}

std::size_t law_arity(InterchangeLaw law) { return info(law).arity; }
std::string law_formula(InterchangeLaw law) { return info(law).formula; }

std::string InterchangeInstance::label() const {
  return "interval-" + std::string(intervals == IntervalMode::fusion ? "fusion" : "nofusion") + "(" +
         std::to_string(chain) + ")x" + "stream(" + std::to_string(chain) + "," + std::to_string(dim) +
         ",1," + to_string(split) + ")";
}

std::uint32_t point_table(const std::string& test, std::size_t dim) {
  if (dim == 0 || dim > 5) throw UsageError("point test: dim must be 1..5");
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto bar = test.find('|', start);
    parts.push_back(test.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  std::uint32_t t = 0;
  for (std::uint32_t v = 0; v < (1U << dim); ++v) {
    for (const auto& p : parts) {
      if (point_passes(p, dim, v)) {
        t |= 1U << v;
        break;
      }
    }
  }
  return t;
}

StreamPredicate forall(const std::string& test, std::size_t dim) {
  return {"∀(" + test + ")", {point_table(test, dim)}};
}

StreamPredicate predicate_meet(const StreamPredicate& a, const StreamPredicate& b) {
  StreamPredicate r{a.name + "⊓" + b.name, {}};
  for (std::uint32_t x : a.disjuncts) {
    for (std::uint32_t y : b.disjuncts) r.disjuncts.push_back(x & y);
  }
  return r;
}

std::vector<StreamPredicate> seed_predicates(std::size_t dim) {
  std::vector<std::string> tests;
  if (dim >= 2) tests = {"f1=1", "f2=1", "f2=0", "f1=0|f2=0"};
  else tests = {"f1=1", "f1=0"};
  if (dim >= 3) {
    for (const char* t : {"f1=0", "f2<f3", "f1<f2", "f3=1"}) tests.emplace_back(t);
  }
  std::vector<StreamPredicate> out;
  for (const auto& t : tests) {
    auto p = forall(t, dim);
    if (std::none_of(out.begin(), out.end(), [&](const auto& q) { return key_of(q) == key_of(p); })) {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<StreamPredicate> predicate_family(std::size_t dim) {
  std::vector<StreamPredicate> out = seed_predicates(dim);
  auto known = [&](const Key& k) {
    return std::any_of(out.begin(), out.end(), [&](const auto& q) { return key_of(q) == k; });
  };

  std::vector<std::pair<std::string, std::uint32_t>> atoms;
  for (std::size_t i = 1; i <= dim; ++i) {
    for (const char* c : {"0", "1"}) atoms.emplace_back("f" + std::to_string(i) + "=" + c, 0);
  }
  for (std::size_t i = 1; i <= dim; ++i) {
    for (std::size_t j = 1; j <= dim; ++j) {
      if (i != j) atoms.emplace_back("f" + std::to_string(i) + "<f" + std::to_string(j), 0);
    }
  }
  for (std::size_t i = 1; i <= dim; ++i) {
    for (std::size_t j = i + 1; j <= dim; ++j) {
      atoms.emplace_back("f" + std::to_string(i) + "=0|f" + std::to_string(j) + "=0", 0);
    }
  }
  atoms.emplace_back("true", 0);
  for (auto& [name, table] : atoms) {
    table = point_table(name, dim);
    if (!known({table})) out.push_back({"∀(" + name + ")", {table}});
  }

  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const std::uint32_t t = atoms[a].second & atoms[b].second;
      if (!known({t})) out.push_back({"∀(" + join_tests({atoms[a].first, atoms[b].first}, "&") + ")", {t}});
    }
  }

  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const std::uint32_t ta = atoms[a].second;
      const std::uint32_t tb = atoms[b].second;
      // ∀ is monotone, so a join of comparable tests is the larger one.
      if ((ta & tb) == ta || (ta & tb) == tb) continue;
      StreamPredicate p{"∀(" + atoms[a].first + ")+∀(" + atoms[b].first + ")", {ta, tb}};
      if (!known(key_of(p))) out.push_back(std::move(p));
    }
  }
  return out;
}

InterchangeSides evaluate_literal(const InterchangeWitness& w) {
  if (w.predicates.size() != law_arity(w.law)) throw UsageError("witness: wrong number of predicates");
  LiteralEvaluator ev(w.instance);
  if (w.stream.size() != w.instance.chain * w.instance.dim) throw UsageError("witness: wrong stream length");
  return ev.sides(w.law, w.predicates, ev.geometry().index_of(w.interval), w.stream);
}

bool verify_witness(const InterchangeWitness& w) {
  const auto s = evaluate_literal(w);
  return s.lhs == w.lhs && s.rhs == w.rhs && violates(w.law, s);
}

InterchangeSides evaluate_local(const InterchangeInstance& inst, InterchangeLaw law,
                                std::span<const StreamPredicate> preds, const std::string& interval,
                                const StreamCells& stream) {
  if (preds.size() != law_arity(law)) throw UsageError("wrong number of predicates");
  LocalEvaluator ev(inst);
  const std::uint32_t x = ev.geometry().index_of(interval);
  return ev.sides(law, preds, x, ev.code_of(x, stream));
}

std::optional<InterchangeWitness> interchange_construction(InterchangeLaw law, const InterchangeInstance& inst) {
  const std::size_t need = law == InterchangeLaw::weak ? 3 : 2;
  if (law == InterchangeLaw::meet_seq || law == InterchangeLaw::meet_conc || inst.dim < need) {
    return std::nullopt;
  }
  const int n = static_cast<int>(inst.chain);
  const int mid = (n - 1) / 2;
  InterchangeWitness w;
  w.law = law;
  w.instance = inst;
  w.interval = Interval{false, 0, n - 1, true, true}.label();
  w.stream.assign(inst.chain * inst.dim, 0);
  w.source = "construction";
  auto set = [&](std::size_t comp, auto&& value) {
    for (int t = 0; t < n; ++t) w.stream[static_cast<std::size_t>(t) * inst.dim + comp] = value(t) ? 1 : 0;
  };
  auto step_down = [mid](int t) { return t <= mid; };
  switch (law) {
    case InterchangeLaw::FG_le_FsG:
      set(0, step_down);
      set(1, [mid](int t) { return t < mid; });
      w.predicates = {forall("f1=1", inst.dim), forall("f2=1", inst.dim)};
      break;
    case InterchangeLaw::small_left:
      set(0, step_down);
      w.predicates = {forall("f1=1", inst.dim), forall("f2=0", inst.dim), forall("f1=0|f2=0", inst.dim)};
      break;
    case InterchangeLaw::small_right:
      // Time reverse of the previous case with the predicates in mirrored roles.
      set(0, [mid](int t) { return t > mid; });
      w.predicates = {forall("f1=0|f2=0", inst.dim), forall("f2=0", inst.dim), forall("f1=1", inst.dim)};
      break;
    case InterchangeLaw::weak:
      set(1, [mid](int t) { return t > mid; });
      set(2, [](int) { return true; });
      w.predicates = {forall("f1=0", inst.dim), forall("f2<f3", inst.dim), forall("f1<f2", inst.dim),
                      forall("f3=1", inst.dim)};
      break;
    default:
      return std::nullopt;
  }
  const auto s = evaluate_literal(w);
  w.lhs = s.lhs;
  w.rhs = s.rhs;
  return w;
}

std::optional<InterchangeWitness> check_tuple(const InterchangeInstance& inst, InterchangeLaw law,
                                              std::span<const StreamPredicate> preds) {
  if (preds.size() != law_arity(law)) throw UsageError("wrong number of predicates");
  LocalEvaluator ev(inst);
  auto v = ev.violation(law, preds);
  if (!v) return std::nullopt;
  InterchangeWitness w;
  w.law = law;
  w.instance = inst;
  w.predicates.assign(preds.begin(), preds.end());
  w.interval = ev.geometry().items[v->first].label();
  w.stream = ev.stream_of(v->first, v->second);
  auto s = ev.sides(law, preds, v->first, v->second);
  w.lhs = s.lhs;
  w.rhs = s.rhs;
  w.source = "search";
  return w;
}

InterchangeResult interchange_search(const InterchangeInstance& inst, InterchangeLaw law,
                                     const std::vector<StreamPredicate>& family, std::uint64_t budget) {
  InterchangeResult res;
  res.law = law;
  res.instance = inst;
  res.family_size = family.size();
  res.construction = "none";
  if (auto c = interchange_construction(law, inst)) {
    if (violates(law, {c->lhs, c->rhs})) {
      res.construction = "refutes";
      res.witness = std::move(*c);
      return res;
    }
    res.construction = "does not refute";
  }

  LocalEvaluator ev(inst);
  const std::size_t k = law_arity(law);
  const std::size_t n = family.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<StreamPredicate> preds(k);
  bool stopped = false;
  for (std::size_t m = 0; m < n && !stopped; ++m) {
    // Shell m: tuples over [0, m] whose largest index is m, in lexicographic order.
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      if (std::find(idx.begin(), idx.end(), m) != idx.end()) {
        if (res.tuples_checked == budget) {
          stopped = true;
          break;
        }
        ++res.tuples_checked;
        for (std::size_t j = 0; j < k; ++j) preds[j] = family[idx[j]];
        if (auto v = ev.violation(law, preds)) {
          InterchangeWitness w;
          w.law = law;
          w.instance = inst;
          w.predicates = preds;
          w.indices = idx;
          w.interval = ev.geometry().items[v->first].label();
          w.stream = ev.stream_of(v->first, v->second);
          auto s = ev.sides(law, preds, v->first, v->second);
          w.lhs = s.lhs;
          w.rhs = s.rhs;
          w.source = "search";
          res.witness = std::move(w);
          return res;
        }
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m) idx[--pos] = 0;
      if (pos == 0) break;
      ++idx[pos - 1];
    }
  }
  res.exhausted = !stopped;
  return res;
}

std::string witness_to_json(const InterchangeWitness& w) {
  nlohmann::ordered_json j;
  j["law"] = to_string(w.law);
  j["formula"] = law_formula(w.law);
  j["chain"] = w.instance.chain;
  j["intervals"] = w.instance.intervals == IntervalMode::fusion ? "fusion" : "nofusion";
  j["dim"] = w.instance.dim;
  j["split"] = to_string(w.instance.split);
  auto preds = nlohmann::ordered_json::array();
  for (const auto& p : w.predicates) preds.push_back({{"name", p.name}, {"disjuncts", p.disjuncts}});
  j["predicates"] = preds;
  j["indices"] = w.indices;
  j["interval"] = w.interval;
  j["stream"] = stream_label(w.instance.shape(), w.stream);
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["source"] = w.source;
  return j.dump(2);
}

InterchangeWitness witness_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    InterchangeWitness w;
    w.law = parse_interchange_law(j.at("law").get<std::string>());
    w.instance.chain = j.at("chain").get<std::size_t>();
    const auto iv = j.at("intervals").get<std::string>();
    if (iv != "fusion" && iv != "nofusion") throw UsageError("witness: bad intervals '" + iv + "'");
    w.instance.intervals = iv == "fusion" ? IntervalMode::fusion : IntervalMode::nofusion;
    w.instance.dim = j.at("dim").get<std::size_t>();
    w.instance.split = parse_stream_split(j.at("split").get<std::string>());
    for (const auto& p : j.at("predicates")) {
      w.predicates.push_back({p.at("name").get<std::string>(), p.at("disjuncts").get<std::vector<std::uint32_t>>()});
    }
    if (j.contains("indices")) w.indices = j.at("indices").get<std::vector<std::size_t>>();
    w.interval = j.at("interval").get<std::string>();
    const auto shape = w.instance.shape();
    const auto label = j.at("stream").get<std::string>();
    auto carrier_free = [&]() {
      StreamCells cells;
      for (char ch : label) {
        if (ch == '0' || ch == '1') cells.push_back(ch - '0');
        else if (ch != ',' && ch != '|') throw UsageError("witness: bad stream '" + label + "'");
      }
      if (cells.size() != shape.cells()) throw UsageError("witness: stream has wrong length");
      return cells;
    };
    w.stream = carrier_free();
    w.lhs = j.at("lhs").get<bool>();
    w.rhs = j.at("rhs").get<bool>();
    w.source = j.value("source", "");
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("witness: ") + e.what());
  }
}

}  // namespace psq
