#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "normcalc/gset.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// Families of subgroup classes
// ---------------------------------------------------------------------------

/// Downward-closed set of subgroup classes under subconjugacy.
struct Family {
  std::vector<char> in;

  bool contains(int c) const { return in[c]; }
  bool operator==(const Family& o) const { return in == o.in; }
  int count() const {
    int n = 0;
    for (char c : in) n += c;
    return n;
  }
};

inline Family family_all(const GroupContext& ctx) { return Family{std::vector<char>(ctx.num_classes(), 1)}; }
inline Family family_none(const GroupContext& ctx) { return Family{std::vector<char>(ctx.num_classes(), 0)}; }

inline bool is_family(const GroupContext& ctx, const Family& f) {
  if ((int)f.in.size() != ctx.num_classes()) return false;
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (f.in[c])
      for (int d = 0; d < ctx.num_classes(); ++d)
        if (ctx.leq(d, c) && !f.in[d]) return false;
  return true;
}

inline Family family_intersect(const Family& a, const Family& b) {
  Family r = a;
  for (size_t i = 0; i < r.in.size(); ++i) r.in[i] = a.in[i] && b.in[i];
  return r;
}

/// Downward closure of an arbitrary set of classes.
inline Family family_generated(const GroupContext& ctx, const std::vector<int>& classes) {
  Family f = family_none(ctx);
  for (int c : classes)
    for (int d = 0; d < ctx.num_classes(); ++d)
      if (ctx.leq(d, c)) f.in[d] = 1;
  return f;
}

inline std::string to_string(const GroupContext& ctx, const Family& f) {
  std::string s = "{";
  bool first = true;
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (f.in[c]) {
      if (!first) s += ",";
      s += ctx.cls(c).label;
      first = false;
    }
  return s + "}";
}

// ---------------------------------------------------------------------------
// WeakIndexingSystem
// ---------------------------------------------------------------------------

/// The window of a weak indexing system: for each subgroup class, the
/// admissible sets of carrier at most `bound`, closed under restriction
/// (including conjugation twists), IS-a, and bounded indexed coproducts.
/// Negative membership is always bound-relative.
struct WeakIndexingSystem {
  const GroupContext* ctx = nullptr;
  int bound = 8;
  std::vector<std::set<OrbitMultiset>> levels;
  std::vector<OrbitMultiset> generators;
  bool saturated = false;

  bool operator==(const WeakIndexingSystem& o) const { return bound == o.bound && levels == o.levels; }
  bool contains(const OrbitMultiset& x) const { return levels[x.level].count(x) > 0; }
};

enum class Membership { Admissible, InadmissibleWithinBound };

inline Membership membership(const WeakIndexingSystem& w, const OrbitMultiset& s) {
  if (carrier_size(*w.ctx, s) > w.bound)
    fail(Errc::QueryExceedsBound, "carrier exceeds the window bound " + std::to_string(w.bound));
  return w.contains(s) ? Membership::Admissible : Membership::InadmissibleWithinBound;
}

/// All multisets at a level with carrier at most `bound`, canonical order.
inline std::vector<OrbitMultiset> level_window(const GroupContext& ctx, int level, int bound) {
  const LevelLocal& lv = ctx.level(level);
  std::vector<OrbitMultiset> out;
  OrbitMultiset cur{level, {}};
  std::function<void(int, int)> rec = [&](int cls, int left) {
    if (cls == (int)lv.classes.size()) {
      out.push_back(cur);
      return;
    }
    int sz = lv.classes[cls].orbit_size;
    for (int m = 0; m * sz <= left; ++m) {
      if (m) cur.counts.push_back({cls, m});
      rec(cls + 1, left - m * sz);
      if (m) cur.counts.pop_back();
    }
  };
  rec(0, bound);
  for (auto& x : out) x.canonicalize();
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// One saturation rule pass: IS-a points, restriction closure, and all
/// one-step indexed coproducts with output carrier within the bound.
/// Returns true when anything was added. `full_sizes`, when given, holds
/// the complete window size per level; a full level cannot grow, so rules
/// targeting it are skipped.
inline bool saturation_round(WeakIndexingSystem& w, const std::vector<size_t>* full_sizes = nullptr) {
  const GroupContext& ctx = *w.ctx;
  bool changed = false;
  auto insert = [&](OrbitMultiset x) {
    if (w.levels[x.level].insert(std::move(x)).second) changed = true;
  };
  auto full = [&](int level) { return full_sizes && w.levels[level].size() == (*full_sizes)[level]; };

  // (IS-a) nonempty level contains its point
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (!w.levels[c].empty()) insert(point_set(ctx, c));

  // (R) closure under every restriction functor, twists included
  for (int v = 0; v < ctx.num_classes(); ++v) {
    if (w.levels[v].empty()) continue;
    std::vector<OrbitMultiset> snap(w.levels[v].begin(), w.levels[v].end());
    for (int k = 0; k < ctx.num_classes(); ++k) {
      if (!ctx.leq(k, v) || full(k)) continue;
      for (const RestrictionMatrix& M : ctx.restriction_functors(v, k))
        for (const OrbitMultiset& x : snap) {
          std::map<int, int> acc;
          for (auto& [c, m] : x.counts)
            for (auto& [tc, tm] : M.rows[c]) acc[tc] += m * tm;
          OrbitMultiset y{k, {}};
          for (auto& [c, m] : acc)
            if (m) y.counts.push_back({c, m});
          insert(std::move(y));
        }
    }
  }

  // (IS-b) one-step indexed coproducts. Output depends only on the multiset
  // of inputs chosen per orbit class of the index set.
  for (int v = 0; v < ctx.num_classes(); ++v) {
    if (w.levels[v].empty() || full(v)) continue;
    const LevelLocal& lv = ctx.level(v);
    // per local class: candidate inputs as (remapped counts, output weight)
    std::vector<std::vector<std::pair<std::vector<std::pair<int, int>>, long long>>> options(
        lv.classes.size());
    std::vector<char> options_built(lv.classes.size(), 0);
    auto build_options = [&](int l) {
      if (options_built[l]) return;
      options_built[l] = 1;
      int src = lv.classes[l].g_class;
      const std::vector<int>& mp = ctx.induction_map(v, l);
      for (const OrbitMultiset& x : w.levels[src]) {
        long long weight = (long long)lv.classes[l].orbit_size * carrier_size(ctx, x);
        if (weight > w.bound) continue;
        std::map<int, int> acc;
        for (auto& [c, m] : x.counts) acc[mp[c]] += m;
        options[l].push_back({std::vector<std::pair<int, int>>(acc.begin(), acc.end()), weight});
      }
    };

    std::vector<OrbitMultiset> snap(w.levels[v].begin(), w.levels[v].end());
    for (const OrbitMultiset& s : snap) {
      if (s.counts.empty() || is_point(ctx, s)) continue;  // no-ops
      bool feasible = true;
      for (auto& [l, m] : s.counts) {
        (void)m;
        build_options(l);
        if (options[l].empty()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      // choose a multiset of inputs per orbit class group, non-decreasing
      // option indices inside a group to avoid duplicates
      std::map<int, int> acc;
      std::function<void(size_t, int, long long)> rec = [&](size_t gi, int pos_min, long long used) {
        if (gi == s.counts.size()) {
          OrbitMultiset out{v, {}};
          for (auto& [c, m] : acc)
            if (m) out.counts.push_back({c, m});
          insert(std::move(out));
          return;
        }
        auto [l, mult] = s.counts[gi];
        auto& opts = options[l];
        std::function<void(int, int, long long)> pick = [&](int left, int from, long long used2) {
          if (left == 0) {
            rec(gi + 1, 0, used2);
            return;
          }
          for (int oi = from; oi < (int)opts.size(); ++oi) {
            long long nu = used2 + opts[oi].second;
            if (nu > w.bound) continue;
            for (auto& [c, m] : opts[oi].first) acc[c] += m;
            pick(left - 1, oi, nu);
            for (auto& [c, m] : opts[oi].first) acc[c] -= m;
          }
        };
        (void)pos_min;
        pick(mult, 0, used);
      };
      rec(0, 0, 0);
    }
  }
  return changed;
}

}  // namespace detail

/// Least family within the window containing the generators and closed
/// under IS-a, restriction, and bounded one-step indexed coproducts.
inline WeakIndexingSystem saturate(const GroupContext& ctx, const std::vector<OrbitMultiset>& generators,
                                   int bound) {
  WeakIndexingSystem w;
  w.ctx = &ctx;
  w.bound = bound;
  w.levels.assign(ctx.num_classes(), {});
  w.generators = generators;
  for (const OrbitMultiset& g : generators) {
    OrbitMultiset x = g;
    x.canonicalize();
    if (carrier_size(ctx, x) > bound)
      fail(Errc::BoundTooSmall, "generator " + to_string(ctx, x) + " exceeds bound " + std::to_string(bound));
    w.levels[x.level].insert(std::move(x));
  }
  std::vector<size_t> full_sizes(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) full_sizes[c] = level_window(ctx, c, bound).size();
  while (detail::saturation_round(w, &full_sizes)) {
  }
  w.saturated = true;
  return w;
}

/// Checks the three closure conditions on the stored window; returns a
/// description of the first violation, if any.
inline std::optional<std::string> validate(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  WeakIndexingSystem copy = w;
  // Violations show up as additions under one more round.
  if (detail::saturation_round(copy)) {
    for (int c = 0; c < ctx.num_classes(); ++c)
      for (const OrbitMultiset& x : copy.levels[c])
        if (!w.contains(x))
          return "closure adds " + to_string(ctx, x) + " at level " + ctx.cls(c).label;
  }
  return std::nullopt;
}

// -- builtin systems --------------------------------------------------------

inline WeakIndexingSystem complete_system(const GroupContext& ctx, int bound) {
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) {
    auto all = level_window(ctx, c, bound);
    w.levels[c] = std::set<OrbitMultiset>(all.begin(), all.end());
  }
  return w;
}

/// The initial one-color weak indexing system: only points.
inline WeakIndexingSystem trivial_system(const GroupContext& ctx, int bound) {
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) w.levels[c].insert(point_set(ctx, c));
  return w;
}

/// The initial indexing system F^inf: all multiples of the point.
inline WeakIndexingSystem einfty_system(const GroupContext& ctx, int bound) {
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c)
    for (int n = 0; n <= bound; ++n) {
      OrbitMultiset x = n ? orbit_set(c, point_local_class(ctx, c), n) : empty_set(c);
      w.levels[c].insert(std::move(x));
    }
  return w;
}

/// The inflated system I^0 for a family: {0, *} at family levels, {*} off it.
inline WeakIndexingSystem inflated_system(const GroupContext& ctx, const Family& f, int bound) {
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "inflated_system requires a family");
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) {
    w.levels[c].insert(point_set(ctx, c));
    if (f.in[c]) w.levels[c].insert(empty_set(c));
  }
  return w;
}

/// Terminal weak indexing system with unit family F: complete at F-levels;
/// off F, everything except the sets all of whose orbit stabilizers lie in F
/// (the empty set among them). Validated; not every (G, F) admits it.
inline WeakIndexingSystem terminal_with_unit_family(const GroupContext& ctx, const Family& f, int bound) {
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "terminal_with_unit_family requires a family");
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) {
    const LevelLocal& lv = ctx.level(c);
    for (OrbitMultiset& x : [&] { return level_window(ctx, c, bound); }()) {
      if (!f.in[c]) {
        bool all_in_f = true;
        for (auto& [l, m] : x.counts) {
          (void)m;
          if (!f.in[lv.classes[l].g_class]) {
            all_in_f = false;
            break;
          }
        }
        if (all_in_f) continue;  // excluded (covers the empty set)
      }
      w.levels[c].insert(std::move(x));
    }
  }
  if (auto bad = validate(w))
    fail(Errc::InvalidSystem, "terminal family formula is not closed for this group and family: " + *bad);
  return w;
}

// -- invariants and predicates ----------------------------------------------

inline Family color_family(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  Family f = family_none(ctx);
  for (int c = 0; c < ctx.num_classes(); ++c) f.in[c] = w.levels[c].count(point_set(ctx, c)) > 0;
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "color classes are not downward closed; invalid system");
  return f;
}

inline Family unit_family(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  Family f = family_none(ctx);
  for (int c = 0; c < ctx.num_classes(); ++c) f.in[c] = w.levels[c].count(empty_set(c)) > 0;
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "unit classes are not downward closed; invalid system");
  return f;
}

struct SystemPredicates {
  bool has_one_color = false;
  bool is_unital = false;
  bool is_almost_unital = false;
  bool is_aE_unital = false;
  bool is_indexing_system = false;
};

inline SystemPredicates predicates(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  SystemPredicates p;
  Family c = color_family(w), u = unit_family(w);
  p.has_one_color = (c.count() == ctx.num_classes());
  p.is_unital = (u.count() == ctx.num_classes());
  p.is_aE_unital = true;
  for (int lev = 0; lev < ctx.num_classes(); ++lev) {
    bool has_noncontractible = false;
    for (const OrbitMultiset& x : w.levels[lev])
      if (!is_point(ctx, x)) {
        has_noncontractible = true;
        break;
      }
    if (has_noncontractible && !u.in[lev]) p.is_aE_unital = false;
  }
  p.is_almost_unital = p.is_aE_unital && p.has_one_color;
  // indexing systems sit inside the unital systems: closure under finite
  // coproducts includes the empty one
  p.is_indexing_system = p.has_one_color && p.is_unital;
  for (int lev = 0; lev < ctx.num_classes() && p.is_indexing_system; ++lev)
    for (const OrbitMultiset& x : w.levels[lev]) {
      for (const OrbitMultiset& y : w.levels[lev]) {
        if (carrier_size(ctx, x) + carrier_size(ctx, y) > w.bound) continue;
        if (!w.contains(disjoint_union(x, y))) {
          p.is_indexing_system = false;
          break;
        }
      }
      if (!p.is_indexing_system) break;
    }
  return p;
}

// -- lattice operations ------------------------------------------------------

inline void require_same_group(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  if (a.ctx != b.ctx && a.ctx->group().fingerprint() != b.ctx->group().fingerprint())
    fail(Errc::GroupMismatch, "systems live over different groups");
}

inline WeakIndexingSystem meet(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  require_same_group(a, b);
  if (a.bound != b.bound) fail(Errc::BoundMismatch, "meet requires equal window bounds");
  WeakIndexingSystem w{a.ctx, a.bound, {}, {}, true};
  w.levels.resize(a.levels.size());
  for (size_t c = 0; c < a.levels.size(); ++c)
    for (const OrbitMultiset& x : a.levels[c])
      if (b.levels[c].count(x)) w.levels[c].insert(x);
  return w;
}

/// Join computed by closing the union of the two windows.
inline WeakIndexingSystem join(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  require_same_group(a, b);
  std::vector<OrbitMultiset> gens;
  for (auto& lv : a.levels) gens.insert(gens.end(), lv.begin(), lv.end());
  for (auto& lv : b.levels) gens.insert(gens.end(), lv.begin(), lv.end());
  return saturate(*a.ctx, gens, std::max(a.bound, b.bound));
}

/// Bor_F: delete levels outside F (and any set with an orbit stabilizer
/// outside F, which is vacuous for genuine families).
inline WeakIndexingSystem borelify(const WeakIndexingSystem& w, const Family& f) {
  const GroupContext& ctx = *w.ctx;
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "borelify requires a family");
  WeakIndexingSystem r{w.ctx, w.bound, {}, {}, true};
  r.levels.resize(w.levels.size());
  for (int c = 0; c < (int)w.levels.size(); ++c) {
    if (!f.in[c]) continue;
    const LevelLocal& lv = ctx.level(c);
    for (const OrbitMultiset& x : w.levels[c]) {
      bool ok = true;
      for (auto& [l, m] : x.counts) {
        (void)m;
        if (!f.in[lv.classes[l].g_class]) ok = false;
      }
      if (ok) r.levels[c].insert(x);
    }
  }
  return r;
}

/// E: the inclusion back into the ambient poset is the identity on windows.
inline WeakIndexingSystem extend(const WeakIndexingSystem& w) { return w; }

struct TensorResult {
  WeakIndexingSystem system;
  bool lhs_aE_unital = false;
  bool rhs_aE_unital = false;
};

/// Arity shadow of the Boardman-Vogt tensor of weak N-infinity operads: the
/// Borelified join. The aE-unitality verdicts gate the operad-level
/// idempotence statements.
inline TensorResult tensor_weak_ninfty(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  require_same_group(a, b);
  TensorResult t;
  t.lhs_aE_unital = predicates(a).is_aE_unital;
  t.rhs_aE_unital = predicates(b).is_aE_unital;
  t.system = borelify(join(a, b), family_intersect(color_family(a), color_family(b)));
  return t;
}

// -- comparison helpers ------------------------------------------------------

/// a ⊆ b compared on carriers up to `upto` (default: min of the two bounds).
inline bool subset_within(const WeakIndexingSystem& a, const WeakIndexingSystem& b, int upto = -1) {
  require_same_group(a, b);
  if (upto < 0) upto = std::min(a.bound, b.bound);
  for (size_t c = 0; c < a.levels.size(); ++c)
    for (const OrbitMultiset& x : a.levels[c]) {
      if (carrier_size(*a.ctx, x) > upto) continue;
      if (!b.levels[c].count(x)) return false;
    }
  return true;
}

inline bool equal_within(const WeakIndexingSystem& a, const WeakIndexingSystem& b, int upto = -1) {
  return subset_within(a, b, upto) && subset_within(b, a, upto);
}

/// First levelwise discrepancy, if any; used by reports.
inline std::optional<std::string> first_discrepancy(const WeakIndexingSystem& a,
                                                    const WeakIndexingSystem& b, int upto = -1) {
  require_same_group(a, b);
  if (upto < 0) upto = std::min(a.bound, b.bound);
  const GroupContext& ctx = *a.ctx;
  for (size_t c = 0; c < a.levels.size(); ++c) {
    for (const OrbitMultiset& x : a.levels[c])
      if (carrier_size(ctx, x) <= upto && !b.levels[c].count(x))
        return "level " + ctx.cls((int)c).label + ": " + to_string(ctx, x) + " only on the left";
    for (const OrbitMultiset& x : b.levels[c])
      if (carrier_size(ctx, x) <= upto && !a.levels[c].count(x))
        return "level " + ctx.cls((int)c).label + ": " + to_string(ctx, x) + " only on the right";
  }
  return std::nullopt;
}

/// Re-saturates the window contents at a larger bound; criterion for
/// bound-stability of saturation.
inline WeakIndexingSystem resaturate(const WeakIndexingSystem& w, int bound) {
  std::vector<OrbitMultiset> gens;
  for (auto& lv : w.levels) gens.insert(gens.end(), lv.begin(), lv.end());
  return saturate(*w.ctx, gens, bound);
}

// -- change of group ---------------------------------------------------------

/// Res along a subgroup embedding: admissible sets are carried over through
/// the class transports of the embedding.
inline WeakIndexingSystem restrict_system(const WeakIndexingSystem& w, const SubgroupEmbedding& emb) {
  if (w.ctx != emb.big && w.ctx->group().fingerprint() != emb.big->group().fingerprint())
    fail(Errc::GroupMismatch, "embedding does not match the system's group");
  const GroupContext& sub = *emb.sub;
  WeakIndexingSystem r{&sub, w.bound, {}, {}, true};
  r.levels.resize(sub.num_classes());
  for (int sc = 0; sc < sub.num_classes(); ++sc) {
    int bc = emb.class_to_big[sc];
    const std::vector<int>& back = emb.local_from_big[sc];
    for (const OrbitMultiset& x : w.levels[bc]) {
      OrbitMultiset y{sc, {}};
      std::map<int, int> acc;
      for (auto& [c, m] : x.counts) acc[back[c]] += m;
      for (auto& [c, m] : acc) y.counts.push_back({c, m});
      r.levels[sc].insert(std::move(y));
    }
  }
  return r;
}

/// Ind: least system over the big group whose restriction contains w,
/// computed by saturating w's data placed along the embedding.
inline WeakIndexingSystem induce_system(const WeakIndexingSystem& w, const SubgroupEmbedding& emb) {
  const GroupContext& big = *emb.big;
  std::vector<OrbitMultiset> gens;
  for (int sc = 0; sc < (int)w.levels.size(); ++sc) {
    int bc = emb.class_to_big[sc];
    const std::vector<int>& fwd = emb.local_to_big[sc];
    for (const OrbitMultiset& x : w.levels[sc]) {
      OrbitMultiset y{bc, {}};
      std::map<int, int> acc;
      for (auto& [c, m] : x.counts) acc[fwd[c]] += m;
      for (auto& [c, m] : acc) y.counts.push_back({c, m});
      gens.push_back(std::move(y));
    }
  }
  return saturate(big, gens, w.bound);
}

/// CoInd: greatest system over the big group whose restriction lies in w.
/// Starts from the sets all of whose restrictions into the embedded cone
/// land in w, then prunes to restore closure.
inline WeakIndexingSystem coinduce_system(const WeakIndexingSystem& w, const SubgroupEmbedding& emb) {
  const GroupContext& big = *emb.big;
  WeakIndexingSystem r{&big, w.bound, {}, {}, true};
  r.levels.resize(big.num_classes());
  for (int v = 0; v < big.num_classes(); ++v) {
    for (OrbitMultiset& x : [&] { return level_window(big, v, w.bound); }()) {
      bool ok = true;
      for (int sc = 0; sc < emb.sub->num_classes() && ok; ++sc) {
        int bc = emb.class_to_big[sc];
        if (!big.leq(bc, v)) continue;
        const std::vector<int>& back = emb.local_from_big[sc];
        for (const RestrictionMatrix& M : big.restriction_functors(v, bc)) {
          std::map<int, int> acc;
          for (auto& [c, m] : x.counts)
            for (auto& [tc, tm] : M.rows[c]) acc[back[tc]] += m * tm;
          OrbitMultiset y{sc, {}};
          for (auto& [c, m] : acc)
            if (m) y.counts.push_back({c, m});
          if (!w.levels[sc].count(y)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) r.levels[v].insert(std::move(x));
    }
  }
  // prune to a genuine system: drop sets whose restrictions fell away, and
  // empty any level that lost its point
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < big.num_classes(); ++v) {
      if (!r.levels[v].empty() && !r.levels[v].count(point_set(big, v))) {
        r.levels[v].clear();
        changed = true;
        continue;
      }
      std::vector<OrbitMultiset> drop;
      for (const OrbitMultiset& x : r.levels[v]) {
        bool keep = true;
        for (int k = 0; k < big.num_classes() && keep; ++k) {
          if (!big.leq(k, v)) continue;
          for (const RestrictionMatrix& M : big.restriction_functors(v, k)) {
            std::map<int, int> acc;
            for (auto& [c, m] : x.counts)
              for (auto& [tc, tm] : M.rows[c]) acc[tc] += m * tm;
            OrbitMultiset y{k, {}};
            for (auto& [c, m] : acc)
              if (m) y.counts.push_back({c, m});
            if (!r.levels[k].count(y)) {
              keep = false;
              break;
            }
          }
        }
        if (!keep) drop.push_back(x);
      }
      for (auto& x : drop) {
        r.levels[v].erase(x);
        changed = true;
      }
    }
  }
  if (auto bad = validate(r)) fail(Errc::InvalidSystem, "coinduced window failed validation: " + *bad);
  return r;
}

}  // namespace normcalc
