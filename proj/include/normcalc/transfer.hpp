#pragma once

#include <set>
#include <utility>
#include <vector>

#include "normcalc/windex.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// Transfer systems: the single-orbit shadow of (weak) indexing systems
// ---------------------------------------------------------------------------

/// Relation on subgroup classes refining subconjugacy. Reflexive pairs are
/// always stored; the class relation is read as "every subgroup realization
/// of the pair is related" (conjugation closure is then automatic).
struct TransferSystem {
  const GroupContext* ctx = nullptr;
  std::set<std::pair<int, int>> rel;

  bool has(int k, int h) const { return rel.count({k, h}) > 0; }
  bool operator==(const TransferSystem& o) const { return rel == o.rel; }
  bool operator<(const TransferSystem& o) const { return rel < o.rel; }
  bool subset_of(const TransferSystem& o) const {
    for (auto& p : rel)
      if (!o.rel.count(p)) return false;
    return true;
  }
};

inline TransferSystem transfer_bottom(const GroupContext& ctx) {
  TransferSystem t{&ctx, {}};
  for (int c = 0; c < ctx.num_classes(); ++c) t.rel.insert({c, c});
  return t;
}

inline TransferSystem transfer_top(const GroupContext& ctx) {
  TransferSystem t{&ctx, {}};
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int h = 0; h < ctx.num_classes(); ++h)
      if (ctx.leq(k, h)) t.rel.insert({k, h});
  return t;
}

namespace detail {

/// Restriction consequences of one related pair ((K),(H)): for every
/// realization K' ⊆ H_rep of (K) and every subgroup M of H_rep, the pair
/// ((K' ∩ M), (M)) is forced. The quantifier runs over all conjugate
/// realizations, matching the element-level axiom.
inline void restriction_consequences(const GroupContext& ctx, int k, int h,
                                     std::set<std::pair<int, int>>& out) {
  const Bits& H = ctx.subgroup(ctx.cls(h).rep).members;
  for (int kp : ctx.cls(k).members) {
    const Bits& K = ctx.subgroup(kp).members;
    if (!K.subset_of(H)) continue;
    for (int m : ctx.level(h).subs) {
      const Bits& M = ctx.subgroup(m).members;
      Bits inter = K & M;
      int ii = ctx.subgroup_index(inter);
      out.insert({ctx.class_of_subgroup(ii), ctx.class_of_subgroup(m)});
    }
  }
}

}  // namespace detail

/// Closure under reflexivity, transitivity, and restriction.
inline TransferSystem transfer_closure(const GroupContext& ctx, std::set<std::pair<int, int>> rel) {
  for (int c = 0; c < ctx.num_classes(); ++c) rel.insert({c, c});
  for (auto& [k, h] : rel)
    if (!ctx.leq(k, h)) fail(Errc::BadInput, "transfer pair does not refine subconjugacy");
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::pair<int, int>> add;
    for (auto& [a, b] : rel)
      for (auto& [c, d] : rel)
        if (b == c && !rel.count({a, d})) add.insert({a, d});
    for (auto& [k, h] : rel) detail::restriction_consequences(ctx, k, h, add);
    for (auto& p : add)
      if (rel.insert(p).second) changed = true;
  }
  return TransferSystem{&ctx, std::move(rel)};
}

inline bool is_transfer_system(const GroupContext& ctx, const TransferSystem& t) {
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (!t.has(c, c)) return false;
  for (auto& [k, h] : t.rel)
    if (!ctx.leq(k, h)) return false;
  TransferSystem closed = transfer_closure(ctx, t.rel);
  return closed == t;
}

/// All transfer systems, by backtracking over the strict subconjugacy pairs
/// with closure pruning. Canonically ordered output.
inline std::vector<TransferSystem> enumerate_transfer_systems(const GroupContext& ctx) {
  if (ctx.group().order() > 60)
    fail(Errc::GroupTooLarge, "transfer enumeration supports |G| <= 60");
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int h = 0; h < ctx.num_classes(); ++h)
      if (k != h && ctx.leq(k, h)) pairs.push_back({k, h});

  std::vector<TransferSystem> out;
  // status: 0 undecided, 1 in, -1 out
  std::vector<int> status(pairs.size(), 0);
  std::map<std::pair<int, int>, int> pair_index;
  for (size_t i = 0; i < pairs.size(); ++i) pair_index[pairs[i]] = (int)i;

  std::function<void(size_t)> rec = [&](size_t i) {
    while (i < pairs.size() && status[i] != 0) ++i;
    if (i == pairs.size()) {
      std::set<std::pair<int, int>> rel;
      for (int c = 0; c < ctx.num_classes(); ++c) rel.insert({c, c});
      for (size_t j = 0; j < pairs.size(); ++j)
        if (status[j] == 1) rel.insert(pairs[j]);
      out.push_back(TransferSystem{&ctx, std::move(rel)});
      return;
    }
    // branch: pair excluded
    status[i] = -1;
    rec(i + 1);
    status[i] = 0;
    // branch: pair included; force the closure
    std::set<std::pair<int, int>> rel;
    for (int c = 0; c < ctx.num_classes(); ++c) rel.insert({c, c});
    for (size_t j = 0; j < pairs.size(); ++j)
      if (status[j] == 1) rel.insert(pairs[j]);
    rel.insert(pairs[i]);
    TransferSystem closed = transfer_closure(ctx, rel);
    bool consistent = true;
    std::vector<size_t> forced;
    for (auto& p : closed.rel) {
      if (p.first == p.second) continue;
      int j = pair_index.at(p);
      if (status[j] == -1) {
        consistent = false;
        break;
      }
      if (status[j] == 0) forced.push_back(j);
    }
    if (consistent) {
      status[i] = 1;
      for (size_t j : forced) status[j] = 1;
      rec(i + 1);
      for (size_t j : forced) status[j] = 0;
      status[i] = 0;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Alternating-chain join: transitive closure of the union followed by the
/// restriction-closure fixed point.
inline TransferSystem join_rubin(const TransferSystem& a, const TransferSystem& b) {
  if (a.ctx != b.ctx && a.ctx->group().fingerprint() != b.ctx->group().fingerprint())
    fail(Errc::GroupMismatch, "transfer systems live over different groups");
  std::set<std::pair<int, int>> rel = a.rel;
  rel.insert(b.rel.begin(), b.rel.end());
  return transfer_closure(*a.ctx, std::move(rel));
}

/// The windowed indexing system of a transfer system: S is admissible at (H)
/// when every orbit [H/K] of S has ((K),(H)) related.
inline WeakIndexingSystem to_indexing_system(const TransferSystem& t, int bound) {
  const GroupContext& ctx = *t.ctx;
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int h = 0; h < ctx.num_classes(); ++h) {
    const LevelLocal& lv = ctx.level(h);
    std::vector<char> ok(lv.classes.size());
    for (size_t l = 0; l < lv.classes.size(); ++l) ok[l] = t.has(lv.classes[l].g_class, h);
    for (OrbitMultiset& x : [&] { return level_window(ctx, h, bound); }()) {
      bool good = true;
      for (auto& [c, m] : x.counts) {
        (void)m;
        if (!ok[c]) {
          good = false;
          break;
        }
      }
      if (good) w.levels[h].insert(std::move(x));
    }
  }
  return w;
}

/// Reads off the single-orbit shadow of a weak indexing system.
inline TransferSystem underlying_transfers(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  TransferSystem t = transfer_bottom(ctx);
  for (int h = 0; h < ctx.num_classes(); ++h) {
    const LevelLocal& lv = ctx.level(h);
    for (size_t l = 0; l < lv.classes.size(); ++l)
      if (w.contains(orbit_set(h, (int)l))) t.rel.insert({lv.classes[l].g_class, h});
  }
  return t;
}

}  // namespace normcalc
