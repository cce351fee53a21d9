#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normcalc/windex.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// Dimension functions of orthogonal representations
// ---------------------------------------------------------------------------

/// A representation summand the engine can reason about exactly: a real
/// permutation representation of a top-level G-set, or a one-dimensional
/// character with an index-2 kernel (the C2 sign representation and its
/// relatives). Multiplicities may be infinite.
struct RepBlock {
  enum class Kind { Perm, OneDim };
  Kind kind = Kind::Perm;
  OrbitMultiset perm;    // Kind::Perm
  int kernel_class = -1;  // Kind::OneDim
  ExtNat mult = 1;
};

/// A representation remembered through K |-> dim V^K. Values built by the
/// constructors keep their summand blocks, which refine the infinite-
/// multiplicity comparisons; raw tables are accepted but flagged synthetic.
struct DimensionFunction {
  const GroupContext* ctx = nullptr;
  std::vector<ExtNat> dims;  // per subgroup class
  bool synthetic = false;
  std::vector<RepBlock> blocks;

  bool operator==(const DimensionFunction& o) const { return dims == o.dims && synthetic == o.synthetic; }
};

inline long long block_dim(const GroupContext& ctx, const RepBlock& b, int cls) {
  if (b.kind == RepBlock::Kind::Perm) {
    if (b.perm.empty()) return 0;
    return orbit_count(restrict_to_class(ctx, b.perm, cls));
  }
  return ctx.leq(cls, b.kernel_class) ? 1 : 0;
}

inline std::vector<ExtNat> dims_from_blocks(const GroupContext& ctx, const std::vector<RepBlock>& blocks) {
  std::vector<ExtNat> dims(ctx.num_classes(), ExtNat(0));
  for (const RepBlock& b : blocks)
    for (int c = 0; c < ctx.num_classes(); ++c)
      dims[c] = dims[c] + b.mult * ExtNat((uint64_t)block_dim(ctx, b, c));
  return dims;
}

inline void check_antitone(const GroupContext& ctx, const std::vector<ExtNat>& dims) {
  if ((int)dims.size() != ctx.num_classes()) fail(Errc::BadInput, "dimension table has wrong length");
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int l = 0; l < ctx.num_classes(); ++l)
      if (ctx.leq(k, l) && dims[l] > dims[k])
        fail(Errc::BadInput, "dimension table is not antitone: dim^" + ctx.cls(l).label + " > dim^" +
                                 ctx.cls(k).label);
}

inline DimensionFunction zero_rep(const GroupContext& ctx) {
  return DimensionFunction{&ctx, std::vector<ExtNat>(ctx.num_classes(), ExtNat(0)), false, {}};
}

/// dim R[X]^K = number of K-orbits on X, scaled by the multiplicity.
inline DimensionFunction from_permutation_rep(const GroupContext& ctx, const OrbitMultiset& x,
                                              ExtNat mult = 1) {
  if (x.level != ctx.top_class()) fail(Errc::BadInput, "permutation representation needs a G-set");
  DimensionFunction v{&ctx, {}, false, {}};
  if (!x.empty() && !mult.is_zero()) v.blocks.push_back({RepBlock::Kind::Perm, x, -1, mult});
  v.dims = dims_from_blocks(ctx, v.blocks);
  return v;
}

/// One-dimensional representation with the given index-2 kernel; for C2 this
/// is the sign representation sigma.
inline DimensionFunction sign_rep(const GroupContext& ctx, int kernel_class, ExtNat mult = 1) {
  if (kernel_class < 0 || kernel_class >= ctx.num_classes())
    fail(Errc::NotSubgroup, "no such subgroup class");
  const SubgroupClass& k = ctx.cls(kernel_class);
  if (k.members.size() != 1 || 2 * ctx.subgroup(k.rep).order != ctx.group().order())
    fail(Errc::NotSubgroup, "sign kernel must be a normal index-2 subgroup");
  DimensionFunction v{&ctx, {}, false, {}};
  if (!mult.is_zero()) v.blocks.push_back({RepBlock::Kind::OneDim, {}, kernel_class, mult});
  v.dims = dims_from_blocks(ctx, v.blocks);
  return v;
}

/// Raw antitone table; accepted but synthetic (no block refinement).
inline DimensionFunction from_dims(const GroupContext& ctx, std::vector<ExtNat> dims) {
  check_antitone(ctx, dims);
  return DimensionFunction{&ctx, std::move(dims), true, {}};
}

inline DimensionFunction direct_sum(const DimensionFunction& a, const DimensionFunction& b) {
  if (a.ctx != b.ctx && a.ctx->group().fingerprint() != b.ctx->group().fingerprint())
    fail(Errc::GroupMismatch, "direct sum across groups");
  DimensionFunction v{a.ctx, {}, a.synthetic || b.synthetic, {}};
  v.dims.resize(a.dims.size());
  for (size_t i = 0; i < a.dims.size(); ++i) v.dims[i] = a.dims[i] + b.dims[i];
  if (!v.synthetic) {
    v.blocks = a.blocks;
    v.blocks.insert(v.blocks.end(), b.blocks.begin(), b.blocks.end());
  }
  return v;
}

/// V is a weak universe when V = V + V, i.e. every value is 0 or infinite.
inline bool is_weak_universe(const DimensionFunction& v) {
  for (ExtNat d : v.dims)
    if (!d.is_zero() && !d.is_inf()) return false;
  return true;
}

namespace detail {

/// Strict containment V^L < V^K for K < L. With blocks this is exact even at
/// infinite multiplicities; synthetic tables fall back to comparing the
/// extended dimensions.
inline bool fixed_space_strictly_smaller(const DimensionFunction& v, int clsK, int clsL) {
  if (!v.synthetic) {
    for (const RepBlock& b : v.blocks)
      if (!b.mult.is_zero() && block_dim(*v.ctx, b, clsL) < block_dim(*v.ctx, b, clsK)) return true;
    return false;
  }
  return v.dims[clsL] < v.dims[clsK];
}

inline bool fixed_space_positive(const DimensionFunction& v, int cls) {
  if (!v.synthetic) {
    for (const RepBlock& b : v.blocks)
      if (!b.mult.is_zero() && block_dim(*v.ctx, b, cls) > 0) return true;
    return false;
  }
  return !v.dims[cls].is_zero();
}

}  // namespace detail

enum class Capacity { Zero, One, Infinite };

/// How many disjoint copies of the orbit [H/local] embed into V: infinitely
/// many when points with exact stabilizer of that class exist, one for the
/// fixed point at the origin when dim V^H = 0, none otherwise.
inline Capacity orbit_capacity(const DimensionFunction& v, int level, int local) {
  const GroupContext& ctx = *v.ctx;
  const LevelLocal& lv = ctx.level(level);
  int k_sub = lv.classes[local].rep;
  int k_cls = lv.classes[local].g_class;
  if (k_sub == lv.parent) return detail::fixed_space_positive(v, k_cls) ? Capacity::Infinite : Capacity::One;
  if (!detail::fixed_space_positive(v, k_cls)) return Capacity::Zero;
  const Bits& K = ctx.subgroup(k_sub).members;
  for (int l_sub : lv.subs) {
    if (l_sub == k_sub) continue;
    if (!K.subset_of(ctx.subgroup(l_sub).members)) continue;
    if (!detail::fixed_space_strictly_smaller(v, k_cls, ctx.class_of_subgroup(l_sub))) return Capacity::Zero;
  }
  return Capacity::Infinite;
}

/// The weak indexing system of finite H-sets embedding into V, windowed.
inline WeakIndexingSystem arity_support(const DimensionFunction& v, int bound) {
  const GroupContext& ctx = *v.ctx;
  WeakIndexingSystem w{&ctx, bound, {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (int level = 0; level < ctx.num_classes(); ++level) {
    const LevelLocal& lv = ctx.level(level);
    std::vector<Capacity> cap(lv.classes.size());
    for (int l = 0; l < (int)lv.classes.size(); ++l) cap[l] = orbit_capacity(v, level, l);
    for (OrbitMultiset& x : [&] { return level_window(ctx, level, bound); }()) {
      bool ok = true;
      for (auto& [c, m] : x.counts) {
        if (cap[c] == Capacity::Zero || (cap[c] == Capacity::One && m > 1)) {
          ok = false;
          break;
        }
      }
      if (ok) w.levels[level].insert(std::move(x));
    }
  }
  if (auto bad = validate(w))
    fail(Errc::InvalidSystem, std::string(v.synthetic ? "synthetic " : "") +
                                  "arity support failed window validation: " + *bad);
  return w;
}

struct AdditivityReport {
  bool equal = false;
  std::string discrepancy;  // empty when equal
};

/// Checks the join of supports against the support of the direct sum.
inline AdditivityReport check_additivity(const DimensionFunction& a, const DimensionFunction& b,
                                         int bound) {
  if (a.ctx != b.ctx && a.ctx->group().fingerprint() != b.ctx->group().fingerprint())
    fail(Errc::GroupMismatch, "additivity check across groups");
  WeakIndexingSystem lhs = join(arity_support(a, bound), arity_support(b, bound));
  WeakIndexingSystem rhs = arity_support(direct_sum(a, b), bound);
  AdditivityReport r;
  auto diff = first_discrepancy(lhs, rhs, bound);
  r.equal = !diff.has_value();
  if (diff) r.discrepancy = *diff;
  return r;
}

}  // namespace normcalc
