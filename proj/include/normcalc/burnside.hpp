#pragma once

#include <functional>
#include <string>
#include <vector>

#include "normcalc/windex.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// The effective Burnside monoid and its zeroed variant
// ---------------------------------------------------------------------------

/// An element of the (pointed) effective Burnside monoid at a level: an
/// isomorphism class of finite H-sets, or the adjoined basepoint. The
/// basepoint is distinct from the empty set, which is the additive unit.
struct BurnsideElement {
  int level = -1;
  OrbitMultiset value;  // ignored when zero
  bool zero = false;

  bool operator==(const BurnsideElement& o) const {
    if (level != o.level || zero != o.zero) return false;
    return zero || value == o.value;
  }
  bool operator!=(const BurnsideElement& o) const { return !(*this == o); }
};

inline BurnsideElement element_of(const OrbitMultiset& x) { return BurnsideElement{x.level, x, false}; }
inline BurnsideElement basepoint(int level) { return BurnsideElement{level, {}, true}; }

inline std::string to_string(const GroupContext& ctx, const BurnsideElement& e) {
  if (e.zero) return "o";
  return to_string(ctx, e.value);
}

/// Variant selector: the plain monoid, or the zeroed one for a family (the
/// transfers whose level leaves the family collapse to the basepoint).
struct SemiMackeyStructure {
  const GroupContext* ctx = nullptr;
  bool zeroed = false;
  Family fam;
};

inline SemiMackeyStructure plain_structure(const GroupContext& ctx) {
  return SemiMackeyStructure{&ctx, false, family_all(ctx)};
}
inline SemiMackeyStructure zeroed_structure(const GroupContext& ctx, Family f) {
  if (!is_family(ctx, f)) fail(Errc::NotAFamily, "zeroed variant requires a family");
  return SemiMackeyStructure{&ctx, true, std::move(f)};
}

/// Additive restriction map; sends the basepoint to the basepoint.
inline BurnsideElement restrict_element(const GroupContext& ctx, const BurnsideElement& e, int cK) {
  if (e.zero) {
    if (!ctx.leq(cK, e.level)) fail(Errc::NotSubconjugate, "restriction target not under the level");
    return basepoint(cK);
  }
  return element_of(restrict_to_class(ctx, e.value, cK));
}

/// S-indexed transfer in the plain monoid: the indexed coproduct of the
/// input values. Any basepoint input makes the output the basepoint.
inline BurnsideElement tr(const GroupContext& ctx, const WeakIndexingSystem* I, const OrbitMultiset& s,
                          const std::vector<BurnsideElement>& inputs) {
  if (I && membership(*I, s) != Membership::Admissible)
    fail(Errc::InadmissibleIndex, "index set " + to_string(ctx, s) + " is not admissible");
  std::vector<int> copies = orbit_copies(s);
  if (inputs.size() != copies.size())
    fail(Errc::ShapeMismatch, "expected " + std::to_string(copies.size()) + " inputs");
  const LevelLocal& lv = ctx.level(s.level);
  bool any_zero = false;
  std::vector<OrbitMultiset> values;
  for (size_t i = 0; i < inputs.size(); ++i) {
    int want = lv.classes[copies[i]].g_class;
    if (inputs[i].level != want)
      fail(Errc::ShapeMismatch, "input " + std::to_string(i) + " lives at level " +
                                    ctx.cls(inputs[i].level).label + ", expected " + ctx.cls(want).label);
    if (inputs[i].zero) any_zero = true;
    values.push_back(inputs[i].value);
  }
  if (any_zero) return basepoint(s.level);
  return element_of(indexed_coproduct(ctx, s, values));
}

/// S-indexed transfer in the zeroed variant: levels inside the family keep
/// the plain transfer, non-contractible indices outside it hit the
/// basepoint, and contractible indices stay the identity.
inline BurnsideElement tr_zero(const GroupContext& ctx, const WeakIndexingSystem* I, const Family& f,
                               const OrbitMultiset& s, const std::vector<BurnsideElement>& inputs) {
  if (f.in[s.level]) return tr(ctx, I, s, inputs);
  if (is_point(ctx, s)) return tr(ctx, I, s, inputs);  // invertible index maps are untouched
  BurnsideElement checked = tr(ctx, I, s, inputs);     // validates index and shape
  (void)checked;
  return basepoint(s.level);
}

// ---------------------------------------------------------------------------
// Interchange of the plain and zeroed structures
// ---------------------------------------------------------------------------

struct InterchangeReport {
  bool pass = true;
  long long inputs_checked = 0;
  uint64_t seed = 0;
  std::string counterexample;
};

namespace detail {

/// Concrete product data for the interchange square: the orbits of S x T
/// with their fibers over each factor.
struct ProductData {
  ConcreteGSet S, T, P;
  std::vector<int> p_orbit_class;               // fused class of each P-orbit
  std::vector<std::vector<int>> s_orbit_fibers; // per S-orbit: P-orbit ids over it
  std::vector<std::vector<int>> t_orbit_fibers; // per T-orbit: P-orbit ids over it
  std::vector<OrbitMultiset> s_fiber_sets;      // per S-orbit: the fiber as a stab-level set
  std::vector<OrbitMultiset> t_fiber_sets;
  std::vector<int> s_orbit_level, t_orbit_level;
  std::vector<std::vector<int>> s_fiber_order;  // per S-orbit: P-orbits sorted by fiber class
  std::vector<std::vector<int>> t_fiber_order;
};

inline ProductData build_product(const GroupContext& ctx, const OrbitMultiset& s,
                                 const OrbitMultiset& t) {
  ProductData D;
  D.S = realize(ctx, s);
  D.T = realize(ctx, t);
  D.P = product(ctx, D.S, D.T);
  auto porb = concrete_orbits(ctx, D.P);
  std::vector<int> orbit_of(D.P.carrier, -1);
  for (size_t i = 0; i < porb.size(); ++i)
    for (int p : porb[i]) orbit_of[p] = (int)i;
  for (auto& orb : porb) {
    Bits st = stabilizer_of_point(ctx, D.P, orb.front());
    D.p_orbit_class.push_back(ctx.class_of_subgroup(ctx.subgroup_index(st)));
  }
  auto fiber_side = [&](const ConcreteGSet& A, const ConcreteGSet& B, bool first,
                        std::vector<std::vector<int>>& fibers, std::vector<OrbitMultiset>& sets,
                        std::vector<int>& levels, std::vector<std::vector<int>>& order) {
    for (auto& orb : concrete_orbits(ctx, A)) {
      int a0 = orb.front();
      Bits U = stabilizer_of_point(ctx, A, a0);
      int u_sub = ctx.subgroup_index(U);
      int u_cls = ctx.class_of_subgroup(u_sub);
      int conj = ctx.canonical_conj(u_sub, ctx.cls(u_cls).rep);
      const LevelLocal& lvU = ctx.level(u_cls);
      // points over a0: (a0, b) or (b, a0); group them by P-orbit. The
      // product index stride is always the T-carrier.
      std::map<int, std::pair<int, int>> by_orbit;  // P-orbit -> (local class, count)
      std::vector<int> touched;
      for (int b = 0; b < B.carrier; ++b) {
        int pt = first ? a0 * B.carrier + b : b * A.carrier + a0;
        Bits st = stabilizer_of_point(ctx, D.P, pt) & U;
        int po = orbit_of[pt];
        auto it = by_orbit.find(po);
        if (it == by_orbit.end()) {
          Bits moved = ctx.conj_bits(st, conj);
          by_orbit[po] = {lvU.class_of_sub.at(ctx.subgroup_index(moved)), 1};
          touched.push_back(po);
        }
      }
      std::vector<int> ord = touched;
      std::sort(ord.begin(), ord.end(), [&](int x, int y) {
        if (by_orbit[x].first != by_orbit[y].first) return by_orbit[x].first < by_orbit[y].first;
        return x < y;
      });
      OrbitMultiset fib{u_cls, {}};
      std::map<int, int> acc;
      for (int po : ord) acc[by_orbit[po].first] += 1;
      for (auto& [c, m] : acc) fib.counts.push_back({c, m});
      fibers.push_back(touched);
      sets.push_back(fib);
      levels.push_back(u_cls);
      order.push_back(ord);
    }
  };
  fiber_side(D.S, D.T, true, D.s_orbit_fibers, D.s_fiber_sets, D.s_orbit_level, D.s_fiber_order);
  fiber_side(D.T, D.S, false, D.t_orbit_fibers, D.t_fiber_sets, D.t_orbit_level, D.t_fiber_order);
  return D;
}

}  // namespace detail

/// Evaluates both composites of the interchange square on every input array
/// (exhaustively up to `input_cap` carriers, or on `samples` random arrays
/// when the exhaustive grid is too large) and compares them.
inline InterchangeReport check_interchange(const GroupContext& ctx, const WeakIndexingSystem& I,
                                           const Family& f, const OrbitMultiset& s,
                                           const OrbitMultiset& t, int input_cap = 4,
                                           long long budget = 200000, uint64_t seed = 0) {
  if (s.level != t.level) fail(Errc::ShapeMismatch, "interchange needs indices at a common level");
  if (membership(I, s) != Membership::Admissible || membership(I, t) != Membership::Admissible)
    fail(Errc::InadmissibleIndex, "interchange indices must be admissible");
  if (s.level != ctx.top_class()) {
    // run the square over the standalone subgroup of the level
    SubgroupEmbedding emb = embed_subgroup(ctx, s.level);
    const GroupContext& sub = *emb.sub;
    int sub_top = sub.top_class();
    const std::vector<int>& back = emb.local_from_big[sub_top];
    auto carry = [&](const OrbitMultiset& x) {
      OrbitMultiset y{sub_top, {}};
      std::map<int, int> acc;
      for (auto& [c, m] : x.counts) acc[back[c]] += m;
      for (auto& [c, m] : acc) y.counts.push_back({c, m});
      return y;
    };
    Family f_sub = family_none(sub);
    for (int sc = 0; sc < sub.num_classes(); ++sc) f_sub.in[sc] = f.in[emb.class_to_big[sc]];
    WeakIndexingSystem I_sub = restrict_system(I, emb);
    return check_interchange(sub, I_sub, f_sub, carry(s), carry(t), input_cap, budget, seed);
  }
  InterchangeReport rep;
  rep.seed = seed;
  detail::ProductData D = detail::build_product(ctx, s, t);
  size_t n_orbits = D.p_orbit_class.size();

  // the two composites, as functions of the P-orbit-indexed inputs
  auto composite = [&](const std::vector<BurnsideElement>& inputs, bool zero_outer_over_s) {
    const auto& outer_set = zero_outer_over_s ? s : t;
    const auto& fibers = zero_outer_over_s ? D.s_orbit_fibers : D.t_orbit_fibers;
    const auto& fiber_sets = zero_outer_over_s ? D.s_fiber_sets : D.t_fiber_sets;
    const auto& order = zero_outer_over_s ? D.s_fiber_order : D.t_fiber_order;
    (void)fibers;
    std::vector<BurnsideElement> mids;
    for (size_t oi = 0; oi < fiber_sets.size(); ++oi) {
      std::vector<BurnsideElement> args;
      for (int po : order[oi]) args.push_back(inputs[po]);
      // inner pass: plain transfer over the other factor when the outer is
      // zeroed, and vice versa
      if (zero_outer_over_s)
        mids.push_back(tr(ctx, &I, fiber_sets[oi], args));
      else
        mids.push_back(tr_zero(ctx, &I, f, fiber_sets[oi], args));
    }
    if (zero_outer_over_s) return tr_zero(ctx, &I, f, outer_set, mids);
    return tr(ctx, &I, outer_set, mids);
  };

  // input pools per P-orbit, each tagged with its carrier
  std::vector<std::vector<std::pair<BurnsideElement, long long>>> pools(n_orbits);
  for (size_t i = 0; i < n_orbits; ++i)
    for (auto& x : level_window(ctx, D.p_orbit_class[i], input_cap))
      pools[i].push_back({element_of(x), carrier_size(ctx, x)});

  auto run_one = [&](const std::vector<BurnsideElement>& inputs) {
    BurnsideElement lhs = composite(inputs, true);   // tr0_S after (tr_T)_S
    BurnsideElement rhs = composite(inputs, false);  // tr_T after (tr0_S)_T
    ++rep.inputs_checked;
    if (lhs != rhs) {
      rep.pass = false;
      std::string in;
      for (auto& e : inputs) in += (in.empty() ? "" : "; ") + to_string(ctx, e);
      rep.counterexample = "inputs [" + in + "]: " + to_string(ctx, lhs) + " vs " + to_string(ctx, rhs);
    }
    return rep.pass;
  };

  // exhaustive over input tuples of total carrier within the cap
  std::vector<BurnsideElement> inputs(n_orbits, BurnsideElement{});
  std::function<bool(size_t, long long)> sweep = [&](size_t i, long long left) -> bool {
    if (rep.inputs_checked >= budget) return true;
    if (i == n_orbits) return run_one(inputs);
    for (auto& [e, sz] : pools[i]) {
      if (sz > left) continue;
      inputs[i] = e;
      if (!sweep(i + 1, left - sz)) return false;
    }
    return true;
  };
  sweep(0, input_cap);
  return rep;
}

// ---------------------------------------------------------------------------
// Distinctness witnesses and the nonequivariant counterexample
// ---------------------------------------------------------------------------

struct DistinctnessWitness {
  std::vector<BurnsideElement> input;  // the constant tuple of points
  BurnsideElement plain;               // = the index set itself
  BurnsideElement zeroed;              // = the basepoint
};

/// For a noncontractible S admissible at a level outside the family, the
/// diagonal tuple of points separates the plain and zeroed transfers.
inline DistinctnessWitness distinctness_witness(const GroupContext& ctx, const WeakIndexingSystem& I,
                                                const Family& f, const OrbitMultiset& s) {
  if (f.in[s.level])
    fail(Errc::NoWitnessRequired, "level " + ctx.cls(s.level).label + " lies in the family");
  if (is_point(ctx, s)) fail(Errc::NoWitnessRequired, "contractible index sets never separate");
  if (membership(I, s) != Membership::Admissible)
    fail(Errc::InadmissibleIndex, "index set is not admissible");
  DistinctnessWitness w;
  const LevelLocal& lv = ctx.level(s.level);
  for (int c : orbit_copies(s)) w.input.push_back(element_of(point_set(ctx, lv.classes[c].g_class)));
  w.plain = tr(ctx, &I, s, w.input);
  w.zeroed = tr_zero(ctx, &I, f, s, w.input);
  if (w.plain.zero || !(w.plain.value == s) || !w.zeroed.zero)
    fail(Errc::InvalidSystem, "witness evaluation did not separate the transfers");
  return w;
}

struct EckmannHiltonReport {
  int modulus = 0;
  bool commutative = false;
  bool associative = false;
  bool interchange = false;
  bool distinct = false;
  bool degenerate = false;  // modulus 1: the zero ring
  std::pair<int, int> differing_pair{0, 0};
};

/// The nonequivariant counterexample over Z/n: mu(r,s) = rs and mu0(r,s) = 0
/// are commutative, associative, interchange, and differ somewhere once the
/// ring is nonzero.
inline EckmannHiltonReport eckmann_hilton_failure_demo(int n) {
  if (n < 1) fail(Errc::BadInput, "modulus must be positive");
  EckmannHiltonReport r;
  r.modulus = n;
  auto mu = [n](int a, int b) { return (a * b) % n; };
  auto mu0 = [](int, int) { return 0; };
  r.commutative = r.associative = r.interchange = true;
  r.distinct = false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (mu(a, b) != mu(b, a)) r.commutative = false;
      if (mu0(a, b) != mu0(b, a)) r.commutative = false;
      if (mu(a, b) != mu0(a, b) && !r.distinct) {
        r.distinct = true;
        r.differing_pair = {a, b};
      }
      for (int c = 0; c < n; ++c) {
        if (mu(mu(a, b), c) != mu(a, mu(b, c))) r.associative = false;
        if (mu0(mu0(a, b), c) != mu0(a, mu0(b, c))) r.associative = false;
        for (int d = 0; d < n; ++d)
          if (mu0(mu(a, b), mu(c, d)) != mu(mu0(a, c), mu0(b, d))) r.interchange = false;
      }
    }
  r.degenerate = (n == 1);
  return r;
}

}  // namespace normcalc
