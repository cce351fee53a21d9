#pragma once

#include <map>
#include <string>
#include <vector>

#include "normcalc/windex.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// The homotopy span category h1 Span_I(F_G)
// ---------------------------------------------------------------------------

/// A single-orbit-apex span X <- [G/L] -> Y between fixed concrete G-sets,
/// stored by the canonical base-point images: the pair (x, y) is minimized
/// over the apex automorphisms N_G(L), so equal keys mean isomorphic spans.
struct BasicSpan {
  int apex_class = -1;
  int x = -1;
  int y = -1;

  bool operator<(const BasicSpan& o) const {
    if (apex_class != o.apex_class) return apex_class < o.apex_class;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
  bool operator==(const BasicSpan& o) const {
    return apex_class == o.apex_class && x == o.x && y == o.y;
  }
};

/// Hom-sets are free commutative monoids on basic spans.
struct SpanHom {
  std::map<BasicSpan, long long> terms;

  bool operator==(const SpanHom& o) const { return terms == o.terms; }
  void add(const BasicSpan& b, long long mult) {
    if ((terms[b] += mult) == 0) terms.erase(b);
  }
  bool zero() const { return terms.empty(); }
};

inline BasicSpan canonical_span(const GroupContext& ctx, const ConcreteGSet& X, const ConcreteGSet& Y,
                                int apex_class, int x, int y) {
  const SubgroupClass& cls = ctx.cls(apex_class);
  const Bits& N = ctx.subgroup(cls.normalizer).members;
  BasicSpan best{apex_class, x, y};
  for (int n : N.elements()) {
    int nx = X.act[n][x], ny = Y.act[n][y];
    if (nx < best.x || (nx == best.x && ny < best.y)) {
      best.x = nx;
      best.y = ny;
    }
  }
  return best;
}

/// Membership of a concrete equivariant map f : T -> S in the weak indexing
/// category of `w`: every orbit fiber of f, the empty ones included, must be
/// admissible at the orbit's level.
inline bool map_in_system(const GroupContext& ctx, const WeakIndexingSystem& w, const ConcreteGSet& T,
                          const ConcreteGSet& S, const std::vector<int>& f) {
  if (!is_equivariant(ctx, T, S, f)) fail(Errc::NotEquivariant, "map is not equivariant");
  for (auto& orbit : concrete_orbits(ctx, S)) {
    int s0 = orbit.front();
    Bits M = stabilizer_of_point(ctx, S, s0);
    int m_sub = ctx.subgroup_index(M);
    int m_cls = ctx.class_of_subgroup(m_sub);
    int conj = ctx.canonical_conj(m_sub, ctx.cls(m_cls).rep);
    const LevelLocal& lv = ctx.level(m_cls);
    // fiber over s0 as an M-set, decomposed by M-orbits
    std::vector<int> fiber;
    for (int t = 0; t < T.carrier; ++t)
      if (f[t] == s0) fiber.push_back(t);
    std::map<int, int> acc;
    std::vector<char> seen(T.carrier, 0);
    for (int t : fiber) {
      if (seen[t]) continue;
      Bits stab(ctx.group().order());
      for (int m : M.elements()) {
        seen[T.act[m][t]] = 1;
        if (T.act[m][t] == t) stab.set(m);
      }
      Bits moved = ctx.conj_bits(stab, conj);
      acc[lv.class_of_sub.at(ctx.subgroup_index(moved))] += 1;
    }
    OrbitMultiset fib{m_cls, {}};
    for (auto& [c, m] : acc) fib.counts.push_back({c, m});
    if (carrier_size(ctx, fib) > w.bound) return false;  // outside the window
    if (!w.contains(fib)) return false;
  }
  return true;
}

/// All isomorphism classes of single-orbit spans from X to Y, optionally
/// filtered by a weak indexing system on the forward leg.
inline std::vector<BasicSpan> basic_spans(const GroupContext& ctx, const ConcreteGSet& X,
                                          const ConcreteGSet& Y, const WeakIndexingSystem* I = nullptr,
                                          long long cap = 4096) {
  if ((long long)X.carrier * Y.carrier > cap * cap)
    fail(Errc::TooLarge, "span enumeration carriers exceed cap");
  // orbit data of Y for the fiber conditions
  struct YOrbit {
    int rep;
    int cls;
  };
  std::vector<YOrbit> yorbits;
  std::vector<int> orbit_of_y(Y.carrier, -1);
  for (auto& orb : concrete_orbits(ctx, Y)) {
    int id = (int)yorbits.size();
    Bits M = stabilizer_of_point(ctx, Y, orb.front());
    yorbits.push_back({orb.front(), ctx.class_of_subgroup(ctx.subgroup_index(M))});
    for (int p : orb) orbit_of_y[p] = id;
  }
  std::set<BasicSpan> out;
  for (int c = 0; c < ctx.num_classes(); ++c) {
    const Bits& L = ctx.subgroup(ctx.cls(c).rep).members;
    for (int x = 0; x < X.carrier; ++x) {
      bool xfix = true;
      for (int l : L.elements())
        if (X.act[l][x] != x) {
          xfix = false;
          break;
        }
      if (!xfix) continue;
      for (int y = 0; y < Y.carrier; ++y) {
        bool yfix = true;
        for (int l : L.elements())
          if (Y.act[l][y] != y) {
            yfix = false;
            break;
          }
        if (!yfix) continue;
        if (I) {
          // fiber over the hit orbit: [M/L] for M = Stab(y); empty fibers
          // over the missed orbits must be admissible too
          bool ok = true;
          Bits M = stabilizer_of_point(ctx, Y, y);
          int m_sub = ctx.subgroup_index(M);
          int m_cls = ctx.class_of_subgroup(m_sub);
          int conj = ctx.canonical_conj(m_sub, ctx.cls(m_cls).rep);
          Bits moved = ctx.conj_bits(L, conj);
          int local = ctx.level(m_cls).class_of_sub.at(ctx.subgroup_index(moved));
          OrbitMultiset fib = orbit_set(m_cls, local);
          if (carrier_size(ctx, fib) > I->bound || !I->contains(fib)) ok = false;
          for (size_t oi = 0; oi < yorbits.size() && ok; ++oi)
            if ((int)oi != orbit_of_y[y] && !I->contains(empty_set(yorbits[oi].cls))) ok = false;
          if (!ok) continue;
        }
        out.insert(canonical_span(ctx, X, Y, c, x, y));
      }
    }
  }
  return std::vector<BasicSpan>(out.begin(), out.end());
}

inline SpanHom identity_hom(const GroupContext& ctx, const ConcreteGSet& X) {
  SpanHom h;
  for (auto& orb : concrete_orbits(ctx, X)) {
    int p = orb.front();
    Bits S = stabilizer_of_point(ctx, X, p);
    int s_sub = ctx.subgroup_index(S);
    int s_cls = ctx.class_of_subgroup(s_sub);
    int k = ctx.canonical_conj(s_sub, ctx.cls(s_cls).rep);
    h.add(canonical_span(ctx, X, X, s_cls, X.act[k][p], X.act[k][p]), 1);
  }
  return h;
}

/// Pullback composition of two basic spans; the result is re-expressed in
/// the basic-span basis with multiplicities.
inline std::vector<std::pair<BasicSpan, long long>> compose_basic(const GroupContext& ctx,
                                                                  const ConcreteGSet& X,
                                                                  const ConcreteGSet& Y,
                                                                  const ConcreteGSet& Z,
                                                                  const BasicSpan& a, const BasicSpan& b) {
  const FiniteGroup& G = ctx.group();
  const Bits& La = ctx.subgroup(ctx.cls(a.apex_class).rep).members;
  const Bits& Lb = ctx.subgroup(ctx.cls(b.apex_class).rep).members;
  // coset tables
  auto cosets = [&](const Bits& L) {
    std::vector<int> reps, of(G.order(), -1);
    for (int g = 0; g < G.order(); ++g) {
      if (of[g] >= 0) continue;
      int id = (int)reps.size();
      reps.push_back(g);
      for (int l : L.elements()) of[G.mul(g, l)] = id;
    }
    return std::make_pair(reps, of);
  };
  auto [ra, ofa] = cosets(La);
  auto [rb, ofb] = cosets(Lb);
  // pullback points over Y: a's forward value g*a.y must equal b's backward
  // value h*b.x
  std::vector<std::pair<int, int>> pts;
  for (size_t i = 0; i < ra.size(); ++i)
    for (size_t j = 0; j < rb.size(); ++j)
      if (Y.act[ra[i]][a.y] == Y.act[rb[j]][b.x]) pts.push_back({(int)i, (int)j});
  std::map<std::pair<int, int>, char> seen;
  std::map<BasicSpan, long long> acc;
  for (auto& p0 : pts) {
    if (seen.count(p0)) continue;
    // orbit of p0 under the diagonal action
    std::vector<std::pair<int, int>> orbit;
    Bits stab(G.order());
    for (int g = 0; g < G.order(); ++g) {
      std::pair<int, int> q{ofa[G.mul(g, ra[p0.first])], ofb[G.mul(g, rb[p0.second])]};
      if (!seen.count(q)) {
        seen[q] = 1;
        orbit.push_back(q);
      }
      if (q == p0) stab.set(g);
    }
    int s_sub = ctx.subgroup_index(stab);
    if (s_sub < 0) fail(Errc::NotASubgroup, "pullback stabilizer missing");
    int s_cls = ctx.class_of_subgroup(s_sub);
    int k = ctx.canonical_conj(s_sub, ctx.cls(s_cls).rep);
    int u = X.act[k][X.act[ra[p0.first]][a.x]];
    int v = Z.act[k][Z.act[rb[p0.second]][b.y]];
    acc[canonical_span(ctx, X, Z, s_cls, u, v)] += 1;
  }
  return std::vector<std::pair<BasicSpan, long long>>(acc.begin(), acc.end());
}

inline SpanHom compose(const GroupContext& ctx, const ConcreteGSet& X, const ConcreteGSet& Y,
                       const ConcreteGSet& Z, const SpanHom& f, const SpanHom& g) {
  SpanHom out;
  for (auto& [a, ma] : f.terms)
    for (auto& [b, mb] : g.terms)
      for (auto& [c, mc] : compose_basic(ctx, X, Y, Z, a, b)) out.add(c, ma * mb * mc);
  return out;
}

// ---------------------------------------------------------------------------
// Axiom verification through spans
// ---------------------------------------------------------------------------

struct SpanCheckReport {
  bool pass = true;
  long long checks = 0;
  std::string counterexample;  // empty when pass
};

/// Builds a concrete map T -> S whose fiber over the i-th orbit of S is the
/// given multiset (placed at the orbit's exact stabilizer).
struct BuiltMap {
  ConcreteGSet total;
  std::vector<int> to_base;
};

inline BuiltMap build_map_with_fibers(const GroupContext& ctx, const ConcreteGSet& S,
                                      const std::vector<OrbitMultiset>& fibers) {
  const FiniteGroup& G = ctx.group();
  auto orbits = concrete_orbits(ctx, S);
  if (orbits.size() != fibers.size()) fail(Errc::ShapeMismatch, "one fiber per orbit of the base");
  std::vector<std::vector<int>> gen_act(G.generators().size());
  std::vector<int> to_base;
  int carrier = 0;
  struct Block {
    std::vector<int> reps, of;
    int offset;
    int base;  // G-translate target: point of S
  };
  std::vector<Block> blocks;
  for (size_t oi = 0; oi < orbits.size(); ++oi) {
    int s0 = orbits[oi].front();
    Bits M = stabilizer_of_point(ctx, S, s0);
    int m_sub = ctx.subgroup_index(M);
    int m_cls = ctx.class_of_subgroup(m_sub);
    if (fibers[oi].level != m_cls) fail(Errc::ShapeMismatch, "fiber level mismatch");
    int conj = ctx.canonical_conj(ctx.cls(m_cls).rep, m_sub);  // rep -> actual M
    const LevelLocal& lv = ctx.level(m_cls);
    for (auto& [lc, mult] : fibers[oi].counts) {
      // stabilizer of the fiber orbit, moved into M
      Bits Lm = ctx.conj_bits(ctx.subgroup(lv.classes[lc].rep).members, conj);
      for (int copy = 0; copy < mult; ++copy) {
        Block b;
        b.offset = carrier;
        b.base = s0;
        b.of.assign(G.order(), -1);
        for (int g = 0; g < G.order(); ++g) {
          if (b.of[g] >= 0) continue;
          int id = (int)b.reps.size();
          b.reps.push_back(g);
          for (int l : Lm.elements()) b.of[G.mul(g, l)] = id;
        }
        carrier += (int)b.reps.size();
        blocks.push_back(std::move(b));
      }
    }
  }
  for (size_t j = 0; j < G.generators().size(); ++j) gen_act[j].resize(carrier);
  to_base.resize(carrier);
  for (auto& b : blocks) {
    for (size_t i = 0; i < b.reps.size(); ++i) {
      to_base[b.offset + i] = S.act[b.reps[i]][b.base];
      for (size_t j = 0; j < G.generators().size(); ++j)
        gen_act[j][b.offset + i] = b.offset + b.of[G.mul(G.generators()[j], b.reps[i])];
    }
  }
  BuiltMap bm;
  bm.total = make_concrete(ctx, carrier, std::move(gen_act));
  bm.to_base = std::move(to_base);
  return bm;
}

/// Pullback stability of the weak indexing category (IC-a): maps in I stay
/// in I under pullback along arbitrary maps. Deterministic sweep over all
/// single-orbit bases plus seeded random multi-orbit samples.
inline SpanCheckReport verify_pullback_stability(const GroupContext& ctx, const WeakIndexingSystem& I,
                                                 int samples, uint64_t seed, int carrier_cap = 8) {
  SpanCheckReport rep;
  auto run_check = [&](const ConcreteGSet& S, const std::vector<OrbitMultiset>& fibers,
                       const ConcreteGSet& Y, const std::vector<int>& g) -> bool {
    BuiltMap f = build_map_with_fibers(ctx, S, fibers);
    if (!map_in_system(ctx, I, f.total, S, f.to_base)) return true;  // f not in I; skip
    auto P = pullback(ctx, f.total, Y, S, f.to_base, g);
    ++rep.checks;
    if (!map_in_system(ctx, I, P.object, Y, P.to_y)) {
      rep.pass = false;
      rep.counterexample = "pullback of an I-map along a map into " + to_string(ctx, orbit_decompose(ctx, S)) +
                           " left I (fiber " + to_string(ctx, fibers[0]) + ")";
      return false;
    }
    return true;
  };

  // sweep: single-orbit base [G/M], all admissible fibers in the window,
  // pulled back along every map from every single orbit [G/K]
  for (int m = 0; m < ctx.num_classes() && rep.pass; ++m) {
    ConcreteGSet S = realize(ctx, orbit_set(ctx.top_class(), top_local_of_class(ctx, m)));
    for (const OrbitMultiset& fib : I.levels[m]) {
      if (carrier_size(ctx, fib) > carrier_cap) continue;
      for (int k = 0; k < ctx.num_classes() && rep.pass; ++k) {
        ConcreteGSet Y = realize(ctx, orbit_set(ctx.top_class(), top_local_of_class(ctx, k)));
        for (auto& g : equivariant_maps(ctx, Y, S)) {
          if (!run_check(S, {fib}, Y, g)) break;
        }
      }
      if (!rep.pass) break;
    }
  }

  // random multi-orbit samples
  Rng rng(seed);
  auto windows = [&](int level) { return level_window(ctx, level, carrier_cap); };
  std::vector<OrbitMultiset> tops = windows(ctx.top_class());
  for (int it = 0; it < samples && rep.pass; ++it) {
    const OrbitMultiset& sbase = tops[rng.below(tops.size())];
    if (sbase.empty()) continue;
    ConcreteGSet S = realize(ctx, sbase);
    auto orbits = concrete_orbits(ctx, S);
    std::vector<OrbitMultiset> fibers;
    bool feasible = true;
    for (auto& orb : orbits) {
      Bits M = stabilizer_of_point(ctx, S, orb.front());
      int m_cls = ctx.class_of_subgroup(ctx.subgroup_index(M));
      std::vector<OrbitMultiset> pool;
      for (const OrbitMultiset& x : I.levels[m_cls])
        if (carrier_size(ctx, x) <= carrier_cap) pool.push_back(x);
      if (pool.empty()) {
        feasible = false;
        break;
      }
      fibers.push_back(pool[rng.below(pool.size())]);
    }
    if (!feasible) continue;
    const OrbitMultiset& ybase = tops[rng.below(tops.size())];
    ConcreteGSet Y = realize(ctx, ybase);
    // build one random equivariant map Y -> S orbitwise
    std::vector<int> g(Y.carrier, -1);
    bool mappable = true;
    for (auto& orb : concrete_orbits(ctx, Y)) {
      int p = orb.front();
      Bits st = stabilizer_of_point(ctx, Y, p);
      std::vector<int> targets;
      for (int s = 0; s < S.carrier; ++s) {
        bool fixed = true;
        for (int e : st.elements())
          if (S.act[e][s] != s) {
            fixed = false;
            break;
          }
        if (fixed) targets.push_back(s);
      }
      if (targets.empty()) {
        mappable = false;
        break;
      }
      int img = targets[rng.below(targets.size())];
      for (int e = 0; e < ctx.group().order(); ++e) g[Y.act[e][p]] = S.act[e][img];
    }
    if (!mappable) continue;
    run_check(S, fibers, Y, g);
  }
  return rep;
}

/// Arity-level Segal condition: basic spans into a disjoint union land in
/// exactly one summand, matching the summand hom bases.
inline SpanCheckReport verify_segal(const GroupContext& ctx, const WeakIndexingSystem& I,
                                    const OrbitMultiset& t, const OrbitMultiset& s1,
                                    const OrbitMultiset& s2) {
  SpanCheckReport rep;
  ConcreteGSet T = realize(ctx, t);
  ConcreteGSet S1 = realize(ctx, s1);
  ConcreteGSet S2 = realize(ctx, s2);
  ConcreteGSet U = realize(ctx, disjoint_union(s1, s2));
  auto a = basic_spans(ctx, T, S1, &I);
  auto b = basic_spans(ctx, T, S2, &I);
  auto u = basic_spans(ctx, T, U, &I);
  ++rep.checks;
  // realize(disjoint_union) lists s1's blocks first when s1's classes come
  // first canonically; rebuild the expected key set through translation by
  // re-enumerating instead of assuming offsets
  std::set<BasicSpan> expect;
  {
    // map: points of S1 and S2 to points of U by canonical block order
    OrbitMultiset merged = disjoint_union(s1, s2);
    // per local class, blocks of s1 precede blocks of s2 in realize(merged)
    const LevelLocal& lv = ctx.level(ctx.top_class());
    std::map<int, std::pair<int, int>> mult12;
    for (auto& [c, m] : s1.counts) mult12[c].first = m;
    for (auto& [c, m] : s2.counts) mult12[c].second = m;
    // offsets of each block in realize(merged)
    std::map<int, int> block_start;  // first block index per class
    int bi = 0;
    std::vector<int> block_class;
    for (auto& [c, m] : merged.counts)
      for (int i = 0; i < m; ++i) {
        if (block_start.find(c) == block_start.end()) block_start[c] = bi;
        block_class.push_back(c);
        ++bi;
      }
    auto block_offset = [&](int block) {
      int off = 0;
      for (int i = 0; i < block; ++i) off += lv.classes[block_class[i]].orbit_size;
      return off;
    };
    auto translate = [&](const ConcreteGSet& Spart, const OrbitMultiset& part, bool second,
                         const std::vector<BasicSpan>& spans) {
      // block index of each point of Spart within realize(merged)
      std::vector<int> point_map(Spart.carrier, -1);
      int local_bi = 0, off_in = 0;
      for (auto& [c, m] : part.counts) {
        for (int i = 0; i < m; ++i) {
          int merged_block = block_start[c] + (second ? mult12[c].first : 0) + i;
          int out_off = block_offset(merged_block);
          int osz = lv.classes[c].orbit_size;
          for (int p = 0; p < osz; ++p) point_map[off_in + p] = out_off + p;
          off_in += osz;
          ++local_bi;
        }
      }
      (void)local_bi;
      std::set<BasicSpan> keys;
      for (const BasicSpan& sp : spans)
        keys.insert(canonical_span(ctx, T, U, sp.apex_class, sp.x, point_map[sp.y]));
      return keys;
    };
    auto k1 = translate(S1, s1, false, a);
    auto k2 = translate(S2, s2, true, b);
    expect.insert(k1.begin(), k1.end());
    expect.insert(k2.begin(), k2.end());
    if ((int)expect.size() != (int)k1.size() + (int)k2.size()) {
      rep.pass = false;
      rep.counterexample = "summand hom bases overlap after translation";
      return rep;
    }
  }
  std::set<BasicSpan> got(u.begin(), u.end());
  if (got != expect) {
    rep.pass = false;
    rep.counterexample = "basis of Hom(T, S1 + S2) does not match Hom(T,S1) + Hom(T,S2): " +
                         std::to_string(got.size()) + " vs " + std::to_string(expect.size());
  }
  return rep;
}

}  // namespace normcalc
