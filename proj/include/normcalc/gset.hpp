#pragma once

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "normcalc/group.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// OrbitMultiset: an isomorphism class of finite H-sets
// ---------------------------------------------------------------------------

/// Multiset of orbit types of the level representative H: pairs of
/// (local subgroup class, multiplicity), sorted with zero entries omitted.
/// The empty multiset is the empty H-set.
struct OrbitMultiset {
  int level = -1;  // subgroup class of the ambient group
  std::vector<std::pair<int, int>> counts;

  bool operator==(const OrbitMultiset& o) const { return level == o.level && counts == o.counts; }
  bool operator!=(const OrbitMultiset& o) const { return !(*this == o); }
  bool operator<(const OrbitMultiset& o) const {
    if (level != o.level) return level < o.level;
    return counts < o.counts;
  }
  bool empty() const { return counts.empty(); }

  void canonicalize() {
    std::map<int, int> m;
    for (auto& [c, k] : counts)
      if (k != 0) m[c] += k;
    counts.assign(m.begin(), m.end());
    for (auto& [c, k] : counts)
      if (k < 0) fail(Errc::BadInput, "negative orbit multiplicity");
  }
};

inline OrbitMultiset empty_set(int level) { return OrbitMultiset{level, {}}; }

inline int point_local_class(const GroupContext& ctx, int level) {
  return ctx.level(level).class_of_sub.at(ctx.level(level).parent);
}

/// The one-point H-set *_H.
inline OrbitMultiset point_set(const GroupContext& ctx, int level) {
  return OrbitMultiset{level, {{point_local_class(ctx, level), 1}}};
}

inline OrbitMultiset orbit_set(int level, int local_class, int mult = 1) {
  OrbitMultiset x{level, {{local_class, mult}}};
  x.canonicalize();
  return x;
}

inline OrbitMultiset disjoint_union(const OrbitMultiset& a, const OrbitMultiset& b) {
  if (a.level != b.level) fail(Errc::ShapeMismatch, "disjoint union across levels");
  OrbitMultiset r = a;
  r.counts.insert(r.counts.end(), b.counts.begin(), b.counts.end());
  r.canonicalize();
  return r;
}

inline long long carrier_size(const GroupContext& ctx, const OrbitMultiset& x) {
  long long total = 0;
  for (auto& [c, m] : x.counts) total += (long long)m * ctx.level(x.level).classes[c].orbit_size;
  return total;
}

inline int orbit_count(const OrbitMultiset& x) {
  int total = 0;
  for (auto& [c, m] : x.counts) total += m;
  return total;
}

inline bool is_point(const GroupContext& ctx, const OrbitMultiset& x) {
  return x.counts.size() == 1 && x.counts[0].second == 1 &&
         x.counts[0].first == point_local_class(ctx, x.level);
}

inline std::string to_string(const GroupContext& ctx, const OrbitMultiset& x) {
  if (x.counts.empty()) return "0";
  const LevelLocal& lv = ctx.level(x.level);
  std::string s;
  for (auto& [c, m] : x.counts) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += "[" + ctx.cls(x.level).label + "/" + lv.classes[c].label + "]";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Marks (fixed-point counts)
// ---------------------------------------------------------------------------

struct MarkVector {
  int level = -1;
  std::vector<long long> entries;  // per local class of the level

  bool operator==(const MarkVector& o) const { return level == o.level && entries == o.entries; }
};

inline MarkVector marks(const GroupContext& ctx, const OrbitMultiset& x) {
  const LevelLocal& lv = ctx.level(x.level);
  MarkVector mv{x.level, std::vector<long long>(lv.classes.size(), 0)};
  for (int l = 0; l < (int)lv.classes.size(); ++l)
    for (auto& [c, m] : x.counts) mv.entries[l] += (long long)m * lv.mark[l][c];
  return mv;
}

/// Inverts the table of marks by back-substitution; the matrix is upper
/// triangular in canonical class order with the Weyl order on the diagonal.
inline OrbitMultiset iso_class_from_marks(const GroupContext& ctx, const MarkVector& mv) {
  const LevelLocal& lv = ctx.level(mv.level);
  int n = (int)lv.classes.size();
  if ((int)mv.entries.size() != n) fail(Errc::ShapeMismatch, "mark vector has wrong length");
  std::vector<long long> rem = mv.entries;
  std::vector<long long> mult(n, 0);
  for (int k = n - 1; k >= 0; --k) {
    long long diag = lv.mark[k][k];
    if (rem[k] % diag != 0)
      fail(Errc::NotRealizable,
           "non-integral multiplicity at class " + lv.classes[k].label + " of level " + ctx.cls(mv.level).label);
    long long m = rem[k] / diag;
    if (m < 0)
      fail(Errc::NotRealizable,
           "negative multiplicity at class " + lv.classes[k].label + " of level " + ctx.cls(mv.level).label);
    mult[k] = m;
    if (m != 0)
      for (int l = 0; l < n; ++l) rem[l] -= m * lv.mark[l][k];
  }
  for (int l = 0; l < n; ++l)
    if (rem[l] != 0) fail(Errc::NotRealizable, "mark vector is not realizable at " + lv.classes[l].label);
  OrbitMultiset out{mv.level, {}};
  for (int k = 0; k < n; ++k)
    if (mult[k]) out.counts.push_back({k, (int)mult[k]});
  return out;
}

/// Fixed points |X^S| for an arbitrary subgroup S of the level representative.
inline long long mark_at_subgroup(const GroupContext& ctx, const OrbitMultiset& x, int sub) {
  const LevelLocal& lv = ctx.level(x.level);
  auto it = lv.class_of_sub.find(sub);
  if (it == lv.class_of_sub.end()) fail(Errc::NotSubgroup, "subgroup does not lie in the level representative");
  return marks(ctx, x).entries[it->second];
}

// ---------------------------------------------------------------------------
// Restriction / induction / coinduction
// ---------------------------------------------------------------------------

/// Res_K X for an actual subgroup K of the level representative, expressed
/// at the subgroup class of K (Mackey double coset formula).
inline OrbitMultiset restrict_to(const GroupContext& ctx, const OrbitMultiset& x, int K_sub) {
  const LevelLocal& lv = ctx.level(x.level);
  const Bits& H = ctx.subgroup(lv.parent).members;
  const Bits& K = ctx.subgroup(K_sub).members;
  if (!K.subset_of(H)) fail(Errc::NotSubconjugate, "restriction target is not a subgroup of the level");
  int cK = ctx.class_of_subgroup(K_sub);
  int conj = ctx.canonical_conj(K_sub, ctx.cls(cK).rep);
  const LevelLocal& lvK = ctx.level(cK);
  OrbitMultiset out{cK, {}};
  std::map<int, int> acc;
  for (auto& [lcls, m] : x.counts) {
    const Bits& L = ctx.subgroup(lv.classes[lcls].rep).members;
    for (auto& [g, inter] : ctx.double_cosets(H, K, L)) {
      (void)g;
      Bits moved = ctx.conj_bits(inter, conj);
      int si = ctx.subgroup_index(moved);
      acc[lvK.class_of_sub.at(si)] += m;
    }
  }
  out.counts.assign(acc.begin(), acc.end());
  return out;
}

/// Restriction along the canonical subgroup of class cK inside the level.
inline OrbitMultiset restrict_to_class(const GroupContext& ctx, const OrbitMultiset& x, int cK) {
  int K_sub = ctx.canonical_member_in(cK, x.level);
  if (K_sub < 0) fail(Errc::NotSubconjugate, "class " + ctx.cls(cK).label + " is not subconjugate to the level");
  return restrict_to(ctx, x, K_sub);
}

/// Ind_K^H X along the canonical embedding of class cK into level cH:
/// [K/L] becomes [H/L], carried by the least local class of cH in class cK.
inline OrbitMultiset induce_to_class(const GroupContext& ctx, const OrbitMultiset& x, int cH) {
  const LevelLocal& lvH = ctx.level(cH);
  int target_local = -1;
  for (int l = 0; l < (int)lvH.classes.size(); ++l)
    if (lvH.classes[l].g_class == x.level) {
      target_local = l;
      break;
    }
  if (target_local < 0)
    fail(Errc::NotSubconjugate,
         "class " + ctx.cls(x.level).label + " is not subconjugate to " + ctx.cls(cH).label);
  const std::vector<int>& mp = ctx.induction_map(cH, target_local);
  OrbitMultiset out{cH, {}};
  std::map<int, int> acc;
  for (auto& [c, m] : x.counts) acc[mp[c]] += m;
  out.counts.assign(acc.begin(), acc.end());
  return out;
}

/// CoInd_K^H X computed through marks: |CoInd(X)^M| is the product over
/// double cosets MgK of |X^{(g^-1 M g) ∩ K}|, then inverted.
inline OrbitMultiset coinduce_to_class(const GroupContext& ctx, const OrbitMultiset& x, int cH,
                                       long long carrier_cap = (1ll << 40)) {
  const LevelLocal& lvH = ctx.level(cH);
  int target_local = -1;
  for (int l = 0; l < (int)lvH.classes.size(); ++l)
    if (lvH.classes[l].g_class == x.level) {
      target_local = l;
      break;
    }
  if (target_local < 0)
    fail(Errc::NotSubconjugate,
         "class " + ctx.cls(x.level).label + " is not subconjugate to " + ctx.cls(cH).label);
  int K0 = lvH.classes[target_local].rep;  // canonical copy inside H_rep
  int conj = ctx.canonical_conj(ctx.cls(x.level).rep, K0);
  const Bits& H = ctx.subgroup(lvH.parent).members;
  const Bits& K = ctx.subgroup(K0).members;
  MarkVector xm = marks(ctx, x);
  const LevelLocal& lvK = ctx.level(x.level);
  MarkVector out{cH, std::vector<long long>(lvH.classes.size(), 1)};
  for (int l = 0; l < (int)lvH.classes.size(); ++l) {
    const Bits& M = ctx.subgroup(lvH.classes[l].rep).members;
    long long prod = 1;
    for (auto& [g, inter] : ctx.double_cosets(H, M, K)) {
      Bits s = ctx.conj_bits(inter, ctx.group().inv(g));           // (g^-1 M g) ∩ K
      Bits srep = ctx.conj_bits(s, ctx.group().inv(conj));         // into K-class currency
      int si = ctx.subgroup_index(srep);
      long long f = xm.entries[lvK.class_of_sub.at(si)];
      if (f != 0 && prod > carrier_cap / f) fail(Errc::TooLarge, "coinduced set exceeds carrier cap");
      prod *= f;
    }
    out.entries[l] = prod;
  }
  return iso_class_from_marks(ctx, out);
}

// ---------------------------------------------------------------------------
// Indexed coproducts
// ---------------------------------------------------------------------------

/// The orbit copies of S in canonical order: one entry per copy, giving the
/// local class at S's level. Inputs of indexed operations align with this.
inline std::vector<int> orbit_copies(const OrbitMultiset& s) {
  std::vector<int> out;
  for (auto& [c, m] : s.counts)
    for (int i = 0; i < m; ++i) out.push_back(c);
  return out;
}

/// ∐_U^S X_U: disjoint union of the canonical inductions of each assigned
/// set; family[i] lives at the fused class of the i-th orbit copy of S.
inline OrbitMultiset indexed_coproduct(const GroupContext& ctx, const OrbitMultiset& s,
                                       const std::vector<OrbitMultiset>& family) {
  std::vector<int> copies = orbit_copies(s);
  if (family.size() != copies.size())
    fail(Errc::ShapeMismatch, "family size " + std::to_string(family.size()) + " does not match " +
                                  std::to_string(copies.size()) + " orbit copies");
  const LevelLocal& lv = ctx.level(s.level);
  std::map<int, int> acc;
  for (size_t i = 0; i < copies.size(); ++i) {
    const LocalClass& lc = lv.classes[copies[i]];
    if (family[i].level != lc.g_class)
      fail(Errc::ShapeMismatch, "family entry " + std::to_string(i) + " lives at level " +
                                    ctx.cls(family[i].level).label + ", expected " + ctx.cls(lc.g_class).label);
    const std::vector<int>& mp = ctx.induction_map(s.level, copies[i]);
    for (auto& [c, m] : family[i].counts) acc[mp[c]] += m;
  }
  OrbitMultiset out{s.level, {}};
  for (auto& [c, m] : acc)
    if (m) out.counts.push_back({c, m});
  return out;
}

// ---------------------------------------------------------------------------
// Concrete G-sets (carrier + action), used where actual maps matter
// ---------------------------------------------------------------------------

struct ConcreteGSet {
  int carrier = 0;
  std::vector<std::vector<int>> gen_act;  // one permutation per group generator
  std::vector<std::vector<int>> act;      // one permutation per group element
};

/// Builds the full element action from generator permutations and checks the
/// extension is well defined (the multiplication table relations hold).
inline ConcreteGSet make_concrete(const GroupContext& ctx, int carrier,
                                  std::vector<std::vector<int>> gen_act) {
  const FiniteGroup& G = ctx.group();
  if ((int)gen_act.size() != (int)G.generators().size())
    fail(Errc::BadInput, "one action permutation per group generator required");
  for (auto& p : gen_act) {
    if ((int)p.size() != carrier) fail(Errc::BadInput, "action permutation has wrong degree");
    std::vector<char> seen(carrier, 0);
    for (int v : p) {
      if (v < 0 || v >= carrier || seen[v]) fail(Errc::BadInput, "action entry is not a permutation");
      seen[v] = 1;
    }
  }
  ConcreteGSet X;
  X.carrier = carrier;
  X.gen_act = std::move(gen_act);
  X.act.assign(G.order(), {});
  std::vector<int> idp(carrier);
  std::iota(idp.begin(), idp.end(), 0);
  X.act[0] = idp;
  std::vector<int> order{0};
  std::vector<char> have(G.order(), 0);
  have[0] = 1;
  for (size_t q = 0; q < order.size(); ++q)
    for (size_t j = 0; j < G.generators().size(); ++j) {
      int y = G.mul(order[q], G.generators()[j]);
      if (have[y]) continue;
      have[y] = 1;
      // act[x*g] = act[x] ∘ act[g]
      std::vector<int> p(carrier);
      for (int t = 0; t < carrier; ++t) p[t] = X.act[order[q]][X.gen_act[j][t]];
      X.act[y] = std::move(p);
      order.push_back(y);
    }
  for (int a = 0; a < G.order(); ++a)
    for (size_t j = 0; j < G.generators().size(); ++j) {
      int g = G.generators()[j];
      int ag = G.mul(a, g);
      for (int t = 0; t < carrier; ++t)
        if (X.act[ag][t] != X.act[a][X.gen_act[j][t]])
          fail(Errc::BadInput, "generator permutations do not extend to a group action");
    }
  return X;
}

/// Canonical concrete realization of a top-level orbit multiset: disjoint
/// cosets of the local class representatives, listed in canonical order.
inline ConcreteGSet realize(const GroupContext& ctx, const OrbitMultiset& x) {
  if (x.level != ctx.top_class()) fail(Errc::BadInput, "realize expects a top-level multiset");
  const FiniteGroup& G = ctx.group();
  const LevelLocal& lv = ctx.level(x.level);
  // coset tables per orbit copy
  std::vector<std::vector<int>> coset_rep;   // per block: representative of each coset
  std::vector<std::vector<int>> coset_of;    // per block: group element -> coset id
  for (auto& [c, m] : x.counts) {
    const Bits& K = ctx.subgroup(lv.classes[c].rep).members;
    std::vector<int> reps, of(G.order(), -1);
    for (int g = 0; g < G.order(); ++g) {
      if (of[g] >= 0) continue;
      int id = (int)reps.size();
      reps.push_back(g);
      for (int k : K.elements()) of[G.mul(g, k)] = id;
    }
    for (int i = 0; i < m; ++i) {
      coset_rep.push_back(reps);
      coset_of.push_back(of);
    }
  }
  int carrier = 0;
  std::vector<int> offset;
  for (auto& r : coset_rep) {
    offset.push_back(carrier);
    carrier += (int)r.size();
  }
  std::vector<std::vector<int>> gen_act;
  for (int g : G.generators()) {
    std::vector<int> p(carrier);
    for (size_t b = 0; b < coset_rep.size(); ++b)
      for (size_t i = 0; i < coset_rep[b].size(); ++i)
        p[offset[b] + i] = offset[b] + coset_of[b][G.mul(g, coset_rep[b][i])];
    gen_act.push_back(std::move(p));
  }
  if (G.generators().empty()) gen_act.clear();
  return make_concrete(ctx, carrier, std::move(gen_act));
}

inline Bits stabilizer_of_point(const GroupContext& ctx, const ConcreteGSet& X, int pt) {
  Bits s(ctx.group().order());
  for (int e = 0; e < ctx.group().order(); ++e)
    if (X.act[e][pt] == pt) s.set(e);
  return s;
}

/// Orbits with canonical representatives (least point per orbit).
inline std::vector<std::vector<int>> concrete_orbits(const GroupContext& ctx, const ConcreteGSet& X) {
  std::vector<char> seen(X.carrier, 0);
  std::vector<std::vector<int>> orbits;
  for (int p = 0; p < X.carrier; ++p) {
    if (seen[p]) continue;
    std::set<int> orb;
    for (int e = 0; e < ctx.group().order(); ++e) orb.insert(X.act[e][p]);
    orbits.push_back(std::vector<int>(orb.begin(), orb.end()));
    for (int q : orbits.back()) seen[q] = 1;
  }
  return orbits;
}

inline OrbitMultiset orbit_decompose(const GroupContext& ctx, const ConcreteGSet& X) {
  const LevelLocal& lv = ctx.level(ctx.top_class());
  std::map<int, int> acc;
  for (auto& orb : concrete_orbits(ctx, X)) {
    int si = ctx.subgroup_index(stabilizer_of_point(ctx, X, orb.front()));
    if (si < 0) fail(Errc::NotASubgroup, "point stabilizer missing from lattice");
    acc[lv.class_of_sub.at(si)] += 1;
  }
  OrbitMultiset out{ctx.top_class(), {}};
  for (auto& [c, m] : acc) out.counts.push_back({c, m});
  return out;
}

inline bool is_equivariant(const GroupContext&, const ConcreteGSet& X, const ConcreteGSet& Y,
                           const std::vector<int>& f) {
  if ((int)f.size() != X.carrier) return false;
  for (int v : f)
    if (v < 0 || v >= Y.carrier) return false;
  for (size_t j = 0; j < X.gen_act.size(); ++j)
    for (int t = 0; t < X.carrier; ++t)
      if (f[X.gen_act[j][t]] != Y.gen_act[j][f[t]]) return false;
  return true;
}

/// All equivariant maps X -> Y: an orbit representative with stabilizer S
/// can go to any point of Y^S.
inline std::vector<std::vector<int>> equivariant_maps(const GroupContext& ctx, const ConcreteGSet& X,
                                                      const ConcreteGSet& Y, long long cap = 100000,
                                                      int carrier_cap = 24) {
  if (X.carrier > carrier_cap || Y.carrier > carrier_cap)
    fail(Errc::TooLarge, "map enumeration carriers exceed the cap of " + std::to_string(carrier_cap));
  auto orbits = concrete_orbits(ctx, X);
  std::vector<int> reps;
  std::vector<std::vector<int>> targets;
  long long total = 1;
  for (auto& orb : orbits) {
    int p = orb.front();
    Bits s = stabilizer_of_point(ctx, X, p);
    std::vector<int> tg;
    for (int y = 0; y < Y.carrier; ++y) {
      bool fixed = true;
      for (int e : s.elements())
        if (Y.act[e][y] != y) {
          fixed = false;
          break;
        }
      if (fixed) tg.push_back(y);
    }
    reps.push_back(p);
    total *= std::max<long long>(1, (long long)tg.size());
    if (total > cap) fail(Errc::TooLarge, "equivariant map enumeration exceeds cap");
    targets.push_back(std::move(tg));
    if (targets.back().empty()) return {};
  }
  // expand orbit-rep choices into full maps
  std::vector<std::vector<int>> out;
  std::vector<size_t> choice(orbits.size(), 0);
  for (;;) {
    std::vector<int> f(X.carrier, -1);
    for (size_t i = 0; i < orbits.size(); ++i) {
      int p = reps[i], y = targets[i][choice[i]];
      for (int e = 0; e < ctx.group().order(); ++e) f[X.act[e][p]] = Y.act[e][y];
    }
    out.push_back(std::move(f));
    size_t k = 0;
    while (k < orbits.size() && ++choice[k] == targets[k].size()) choice[k++] = 0;
    if (k == orbits.size()) break;
  }
  return out;
}

struct PullbackResult {
  ConcreteGSet object;
  std::vector<int> to_x;  // projection to X
  std::vector<int> to_y;  // projection to Y
};

/// {(x, y) : f(x) = g(y)} with the diagonal action.
inline PullbackResult pullback(const GroupContext& ctx, const ConcreteGSet& X, const ConcreteGSet& Y,
                               const ConcreteGSet& Z, const std::vector<int>& f, const std::vector<int>& g) {
  if (!is_equivariant(ctx, X, Z, f)) fail(Errc::NotEquivariant, "first leg is not equivariant");
  if (!is_equivariant(ctx, Y, Z, g)) fail(Errc::NotEquivariant, "second leg is not equivariant");
  PullbackResult R;
  std::vector<std::pair<int, int>> pts;
  for (int x = 0; x < X.carrier; ++x)
    for (int y = 0; y < Y.carrier; ++y)
      if (f[x] == g[y]) pts.push_back({x, y});
  std::map<std::pair<int, int>, int> idx;
  for (size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = (int)i;
  std::vector<std::vector<int>> gen_act;
  for (size_t j = 0; j < X.gen_act.size(); ++j) {
    std::vector<int> p(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
      p[i] = idx.at({X.gen_act[j][pts[i].first], Y.gen_act[j][pts[i].second]});
    gen_act.push_back(std::move(p));
  }
  R.object = make_concrete(ctx, (int)pts.size(), std::move(gen_act));
  for (auto& [x, y] : pts) {
    R.to_x.push_back(x);
    R.to_y.push_back(y);
  }
  return R;
}

inline ConcreteGSet product(const GroupContext& ctx, const ConcreteGSet& X, const ConcreteGSet& Y) {
  ConcreteGSet Z;
  std::vector<std::vector<int>> gen_act;
  for (size_t j = 0; j < X.gen_act.size(); ++j) {
    std::vector<int> p((size_t)X.carrier * Y.carrier);
    for (int x = 0; x < X.carrier; ++x)
      for (int y = 0; y < Y.carrier; ++y)
        p[(size_t)x * Y.carrier + y] = X.gen_act[j][x] * Y.carrier + Y.gen_act[j][y];
    gen_act.push_back(std::move(p));
  }
  return make_concrete(ctx, X.carrier * Y.carrier, std::move(gen_act));
}

/// Top-level local class index of a subgroup class (the two orderings agree,
/// but go through the table rather than assuming it).
inline int top_local_of_class(const GroupContext& ctx, int c) {
  return ctx.level(ctx.top_class()).class_of_sub.at(ctx.cls(c).rep);
}

}  // namespace normcalc
