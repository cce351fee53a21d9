#pragma once

// Independent reference implementations used to cross-check the main
// computation paths. Each oracle deliberately takes a different route than
// the code it validates and shares only the group substrate with it.

#include <numeric>
#include <optional>

#include "normcalc/repsupport.hpp"
#include "normcalc/transfer.hpp"

namespace normcalc::oracle {

// ---------------------------------------------------------------------------
// Exact rational arithmetic for the embedding search
// ---------------------------------------------------------------------------

struct Frac {
  long long num = 0, den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
  Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
  Frac operator/(const Frac& o) const { return Frac(num * o.den, den * o.num); }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Frac& o) const { return !(*this == o); }
  bool is_zero() const { return num == 0; }
};

using Vec = std::vector<Frac>;
using Mat = std::vector<Vec>;  // row major

inline Vec mat_apply(const Mat& m, const Vec& v) {
  Vec r(m.size(), Frac(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero()) r[i] = r[i] + m[i][j] * v[j];
  return r;
}

/// Basis of the kernel of m (rational Gaussian elimination).
inline std::vector<Vec> kernel_basis(Mat m, int ncols) {
  int nrows = (int)m.size();
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int piv = -1;
    for (int i = r; i < nrows; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    Frac inv = Frac(1) / m[r][c];
    for (int j = 0; j < ncols; ++j) m[r][j] = m[r][j] * inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Frac f = m[i][c];
      for (int j = 0; j < ncols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(ncols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    Vec b(ncols, Frac(0));
    b[c] = Frac(1);
    for (int i = 0; i < (int)pivot_col.size(); ++i) b[pivot_col[i]] = Frac(0) - m[i][c];
    basis.push_back(std::move(b));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Geometric embedding oracle for arity supports
// ---------------------------------------------------------------------------

/// Explicit rational model of a block representation restricted to the
/// representative of `level`: one matrix per element of that subgroup,
/// indexed by ambient element id.
struct RationalRep {
  int dim = 0;
  std::vector<Mat> action;  // only entries for elements of the level rep are used
  std::vector<int> elems;   // the level representative's elements
};

inline RationalRep build_rational_rep(const DimensionFunction& v, int level) {
  if (v.synthetic) fail(Errc::BadInput, "embedding oracle needs constructed representations");
  const GroupContext& ctx = *v.ctx;
  const FiniteGroup& G = ctx.group();
  RationalRep rep;
  rep.elems = ctx.subgroup(ctx.cls(level).rep).members.elements();
  // assemble block sizes
  struct Piece {
    const RepBlock* b;
    ConcreteGSet conc;  // for Perm blocks
    int copies;
    int dim;
  };
  std::vector<Piece> pieces;
  for (const RepBlock& b : v.blocks) {
    if (b.mult.is_inf()) fail(Errc::TooLarge, "embedding oracle needs finite multiplicities");
    Piece p{&b, {}, (int)b.mult.v, 0};
    if (b.kind == RepBlock::Kind::Perm) {
      p.conc = realize(ctx, b.perm);
      p.dim = p.conc.carrier;
    } else {
      p.dim = 1;
    }
    pieces.push_back(std::move(p));
  }
  for (auto& p : pieces) rep.dim += p.dim * p.copies;
  rep.action.assign(G.order(), {});
  for (int g : rep.elems) {
    Mat m(rep.dim, Vec(rep.dim, Frac(0)));
    int off = 0;
    for (auto& p : pieces)
      for (int c = 0; c < p.copies; ++c) {
        if (p.b->kind == RepBlock::Kind::Perm) {
          for (int t = 0; t < p.dim; ++t) m[off + p.conc.act[g][t]][off + t] = Frac(1);
        } else {
          bool in_kernel = ctx.subgroup(ctx.cls(p.b->kernel_class).rep).members.test(g);
          m[off][off] = Frac(in_kernel ? 1 : -1);
        }
        off += p.dim;
      }
    rep.action[g] = std::move(m);
  }
  return rep;
}

/// Searches for an equivariant embedding of S (an H-set at `level`) into
/// the representation, by assigning each orbit a rational point with the
/// exact stabilizer and pairwise disjoint translates. Small grid; sound for
/// the desk-scale representations it is used on.
inline bool embeds(const DimensionFunction& v, const OrbitMultiset& s) {
  const GroupContext& ctx = *v.ctx;
  int level = s.level;
  RationalRep rep = build_rational_rep(v, level);
  static const std::vector<Frac> kGrid = {Frac(0),     Frac(1),     Frac(-1),    Frac(2),    Frac(-2),
                                          Frac(1, 2),  Frac(-1, 2), Frac(3),     Frac(-3),   Frac(1, 3),
                                          Frac(-1, 3), Frac(2, 3),  Frac(-2, 3), Frac(5, 2), Frac(-5, 2)};
  const LevelLocal& lv = ctx.level(level);
  std::vector<Vec> used_points;

  std::function<bool(size_t, int)> place = [&](size_t ci, int copies_left) -> bool {
    if (ci == s.counts.size()) return true;
    if (copies_left == 0) {
      size_t nj = ci + 1;
      return place(nj, nj < s.counts.size() ? s.counts[nj].second : 0);
    }
    int local = s.counts[ci].first;
    const Bits& K = ctx.subgroup(lv.classes[local].rep).members;
    // fixed-space basis for K
    Mat stack;
    for (int k : K.elements()) {
      if (k == 0) continue;
      const Mat& a = rep.action[k];
      for (int i = 0; i < rep.dim; ++i) {
        Vec row = a[i];
        row[i] = row[i] - Frac(1);
        stack.push_back(std::move(row));
      }
    }
    if (stack.empty()) stack.push_back(Vec(rep.dim, Frac(0)));
    std::vector<Vec> basis = kernel_basis(stack, rep.dim);
    int d = (int)basis.size();
    // grid over the fixed subspace coefficients
    std::vector<int> idx(d, 0);
    for (;;) {
      Vec p(rep.dim, Frac(0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < rep.dim; ++j)
          if (!basis[i][j].is_zero()) p[j] = p[j] + kGrid[idx[i]] * basis[i][j];
      // exact stabilizer within the level
      bool exact = true;
      for (int h : rep.elems) {
        bool fixes = (mat_apply(rep.action[h], p) == p);
        if (fixes != K.test(h)) {
          exact = false;
          break;
        }
      }
      if (exact) {
        // collect distinct translates; exactness makes them a full orbit
        std::vector<Vec> orbit;
        for (int h : rep.elems) {
          Vec q = mat_apply(rep.action[h], p);
          bool dup = false;
          for (const Vec& u : orbit)
            if (u == q) {
              dup = true;
              break;
            }
          if (!dup) orbit.push_back(std::move(q));
        }
        bool clean = ((int)orbit.size() == lv.classes[local].orbit_size);
        for (const Vec& q : orbit) {
          if (!clean) break;
          for (const Vec& u : used_points)
            if (u == q) {
              clean = false;
              break;
            }
        }
        if (clean) {
          size_t mark = used_points.size();
          for (auto& q : orbit) used_points.push_back(q);
          if (place(ci, copies_left - 1)) return true;
          used_points.resize(mark);
        }
      }
      int k = 0;
      while (k < d && ++idx[k] == (int)kGrid.size()) idx[k++] = 0;
      if (k == d || d == 0) break;
    }
    return false;
  };
  if (s.counts.empty()) return true;
  return place(0, s.counts[0].second);
}

// ---------------------------------------------------------------------------
// Explicit coinduction (function-set construction)
// ---------------------------------------------------------------------------

/// Map_K(G, X) built point by point for the class representative of cK,
/// decomposed into orbits. Cross-checks the marks-formula coinduction.
inline OrbitMultiset coinduce_explicit(const GroupContext& ctx, const OrbitMultiset& x,
                                       long long cap = 300000) {
  int cK = x.level;
  const FiniteGroup& G = ctx.group();
  const Bits& K = ctx.subgroup(ctx.cls(cK).rep).members;
  // right-coset representatives K\G (least element per coset)
  std::vector<int> reps, coset_of(G.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    if (coset_of[g] >= 0) continue;
    int id = (int)reps.size();
    reps.push_back(g);
    for (int k : K.elements()) coset_of[G.mul(k, g)] = id;
  }
  // realize x as a concrete set over the standalone subgroup
  SubgroupEmbedding emb = embed_subgroup(ctx, cK);
  const GroupContext& sub = *emb.sub;
  OrbitMultiset xs{sub.top_class(), {}};
  {
    const std::vector<int>& back = emb.local_from_big[sub.top_class()];
    std::map<int, int> acc;
    for (auto& [c, m] : x.counts) acc[back[c]] += m;
    for (auto& [c, m] : acc) xs.counts.push_back({c, m});
  }
  ConcreteGSet Xc = realize(sub, xs);
  std::vector<int> big_to_sub(G.order(), -1);
  for (int i = 0; i < (int)emb.to_big.size(); ++i) big_to_sub[emb.to_big[i]] = i;
  auto act_K = [&](int k_big, int pt) { return Xc.act[big_to_sub[k_big]][pt]; };

  long long total = 1;
  for (size_t i = 0; i < reps.size(); ++i) {
    total *= std::max(1, Xc.carrier);
    if (total > cap) fail(Errc::TooLarge, "explicit coinduction exceeds cap");
  }
  if (Xc.carrier == 0) {
    // no functions unless G/K is empty, which it never is
    return empty_set(ctx.top_class());
  }
  // enumerate all functions f: reps -> X; act: (g.f)(r_i) = k_ij . f(r_j)
  // where r_i g = k_ij r_j
  int nf = (int)total;
  int nr = (int)reps.size();
  auto decode = [&](int code, int i) {
    for (int t = 0; t < i; ++t) code /= Xc.carrier;
    return code % Xc.carrier;
  };
  std::vector<std::vector<int>> gen_act;
  std::vector<int> gens = G.generators();
  for (int g : gens) {
    std::vector<int> p(nf);
    for (int code = 0; code < nf; ++code) {
      int out = 0, mulbase = 1;
      for (int i = 0; i < nr; ++i) {
        int rg = G.mul(reps[i], g);
        int j = coset_of[rg];
        int k = G.mul(rg, G.inv(reps[j]));  // r_i g = k r_j
        out += act_K(k, decode(code, j)) * mulbase;
        mulbase *= Xc.carrier;
      }
      p[code] = out;
    }
    gen_act.push_back(std::move(p));
  }
  ConcreteGSet F = make_concrete(ctx, nf, std::move(gen_act));
  return orbit_decompose(ctx, F);
}

// ---------------------------------------------------------------------------
// Subgroup enumeration oracle
// ---------------------------------------------------------------------------

/// Every subset of the strict subconjugacy pairs, filtered by the closure
/// axioms: the reference enumeration of transfer systems.
inline std::vector<TransferSystem> transfer_systems_subset_filter(const GroupContext& ctx) {
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int h = 0; h < ctx.num_classes(); ++h)
      if (k != h && ctx.leq(k, h)) pairs.push_back({k, h});
  if (pairs.size() > 22) fail(Errc::TooLarge, "subset-filter oracle handles at most 22 pairs");
  std::vector<TransferSystem> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
    TransferSystem t{&ctx, {}};
    for (int c = 0; c < ctx.num_classes(); ++c) t.rel.insert({c, c});
    for (size_t i = 0; i < pairs.size(); ++i)
      if (mask & (uint64_t{1} << i)) t.rel.insert(pairs[i]);
    if (is_transfer_system(ctx, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Closures of all subsets with at most two generators; complete for groups
/// whose subgroups are all 2-generated (true of the desk-scale catalog).
inline std::vector<Bits> subgroups_two_generated(const GroupContext& ctx) {
  int n = ctx.group().order();
  std::set<Bits> found;
  Bits triv(n);
  triv.set(0);
  found.insert(ctx.closure(triv));
  for (int a = 1; a < n; ++a) {
    Bits s(n);
    s.set(0);
    s.set(a);
    found.insert(ctx.closure(s));
    for (int b = a + 1; b < n; ++b) {
      Bits t = s;
      t.set(b);
      found.insert(ctx.closure(t));
    }
  }
  return std::vector<Bits>(found.begin(), found.end());
}

}  // namespace normcalc::oracle
