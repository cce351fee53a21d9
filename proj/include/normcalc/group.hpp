#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "normcalc/error.hpp"
#include "normcalc/util.hpp"

namespace normcalc {

// ---------------------------------------------------------------------------
// Permutations and cycle notation
// ---------------------------------------------------------------------------

using Perm = std::vector<int>;  // perm[i] = image of point i

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline Perm perm_compose(const Perm& a, const Perm& b) {
  // (a*b)(x) = a(b(x))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = (int)i;
  return r;
}

/// Parses "(0 1)(2 3)" over points 0..n-1. Commas are accepted as
/// separators inside a cycle.
inline Perm parse_cycles(const std::string& s, int n) {
  Perm p = perm_identity(n);
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace((unsigned char)s[i])) {
      ++i;
      continue;
    }
    if (s[i] != '(') fail(Errc::BadInput, "expected '(' in cycle string: " + s);
    ++i;
    std::vector<int> cyc;
    while (i < s.size() && s[i] != ')') {
      if (std::isspace((unsigned char)s[i]) || s[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit((unsigned char)s[i]))
        fail(Errc::BadInput, "expected point index in cycle string: " + s);
      int v = 0;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
      if (v >= n) fail(Errc::BadInput, "point " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
      cyc.push_back(v);
    }
    if (i == s.size()) fail(Errc::BadInput, "unterminated cycle in: " + s);
    ++i;  // ')'
    for (size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (p[from] != from) fail(Errc::BadInput, "point repeated in cycle string: " + s);
      p[from] = to;
    }
  }
  return p;
}

inline std::string cycles_string(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == (int)i) continue;
    out += '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

/// A finite group as a multiplication table. Element 0 is the identity.
/// Numbering is fixed at construction (BFS over generators, in input order)
/// so every downstream output is deterministic.
class FiniteGroup {
 public:
  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }

  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::vector<int> gens = {},
                                std::string name = "");
  static FiniteGroup from_permutations(int npoints, const std::vector<Perm>& gens, std::string name = "");
  static FiniteGroup builtin(const std::string& name);

  /// True when `name` is accepted by builtin().
  static bool is_builtin(const std::string& name);

  /// Stable content fingerprint (order + table), used for cache keys.
  uint64_t fingerprint() const {
    uint64_t h = 0xcbf29ce484222325ull;
    h = h * 0x100000001b3ull ^ (uint64_t)n_;
    for (int v : mul_) h = h * 0x100000001b3ull ^ (uint64_t)v;
    return h;
  }

 private:
  FiniteGroup() = default;
  void finish_validate();

  int n_ = 1;
  std::vector<int> mul_;   // n*n row-major
  std::vector<int> inv_;   // inverses
  std::vector<int> gens_;  // generating element ids
  std::string name_;
};

inline void FiniteGroup::finish_validate() {
  // identity
  for (int a = 0; a < n_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      fail(Errc::NoIdentity, "element 0 is not a two-sided identity at element " + std::to_string(a));
  // associativity
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(Errc::NonAssociative, "a(bc) != (ab)c for (a,b,c) = (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(c) + ")");
  // inverses
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0) fail(Errc::NoInverse, "element " + std::to_string(a) + " has no inverse");
  }
  // generation
  if (gens_.empty()) {
    for (int a = 1; a < n_; ++a) gens_.push_back(a);
  }
  std::vector<char> reach(n_, 0);
  reach[0] = 1;
  std::vector<int> queue{0};
  for (size_t q = 0; q < queue.size(); ++q)
    for (int g : gens_) {
      int y = mul(queue[q], g);
      if (!reach[y]) {
        reach[y] = 1;
        queue.push_back(y);
      }
    }
  for (int a = 0; a < n_; ++a)
    if (!reach[a])
      fail(Errc::GeneratorsDoNotGenerate, "element " + std::to_string(a) + " not reached from generators");
}

inline FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<int> gens,
                                           std::string name) {
  FiniteGroup G;
  G.n_ = (int)table.size();
  if (G.n_ == 0) fail(Errc::BadInput, "empty multiplication table");
  G.mul_.assign((size_t)G.n_ * G.n_, 0);
  for (int a = 0; a < G.n_; ++a) {
    if ((int)table[a].size() != G.n_) fail(Errc::BadInput, "multiplication table is not square");
    for (int b = 0; b < G.n_; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= G.n_) fail(Errc::BadInput, "table entry out of range");
      G.mul_[a * G.n_ + b] = v;
    }
  }
  G.gens_ = std::move(gens);
  G.name_ = std::move(name);
  G.finish_validate();
  return G;
}

inline FiniteGroup FiniteGroup::from_permutations(int npoints, const std::vector<Perm>& gens,
                                                  std::string name) {
  for (const Perm& g : gens)
    if ((int)g.size() != npoints) fail(Errc::BadInput, "generator degree mismatch");
  // BFS from the identity, multiplying by generators on the right in input
  // order; this fixes the element numbering.
  std::map<Perm, int> index;
  std::vector<Perm> elems;
  elems.push_back(perm_identity(npoints));
  index[elems[0]] = 0;
  for (size_t q = 0; q < elems.size(); ++q) {
    for (const Perm& g : gens) {
      Perm y = perm_compose(elems[q], g);
      if (!index.count(y)) {
        if ((int)elems.size() >= 20000) fail(Errc::GroupTooLarge, "permutation closure exceeds 20000 elements");
        index[y] = (int)elems.size();
        elems.push_back(std::move(y));
      }
    }
  }
  FiniteGroup G;
  G.n_ = (int)elems.size();
  G.mul_.assign((size_t)G.n_ * G.n_, 0);
  for (int a = 0; a < G.n_; ++a)
    for (int b = 0; b < G.n_; ++b) G.mul_[a * G.n_ + b] = index.at(perm_compose(elems[a], elems[b]));
  for (const Perm& g : gens) G.gens_.push_back(index.at(g));
  G.name_ = std::move(name);
  G.finish_validate();
  return G;
}

namespace detail {

inline std::optional<std::pair<int, int>> parse_product_cyclic(const std::string& s) {
  // "C2xC4" and friends
  size_t x = s.find('x');
  if (x == std::string::npos || s.empty() || s[0] != 'C') return std::nullopt;
  std::string a = s.substr(1, x - 1), rest = s.substr(x + 1);
  if (rest.empty() || rest[0] != 'C') return std::nullopt;
  std::string b = rest.substr(1);
  if (a.empty() || b.empty()) return std::nullopt;
  for (char c : a)
    if (!std::isdigit((unsigned char)c)) return std::nullopt;
  for (char c : b)
    if (!std::isdigit((unsigned char)c)) return std::nullopt;
  return std::make_pair(std::stoi(a), std::stoi(b));
}

inline FiniteGroup make_quaternion() {
  // elements: +-1, +-i, +-j, +-k encoded as (axis 0..3, sign 0..1)
  auto enc = [](int axis, int sign) { return axis * 2 + sign; };
  int qtab[4][4] = {// axis multiplication: 1,i,j,k ; value axis
                    {0, 1, 2, 3},
                    {1, 0, 3, 2},
                    {2, 3, 0, 1},
                    {3, 2, 1, 0}};
  int qsgn[4][4] = {// sign of the axis product
                    {+1, +1, +1, +1},
                    {+1, -1, +1, -1},
                    {+1, -1, -1, +1},
                    {+1, +1, -1, -1}};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ax = a / 2, as = a % 2, bx = b / 2, bs = b % 2;
      int cx = qtab[ax][bx];
      int cs = (as + bs + (qsgn[ax][bx] < 0 ? 1 : 0)) % 2;
      table[a][b] = enc(cx, cs);
    }
  return FiniteGroup::from_table(table, {enc(1, 0), enc(2, 0)}, "Q8");
}

}  // namespace detail

inline bool FiniteGroup::is_builtin(const std::string& name) {
  if (name == "A4" || name == "Q8" || name == "Cp" || name == "Cp2" || name == "Cp3") return true;
  if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'D' || name[0] == 'C')) {
    if (name[0] == 'C' && name.find('x') != std::string::npos)
      return detail::parse_product_cyclic(name).has_value();
    for (size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit((unsigned char)name[i])) return false;
    return true;
  }
  return false;
}

inline FiniteGroup FiniteGroup::builtin(const std::string& name) {
  // Cp / Cp2 / Cp3 are aliases at p = 2; any prime gives the same lattice
  // shapes for the chain computations.
  if (name == "Cp") return builtin("C2");
  if (name == "Cp2") return builtin("C4");
  if (name == "Cp3") return builtin("C8");
  if (name == "A4")
    return from_permutations(4, {parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)}, "A4");
  if (name == "Q8") return detail::make_quaternion();
  if (auto mn = detail::parse_product_cyclic(name)) {
    int m = mn->first, n = mn->second;
    if (m < 1 || n < 1 || m * n > 512) fail(Errc::BadInput, "bad cyclic product " + name);
    Perm a = perm_identity(m + n), b = perm_identity(m + n);
    for (int i = 0; i < m; ++i) a[i] = (i + 1) % m;
    for (int i = 0; i < n; ++i) b[m + i] = m + (i + 1) % n;
    if (m == 1) return from_permutations(m + n, {b}, name);
    if (n == 1) return from_permutations(m + n, {a}, name);
    return from_permutations(m + n, {a, b}, name);
  }
  if (name.size() >= 2 && name[0] == 'C') {
    int n = std::stoi(name.substr(1));
    if (n < 1 || n > 512) fail(Errc::BadInput, "bad cyclic order in " + name);
    if (n == 1) return from_table({{0}}, {}, "C1");
    Perm a = perm_identity(n);
    for (int i = 0; i < n; ++i) a[i] = (i + 1) % n;
    return from_permutations(n, {a}, name);
  }
  if (name.size() >= 2 && name[0] == 'D') {
    int ord = std::stoi(name.substr(1));  // D2n convention: the order
    if (ord < 2 || ord % 2 != 0 || ord > 512) fail(Errc::BadInput, "dihedral order must be even: " + name);
    int n = ord / 2;
    if (n == 1) return builtin("C2");
    Perm rot = perm_identity(n), ref = perm_identity(n);
    for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
    for (int i = 0; i < n; ++i) ref[i] = (n - i) % n;
    return from_permutations(n, {rot, ref}, name);
  }
  if (name.size() >= 2 && name[0] == 'S') {
    int n = std::stoi(name.substr(1));
    if (n < 1 || n > 5) fail(Errc::BadInput, "S_n builtin supports n <= 5");
    if (n == 1) return from_table({{0}}, {}, "S1");
    std::vector<Perm> gens;
    gens.push_back(parse_cycles("(0 1)", n));
    if (n > 2) {
      Perm cyc = perm_identity(n);
      for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
      gens.push_back(cyc);
    }
    return from_permutations(n, gens, name);
  }
  fail(Errc::BadInput, "unknown builtin group " + name);
}

// ---------------------------------------------------------------------------
// Subgroup analysis: lattice, conjugacy classes, per-level local posets
// ---------------------------------------------------------------------------

struct Subgroup {
  Bits members;
  int order = 1;
};

struct SubgroupClass {
  int rep = -1;               // index into GroupContext::subgroup list
  std::vector<int> members;   // all conjugates (subgroup indices)
  int normalizer = -1;        // subgroup index of N_G(rep)
  int weyl = 1;               // |N_G(rep)| / |rep|
  std::string label;
};

/// Conjugacy classes of subgroups of a level representative H, i.e. the
/// skeleton of the orbit category of H sitting inside G.
struct LocalClass {
  int rep = -1;              // GroupContext subgroup index, contained in the level rep
  std::vector<int> members;  // H-conjugates
  int g_class = -1;          // fused G-class
  int orbit_size = 1;        // [H : rep]
  int weyl = 1;              // |N_H(rep)| / |rep|
  std::string label;
};

struct LevelLocal {
  int parent = -1;                 // subgroup index of the level representative
  std::vector<int> subs;           // subgroup indices contained in parent
  std::vector<LocalClass> classes;
  std::vector<std::vector<char>> leq;          // local subconjugacy
  std::vector<std::vector<long long>> mark;    // mark[L][K] = |[H/K]^L|
  std::unordered_map<int, int> class_of_sub;   // subgroup index -> local class
};

/// One restriction functor between levels, recorded on local classes:
/// row[l] lists the (local class at the target level, multiplicity) of the
/// orbits of the restricted [H/L_l].
struct RestrictionMatrix {
  std::vector<std::vector<std::pair<int, int>>> rows;
  bool operator<(const RestrictionMatrix& o) const { return rows < o.rows; }
  bool operator==(const RestrictionMatrix& o) const { return rows == o.rows; }
};

class GroupContext {
 public:
  explicit GroupContext(FiniteGroup g, int subgroup_cap = 200,
                        const std::vector<Bits>* precomputed_subgroups = nullptr);

  const FiniteGroup& group() const { return G_; }

  // subgroup lattice
  int num_subgroups() const { return (int)subs_.size(); }
  const Subgroup& subgroup(int i) const { return subs_[i]; }
  int subgroup_index(const Bits& members) const;
  int class_of_subgroup(int sub) const { return sub_class_[sub]; }

  // conjugacy classes of subgroups
  int num_classes() const { return (int)classes_.size(); }
  const SubgroupClass& cls(int c) const { return classes_[c]; }
  bool leq(int cK, int cH) const { return leq_[cK][cH]; }  // (K) subconjugate to (H)
  int trivial_class() const { return 0; }
  int top_class() const { return (int)classes_.size() - 1; }
  int class_by_label(const std::string& label) const;

  // level-local data
  const LevelLocal& level(int c) const { return levels_[c]; }
  int local_class_by_label(int c, const std::string& label) const;

  // element-level helpers
  int conj_subgroup(int sub, int g) const;                  // index of g S g^-1
  int canonical_conj(int from_sub, int to_sub) const;       // least g with g from g^-1 == to
  Bits conj_bits(const Bits& b, int g) const;
  Bits closure(Bits seed) const;
  Bits intersect(const Bits& a, const Bits& b) const { return a & b; }

  /// Double cosets K\A/L for subgroups K, L of the ambient subgroup A.
  /// Returns (representative, K ∩ gLg^-1) per coset; reps ascend, cosets
  /// partition A.
  std::vector<std::pair<int, Bits>> double_cosets(const Bits& ambient, const Bits& K, const Bits& L) const;

  /// All distinct restriction functors from level cV to level cK (requires
  /// leq(cK, cV)); includes the twists cV == cK induced by N_G-conjugation.
  const std::vector<RestrictionMatrix>& restriction_functors(int cV, int cK) const;

  /// Canonical subgroup of the level representative of cV lying in G-class
  /// cK (least by canonical order), or -1 when none exists.
  int canonical_member_in(int cK, int cV) const;

  /// Per local class of level cV: map sending local classes of the level of
  /// its fused G-class to local classes of cV, realizing the canonical
  /// induction along the local representative.
  const std::vector<int>& induction_map(int cV, int local_class) const;

 private:
  void enumerate_subgroups(int cap);
  void build_classes();
  void build_levels();
  RestrictionMatrix functor_for(int cV, int cK, int g) const;

  FiniteGroup G_;
  std::vector<Subgroup> subs_;
  std::unordered_map<Bits, int, BitsHash> sub_index_;
  std::vector<int> sub_class_;
  std::vector<SubgroupClass> classes_;
  std::vector<std::vector<char>> leq_;
  std::vector<LevelLocal> levels_;
  std::vector<std::vector<std::vector<int>>> ind_maps_;  // [class][local] -> map

  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<int, int>, std::vector<RestrictionMatrix>> functor_cache_;
};

inline int GroupContext::subgroup_index(const Bits& members) const {
  auto it = sub_index_.find(members);
  return it == sub_index_.end() ? -1 : it->second;
}

inline Bits GroupContext::conj_bits(const Bits& b, int g) const {
  Bits r(G_.order());
  for (int x = 0; x < G_.order(); ++x)
    if (b.test(x)) r.set(G_.conj(g, x));
  return r;
}

inline int GroupContext::conj_subgroup(int sub, int g) const {
  int r = subgroup_index(conj_bits(subs_[sub].members, g));
  if (r < 0) fail(Errc::NotASubgroup, "conjugation left the subgroup table");
  return r;
}

inline int GroupContext::canonical_conj(int from_sub, int to_sub) const {
  for (int g = 0; g < G_.order(); ++g)
    if (conj_subgroup(from_sub, g) == to_sub) return g;
  fail(Errc::NotSubconjugate, "subgroups are not conjugate");
}

inline Bits GroupContext::closure(Bits seed) const {
  int n = G_.order();
  seed.set(0);
  std::vector<int> work = seed.elements();
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < work.size(); ++j) {
      int p = G_.mul(work[i], work[j]);
      if (!seed.test(p)) {
        seed.set(p);
        work.push_back(p);
      }
      if ((int)work.size() > n) break;
    }
  return seed;
}

inline void GroupContext::enumerate_subgroups(int cap) {
  int n = G_.order();
  if (n > cap)
    fail(Errc::GroupTooLarge,
         "group order " + std::to_string(n) + " exceeds the subgroup enumeration cap " + std::to_string(cap));
  std::set<Bits> found;
  Bits triv(n);
  triv.set(0);
  found.insert(triv);
  std::vector<Bits> work{triv};
  // Extend each known subgroup by one element and close; every subgroup is
  // reachable this way from the trivial one.
  for (size_t q = 0; q < work.size(); ++q) {
    Bits h = work[q];
    for (int g = 1; g < n; ++g) {
      if (h.test(g)) continue;
      Bits e = h;
      e.set(g);
      Bits c = closure(e);
      if (found.insert(c).second) work.push_back(c);
    }
  }
  std::vector<Bits> all(found.begin(), found.end());
  std::sort(all.begin(), all.end(), [](const Bits& a, const Bits& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a < b;
  });
  for (const Bits& b : all) {
    int idx = (int)subs_.size();
    subs_.push_back({b, b.count()});
    sub_index_[b] = idx;
  }
}

inline void GroupContext::build_classes() {
  int n = G_.order();
  sub_class_.assign(subs_.size(), -1);
  for (int s = 0; s < (int)subs_.size(); ++s) {
    if (sub_class_[s] >= 0) continue;
    int c = (int)classes_.size();
    SubgroupClass sc;
    sc.rep = s;
    std::set<int> mem;
    for (int g = 0; g < n; ++g) mem.insert(conj_subgroup(s, g));
    sc.members.assign(mem.begin(), mem.end());
    for (int m : sc.members) sub_class_[m] = c;
    // normalizer of the representative
    Bits nb(n);
    for (int g = 0; g < n; ++g)
      if (conj_subgroup(s, g) == s) nb.set(g);
    sc.normalizer = subgroup_index(nb);
    if (sc.normalizer < 0) fail(Errc::NotASubgroup, "normalizer not closed");
    sc.weyl = subs_[sc.normalizer].order / subs_[s].order;
    classes_.push_back(std::move(sc));
  }
  // labels: order then letter among classes of equal order
  std::map<int, int> seen;
  for (auto& c : classes_) {
    int o = subs_[c.rep].order;
    int k = seen[o]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), char('a' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    c.label = std::to_string(o) + suffix;
  }
  // subconjugacy
  leq_.assign(classes_.size(), std::vector<char>(classes_.size(), 0));
  for (size_t i = 0; i < classes_.size(); ++i)
    for (size_t j = 0; j < classes_.size(); ++j) {
      bool le = false;
      for (int m : classes_[i].members)
        if (subs_[m].members.subset_of(subs_[classes_[j].rep].members)) {
          le = true;
          break;
        }
      leq_[i][j] = le;
    }
}

inline std::vector<std::pair<int, Bits>> GroupContext::double_cosets(const Bits& ambient, const Bits& K,
                                                                     const Bits& L) const {
  int n = G_.order();
  if (!K.subset_of(ambient) || !L.subset_of(ambient))
    fail(Errc::NotASubgroup, "double coset arguments must lie in the ambient subgroup");
  std::vector<char> seen(n, 0);
  std::vector<std::pair<int, Bits>> out;
  std::vector<int> ke = K.elements(), le = L.elements();
  for (int g = 0; g < n; ++g) {
    if (!ambient.test(g) || seen[g]) continue;
    for (int k : ke)
      for (int l : le) seen[G_.mul(G_.mul(k, g), l)] = 1;
    Bits inter(n);
    for (int k : ke)
      if (L.test(G_.mul(G_.mul(G_.inv(g), k), g))) inter.set(k);  // K ∩ gLg^-1
    out.push_back({g, inter});
  }
  return out;
}

inline void GroupContext::build_levels() {
  levels_.resize(classes_.size());
  ind_maps_.resize(classes_.size());
  for (int c = 0; c < (int)classes_.size(); ++c) {
    LevelLocal& lv = levels_[c];
    lv.parent = classes_[c].rep;
    const Bits& H = subs_[lv.parent].members;
    int ho = subs_[lv.parent].order;
    for (int s = 0; s < (int)subs_.size(); ++s)
      if (subs_[s].members.subset_of(H)) lv.subs.push_back(s);
    // H-conjugacy classes
    std::vector<int> helems = H.elements();
    std::vector<char> assigned(subs_.size(), 0);
    for (int s : lv.subs) {
      if (assigned[s]) continue;
      LocalClass lc;
      std::set<int> mem;
      for (int h : helems) mem.insert(conj_subgroup(s, h));
      lc.members.assign(mem.begin(), mem.end());
      lc.rep = lc.members.front();  // least canonical member
      for (int m : lc.members) assigned[m] = 1;
      lc.g_class = sub_class_[lc.rep];
      lc.orbit_size = ho / subs_[lc.rep].order;
      int nh = 0;
      for (int h : helems)
        if (conj_subgroup(lc.rep, h) == lc.rep) ++nh;
      lc.weyl = nh / subs_[lc.rep].order;
      lv.classes.push_back(std::move(lc));
    }
    std::sort(lv.classes.begin(), lv.classes.end(), [&](const LocalClass& a, const LocalClass& b) {
      int oa = subs_[a.rep].order, ob = subs_[b.rep].order;
      if (oa != ob) return oa < ob;
      return subs_[a.rep].members < subs_[b.rep].members;
    });
    std::map<int, int> seen;
    for (auto& lc : lv.classes) {
      for (int m : lc.members) lv.class_of_sub[m] = (int)(&lc - lv.classes.data());
      int o = subs_[lc.rep].order;
      int k = seen[o]++;
      std::string suffix;
      do {
        suffix.insert(suffix.begin(), char('a' + k % 26));
        k = k / 26 - 1;
      } while (k >= 0);
      lc.label = std::to_string(o) + suffix;
    }
    // local subconjugacy and the table of marks for this level
    int m = (int)lv.classes.size();
    lv.leq.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        bool le = false;
        for (int mm : lv.classes[i].members)
          if (subs_[mm].members.subset_of(subs_[lv.classes[j].rep].members)) {
            le = true;
            break;
          }
        lv.leq[i][j] = le;
      }
    lv.mark.assign(m, std::vector<long long>(m, 0));
    for (int kc = 0; kc < m; ++kc) {
      const Bits& K = subs_[lv.classes[kc].rep].members;
      // coset representatives of K in H
      std::vector<int> reps;
      std::vector<char> seenc(G_.order(), 0);
      for (int h : helems) {
        if (seenc[h]) continue;
        reps.push_back(h);
        for (int k : K.elements()) seenc[G_.mul(h, k)] = 1;
      }
      for (int lc = 0; lc < m; ++lc) {
        const Bits& L = subs_[lv.classes[lc].rep].members;
        long long cnt = 0;
        for (int h : reps) {
          bool fixed = true;
          for (int l : L.elements())
            if (!K.test(G_.mul(G_.mul(G_.inv(h), l), h))) {
              fixed = false;
              break;
            }
          if (fixed) ++cnt;
        }
        lv.mark[lc][kc] = cnt;
      }
    }
  }
  // canonical induction maps
  for (int c = 0; c < (int)classes_.size(); ++c) {
    const LevelLocal& lv = levels_[c];
    ind_maps_[c].resize(lv.classes.size());
    for (int l = 0; l < (int)lv.classes.size(); ++l) {
      const LocalClass& lc = lv.classes[l];
      const LevelLocal& src = levels_[lc.g_class];
      int conj = canonical_conj(classes_[lc.g_class].rep, lc.rep);
      std::vector<int>& mp = ind_maps_[c][l];
      mp.assign(src.classes.size(), -1);
      for (int sl = 0; sl < (int)src.classes.size(); ++sl) {
        int moved = conj_subgroup(src.classes[sl].rep, conj);
        auto it = lv.class_of_sub.find(moved);
        if (it == lv.class_of_sub.end()) fail(Errc::NotASubgroup, "induction transport escaped the level");
        mp[sl] = it->second;
      }
    }
  }
}

inline GroupContext::GroupContext(FiniteGroup g, int subgroup_cap,
                                  const std::vector<Bits>* precomputed_subgroups)
    : G_(std::move(g)) {
  if (precomputed_subgroups) {
    // memoized lattice: verify each entry is a genuine subgroup, then adopt
    for (const Bits& b : *precomputed_subgroups) {
      if (b.universe() != G_.order() || !b.test(0) || !(closure(b) == b))
        fail(Errc::NotASubgroup, "cached subgroup table is stale for this group");
      if (!subs_.empty()) {
        const Bits& prev = subs_.back().members;
        bool ordered = prev.count() < b.count() || (prev.count() == b.count() && prev < b);
        if (!ordered) fail(Errc::NotASubgroup, "cached subgroup table is not in canonical order");
      }
      int idx = (int)subs_.size();
      subs_.push_back({b, b.count()});
      sub_index_[b] = idx;
    }
    Bits whole(G_.order());
    for (int i = 0; i < G_.order(); ++i) whole.set(i);
    if (subs_.empty() || !(subs_.back().members == whole))
      fail(Errc::NotASubgroup, "cached subgroup table is incomplete");
  } else {
    enumerate_subgroups(subgroup_cap);
  }
  build_classes();
  build_levels();
}

inline int GroupContext::class_by_label(const std::string& label) const {
  for (int c = 0; c < (int)classes_.size(); ++c)
    if (classes_[c].label == label) return c;
  fail(Errc::BadInput, "unknown subgroup class label " + label);
}

inline int GroupContext::local_class_by_label(int c, const std::string& label) const {
  const LevelLocal& lv = levels_[c];
  for (int i = 0; i < (int)lv.classes.size(); ++i)
    if (lv.classes[i].label == label) return i;
  fail(Errc::BadInput, "unknown local class label " + label + " at level " + classes_[c].label);
}

inline int GroupContext::canonical_member_in(int cK, int cV) const {
  const Bits& V = subs_[classes_[cV].rep].members;
  for (int m : classes_[cK].members)
    if (subs_[m].members.subset_of(V)) return m;
  return -1;
}

inline RestrictionMatrix GroupContext::functor_for(int cV, int cK, int g) const {
  // g satisfies g^-1 K_rep g ⊆ V_rep; the functor restricts a V_rep-set to
  // that conjugate and transports the result back into K_rep currency.
  const LevelLocal& lvV = levels_[cV];
  const LevelLocal& lvK = levels_[cK];
  const Bits& V = subs_[lvV.parent].members;
  Bits Kc = conj_bits(subs_[lvK.parent].members, G_.inv(g));
  RestrictionMatrix M;
  M.rows.resize(lvV.classes.size());
  for (int l = 0; l < (int)lvV.classes.size(); ++l) {
    const Bits& L = subs_[lvV.classes[l].rep].members;
    std::map<int, int> counts;
    for (auto& [rep, inter] : double_cosets(V, Kc, L)) {
      (void)rep;
      Bits back = conj_bits(inter, g);  // into K_rep
      int si = subgroup_index(back);
      if (si < 0) fail(Errc::NotASubgroup, "restriction stabilizer not in table");
      counts[lvK.class_of_sub.at(si)] += 1;
    }
    M.rows[l].assign(counts.begin(), counts.end());
  }
  return M;
}

inline const std::vector<RestrictionMatrix>& GroupContext::restriction_functors(int cV, int cK) const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto key = std::make_pair(cV, cK);
  auto it = functor_cache_.find(key);
  if (it != functor_cache_.end()) return it->second;
  std::set<RestrictionMatrix> found;
  const Bits& V = subs_[classes_[cV].rep].members;
  for (int g = 0; g < G_.order(); ++g) {
    Bits Kc = conj_bits(subs_[classes_[cK].rep].members, G_.inv(g));
    if (!Kc.subset_of(V)) continue;
    found.insert(functor_for(cV, cK, g));
  }
  auto& slot = functor_cache_[key];
  slot.assign(found.begin(), found.end());
  return slot;
}

inline const std::vector<int>& GroupContext::induction_map(int cV, int local_class) const {
  return ind_maps_[cV][local_class];
}

// ---------------------------------------------------------------------------
// Standalone embedding of a subgroup as a group in its own right
// ---------------------------------------------------------------------------

/// Presents the representative of a subgroup class of `big` as a standalone
/// FiniteGroup, with transport maps between the two class systems.
struct SubgroupEmbedding {
  const GroupContext* big = nullptr;
  int g_class = -1;                    // class of the embedded subgroup in big
  std::shared_ptr<GroupContext> sub;   // standalone context
  std::vector<int> to_big;             // element map, sub id -> big id
  std::vector<int> class_to_big;       // sub G-class -> big G-class
  // local class transports per sub class: sub local -> big local (and back)
  std::vector<std::vector<int>> local_to_big;
  std::vector<std::vector<int>> local_from_big;
};

inline SubgroupEmbedding embed_subgroup(const GroupContext& big, int g_class) {
  SubgroupEmbedding E;
  E.big = &big;
  E.g_class = g_class;
  const Bits& H = big.subgroup(big.cls(g_class).rep).members;
  std::vector<int> elems = H.elements();  // ascending; identity first
  int m = (int)elems.size();
  std::vector<int> back(big.group().order(), -1);
  for (int i = 0; i < m; ++i) back[elems[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[a][b] = back[big.group().mul(elems[a], elems[b])];
  std::string nm = big.group().name().empty() ? "sub" : big.group().name();
  FiniteGroup Hg = FiniteGroup::from_table(table, {}, nm + "|" + big.cls(g_class).label);
  E.sub = std::make_shared<GroupContext>(std::move(Hg));
  E.to_big = std::move(elems);

  auto lift = [&](const Bits& small) {
    Bits b(big.group().order());
    for (int i = 0; i < m; ++i)
      if (small.test(i)) b.set(E.to_big[i]);
    return b;
  };

  int nc = E.sub->num_classes();
  E.class_to_big.resize(nc);
  E.local_to_big.resize(nc);
  E.local_from_big.resize(nc);
  for (int c = 0; c < nc; ++c) {
    // image subgroup in big, its class, and the canonical conjugator to the
    // big-side class representative
    Bits img = lift(E.sub->subgroup(E.sub->cls(c).rep).members);
    int big_sub = big.subgroup_index(img);
    if (big_sub < 0) fail(Errc::NotASubgroup, "embedded subgroup missing from big lattice");
    int bc = big.class_of_subgroup(big_sub);
    E.class_to_big[c] = bc;
    int conj = big.canonical_conj(big_sub, big.cls(bc).rep);
    const LevelLocal& lvs = E.sub->level(c);
    const LevelLocal& lvb = big.level(bc);
    E.local_to_big[c].assign(lvs.classes.size(), -1);
    E.local_from_big[c].assign(lvb.classes.size(), -1);
    for (int l = 0; l < (int)lvs.classes.size(); ++l) {
      Bits lb = lift(E.sub->subgroup(lvs.classes[l].rep).members);
      Bits moved = big.conj_bits(lb, conj);
      int si = big.subgroup_index(moved);
      if (si < 0) fail(Errc::NotASubgroup, "local transport escaped the lattice");
      int bl = lvb.class_of_sub.at(si);
      E.local_to_big[c][l] = bl;
      E.local_from_big[c][bl] = l;
    }
    for (int bl = 0; bl < (int)lvb.classes.size(); ++bl)
      if (E.local_from_big[c][bl] < 0)
        fail(Errc::NotASubgroup, "local class transport is not a bijection");
  }
  return E;
}

}  // namespace normcalc
