#pragma once

// The acceptance battery: every check the artifact promises, with its
// tolerance pinned in code. Each criterion reports one pass/fail line; the
// suite is deterministic for a fixed seed.

#include <chrono>
#include <mutex>
#include <sstream>

#include "normcalc/burnside.hpp"
#include "normcalc/oracles.hpp"
#include "normcalc/repsupport.hpp"
#include "normcalc/spancat.hpp"
#include "normcalc/transfer.hpp"

namespace normcalc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

namespace acceptance_detail {

struct Fails {
  std::vector<std::string> slots;
  explicit Fails(size_t n) : slots(n) {}
  std::mutex mu;
  void set(size_t i, std::string s) {
    std::lock_guard<std::mutex> lock(mu);
    slots[i] = std::move(s);
  }
  std::string first() const {
    for (auto& s : slots)
      if (!s.empty()) return s;
    return "";
  }
};

inline GroupContext make_ctx(const std::string& name) { return GroupContext(FiniteGroup::builtin(name)); }

inline std::vector<WeakIndexingSystem> transfer_catalog(const GroupContext& ctx, int bound) {
  std::vector<WeakIndexingSystem> out;
  for (auto& t : enumerate_transfer_systems(ctx)) out.push_back(to_indexing_system(t, bound));
  return out;
}

/// Seeded sampler over saturations of random generators, with occasional
/// borelifications so that non-full color families appear.
inline WeakIndexingSystem random_system(const GroupContext& ctx, Rng& rng, int bound) {
  std::vector<OrbitMultiset> gens;
  int ngen = 1 + (int)rng.below(2);
  for (int i = 0; i < ngen; ++i) {
    int level = (int)rng.below(ctx.num_classes());
    auto window = level_window(ctx, level, std::min(bound, 5));
    gens.push_back(window[rng.below(window.size())]);
  }
  WeakIndexingSystem w = saturate(ctx, gens, bound);
  if (rng.below(4) == 0) {
    Family f = family_generated(ctx, {(int)rng.below(ctx.num_classes())});
    w = borelify(w, f);
  }
  return w;
}

inline DimensionFunction regular_rep(const GroupContext& ctx, ExtNat mult = 1) {
  const LevelLocal& lv = ctx.level(ctx.top_class());
  for (int l = 0; l < (int)lv.classes.size(); ++l)
    if (ctx.subgroup(lv.classes[l].rep).order == 1)
      return from_permutation_rep(ctx, orbit_set(ctx.top_class(), l), mult);
  fail(Errc::BadInput, "no free orbit type");
}

inline DimensionFunction coset_rep(const GroupContext& ctx, int order, ExtNat mult = 1) {
  const LevelLocal& lv = ctx.level(ctx.top_class());
  for (int l = 0; l < (int)lv.classes.size(); ++l)
    if (ctx.subgroup(lv.classes[l].rep).order == order)
      return from_permutation_rep(ctx, orbit_set(ctx.top_class(), l), mult);
  fail(Errc::BadInput, "no orbit type of that order");
}

inline int class_by_order(const GroupContext& ctx, int order, int nth = 0) {
  int seen = 0;
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (ctx.subgroup(ctx.cls(c).rep).order == order && seen++ == nth) return c;
  fail(Errc::BadInput, "no class of that order");
}

/// The representation catalogs of the additivity criterion.
inline std::vector<DimensionFunction> rep_catalog(const GroupContext& ctx) {
  std::vector<DimensionFunction> cat;
  DimensionFunction triv = from_permutation_rep(ctx, point_set(ctx, ctx.top_class()));
  cat.push_back(zero_rep(ctx));
  cat.push_back(triv);
  cat.push_back(regular_rep(ctx));
  int n = ctx.group().order();
  const std::string& nm = ctx.group().name();
  if (nm == "C2") {
    DimensionFunction sg = sign_rep(ctx, ctx.trivial_class());
    cat.push_back(sg);
    cat.push_back(direct_sum(sg, sg));
    cat.push_back(sign_rep(ctx, ctx.trivial_class(), ExtNat::inf()));
    cat.push_back(direct_sum(sg, from_permutation_rep(ctx, point_set(ctx, ctx.top_class()), ExtNat::inf())));
  } else if (nm == "C4") {
    DimensionFunction sg = sign_rep(ctx, class_by_order(ctx, 2));
    cat.push_back(sg);
    cat.push_back(coset_rep(ctx, 2));  // R[C4/C2]
    cat.push_back(sign_rep(ctx, class_by_order(ctx, 2), ExtNat::inf()));
    cat.push_back(regular_rep(ctx, ExtNat::inf()));
  } else if (nm == "C2xC2") {
    for (int i = 0; i < 3; ++i) cat.push_back(sign_rep(ctx, class_by_order(ctx, 2, i)));
    cat.push_back(coset_rep(ctx, 2));
    cat.push_back(sign_rep(ctx, class_by_order(ctx, 2, 0), ExtNat::inf()));
  } else if (nm == "S3") {
    cat.push_back(sign_rep(ctx, class_by_order(ctx, 3)));
    cat.push_back(coset_rep(ctx, 2));  // the 3-point permutation representation
    cat.push_back(coset_rep(ctx, 3));  // the 2-point one
    cat.push_back(coset_rep(ctx, 3, ExtNat::inf()));
  } else {
    (void)n;
  }
  return cat;
}

}  // namespace acceptance_detail

template <class F>
inline CriterionResult run_criterion(int id, const std::string& name, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CriterionResult> run_acceptance(int jobs, uint64_t seed) {
  using namespace acceptance_detail;
  std::vector<CriterionResult> out;

  // 1. transfer enumeration vs the subset-filter oracle, with the chain
  // counts 1, 2, 5, 14
  out.push_back(run_criterion(1, "transfer enumeration matches brute force", [&](CriterionResult& r) {
    struct Want {
      const char* name;
      size_t count;
    };
    std::vector<Want> wants = {{"C1", 1}, {"C2", 2}, {"C3", 2}, {"C4", 5},
                               {"C9", 5}, {"C8", 14}, {"C27", 14}};
    for (auto& w : wants) {
      GroupContext ctx = make_ctx(w.name);
      auto fast = enumerate_transfer_systems(ctx);
      auto slow = oracle::transfer_systems_subset_filter(ctx);
      if (fast.size() != w.count || !(fast == slow)) {
        r.pass = false;
        r.detail = std::string(w.name) + ": got " + std::to_string(fast.size()) + ", oracle " +
                   std::to_string(slow.size()) + ", expected " + std::to_string(w.count);
        return;
      }
    }
    if (r.seconds > 60) {
      r.pass = false;
      r.detail = "runtime budget of 60 s exceeded";
    }
  }));

  // 2. closure join agrees with the Rubin alternating-chain join on all
  // ordered pairs over C_{p^2}, C2xC2, S3
  out.push_back(run_criterion(2, "closure join equals alternating-chain join", [&](CriterionResult& r) {
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"C4", "C2xC2", "S3"}) {
      GroupContext ctx = make_ctx(name);
      auto systems = enumerate_transfer_systems(ctx);
      std::vector<WeakIndexingSystem> idx = transfer_catalog(ctx, 8);
      std::vector<std::pair<size_t, size_t>> pairs;
      for (size_t a = 0; a < systems.size(); ++a)
        for (size_t b = 0; b < systems.size(); ++b) pairs.push_back({a, b});
      Fails fails(pairs.size());
      parallel_for(pairs.size(), jobs, [&](size_t i) {
        auto [a, b] = pairs[i];
        TransferSystem lhs = underlying_transfers(join(idx[a], idx[b]));
        TransferSystem rhs = join_rubin(systems[a], systems[b]);
        if (!(lhs == rhs))
          fails.set(i, std::string(name) + ": pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
      });
      if (!fails.first().empty()) {
        r.pass = false;
        r.detail = fails.first();
        return;
      }
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > 120) {
      r.pass = false;
      r.detail = "runtime budget of 120 s exceeded";
    }
  }));

  // 3. lattice laws: exhaustive on the criterion-2 catalogs, seeded random
  // triples on C4, D8, A4
  out.push_back(run_criterion(3, "join/meet lattice laws", [&](CriterionResult& r) {
    for (const char* name : {"C4", "C2xC2", "S3"}) {
      GroupContext ctx = make_ctx(name);
      std::vector<WeakIndexingSystem> cat = transfer_catalog(ctx, 8);
      size_t n = cat.size();
      // pairwise joins/meets once
      std::vector<std::vector<WeakIndexingSystem>> J(n), M(n);
      std::vector<std::string> fail_pair(n);
      parallel_for(n, jobs, [&](size_t a) {
        J[a].resize(n);
        M[a].resize(n);
        for (size_t b = 0; b < n; ++b) {
          J[a][b] = join(cat[a], cat[b]);
          M[a][b] = meet(cat[a], cat[b]);
        }
        for (size_t b = 0; b < n; ++b) {
          if (!(M[a][b] == meet(cat[b], cat[a]))) fail_pair[a] = "meet not commutative";
          if (!(join(cat[a], M[a][b]) == cat[a])) fail_pair[a] = "absorption join(a, meet(a,b)) != a";
          if (!(meet(cat[a], J[a][b]) == cat[a])) fail_pair[a] = "absorption meet(a, join(a,b)) != a";
        }
        if (!(J[a][a] == cat[a]) || !(M[a][a] == cat[a])) fail_pair[a] = "idempotence";
      });
      for (auto& s : fail_pair)
        if (!s.empty()) {
          r.pass = false;
          r.detail = std::string(name) + ": " + s;
          return;
        }
      // commutativity and associativity of join, exhaustively
      std::vector<std::string> fail_trip(n);
      parallel_for(n, jobs, [&](size_t a) {
        for (size_t b = a; b < n; ++b) {
          if (!(J[a][b] == J[b][a])) fail_trip[a] = "join not commutative";
          for (size_t c = 0; c < n; ++c)
            if (!(join(J[a][b], cat[c]) == join(cat[a], J[b][c]))) fail_trip[a] = "join not associative";
        }
      });
      for (auto& s : fail_trip)
        if (!s.empty()) {
          r.pass = false;
          r.detail = std::string(name) + ": " + s;
          return;
        }
    }
    // random triples
    for (const char* name : {"C4", "D8", "A4"}) {
      GroupContext ctx = make_ctx(name);
      Rng rng(seed ^ ctx.group().fingerprint());
      std::vector<std::array<WeakIndexingSystem, 3>> triples;
      for (int i = 0; i < 170; ++i)
        triples.push_back({random_system(ctx, rng, 8), random_system(ctx, rng, 8),
                           random_system(ctx, rng, 8)});
      Fails fails(triples.size());
      parallel_for(triples.size(), jobs, [&](size_t i) {
        auto& [a, b, c] = triples[i];
        if (!(join(a, b) == join(b, a))) fails.set(i, "join not commutative");
        else if (!(join(join(a, b), c) == join(a, join(b, c)))) fails.set(i, "join not associative");
        else if (!(meet(a, join(a, b)) == a)) fails.set(i, "absorption failed");
        else if (!(join(a, meet(a, b)) == a)) fails.set(i, "absorption failed");
      });
      if (!fails.first().empty()) {
        r.pass = false;
        r.detail = std::string(name) + " random triples: " + fails.first();
        return;
      }
    }
  }));

  // 4. tensor formula algebra: commutativity, unit, color law
  out.push_back(run_criterion(4, "tensor algebra (Borelified join)", [&](CriterionResult& r) {
    for (const char* name : {"C4", "C2xC2", "S3"}) {
      GroupContext ctx = make_ctx(name);
      std::vector<WeakIndexingSystem> cat = transfer_catalog(ctx, 8);
      // mixed-color systems: borelifications by each principal family
      size_t one_color = cat.size();
      for (int c = 0; c < ctx.num_classes(); ++c) {
        Family f = family_generated(ctx, {c});
        cat.push_back(borelify(cat[one_color - 1], f));
      }
      WeakIndexingSystem triv = trivial_system(ctx, 8);
      std::vector<std::string> fails(cat.size());
      parallel_for(cat.size(), jobs, [&](size_t a) {
        if (a < one_color && !(tensor_weak_ninfty(triv, cat[a]).system == cat[a]))
          fails[a] = "unit law failed";
        for (size_t b = 0; b < cat.size(); ++b) {
          TensorResult ab = tensor_weak_ninfty(cat[a], cat[b]);
          TensorResult ba = tensor_weak_ninfty(cat[b], cat[a]);
          if (!(ab.system == ba.system)) fails[a] = "tensor not commutative";
          Family expect = family_intersect(color_family(cat[a]), color_family(cat[b]));
          if (!(color_family(ab.system) == expect)) fails[a] = "color law failed";
        }
      });
      for (auto& s : fails)
        if (!s.empty()) {
          r.pass = false;
          r.detail = std::string(name) + ": " + s;
          return;
        }
    }
  }));

  // 5. aE-unitality classifies the builtins
  out.push_back(run_criterion(5, "aE-unitality gate", [&](CriterionResult& r) {
    GroupContext c1 = make_ctx("C1");
    GroupContext c2 = make_ctx("C2");
    auto expect = [&](bool got, bool want, const char* what) {
      if (got != want && r.pass) {
        r.pass = false;
        r.detail = what;
      }
    };
    expect(predicates(terminal_with_unit_family(c1, family_none(c1), 8)).is_aE_unital, false,
           "Comm_nu should fail the gate");
    expect(predicates(trivial_system(c2, 8)).is_aE_unital, true, "triv should pass");
    for (int c = 0; c < c2.num_classes(); ++c)
      expect(predicates(inflated_system(c2, family_generated(c2, {c}), 8)).is_aE_unital, true,
             "E0-family systems should pass");
    expect(predicates(einfty_system(c2, 8)).is_aE_unital, true, "F^inf should pass");
    expect(predicates(complete_system(c2, 8)).is_aE_unital, true, "complete should pass");
    for (auto& v : rep_catalog(c2))
      expect(predicates(arity_support(v, 8)).is_aE_unital, true, "arity supports should pass");
  }));

  // 6. arity-level Dunn additivity over the representation catalogs
  out.push_back(run_criterion(6, "additivity of arity supports", [&](CriterionResult& r) {
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"C2", "C4", "C2xC2", "S3"}) {
      GroupContext ctx = make_ctx(name);
      std::vector<DimensionFunction> cat = rep_catalog(ctx);
      if (cat.size() < 6) {
        r.pass = false;
        r.detail = std::string(name) + ": catalog too small";
        return;
      }
      std::vector<std::pair<size_t, size_t>> pairs;
      for (size_t a = 0; a < cat.size(); ++a)
        for (size_t b = 0; b < cat.size(); ++b) pairs.push_back({a, b});
      Fails fails(pairs.size());
      parallel_for(pairs.size(), jobs, [&](size_t i) {
        auto [a, b] = pairs[i];
        AdditivityReport rep = check_additivity(cat[a], cat[b], 6);
        if (!rep.equal)
          fails.set(i, std::string(name) + " pair (" + std::to_string(a) + "," + std::to_string(b) +
                           "): " + rep.discrepancy);
      });
      if (!fails.first().empty()) {
        r.pass = false;
        r.detail = fails.first();
        return;
      }
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > 120) {
      r.pass = false;
      r.detail = "runtime budget of 120 s exceeded";
    }
  }));

  // 7. sigma-admissibility: one dihedral set per carrier
  out.push_back(run_criterion(7, "unique sigma-admissible set per carrier", [&](CriterionResult& r) {
    GroupContext c2 = make_ctx("C2");
    WeakIndexingSystem w = arity_support(sign_rep(c2, c2.trivial_class()), 8);
    std::map<long long, int> per_carrier;
    for (const OrbitMultiset& x : w.levels[c2.top_class()]) per_carrier[carrier_size(c2, x)]++;
    for (int nn = 0; nn <= 8; ++nn)
      if (per_carrier[nn] != 1) {
        r.pass = false;
        r.detail = "carrier " + std::to_string(nn) + " has " + std::to_string(per_carrier[nn]) +
                   " admissible sets";
        return;
      }
  }));

  // 8. weak indexing category axioms through spans
  out.push_back(run_criterion(8, "pullback stability and Segal checks", [&](CriterionResult& r) {
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"C4", "C2xC2", "S3"}) {
      GroupContext ctx = make_ctx(name);
      std::vector<WeakIndexingSystem> cat = transfer_catalog(ctx, 8);
      std::vector<std::string> fails(cat.size());
      parallel_for(cat.size(), jobs, [&](size_t i) {
        SpanCheckReport p = verify_pullback_stability(ctx, cat[i], 200, seed ^ (uint64_t)i, 6);
        if (!p.pass || p.checks < 200) {
          fails[i] = !p.pass ? p.counterexample : "fewer than 200 pullback checks ran";
          return;
        }
        Rng rng(seed ^ (0x5e6a1 + i));
        auto window = level_window(ctx, ctx.top_class(), 4);
        for (int k = 0; k < 50; ++k) {
          const OrbitMultiset& t = window[rng.below(window.size())];
          const OrbitMultiset& s1 = window[rng.below(window.size())];
          const OrbitMultiset& s2 = window[rng.below(window.size())];
          SpanCheckReport sr = verify_segal(ctx, cat[i], t, s1, s2);
          if (!sr.pass) {
            fails[i] = "segal: " + sr.counterexample;
            return;
          }
        }
      });
      for (auto& s : fails)
        if (!s.empty()) {
          r.pass = false;
          r.detail = std::string(name) + ": " + s;
          return;
        }
    }
    // a deliberately corrupted family must fail with a witness
    GroupContext c4 = make_ctx("C4");
    WeakIndexingSystem broken = complete_system(c4, 8);
    int mid = class_by_order(c4, 2);
    const LevelLocal& lv = c4.level(mid);
    for (int l = 0; l < (int)lv.classes.size(); ++l)
      if (c4.subgroup(lv.classes[l].rep).order == 1) broken.levels[mid].erase(orbit_set(mid, l, 2));
    SpanCheckReport p = verify_pullback_stability(c4, broken, 0, seed, 6);
    if (p.pass || p.counterexample.empty()) {
      r.pass = false;
      r.detail = "corrupted family was not caught";
      return;
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > 120) {
      r.pass = false;
      r.detail = "runtime budget of 120 s exceeded";
    }
  }));

  // 9. Eckmann-Hilton failure machinery
  out.push_back(run_criterion(9, "interchange and distinctness witnesses", [&](CriterionResult& r) {
    auto t0 = std::chrono::steady_clock::now();
    EckmannHiltonReport eh = eckmann_hilton_failure_demo(4);
    if (!eh.commutative || !eh.associative || !eh.interchange || !eh.distinct) {
      r.pass = false;
      r.detail = "mod-4 demo failed";
      return;
    }
    for (const char* name : {"C2", "C3"}) {
      GroupContext ctx = make_ctx(name);
      for (uint64_t mask = 0; mask + 1 < (uint64_t{1} << ctx.num_classes()); ++mask) {
        Family f = family_none(ctx);
        for (int c = 0; c < ctx.num_classes(); ++c)
          if (mask & (uint64_t{1} << c)) f.in[c] = 1;
        if (!is_family(ctx, f)) continue;
        WeakIndexingSystem tnu = terminal_with_unit_family(ctx, f, 8);
        for (int level = 0; level < ctx.num_classes(); ++level)
          for (auto& s : level_window(ctx, level, 4)) {
            if (!tnu.contains(s)) continue;
            for (auto& t : level_window(ctx, level, 4)) {
              if (!tnu.contains(t)) continue;
              InterchangeReport rep = check_interchange(ctx, tnu, f, s, t, 4);
              if (!rep.pass) {
                r.pass = false;
                r.detail = std::string(name) + " " + to_string(ctx, f) + " S=" + to_string(ctx, s) +
                           " T=" + to_string(ctx, t) + ": " + rep.counterexample;
                return;
              }
            }
            // distinctness at levels outside the family
            if (!f.in[level] && !is_point(ctx, s)) {
              DistinctnessWitness w = distinctness_witness(ctx, tnu, f, s);
              if (w.zeroed != basepoint(level) || !(w.plain == element_of(s))) {
                r.pass = false;
                r.detail = "distinctness witness failed at " + to_string(ctx, s);
                return;
              }
            }
          }
      }
    }
    // full top-level window of terminal({e}) on C2
    GroupContext c2 = make_ctx("C2");
    Family fe = family_generated(c2, {c2.trivial_class()});
    WeakIndexingSystem tnu = terminal_with_unit_family(c2, fe, 8);
    for (const OrbitMultiset& s : tnu.levels[c2.top_class()]) {
      if (is_point(c2, s)) continue;
      DistinctnessWitness w = distinctness_witness(c2, tnu, fe, s);
      if (!(w.plain == element_of(s)) || !w.zeroed.zero) {
        r.pass = false;
        r.detail = "witness failed at " + to_string(c2, s);
        return;
      }
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > 60) {
      r.pass = false;
      r.detail = "runtime budget of 60 s exceeded";
    }
  }));

  // 10. mark calculus: exhaustive round trips and the coinduction oracle
  out.push_back(run_criterion(10, "mark calculus round trips and coinduction", [&](CriterionResult& r) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> names = {"C1", "C2",    "C3",    "C4",    "C5",  "C6",  "C7",
                                      "C8", "C9",    "C12",   "C24",   "C2xC2", "C2xC4", "C3xC3",
                                      "S3", "S4",    "D8",    "D12",   "Q8",  "A4"};
    Fails fails(names.size());
    parallel_for(names.size(), jobs, [&](size_t i) {
      GroupContext ctx = make_ctx(names[i]);
      if (ctx.group().order() > 24) {
        fails.set(i, names[i] + ": catalog group exceeds order 24");
        return;
      }
      for (int level = 0; level < ctx.num_classes(); ++level)
        for (auto& x : level_window(ctx, level, 20))
          if (!(iso_class_from_marks(ctx, marks(ctx, x)) == x)) {
            fails.set(i, names[i] + ": round trip failed at " + to_string(ctx, x));
            return;
          }
    });
    if (!fails.first().empty()) {
      r.pass = false;
      r.detail = fails.first();
      return;
    }
    // coinduction marks formula vs the explicit function-set construction
    std::vector<std::string> small = {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "D8", "Q8"};
    Fails cfails(small.size());
    parallel_for(small.size(), jobs, [&](size_t i) {
      GroupContext ctx = make_ctx(small[i]);
      for (int cK = 0; cK < ctx.num_classes(); ++cK) {
        long long index = ctx.group().order() / ctx.subgroup(ctx.cls(cK).rep).order;
        for (auto& x : level_window(ctx, cK, 3)) {
          long long size = carrier_size(ctx, x), pw = 1;
          bool skip = false;
          for (long long e = 0; e < index; ++e) {
            pw *= std::max(1ll, size);
            if (pw > 20000) {
              skip = true;
              break;
            }
          }
          if (skip) continue;
          OrbitMultiset lhs = coinduce_to_class(ctx, x, ctx.top_class());
          OrbitMultiset rhs = oracle::coinduce_explicit(ctx, x);
          if (!(lhs == rhs)) {
            cfails.set(i, small[i] + ": coinduction mismatch at " + to_string(ctx, x));
            return;
          }
        }
      }
    });
    if (!cfails.first().empty()) {
      r.pass = false;
      r.detail = cfails.first();
      return;
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > 120) {
      r.pass = false;
      r.detail = "runtime budget of 120 s exceeded";
    }
  }));

  // 11. saturation stability: the produced windows are unchanged under
  // re-saturation at larger bounds
  out.push_back(run_criterion(11, "saturation window stability", [&](CriterionResult& r) {
    // distinct systems produced by criteria 2-7
    std::vector<WeakIndexingSystem> produced;
    auto add = [&](WeakIndexingSystem w) {
      for (auto& have : produced)
        if (have.ctx->group().fingerprint() == w.ctx->group().fingerprint() && have == w) return;
      produced.push_back(std::move(w));
    };
    std::vector<std::shared_ptr<GroupContext>> keep;
    for (const char* name : {"C4", "C2xC2", "S3"}) {
      auto ctx = std::make_shared<GroupContext>(FiniteGroup::builtin(name));
      keep.push_back(ctx);
      std::vector<WeakIndexingSystem> cat = transfer_catalog(*ctx, 8);
      for (auto& w : cat) add(w);
      for (size_t a = 0; a < cat.size(); ++a)
        for (size_t b = a + 1; b < cat.size(); ++b) add(join(cat[a], cat[b]));
    }
    for (const char* name : {"C2", "C4", "C2xC2", "S3"}) {
      auto ctx = std::make_shared<GroupContext>(FiniteGroup::builtin(name));
      keep.push_back(ctx);
      auto cat = rep_catalog(*ctx);
      for (size_t a = 0; a < cat.size(); ++a) {
        add(arity_support(cat[a], 6));
        for (size_t b = a; b < cat.size(); ++b) add(arity_support(direct_sum(cat[a], cat[b]), 6));
      }
    }
    Fails fails(produced.size());
    parallel_for(produced.size(), jobs, [&](size_t i) {
      const WeakIndexingSystem& w = produced[i];
      for (int extra : {2, 4}) {
        WeakIndexingSystem big = resaturate(w, w.bound + extra);
        if (!equal_within(w, big, w.bound)) {
          fails.set(i, "window changed at bound +" + std::to_string(extra) + " (group " +
                           w.ctx->group().name() + ")");
          return;
        }
      }
    });
    if (!fails.first().empty()) {
      r.pass = false;
      r.detail = fails.first();
    }
  }));

  return out;
}

inline std::string format_results(const std::vector<CriterionResult>& rs) {
  std::ostringstream os;
  bool all = true;
  for (auto& r : rs) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name;
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    os << buf;
    if (!r.pass) os << "\n       " << r.detail;
    os << "\n";
    all = all && r.pass;
  }
  os << (all ? "acceptance: all criteria passed" : "acceptance: FAILURES present") << "\n";
  return os.str();
}

}  // namespace normcalc
