#include <doctest.h>

#include "normcalc/windex.hpp"

using namespace normcalc;

namespace {

const GroupContext& C1() {
  static GroupContext ctx(FiniteGroup::builtin("C1"));
  return ctx;
}
const GroupContext& C2() {
  static GroupContext ctx(FiniteGroup::builtin("C2"));
  return ctx;
}
const GroupContext& C4() {
  static GroupContext ctx(FiniteGroup::builtin("C4"));
  return ctx;
}
const GroupContext& S3() {
  static GroupContext ctx(FiniteGroup::builtin("S3"));
  return ctx;
}

int local_by_order(const GroupContext& ctx, int level, int order, int nth = 0) {
  const LevelLocal& lv = ctx.level(level);
  int seen = 0;
  for (int l = 0; l < (int)lv.classes.size(); ++l)
    if (ctx.subgroup(lv.classes[l].rep).order == order && seen++ == nth) return l;
  REQUIRE(false);
  return -1;
}

Family family_e(const GroupContext& ctx) { return family_generated(ctx, {ctx.trivial_class()}); }

// nonunital commutative shadow: everything except the empty set
WeakIndexingSystem comm_nu(const GroupContext& ctx, int B) {
  return terminal_with_unit_family(ctx, family_none(ctx), B);
}

}  // namespace

TEST_CASE("saturating the top point gives the initial one-color system") {
  for (const GroupContext* ctx : {&C2(), &S3()}) {
    WeakIndexingSystem w = saturate(*ctx, {point_set(*ctx, ctx->top_class())}, 8);
    CHECK(w == trivial_system(*ctx, 8));
    CHECK(!validate(w));
  }
}

TEST_CASE("saturating 2* over the trivial group gives the nonunital multiples") {
  const auto& ctx = C1();
  OrbitMultiset two = orbit_set(0, 0, 2);
  WeakIndexingSystem w = saturate(ctx, {two}, 8);
  CHECK(w.levels[0].size() == 8);  // n = 1..8, no empty set
  CHECK(!w.contains(empty_set(0)));
  for (int n = 1; n <= 8; ++n) CHECK(w.contains(orbit_set(0, 0, n)));
  CHECK(w == comm_nu(ctx, 8));
}

TEST_CASE("saturating {0_e, *_G} over C2 gives the inflated system") {
  const auto& ctx = C2();
  WeakIndexingSystem w =
      saturate(ctx, {empty_set(ctx.trivial_class()), point_set(ctx, ctx.top_class())}, 8);
  CHECK(w == inflated_system(ctx, family_e(ctx), 8));
}

TEST_CASE("generators that exceed the bound are rejected") {
  const auto& ctx = C2();
  OrbitMultiset big = orbit_set(ctx.top_class(), point_local_class(ctx, ctx.top_class()), 9);
  try {
    saturate(ctx, {big}, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundTooSmall);
  }
}

TEST_CASE("membership verdicts are bound-relative") {
  const auto& ctx = C2();
  WeakIndexingSystem triv = trivial_system(ctx, 8);
  CHECK(membership(triv, point_set(ctx, ctx.top_class())) == Membership::Admissible);
  OrbitMultiset twostar = orbit_set(ctx.top_class(), point_local_class(ctx, ctx.top_class()), 2);
  CHECK(membership(triv, twostar) == Membership::InadmissibleWithinBound);
  WeakIndexingSystem full = complete_system(ctx, 8);
  for (int c = 0; c < ctx.num_classes(); ++c)
    for (auto& x : level_window(ctx, c, 8)) CHECK(membership(full, x) == Membership::Admissible);
  OrbitMultiset big = orbit_set(ctx.top_class(), point_local_class(ctx, ctx.top_class()), 9);
  CHECK_THROWS_AS(membership(full, big), Error);
}

TEST_CASE("color and unit families") {
  const auto& c2 = C2();
  WeakIndexingSystem triv = trivial_system(c2, 8);
  CHECK(color_family(triv) == family_all(c2));
  CHECK(unit_family(triv) == family_none(c2));
  WeakIndexingSystem i0 = inflated_system(c2, family_e(c2), 8);
  CHECK(color_family(i0) == family_all(c2));
  CHECK(unit_family(i0) == family_e(c2));
  WeakIndexingSystem full = complete_system(c2, 8);
  CHECK(color_family(full) == family_all(c2));
  CHECK(unit_family(full) == family_all(c2));
}

TEST_CASE("predicates classify the builtins") {
  const auto& c1 = C1();
  SystemPredicates nu = predicates(comm_nu(c1, 8));
  CHECK(!nu.is_aE_unital);
  CHECK(nu.has_one_color);
  CHECK(!nu.is_unital);
  CHECK(!nu.is_indexing_system);  // no empty set, so no nullary coproduct

  const auto& c2 = C2();
  SystemPredicates p0 = predicates(inflated_system(c2, family_e(c2), 8));
  CHECK(!p0.is_unital);
  CHECK(p0.is_almost_unital);
  CHECK(p0.is_aE_unital);
  CHECK(!p0.is_indexing_system);  // 2* is missing at level e

  SystemPredicates pc = predicates(complete_system(c2, 8));
  CHECK(pc.has_one_color);
  CHECK(pc.is_unital);
  CHECK(pc.is_almost_unital);
  CHECK(pc.is_aE_unital);
  CHECK(pc.is_indexing_system);

  SystemPredicates pt = predicates(trivial_system(c2, 8));
  CHECK(pt.is_aE_unital);  // no noncontractible sets at all
  CHECK(!pt.is_unital);
  CHECK(!pt.is_indexing_system);  // 2* missing

  SystemPredicates pe = predicates(einfty_system(c2, 8));
  CHECK(pe.is_unital);
  CHECK(pe.is_indexing_system);
}

TEST_CASE("meet basics") {
  const auto& c2 = C2();
  WeakIndexingSystem full = complete_system(c2, 8), triv = trivial_system(c2, 8);
  CHECK(meet(full, full) == full);
  CHECK(meet(triv, full) == triv);
  CHECK_THROWS_AS(meet(full, complete_system(c2, 6)), Error);  // bound mismatch
}

TEST_CASE("join basics and monotonicity") {
  const auto& c4 = C4();
  WeakIndexingSystem triv = trivial_system(c4, 8);
  WeakIndexingSystem full = complete_system(c4, 8);
  CHECK(join(triv, triv) == triv);
  CHECK(join(full, full) == full);
  CHECK(join(triv, full) == full);
  // the one-generator systems on C4 = C_{p^2}
  int mid = -1;
  for (int c = 0; c < c4.num_classes(); ++c)
    if (c4.subgroup(c4.cls(c).rep).order == 2) mid = c;
  OrbitMultiset lower = orbit_set(mid, local_by_order(c4, mid, 1));  // [C_p/e]
  OrbitMultiset upper =
      orbit_set(c4.top_class(), local_by_order(c4, c4.top_class(), 2));  // [C_p^2/C_p]
  WeakIndexingSystem w1 = saturate(c4, {lower}, 8);
  WeakIndexingSystem w2 = saturate(c4, {upper}, 8);
  WeakIndexingSystem j = join(w1, w2);
  CHECK(subset_within(w1, j));
  CHECK(subset_within(w2, j));
  // the composite transfer e -> C_{p^2} appears in the join
  OrbitMultiset freetop = orbit_set(c4.top_class(), local_by_order(c4, c4.top_class(), 1));
  CHECK(!w1.contains(freetop));
  CHECK(!w2.contains(freetop));
  CHECK(j.contains(freetop));
  CHECK(!validate(j));
  // monotone in each slot
  CHECK(subset_within(join(w1, triv), join(w1, full)));
}

TEST_CASE("absorption laws on sampled systems") {
  const auto& c4 = C4();
  int mid = -1;
  for (int c = 0; c < c4.num_classes(); ++c)
    if (c4.subgroup(c4.cls(c).rep).order == 2) mid = c;
  std::vector<WeakIndexingSystem> cat = {
      trivial_system(c4, 8), complete_system(c4, 8), einfty_system(c4, 8),
      saturate(c4, {orbit_set(mid, local_by_order(c4, mid, 1))}, 8)};
  for (auto& a : cat)
    for (auto& b : cat) {
      CHECK(join(a, meet(a, b)) == a);
      CHECK(meet(a, join(a, b)) == a);
      CHECK(join(a, b) == join(b, a));
      CHECK(meet(a, b) == meet(b, a));
    }
}

TEST_CASE("borelify") {
  const auto& c2 = C2();
  Family fe = family_e(c2);
  WeakIndexingSystem full = complete_system(c2, 8);
  WeakIndexingSystem b = borelify(full, fe);
  CHECK(b.levels[c2.trivial_class()].size() == full.levels[c2.trivial_class()].size());
  CHECK(b.levels[c2.top_class()].empty());
  CHECK(borelify(full, family_all(c2)) == full);
  WeakIndexingSystem i0 = inflated_system(c2, fe, 8);
  WeakIndexingSystem bi = borelify(i0, fe);
  CHECK(bi.levels[c2.trivial_class()].size() == 2);  // {0, *}
  CHECK(bi.levels[c2.top_class()].empty());
  // the extension back along the inclusion is the identity on windows
  CHECK(extend(bi) == bi);
  CHECK_THROWS_AS(borelify(full, Family{std::vector<char>{0, 1}}), Error);  // not downward closed
}

TEST_CASE("tensor formula") {
  const auto& c2 = C2();
  WeakIndexingSystem triv = trivial_system(c2, 8);
  WeakIndexingSystem full = complete_system(c2, 8);
  WeakIndexingSystem i0 = inflated_system(c2, family_e(c2), 8);
  // triv is the unit on one-color systems
  for (const WeakIndexingSystem* w : {&full, &i0, &triv}) {
    TensorResult t = tensor_weak_ninfty(triv, *w);
    CHECK(t.system == *w);
  }
  // idempotence for one-color systems
  CHECK(tensor_weak_ninfty(i0, i0).system == i0);
  // color law
  WeakIndexingSystem be = borelify(full, family_e(c2));
  TensorResult t = tensor_weak_ninfty(be, full);
  CHECK(color_family(t.system) == family_e(c2));
  CHECK(t.rhs_aE_unital);
}

TEST_CASE("terminal system with unit family") {
  const auto& c2 = C2();
  // F = all: no deletion
  CHECK(terminal_with_unit_family(c2, family_all(c2), 6) == complete_system(c2, 6));
  // trivial group, F empty: the nonunital multiples
  const auto& c1 = C1();
  WeakIndexingSystem nu = comm_nu(c1, 8);
  CHECK(!nu.contains(empty_set(0)));
  CHECK(nu.levels[0].size() == 8);
  // C2 with F = {e}: level C2 keeps sets with a fixed orbit, drops the
  // purely-free ones (their orbits all have stabilizer class e, inside F);
  // unit family comes out exactly {e}
  WeakIndexingSystem t = terminal_with_unit_family(c2, family_e(c2), 8);
  int top = c2.top_class();
  int freecls = local_by_order(c2, top, 1);
  CHECK(!t.contains(orbit_set(top, freecls)));                       // [C2/e] excluded
  CHECK(!t.contains(empty_set(top)));                                // 0 excluded
  CHECK(t.contains(orbit_set(top, point_local_class(c2, top), 2)));  // 2* admissible
  CHECK(t.contains(disjoint_union(orbit_set(top, freecls), point_set(c2, top))));
  CHECK(unit_family(t) == family_e(c2));
  CHECK(!validate(t));
  // every system with unit family inside F sits under the terminal one
  CHECK(subset_within(inflated_system(c2, family_e(c2), 8), t));
  CHECK(subset_within(trivial_system(c2, 8), t));
}

TEST_CASE("restrict_system") {
  const auto& c2 = C2();
  SubgroupEmbedding emb = embed_subgroup(c2, c2.trivial_class());
  WeakIndexingSystem r = restrict_system(complete_system(c2, 8), emb);
  CHECK(r == complete_system(*emb.sub, 8));
  WeakIndexingSystem r0 = restrict_system(inflated_system(c2, family_e(c2), 8), emb);
  CHECK(r0.levels[0].size() == 2);
  CHECK(r0.contains(empty_set(0)));
  CHECK(!validate(r0));
}

TEST_CASE("restrict_system on S3 levels validates") {
  const auto& s3 = S3();
  WeakIndexingSystem full = complete_system(s3, 6);
  for (int c = 0; c < s3.num_classes(); ++c) {
    SubgroupEmbedding emb = embed_subgroup(s3, c);
    WeakIndexingSystem r = restrict_system(full, emb);
    CHECK(!validate(r));
    CHECK(r == complete_system(*emb.sub, 6));
  }
}

TEST_CASE("induce_system and coinduce_system with Galois laws") {
  const auto& c2 = C2();
  SubgroupEmbedding emb = embed_subgroup(c2, c2.trivial_class());
  // least system with * at e: {*} at e, nothing at C2
  WeakIndexingSystem triv_e = trivial_system(*emb.sub, 8);
  WeakIndexingSystem ind = induce_system(triv_e, emb);
  CHECK(ind.levels[c2.trivial_class()].size() == 1);
  CHECK(ind.levels[c2.top_class()].empty());
  CHECK(subset_within(triv_e, restrict_system(ind, emb)));
  // coinduction of complete is complete
  WeakIndexingSystem co = coinduce_system(complete_system(*emb.sub, 8), emb);
  CHECK(co == complete_system(c2, 8));
  CHECK(subset_within(restrict_system(co, emb), complete_system(*emb.sub, 8)));
  // Galois sample: einfty over the subgroup
  WeakIndexingSystem we = einfty_system(*emb.sub, 8);
  WeakIndexingSystem ind2 = induce_system(we, emb);
  CHECK(subset_within(we, restrict_system(ind2, emb)));
  WeakIndexingSystem co2 = coinduce_system(we, emb);
  CHECK(subset_within(restrict_system(co2, emb), we));
}

TEST_CASE("restrict_system across fusing classes on D8") {
  // inside the normal C2xC2 of D8 the two reflection subgroups are
  // D8-conjugate but not conjugate in the subgroup; the transports must
  // still carry well-defined level data
  GroupContext d8(FiniteGroup::builtin("D8"));
  int v4 = -1;
  for (int c = 0; c < d8.num_classes(); ++c)
    if (d8.subgroup(d8.cls(c).rep).order == 4 && d8.level(c).classes.size() == 5) v4 = c;
  REQUIRE(v4 >= 0);
  SubgroupEmbedding emb = embed_subgroup(d8, v4);
  CHECK(restrict_system(complete_system(d8, 6), emb) == complete_system(*emb.sub, 6));
  CHECK(restrict_system(einfty_system(d8, 6), emb) == einfty_system(*emb.sub, 6));
  // a transfer-generated system restricts to a valid system; seed it at a
  // reflection orbit of the level (a local class whose D8-class is split)
  int refl_local = -1;
  for (int l = 0; l < (int)d8.level(v4).classes.size(); ++l) {
    const LocalClass& lc = d8.level(v4).classes[l];
    if (d8.subgroup(lc.rep).order == 2 && d8.cls(lc.g_class).members.size() == 2) refl_local = l;
  }
  REQUIRE(refl_local >= 0);
  WeakIndexingSystem w = saturate(d8, {orbit_set(v4, refl_local, 1)}, 6);
  WeakIndexingSystem r = restrict_system(w, emb);
  CHECK(!validate(r));
}

TEST_CASE("coinduce_system over S3") {
  const auto& s3 = S3();
  int c3 = -1;
  for (int c = 0; c < s3.num_classes(); ++c)
    if (s3.subgroup(s3.cls(c).rep).order == 3) c3 = c;
  SubgroupEmbedding emb = embed_subgroup(s3, c3);
  WeakIndexingSystem w = einfty_system(*emb.sub, 6);
  WeakIndexingSystem co = coinduce_system(w, emb);
  CHECK(!validate(co));
  CHECK(subset_within(restrict_system(co, emb), w));
}

TEST_CASE("restriction preserves joins and meets") {
  // Res carries both adjoints, so it is a lattice map on windows
  for (const char* name : {"C4", "S3", "D8"}) {
    GroupContext ctx(FiniteGroup::builtin(name));
    std::vector<WeakIndexingSystem> cat = {trivial_system(ctx, 6), einfty_system(ctx, 6),
                                           complete_system(ctx, 6),
                                           inflated_system(ctx, family_e(ctx), 6)};
    for (int c = 0; c < ctx.num_classes(); ++c) {
      if (c == ctx.top_class()) continue;
      SubgroupEmbedding emb = embed_subgroup(ctx, c);
      for (auto& a : cat)
        for (auto& b : cat) {
          CHECK(restrict_system(join(a, b), emb) ==
                join(restrict_system(a, emb), restrict_system(b, emb)));
          CHECK(restrict_system(meet(a, b), emb) ==
                meet(restrict_system(a, emb), restrict_system(b, emb)));
        }
    }
  }
}

TEST_CASE("galois laws across the D8 Klein level") {
  GroupContext d8(FiniteGroup::builtin("D8"));
  int v4 = -1;
  for (int c = 0; c < d8.num_classes(); ++c)
    if (d8.subgroup(d8.cls(c).rep).order == 4 && d8.level(c).classes.size() == 5) v4 = c;
  REQUIRE(v4 >= 0);
  SubgroupEmbedding emb = embed_subgroup(d8, v4);
  for (const WeakIndexingSystem& w :
       {trivial_system(*emb.sub, 6), einfty_system(*emb.sub, 6), complete_system(*emb.sub, 6)}) {
    WeakIndexingSystem ind = induce_system(w, emb);
    CHECK(!validate(ind));
    CHECK(subset_within(w, restrict_system(ind, emb)));
    WeakIndexingSystem co = coinduce_system(w, emb);
    CHECK(!validate(co));
    CHECK(subset_within(restrict_system(co, emb), w));
    // the adjunction triangle: Ind is least, CoInd is greatest
    CHECK(subset_within(ind, join(ind, co)));
  }
}

TEST_CASE("builtins validate and stabilize under larger bounds") {
  for (const GroupContext* ctx : {&C2(), &C4(), &S3()}) {
    for (const WeakIndexingSystem& w :
         {trivial_system(*ctx, 6), complete_system(*ctx, 6), einfty_system(*ctx, 6),
          inflated_system(*ctx, family_e(*ctx), 6)}) {
      CHECK(!validate(w));
      WeakIndexingSystem bigger = resaturate(w, 8);
      CHECK(equal_within(w, bigger, 6));
    }
  }
}

TEST_CASE("every operation output validates") {
  const auto& c4 = C4();
  int mid = -1;
  for (int c = 0; c < c4.num_classes(); ++c)
    if (c4.subgroup(c4.cls(c).rep).order == 2) mid = c;
  std::vector<WeakIndexingSystem> cat = {
      trivial_system(c4, 6), complete_system(c4, 6), einfty_system(c4, 6),
      inflated_system(c4, family_e(c4), 6), terminal_with_unit_family(c4, family_e(c4), 6),
      saturate(c4, {orbit_set(mid, local_by_order(c4, mid, 1))}, 6)};
  for (auto& a : cat) {
    CHECK(!validate(a));
    for (auto& b : cat) {
      CHECK(!validate(join(a, b)));
      CHECK(!validate(meet(a, b)));
      CHECK(!validate(tensor_weak_ninfty(a, b).system));
    }
    for (int c = 0; c < c4.num_classes(); ++c)
      CHECK(!validate(borelify(a, family_generated(c4, {c}))));
  }
}

TEST_CASE("join of different bounds saturates at the larger one") {
  const auto& c2 = C2();
  WeakIndexingSystem small = einfty_system(c2, 6);
  WeakIndexingSystem large = trivial_system(c2, 8);
  WeakIndexingSystem j = join(small, large);
  CHECK(j.bound == 8);
  CHECK(j == einfty_system(c2, 8));  // the multiples regenerate up to 8
}

TEST_CASE("color law of join") {
  const auto& c2 = C2();
  WeakIndexingSystem full = complete_system(c2, 8);
  WeakIndexingSystem be = borelify(full, family_e(c2));
  WeakIndexingSystem j = join(be, trivial_system(c2, 8));
  CHECK(color_family(j) == family_all(c2));  // union of colors
  CHECK(subset_within(be, j));
}
