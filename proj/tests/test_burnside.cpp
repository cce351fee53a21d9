#include <doctest.h>

#include <map>

#include "normcalc/burnside.hpp"

using namespace normcalc;

namespace {

const GroupContext& ctx_of(const char* name) {
  static std::map<std::string, GroupContext*> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, new GroupContext(FiniteGroup::builtin(name))).first;
  return *it->second;
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

std::vector<Family> proper_families(const GroupContext& ctx) {
  // all families except the full one
  std::vector<Family> out;
  for (uint64_t mask = 0; mask + 1 < (uint64_t{1} << ctx.num_classes()); ++mask) {
    Family f = family_none(ctx);
    for (int c = 0; c < ctx.num_classes(); ++c)
      if (mask & (uint64_t{1} << c)) f.in[c] = 1;
    if (is_family(ctx, f)) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("plain transfers") {
  const auto& c2 = ctx_of("C2");
  int top = c2.top_class();
  WeakIndexingSystem full = complete_system(c2, 8);
  OrbitMultiset freem = orbit_set(top, local_by_order(c2, top, 1));
  // identity indexing
  BurnsideElement x = element_of(freem);
  CHECK(tr(c2, &full, point_set(c2, top), {x}) == x);
  // induction of a point along the free orbit
  BurnsideElement pt_e = element_of(point_set(c2, c2.trivial_class()));
  CHECK(tr(c2, &full, freem, {pt_e}) == element_of(freem));
  // S-indexed coproduct of two copies doubles
  OrbitMultiset twostar = orbit_set(top, point_local_class(c2, top), 2);
  BurnsideElement s = element_of(freem);
  CHECK(tr(c2, &full, twostar, {s, s}) == element_of(disjoint_union(freem, freem)));
  // basepoint propagates
  CHECK(tr(c2, &full, twostar, {s, basepoint(top)}).zero);
  // shape errors
  CHECK_THROWS_AS(tr(c2, &full, twostar, {s}), Error);
  CHECK_THROWS_AS(tr(c2, &full, freem, {x}), Error);  // wrong level input
  // inadmissible index
  WeakIndexingSystem triv = trivial_system(c2, 8);
  CHECK_THROWS_AS(tr(c2, &triv, freem, {pt_e}), Error);
}

TEST_CASE("zeroed transfers") {
  const auto& c2 = ctx_of("C2");
  int top = c2.top_class();
  WeakIndexingSystem full = complete_system(c2, 8);
  Family fe = family_e(c2);
  // level in the family: agrees with tr
  OrbitMultiset two_e = orbit_set(c2.trivial_class(), 0, 2);
  BurnsideElement pt_e = element_of(point_set(c2, c2.trivial_class()));
  CHECK(tr_zero(c2, &full, fe, two_e, {pt_e, pt_e}) == tr(c2, &full, two_e, {pt_e, pt_e}));
  // level outside: noncontractible index hits the basepoint
  OrbitMultiset twostar = orbit_set(top, point_local_class(c2, top), 2);
  BurnsideElement pt_top = element_of(point_set(c2, top));
  CHECK(tr_zero(c2, &full, fe, twostar, {pt_top, pt_top}).zero);
  // contractible index is the identity
  CHECK(tr_zero(c2, &full, fe, point_set(c2, top), {pt_top}) == pt_top);
}

TEST_CASE("restriction of elements") {
  const auto& c2 = ctx_of("C2");
  int top = c2.top_class();
  BurnsideElement z = basepoint(top);
  CHECK(restrict_element(c2, z, c2.trivial_class()).zero);
  BurnsideElement pt = element_of(point_set(c2, top));
  CHECK(restrict_element(c2, pt, c2.trivial_class()) ==
        element_of(point_set(c2, c2.trivial_class())));
}

TEST_CASE("iterated transfers flatten onto the composite index") {
  const auto& c2 = ctx_of("C2");
  int top = c2.top_class();
  WeakIndexingSystem full = complete_system(c2, 8);
  const LevelLocal& lv = c2.level(top);
  for (auto& s : level_window(c2, top, 4)) {
    // one inner index per orbit copy of s, all equal to 2 points at the
    // copy's level; inner inputs are points
    auto copies = orbit_copies(s);
    std::vector<BurnsideElement> mids;
    std::vector<OrbitMultiset> inner_sets;
    bool ok = true;
    for (int c : copies) {
      int lvl = lv.classes[c].g_class;
      OrbitMultiset t2 = orbit_set(lvl, point_local_class(c2, lvl), 2);
      if (carrier_size(c2, t2) * lv.classes[c].orbit_size > 8) {
        ok = false;
        break;
      }
      inner_sets.push_back(t2);
      BurnsideElement pt = element_of(point_set(c2, lvl));
      mids.push_back(tr(c2, &full, t2, {pt, pt}));
    }
    if (!ok) continue;
    BurnsideElement nested = tr(c2, &full, s, mids);
    // composite index and flattened inputs
    OrbitMultiset composite = indexed_coproduct(c2, s, inner_sets);
    std::vector<BurnsideElement> flat;
    for (int c : orbit_copies(composite))
      flat.push_back(element_of(point_set(c2, c2.level(top).classes[c].g_class)));
    BurnsideElement direct = tr(c2, &full, composite, flat);
    CHECK(nested == direct);
  }
}

TEST_CASE("indexed coproducts of restrictions compute products") {
  // the projection formula: the S-indexed coproduct of Res_U(Y) is S x Y,
  // checked against the concrete product decomposition
  for (const char* name : {"C2", "S3"}) {
    const auto& ctx = ctx_of(name);
    int top = ctx.top_class();
    WeakIndexingSystem full = complete_system(ctx, 10);
    const LevelLocal& lv = ctx.level(top);
    for (auto& s : level_window(ctx, top, 6))
      for (auto& y : level_window(ctx, top, 4)) {
        if (carrier_size(ctx, s) * carrier_size(ctx, y) > 10) continue;
        if (s.empty()) continue;
        std::vector<BurnsideElement> inputs;
        for (int c : orbit_copies(s))
          inputs.push_back(element_of(restrict_to_class(ctx, y, lv.classes[c].g_class)));
        BurnsideElement lhs = tr(ctx, &full, s, inputs);
        OrbitMultiset rhs = orbit_decompose(ctx, product(ctx, realize(ctx, s), realize(ctx, y)));
        CHECK(lhs == element_of(rhs));
      }
  }
}

TEST_CASE("interchange holds exhaustively on small inputs over C2 and C3") {
  for (const char* name : {"C2", "C3"}) {
    const auto& ctx = ctx_of(name);
    WeakIndexingSystem full = complete_system(ctx, 8);
    for (const Family& f : proper_families(ctx)) {
      WeakIndexingSystem tnu = terminal_with_unit_family(ctx, f, 8);
      for (int level = 0; level < ctx.num_classes(); ++level)
        for (auto& s : level_window(ctx, level, 4))
          for (auto& t : level_window(ctx, level, 4)) {
            if (!tnu.contains(s) || !tnu.contains(t)) continue;
            InterchangeReport rep = check_interchange(ctx, tnu, f, s, t, 4);
            CHECK(rep.pass);
          }
    }
  }
}

TEST_CASE("interchange at noncontractible top-level indices over C2") {
  const auto& c2 = ctx_of("C2");
  Family fe = family_e(c2);
  WeakIndexingSystem tnu = terminal_with_unit_family(c2, fe, 8);
  int top = c2.top_class();
  // mu_2 = [C2/e] is not admissible in the terminal system with unit family
  // {e} (all its orbit stabilizers lie in the family), so the square is
  // checked at the admissible noncontractible sets instead
  OrbitMultiset mu2 = orbit_set(top, local_by_order(c2, top, 1));
  CHECK(!tnu.contains(mu2));
  OrbitMultiset twostar = orbit_set(top, point_local_class(c2, top), 2);
  OrbitMultiset mixed = disjoint_union(mu2, point_set(c2, top));
  for (const OrbitMultiset* s : {&twostar, &mixed}) {
    REQUIRE(tnu.contains(*s));
    InterchangeReport rep = check_interchange(c2, tnu, fe, *s, *s, 4);
    CHECK(rep.pass);
    CHECK(rep.inputs_checked >= 10);
  }
}

TEST_CASE("the square genuinely fails at mu_2 outside the wide subcategory") {
  // with the complete system allowing mu_2 as an index, one composite hits
  // the basepoint while the other does not: the two structures only
  // interchange over the terminal-family subcategory
  const auto& c2 = ctx_of("C2");
  Family fe = family_e(c2);
  WeakIndexingSystem full = complete_system(c2, 8);
  OrbitMultiset mu2 = orbit_set(c2.top_class(), local_by_order(c2, c2.top_class(), 1));
  InterchangeReport rep = check_interchange(c2, full, fe, mu2, mu2, 3);
  CHECK(!rep.pass);
  CHECK(!rep.counterexample.empty());
}

TEST_CASE("distinctness witnesses") {
  // trivial group, empty family, S = 2 points
  const auto& c1 = ctx_of("C1");
  WeakIndexingSystem nu1 = terminal_with_unit_family(c1, family_none(c1), 8);
  OrbitMultiset two = orbit_set(0, 0, 2);
  DistinctnessWitness w = distinctness_witness(c1, nu1, family_none(c1), two);
  CHECK(w.plain == element_of(two));
  CHECK(w.zeroed.zero);
  // C2 with F = {e}: the mixed set [C2/e] + * separates
  const auto& c2 = ctx_of("C2");
  Family fe = family_e(c2);
  WeakIndexingSystem tnu = terminal_with_unit_family(c2, fe, 8);
  int top = c2.top_class();
  OrbitMultiset mixed =
      disjoint_union(orbit_set(top, local_by_order(c2, top, 1)), point_set(c2, top));
  REQUIRE(tnu.contains(mixed));
  DistinctnessWitness w2 = distinctness_witness(c2, tnu, fe, mixed);
  CHECK(w2.plain == element_of(mixed));
  CHECK(carrier_size(c2, w2.plain.value) == 3);
  CHECK(w2.zeroed.zero);
  // contractible index: no witness required
  CHECK_THROWS_AS(distinctness_witness(c2, tnu, fe, point_set(c2, top)), Error);
  // every admissible noncontractible top-level set separates
  for (const OrbitMultiset& s : tnu.levels[top]) {
    if (is_point(c2, s)) continue;
    DistinctnessWitness ws = distinctness_witness(c2, tnu, fe, s);
    CHECK(ws.plain == element_of(s));
    CHECK(ws.zeroed.zero);
  }
}

TEST_CASE("eckmann-hilton failure demo") {
  EckmannHiltonReport r2 = eckmann_hilton_failure_demo(2);
  CHECK(r2.commutative);
  CHECK(r2.associative);
  CHECK(r2.interchange);
  CHECK(r2.distinct);
  CHECK(r2.differing_pair == std::pair<int, int>{1, 1});
  EckmannHiltonReport r4 = eckmann_hilton_failure_demo(4);
  CHECK(r4.commutative);
  CHECK(r4.associative);
  CHECK(r4.interchange);
  CHECK(r4.distinct);
  EckmannHiltonReport r1 = eckmann_hilton_failure_demo(1);
  CHECK(r1.degenerate);
  CHECK(!r1.distinct);
}
