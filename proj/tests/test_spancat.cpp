#include <doctest.h>

#include <map>

#include "normcalc/spancat.hpp"
#include "normcalc/transfer.hpp"

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

SpanHom hom_of(const std::vector<BasicSpan>& v) {
  SpanHom h;
  for (auto& b : v) h.add(b, 1);
  return h;
}

}  // namespace

TEST_CASE("basic span enumeration counts") {
  const auto& c1 = ctx_of("C1");
  ConcreteGSet none1 = make_concrete(c1, 0, {});
  CHECK(basic_spans(c1, none1, none1).empty());
  ConcreteGSet pt1 = realize(c1, point_set(c1, c1.top_class()));
  CHECK(basic_spans(c1, pt1, pt1).size() == 1);

  const auto& c2 = ctx_of("C2");
  ConcreteGSet pt = realize(c2, point_set(c2, c2.top_class()));
  WeakIndexingSystem full = complete_system(c2, 8);
  auto spans = basic_spans(c2, pt, pt, &full);
  CHECK(spans.size() == 2);  // apexes *_{C2} and [C2/e]
}

TEST_CASE("hom(*,*) basis matches the orbit types of the Burnside monoid") {
  for (const char* name : {"C2", "C4", "S3", "D8", "A4", "Q8"}) {
    const auto& ctx = ctx_of(name);
    ConcreteGSet pt = realize(ctx, point_set(ctx, ctx.top_class()));
    auto spans = basic_spans(ctx, pt, pt);
    CHECK((int)spans.size() == ctx.num_classes());
    std::set<int> apexes;
    for (auto& s : spans) apexes.insert(s.apex_class);
    CHECK((int)apexes.size() == ctx.num_classes());
  }
}

TEST_CASE("identity law") {
  const auto& c2 = ctx_of("C2");
  OrbitMultiset freem = orbit_set(c2.top_class(), local_by_order(c2, c2.top_class(), 1));
  OrbitMultiset mix = disjoint_union(freem, point_set(c2, c2.top_class()));
  ConcreteGSet X = realize(c2, mix);
  ConcreteGSet Pt = realize(c2, point_set(c2, c2.top_class()));
  SpanHom idX = identity_hom(c2, X);
  SpanHom f = hom_of(basic_spans(c2, X, Pt));
  CHECK(compose(c2, X, X, Pt, idX, f) == f);
  SpanHom g = hom_of(basic_spans(c2, Pt, X));
  CHECK(compose(c2, Pt, X, X, g, idX) == g);
}

TEST_CASE("composing the free self-span of the point doubles it") {
  const auto& c2 = ctx_of("C2");
  ConcreteGSet Pt = realize(c2, point_set(c2, c2.top_class()));
  auto spans = basic_spans(c2, Pt, Pt);
  REQUIRE(spans.size() == 2);
  BasicSpan freespan = spans[0];
  for (auto& s : spans)
    if (c2.subgroup(c2.cls(s.apex_class).rep).order == 1) freespan = s;
  auto out = compose_basic(c2, Pt, Pt, Pt, freespan, freespan);
  REQUIRE(out.size() == 1);
  CHECK(out[0].first == freespan);
  CHECK(out[0].second == 2);  // [C2/e] x [C2/e] = 2 [C2/e]
}

TEST_CASE("zero hom absorbs under composition") {
  const auto& c2 = ctx_of("C2");
  ConcreteGSet Pt = realize(c2, point_set(c2, c2.top_class()));
  SpanHom f = hom_of(basic_spans(c2, Pt, Pt));
  SpanHom zero;
  CHECK(compose(c2, Pt, Pt, Pt, f, zero).zero());
  CHECK(compose(c2, Pt, Pt, Pt, zero, f).zero());
}

TEST_CASE("composition is associative on sampled triples") {
  const auto& c2 = ctx_of("C2");
  int top = c2.top_class();
  OrbitMultiset freem = orbit_set(top, local_by_order(c2, top, 1));
  std::vector<OrbitMultiset> objs = {point_set(c2, top), freem,
                                     disjoint_union(freem, point_set(c2, top))};
  for (auto& xo : objs)
    for (auto& yo : objs)
      for (auto& zo : objs) {
        ConcreteGSet X = realize(c2, xo), Y = realize(c2, yo), Z = realize(c2, zo);
        SpanHom f = hom_of(basic_spans(c2, X, Y));
        SpanHom g = hom_of(basic_spans(c2, Y, Z));
        SpanHom h = hom_of(basic_spans(c2, Z, X));
        SpanHom lhs = compose(c2, X, Z, X, compose(c2, X, Y, Z, f, g), h);
        SpanHom rhs = compose(c2, X, Y, X, f, compose(c2, Y, Z, X, g, h));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("composition is associative over S3 up to carrier 8") {
  const auto& s3 = ctx_of("S3");
  int top = s3.top_class();
  OrbitMultiset c2orb = orbit_set(top, local_by_order(s3, top, 2));
  OrbitMultiset c3orb = orbit_set(top, local_by_order(s3, top, 3));
  std::vector<OrbitMultiset> objs = {point_set(s3, top), c2orb, c3orb,
                                     disjoint_union(c3orb, orbit_set(top, local_by_order(s3, top, 1)))};
  for (auto& xo : objs)
    for (auto& yo : objs)
      for (auto& zo : objs) {
        REQUIRE(carrier_size(s3, xo) <= 8);
        ConcreteGSet X = realize(s3, xo), Y = realize(s3, yo), Z = realize(s3, zo);
        SpanHom f = hom_of(basic_spans(s3, X, Y));
        SpanHom g = hom_of(basic_spans(s3, Y, Z));
        SpanHom h = hom_of(basic_spans(s3, Z, X));
        SpanHom lhs = compose(s3, X, Z, X, compose(s3, X, Y, Z, f, g), h);
        SpanHom rhs = compose(s3, X, Y, X, f, compose(s3, Y, Z, X, g, h));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("hom counts from orbits match fixed points") {
  // |Hom_G([G/K], Y)| = |Y^K|
  const auto& s3 = ctx_of("S3");
  int top = s3.top_class();
  OrbitMultiset y = disjoint_union(orbit_set(top, local_by_order(s3, top, 2)), point_set(s3, top));
  ConcreteGSet Y = realize(s3, y);
  MarkVector mv = marks(s3, y);
  for (int l = 0; l < (int)s3.level(top).classes.size(); ++l) {
    ConcreteGSet X = realize(s3, orbit_set(top, l));
    CHECK((long long)equivariant_maps(s3, X, Y).size() == mv.entries[l]);
  }
}

TEST_CASE("forward-leg filter respects the system") {
  const auto& c2 = ctx_of("C2");
  ConcreteGSet Pt = realize(c2, point_set(c2, c2.top_class()));
  WeakIndexingSystem triv = trivial_system(c2, 8);
  auto spans = basic_spans(c2, Pt, Pt, &triv);
  CHECK(spans.size() == 1);
  CHECK(c2.subgroup(c2.cls(spans[0].apex_class).rep).order == 2);
  WeakIndexingSystem einf = einfty_system(c2, 8);
  auto spans2 = basic_spans(c2, Pt, Pt, &einf);
  CHECK(spans2.size() == 1);
}

TEST_CASE("pullback stability holds for the transfer catalogs") {
  const auto& c4 = ctx_of("C4");
  for (auto& t : enumerate_transfer_systems(c4)) {
    WeakIndexingSystem w = to_indexing_system(t, 8);
    SpanCheckReport rep = verify_pullback_stability(c4, w, 40, 0x5eed, 6);
    CHECK(rep.pass);
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("a corrupted family fails pullback stability with a witness") {
  const auto& c4 = ctx_of("C4");
  WeakIndexingSystem full = complete_system(c4, 8);
  // delete Res_{C2}[C4/e] = 2[C2/e] from the middle level
  int mid = -1;
  for (int c = 0; c < c4.num_classes(); ++c)
    if (c4.subgroup(c4.cls(c).rep).order == 2) mid = c;
  OrbitMultiset broken = orbit_set(mid, local_by_order(c4, mid, 1), 2);
  full.levels[mid].erase(broken);
  REQUIRE(validate(full));  // no longer closed
  SpanCheckReport rep = verify_pullback_stability(c4, full, 0, 1, 6);
  CHECK(!rep.pass);
  CHECK(!rep.counterexample.empty());
}

TEST_CASE("segal condition on small instances") {
  const auto& c1 = ctx_of("C1");
  WeakIndexingSystem full1 = complete_system(c1, 8);
  // 1 + 1 = 2 spans from the point into the 2-point set
  SpanCheckReport r0 = verify_segal(c1, full1, point_set(c1, 0), point_set(c1, 0), point_set(c1, 0));
  CHECK(r0.pass);

  const auto& c2 = ctx_of("C2");
  WeakIndexingSystem full = complete_system(c2, 8);
  int top = c2.top_class();
  OrbitMultiset freem = orbit_set(top, local_by_order(c2, top, 1));
  CHECK(verify_segal(c2, full, freem, point_set(c2, top), empty_set(top)).pass);
  CHECK(verify_segal(c2, full, freem, point_set(c2, top), point_set(c2, top)).pass);
  CHECK(verify_segal(c2, full, freem, freem, point_set(c2, top)).pass);
  const auto& c4 = ctx_of("C4");
  for (auto& t : enumerate_transfer_systems(c4)) {
    WeakIndexingSystem w = to_indexing_system(t, 8);
    OrbitMultiset f4 = orbit_set(c4.top_class(), local_by_order(c4, c4.top_class(), 1));
    CHECK(verify_segal(c4, w, f4, point_set(c4, c4.top_class()), f4).pass);
  }
}
