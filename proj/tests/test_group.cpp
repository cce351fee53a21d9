#include <doctest.h>

#include "normcalc/group.hpp"
#include "normcalc/oracles.hpp"

using namespace normcalc;

TEST_CASE("builtin groups have the expected orders") {
  CHECK(FiniteGroup::builtin("C1").order() == 1);
  CHECK(FiniteGroup::builtin("C2").order() == 2);
  CHECK(FiniteGroup::builtin("C2xC2").order() == 4);
  CHECK(FiniteGroup::builtin("D8").order() == 8);
  CHECK(FiniteGroup::builtin("S3").order() == 6);
  CHECK(FiniteGroup::builtin("S4").order() == 24);
  CHECK(FiniteGroup::builtin("A4").order() == 12);
  CHECK(FiniteGroup::builtin("Q8").order() == 8);
  CHECK(FiniteGroup::builtin("Cp2").order() == 4);
  CHECK(FiniteGroup::builtin("Cp3").order() == 8);
}

TEST_CASE("permutation generators close to S3") {
  auto G = FiniteGroup::from_permutations(
      3, {parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)", 3)}, "S3");
  CHECK(G.order() == 6);
  // identity really is two-sided
  for (int a = 0; a < 6; ++a) {
    CHECK(G.mul(0, a) == a);
    CHECK(G.mul(a, 0) == a);
  }
}

TEST_CASE("non-associative table is rejected with the failing triple") {
  // Latin square that is not a group (no associativity)
  std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                     {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table(t), Error);
  try {
    FiniteGroup::from_table(t);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonAssociative);
  }
}

TEST_CASE("tables without identity or inverses are rejected") {
  // no identity row at index 0
  std::vector<std::vector<int>> shifted = {{1, 0}, {0, 1}};
  try {
    FiniteGroup::from_table(shifted);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoIdentity);
  }
  // a commutative idempotent monoid: 1*1 = 1 has no inverse to reach 0...
  // associativity holds, identity is 0, but 1 has no inverse
  std::vector<std::vector<int>> monoid = {{0, 1}, {1, 1}};
  try {
    FiniteGroup::from_table(monoid);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoInverse);
  }
}

TEST_CASE("bad generators are rejected") {
  auto tab = [&] {
    // C4 table
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = (a + b) % 4;
    return t;
  }();
  CHECK_THROWS_AS(FiniteGroup::from_table(tab, {2}), Error);  // <2> = {0,2}
}

TEST_CASE("cycle notation parses and rejects garbage") {
  Perm p = parse_cycles("(0 1)(2 3)", 4);
  CHECK(p == Perm{1, 0, 3, 2});
  CHECK(parse_cycles("()", 3) == perm_identity(3));
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), Error);
  CHECK_THROWS_AS(parse_cycles("(0 1", 3), Error);
  CHECK(cycles_string(p) == "(0 1)(2 3)");
}

TEST_CASE("subgroup enumeration: small catalogs") {
  GroupContext c2(FiniteGroup::builtin("C2"));
  CHECK(c2.num_subgroups() == 2);
  CHECK(c2.num_classes() == 2);

  GroupContext s3(FiniteGroup::builtin("S3"));
  CHECK(s3.num_subgroups() == 6);
  CHECK(s3.num_classes() == 4);

  GroupContext v4(FiniteGroup::builtin("C2xC2"));
  CHECK(v4.num_subgroups() == 5);
  CHECK(v4.num_classes() == 5);

  GroupContext c9(FiniteGroup::builtin("C9"));
  CHECK(c9.num_classes() == 3);  // chain
}

TEST_CASE("group too large for enumeration cap") {
  CHECK_THROWS_AS(GroupContext(FiniteGroup::builtin("C256"), 200), Error);
}

TEST_CASE("weyl orders on S3") {
  GroupContext s3(FiniteGroup::builtin("S3"));
  int c2 = -1, c3 = -1;
  for (int c = 0; c < s3.num_classes(); ++c) {
    int o = s3.subgroup(s3.cls(c).rep).order;
    if (o == 2) c2 = c;
    if (o == 3) c3 = c;
  }
  REQUIRE(c2 >= 0);
  REQUIRE(c3 >= 0);
  CHECK(s3.cls(c2).weyl == 1);
  CHECK(s3.cls(c3).weyl == 2);
  CHECK(s3.cls(c2).members.size() == 3);  // three conjugate C2's
}

TEST_CASE("class sizes satisfy |class| * |N_G(H)| = |G|") {
  for (const char* name : {"S3", "D8", "A4", "Q8", "S4"}) {
    GroupContext ctx(FiniteGroup::builtin(name));
    for (int c = 0; c < ctx.num_classes(); ++c) {
      const auto& cl = ctx.cls(c);
      CHECK((int)cl.members.size() * ctx.subgroup(cl.normalizer).order == ctx.group().order());
      CHECK(cl.weyl * ctx.subgroup(cl.rep).order == ctx.subgroup(cl.normalizer).order);
    }
  }
}

TEST_CASE("double cosets: trivial and spec cases") {
  GroupContext c2(FiniteGroup::builtin("C2"));
  Bits full(2);
  full.set(0);
  full.set(1);
  Bits triv(2);
  triv.set(0);
  // K = H = G: one coset, intersection G
  auto dc = c2.double_cosets(full, full, full);
  CHECK(dc.size() == 1);
  CHECK(dc[0].second == full);
  // trivial K = H = {e}: one coset per element
  CHECK(c2.double_cosets(full, triv, triv).size() == 2);

  GroupContext s3(FiniteGroup::builtin("S3"));
  const Bits& big = s3.subgroup(s3.num_subgroups() - 1).members;
  int s2 = -1, s3sub = -1;
  for (int s = 0; s < s3.num_subgroups(); ++s) {
    if (s3.subgroup(s).order == 2 && s2 < 0) s2 = s;
    if (s3.subgroup(s).order == 3) s3sub = s;
  }
  auto dc2 = s3.double_cosets(big, s3.subgroup(s2).members, s3.subgroup(s3sub).members);
  CHECK(dc2.size() == 1);
  CHECK(dc2[0].second.count() == 1);  // trivial intersection
}

TEST_CASE("double cosets cover the group exactly once") {
  for (const char* name : {"S3", "D8", "Q8", "A4"}) {
    GroupContext ctx(FiniteGroup::builtin(name));
    const Bits& G = ctx.subgroup(ctx.num_subgroups() - 1).members;
    for (int a = 0; a < ctx.num_subgroups(); ++a)
      for (int b = 0; b < ctx.num_subgroups(); ++b) {
        const Bits& K = ctx.subgroup(a).members;
        const Bits& H = ctx.subgroup(b).members;
        long long covered = 0;
        for (auto& [rep, inter] : ctx.double_cosets(G, K, H)) {
          (void)rep;
          // |KgH| = |K||H| / |K ∩ gHg^-1|
          covered += (long long)K.count() * H.count() / inter.count();
        }
        CHECK(covered == ctx.group().order());
      }
  }
}

TEST_CASE("subconjugacy agrees with element-wise conjugation checks") {
  for (const char* name : {"S3", "D8", "A4"}) {
    GroupContext ctx(FiniteGroup::builtin(name));
    for (int i = 0; i < ctx.num_classes(); ++i)
      for (int j = 0; j < ctx.num_classes(); ++j) {
        bool expect = false;
        for (int g = 0; g < ctx.group().order(); ++g)
          if (ctx.conj_bits(ctx.subgroup(ctx.cls(i).rep).members, g)
                  .subset_of(ctx.subgroup(ctx.cls(j).rep).members))
            expect = true;
        CHECK((bool)ctx.leq(i, j) == expect);
      }
  }
}

TEST_CASE("poset ends: trivial bottom, whole-group top") {
  GroupContext ctx(FiniteGroup::builtin("D8"));
  CHECK(ctx.subgroup(ctx.cls(ctx.trivial_class()).rep).order == 1);
  CHECK(ctx.subgroup(ctx.cls(ctx.top_class()).rep).order == 8);
  for (int c = 0; c < ctx.num_classes(); ++c) {
    CHECK(ctx.leq(ctx.trivial_class(), c));
    CHECK(ctx.leq(c, ctx.top_class()));
  }
}

TEST_CASE("class labels are deterministic and resolvable") {
  GroupContext ctx(FiniteGroup::builtin("D8"));
  for (int c = 0; c < ctx.num_classes(); ++c) CHECK(ctx.class_by_label(ctx.cls(c).label) == c);
  CHECK(ctx.cls(ctx.trivial_class()).label == "1a");
  CHECK_THROWS_AS(ctx.class_by_label("99z"), Error);
}

TEST_CASE("subgroup embedding round-trips local classes") {
  GroupContext s3(FiniteGroup::builtin("S3"));
  for (int c = 0; c < s3.num_classes(); ++c) {
    SubgroupEmbedding E = embed_subgroup(s3, c);
    CHECK(E.sub->group().order() == s3.subgroup(s3.cls(c).rep).order);
    for (int sc = 0; sc < E.sub->num_classes(); ++sc) {
      CHECK(E.class_to_big[sc] >= 0);
      for (int l = 0; l < (int)E.sub->level(sc).classes.size(); ++l) {
        int bl = E.local_to_big[sc][l];
        CHECK(E.local_from_big[sc][bl] == l);
      }
    }
  }
}

TEST_CASE("enumeration matches the two-generator closure oracle") {
  // every subgroup of these groups is generated by at most two elements
  for (const char* name : {"C2", "C6", "C8", "C12", "C24", "C2xC4", "S3", "S4", "D8", "D12", "Q8", "A4"}) {
    GroupContext ctx(FiniteGroup::builtin(name));
    std::vector<Bits> expect = oracle::subgroups_two_generated(ctx);
    REQUIRE((int)expect.size() == ctx.num_subgroups());
    for (const Bits& b : expect) CHECK(ctx.subgroup_index(b) >= 0);
  }
}

TEST_CASE("re-analysis from the canonical subgroup list is idempotent") {
  GroupContext ctx(FiniteGroup::builtin("S3"));
  std::vector<Bits> subs;
  for (int s = 0; s < ctx.num_subgroups(); ++s) subs.push_back(ctx.subgroup(s).members);
  GroupContext again(FiniteGroup::builtin("S3"), 200, &subs);
  CHECK(again.num_subgroups() == ctx.num_subgroups());
  CHECK(again.num_classes() == ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) CHECK(again.cls(c).label == ctx.cls(c).label);
  // a stale table is rejected
  std::vector<Bits> bad = subs;
  bad.pop_back();
  CHECK_THROWS_AS(GroupContext(FiniteGroup::builtin("S3"), 200, &bad), Error);
}

TEST_CASE("restriction functors exist for all subconjugate pairs") {
  GroupContext s3(FiniteGroup::builtin("S3"));
  for (int v = 0; v < s3.num_classes(); ++v)
    for (int k = 0; k < s3.num_classes(); ++k) {
      auto& fs = s3.restriction_functors(v, k);
      if (s3.leq(k, v))
        CHECK(!fs.empty());
      else
        CHECK(fs.empty());
      // rows preserve carrier
      for (auto& M : fs)
        for (int l = 0; l < (int)M.rows.size(); ++l) {
          long long before = s3.level(v).classes[l].orbit_size;
          long long after = 0;
          for (auto& [tc, m] : M.rows[l]) after += (long long)m * s3.level(k).classes[tc].orbit_size;
          CHECK(before == after);
        }
    }
}
