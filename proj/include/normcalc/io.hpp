#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "normcalc/burnside.hpp"
#include "normcalc/repsupport.hpp"
#include "normcalc/spancat.hpp"
#include "normcalc/transfer.hpp"

namespace normcalc {

using nlohmann::json;

inline constexpr const char* kSchema = "normcalc/1";

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

/// {"name"?, "points"?: n, "generators"?: ["(0 1)(2 3)", ...], "table"?: [[..]]}
inline FiniteGroup group_from_json(const json& j) {
  std::string name = j.value("name", "");
  if (j.contains("table")) {
    std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<int> gens;
    if (j.contains("generators")) gens = j.at("generators").get<std::vector<int>>();
    return FiniteGroup::from_table(std::move(table), std::move(gens), name);
  }
  if (j.contains("generators")) {
    if (!j.contains("points")) fail(Errc::BadInput, "permutation generators need \"points\"");
    int n = j.at("points").get<int>();
    std::vector<Perm> gens;
    for (auto& s : j.at("generators")) gens.push_back(parse_cycles(s.get<std::string>(), n));
    return FiniteGroup::from_permutations(n, gens, name);
  }
  if (!name.empty()) return FiniteGroup::builtin(name);
  fail(Errc::BadInput, "group spec needs a name, generators, or a table");
}

inline json group_info_json(const GroupContext& ctx) {
  const FiniteGroup& g = ctx.group();
  json classes = json::array();
  for (int c = 0; c < ctx.num_classes(); ++c) {
    const SubgroupClass& sc = ctx.cls(c);
    classes.push_back({{"label", sc.label},
                       {"order", ctx.subgroup(sc.rep).order},
                       {"size", sc.members.size()},
                       {"normalizer_order", ctx.subgroup(sc.normalizer).order},
                       {"weyl_order", sc.weyl}});
  }
  return json{{"schema", kSchema},
              {"name", g.name()},
              {"order", g.order()},
              {"subgroups", ctx.num_subgroups()},
              {"classes", classes}};
}

inline json poset_json(const GroupContext& ctx) {
  json rel = json::array();
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int h = 0; h < ctx.num_classes(); ++h)
      if (k != h && ctx.leq(k, h)) rel.push_back({ctx.cls(k).label, ctx.cls(h).label});
  return json{{"schema", kSchema}, {"leq", rel}};
}

// ---------------------------------------------------------------------------
// Orbit multisets
// ---------------------------------------------------------------------------

inline json multiset_to_json(const GroupContext& ctx, const OrbitMultiset& x) {
  json orbits = json::array();
  const LevelLocal& lv = ctx.level(x.level);
  for (auto& [c, m] : x.counts)
    orbits.push_back({{"stabilizer", lv.classes[c].label}, {"mult", m}});
  return json{{"level", ctx.cls(x.level).label}, {"orbits", orbits}};
}

inline OrbitMultiset multiset_from_json(const GroupContext& ctx, const json& j) {
  int level = ctx.class_by_label(j.at("level").get<std::string>());
  OrbitMultiset x{level, {}};
  for (auto& o : j.at("orbits"))
    x.counts.push_back(
        {ctx.local_class_by_label(level, o.at("stabilizer").get<std::string>()), o.at("mult").get<int>()});
  x.canonicalize();
  return x;
}

// ---------------------------------------------------------------------------
// Weak indexing systems
// ---------------------------------------------------------------------------

inline json system_to_json(const WeakIndexingSystem& w) {
  const GroupContext& ctx = *w.ctx;
  json levels = json::array();
  for (int c = 0; c < ctx.num_classes(); ++c) {
    json adm = json::array();
    for (const OrbitMultiset& x : w.levels[c]) adm.push_back(multiset_to_json(ctx, x));
    levels.push_back({{"class", ctx.cls(c).label}, {"admissible", adm}});
  }
  json gens = json::array();
  for (const OrbitMultiset& g : w.generators) gens.push_back(multiset_to_json(ctx, g));
  SystemPredicates p = predicates(w);
  return json{{"schema", kSchema},
              {"group", ctx.group().name()},
              {"bound", w.bound},
              {"levels", levels},
              {"generators", gens},
              {"flags",
               {{"saturated", w.saturated},
                {"one_color", p.has_one_color},
                {"unital", p.is_unital},
                {"almost_unital", p.is_almost_unital},
                {"aE_unital", p.is_aE_unital},
                {"indexing_system", p.is_indexing_system}}}};
}

inline WeakIndexingSystem system_from_json(const GroupContext& ctx, const json& j) {
  WeakIndexingSystem w{&ctx, j.at("bound").get<int>(), {}, {}, true};
  w.levels.resize(ctx.num_classes());
  for (auto& lv : j.at("levels")) {
    int c = ctx.class_by_label(lv.at("class").get<std::string>());
    for (auto& a : lv.at("admissible")) {
      OrbitMultiset x = multiset_from_json(ctx, a);
      if (x.level != c) fail(Errc::BadInput, "admissible set level disagrees with its class entry");
      w.levels[c].insert(std::move(x));
    }
  }
  if (j.contains("generators"))
    for (auto& g : j.at("generators")) w.generators.push_back(multiset_from_json(ctx, g));
  if (j.contains("flags") && j.at("flags").contains("saturated"))
    w.saturated = j.at("flags").at("saturated").get<bool>();
  return w;
}

// ---------------------------------------------------------------------------
// Transfer systems
// ---------------------------------------------------------------------------

inline json transfer_to_json(const TransferSystem& t) {
  const GroupContext& ctx = *t.ctx;
  json rel = json::array();
  for (auto& [k, h] : t.rel)
    if (k != h) rel.push_back({ctx.cls(k).label, ctx.cls(h).label});
  return json{{"schema", kSchema}, {"group", ctx.group().name()}, {"relations", rel}};
}

inline TransferSystem transfer_from_json(const GroupContext& ctx, const json& j) {
  std::set<std::pair<int, int>> rel;
  for (auto& p : j.at("relations"))
    rel.insert({ctx.class_by_label(p.at(0).get<std::string>()),
                ctx.class_by_label(p.at(1).get<std::string>())});
  TransferSystem t = transfer_closure(ctx, rel);
  TransferSystem given{&ctx, rel};
  for (int c = 0; c < ctx.num_classes(); ++c) given.rel.insert({c, c});
  if (!(t == given)) fail(Errc::BadInput, "relation list is not closed (transitivity/restriction)");
  return t;
}

// ---------------------------------------------------------------------------
// Dimension functions
// ---------------------------------------------------------------------------

inline json extnat_to_json(ExtNat v) { return v.is_inf() ? json("inf") : json(v.v); }
inline ExtNat extnat_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtNat::inf();
    fail(Errc::BadInput, "dimension entries are numbers or \"inf\"");
  }
  return ExtNat(j.get<uint64_t>());
}

inline json dims_to_json(const DimensionFunction& v) {
  const GroupContext& ctx = *v.ctx;
  json dims = json::object();
  for (int c = 0; c < ctx.num_classes(); ++c) dims[ctx.cls(c).label] = extnat_to_json(v.dims[c]);
  json blocks = json::array();
  for (const RepBlock& b : v.blocks) {
    if (b.kind == RepBlock::Kind::Perm)
      blocks.push_back({{"kind", "perm"}, {"set", multiset_to_json(ctx, b.perm)}, {"mult", extnat_to_json(b.mult)}});
    else
      blocks.push_back(
          {{"kind", "sign"}, {"kernel", ctx.cls(b.kernel_class).label}, {"mult", extnat_to_json(b.mult)}});
  }
  return json{{"schema", kSchema}, {"dims", dims}, {"synthetic", v.synthetic}, {"blocks", blocks}};
}

inline DimensionFunction dims_from_json(const GroupContext& ctx, const json& j) {
  if (j.contains("blocks") && !j.at("blocks").empty()) {
    DimensionFunction v = zero_rep(ctx);
    for (auto& b : j.at("blocks")) {
      ExtNat mult = extnat_from_json(b.at("mult"));
      if (b.at("kind") == "perm")
        v = direct_sum(v, from_permutation_rep(ctx, multiset_from_json(ctx, b.at("set")), mult));
      else
        v = direct_sum(v, sign_rep(ctx, ctx.class_by_label(b.at("kernel").get<std::string>()), mult));
    }
    return v;
  }
  std::vector<ExtNat> dims(ctx.num_classes());
  for (int c = 0; c < ctx.num_classes(); ++c) dims[c] = extnat_from_json(j.at("dims").at(ctx.cls(c).label));
  return from_dims(ctx, dims);
}

// ---------------------------------------------------------------------------
// Span homs
// ---------------------------------------------------------------------------

inline json spanhom_to_json(const GroupContext& ctx, const OrbitMultiset& src, const OrbitMultiset& dst,
                            const SpanHom& h) {
  json basis = json::array();
  for (auto& [b, m] : h.terms) {
    basis.push_back({{"key",
                      {{"apex", ctx.cls(b.apex_class).label}, {"x", b.x}, {"y", b.y}}},
                     {"mult", m}});
  }
  return json{{"schema", kSchema},
              {"source", multiset_to_json(ctx, src)},
              {"target", multiset_to_json(ctx, dst)},
              {"basis", basis}};
}

// ---------------------------------------------------------------------------
// DOT exports
// ---------------------------------------------------------------------------

/// Subconjugacy Hasse diagram with the nontrivial transfer relations drawn
/// as bold arrows (transitively reduced).
inline std::string transfer_to_dot(const TransferSystem& t) {
  const GroupContext& ctx = *t.ctx;
  auto covers = [&](int k, int h, auto has) {
    for (int m = 0; m < ctx.num_classes(); ++m)
      if (m != k && m != h && has(k, m) && has(m, h)) return false;
    return true;
  };
  std::ostringstream os;
  os << "digraph transfer {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int c = 0; c < ctx.num_classes(); ++c) os << "  \"" << ctx.cls(c).label << "\";\n";
  for (int k = 0; k < ctx.num_classes(); ++k)
    for (int h = 0; h < ctx.num_classes(); ++h) {
      if (k == h || !ctx.leq(k, h)) continue;
      bool rel = t.has(k, h);
      if (rel && covers(k, h, [&](int a, int b) { return a != b && t.has(a, b); }))
        os << "  \"" << ctx.cls(k).label << "\" -> \"" << ctx.cls(h).label << "\" [penwidth=2];\n";
      else if (!rel && covers(k, h, [&](int a, int b) { return a != b && ctx.leq(a, b); }))
        os << "  \"" << ctx.cls(k).label << "\" -> \"" << ctx.cls(h).label
           << "\" [color=gray, style=dashed];\n";
    }
  os << "}\n";
  return os.str();
}

/// Inclusion lattice of a list of systems (Hasse reduction).
inline std::string systems_to_dot(const std::vector<WeakIndexingSystem>& ws,
                                  const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "digraph systems {\n  rankdir=BT;\n  node [shape=box];\n";
  for (size_t i = 0; i < ws.size(); ++i) os << "  n" << i << " [label=\"" << names[i] << "\"];\n";
  auto lt = [&](size_t a, size_t b) {
    return !(ws[a] == ws[b]) && subset_within(ws[a], ws[b]);
  };
  for (size_t a = 0; a < ws.size(); ++a)
    for (size_t b = 0; b < ws.size(); ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (size_t m = 0; m < ws.size() && cover; ++m)
        if (m != a && m != b && lt(a, m) && lt(m, b)) cover = false;
      if (cover) os << "  n" << a << " -> n" << b << ";\n";
    }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Cached group analysis (NORMCALC_CACHE)
// ---------------------------------------------------------------------------

/// Saves/restores the subgroup bitsets of a group analysis. Keyed by the
/// group fingerprint under the NORMCALC_CACHE directory when set.
inline std::string cache_path_for(const FiniteGroup& g) {
  const char* dir = std::getenv("NORMCALC_CACHE");
  if (!dir || !*dir) return "";
  std::ostringstream os;
  os << dir << "/normcalc-" << std::hex << g.fingerprint() << ".json";
  return os.str();
}

inline void maybe_cache_subgroups(const GroupContext& ctx) {
  std::string path = cache_path_for(ctx.group());
  if (path.empty()) return;
  if (std::ifstream(path).good()) return;
  json subs = json::array();
  for (int s = 0; s < ctx.num_subgroups(); ++s) subs.push_back(ctx.subgroup(s).members.elements());
  std::ofstream out(path);
  if (out) out << json{{"schema", kSchema}, {"order", ctx.group().order()}, {"subgroups", subs}};
}

inline std::optional<std::vector<Bits>> load_cached_subgroups(const FiniteGroup& g) {
  std::string path = cache_path_for(g);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
    if (j.at("order").get<int>() != g.order()) return std::nullopt;
    std::vector<Bits> subs;
    for (auto& s : j.at("subgroups")) {
      Bits b(g.order());
      for (int e : s.get<std::vector<int>>()) b.set(e);
      subs.push_back(std::move(b));
    }
    return subs;
  } catch (...) {
    return std::nullopt;  // corrupt cache entries are ignored
  }
}

/// Builds an analysis context, going through NORMCALC_CACHE when set.
inline std::shared_ptr<GroupContext> make_context_cached(FiniteGroup g) {
  if (auto cached = load_cached_subgroups(g)) {
    try {
      return std::make_shared<GroupContext>(g, 200, &*cached);
    } catch (const Error&) {
      // stale cache: fall through to a fresh enumeration
    }
  }
  auto ctx = std::make_shared<GroupContext>(std::move(g));
  maybe_cache_subgroups(*ctx);
  return ctx;
}

}  // namespace normcalc
