// normcalc: a combinatorial engine for weak indexing systems, transfer
// systems, finite G-sets, span categories, and Burnside monoids over a
// finite group.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "normcalc/acceptance.hpp"
#include "normcalc/io.hpp"

using namespace normcalc;
using nlohmann::json;

namespace {

struct Cli {
  std::string group = "C2";
  int bound = 8;
  int jobs = default_jobs();
  uint64_t seed = 0x6e6f726d63616c63ull;
  std::string format = "json";
  std::string out;

  std::shared_ptr<GroupContext> ctx_;

  const GroupContext& ctx() {
    if (!ctx_) {
      FiniteGroup g = FiniteGroup::is_builtin(group) ? FiniteGroup::builtin(group)
                                                     : group_from_json(parse_payload(group));
      ctx_ = make_context_cached(std::move(g));
    }
    return *ctx_;
  }

  static json parse_payload(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
      std::ifstream in(s.substr(1));
      if (!in) fail(Errc::BadInput, "cannot open " + s.substr(1));
      return json::parse(in);
    }
    return json::parse(s);
  }

  void emit(const json& j) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) fail(Errc::BadInput, "cannot write " + out);
      os = &file;
    }
    *os << j.dump(2) << "\n";
  }

  void emit_text(const std::string& s) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) fail(Errc::BadInput, "cannot write " + out);
      os = &file;
    }
    *os << s;
  }
};

OrbitMultiset parse_multiset(Cli& cli, const std::string& s) {
  return multiset_from_json(cli.ctx(), Cli::parse_payload(s));
}

Family parse_family(Cli& cli, const std::string& s) {
  const GroupContext& ctx = cli.ctx();
  if (s == "all") return family_all(ctx);
  if (s == "none" || s.empty()) return family_none(ctx);
  std::vector<int> classes;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) classes.push_back(ctx.class_by_label(tok));
  return family_generated(ctx, classes);
}

/// Named systems, inline JSON, or @file.
WeakIndexingSystem parse_system(Cli& cli, const std::string& s) {
  const GroupContext& ctx = cli.ctx();
  if (s == "triv") return trivial_system(ctx, cli.bound);
  if (s == "complete") return complete_system(ctx, cli.bound);
  if (s == "einfty") return einfty_system(ctx, cli.bound);
  if (s == "e0") return inflated_system(ctx, family_all(ctx), cli.bound);
  if (s.rfind("e0:", 0) == 0) return inflated_system(ctx, parse_family(cli, s.substr(3)), cli.bound);
  if (s == "nu") return terminal_with_unit_family(ctx, family_none(ctx), cli.bound);
  if (s.rfind("nu:", 0) == 0)
    return terminal_with_unit_family(ctx, parse_family(cli, s.substr(3)), cli.bound);
  return system_from_json(ctx, Cli::parse_payload(s));
}

/// Representation specs: sums of [mult*]atom with atoms zero, triv,
/// regular|rho, sigma (sign with trivial kernel class), sign:<kernel-label>,
/// perm:<multiset json>, dims:<json>; mult is a number or "inf".
DimensionFunction parse_rep(Cli& cli, const std::string& spec) {
  const GroupContext& ctx = cli.ctx();
  if (!spec.empty() && (spec[0] == '@' || spec[0] == '{'))
    return dims_from_json(ctx, Cli::parse_payload(spec));
  DimensionFunction v = zero_rep(ctx);
  std::stringstream ss(spec);
  std::string atom;
  while (std::getline(ss, atom, '+')) {
    ExtNat mult = 1;
    size_t star = atom.find('*');
    if (star != std::string::npos && atom.rfind("perm:", 0) != 0 && atom.rfind("dims:", 0) != 0) {
      std::string m = atom.substr(0, star);
      mult = (m == "inf") ? ExtNat::inf() : ExtNat((uint64_t)std::stoull(m));
      atom = atom.substr(star + 1);
    }
    if (atom == "zero") continue;
    if (atom == "triv")
      v = direct_sum(v, from_permutation_rep(ctx, point_set(ctx, ctx.top_class()), mult));
    else if (atom == "regular" || atom == "rho") {
      const LevelLocal& lv = ctx.level(ctx.top_class());
      for (int l = 0; l < (int)lv.classes.size(); ++l)
        if (ctx.subgroup(lv.classes[l].rep).order == 1) {
          v = direct_sum(v, from_permutation_rep(ctx, orbit_set(ctx.top_class(), l), mult));
          break;
        }
    } else if (atom == "sigma")
      v = direct_sum(v, sign_rep(ctx, ctx.trivial_class(), mult));
    else if (atom.rfind("sign:", 0) == 0)
      v = direct_sum(v, sign_rep(ctx, ctx.class_by_label(atom.substr(5)), mult));
    else if (atom.rfind("perm:", 0) == 0)
      v = direct_sum(v, from_permutation_rep(ctx, parse_multiset(cli, atom.substr(5)), mult));
    else if (atom.rfind("dims:", 0) == 0)
      v = direct_sum(v, dims_from_json(ctx, Cli::parse_payload(atom.substr(5))));
    else
      fail(Errc::BadInput, "unknown representation atom " + atom);
  }
  return v;
}

json family_json(const GroupContext& ctx, const Family& f) {
  json a = json::array();
  for (int c = 0; c < ctx.num_classes(); ++c)
    if (f.in[c]) a.push_back(ctx.cls(c).label);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normcalc: weak indexing systems, transfer systems, and Burnside monoids"};
  app.require_subcommand(1);
  app.fallthrough();
  Cli cli;
  app.add_option("--group", cli.group, "builtin name (C1.., CmxCn, D2n, Sn, A4, Q8) or JSON spec");
  app.add_option("--bound", cli.bound, "window bound B");
  app.add_option("--jobs", cli.jobs, "parallelism degree");
  app.add_option("--seed", cli.seed, "seed for sampled checks");
  app.add_option("--format", cli.format, "json | table | dot");
  app.add_option("--out", cli.out, "output path (default stdout)");

  std::string set_a, set_b, set_c, sys_a, sys_b, fam_s, rep_v, rep_w, at_label, marks_s;
  int eh_n = 4;
  int sp_samples = 200;
  std::vector<std::string> gens;

  auto* g = app.add_subcommand("group", "group_core outputs");
  auto* g_info = g->add_subcommand("info", "order, classes, weyl orders");
  auto* g_subs = g->add_subcommand("subgroups", "the full subgroup list");
  auto* g_poset = g->add_subcommand("poset", "subconjugacy relation");

  auto* gs = app.add_subcommand("gset", "finite G-set calculus");
  auto* gs_marks = gs->add_subcommand("marks", "fixed-point counts of a set");
  gs_marks->add_option("--set", set_a, "orbit multiset (json or @file)")->required();
  auto* gs_res = gs->add_subcommand("restrict", "restriction to a class");
  gs_res->add_option("--set", set_a)->required();
  gs_res->add_option("--to", at_label, "target class label")->required();
  auto* gs_ind = gs->add_subcommand("induce", "induction to a class");
  gs_ind->add_option("--set", set_a)->required();
  gs_ind->add_option("--to", at_label)->required();
  auto* gs_coind = gs->add_subcommand("coinduce", "coinduction to a class");
  gs_coind->add_option("--set", set_a)->required();
  gs_coind->add_option("--to", at_label)->required();
  auto* gs_iso = gs->add_subcommand("iso", "iso class from a mark vector");
  gs_iso->add_option("--marks", marks_s, "comma-separated fixed point counts")->required();
  gs_iso->add_option("--level", at_label, "class label")->required();

  auto* wx = app.add_subcommand("windex", "weak indexing systems");
  auto* wx_sat = wx->add_subcommand("saturate", "least system containing the generators");
  wx_sat->add_option("--gen", gens, "generator multiset (repeatable)")->required();
  auto* wx_val = wx->add_subcommand("validate", "closure conditions of a window");
  wx_val->add_option("--system", sys_a)->required();
  auto* wx_mem = wx->add_subcommand("membership", "bound-relative membership");
  wx_mem->add_option("--system", sys_a)->required();
  wx_mem->add_option("--set", set_a)->required();
  auto* wx_join = wx->add_subcommand("join", "closure join");
  wx_join->add_option("--lhs", sys_a)->required();
  wx_join->add_option("--rhs", sys_b)->required();
  auto* wx_meet = wx->add_subcommand("meet", "levelwise intersection");
  wx_meet->add_option("--lhs", sys_a)->required();
  wx_meet->add_option("--rhs", sys_b)->required();
  auto* wx_tensor = wx->add_subcommand("tensor", "Borelified join");
  wx_tensor->add_option("--lhs", sys_a)->required();
  wx_tensor->add_option("--rhs", sys_b)->required();
  auto* wx_bor = wx->add_subcommand("bor", "Borelification by a family");
  wx_bor->add_option("--system", sys_a)->required();
  wx_bor->add_option("--family", fam_s)->required();
  auto* wx_fam = wx->add_subcommand("families", "color and unit families");
  wx_fam->add_option("--system", sys_a)->required();
  auto* wx_pred = wx->add_subcommand("predicates", "unitality gradations");
  wx_pred->add_option("--system", sys_a)->required();
  auto* wx_res = wx->add_subcommand("restrict", "restriction to a subgroup class");
  wx_res->add_option("--system", sys_a)->required();
  wx_res->add_option("--at", at_label, "subgroup class label")->required();
  auto* wx_ind = wx->add_subcommand("induce", "left adjoint to restriction");
  wx_ind->add_option("--system", sys_a, "system over the subgroup (json or @file)")->required();
  wx_ind->add_option("--at", at_label)->required();
  auto* wx_coind = wx->add_subcommand("coinduce", "right adjoint to restriction");
  wx_coind->add_option("--system", sys_a, "system over the subgroup (json or @file)")->required();
  wx_coind->add_option("--at", at_label)->required();
  std::vector<std::string> lattice_systems;
  auto* wx_lat = wx->add_subcommand("lattice", "inclusion lattice of systems as DOT");
  wx_lat->add_option("--systems", lattice_systems, "system specs (repeatable)")->required();

  auto* tr_cmd = app.add_subcommand("transfer", "transfer systems");
  auto* tr_enum = tr_cmd->add_subcommand("enumerate", "all transfer systems");
  auto* tr_count = tr_cmd->add_subcommand("count", "number of transfer systems");
  auto* tr_join = tr_cmd->add_subcommand("join", "alternating-chain join");
  tr_join->add_option("--lhs", sys_a, "relations (json or @file)")->required();
  tr_join->add_option("--rhs", sys_b)->required();
  auto* tr_lat = tr_cmd->add_subcommand("lattice", "inclusion lattice as DOT");

  auto* rp = app.add_subcommand("rep", "representation arity supports");
  auto* rp_sup = rp->add_subcommand("support", "arity support of a representation");
  rp_sup->add_option("--v", rep_v, "representation spec")->required();
  auto* rp_add = rp->add_subcommand("additivity", "join of supports vs support of the sum");
  rp_add->add_option("--v", rep_v)->required();
  rp_add->add_option("--w", rep_w)->required();
  auto* rp_wu = rp->add_subcommand("weak-universe", "is V = V + V");
  rp_wu->add_option("--v", rep_v)->required();

  auto* sp = app.add_subcommand("span", "homotopy span category");
  auto* sp_basics = sp->add_subcommand("basics", "basic spans between two sets");
  sp_basics->add_option("--x", set_a)->required();
  sp_basics->add_option("--y", set_b)->required();
  sp_basics->add_option("--system", sys_a, "optional forward-leg filter");
  auto* sp_comp = sp->add_subcommand("compose", "composition table of basic spans");
  sp_comp->add_option("--x", set_a)->required();
  sp_comp->add_option("--y", set_b)->required();
  sp_comp->add_option("--z", set_c)->required();
  sp_comp->add_option("--system", sys_a);
  auto* sp_pb = sp->add_subcommand("verify-pullback", "pullback stability of a system");
  sp_pb->add_option("--system", sys_a)->required();
  sp_pb->add_option("--samples", sp_samples);
  auto* sp_segal = sp->add_subcommand("verify-segal", "Segal bijection for given sets");
  sp_segal->add_option("--system", sys_a)->required();
  sp_segal->add_option("--t", set_a)->required();
  sp_segal->add_option("--s1", set_b)->required();
  sp_segal->add_option("--s2", set_c)->required();

  auto* ce = app.add_subcommand("counterexample", "the nonunital Eckmann-Hilton machinery");
  auto* ce_eh = ce->add_subcommand("eh", "mu vs mu0 over Z/n");
  ce_eh->add_option("--n", eh_n, "modulus");
  auto* ce_int = ce->add_subcommand("interchange", "interchange of plain and zeroed transfers");
  ce_int->add_option("--s", set_a)->required();
  ce_int->add_option("--t", set_b)->required();
  ce_int->add_option("--family", fam_s)->required();
  auto* ce_dw = ce->add_subcommand("distinctness", "witness separating tr and tr0");
  ce_dw->add_option("--s", set_a)->required();
  ce_dw->add_option("--family", fam_s)->required();

  auto* su = app.add_subcommand("suite", "verification batteries");
  auto* su_acc = su->add_subcommand("acceptance", "run every acceptance criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bool table = cli.format == "table";

    if (g_info->parsed()) {
      json j = group_info_json(cli.ctx());
      if (table) {
        std::ostringstream os;
        os << "group " << j["name"].get<std::string>() << " of order " << j["order"] << ", "
           << j["subgroups"] << " subgroups, " << j["classes"].size() << " classes\n";
        for (auto& c : j["classes"])
          os << "  " << c["label"].get<std::string>() << ": order " << c["order"] << ", class size "
             << c["size"] << ", weyl " << c["weyl_order"] << "\n";
        cli.emit_text(os.str());
      } else
        cli.emit(j);
    } else if (g_subs->parsed()) {
      const GroupContext& ctx = cli.ctx();
      json subs = json::array();
      for (int s = 0; s < ctx.num_subgroups(); ++s)
        subs.push_back({{"elements", ctx.subgroup(s).members.elements()},
                        {"order", ctx.subgroup(s).order},
                        {"class", ctx.cls(ctx.class_of_subgroup(s)).label}});
      cli.emit(json{{"schema", kSchema}, {"subgroups", subs}});
    } else if (g_poset->parsed()) {
      cli.emit(poset_json(cli.ctx()));
    } else if (gs_marks->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset x = parse_multiset(cli, set_a);
      MarkVector mv = marks(ctx, x);
      json entries = json::object();
      for (size_t l = 0; l < mv.entries.size(); ++l)
        entries[ctx.level(x.level).classes[l].label] = mv.entries[l];
      cli.emit(json{{"schema", kSchema}, {"level", ctx.cls(x.level).label}, {"marks", entries}});
    } else if (gs_res->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset x = parse_multiset(cli, set_a);
      cli.emit(multiset_to_json(ctx, restrict_to_class(ctx, x, ctx.class_by_label(at_label))));
    } else if (gs_ind->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset x = parse_multiset(cli, set_a);
      cli.emit(multiset_to_json(ctx, induce_to_class(ctx, x, ctx.class_by_label(at_label))));
    } else if (gs_coind->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset x = parse_multiset(cli, set_a);
      cli.emit(multiset_to_json(ctx, coinduce_to_class(ctx, x, ctx.class_by_label(at_label))));
    } else if (gs_iso->parsed()) {
      const GroupContext& ctx = cli.ctx();
      MarkVector mv{ctx.class_by_label(at_label), {}};
      std::stringstream ss(marks_s);
      std::string tok;
      while (std::getline(ss, tok, ',')) mv.entries.push_back(std::stoll(tok));
      cli.emit(multiset_to_json(ctx, iso_class_from_marks(ctx, mv)));
    } else if (wx_sat->parsed()) {
      std::vector<OrbitMultiset> gs2;
      for (auto& s : gens) gs2.push_back(parse_multiset(cli, s));
      cli.emit(system_to_json(saturate(cli.ctx(), gs2, cli.bound)));
    } else if (wx_val->parsed()) {
      WeakIndexingSystem w = parse_system(cli, sys_a);
      auto bad = validate(w);
      cli.emit(json{{"schema", kSchema}, {"valid", !bad.has_value()}, {"violation", bad.value_or("")}});
    } else if (wx_mem->parsed()) {
      WeakIndexingSystem w = parse_system(cli, sys_a);
      Membership m = membership(w, parse_multiset(cli, set_a));
      cli.emit(json{{"schema", kSchema},
                    {"verdict", m == Membership::Admissible ? "admissible" : "inadmissible-within-bound"},
                    {"bound", w.bound}});
    } else if (wx_join->parsed()) {
      cli.emit(system_to_json(join(parse_system(cli, sys_a), parse_system(cli, sys_b))));
    } else if (wx_meet->parsed()) {
      cli.emit(system_to_json(meet(parse_system(cli, sys_a), parse_system(cli, sys_b))));
    } else if (wx_tensor->parsed()) {
      TensorResult t = tensor_weak_ninfty(parse_system(cli, sys_a), parse_system(cli, sys_b));
      if (table) {
        std::string name = "custom";
        if (t.system == complete_system(cli.ctx(), cli.bound)) name = "complete";
        else if (t.system == trivial_system(cli.ctx(), cli.bound)) name = "triv";
        else if (t.system == einfty_system(cli.ctx(), cli.bound)) name = "einfty";
        cli.emit_text("tensor = " + name + " (aE-unital inputs: " +
                      std::string(t.lhs_aE_unital ? "yes" : "no") + "/" +
                      std::string(t.rhs_aE_unital ? "yes" : "no") + ")\n");
      } else {
        json j = system_to_json(t.system);
        j["lhs_aE_unital"] = t.lhs_aE_unital;
        j["rhs_aE_unital"] = t.rhs_aE_unital;
        cli.emit(j);
      }
    } else if (wx_bor->parsed()) {
      cli.emit(system_to_json(borelify(parse_system(cli, sys_a), parse_family(cli, fam_s))));
    } else if (wx_fam->parsed()) {
      WeakIndexingSystem w = parse_system(cli, sys_a);
      cli.emit(json{{"schema", kSchema},
                    {"color", family_json(*w.ctx, color_family(w))},
                    {"unit", family_json(*w.ctx, unit_family(w))}});
    } else if (wx_pred->parsed()) {
      SystemPredicates p = predicates(parse_system(cli, sys_a));
      cli.emit(json{{"schema", kSchema},
                    {"has_one_color", p.has_one_color},
                    {"is_unital", p.is_unital},
                    {"is_almost_unital", p.is_almost_unital},
                    {"is_aE_unital", p.is_aE_unital},
                    {"is_indexing_system", p.is_indexing_system}});
    } else if (wx_res->parsed()) {
      const GroupContext& ctx = cli.ctx();
      SubgroupEmbedding emb = embed_subgroup(ctx, ctx.class_by_label(at_label));
      cli.emit(system_to_json(restrict_system(parse_system(cli, sys_a), emb)));
    } else if (wx_ind->parsed() || wx_coind->parsed()) {
      const GroupContext& ctx = cli.ctx();
      SubgroupEmbedding emb = embed_subgroup(ctx, ctx.class_by_label(at_label));
      WeakIndexingSystem sub = system_from_json(*emb.sub, Cli::parse_payload(sys_a));
      cli.emit(system_to_json(wx_ind->parsed() ? induce_system(sub, emb) : coinduce_system(sub, emb)));
    } else if (wx_lat->parsed()) {
      std::vector<WeakIndexingSystem> ws;
      for (auto& s : lattice_systems) ws.push_back(parse_system(cli, s));
      cli.emit_text(systems_to_dot(ws, lattice_systems));
    } else if (tr_enum->parsed()) {
      json a = json::array();
      for (auto& t : enumerate_transfer_systems(cli.ctx())) a.push_back(transfer_to_json(t));
      cli.emit(json{{"schema", kSchema}, {"count", a.size()}, {"systems", a}});
    } else if (tr_count->parsed()) {
      cli.emit_text(std::to_string(enumerate_transfer_systems(cli.ctx()).size()) + "\n");
    } else if (tr_join->parsed()) {
      const GroupContext& ctx = cli.ctx();
      TransferSystem a = transfer_from_json(ctx, Cli::parse_payload(sys_a));
      TransferSystem b = transfer_from_json(ctx, Cli::parse_payload(sys_b));
      TransferSystem j = join_rubin(a, b);
      if (cli.format == "dot")
        cli.emit_text(transfer_to_dot(j));
      else
        cli.emit(transfer_to_json(j));
    } else if (tr_lat->parsed()) {
      const GroupContext& ctx = cli.ctx();
      auto all = enumerate_transfer_systems(ctx);
      std::vector<WeakIndexingSystem> ws;
      std::vector<std::string> names;
      int bound = std::max(cli.bound, ctx.group().order());
      for (size_t i = 0; i < all.size(); ++i) {
        ws.push_back(to_indexing_system(all[i], bound));
        names.push_back("T" + std::to_string(i));
      }
      cli.emit_text(systems_to_dot(ws, names));
    } else if (rp_sup->parsed()) {
      cli.emit(system_to_json(arity_support(parse_rep(cli, rep_v), cli.bound)));
    } else if (rp_add->parsed()) {
      AdditivityReport rep = check_additivity(parse_rep(cli, rep_v), parse_rep(cli, rep_w), cli.bound);
      if (table)
        cli.emit_text(std::string(rep.equal ? "PASS" : "FAIL") +
                      (rep.equal ? "" : ": " + rep.discrepancy) + "\n");
      else
        cli.emit(json{{"schema", kSchema}, {"equal", rep.equal}, {"discrepancy", rep.discrepancy}});
    } else if (rp_wu->parsed()) {
      DimensionFunction v = parse_rep(cli, rep_v);
      cli.emit(json{{"schema", kSchema},
                    {"weak_universe", is_weak_universe(v)},
                    {"dims", dims_to_json(v)["dims"]}});
    } else if (sp_basics->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset xo = parse_multiset(cli, set_a), yo = parse_multiset(cli, set_b);
      ConcreteGSet X = realize(ctx, xo), Y = realize(ctx, yo);
      std::optional<WeakIndexingSystem> I;
      if (!sys_a.empty()) I = parse_system(cli, sys_a);
      SpanHom h;
      for (auto& b : basic_spans(ctx, X, Y, I ? &*I : nullptr)) h.add(b, 1);
      cli.emit(spanhom_to_json(ctx, xo, yo, h));
    } else if (sp_comp->parsed()) {
      const GroupContext& ctx = cli.ctx();
      OrbitMultiset xo = parse_multiset(cli, set_a), yo = parse_multiset(cli, set_b),
                    zo = parse_multiset(cli, set_c);
      ConcreteGSet X = realize(ctx, xo), Y = realize(ctx, yo), Z = realize(ctx, zo);
      std::optional<WeakIndexingSystem> I;
      if (!sys_a.empty()) I = parse_system(cli, sys_a);
      const WeakIndexingSystem* ip = I ? &*I : nullptr;
      json rows = json::array();
      for (auto& a : basic_spans(ctx, X, Y, ip))
        for (auto& b : basic_spans(ctx, Y, Z, ip)) {
          SpanHom lhs, rhs;
          lhs.add(a, 1);
          rhs.add(b, 1);
          SpanHom c = compose(ctx, X, Y, Z, lhs, rhs);
          rows.push_back({{"left", spanhom_to_json(ctx, xo, yo, lhs)["basis"]},
                          {"right", spanhom_to_json(ctx, yo, zo, rhs)["basis"]},
                          {"composite", spanhom_to_json(ctx, xo, zo, c)["basis"]}});
        }
      cli.emit(json{{"schema", kSchema}, {"table", rows}});
    } else if (sp_pb->parsed()) {
      SpanCheckReport rep =
          verify_pullback_stability(cli.ctx(), parse_system(cli, sys_a), sp_samples, cli.seed, 6);
      cli.emit(json{{"schema", kSchema},
                    {"pass", rep.pass},
                    {"checks", rep.checks},
                    {"seed", cli.seed},
                    {"counterexample", rep.counterexample}});
    } else if (sp_segal->parsed()) {
      SpanCheckReport rep = verify_segal(cli.ctx(), parse_system(cli, sys_a), parse_multiset(cli, set_a),
                                         parse_multiset(cli, set_b), parse_multiset(cli, set_c));
      cli.emit(json{{"schema", kSchema}, {"pass", rep.pass}, {"counterexample", rep.counterexample}});
    } else if (ce_eh->parsed()) {
      EckmannHiltonReport rep = eckmann_hilton_failure_demo(eh_n);
      cli.emit(json{{"schema", kSchema},
                    {"modulus", rep.modulus},
                    {"commutative", rep.commutative},
                    {"associative", rep.associative},
                    {"interchange", rep.interchange},
                    {"distinct", rep.distinct},
                    {"degenerate", rep.degenerate},
                    {"differing_pair", {rep.differing_pair.first, rep.differing_pair.second}}});
    } else if (ce_int->parsed()) {
      const GroupContext& ctx = cli.ctx();
      Family f = parse_family(cli, fam_s);
      WeakIndexingSystem tnu = terminal_with_unit_family(ctx, f, cli.bound);
      InterchangeReport rep = check_interchange(ctx, tnu, f, parse_multiset(cli, set_a),
                                                parse_multiset(cli, set_b), 4, 200000, cli.seed);
      cli.emit(json{{"schema", kSchema},
                    {"pass", rep.pass},
                    {"inputs_checked", rep.inputs_checked},
                    {"seed", rep.seed},
                    {"counterexample", rep.counterexample}});
    } else if (ce_dw->parsed()) {
      const GroupContext& ctx = cli.ctx();
      Family f = parse_family(cli, fam_s);
      WeakIndexingSystem tnu = terminal_with_unit_family(ctx, f, cli.bound);
      DistinctnessWitness w = distinctness_witness(ctx, tnu, f, parse_multiset(cli, set_a));
      json input = json::array();
      for (auto& e : w.input) input.push_back(multiset_to_json(ctx, e.value));
      cli.emit(json{{"schema", kSchema},
                    {"input", input},
                    {"plain", multiset_to_json(ctx, w.plain.value)},
                    {"zeroed", "basepoint"}});
    } else if (su_acc->parsed()) {
      auto results = run_acceptance(cli.jobs, cli.seed);
      if (table) {
        cli.emit_text(format_results(results));
      } else {
        json rows = json::array();
        for (auto& r : results)
          rows.push_back({{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
        cli.emit(json{{"schema", kSchema}, {"criteria", rows}});
      }
      for (auto& r : results)
        if (!r.pass) return 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: BadInput: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
