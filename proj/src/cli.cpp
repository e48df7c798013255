#include "qcat/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcat/samples.hpp"
#include "qcat/workspace.hpp"

namespace qcat {

namespace {

struct ReportDoc {
  std::vector<std::pair<std::string, std::string>> machine;
  std::vector<std::string> human;

  void put(const std::string& k, const std::string& v) { machine.emplace_back(k, v); }
  void put(const std::string& k, size_t v) { machine.emplace_back(k, std::to_string(v)); }
  void note(std::string line) { human.push_back(std::move(line)); }

  void write(std::ostream& out) const {
    out << "[machine]\n";
    for (const auto& [k, v] : machine) out << k << "=" << v << "\n";
    out << "[human]\n";
    for (const auto& line : human) out << line << "\n";
  }
};

struct CliOptions {
  std::string workspace_path;
  uint64_t seed = 1;
  int jobs = 1;
  size_t max_objects = 4096;
  std::string route = "both";
};

EndoOptions endo_options(const CliOptions& cli) {
  EndoOptions o;
  o.limits.max_objects = cli.max_objects;
  o.limits.max_candidates = std::max<size_t>(size_t{1} << 20, 64 * cli.max_objects);
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw QcatError("cannot open workspace file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string s;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) s += "|";
    s += labels[i];
  }
  return s;
}

void put_matrix(ReportDoc& doc, const Quantale& q, const std::vector<std::vector<QValue>>& m) {
  for (size_t i = 0; i < m.size(); ++i) {
    std::string row;
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) row += ",";
      row += q.render(m[i][j]);
    }
    doc.put("matrix." + std::to_string(i), row);
  }
}

const Workspace::ModuleEntry& need_module(const Workspace& ws, const std::string& name) {
  auto it = ws.modules.find(name);
  if (it == ws.modules.end()) throw QcatError("unknown module '" + name + "'");
  return it->second;
}

const Workspace::FunctorEntry& need_functor(const Workspace& ws, const std::string& name) {
  auto it = ws.functors.find(name);
  if (it == ws.functors.end()) throw QcatError("unknown functor '" + name + "'");
  return it->second;
}

ExprPtr need_endofunctor(const Workspace& ws, const std::string& name) {
  auto it = ws.endofunctors.find(name);
  if (it == ws.endofunctors.end()) throw QcatError("unknown endofunctor '" + name + "'");
  return it->second;
}

CatPtr need_category(const Workspace& ws, const std::string& name) {
  auto it = ws.categories.find(name);
  if (it == ws.categories.end()) throw QcatError("unknown category '" + name + "'");
  return it->second;
}

const Workspace::CoalgebraEntry& need_coalgebra(const Workspace& ws, const std::string& name) {
  auto it = ws.coalgebras.find(name);
  if (it == ws.coalgebras.end()) throw QcatError("unknown coalgebra '" + name + "'");
  return it->second;
}

const Workspace::ModelEntry& need_model(const Workspace& ws, const std::string& name) {
  auto it = ws.models.find(name);
  if (it == ws.models.end()) throw QcatError("unknown model '" + name + "'");
  return it->second;
}

FormulaPtr need_formula(const Workspace& ws, const std::string& name) {
  auto it = ws.formulas.find(name);
  if (it == ws.formulas.end()) throw QcatError("unknown formula '" + name + "'");
  return it->second;
}

int cmd_validate(const Workspace& ws, const CliOptions& cli, ReportDoc& doc) {
  size_t failures = 0;
  {
    std::vector<QValue> samples;
    if (!ws.q->finite()) {
      SampleGen gen(cli.seed);
      for (int i = 0; i < 24; ++i) samples.push_back(gen.value(*ws.q));
    }
    Report rep = ws.q->validate_laws(samples);
    doc.put("quantale.laws", rep.ok() ? "ok" : "fail");
    for (const auto& v : rep.violations) doc.note("quantale: " + v);
    failures += rep.violations.size();
  }
  auto record = [&](const std::string& key, const Report& rep) {
    doc.put(key, rep.ok() ? "ok" : std::to_string(rep.violations.size()) + " violations");
    for (const auto& v : rep.violations) doc.note(key + ": " + v);
    failures += rep.violations.size();
  };
  for (const auto& [name, cat] : ws.categories) record("category." + name, validate_category(*cat));
  for (const auto& [name, e] : ws.functors) record("functor." + name, validate_functor(e.f));
  for (const auto& [name, e] : ws.modules) record("module." + name, validate_module(e.m));
  for (const auto& [name, e] : ws.squares)
    record("square." + name, validate_square(ws.resolve_square(name)));
  for (const auto& [name, e] : ws.coalgebras)
    record("coalgebra." + name, validate_coalgebra(e.c, endo_options(cli)));
  for (const auto& [name, e] : ws.models) record("model." + name, validate_model(e.m));
  doc.put("result", failures == 0 ? "pass" : "fail");
  doc.note(failures == 0 ? "workspace is valid" : "workspace has violations");
  return failures == 0 ? 0 : 1;
}

int cmd_compose(const Workspace& ws, const CliOptions& cli, const std::string& left,
                const std::string& right, bool via_collages, ReportDoc& doc) {
  const Module& s = need_module(ws, left).m;
  const Module& r = need_module(ws, right).m;
  Module direct = compose(s, r);
  doc.put("rows", join_labels(direct.dst->objects));
  doc.put("cols", join_labels(direct.src->objects));
  put_matrix(doc, *ws.q, direct.matrix);
  if (!via_collages) {
    doc.put("result", "pass");
    doc.note("composite " + left + "·" + right + " computed by the sup-of-tensor formula");
    return 0;
  }
  Collage want = collage(direct);
  bool all_ok = true;
  for (const char* route : {"pushout", "cocomma"}) {
    if (cli.route != "both" && cli.route != route) continue;
    Collage got = compose_collages(collage(s), collage(r),
                                   std::string(route) == "pushout" ? ComposeRoute::pushout
                                                                   : ComposeRoute::cocomma);
    bool ok = same_collage(got, want);
    doc.put(std::string("route.") + route, ok ? "match" : "mismatch");
    all_ok = all_ok && ok;
  }
  doc.put("result", all_ok ? "pass" : "fail");
  doc.note(all_ok ? "collage composition agrees with the direct composite"
                  : "collage composition disagrees with the direct composite");
  return all_ok ? 0 : 1;
}

int cmd_collage(const Workspace& ws, const std::string& name, ReportDoc& doc) {
  const Module& r = need_module(ws, name).m;
  Collage c = collage(r);
  doc.put("objects", join_labels(c.coll->objects));
  put_matrix(doc, *ws.q, c.coll->hom);
  Module back = module_of_cospan(c.i0, c.i1);
  bool ok = back.matrix == r.matrix && is_fully_faithful(c.i0) && is_fully_faithful(c.i1);
  doc.put("roundtrip", back.matrix == r.matrix ? "exact" : "broken");
  doc.put("legs-ff", is_fully_faithful(c.i0) && is_fully_faithful(c.i1) ? "yes" : "no");
  doc.put("result", ok ? "pass" : "fail");
  doc.note("collage of '" + name + "' with module recovery (i0)^<>·(i1)_<>");
  return ok ? 0 : 1;
}

int cmd_exact(const Workspace& ws, const CliOptions& cli, const std::string& name,
              const std::string& apply, ReportDoc& doc) {
  LaxSquare sq = ws.resolve_square(name);
  doc.put("square", name);
  if (!apply.empty()) {
    ExprPtr t = need_endofunctor(ws, apply);
    sq = apply_to_square(t, sq, endo_options(cli));
    doc.put("apply", apply);
  }
  ExactnessResult res = is_exact(sq);
  doc.put("result", res.exact ? "exact" : "not-exact");
  if (!res.exact) {
    doc.put("witness.a", sq.f.src->objects[res.witness->a]);
    doc.put("witness.b", sq.g.src->objects[res.witness->b]);
    doc.put("lhs", res.witness->lhs.str());
    doc.put("rhs", res.witness->rhs.str());
    doc.note("exactness fails at (" + sq.f.src->objects[res.witness->a] + ", " +
             sq.g.src->objects[res.witness->b] + "): C(fa,gb) = " + res.witness->lhs.str() +
             " but the join over the top span gives " + res.witness->rhs.str());
  } else {
    doc.note("square is exact");
  }
  return res.exact ? 0 : 1;
}

int cmd_cocomma(const Workspace& ws, const std::string& fname, const std::string& gname,
                ReportDoc& doc) {
  const VFunctor& f = need_functor(ws, fname).f;
  const VFunctor& g = need_functor(ws, gname).f;
  Cospan cc = cocomma(f, g);
  doc.put("objects", join_labels(cc.apex->objects));
  put_matrix(doc, *ws.q, cc.apex->hom);
  doc.put("result", "pass");
  doc.note("cocomma " + fname + " |> " + gname + "; its square passed the exactness self-test");
  return 0;
}

int cmd_factorize(const Workspace& ws, const std::string& name, ReportDoc& doc) {
  const VFunctor& f = need_functor(ws, name).f;
  Factorization fac = factorize(f);
  doc.put("mid.objects", join_labels(fac.e.dst->objects));
  bool ok = is_surjective_on_objects(fac.e) && is_fully_faithful(fac.j) &&
            same_functor(compose(fac.j, fac.e), f);
  doc.put("e.surjective", is_surjective_on_objects(fac.e) ? "yes" : "no");
  doc.put("j.ff", is_fully_faithful(fac.j) ? "yes" : "no");
  doc.put("result", ok ? "pass" : "fail");
  doc.note("factorization of '" + name + "' as (surjective on objects) ; (fully faithful)");
  return ok ? 0 : 1;
}

int cmd_lift(const Workspace& ws, const CliOptions& cli, const std::string& tname,
             const std::string& mname, const std::string& method, ReportDoc& doc) {
  ExprPtr t = need_endofunctor(ws, tname);
  const Module& r = need_module(ws, mname).m;
  EndoOptions opts = endo_options(cli);
  bool closed_available = is_lower_id(*t) || is_upper_id(*t) || is_power_id(*t);
  std::string how = method;
  if (how == "auto") how = closed_available ? "both" : "collage";
  if ((how == "closed" || how == "both") && !closed_available)
    throw QcatError("closed-form lifting is only available for lower(id), upper(id), power(id)");
  Module out = how == "closed" ? lift_module(t, r, opts) : lift_via_collage(t, r, opts);
  doc.put("method", how);
  doc.put("rows", join_labels(out.dst->objects));
  doc.put("cols", join_labels(out.src->objects));
  put_matrix(doc, *ws.q, out.matrix);
  if (how == "both") {
    Module closed = lift_module(t, r, opts);
    bool ok = closed.matrix == out.matrix;
    doc.put("oracle-agreement", ok ? "exact" : "mismatch");
    doc.put("result", ok ? "pass" : "fail");
    if (!ok) doc.note("closed form disagrees with the collage route");
    return ok ? 0 : 1;
  }
  doc.put("result", "pass");
  if (has_non_bcc_leaf(*t))
    doc.note("warning: functor contains a leaf that fails the Beck-Chevalley condition; the lifting is lax only");
  return 0;
}

int cmd_battery(const Workspace& ws, const CliOptions& cli, const std::string& tname,
                size_t samples, size_t size, ReportDoc& doc) {
  ExprPtr t = need_endofunctor(ws, tname);
  EndoOptions opts = endo_options(cli);
  SampleGen gen(cli.seed);
  std::vector<CatPtr> cats;
  std::vector<ModulePairSample> pairs;
  std::vector<VFunctor> functors;
  for (size_t i = 0; i < samples; ++i) {
    CatPtr a = gen.category(ws.q, 1 + gen.pick(size), "a");
    CatPtr b = gen.category(ws.q, 1 + gen.pick(size), "b");
    CatPtr c = gen.category(ws.q, 1 + gen.pick(size), "c");
    if (i < 3) cats.push_back(a);
    pairs.push_back({"pair#" + std::to_string(i), gen.module(b, c), gen.module(a, b)});
    functors.push_back(gen.functor_into(b, 1 + gen.pick(size), "x"));
  }
  BatteryReport rep = functoriality_battery(t, cats, pairs, functors, opts, cli.jobs);
  for (const auto& line : rep.lines)
    doc.put(line.check + "." + line.instance, line.pass ? "ok" : "FAIL " + line.detail);
  doc.put("checks", rep.lines.size());
  doc.put("result", rep.passed() ? "pass" : "fail");
  if (const BatteryLine* f = rep.first_failure())
    doc.note("counterexample: " + f->check + " on " + f->instance + ": " + f->detail);
  else
    doc.note("no counterexample found at the tested sizes");
  return rep.passed() ? 0 : 1;
}

int cmd_bcc(const Workspace& ws, const CliOptions& cli, const std::string& tname, size_t samples,
            size_t size, ReportDoc& doc) {
  ExprPtr t = need_endofunctor(ws, tname);
  EndoOptions opts = endo_options(cli);
  SampleGen gen(cli.seed);
  std::vector<VFunctor> ffs;
  std::vector<CocommaSample> ccs;
  for (size_t i = 0; i < samples; ++i) {
    CatPtr b = gen.category(ws.q, 1 + gen.pick(size), "b");
    ffs.push_back(gen.ff_into(b, 1 + gen.pick(size), "s"));
    CatPtr c0 = gen.category(ws.q, 1 + gen.pick(size), "m");
    VFunctor f = gen.functor_into(c0, 1 + gen.pick(size), "p");
    // rebuild g from the same source category as f
    VFunctor g;
    {
      CatPtr cc2 = gen.category(ws.q, 1 + gen.pick(size), "n");
      std::vector<int> m(f.src->size());
      for (auto& v : m) v = static_cast<int>(gen.pick(cc2->size()));
      // lower the source homs until g is a functor as well
      std::vector<std::vector<QValue>> hom = f.src->hom;
      const Quantale& q = *ws.q;
      for (size_t x = 0; x < hom.size(); ++x)
        for (size_t y = 0; y < hom.size(); ++y)
          hom[x][y] = q.meet2(hom[x][y], cc2->at(m[x], m[y]));
      CatPtr shrunk = make_cat(ws.q, f.src->objects, categorify(q, std::move(hom)));
      VFunctor f2{shrunk, f.dst, f.map};
      g = VFunctor{shrunk, cc2, std::move(m)};
      f = std::move(f2);
    }
    ccs.push_back({"cocomma#" + std::to_string(i), f, g});
  }
  // user-supplied fully faithful functors in the workspace join the battery
  for (const auto& [name, entry] : ws.functors)
    if (is_fully_faithful(entry.f)) ffs.push_back(entry.f);
  // structured exact squares: both Yoneda squares of each sampled functor
  std::vector<LaxSquare> squares;
  for (size_t i = 0; i < samples; ++i) {
    VFunctor f = gen.functor_into(gen.category(ws.q, 1 + gen.pick(size), "y"), 1 + gen.pick(size), "q");
    squares.push_back({identity_functor(f.src), f, f, identity_functor(f.dst)});
    squares.push_back({f, identity_functor(f.src), identity_functor(f.dst), f});
  }
  BatteryReport rep = bcc_battery(t, ffs, ccs, squares, opts, cli.jobs);
  for (const auto& line : rep.lines)
    doc.put(line.check + "." + line.instance, line.pass ? "ok" : "FAIL " + line.detail);
  doc.put("checks", rep.lines.size());
  doc.put("result", rep.passed() ? "pass" : "fail");
  if (const BatteryLine* f = rep.first_failure())
    doc.note("counterexample: " + f->check + " on " + f->instance + ": " + f->detail);
  else
    doc.note("no counterexample found at the tested sizes");
  return rep.passed() ? 0 : 1;
}

int cmd_delta(const Workspace& ws, const CliOptions& cli, const std::string& tname,
              const std::string& cname, ReportDoc& doc) {
  ExprPtr t = need_endofunctor(ws, tname);
  CatPtr a = need_category(ws, cname);
  EndoOptions opts = endo_options(cli);
  DistributiveLaw dl = derive_distributive_law(t, a, opts);
  doc.put("component.src", join_labels(dl.component.src->objects));
  doc.put("component.dst", join_labels(dl.component.dst->objects));
  for (size_t i = 0; i < dl.component.map.size(); ++i)
    doc.put("delta." + dl.component.src->objects[i],
            dl.component.dst->objects[dl.component.map[i]]);
  DistributiveAxiomReport rep = check_distributive_axioms(t, a, opts);
  doc.put("unit", rep.unit.ok() ? "ok" : "fail");
  for (const auto& v : rep.unit.violations) doc.note(v);
  if (rep.mult_skipped) {
    doc.put("mult", "skipped");
    doc.note("multiplication layer skipped: " + rep.skip_reason);
  } else {
    doc.put("mult", rep.mult.ok() ? "ok" : "fail");
    for (const auto& v : rep.mult.violations) doc.note(v);
  }
  bool ok = rep.ok();
  doc.put("result", ok ? "pass" : "fail");
  return ok ? 0 : 1;
}

int cmd_eval(const Workspace& ws, const CliOptions& cli, const std::string& mname,
             const std::string& fname, const std::string& state, ReportDoc& doc) {
  const Model& m = need_model(ws, mname).m;
  FormulaPtr phi = need_formula(ws, fname);
  if (has_non_bcc_leaf(*m.coalg.functor))
    doc.note("warning: coalgebra functor fails the Beck-Chevalley condition; nabla semantics may not be functorial");
  std::vector<QValue> table = eval_table(m, phi, endo_options(cli));
  if (state.empty()) {
    for (size_t x = 0; x < table.size(); ++x)
      doc.put("value." + m.coalg.space->objects[x], ws.q->render(table[x]));
  } else {
    int x = m.coalg.space->index_of(state);
    if (x < 0) throw QcatError("unknown state '" + state + "'");
    doc.put("value." + state, ws.q->render(table[x]));
  }
  doc.put("result", "pass");
  doc.note("satisfaction values of " + render_formula(*phi));
  return 0;
}

int cmd_morphisms(const Workspace& ws, const CliOptions& cli, const std::string& from,
                  const std::string& to, ReportDoc& doc) {
  const Coalgebra& c1 = need_coalgebra(ws, from).c;
  const Coalgebra& c2 = need_coalgebra(ws, to).c;
  std::vector<VFunctor> ms = find_coalgebra_morphisms(c1, c2, endo_options(cli));
  doc.put("count", ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    std::string desc;
    for (size_t x = 0; x < c1.space->size(); ++x) {
      if (x) desc += ",";
      desc += c1.space->objects[x] + ">" + c2.space->objects[ms[i].map[x]];
    }
    doc.put("morphism." + std::to_string(i), desc);
  }
  doc.put("result", "pass");
  doc.note(std::to_string(ms.size()) + " coalgebra morphisms from " + from + " to " + to);
  return 0;
}

int cmd_simulate(const Workspace& ws, const CliOptions& cli, const std::string& from,
                 const std::string& to, ReportDoc& doc) {
  const Coalgebra& c1 = need_coalgebra(ws, from).c;
  const Coalgebra& c2 = need_coalgebra(ws, to).c;
  if (has_non_bcc_leaf(*c1.functor))
    doc.note("warning: functor fails the Beck-Chevalley condition; the simulation operator may be non-monotone");
  SimulationResult res = largest_simulation(c1, c2, endo_options(cli));
  doc.put("rows", join_labels(c2.space->objects));
  doc.put("cols", join_labels(c1.space->objects));
  put_matrix(doc, *ws.q, res.sim.matrix);
  doc.put("iterations", static_cast<size_t>(res.iterations));
  doc.put("converged", res.converged ? "yes" : "no");
  doc.put("monotone", res.monotone ? "yes" : "no");
  doc.put("result", res.converged ? "pass" : "fail");
  doc.note("largest simulation: entry (y,x) is the degree to which y simulates x");
  return res.converged ? 0 : 1;
}

int cmd_bisim(const Workspace& ws, const CliOptions& cli, const std::vector<std::string>& autos,
              const std::vector<std::string>& edge_specs, ReportDoc& doc) {
  EndoOptions opts = endo_options(cli);
  std::vector<std::string> names;
  std::vector<Coalgebra> coalgs;
  auto index_of_coalg = [&](const std::string& n) -> size_t {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    names.push_back(n);
    coalgs.push_back(need_coalgebra(ws, n).c);
    return names.size() - 1;
  };
  std::vector<BisimEdge> edges;
  for (const auto& spec : edge_specs) {
    // f:c1:c2, functor f as a morphism from c1 to c2
    auto a = spec.find(':');
    auto b = spec.rfind(':');
    if (a == std::string::npos || b == a)
      throw QcatError("bad --edge '" + spec + "', expected functor:from:to");
    std::string fn = spec.substr(0, a), c1 = spec.substr(a + 1, b - a - 1), c2 = spec.substr(b + 1);
    size_t i = index_of_coalg(c1), j = index_of_coalg(c2);
    edges.push_back({i, j, need_functor(ws, fn).f});
  }
  for (const auto& n : autos) index_of_coalg(n);
  if (!autos.empty()) {
    for (size_t i = 0; i < coalgs.size(); ++i)
      for (size_t j = 0; j < coalgs.size(); ++j)
        for (auto& f : find_coalgebra_morphisms(coalgs[i], coalgs[j], opts))
          edges.push_back({i, j, std::move(f)});
  }
  std::vector<PartitionBlock> blocks = bisimilarity_closure(coalgs, edges, opts);
  doc.put("witnesses", edges.size());
  doc.put("blocks", blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    std::string line;
    for (size_t k = 0; k < blocks[b].members.size(); ++k) {
      if (k) line += ",";
      line += names[blocks[b].members[k].first] + "." + blocks[b].members[k].second;
    }
    doc.put("block." + std::to_string(b), line);
  }
  doc.put("result", "pass");
  doc.note("bisimilarity closure relative to the supplied witnesses");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computation over commutative quantales and enriched categories"};
  app.require_subcommand(1);

  CliOptions cli;
  std::string left, right, module_name, square_name, apply_name, functor_name, endo_name;
  std::string category_name, model_name, formula_name, state_name, from_name, to_name;
  std::string method = "auto";
  bool via_collages = false;
  size_t samples = 20, size = 3;
  std::vector<std::string> autos, edge_specs;
  std::string autos_csv;

  auto common = [&](CLI::App* sub) {
    sub->add_option("workspace", cli.workspace_path, "workspace file")->required();
    sub->add_option("--seed", cli.seed, "seed for sampled batteries");
    sub->add_option("--jobs", cli.jobs, "worker threads for batteries");
    sub->add_option("--max-objects", cli.max_objects, "object cap for applied functors");
    sub->add_option("--route", cli.route, "collage composition route: pushout|cocomma|both");
    return sub;
  };

  auto* v = common(app.add_subcommand("validate", "validate everything in a workspace"));
  (void)v;
  auto* comp = common(app.add_subcommand("compose", "compose two modules"));
  comp->add_option("--left", left)->required();
  comp->add_option("--right", right)->required();
  comp->add_flag("--collages", via_collages, "also compose as collages and compare");
  auto* coll = common(app.add_subcommand("collage", "build the collage of a module"));
  coll->add_option("--module", module_name)->required();
  auto* ex = common(app.add_subcommand("exact", "check exactness of a lax square"));
  ex->add_option("--square", square_name)->required();
  ex->add_option("--apply", apply_name, "first map the square through this endofunctor");
  auto* cc = common(app.add_subcommand("cocomma", "build a cocomma object"));
  cc->add_option("--left", left)->required();
  cc->add_option("--right", right)->required();
  auto* fz = common(app.add_subcommand("factorize", "eso/ff factorization of a functor"));
  fz->add_option("--functor", functor_name)->required();
  auto* lf = common(app.add_subcommand("lift", "relation lifting of a module"));
  lf->add_option("--endofunctor", endo_name)->required();
  lf->add_option("--module", module_name)->required();
  lf->add_option("--method", method, "collage|closed|both|auto");
  auto* bat = common(app.add_subcommand("battery", "functoriality battery for an endofunctor"));
  bat->add_option("--endofunctor", endo_name)->required();
  bat->add_option("--samples", samples);
  bat->add_option("--size", size, "max category size for generated samples");
  auto* bcc = common(app.add_subcommand("bcc", "Beck-Chevalley falsification battery"));
  bcc->add_option("--endofunctor", endo_name)->required();
  bcc->add_option("--samples", samples);
  bcc->add_option("--size", size);
  auto* dl = common(app.add_subcommand("delta", "derive a distributive law and check its axioms"));
  dl->add_option("--endofunctor", endo_name)->required();
  dl->add_option("--category", category_name)->required();
  auto* ev = common(app.add_subcommand("eval", "evaluate a formula on a model"));
  ev->add_option("--model", model_name)->required();
  ev->add_option("--formula", formula_name)->required();
  ev->add_option("--state", state_name);
  auto* mo = common(app.add_subcommand("morphisms", "find coalgebra morphisms"));
  mo->add_option("--from", from_name)->required();
  mo->add_option("--to", to_name)->required();
  auto* si = common(app.add_subcommand("simulate", "largest simulation between coalgebras"));
  si->add_option("--from", from_name)->required();
  si->add_option("--to", to_name)->required();
  auto* bi = common(app.add_subcommand("bisim", "bisimilarity closure over witnesses"));
  bi->add_option("--auto", autos_csv, "comma-separated coalgebras; all morphisms become witnesses");
  bi->add_option("--edge", edge_specs, "witness edge functor:from:to (repeatable)");

  std::vector<const char*> argv;
  argv.push_back("qcat");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::stringstream so, se;
    int code = app.exit(e, so, se);
    out << so.str();
    err << se.str();
    return code == 0 ? 0 : 2;
  }

  ReportDoc doc;
  try {
    Workspace ws = parse_workspace(read_file(cli.workspace_path), endo_options(cli));
    CLI::App* sub = app.get_subcommands().front();
    const std::string& cmd = sub->get_name();
    doc.put("command", cmd);
    doc.put("workspace", cli.workspace_path);

    int code = 2;
    if (cmd == "validate")
      code = cmd_validate(ws, cli, doc);
    else if (cmd == "compose")
      code = cmd_compose(ws, cli, left, right, via_collages, doc);
    else if (cmd == "collage")
      code = cmd_collage(ws, module_name, doc);
    else if (cmd == "exact")
      code = cmd_exact(ws, cli, square_name, apply_name, doc);
    else if (cmd == "cocomma")
      code = cmd_cocomma(ws, left, right, doc);
    else if (cmd == "factorize")
      code = cmd_factorize(ws, functor_name, doc);
    else if (cmd == "lift")
      code = cmd_lift(ws, cli, endo_name, module_name, method, doc);
    else if (cmd == "battery")
      code = cmd_battery(ws, cli, endo_name, samples, size, doc);
    else if (cmd == "bcc")
      code = cmd_bcc(ws, cli, endo_name, samples, size, doc);
    else if (cmd == "delta")
      code = cmd_delta(ws, cli, endo_name, category_name, doc);
    else if (cmd == "eval")
      code = cmd_eval(ws, cli, model_name, formula_name, state_name, doc);
    else if (cmd == "morphisms")
      code = cmd_morphisms(ws, cli, from_name, to_name, doc);
    else if (cmd == "simulate")
      code = cmd_simulate(ws, cli, from_name, to_name, doc);
    else if (cmd == "bisim") {
      if (!autos_csv.empty()) {
        std::stringstream ss(autos_csv);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) autos.push_back(item);
      }
      code = cmd_bisim(ws, cli, autos, edge_specs, doc);
    }
    doc.write(out);
    return code;
  } catch (const ParseError& e) {
    doc.put("result", "error");
    doc.put("errors", e.errors.size());
    for (const auto& line : e.errors) doc.note(line);
    doc.write(out);
    err << "input error\n";
    return 2;
  } catch (const QcatError& e) {
    doc.put("result", "error");
    doc.note(e.what());
    doc.write(out);
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace qcat
