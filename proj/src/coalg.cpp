#include "qcat/coalg.hpp"

#include <algorithm>
#include <numeric>

namespace qcat {

namespace {

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.node != b.node) return false;
  switch (a.node) {
    case Expr::Node::constant:
      return a.constant_name == b.constant_name && same_cat(*a.constant_cat, *b.constant_cat);
    case Expr::Node::sum:
    case Expr::Node::tensor:
      return expr_equal(*a.child0, *b.child0) && expr_equal(*a.child1, *b.child1);
    case Expr::Node::dual:
    case Expr::Node::lower:
    case Expr::Node::upper:
    case Expr::Node::power:
      return expr_equal(*a.child0, *b.child0);
    default:
      return true;
  }
}

}  // namespace

Coalgebra make_coalgebra(CatPtr space, ExprPtr functor, std::vector<int> xi_map,
                         const EndoOptions& opts) {
  Coalgebra c;
  c.space = space;
  c.functor = std::move(functor);
  c.xi.src = space;
  c.xi.dst = apply_to_category_ptr(c.functor, space, opts);
  c.xi.map = std::move(xi_map);
  Report rep = validate_functor(c.xi);
  if (!rep.ok()) throw QcatError("coalgebra structure is not a V-functor: " + rep.violations.front());
  return c;
}

Report validate_coalgebra(const Coalgebra& c, const EndoOptions& opts) {
  Report rep;
  VCat tx = apply_to_category(c.functor, c.space, opts);
  if (!same_cat(tx, *c.xi.dst)) {
    rep.add("coalgebra codomain is not T(state space)");
    return rep;
  }
  rep.merge(validate_functor(c.xi));
  return rep;
}

FormulaPtr Formula::make_atom(std::string name) {
  Formula f;
  f.node = Node::atom;
  f.atom = std::move(name);
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr Formula::make_const(QValue v) {
  Formula f;
  f.node = Node::constant;
  f.value = v;
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr Formula::make_meet(std::vector<FormulaPtr> kids) {
  Formula f;
  f.node = Node::meet;
  f.children = std::move(kids);
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr Formula::make_join(std::vector<FormulaPtr> kids) {
  Formula f;
  f.node = Node::join;
  f.children = std::move(kids);
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr Formula::make_nabla(std::vector<std::pair<FormulaPtr, QValue>> weights) {
  Formula f;
  f.node = Node::nabla;
  f.weights = std::move(weights);
  return std::make_shared<const Formula>(std::move(f));
}

std::string render_formula(const Formula& f) {
  switch (f.node) {
    case Formula::Node::atom:
      return f.atom;
    case Formula::Node::constant:
      return f.value.str();
    case Formula::Node::meet:
    case Formula::Node::join: {
      std::string s = f.node == Formula::Node::meet ? "meet(" : "join(";
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += ",";
        s += render_formula(*f.children[i]);
      }
      return s + ")";
    }
    case Formula::Node::nabla: {
      std::string s = "nabla{";
      for (size_t i = 0; i < f.weights.size(); ++i) {
        if (i) s += ",";
        s += render_formula(*f.weights[i].first) + ":" + f.weights[i].second.str();
      }
      return s + "}";
    }
  }
  return "?";
}

Report validate_model(const Model& m) {
  Report rep = validate_coalgebra(m.coalg);
  const VCat& x = *m.coalg.space;
  const Quantale& q = *x.q;
  for (const auto& [atom, table] : m.valuation) {
    if (table.size() != x.size()) {
      rep.add("atom '" + atom + "' has a table of wrong size");
      continue;
    }
    for (const auto& v : table)
      if (!q.contains(v)) rep.add("atom '" + atom + "' has a value outside the carrier");
    for (size_t a = 0; a < x.size(); ++a)
      for (size_t b = 0; b < x.size(); ++b)
        if (!q.le(q.tensor(table[a], x.at(a, b)), table[b]))
          rep.add("atom '" + atom + "' is not functorial at (" + x.objects[a] + "," + x.objects[b] +
                  ")");
  }
  return rep;
}

namespace {

struct EvalCtx {
  const Model& model;
  EndoOptions opts;
  std::map<const Formula*, std::vector<QValue>> memo;
};

std::vector<QValue> eval_rec(EvalCtx& ctx, const FormulaPtr& phi);

std::vector<QValue> nabla_table(EvalCtx& ctx, const Formula& f) {
  const Coalgebra& c = ctx.model.coalg;
  const Quantale& q = *c.space->q;
  size_t nstates = c.space->size();

  std::vector<std::vector<QValue>> sub;
  std::vector<QValue> gamma;
  sub.reserve(f.weights.size());
  gamma.reserve(f.weights.size());
  for (const auto& [phi, w] : f.weights) {
    q.require(w);
    sub.push_back(eval_rec(ctx, phi));
    gamma.push_back(w);
  }

  // formula stage, taken discrete
  VCat ldisc;
  ldisc.q = c.space->q;
  for (size_t i = 0; i < gamma.size(); ++i) ldisc.objects.push_back("f" + std::to_string(i));
  ldisc.hom.assign(gamma.size(), std::vector<QValue>(gamma.size(), q.bot()));
  for (size_t i = 0; i < gamma.size(); ++i) ldisc.hom[i][i] = q.unit();
  CatPtr ldiscp = std::make_shared<VCat>(std::move(ldisc));

  // forcing module ⊩ : L -|-> X^op
  CatPtr xop = opposite_ptr(c.space);
  Module forces;
  forces.src = ldiscp;
  forces.dst = xop;
  forces.matrix.assign(nstates, std::vector<QValue>(gamma.size(), q.bot()));
  for (size_t x = 0; x < nstates; ++x)
    for (size_t i = 0; i < gamma.size(); ++i) forces.matrix[x][i] = sub[i][x];

  if (!validate_module(forces).ok())
    throw QcatError("satisfaction module is not functorial; atom predicates must be V-functors");

  ExprPtr tdual = Expr::make_dual(c.functor);
  Collage coll = collage(forces);
  AppliedView vxop(tdual, xop, ctx.opts);
  AppliedView vl(tdual, ldiscp, ctx.opts);
  AppliedView vcoll(tdual, coll.coll, ctx.opts);
  std::vector<int> m0 = vxop.map_along(coll.i0, vcoll);
  std::vector<int> m1 = vl.map_along(coll.i1, vcoll);
  int gidx = vl.index_of(table_label(q, gamma));
  if (gidx < 0)
    throw QcatError("nabla weights " + table_label(q, gamma) +
                    " are not an object of the dual functor applied to the formula stage");

  std::vector<QValue> generic(nstates);
  for (size_t x = 0; x < nstates; ++x)
    generic[x] = vcoll.hom(m0[c.xi.map[x]], m1[gidx]);

  // closed forms for the three presheaf-style coalgebra functors
  const Expr& t = *c.functor;
  if (is_lower_id(t) || is_upper_id(t) || is_power_id(t)) {
    AppliedView vx(c.functor, c.space, ctx.opts);
    std::vector<QValue> closed(nstates);
    for (size_t x = 0; x < nstates; ++x) {
      const std::vector<QValue>& xi_tab = vx.table(c.xi.map[x]);
      QValue fwd = q.top();  // ⋀_y [ξ(x)(y), ⋁_i ⊩(y,i)⊗γ(i)]
      for (size_t y = 0; y < nstates; ++y) {
        QValue sup = q.bot();
        for (size_t i = 0; i < gamma.size(); ++i) sup = q.join2(sup, q.tensor(sub[i][y], gamma[i]));
        fwd = q.meet2(fwd, q.hom(xi_tab[y], sup));
      }
      QValue bwd = q.top();  // ⋀_i [γ(i), ⋁_y ⊩(y,i)⊗ξ(x)(y)]
      for (size_t i = 0; i < gamma.size(); ++i) {
        QValue sup = q.bot();
        for (size_t y = 0; y < nstates; ++y) sup = q.join2(sup, q.tensor(sub[i][y], xi_tab[y]));
        bwd = q.meet2(bwd, q.hom(gamma[i], sup));
      }
      if (is_upper_id(t))
        closed[x] = fwd;
      else if (is_lower_id(t))
        closed[x] = bwd;
      else
        closed[x] = q.tensor(fwd, bwd);
    }
    if (closed != generic)
      throw std::logic_error("nabla closed form disagrees with the collage route");
  }
  return generic;
}

std::vector<QValue> eval_rec(EvalCtx& ctx, const FormulaPtr& phi) {
  auto it = ctx.memo.find(phi.get());
  if (it != ctx.memo.end()) return it->second;
  const Model& m = ctx.model;
  const Quantale& q = *m.coalg.space->q;
  size_t nstates = m.coalg.space->size();
  std::vector<QValue> out;
  switch (phi->node) {
    case Formula::Node::atom: {
      auto v = m.valuation.find(phi->atom);
      if (v == m.valuation.end()) throw QcatError("unvalued atom '" + phi->atom + "'");
      out = v->second;
      break;
    }
    case Formula::Node::constant:
      q.require(phi->value);
      out.assign(nstates, phi->value);
      break;
    case Formula::Node::meet:
    case Formula::Node::join: {
      bool is_meet = phi->node == Formula::Node::meet;
      out.assign(nstates, is_meet ? q.top() : q.bot());
      for (const auto& kid : phi->children) {
        std::vector<QValue> kt = eval_rec(ctx, kid);
        for (size_t x = 0; x < nstates; ++x)
          out[x] = is_meet ? q.meet2(out[x], kt[x]) : q.join2(out[x], kt[x]);
      }
      break;
    }
    case Formula::Node::nabla:
      out = nabla_table(ctx, *phi);
      break;
  }
  ctx.memo.emplace(phi.get(), out);
  return out;
}

}  // namespace

std::vector<QValue> eval_table(const Model& m, const FormulaPtr& phi, const EndoOptions& opts) {
  EvalCtx ctx{m, opts, {}};
  return eval_rec(ctx, phi);
}

QValue eval(const Model& m, const FormulaPtr& phi, int state, const EndoOptions& opts) {
  if (state < 0 || static_cast<size_t>(state) >= m.coalg.space->size())
    throw QcatError("eval: state index out of range");
  return eval_table(m, phi, opts)[state];
}

bool is_coalgebra_morphism(const Coalgebra& c1, const Coalgebra& c2, const VFunctor& f,
                           const EndoOptions& opts) {
  if (!expr_equal(*c1.functor, *c2.functor))
    throw QcatError("coalgebra morphism check between different functors");
  if (!validate_functor(f).ok()) return false;
  // both views over the same expression object so maps line up
  AppliedView vx(c1.functor, c1.space, opts);
  AppliedView vy(c1.functor, c2.space, opts);
  std::vector<int> tf = vx.map_along(f, vy);
  for (size_t x = 0; x < c1.space->size(); ++x)
    if (c2.xi.map[f.map[x]] != tf[c1.xi.map[x]]) return false;
  return true;
}

std::vector<VFunctor> find_coalgebra_morphisms(const Coalgebra& c1, const Coalgebra& c2,
                                               const EndoOptions& opts, size_t max_maps) {
  if (!expr_equal(*c1.functor, *c2.functor))
    throw QcatError("coalgebra morphism search between different functors");
  size_t nx = c1.space->size(), ny = c2.space->size();
  double total = 1;
  for (size_t i = 0; i < nx; ++i) total *= static_cast<double>(ny);
  if (total > static_cast<double>(max_maps))
    throw QcatError("coalgebra morphism search space exceeds the guard of " +
                    std::to_string(max_maps) + " object maps");

  AppliedView vx(c1.functor, c1.space, opts);
  AppliedView vy(c1.functor, c2.space, opts);
  const Quantale& q = *c1.space->q;

  std::vector<VFunctor> found;
  if (ny == 0 && nx > 0) return found;
  std::vector<int> map(nx, 0);
  while (true) {
    bool functorial = true;
    for (size_t a = 0; a < nx && functorial; ++a)
      for (size_t b = 0; b < nx && functorial; ++b)
        if (!q.le(c1.space->at(a, b), c2.space->at(map[a], map[b]))) functorial = false;
    if (functorial) {
      VFunctor f{c1.space, c2.space, map};
      std::vector<int> tf = vx.map_along(f, vy);
      bool commutes = true;
      for (size_t x = 0; x < nx && commutes; ++x)
        if (c2.xi.map[map[x]] != tf[c1.xi.map[x]]) commutes = false;
      if (commutes) found.push_back(std::move(f));
    }
    size_t pos = nx;
    bool done = nx == 0;
    while (pos > 0) {
      --pos;
      if (++map[pos] < static_cast<int>(ny)) break;
      map[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  return found;
}

std::vector<PartitionBlock> bisimilarity_closure(const std::vector<Coalgebra>& coalgs,
                                                 const std::vector<BisimEdge>& edges,
                                                 const EndoOptions& opts) {
  std::vector<size_t> offset(coalgs.size() + 1, 0);
  for (size_t i = 0; i < coalgs.size(); ++i) offset[i + 1] = offset[i] + coalgs[i].space->size();
  size_t total = offset.back();
  std::vector<size_t> parent(total);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  for (const auto& e : edges) {
    if (e.from >= coalgs.size() || e.to >= coalgs.size())
      throw QcatError("bisimilarity witness references an unknown coalgebra");
    if (!is_coalgebra_morphism(coalgs[e.from], coalgs[e.to], e.f, opts))
      throw QcatError("bisimilarity witness is not a coalgebra morphism");
    for (size_t x = 0; x < coalgs[e.from].space->size(); ++x)
      unite(offset[e.from] + x, offset[e.to] + e.f.map[x]);
  }

  std::map<size_t, PartitionBlock> blocks;
  for (size_t i = 0; i < coalgs.size(); ++i)
    for (size_t x = 0; x < coalgs[i].space->size(); ++x)
      blocks[find(offset[i] + x)].members.push_back({i, coalgs[i].space->objects[x]});
  std::vector<PartitionBlock> out;
  out.reserve(blocks.size());
  for (auto& [root, blk] : blocks) out.push_back(std::move(blk));
  return out;
}

Report check_invariance(const std::vector<Model>& models, const std::vector<BisimEdge>& edges,
                        const std::vector<FormulaPtr>& formulas, const EndoOptions& opts) {
  Report rep;
  for (const auto& e : edges) {
    const Model& m1 = models.at(e.from);
    const Model& m2 = models.at(e.to);
    for (const auto& [atom, table] : m1.valuation) {
      auto it = m2.valuation.find(atom);
      if (it == m2.valuation.end())
        throw QcatError("valuation incompatibility: atom '" + atom + "' missing in target model");
      for (size_t x = 0; x < table.size(); ++x)
        if (it->second[e.f.map[x]] != table[x])
          throw QcatError("valuation incompatibility: atom '" + atom + "' not transported at state " +
                          m1.coalg.space->objects[x]);
    }
    for (size_t k = 0; k < formulas.size(); ++k) {
      std::vector<QValue> t1 = eval_table(m1, formulas[k], opts);
      std::vector<QValue> t2 = eval_table(m2, formulas[k], opts);
      for (size_t x = 0; x < t1.size(); ++x)
        if (t1[x] != t2[e.f.map[x]]) {
          rep.add("invariance fails for formula " + render_formula(*formulas[k]) + " at state " +
                  m1.coalg.space->objects[x] + ": " + t1[x].str() + " vs " +
                  t2[e.f.map[x]].str());
          break;
        }
    }
  }
  return rep;
}

SimulationResult largest_simulation(const Coalgebra& c1, const Coalgebra& c2,
                                    const EndoOptions& opts, int max_iterations) {
  if (!expr_equal(*c1.functor, *c2.functor))
    throw QcatError("simulation between coalgebras for different functors");
  const Quantale& q = *c1.space->q;
  size_t nx = c1.space->size(), ny = c2.space->size();

  if (max_iterations <= 0) {
    if (q.finite())
      max_iterations = static_cast<int>((q.carrier().size() + 1) * nx * ny + 2);
    else
      max_iterations = 100;
  }

  SimulationResult res;
  res.sim.src = c1.space;
  res.sim.dst = c2.space;
  res.sim.matrix.assign(ny, std::vector<QValue>(nx, q.top()));

  for (int it = 0; it < max_iterations; ++it) {
    Module lifted = lift_module(c1.functor, res.sim, opts);
    std::vector<std::vector<QValue>> next(ny, std::vector<QValue>(nx, q.bot()));
    bool descending = true;
    for (size_t y = 0; y < ny; ++y)
      for (size_t x = 0; x < nx; ++x) {
        next[y][x] = lifted.matrix[c2.xi.map[y]][c1.xi.map[x]];
        if (!q.le(next[y][x], res.sim.matrix[y][x])) descending = false;
      }
    res.iterations = it + 1;
    if (!descending) {
      res.monotone = false;
      res.sim.matrix = std::move(next);
      return res;
    }
    if (next == res.sim.matrix) {
      res.converged = true;
      break;
    }
    res.sim.matrix = std::move(next);
  }

  if (!validate_module(res.sim).ok())
    throw std::logic_error("largest_simulation produced an invalid module");

  if (res.converged) {
    // lax-square condition: ν_◇·R ≤ T̄(R)·ξ_◇
    Module lifted = lift_module(c1.functor, res.sim, opts);
    for (size_t ty = 0; ty < c2.xi.dst->size(); ++ty)
      for (size_t x = 0; x < nx; ++x) {
        QValue lhs = q.bot();
        for (size_t y = 0; y < ny; ++y)
          lhs = q.join2(lhs, q.tensor(c2.xi.dst->at(ty, c2.xi.map[y]), res.sim.matrix[y][x]));
        if (!q.le(lhs, lifted.matrix[ty][c1.xi.map[x]]))
          throw std::logic_error("largest_simulation fixpoint is not a simulation");
      }
  }
  return res;
}

}  // namespace qcat
