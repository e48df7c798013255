#include <doctest.h>

#include "helpers.hpp"
#include "qcat/lifting.hpp"
#include "qcat/samples.hpp"

using namespace qcat;
using namespace qcat::testing;

namespace {

std::pair<CatPtr, VFunctor> notbcc_embedding() {
  auto q = mkq("two");
  CatPtr a = discrete_cat(q, {"a", "b"});
  CatPtr b = cat(q, {"a", "b", "c"}, {{"1", "0", "1"}, {"0", "1", "1"}, {"0", "0", "1"}});
  return {a, functor_of(a, b, {0, 1})};
}

// the Aczel-Mendler style square: discrete two-point space, the cube span,
// and the collapse to the unit category
struct DiagSquare {
  CatPtr a;
  LaxSquare sq;
};

DiagSquare diag_square() {
  auto q = mkq("two");
  CatPtr a = discrete_cat(q, {"a", "b"});
  CatPtr aa = std::make_shared<VCat>(tensor_product(*a, *a));
  CatPtr unit = unit_cat(q);
  std::vector<int> p0(aa->size()), p1(aa->size());
  for (size_t i = 0; i < aa->size(); ++i) {
    p0[i] = static_cast<int>(i / a->size());
    p1[i] = static_cast<int>(i % a->size());
  }
  DiagSquare out;
  out.a = a;
  out.sq.p0 = functor_of(aa, a, p0);
  out.sq.p1 = functor_of(aa, a, p1);
  out.sq.f = functor_of(a, unit, std::vector<int>(a->size(), 0));
  out.sq.g = out.sq.f;
  return out;
}

unsigned table_to_mask(const std::vector<QValue>& t) {
  unsigned m = 0;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] == QValue(1)) m |= 1u << i;
  return m;
}

}  // namespace

TEST_CASE("lifting the identity functor returns the module unchanged") {
  SampleGen gen(101);
  auto q = mkq("godel_chain", 3);
  for (int rep = 0; rep < 5; ++rep) {
    Module r = gen.module(gen.category(q, 1 + gen.pick(3), "a"), gen.category(q, 1 + gen.pick(3), "b"));
    Module lifted = lift_via_collage(Expr::make_id(), r);
    CHECK(lifted.matrix == r.matrix);
  }
}

TEST_CASE("closed forms agree exactly with the collage route for L, U, P") {
  SampleGen gen(103);
  for (auto qk : {"two", "godel_chain"}) {
    auto q = mkq(qk, 2);
    for (int rep = 0; rep < 8; ++rep) {
      Module r =
          gen.module(gen.category(q, 1 + gen.pick(3), "a"), gen.category(q, 1 + gen.pick(3), "b"));
      for (auto which : {ClosedFormFunctor::lower, ClosedFormFunctor::upper, ClosedFormFunctor::power}) {
        ExprPtr t = which == ClosedFormFunctor::lower   ? Expr::make_lower(Expr::make_id())
                    : which == ClosedFormFunctor::upper ? Expr::make_upper(Expr::make_id())
                                                        : Expr::make_power(Expr::make_id());
        Module closed = lift_closed_form(which, r);
        Module via = lift_via_collage(t, r);
        CHECK(same_module(closed, via));
        CHECK(validate_module(via).ok());
      }
    }
  }
}

TEST_CASE("over two the displayed liftings reduce to the forall/exists forms") {
  SampleGen gen(107);
  auto q = mkq("two");
  for (int rep = 0; rep < 6; ++rep) {
    Module r =
        gen.module(gen.category(q, 1 + gen.pick(3), "a"), gen.category(q, 1 + gen.pick(3), "b"));
    Module low = lift_closed_form(ClosedFormFunctor::lower, r);
    Module up = lift_closed_form(ClosedFormFunctor::upper, r);

    TableCat la = presheaf_category(*r.src), lb = presheaf_category(*r.dst);
    for (size_t bi = 0; bi < lb.tables.size(); ++bi)
      for (size_t ai = 0; ai < la.tables.size(); ++ai) {
        unsigned bset = table_to_mask(lb.tables[bi]);
        unsigned aset = table_to_mask(la.tables[ai]);
        bool forall_b = true;
        for (size_t b = 0; b < r.dst->size(); ++b) {
          if (!((bset >> b) & 1)) continue;
          bool ex = false;
          for (size_t a = 0; a < r.src->size(); ++a)
            if (((aset >> a) & 1) && r.at(b, a) == QValue(1)) ex = true;
          forall_b = forall_b && ex;
        }
        CHECK((low.matrix[bi][ai] == QValue(1)) == forall_b);
      }
    TableCat ua = copresheaf_category(*r.src), ub = copresheaf_category(*r.dst);
    for (size_t bi = 0; bi < ub.tables.size(); ++bi)
      for (size_t ai = 0; ai < ua.tables.size(); ++ai) {
        unsigned bset = table_to_mask(ub.tables[bi]);
        unsigned aset = table_to_mask(ua.tables[ai]);
        bool forall_a = true;
        for (size_t a = 0; a < r.src->size(); ++a) {
          if (!((aset >> a) & 1)) continue;
          bool ex = false;
          for (size_t b = 0; b < r.dst->size(); ++b)
            if (((bset >> b) & 1) && r.at(b, a) == QValue(1)) ex = true;
          forall_a = forall_a && ex;
        }
        CHECK((up.matrix[bi][ai] == QValue(1)) == forall_a);
      }
  }
}

TEST_CASE("power lifting over two is the classical Egli-Milner relation lifting") {
  SampleGen gen(109);
  auto q = mkq("two");
  for (int rep = 0; rep < 6; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
    Module r = gen.module(a, b);
    Module lifted = lift_closed_form(ClosedFormFunctor::power, r);
    // oracle: EM lifting of the saturated relation over subsets
    for (size_t bi = 0; bi < lifted.matrix.size(); ++bi)
      for (size_t ai = 0; ai < lifted.matrix[bi].size(); ++ai) {
        unsigned bset = bi, aset = ai;  // power tables enumerate all bit patterns in lex order
        // recompute masks from the actual tables to stay honest
        AppliedView va(Expr::make_power(Expr::make_id()), a);
        AppliedView vb(Expr::make_power(Expr::make_id()), b);
        bset = table_to_mask(vb.table(bi));
        aset = table_to_mask(va.table(ai));
        bool fwd = true;
        for (size_t y = 0; y < b->size(); ++y) {
          if (!((bset >> y) & 1)) continue;
          bool ex = false;
          for (size_t x = 0; x < a->size(); ++x)
            if (((aset >> x) & 1) && r.at(y, x) == QValue(1)) ex = true;
          fwd = fwd && ex;
        }
        bool bwd = true;
        for (size_t x = 0; x < a->size(); ++x) {
          if (!((aset >> x) & 1)) continue;
          bool ex = false;
          for (size_t y = 0; y < b->size(); ++y)
            if (((bset >> y) & 1) && r.at(y, x) == QValue(1)) ex = true;
          bwd = bwd && ex;
        }
        CHECK((lifted.matrix[bi][ai] == QValue(1)) == (fwd && bwd));
      }
  }
}

TEST_CASE("functoriality battery passes for Kripke-polynomial functors and the power functor") {
  SampleGen gen(113);
  std::vector<ExprPtr> exprs;
  exprs.push_back(Expr::make_lower(Expr::make_id()));
  exprs.push_back(Expr::make_upper(Expr::make_id()));
  exprs.push_back(Expr::make_power(Expr::make_id()));
  exprs.push_back(Expr::make_sum(Expr::make_id(), Expr::make_lower(Expr::make_id())));
  exprs.push_back(Expr::make_tensor(Expr::make_id(), Expr::make_id()));
  for (auto qk : {"two", "godel_chain"}) {
    auto q = mkq(qk, 2);
    std::vector<CatPtr> cats;
    std::vector<ModulePairSample> pairs;
    std::vector<VFunctor> functors;
    for (int i = 0; i < 4; ++i) {
      CatPtr a = gen.category(q, 1 + gen.pick(2), "a");
      CatPtr b = gen.category(q, 1 + gen.pick(2), "b");
      CatPtr c = gen.category(q, 1 + gen.pick(2), "c");
      cats.push_back(a);
      pairs.push_back({"p" + std::to_string(i), gen.module(b, c), gen.module(a, b)});
      functors.push_back(gen.functor_into(b, 1 + gen.pick(2), "x"));
    }
    for (const auto& t : exprs) {
      BatteryReport rep = functoriality_battery(t, cats, pairs, functors);
      INFO(render_expr(*t), " over ", qk);
      if (const BatteryLine* f = rep.first_failure()) INFO(f->check, " ", f->instance, " ", f->detail);
      CHECK(rep.passed());
    }
  }
}

TEST_CASE("connected components fails the composition law on the derived pair") {
  auto [a, f] = notbcc_embedding();
  ExprPtr cc = Expr::make_connected_components();
  Module s = graph_upper(f);  // B -|-> A
  Module r = graph_lower(f);  // A -|-> B
  // S·R = id_A because f is fully faithful
  CHECK(compose(s, r).matrix == identity_module(a).matrix);
  BatteryReport rep = functoriality_battery(cc, {}, {{"derived", s, r}}, {});
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->check == "composition");
}

TEST_CASE("triple-diagonal functor fails composition on the span pair of the exact square") {
  DiagSquare d = diag_square();
  REQUIRE(is_exact(d.sq).exact);
  ExprPtr td = Expr::make_triple_diag();
  Module s = graph_lower(d.sq.p0);  // A⊗A -|-> A
  Module r = graph_upper(d.sq.p1);  // A -|-> A⊗A
  BatteryReport rep = functoriality_battery(td, {}, {{"derived", s, r}}, {});
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->check == "composition");

  // and the image of the exact square is not exact, with the classical witness
  LaxSquare image = apply_to_square(td, d.sq);
  ExactnessResult res = is_exact(image);
  REQUIRE_FALSE(res.exact);
  CHECK(image.f.src->objects[res.witness->a] == "(a,a,b)");
  CHECK(image.g.src->objects[res.witness->b] == "(a,b,a)");
  CHECK(res.witness->lhs == QValue(1));
  CHECK(res.witness->rhs == QValue(0));
}

TEST_CASE("bcc battery: ff-preservation failure for connected components, with witness") {
  auto [a, f] = notbcc_embedding();
  (void)a;
  ExprPtr cc = Expr::make_connected_components();
  BatteryReport rep = bcc_battery(cc, {f}, {}, {});
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->check == "ff-preservation");
  CHECK(rep.first_failure()->detail.find("comp_a") != std::string::npos);
  CHECK(rep.first_failure()->detail.find("comp_b") != std::string::npos);
}

TEST_CASE("bcc battery finds no counterexample for the lower functor over two") {
  auto q = mkq("two");
  SampleGen gen(127);
  std::vector<VFunctor> ffs;
  std::vector<CocommaSample> ccs;
  for (int i = 0; i < 6; ++i) {
    CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
    ffs.push_back(gen.ff_into(b, 1 + gen.pick(3), "s"));
    CatPtr mid = gen.category(q, 1 + gen.pick(2), "m");
    VFunctor f = gen.functor_into(gen.category(q, 1 + gen.pick(2), "a"), mid->size(), "p");
    VFunctor f2 = functor_of(mid, f.dst, f.map);
    VFunctor g = gen.functor_into(gen.category(q, 1 + gen.pick(2), "c"), mid->size(), "r");
    VFunctor g2 = functor_of(mid, g.dst, g.map);
    if (!validate_functor(f2).ok() || !validate_functor(g2).ok()) continue;
    ccs.push_back({"cc" + std::to_string(i), f2, g2});
  }
  // structured exact squares: Yoneda squares of the generated inclusions
  std::vector<LaxSquare> squares;
  for (const auto& j : ffs) {
    squares.push_back({identity_functor(j.src), j, j, identity_functor(j.dst)});
    squares.push_back({j, identity_functor(j.src), identity_functor(j.dst), j});
  }
  BatteryReport rep = bcc_battery(Expr::make_lower(Expr::make_id()), ffs, ccs, squares);
  if (const BatteryLine* fl = rep.first_failure()) INFO(fl->check, " ", fl->instance, " ", fl->detail);
  CHECK(rep.passed());
}

TEST_CASE("the battery flags the diagonal-triples functor through an exact-square image") {
  DiagSquare d = diag_square();
  BatteryReport rep = bcc_battery(Expr::make_triple_diag(), {}, {}, {d.sq});
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->check == "exact-square-image");
  CHECK(rep.first_failure()->detail.find("(a,a,b)") != std::string::npos);
}

TEST_CASE("images of exact squares under any expression stay nearly exact") {
  SampleGen gen(131);
  auto q = mkq("two");
  std::vector<ExprPtr> exprs = {Expr::make_lower(Expr::make_id()), Expr::make_power(Expr::make_id()),
                                Expr::make_connected_components(), Expr::make_triple_diag()};
  int exact_count = 0;
  for (int rep = 0; rep < 20 && exact_count < 6; ++rep) {
    LaxSquare sq = gen.lax_square(q, 2);
    if (!is_exact(sq).exact) continue;
    ++exact_count;
    for (const auto& t : exprs) {
      LaxSquare img = apply_to_square(t, sq);
      CHECK(validate_square(img).ok());
      CHECK(near_exactness_holds(img));
    }
  }
  CHECK(exact_count > 0);
}

TEST_CASE("lifting is monotone in the module for battery-passing functors") {
  SampleGen gen(137);
  auto q = mkq("godel_chain", 2);
  for (int rep = 0; rep < 6; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(2), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(2), "b");
    Module r = gen.module(a, b);
    Module r2 = gen.module(a, b);
    // join to force r <= r2
    for (size_t i = 0; i < r2.matrix.size(); ++i)
      for (size_t j = 0; j < r2.matrix[i].size(); ++j)
        r2.matrix[i][j] = q->join2(r2.matrix[i][j], r.matrix[i][j]);
    REQUIRE(module_le(r, r2));
    for (auto which :
         {ClosedFormFunctor::lower, ClosedFormFunctor::upper, ClosedFormFunctor::power}) {
      CHECK(module_le(lift_closed_form(which, r), lift_closed_form(which, r2)));
    }
  }
}

TEST_CASE("derived distributive law: identity functor gives the identity component") {
  SampleGen gen(139);
  auto q = mkq("two");
  CatPtr a = gen.category(q, 2, "a");
  DistributiveLaw dl = derive_distributive_law(Expr::make_id(), a);
  for (size_t i = 0; i < dl.component.map.size(); ++i)
    CHECK(dl.component.map[i] == static_cast<int>(i));
}

TEST_CASE("derived distributive law for the lower functor is yoneda after union") {
  auto q = mkq("two");
  CatPtr a = unit_cat(q);
  ExprPtr l = Expr::make_lower(Expr::make_id());
  DistributiveLaw dl = derive_distributive_law(l, a);
  // both sides computed from the displayed formulas: mult then yoneda
  TableCat la = presheaf_category(*a);
  CatPtr lap = std::make_shared<VCat>(la.cat);
  TableCat lla = presheaf_category(la.cat);
  VFunctor yon_la = yoneda(lap);
  for (size_t wi = 0; wi < lla.tables.size(); ++wi) {
    std::vector<QValue> mult(a->size(), q->bot());
    for (size_t x = 0; x < a->size(); ++x) {
      QValue acc = q->bot();
      for (size_t w = 0; w < la.tables.size(); ++w)
        acc = q->join2(acc, q->tensor(lla.tables[wi][w], la.tables[w][x]));
      mult[x] = acc;
    }
    int target = la.index_of_table(mult);
    REQUIRE(target >= 0);
    CHECK(dl.component.map[wi] == yon_la.map[target]);
  }
}

TEST_CASE("distributive-law axioms hold for Id, L, U over two at small sizes") {
  auto q = mkq("two");
  std::vector<CatPtr> cats = {unit_cat(q), chain_cat(q, 2), discrete_cat(q, {"a", "b"})};
  for (auto t : {Expr::make_id(), Expr::make_lower(Expr::make_id()), Expr::make_upper(Expr::make_id())}) {
    for (const auto& a : cats) {
      DistributiveAxiomReport rep = check_distributive_axioms(t, a);
      INFO(render_expr(*t), " at ", a->objects.size(), " objects");
      CHECK(rep.unit.ok());
      CHECK_FALSE(rep.mult_skipped);
      CHECK(rep.mult.ok());
    }
  }
}

TEST_CASE("the power functor's distributive law satisfies both axioms over two") {
  auto q = mkq("two");
  ExprPtr p = Expr::make_power(Expr::make_id());
  for (CatPtr a : {unit_cat(q), chain_cat(q, 2), discrete_cat(q, {"a", "b"})}) {
    DistributiveAxiomReport rep = check_distributive_axioms(p, a);
    CHECK(rep.unit.ok());
    CHECK_FALSE(rep.mult_skipped);
    CHECK(rep.mult.ok());
  }
}

TEST_CASE("connected components has no distributive law: the unit triangle fails") {
  auto q = mkq("two");
  CatPtr a = discrete_cat(q, {"a", "b"});
  DistributiveAxiomReport rep = check_distributive_axioms(Expr::make_connected_components(), a);
  CHECK_FALSE(rep.unit.ok());
}

TEST_CASE("the multiplication layer is skipped with a reason when it would blow up") {
  auto q = mkq("godel_chain", 2);
  CatPtr a = discrete_cat(q, {"a", "b"});
  DistributiveAxiomReport rep = check_distributive_axioms(Expr::make_lower(Expr::make_id()), a);
  CHECK(rep.unit.ok());
  CHECK(rep.mult_skipped);
  CHECK_FALSE(rep.skip_reason.empty());
}

TEST_CASE("lifting a module over an infinite quantale through a presheaf node fails loudly") {
  auto q = mkq("unit_godel");
  auto a = cat(q, {"x"}, {{"1"}});
  Module r = identity_module(a);
  CHECK_THROWS_WITH_AS(lift_via_collage(Expr::make_lower(Expr::make_id()), r),
                       doctest::Contains("finite quantale"), QcatError);
}

TEST_CASE("power battery over non-idempotent tensors runs and records its outcome") {
  // the sufficiency proof covers tensor = meet only; here we only record what
  // the battery finds at desk scale, without asserting a direction
  auto q = mkq("lukasiewicz_chain", 2);
  SampleGen gen(4242);
  std::vector<CatPtr> cats;
  std::vector<ModulePairSample> pairs;
  std::vector<VFunctor> functors;
  for (int i = 0; i < 4; ++i) {
    CatPtr a = gen.category(q, 1 + gen.pick(2), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(2), "b");
    CatPtr c = gen.category(q, 1 + gen.pick(2), "c");
    cats.push_back(a);
    pairs.push_back({"p" + std::to_string(i), gen.module(b, c), gen.module(a, b)});
    functors.push_back(gen.functor_into(b, 1 + gen.pick(2), "f"));
  }
  BatteryReport rep = functoriality_battery(Expr::make_power(Expr::make_id()), cats, pairs, functors);
  CHECK(rep.lines.size() == cats.size() + pairs.size() + functors.size());
  MESSAGE("power over lukasiewicz_chain(2): ",
          rep.passed() ? "no counterexample found at the tested sizes" : "counterexample found");
}
