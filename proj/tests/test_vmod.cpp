#include <doctest.h>

#include "helpers.hpp"
#include "qcat/samples.hpp"
#include "qcat/vmod.hpp"

using namespace qcat;
using namespace qcat::testing;

namespace {

// Boolean relation composition on plain bool matrices: the classical oracle.
std::vector<std::vector<bool>> bool_compose(const std::vector<std::vector<bool>>& s,
                                            const std::vector<std::vector<bool>>& r) {
  size_t nc = s.size(), na = r.empty() ? 0 : r[0].size(), nb = r.size();
  std::vector<std::vector<bool>> out(nc, std::vector<bool>(na, false));
  for (size_t c = 0; c < nc; ++c)
    for (size_t a = 0; a < na; ++a)
      for (size_t b = 0; b < nb; ++b)
        if (s[c][b] && r[b][a]) out[c][a] = true;
  return out;
}

}  // namespace

TEST_CASE("hom matrix of a category is a valid module; closure fixes raw matrices") {
  SampleGen gen(21);
  for (auto qk : {"two", "godel_chain", "unit_lukasiewicz"}) {
    auto q = mkq(qk, 3);
    CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
    Module id = identity_module(a);
    CHECK(validate_module(id).ok());
    // closure of an already-valid module is the module itself
    Module closed = bimodule_closure(id.src, id.dst, id.matrix);
    CHECK(closed.matrix == id.matrix);

    CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
    Module r = gen.module(a, b);
    CHECK(validate_module(r).ok());
    CHECK(bimodule_closure(a, b, r.matrix).matrix == r.matrix);
  }
}

TEST_CASE("closure of a single pair over preorders is down-up saturation") {
  auto q = mkq("two");
  for (const auto& a : all_preorder_cats(q, 3))
    for (const auto& b : all_preorder_cats(q, 2)) {
      std::vector<std::vector<QValue>> raw(b->size(), std::vector<QValue>(a->size(), q->bot()));
      raw[0][0] = q->unit();
      Module closed = bimodule_closure(a, b, raw);
      // oracle: R(b0,a0)=1 saturates to all (y,x) with y <= b0 in B and a0 <= x in A
      for (size_t y = 0; y < b->size(); ++y)
        for (size_t x = 0; x < a->size(); ++x) {
          bool want = b->at(y, 0) == QValue(1) && a->at(0, x) == QValue(1);
          CHECK((closed.matrix[y][x] == QValue(1)) == want);
        }
    }
}

TEST_CASE("composition over two is Boolean matrix product") {
  SampleGen gen(5);
  auto q = mkq("two");
  for (int rep = 0; rep < 20; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
    CatPtr c = gen.category(q, 1 + gen.pick(3), "c");
    Module r = gen.module(a, b);
    Module s = gen.module(b, c);
    Module sr = compose(s, r);
    CHECK(validate_module(sr).ok());
    auto to_bool = [](const Module& m) {
      std::vector<std::vector<bool>> out(m.matrix.size());
      for (size_t i = 0; i < m.matrix.size(); ++i)
        for (const auto& v : m.matrix[i]) out[i].push_back(v == QValue(1));
      return out;
    };
    CHECK(to_bool(sr) == bool_compose(to_bool(s), to_bool(r)));
  }
}

TEST_CASE("composition over lawvere_plus is min-plus matrix product") {
  auto q = mkq("lawvere_plus");
  auto a = cat(q, {"a0", "a1"}, {{"0", "1"}, {"2", "0"}});
  auto b = cat(q, {"b0", "b1"}, {{"0", "inf"}, {"1/2", "0"}});
  auto c = cat(q, {"c0"}, {{"0"}});
  Module r = bimodule_closure(a, b, {{QValue(1), QValue(3)}, {QValue(0), QValue(2)}});
  Module s = bimodule_closure(b, c, {{QValue(2), QValue::rational(1, 2)}});
  Module sr = compose(s, r);
  for (size_t x = 0; x < 2; ++x) {
    QValue want = QValue::infinity();
    for (size_t y = 0; y < 2; ++y) want = QValue::min(want, s.matrix[0][y] + r.matrix[y][x]);
    CHECK(sr.matrix[0][x] == want);
  }
}

TEST_CASE("composition is associative and unital") {
  SampleGen gen(9);
  for (auto qk : {"two", "godel_chain"}) {
    auto q = mkq(qk, 2);
    for (int rep = 0; rep < 10; ++rep) {
      CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
      CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
      CatPtr c = gen.category(q, 1 + gen.pick(3), "c");
      CatPtr d = gen.category(q, 1 + gen.pick(3), "d");
      Module r = gen.module(a, b), s = gen.module(b, c), t = gen.module(c, d);
      CHECK(compose(t, compose(s, r)).matrix == compose(compose(t, s), r).matrix);
      CHECK(compose(identity_module(b), r).matrix == r.matrix);
      CHECK(compose(r, identity_module(a)).matrix == r.matrix);
    }
  }
}

TEST_CASE("graphs of functors and their adjunction") {
  SampleGen gen(13);
  auto q = mkq("godel_chain", 2);
  CatPtr a = gen.category(q, 3, "a");
  CHECK(graph_lower(identity_functor(a)).matrix == identity_module(a).matrix);

  for (int rep = 0; rep < 8; ++rep) {
    CatPtr c = gen.category(q, 1 + gen.pick(3), "c");
    VFunctor f = gen.functor_into(c, 1 + gen.pick(3), "x");
    CHECK(validate_module(graph_lower(f)).ok());
    CHECK(validate_module(graph_upper(f)).ok());
    CHECK(check_graph_adjunction(f).ok());

    // functoriality of the graph: (g∘f)_◇ = g_◇·f_◇
    CatPtr d = gen.category(q, 1 + gen.pick(3), "d");
    VFunctor g2 = functor_of(c, d, {});
    g2.map.resize(c->size());
    for (size_t i = 0; i < c->size(); ++i) g2.map[i] = static_cast<int>(gen.pick(d->size()));
    if (!validate_functor(g2).ok()) continue;
    CHECK(compose(graph_lower(g2), graph_lower(f)).matrix == graph_lower(compose(g2, f)).matrix);
  }

  // f <= g implies f_◇ <= g_◇
  CatPtr c2 = chain_cat(mkq("two"), 2);
  VFunctor f0 = functor_of(c2, c2, {0, 0});
  VFunctor f1 = functor_of(c2, c2, {1, 1});
  CHECK(module_le(graph_lower(f0), graph_lower(f1)));
}

TEST_CASE("unit of the graph adjunction is an isomorphism exactly for ff functors") {
  auto q = mkq("two");
  CatPtr a = discrete_cat(q, {"a", "b"});
  auto b3 = cat(q, {"a", "b", "c"}, {{"1", "0", "1"}, {"0", "1", "1"}, {"0", "0", "1"}});
  VFunctor embed = functor_of(a, b3, {0, 1});
  REQUIRE(is_fully_faithful(embed));
  CHECK(compose(graph_upper(embed), graph_lower(embed)).matrix == identity_module(a).matrix);

  // a non-ff surjection has a strictly larger unit
  VFunctor collapse = functor_of(a, unit_cat(q), {0, 0});
  REQUIRE_FALSE(is_fully_faithful(collapse));
  Module unit = compose(graph_upper(collapse), graph_lower(collapse));
  CHECK(module_le(identity_module(a), unit));
  CHECK(unit.matrix != identity_module(a).matrix);
}

TEST_CASE("collage blocks, legs and the module round trip") {
  auto q = mkq("godel_chain", 3);
  SampleGen gen(17);
  for (int rep = 0; rep < 10; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(3), "b");
    Module r = gen.module(a, b);
    Collage c = collage(r);
    CHECK(validate_category(*c.coll).ok());
    CHECK(is_fully_faithful(c.i0));
    CHECK(is_fully_faithful(c.i1));
    // [i0,i1] is bijective on objects
    CHECK(c.coll->size() == a->size() + b->size());
    // cross homs one way are the module, the other way bottom
    for (size_t i = 0; i < b->size(); ++i)
      for (size_t j = 0; j < a->size(); ++j) {
        CHECK(c.coll->at(c.i0.map[i], c.i1.map[j]) == r.at(i, j));
        CHECK(c.coll->at(c.i1.map[j], c.i0.map[i]) == q->bot());
      }
    Module back = module_of_cospan(c.i0, c.i1);
    CHECK(back.matrix == r.matrix);
  }

  // collage of the identity: unit weights one way, bottom the other
  CatPtr a = gen.category(q, 2, "z");
  Collage idc = collage(identity_module(a));
  CHECK(idc.coll->objects == std::vector<std::string>{"L.z0", "L.z1", "R.z0", "R.z1"});
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(idc.coll->at(i, 2 + j) == a->at(i, j));

  // collage of a graph has the only nontrivial cross-homs B(b,fa)
  VFunctor f = gen.functor_into(gen.category(q, 2, "w"), 2, "s");
  Collage cf = collage(graph_lower(f));
  for (size_t i = 0; i < f.dst->size(); ++i)
    for (size_t j = 0; j < f.src->size(); ++j)
      CHECK(cf.coll->at(cf.i0.map[i], cf.i1.map[j]) == f.dst->at(i, f.map[j]));
}

TEST_CASE("presheaf correspondence: dagger, yoneda, evaluation") {
  auto q = mkq("two");
  SampleGen gen(23);

  // yoneda is fully faithful, and ev(a, y(a')) = A(a,a')
  for (int rep = 0; rep < 5; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(3), "a");
    VFunctor y = yoneda(a);
    CHECK(validate_functor(y).ok());
    CHECK(is_fully_faithful(y));
    Module ev = evaluation_module(a);
    CHECK(validate_module(ev).ok());
    for (size_t x = 0; x < a->size(); ++x)
      for (size_t z = 0; z < a->size(); ++z) CHECK(ev.matrix[x][y.map[z]] == a->at(x, z));
  }

  // dagger laws: identity and composition, exact
  for (int rep = 0; rep < 6; ++rep) {
    CatPtr a = gen.category(q, 1 + gen.pick(2), "a");
    CatPtr b = gen.category(q, 1 + gen.pick(2), "b");
    CatPtr c = gen.category(q, 1 + gen.pick(2), "c");
    VFunctor idd = module_dagger(identity_module(a));
    for (size_t i = 0; i < idd.map.size(); ++i) CHECK(idd.map[i] == static_cast<int>(i));
    Module r = gen.module(a, b), s = gen.module(b, c);
    VFunctor lhs = module_dagger(compose(s, r));
    VFunctor rhs = compose(module_dagger(s), module_dagger(r));
    CHECK(lhs.map == rhs.map);
  }

  CHECK_THROWS_AS(yoneda(unit_cat(mkq("lawvere_plus"))), QcatError);
}

TEST_CASE("identity module of the words space is its distance matrix") {
  CatPtr ai = ainfty_sample();
  Module id = identity_module(ai);
  CHECK(id.matrix == ai->hom);
  CHECK(id.matrix[ai->index_of("ab")][ai->index_of("aa")] == v("1/2"));
}
