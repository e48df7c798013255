#include "qcat/samples.hpp"

namespace qcat {

size_t SampleGen::pick(size_t n) {
  if (n == 0) throw std::logic_error("pick(0)");
  return static_cast<size_t>(rng_() % n);
}

std::vector<QValue> SampleGen::value_pool(const Quantale& q) const {
  if (q.finite()) return q.carrier();
  switch (q.kind()) {
    case QuantaleKind::unit_lukasiewicz:
    case QuantaleKind::unit_godel:
    case QuantaleKind::unit_product:
    case QuantaleKind::unit_ultrametric:
      return {QValue(0),
              QValue::rational(1, 8),
              QValue::rational(1, 4),
              QValue::rational(3, 8),
              QValue::rational(1, 2),
              QValue::rational(5, 8),
              QValue::rational(3, 4),
              QValue::rational(7, 8),
              QValue(1)};
    case QuantaleKind::lawvere_plus:
      return {QValue(0),           QValue::rational(1, 2), QValue(1), QValue(2),
              QValue::rational(5, 2), QValue(3),           QValue::infinity()};
    default:
      throw std::logic_error("value pool: unexpected kind");
  }
}

QValue SampleGen::value(const Quantale& q) {
  std::vector<QValue> pool = value_pool(q);
  return pool[pick(pool.size())];
}

std::vector<std::vector<QValue>> categorify(const Quantale& q,
                                            std::vector<std::vector<QValue>> hom) {
  size_t n = hom.size();
  for (size_t i = 0; i < n; ++i) hom[i][i] = q.join2(hom[i][i], q.unit());
  // paths only shorten under an integral tensor, so n+2 sweeps suffice
  for (size_t sweep = 0; sweep < n + 2; ++sweep) {
    bool changed = false;
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        for (size_t z = 0; z < n; ++z) {
          QValue v = q.join2(hom[x][z], q.tensor(hom[y][z], hom[x][y]));
          if (v != hom[x][z]) {
            hom[x][z] = v;
            changed = true;
          }
        }
    if (!changed) return hom;
  }
  throw std::logic_error("categorify did not converge");
}

CatPtr SampleGen::category(QuantalePtr q, size_t n, const std::string& prefix) {
  std::vector<QValue> pool = value_pool(*q);
  std::vector<std::string> objects;
  objects.reserve(n);
  for (size_t i = 0; i < n; ++i) objects.push_back(prefix + std::to_string(i));
  std::vector<std::vector<QValue>> hom(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) hom[i][j] = pool[pick(pool.size())];
  auto closed = categorify(*q, std::move(hom));
  return make_cat(std::move(q), std::move(objects), std::move(closed));
}

Module SampleGen::module(CatPtr a, CatPtr b) {
  const Quantale& q = *a->q;
  std::vector<QValue> pool = value_pool(q);
  std::vector<std::vector<QValue>> raw(b->size(), std::vector<QValue>(a->size()));
  for (auto& row : raw)
    for (auto& v : row) v = pool[pick(pool.size())];
  return bimodule_closure(std::move(a), std::move(b), raw);
}

namespace {

// a random value below the bound, so functor inequalities hold by construction
QValue lowered(SampleGen& gen, const Quantale& q, const std::vector<QValue>& pool,
               const QValue& bound) {
  std::vector<QValue> below;
  below.push_back(bound);
  below.push_back(q.bot());
  for (const auto& v : pool)
    if (q.le(v, bound)) below.push_back(v);
  return below[gen.pick(below.size())];
}

}  // namespace

VFunctor SampleGen::functor_into(CatPtr c, size_t n, const std::string& prefix) {
  const Quantale& q = *c->q;
  if (c->size() == 0) throw QcatError("cannot generate a functor into an empty category");
  std::vector<QValue> pool = value_pool(q);
  std::vector<int> map(n);
  for (auto& m : map) m = static_cast<int>(pick(c->size()));
  std::vector<std::string> objects;
  objects.reserve(n);
  for (size_t i = 0; i < n; ++i) objects.push_back(prefix + std::to_string(i));
  std::vector<std::vector<QValue>> hom(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) hom[i][j] = lowered(*this, q, pool, c->at(map[i], map[j]));
  VFunctor f;
  f.src = make_cat(c->q, std::move(objects), categorify(q, std::move(hom)));
  f.dst = std::move(c);
  f.map = std::move(map);
  return f;
}

VFunctor SampleGen::ff_into(CatPtr c, size_t n, const std::string& prefix) {
  if (c->size() == 0) throw QcatError("cannot generate a functor into an empty category");
  std::vector<int> map(n);
  for (auto& m : map) m = static_cast<int>(pick(c->size()));
  std::vector<std::string> objects;
  objects.reserve(n);
  for (size_t i = 0; i < n; ++i) objects.push_back(prefix + std::to_string(i));
  std::vector<std::vector<QValue>> hom(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) hom[i][j] = c->at(map[i], map[j]);
  VFunctor f;
  f.src = make_cat(c->q, std::move(objects), std::move(hom));
  f.dst = std::move(c);
  f.map = std::move(map);
  return f;
}

LaxSquare SampleGen::lax_square(QuantalePtr q, size_t max_objects) {
  const Quantale& qq = *q;
  std::vector<QValue> pool = value_pool(qq);
  CatPtr c = category(q, 1 + pick(max_objects), "c");
  VFunctor f = functor_into(c, 1 + pick(max_objects), "a");
  VFunctor g = functor_into(c, 1 + pick(max_objects), "b");

  std::vector<std::pair<int, int>> lax_pairs;
  for (size_t a = 0; a < f.src->size(); ++a)
    for (size_t b = 0; b < g.src->size(); ++b)
      if (qq.le(qq.unit(), c->at(f.map[a], g.map[b]))) lax_pairs.emplace_back(a, b);

  size_t np = lax_pairs.empty() ? 0 : 1 + pick(max_objects);
  std::vector<int> p0map(np), p1map(np);
  std::vector<std::string> pobjects(np);
  for (size_t w = 0; w < np; ++w) {
    auto [a, b] = lax_pairs[pick(lax_pairs.size())];
    p0map[w] = a;
    p1map[w] = b;
    pobjects[w] = "w" + std::to_string(w);
  }
  std::vector<std::vector<QValue>> phom(np, std::vector<QValue>(np));
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j)
      phom[i][j] = lowered(*this, qq, pool,
                           qq.meet2(f.src->at(p0map[i], p0map[j]), g.src->at(p1map[i], p1map[j])));
  CatPtr p = make_cat(q, std::move(pobjects), categorify(qq, std::move(phom)));

  LaxSquare sq;
  sq.p0 = {p, f.src, std::move(p0map)};
  sq.p1 = {p, g.src, std::move(p1map)};
  sq.f = f;
  sq.g = g;
  return sq;
}

}  // namespace qcat
