#include "qcat/vcat.hpp"

#include <algorithm>

namespace qcat {

int VCat::index_of(const std::string& label) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == label) return static_cast<int>(i);
  return -1;
}

CatPtr make_cat(QuantalePtr q, std::vector<std::string> objects, std::vector<std::vector<QValue>> hom) {
  if (hom.size() != objects.size())
    throw QcatError("hom matrix has " + std::to_string(hom.size()) + " rows for " +
                    std::to_string(objects.size()) + " objects");
  for (const auto& row : hom)
    if (row.size() != objects.size()) throw QcatError("hom matrix is not square");
  for (const auto& row : hom)
    for (const auto& v : row) q->require(v);
  auto c = std::make_shared<VCat>();
  c->q = std::move(q);
  c->objects = std::move(objects);
  c->hom = std::move(hom);
  return c;
}

bool same_cat(const VCat& a, const VCat& b) {
  return a.q->same_as(*b.q) && a.objects == b.objects && a.hom == b.hom;
}

std::unordered_map<std::string, int> label_index(const VCat& a) {
  std::unordered_map<std::string, int> m;
  m.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) m.emplace(a.objects[i], static_cast<int>(i));
  return m;
}

VFunctor identity_functor(CatPtr a) {
  VFunctor f;
  f.src = a;
  f.dst = std::move(a);
  f.map.resize(f.src->size());
  for (size_t i = 0; i < f.map.size(); ++i) f.map[i] = static_cast<int>(i);
  return f;
}

VFunctor compose(const VFunctor& g, const VFunctor& f) {
  if (!same_cat(*f.dst, *g.src)) throw QcatError("functor composition: middle categories differ");
  VFunctor h;
  h.src = f.src;
  h.dst = g.dst;
  h.map.resize(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

bool same_functor(const VFunctor& f, const VFunctor& g) {
  return same_cat(*f.src, *g.src) && same_cat(*f.dst, *g.dst) && f.map == g.map;
}

Report validate_category(const VCat& a) {
  Report rep;
  const Quantale& q = *a.q;
  size_t n = a.size();
  if (a.hom.size() != n) {
    rep.add("hom matrix shape mismatch");
    return rep;
  }
  for (size_t i = 0; i < n; ++i)
    if (a.hom[i].size() != n) {
      rep.add("hom matrix shape mismatch");
      return rep;
    }
  for (size_t i = 0; i < n; ++i)
    if (!q.le(q.unit(), a.at(i, i)))
      rep.add("identity axiom fails at " + a.objects[i] + ": I <= A(" + a.objects[i] + "," +
              a.objects[i] + ") is false");
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        // A(y,z) ⊗ A(x,y) ≤ A(x,z)
        if (!q.le(q.tensor(a.at(y, z), a.at(x, y)), a.at(x, z)))
          rep.add("composition axiom fails at (" + a.objects[x] + "," + a.objects[y] + "," +
                  a.objects[z] + ")");
      }
  return rep;
}

Report validate_functor(const VFunctor& f) {
  Report rep;
  if (!f.src || !f.dst) {
    rep.add("functor with missing source or destination");
    return rep;
  }
  if (!f.src->q->same_as(*f.dst->q)) {
    rep.add("functor between categories over different quantales");
    return rep;
  }
  if (f.map.size() != f.src->size()) {
    rep.add("object map size differs from source object count");
    return rep;
  }
  for (int i : f.map)
    if (i < 0 || static_cast<size_t>(i) >= f.dst->size()) {
      rep.add("object map value out of range");
      return rep;
    }
  const Quantale& q = *f.src->q;
  for (size_t a = 0; a < f.src->size(); ++a)
    for (size_t b = 0; b < f.src->size(); ++b)
      if (!q.le(f.src->at(a, b), f.dst->at(f.map[a], f.map[b])))
        rep.add("hom inequality fails at (" + f.src->objects[a] + "," + f.src->objects[b] + "): A(a,a') <= B(fa,fa') is false");
  return rep;
}

VCat opposite(const VCat& a) {
  VCat r;
  r.q = a.q;
  r.objects = a.objects;
  size_t n = a.size();
  r.hom.assign(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.hom[i][j] = a.at(j, i);
  return r;
}

CatPtr opposite_ptr(const CatPtr& a) {
  return std::make_shared<VCat>(opposite(*a));
}

VCat tensor_product(const VCat& a, const VCat& b) {
  if (!a.q->same_as(*b.q)) throw QcatError("tensor product over different quantales");
  VCat r;
  r.q = a.q;
  size_t na = a.size(), nb = b.size();
  r.objects.reserve(na * nb);
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j) r.objects.push_back("(" + a.objects[i] + "," + b.objects[j] + ")");
  r.hom.assign(na * nb, std::vector<QValue>(na * nb));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      for (size_t k = 0; k < na; ++k)
        for (size_t l = 0; l < nb; ++l)
          r.hom[i * nb + j][k * nb + l] = a.q->tensor(a.at(i, k), b.at(j, l));
  return r;
}

std::vector<std::string> block_labels(const std::vector<std::string>& left,
                                      const std::vector<std::string>& right) {
  bool collide = false;
  for (const auto& l : left)
    for (const auto& r : right)
      if (l == r) collide = true;
  std::vector<std::string> out;
  out.reserve(left.size() + right.size());
  for (const auto& l : left) out.push_back(collide ? "L." + l : l);
  for (const auto& r : right) out.push_back(collide ? "R." + r : r);
  return out;
}

VCat coproduct(const VCat& a, const VCat& b) {
  if (!a.q->same_as(*b.q)) throw QcatError("coproduct over different quantales");
  VCat r;
  r.q = a.q;
  r.objects = block_labels(a.objects, b.objects);
  size_t na = a.size(), n = na + b.size();
  r.hom.assign(n, std::vector<QValue>(n, a.q->bot()));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) r.hom[i][j] = a.at(i, j);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r.hom[na + i][na + j] = b.at(i, j);
  return r;
}

VCat discrete(const VCat& a) {
  VCat r;
  r.q = a.q;
  r.objects = a.objects;
  size_t n = a.size();
  r.hom.assign(n, std::vector<QValue>(n, a.q->bot()));
  for (size_t i = 0; i < n; ++i) r.hom[i][i] = a.q->unit();
  return r;
}

Preorder underlying_preorder(const VCat& a) {
  Preorder p;
  p.objects = a.objects;
  size_t n = a.size();
  p.le.assign(n, std::vector<bool>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p.le[i][j] = a.q->le(a.q->unit(), a.at(i, j));
  return p;
}

VCat free_on_preorder(QuantalePtr q, const Preorder& p) {
  VCat r;
  r.q = q;
  r.objects = p.objects;
  size_t n = p.objects.size();
  r.hom.assign(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.hom[i][j] = p.le[i][j] ? q->unit() : q->bot();
  return r;
}

bool functor_le(const VFunctor& f, const VFunctor& g) {
  if (!same_cat(*f.src, *g.src) || !same_cat(*f.dst, *g.dst))
    throw QcatError("functor_le: source/destination mismatch");
  const Quantale& q = *f.src->q;
  for (size_t a = 0; a < f.src->size(); ++a)
    if (!q.le(q.unit(), f.dst->at(f.map[a], g.map[a]))) return false;
  return true;
}

bool is_fully_faithful(const VFunctor& f) {
  for (size_t a = 0; a < f.src->size(); ++a)
    for (size_t b = 0; b < f.src->size(); ++b)
      if (f.src->at(a, b) != f.dst->at(f.map[a], f.map[b])) return false;
  return true;
}

bool is_surjective_on_objects(const VFunctor& f) {
  std::vector<bool> hit(f.dst->size(), false);
  for (int i : f.map) hit[i] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::vector<QValue>> enumerate_functor_tables(const VCat& a, bool contravariant,
                                                          const SizeLimits& lim) {
  if (!a.q->finite()) throw QcatError("presheaf constructions require a finite quantale");
  std::vector<QValue> carrier = a.q->carrier();
  size_t n = a.size();
  double candidates = 1;
  for (size_t i = 0; i < n; ++i) candidates *= static_cast<double>(carrier.size());
  if (candidates > static_cast<double>(lim.max_candidates))
    throw QcatError("table enumeration over " + std::to_string(n) + " objects exceeds the size guard (" +
                    std::to_string(lim.max_candidates) + " candidates); raise --max-objects to override");

  const Quantale& q = *a.q;
  auto valid = [&](const std::vector<QValue>& t) {
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        // contravariant: A(y,x) ⊗ t[x] ≤ t[y];  covariant: t[x] ⊗ A(x,y) ≤ t[y]
        const QValue& h = contravariant ? a.at(y, x) : a.at(x, y);
        if (!q.le(q.tensor(h, t[x]), t[y])) return false;
      }
    return true;
  };

  std::vector<std::vector<QValue>> out;
  std::vector<size_t> idx(n, 0);
  std::vector<QValue> t(n, carrier.empty() ? QValue(0) : carrier[0]);
  while (true) {
    if (valid(t)) {
      out.push_back(t);
      if (out.size() > lim.max_objects)
        throw QcatError("table enumeration produced more than " + std::to_string(lim.max_objects) +
                        " objects; raise --max-objects to override");
    }
    size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < carrier.size()) {
        t[pos] = carrier[idx[pos]];
        break;
      }
      idx[pos] = 0;
      t[pos] = carrier[0];
      if (pos == 0) return out;
    }
    if (n == 0) {
      return out;  // single empty table
    }
  }
}

std::string table_label(const Quantale& q, const std::vector<QValue>& table) {
  std::string s = "(";
  for (size_t i = 0; i < table.size(); ++i) {
    if (i) s += ",";
    s += q.render(table[i]);
  }
  s += ")";
  return s;
}

int TableCat::index_of_table(const std::vector<QValue>& t) const {
  for (size_t i = 0; i < tables.size(); ++i)
    if (tables[i] == t) return static_cast<int>(i);
  return -1;
}

TableCat presheaf_category(const VCat& a, const SizeLimits& lim) {
  TableCat r;
  r.tables = enumerate_functor_tables(a, /*contravariant=*/true, lim);
  const Quantale& q = *a.q;
  size_t m = r.tables.size();
  r.cat.q = a.q;
  r.cat.objects.reserve(m);
  for (const auto& t : r.tables) r.cat.objects.push_back(table_label(q, t));
  r.cat.hom.assign(m, std::vector<QValue>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      QValue acc = q.top();
      for (size_t x = 0; x < a.size(); ++x) acc = q.meet2(acc, q.hom(r.tables[i][x], r.tables[j][x]));
      r.cat.hom[i][j] = acc;
    }
  return r;
}

TableCat copresheaf_category(const VCat& a, const SizeLimits& lim) {
  TableCat r;
  r.tables = enumerate_functor_tables(a, /*contravariant=*/false, lim);
  const Quantale& q = *a.q;
  size_t m = r.tables.size();
  r.cat.q = a.q;
  r.cat.objects.reserve(m);
  for (const auto& t : r.tables) r.cat.objects.push_back(table_label(q, t));
  r.cat.hom.assign(m, std::vector<QValue>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      // [A,V]^op : hom(i,j) = [A,V](t_j, t_i)
      QValue acc = q.top();
      for (size_t x = 0; x < a.size(); ++x) acc = q.meet2(acc, q.hom(r.tables[j][x], r.tables[i][x]));
      r.cat.hom[i][j] = acc;
    }
  return r;
}

VCat tensor_two(const VCat& a) {
  VCat r;
  r.q = a.q;
  size_t n = a.size();
  r.objects.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) r.objects.push_back("0." + a.objects[i]);
  for (size_t i = 0; i < n; ++i) r.objects.push_back("1." + a.objects[i]);
  r.hom.assign(2 * n, std::vector<QValue>(2 * n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      r.hom[i][j] = a.at(i, j);
      r.hom[n + i][n + j] = a.at(i, j);
      r.hom[i][n + j] = a.q->unit();
      r.hom[n + i][j] = a.q->bot();
    }
  return r;
}

}  // namespace qcat
