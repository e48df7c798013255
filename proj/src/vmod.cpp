#include "qcat/vmod.hpp"

namespace qcat {

Module make_module(CatPtr src, CatPtr dst, std::vector<std::vector<QValue>> matrix) {
  if (!src->q->same_as(*dst->q)) throw QcatError("module between categories over different quantales");
  if (matrix.size() != dst->size())
    throw QcatError("module matrix has " + std::to_string(matrix.size()) + " rows for " +
                    std::to_string(dst->size()) + " destination objects");
  for (const auto& row : matrix) {
    if (row.size() != src->size()) throw QcatError("module matrix column count mismatch");
    for (const auto& v : row) src->q->require(v);
  }
  Module r;
  r.src = std::move(src);
  r.dst = std::move(dst);
  r.matrix = std::move(matrix);
  return r;
}

Report validate_module(const Module& r) {
  Report rep;
  const Quantale& q = *r.src->q;
  const VCat& a = *r.src;
  const VCat& b = *r.dst;
  for (size_t b1 = 0; b1 < b.size(); ++b1)
    for (size_t b0 = 0; b0 < b.size(); ++b0)
      for (size_t a0 = 0; a0 < a.size(); ++a0)
        if (!q.le(q.tensor(b.at(b1, b0), r.at(b0, a0)), r.at(b1, a0)))
          rep.add("left action fails: B(" + b.objects[b1] + "," + b.objects[b0] + ")*R(" +
                  b.objects[b0] + "," + a.objects[a0] + ") <= R(" + b.objects[b1] + "," +
                  a.objects[a0] + ") is false");
  for (size_t b0 = 0; b0 < b.size(); ++b0)
    for (size_t a0 = 0; a0 < a.size(); ++a0)
      for (size_t a1 = 0; a1 < a.size(); ++a1)
        if (!q.le(q.tensor(r.at(b0, a0), a.at(a0, a1)), r.at(b0, a1)))
          rep.add("right action fails: R(" + b.objects[b0] + "," + a.objects[a0] + ")*A(" +
                  a.objects[a0] + "," + a.objects[a1] + ") <= R(" + b.objects[b0] + "," +
                  a.objects[a1] + ") is false");
  return rep;
}

bool same_module(const Module& r, const Module& s) {
  return same_cat(*r.src, *s.src) && same_cat(*r.dst, *s.dst) && r.matrix == s.matrix;
}

bool module_le(const Module& r, const Module& s) {
  if (!same_cat(*r.src, *s.src) || !same_cat(*r.dst, *s.dst))
    throw QcatError("module_le: shape mismatch");
  const Quantale& q = *r.src->q;
  for (size_t i = 0; i < r.matrix.size(); ++i)
    for (size_t j = 0; j < r.matrix[i].size(); ++j)
      if (!q.le(r.matrix[i][j], s.matrix[i][j])) return false;
  return true;
}

Module bimodule_closure(CatPtr a, CatPtr b, const std::vector<std::vector<QValue>>& raw) {
  if (raw.size() != b->size()) throw QcatError("bimodule_closure: matrix shape mismatch");
  const Quantale& q = *a->q;
  std::vector<std::vector<QValue>> m(b->size(), std::vector<QValue>(a->size(), q.bot()));
  for (size_t b1 = 0; b1 < b->size(); ++b1)
    for (size_t a1 = 0; a1 < a->size(); ++a1) {
      QValue acc = q.bot();
      for (size_t b0 = 0; b0 < b->size(); ++b0) {
        if (raw[b0].size() != a->size()) throw QcatError("bimodule_closure: matrix shape mismatch");
        for (size_t a0 = 0; a0 < a->size(); ++a0)
          acc = q.join2(acc, q.tensor(q.tensor(b->at(b1, b0), raw[b0][a0]), a->at(a0, a1)));
      }
      m[b1][a1] = acc;
    }
  return make_module(std::move(a), std::move(b), std::move(m));
}

Module identity_module(CatPtr a) {
  Module r;
  r.src = a;
  r.dst = a;
  r.matrix = a->hom;
  return r;
}

Module compose(const Module& s, const Module& r) {
  if (!same_cat(*r.dst, *s.src)) throw QcatError("module composition: middle categories differ");
  const Quantale& q = *r.src->q;
  Module out;
  out.src = r.src;
  out.dst = s.dst;
  out.matrix.assign(s.dst->size(), std::vector<QValue>(r.src->size(), q.bot()));
  for (size_t c = 0; c < s.dst->size(); ++c)
    for (size_t a = 0; a < r.src->size(); ++a) {
      QValue acc = q.bot();
      for (size_t b = 0; b < s.src->size(); ++b) acc = q.join2(acc, q.tensor(s.at(c, b), r.at(b, a)));
      out.matrix[c][a] = acc;
    }
  return out;
}

Module graph_lower(const VFunctor& f) {
  Module r;
  r.src = f.src;
  r.dst = f.dst;
  r.matrix.assign(f.dst->size(), std::vector<QValue>(f.src->size()));
  for (size_t b = 0; b < f.dst->size(); ++b)
    for (size_t a = 0; a < f.src->size(); ++a) r.matrix[b][a] = f.dst->at(b, f.map[a]);
  return r;
}

Module graph_upper(const VFunctor& f) {
  Module r;
  r.src = f.dst;
  r.dst = f.src;
  r.matrix.assign(f.src->size(), std::vector<QValue>(f.dst->size()));
  for (size_t a = 0; a < f.src->size(); ++a)
    for (size_t b = 0; b < f.dst->size(); ++b) r.matrix[a][b] = f.dst->at(f.map[a], b);
  return r;
}

Report check_graph_adjunction(const VFunctor& f) {
  Report rep;
  Module unit = compose(graph_upper(f), graph_lower(f));
  Module counit = compose(graph_lower(f), graph_upper(f));
  if (!module_le(identity_module(f.src), unit)) rep.add("unit inequality id_A <= f^<>·f_<> fails");
  if (!module_le(counit, identity_module(f.dst))) rep.add("counit inequality f_<>·f^<> <= id_B fails");
  return rep;
}

Collage collage(const Module& r) {
  const VCat& a = *r.src;
  const VCat& b = *r.dst;
  const Quantale& q = *a.q;
  VCat coll;
  coll.q = a.q;
  coll.objects = block_labels(b.objects, a.objects);
  size_t nb = b.size(), n = nb + a.size();
  coll.hom.assign(n, std::vector<QValue>(n, q.bot()));
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j) coll.hom[i][j] = b.at(i, j);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) coll.hom[nb + i][nb + j] = a.at(i, j);
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < a.size(); ++j) coll.hom[i][nb + j] = r.at(i, j);
  // hom(a, b) stays ⊥
  Collage c;
  c.coll = std::make_shared<VCat>(std::move(coll));
  c.i0.src = r.dst;
  c.i0.dst = c.coll;
  c.i0.map.resize(nb);
  for (size_t i = 0; i < nb; ++i) c.i0.map[i] = static_cast<int>(i);
  c.i1.src = r.src;
  c.i1.dst = c.coll;
  c.i1.map.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) c.i1.map[i] = static_cast<int>(nb + i);
  return c;
}

bool same_collage(const Collage& c, const Collage& d) {
  return same_cat(*c.coll, *d.coll) && same_functor(c.i0, d.i0) && same_functor(c.i1, d.i1);
}

Module module_of_cospan(const VFunctor& i0, const VFunctor& i1) {
  if (!same_cat(*i0.dst, *i1.dst)) throw QcatError("module_of_cospan: legs land in different categories");
  return compose(graph_upper(i0), graph_lower(i1));
}

VFunctor module_dagger(const Module& r, const SizeLimits& lim) {
  TableCat la = presheaf_category(*r.src, lim);
  TableCat lb = presheaf_category(*r.dst, lim);
  const Quantale& q = *r.src->q;
  VFunctor d;
  d.src = std::make_shared<VCat>(la.cat);
  d.dst = std::make_shared<VCat>(lb.cat);
  d.map.resize(la.tables.size());
  for (size_t i = 0; i < la.tables.size(); ++i) {
    std::vector<QValue> t(r.dst->size(), q.bot());
    for (size_t b = 0; b < r.dst->size(); ++b) {
      QValue acc = q.bot();
      for (size_t a = 0; a < r.src->size(); ++a)
        acc = q.join2(acc, q.tensor(la.tables[i][a], r.at(b, a)));
      t[b] = acc;
    }
    int j = lb.index_of_table(t);
    if (j < 0) throw std::logic_error("module_dagger: image is not a presheaf");
    d.map[i] = j;
  }
  return d;
}

VFunctor yoneda(CatPtr a, const SizeLimits& lim) {
  TableCat la = presheaf_category(*a, lim);
  VFunctor y;
  y.src = a;
  y.dst = std::make_shared<VCat>(la.cat);
  y.map.resize(a->size());
  for (size_t i = 0; i < a->size(); ++i) {
    std::vector<QValue> t(a->size());
    for (size_t x = 0; x < a->size(); ++x) t[x] = a->at(x, i);
    int j = la.index_of_table(t);
    if (j < 0) throw std::logic_error("yoneda: representable is not a presheaf");
    y.map[i] = j;
  }
  return y;
}

Module evaluation_module(CatPtr a, const SizeLimits& lim) {
  TableCat la = presheaf_category(*a, lim);
  Module ev;
  ev.src = std::make_shared<VCat>(la.cat);
  ev.dst = a;
  ev.matrix.assign(a->size(), std::vector<QValue>(la.tables.size()));
  for (size_t x = 0; x < a->size(); ++x)
    for (size_t f = 0; f < la.tables.size(); ++f) ev.matrix[x][f] = la.tables[f][x];
  return ev;
}

}  // namespace qcat
