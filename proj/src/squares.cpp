#include "qcat/squares.hpp"

namespace qcat {

Report validate_square(const LaxSquare& sq) {
  Report rep;
  if (!same_cat(*sq.p0.src, *sq.p1.src)) rep.add("p0 and p1 have different sources");
  if (!same_cat(*sq.p0.dst, *sq.f.src)) rep.add("f does not start at the target of p0");
  if (!same_cat(*sq.p1.dst, *sq.g.src)) rep.add("g does not start at the target of p1");
  if (!same_cat(*sq.f.dst, *sq.g.dst)) rep.add("f and g land in different categories");
  for (const VFunctor* h : {&sq.p0, &sq.p1, &sq.f, &sq.g}) {
    Report r = validate_functor(*h);
    rep.merge(r);
  }
  if (!rep.ok()) return rep;
  const Quantale& q = *sq.f.dst->q;
  const VCat& c = *sq.f.dst;
  for (size_t w = 0; w < sq.p0.src->size(); ++w)
    if (!q.le(q.unit(), c.at(sq.f.map[sq.p0.map[w]], sq.g.map[sq.p1.map[w]])))
      rep.add("square is not lax at " + sq.p0.src->objects[w]);
  return rep;
}

namespace {

QValue exactness_rhs(const LaxSquare& sq, size_t a, size_t b) {
  const Quantale& q = *sq.f.dst->q;
  QValue acc = q.bot();
  for (size_t w = 0; w < sq.p0.src->size(); ++w)
    acc = q.join2(acc, q.tensor(sq.p0.dst->at(a, sq.p0.map[w]), sq.p1.dst->at(sq.p1.map[w], b)));
  return acc;
}

}  // namespace

ExactnessResult is_exact(const LaxSquare& sq) {
  Report val = validate_square(sq);
  if (!val.ok()) throw QcatError("is_exact on an invalid lax square: " + val.violations.front());
  const Quantale& q = *sq.f.dst->q;
  const VCat& c = *sq.f.dst;
  ExactnessResult res;
  res.exact = true;
  for (size_t a = 0; a < sq.f.src->size(); ++a)
    for (size_t b = 0; b < sq.g.src->size(); ++b) {
      QValue lhs = c.at(sq.f.map[a], sq.g.map[b]);
      QValue rhs = exactness_rhs(sq, a, b);
      if (lhs != rhs) {
        res.exact = false;
        res.witness = ExactWitness{static_cast<int>(a), static_cast<int>(b), lhs, rhs};
        if (!q.le(rhs, lhs))
          throw std::logic_error("near-exactness violated; lifting machinery is broken");
        return res;
      }
    }
  return res;
}

bool near_exactness_holds(const LaxSquare& sq) {
  const Quantale& q = *sq.f.dst->q;
  const VCat& c = *sq.f.dst;
  for (size_t a = 0; a < sq.f.src->size(); ++a)
    for (size_t b = 0; b < sq.g.src->size(); ++b)
      if (!q.le(exactness_rhs(sq, a, b), c.at(sq.f.map[a], sq.g.map[b]))) return false;
  return true;
}

Cospan cocomma(const VFunctor& f, const VFunctor& g) {
  if (!same_cat(*f.src, *g.src)) throw QcatError("cocomma needs a common source");
  if (!f.dst->q->same_as(*g.dst->q)) throw QcatError("cocomma over different quantales");
  const VCat& a = *f.dst;
  const VCat& b = *g.dst;
  const VCat& c = *f.src;
  const Quantale& q = *a.q;

  VCat k;
  k.q = a.q;
  k.objects = block_labels(a.objects, b.objects);
  size_t na = a.size(), n = na + b.size();
  k.hom.assign(n, std::vector<QValue>(n, q.bot()));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) k.hom[i][j] = a.at(i, j);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) k.hom[na + i][na + j] = b.at(i, j);
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      QValue acc = q.bot();
      for (size_t w = 0; w < c.size(); ++w)
        acc = q.join2(acc, q.tensor(a.at(i, f.map[w]), b.at(g.map[w], j)));
      k.hom[i][na + j] = acc;
    }

  Cospan res;
  res.apex = std::make_shared<VCat>(std::move(k));
  res.i0.src = f.dst;
  res.i0.dst = res.apex;
  res.i0.map.resize(na);
  for (size_t i = 0; i < na; ++i) res.i0.map[i] = static_cast<int>(i);
  res.i1.src = g.dst;
  res.i1.dst = res.apex;
  res.i1.map.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) res.i1.map[i] = static_cast<int>(na + i);

  ExactnessResult self = is_exact(cocomma_square(f, g, res));
  if (!self.exact) throw std::logic_error("cocomma square failed its exactness self-test");
  return res;
}

LaxSquare cocomma_square(const VFunctor& f, const VFunctor& g, const Cospan& cc) {
  LaxSquare sq;
  sq.p0 = f;
  sq.p1 = g;
  sq.f = cc.i0;
  sq.g = cc.i1;
  return sq;
}

Cospan pushout_along_ff(const VFunctor& j, const VFunctor& f) {
  if (!same_cat(*j.src, *f.src)) throw QcatError("pushout needs a common source");
  if (!is_fully_faithful(j)) throw QcatError("pushout_along_ff: j is not fully faithful");
  {
    std::vector<bool> seen(j.dst->size(), false);
    for (int i : j.map) {
      if (seen[i])
        throw QcatError("pushout_along_ff: j is not injective on objects (unsupported)");
      seen[i] = true;
    }
  }
  const VCat& a = *j.src;
  const VCat& b = *j.dst;
  const VCat& c = *f.dst;
  const Quantale& q = *a.q;

  // objects of B not hit by j, in B's order
  std::vector<int> rest;
  std::vector<int> preimage(b.size(), -1);
  for (size_t x = 0; x < a.size(); ++x) preimage[j.map[x]] = static_cast<int>(x);
  for (size_t y = 0; y < b.size(); ++y)
    if (preimage[y] < 0) rest.push_back(static_cast<int>(y));

  std::vector<std::string> rest_labels;
  rest_labels.reserve(rest.size());
  for (int y : rest) rest_labels.push_back(b.objects[y]);

  size_t nc = c.size(), n = nc + rest.size();
  VCat p;
  p.q = a.q;
  p.objects = block_labels(c.objects, rest_labels);
  p.hom.assign(n, std::vector<QValue>(n, q.bot()));
  for (size_t i = 0; i < nc; ++i)
    for (size_t k = 0; k < nc; ++k) p.hom[i][k] = c.at(i, k);
  for (size_t i = 0; i < nc; ++i)
    for (size_t k = 0; k < rest.size(); ++k) {
      QValue acc = q.bot();
      for (size_t x = 0; x < a.size(); ++x)
        acc = q.join2(acc, q.tensor(c.at(i, f.map[x]), b.at(j.map[x], rest[k])));
      p.hom[i][nc + k] = acc;
    }
  for (size_t k = 0; k < rest.size(); ++k)
    for (size_t i = 0; i < nc; ++i) {
      QValue acc = q.bot();
      for (size_t x = 0; x < a.size(); ++x)
        acc = q.join2(acc, q.tensor(b.at(rest[k], j.map[x]), c.at(f.map[x], i)));
      p.hom[nc + k][i] = acc;
    }
  for (size_t k = 0; k < rest.size(); ++k)
    for (size_t l = 0; l < rest.size(); ++l) {
      // the direct B-hom joined with the paths through C
      QValue acc = b.at(rest[k], rest[l]);
      for (size_t x = 0; x < a.size(); ++x)
        for (size_t y = 0; y < a.size(); ++y)
          acc = q.join2(acc, q.tensor(q.tensor(b.at(rest[k], j.map[x]), c.at(f.map[x], f.map[y])),
                                      b.at(j.map[y], rest[l])));
      p.hom[nc + k][nc + l] = acc;
    }

  Cospan res;
  res.apex = std::make_shared<VCat>(std::move(p));
  res.i0.src = f.dst;
  res.i0.dst = res.apex;
  res.i0.map.resize(nc);
  for (size_t i = 0; i < nc; ++i) res.i0.map[i] = static_cast<int>(i);
  res.i1.src = j.dst;
  res.i1.dst = res.apex;
  res.i1.map.resize(b.size());
  {
    std::vector<int> pos_of_rest(b.size(), -1);
    for (size_t k = 0; k < rest.size(); ++k) pos_of_rest[rest[k]] = static_cast<int>(nc + k);
    for (size_t y = 0; y < b.size(); ++y)
      res.i1.map[y] = preimage[y] >= 0 ? f.map[preimage[y]] : pos_of_rest[y];
  }
  if (!is_fully_faithful(res.i0))
    throw std::logic_error("pushout_along_ff: i0 failed its fully-faithfulness self-test");
  return res;
}

Factorization factorize(const VFunctor& f) {
  const VCat& a = *f.src;
  const VCat& b = *f.dst;
  VCat mid;
  mid.q = a.q;
  mid.objects = a.objects;
  size_t n = a.size();
  mid.hom.assign(n, std::vector<QValue>(n));
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) mid.hom[x][y] = b.at(f.map[x], f.map[y]);
  auto midp = std::make_shared<VCat>(std::move(mid));

  Factorization fac;
  fac.e.src = f.src;
  fac.e.dst = midp;
  fac.e.map.resize(n);
  for (size_t x = 0; x < n; ++x) fac.e.map[x] = static_cast<int>(x);
  fac.j.src = midp;
  fac.j.dst = f.dst;
  fac.j.map = f.map;
  return fac;
}

Collage compose_collages(const Collage& sc, const Collage& rc, ComposeRoute route) {
  // sc is the collage of S : B -|-> C (legs i0 : C → coll, i1 : B → coll);
  // rc the collage of R : A -|-> B. The shared middle is B.
  if (!same_cat(*sc.i1.src, *rc.i0.src))
    throw QcatError("compose_collages: middle categories differ");
  CatPtr c = sc.i0.src;
  CatPtr a = rc.i1.src;

  Cospan mid = route == ComposeRoute::pushout ? pushout_along_ff(rc.i0, sc.i1)
                                              : cocomma(sc.i1, rc.i0);

  // u = [p0∘i0^S, p1∘i1^R] : C + A → apex
  VCat cpa = coproduct(*c, *a);
  VFunctor u;
  u.src = std::make_shared<VCat>(std::move(cpa));
  u.dst = mid.apex;
  u.map.reserve(c->size() + a->size());
  for (size_t i = 0; i < c->size(); ++i) u.map.push_back(mid.i0.map[sc.i0.map[i]]);
  for (size_t i = 0; i < a->size(); ++i) u.map.push_back(mid.i1.map[rc.i1.map[i]]);

  Factorization fac = factorize(u);
  if (!is_fully_faithful(fac.j))
    throw std::logic_error("compose_collages: mono part failed its fully-faithfulness self-test");

  // relabel the mono part with the collage convention for C and A
  VCat coll = *fac.j.src;
  coll.objects = block_labels(c->objects, a->objects);
  Collage out;
  out.coll = std::make_shared<VCat>(std::move(coll));
  out.i0.src = c;
  out.i0.dst = out.coll;
  out.i0.map.resize(c->size());
  for (size_t i = 0; i < c->size(); ++i) out.i0.map[i] = static_cast<int>(i);
  out.i1.src = a;
  out.i1.dst = out.coll;
  out.i1.map.resize(a->size());
  for (size_t i = 0; i < a->size(); ++i) out.i1.map[i] = static_cast<int>(c->size() + i);
  return out;
}

}  // namespace qcat
