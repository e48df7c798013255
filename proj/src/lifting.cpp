#include "qcat/lifting.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace qcat {

namespace {

template <class F>
void parallel_for(size_t n, int jobs, F&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mtx;
  size_t workers = std::min(static_cast<size_t>(jobs), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mtx);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string first_matrix_diff(const Module& got, const Module& want) {
  for (size_t i = 0; i < got.matrix.size(); ++i)
    for (size_t j = 0; j < got.matrix[i].size(); ++j)
      if (got.matrix[i][j] != want.matrix[i][j])
        return "at (" + got.dst->objects[i] + "," + got.src->objects[j] + "): " +
               got.matrix[i][j].str() + " vs " + want.matrix[i][j].str();
  return "matrices agree";
}

}  // namespace

Module lift_via_collage(const ExprPtr& t, const Module& r, const EndoOptions& opts) {
  Collage c = collage(r);
  AppliedView va(t, r.src, opts);
  AppliedView vb(t, r.dst, opts);
  AppliedView vc(t, c.coll, opts);
  std::vector<int> m0 = vb.map_along(c.i0, vc);
  std::vector<int> m1 = va.map_along(c.i1, vc);
  Module out;
  out.src = std::make_shared<VCat>(va.materialize());
  out.dst = std::make_shared<VCat>(vb.materialize());
  out.matrix.assign(vb.size(), std::vector<QValue>(va.size(), r.src->q->bot()));
  for (size_t b = 0; b < vb.size(); ++b)
    for (size_t a = 0; a < va.size(); ++a) out.matrix[b][a] = vc.hom(m0[b], m1[a]);
  return out;
}

namespace {

struct TableSide {
  CatPtr cat;
  std::vector<std::vector<QValue>> tables;
};

TableSide table_side(ClosedFormFunctor which, const VCat& a, const SizeLimits& lim) {
  TableSide out;
  switch (which) {
    case ClosedFormFunctor::lower: {
      TableCat tc = presheaf_category(a, lim);
      out.cat = std::make_shared<VCat>(std::move(tc.cat));
      out.tables = std::move(tc.tables);
      return out;
    }
    case ClosedFormFunctor::upper: {
      TableCat tc = copresheaf_category(a, lim);
      out.cat = std::make_shared<VCat>(std::move(tc.cat));
      out.tables = std::move(tc.tables);
      return out;
    }
    case ClosedFormFunctor::power: {
      const Quantale& q = *a.q;
      out.tables = enumerate_functor_tables(discrete(a), true, lim);
      VCat cat;
      cat.q = a.q;
      size_t m = out.tables.size();
      cat.objects.reserve(m);
      for (const auto& t : out.tables) cat.objects.push_back(table_label(q, t));
      cat.hom.assign(m, std::vector<QValue>(m));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
          QValue fwd = q.top();
          for (size_t x = 0; x < a.size(); ++x) {
            QValue sup = q.bot();
            for (size_t y = 0; y < a.size(); ++y)
              sup = q.join2(sup, q.tensor(out.tables[j][y], a.at(x, y)));
            fwd = q.meet2(fwd, q.hom(out.tables[i][x], sup));
          }
          QValue bwd = q.top();
          for (size_t y = 0; y < a.size(); ++y) {
            QValue sup = q.bot();
            for (size_t x = 0; x < a.size(); ++x)
              sup = q.join2(sup, q.tensor(out.tables[i][x], a.at(x, y)));
            bwd = q.meet2(bwd, q.hom(out.tables[j][y], sup));
          }
          cat.hom[i][j] = q.tensor(fwd, bwd);
        }
      out.cat = std::make_shared<VCat>(std::move(cat));
      return out;
    }
  }
  throw std::logic_error("bad closed-form functor");
}

}  // namespace

Module lift_closed_form(ClosedFormFunctor which, const Module& r, const EndoOptions& opts) {
  const Quantale& q = *r.src->q;
  TableSide sa = table_side(which, *r.src, opts.limits);
  TableSide sb = table_side(which, *r.dst, opts.limits);
  Module out;
  out.src = sa.cat;
  out.dst = sb.cat;
  out.matrix.assign(sb.tables.size(), std::vector<QValue>(sa.tables.size(), q.bot()));
  size_t na = r.src->size(), nb = r.dst->size();
  for (size_t bi = 0; bi < sb.tables.size(); ++bi)
    for (size_t ai = 0; ai < sa.tables.size(); ++ai) {
      const auto& bt = sb.tables[bi];
      const auto& at = sa.tables[ai];
      QValue v;
      if (which == ClosedFormFunctor::lower) {
        QValue acc = q.top();
        for (size_t b = 0; b < nb; ++b) {
          QValue sup = q.bot();
          for (size_t a = 0; a < na; ++a) sup = q.join2(sup, q.tensor(r.at(b, a), at[a]));
          acc = q.meet2(acc, q.hom(bt[b], sup));
        }
        v = acc;
      } else if (which == ClosedFormFunctor::upper) {
        QValue acc = q.top();
        for (size_t a = 0; a < na; ++a) {
          QValue sup = q.bot();
          for (size_t b = 0; b < nb; ++b) sup = q.join2(sup, q.tensor(r.at(b, a), bt[b]));
          acc = q.meet2(acc, q.hom(at[a], sup));
        }
        v = acc;
      } else {
        QValue fwd = q.top();
        for (size_t b = 0; b < nb; ++b) {
          QValue sup = q.bot();
          for (size_t a = 0; a < na; ++a) sup = q.join2(sup, q.tensor(at[a], r.at(b, a)));
          fwd = q.meet2(fwd, q.hom(bt[b], sup));
        }
        QValue bwd = q.top();
        for (size_t a = 0; a < na; ++a) {
          QValue sup = q.bot();
          for (size_t b = 0; b < nb; ++b) sup = q.join2(sup, q.tensor(bt[b], r.at(b, a)));
          bwd = q.meet2(bwd, q.hom(at[a], sup));
        }
        v = q.tensor(fwd, bwd);
      }
      out.matrix[bi][ai] = v;
    }
  return out;
}

Module lift_module(const ExprPtr& t, const Module& r, const EndoOptions& opts) {
  if (is_lower_id(*t)) return lift_closed_form(ClosedFormFunctor::lower, r, opts);
  if (is_upper_id(*t)) return lift_closed_form(ClosedFormFunctor::upper, r, opts);
  if (is_power_id(*t)) return lift_closed_form(ClosedFormFunctor::power, r, opts);
  return lift_via_collage(t, r, opts);
}

LaxSquare apply_to_square(const ExprPtr& t, const LaxSquare& sq, const EndoOptions& opts) {
  AppliedView vp(t, sq.p0.src, opts);
  AppliedView va(t, sq.p0.dst, opts);
  AppliedView vb(t, sq.p1.dst, opts);
  AppliedView vc(t, sq.f.dst, opts);
  CatPtr tp = std::make_shared<VCat>(vp.materialize());
  CatPtr ta = std::make_shared<VCat>(va.materialize());
  CatPtr tb = std::make_shared<VCat>(vb.materialize());
  CatPtr tc = std::make_shared<VCat>(vc.materialize());
  LaxSquare out;
  out.p0 = {tp, ta, vp.map_along(sq.p0, va)};
  out.p1 = {tp, tb, vp.map_along(sq.p1, vb)};
  out.f = {ta, tc, va.map_along(sq.f, vc)};
  out.g = {tb, tc, vb.map_along(sq.g, vc)};
  return out;
}

bool BatteryReport::passed() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

const BatteryLine* BatteryReport::first_failure() const {
  for (const auto& l : lines)
    if (!l.pass) return &l;
  return nullptr;
}

BatteryReport functoriality_battery(const ExprPtr& t, const std::vector<CatPtr>& cats,
                                    const std::vector<ModulePairSample>& pairs,
                                    const std::vector<VFunctor>& functors, const EndoOptions& opts,
                                    int jobs) {
  BatteryReport rep;
  rep.lines.resize(cats.size() + pairs.size() + functors.size());

  parallel_for(cats.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[i];
    line.check = "identity";
    line.instance = "cat#" + std::to_string(i);
    Module lifted = lift_via_collage(t, identity_module(cats[i]), opts);
    Module want;
    want.src = lifted.src;
    want.dst = lifted.dst;
    want.matrix = lifted.src->hom;
    line.pass = lifted.matrix == want.matrix;
    if (!line.pass) line.detail = first_matrix_diff(lifted, want);
  });

  size_t off = cats.size();
  parallel_for(pairs.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[off + i];
    line.check = "composition";
    line.instance = pairs[i].name;
    Module lhs = lift_via_collage(t, compose(pairs[i].s, pairs[i].r), opts);
    Module rhs = compose(lift_via_collage(t, pairs[i].s, opts), lift_via_collage(t, pairs[i].r, opts));
    line.pass = lhs.matrix == rhs.matrix;
    if (!line.pass) {
      Module rhs2 = rhs;
      rhs2.src = lhs.src;
      rhs2.dst = lhs.dst;
      line.detail = first_matrix_diff(lhs, rhs2);
    }
  });

  off += pairs.size();
  parallel_for(functors.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[off + i];
    line.check = "extension";
    line.instance = "functor#" + std::to_string(i);
    VFunctor tf = apply_to_functor(t, functors[i], opts);
    Module low = lift_via_collage(t, graph_lower(functors[i]), opts);
    Module up = lift_via_collage(t, graph_upper(functors[i]), opts);
    bool ok_low = low.matrix == graph_lower(tf).matrix;
    bool ok_up = up.matrix == graph_upper(tf).matrix;
    line.pass = ok_low && ok_up;
    if (!line.pass)
      line.detail = std::string(ok_low ? "upper" : "lower") + " graph extension fails";
  });
  return rep;
}

BatteryReport bcc_battery(const ExprPtr& t, const std::vector<VFunctor>& ff_samples,
                          const std::vector<CocommaSample>& cocomma_samples,
                          const std::vector<LaxSquare>& exact_squares, const EndoOptions& opts,
                          int jobs) {
  BatteryReport rep;
  rep.lines.resize(ff_samples.size() + cocomma_samples.size() + exact_squares.size());

  parallel_for(ff_samples.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[i];
    line.check = "ff-preservation";
    line.instance = "ff#" + std::to_string(i);
    if (!is_fully_faithful(ff_samples[i]))
      throw QcatError("bcc battery: sample " + std::to_string(i) + " is not fully faithful");
    AppliedView vs(t, ff_samples[i].src, opts);
    AppliedView vd(t, ff_samples[i].dst, opts);
    std::vector<int> m = vs.map_along(ff_samples[i], vd);
    line.pass = true;
    for (size_t x = 0; x < vs.size() && line.pass; ++x)
      for (size_t y = 0; y < vs.size() && line.pass; ++y)
        if (vs.hom(x, y) != vd.hom(m[x], m[y])) {
          line.pass = false;
          line.detail = "witness (" + vs.label(x) + ", " + vs.label(y) + "): source hom " +
                        vs.hom(x, y).str() + ", image hom " + vd.hom(m[x], m[y]).str();
        }
  });

  size_t off = ff_samples.size();
  parallel_for(cocomma_samples.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[off + i];
    line.check = "cocomma-cocover";
    line.instance = cocomma_samples[i].name;
    const VFunctor& f = cocomma_samples[i].f;
    const VFunctor& g = cocomma_samples[i].g;
    VFunctor tf = apply_to_functor(t, f, opts);
    VFunctor tg = apply_to_functor(t, g, opts);
    Cospan k1 = cocomma(tf, tg);
    Cospan cc = cocomma(f, g);
    AppliedView va(t, f.dst, opts);
    AppliedView vb(t, g.dst, opts);
    AppliedView vk2(t, cc.apex, opts);
    std::vector<int> mi0 = va.map_along(cc.i0, vk2);
    std::vector<int> mi1 = vb.map_along(cc.i1, vk2);
    size_t na = va.size();
    auto can = [&](size_t x) { return x < na ? mi0[x] : mi1[x - na]; };
    line.pass = true;
    const VCat& k1cat = *k1.apex;
    for (size_t x = 0; x < k1cat.size() && line.pass; ++x)
      for (size_t y = 0; y < k1cat.size() && line.pass; ++y) {
        QValue lhs = k1cat.at(x, y);
        QValue rhs = vk2.hom(can(x), can(y));
        if (!k1cat.q->le(lhs, rhs)) {
          line.pass = false;
          line.detail = "comparison not a functor; witness (" + k1cat.objects[x] + ", " +
                        k1cat.objects[y] + "): " + lhs.str() + " vs " + rhs.str();
          break;
        }
        // full faithfulness is required on the two image blocks and the
        // forward cross block; those are the homs that witness exactness of
        // the image square. The reverse cross block of the cocomma is bottom
        // by construction and carries no exactness information.
        bool relevant = (x < na) == (y < na) || (x < na && y >= na);
        if (relevant && lhs != rhs) {
          line.pass = false;
          line.detail = "comparison not fully faithful; witness (" + k1cat.objects[x] + ", " +
                        k1cat.objects[y] + "): " + lhs.str() + " vs " + rhs.str();
        }
      }
  });

  off += cocomma_samples.size();
  parallel_for(exact_squares.size(), jobs, [&](size_t i) {
    BatteryLine& line = rep.lines[off + i];
    line.check = "exact-square-image";
    line.instance = "square#" + std::to_string(i);
    ExactnessResult base = is_exact(exact_squares[i]);
    if (!base.exact) throw QcatError("bcc battery: sample square " + std::to_string(i) + " is not exact");
    LaxSquare image = apply_to_square(t, exact_squares[i], opts);
    ExactnessResult res = is_exact(image);
    line.pass = res.exact;
    if (!res.exact)
      line.detail = "witness (" + image.f.src->objects[res.witness->a] + ", " +
                    image.g.src->objects[res.witness->b] + "): " + res.witness->lhs.str() +
                    " vs " + res.witness->rhs.str();
  });
  return rep;
}

DistributiveLaw derive_distributive_law(const ExprPtr& t, const CatPtr& a, const EndoOptions& opts) {
  VFunctor yon = yoneda(a, opts.limits);
  Module ev = graph_upper(yon);  // (yon_A)^◇ : LA -|-> A
  Module lifted = lift_module(t, ev, opts);
  TableCat lta = presheaf_category(*lifted.dst, opts.limits);
  DistributiveLaw dl;
  dl.base = a;
  dl.component.src = lifted.src;
  dl.component.dst = std::make_shared<VCat>(lta.cat);
  dl.component.map.resize(lifted.src->size());
  for (size_t phi = 0; phi < lifted.src->size(); ++phi) {
    std::vector<QValue> tab(lifted.dst->size());
    for (size_t x = 0; x < lifted.dst->size(); ++x) tab[x] = lifted.matrix[x][phi];
    int idx = lta.index_of_table(tab);
    if (idx < 0)
      throw std::logic_error("distributive law component does not land on presheaves");
    dl.component.map[phi] = idx;
  }
  return dl;
}

namespace {

// mult_A : LLA → LA, W ↦ (a ↦ ⋁_w W(w) ⊗ w(a))
std::vector<int> mult_map(const Quantale& q, const TableCat& la, const TableCat& lla) {
  std::vector<int> m(lla.tables.size());
  size_t base_n = la.tables.empty() ? 0 : la.tables[0].size();
  for (size_t wi = 0; wi < lla.tables.size(); ++wi) {
    std::vector<QValue> tab(base_n, q.bot());
    for (size_t x = 0; x < base_n; ++x) {
      QValue acc = q.bot();
      for (size_t w = 0; w < la.tables.size(); ++w)
        acc = q.join2(acc, q.tensor(lla.tables[wi][w], la.tables[w][x]));
      tab[x] = acc;
    }
    int idx = la.index_of_table(tab);
    if (idx < 0) throw std::logic_error("mult image is not a presheaf");
    m[wi] = idx;
  }
  return m;
}

}  // namespace

DistributiveAxiomReport check_distributive_axioms(const ExprPtr& t, const CatPtr& a,
                                                  const EndoOptions& opts) {
  DistributiveAxiomReport out;
  DistributiveLaw dl = derive_distributive_law(t, a, opts);
  VFunctor yon = yoneda(a, opts.limits);
  CatPtr la = yon.dst;

  // unit triangle: δ_A ∘ T(yon_A) = yon_{TA}
  AppliedView va(t, a, opts);
  AppliedView vla(t, la, opts);
  std::vector<int> tyon = va.map_along(yon, vla);
  CatPtr ta = std::make_shared<VCat>(va.materialize());
  VFunctor yon_ta = yoneda(ta, opts.limits);
  for (size_t i = 0; i < va.size(); ++i)
    if (dl.component.map[tyon[i]] != yon_ta.map[i]) {
      out.unit.add("unit triangle fails at " + va.label(i) + ": δ(T yon(x)) = " +
                   dl.component.dst->objects[dl.component.map[tyon[i]]] + " but yon(Tx) = " +
                   yon_ta.dst->objects[yon_ta.map[i]]);
    }

  // multiplication pentagon: δ_A ∘ T(mult_A) = mult_{TA} ∘ L(δ_A) ∘ δ_{LA}
  try {
    TableCat la_tc = presheaf_category(*a, opts.limits);
    TableCat lla_tc = presheaf_category(la_tc.cat, opts.limits);
    CatPtr lla = std::make_shared<VCat>(lla_tc.cat);
    VFunctor mult_a;
    mult_a.src = lla;
    mult_a.dst = la;
    mult_a.map = mult_map(*a->q, la_tc, lla_tc);

    DistributiveLaw dl2 = derive_distributive_law(t, la, opts);  // δ_{LA} : T(LLA) → L(TLA)

    AppliedView vlla(t, lla, opts);
    std::vector<int> tmult = vlla.map_along(mult_a, vla);

    // L(δ_A) : L(TLA) → L(LTA), φ ↦ (y ↦ ⋁_x φ(x) ⊗ LTA(y, δ_A x))
    const VCat& tla = *dl.component.src;
    const VCat& lta = *dl.component.dst;
    TableCat l_tla = presheaf_category(tla, opts.limits);
    TableCat l_lta = presheaf_category(lta, opts.limits);
    const Quantale& q = *a->q;
    auto l_delta = [&](const std::vector<QValue>& phi) {
      std::vector<QValue> img(lta.size(), q.bot());
      for (size_t y = 0; y < lta.size(); ++y) {
        QValue acc = q.bot();
        for (size_t x = 0; x < tla.size(); ++x)
          acc = q.join2(acc, q.tensor(phi[x], lta.at(y, dl.component.map[x])));
        img[y] = acc;
      }
      return img;
    };

    TableCat l_ta = presheaf_category(*ta, opts.limits);
    TableCat ll_ta = presheaf_category(l_ta.cat, opts.limits);
    std::vector<int> mult_ta = mult_map(q, l_ta, ll_ta);

    // δ_{LA} lands in L(T(LA)); identify its tables inside l_tla
    for (size_t x = 0; x < vlla.size(); ++x) {
      int lhs = dl.component.map[tmult[x]];
      // rhs: δ_{LA}(x) as a table over TLA, then L(δ_A), then mult_{TA}
      int d2 = dl2.component.map[x];
      const std::string& d2label = dl2.component.dst->objects[d2];
      int d2_in_ltla = -1;
      for (size_t k = 0; k < l_tla.cat.objects.size(); ++k)
        if (l_tla.cat.objects[k] == d2label) {
          d2_in_ltla = static_cast<int>(k);
          break;
        }
      if (d2_in_ltla < 0) throw std::logic_error("δ_{LA} image not found in L(T LA)");
      std::vector<QValue> after_l = l_delta(l_tla.tables[d2_in_ltla]);
      int in_llta = ll_ta.index_of_table(after_l);
      if (in_llta < 0) throw std::logic_error("L(δ) image not found in LL(TA)");
      int rhs = mult_ta[in_llta];
      if (lhs != rhs) {
        out.mult.add("multiplication pentagon fails at " + vlla.label(x) + ": " +
                     lta.objects[lhs] + " vs " + l_ta.cat.objects[rhs]);
      }
    }
  } catch (const QcatError& e) {
    out.mult_skipped = true;
    out.skip_reason = e.what();
  }
  return out;
}

}  // namespace qcat
