#include "qcat/endo.hpp"

#include <algorithm>

namespace qcat {

namespace {

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::make_id() { return make_node(Expr{}); }

ExprPtr Expr::make_const(std::string name, CatPtr cat) {
  Expr e;
  e.node = Node::constant;
  e.constant_name = std::move(name);
  e.constant_cat = std::move(cat);
  return make_node(std::move(e));
}

ExprPtr Expr::make_sum(ExprPtr a, ExprPtr b) {
  Expr e;
  e.node = Node::sum;
  e.child0 = std::move(a);
  e.child1 = std::move(b);
  return make_node(std::move(e));
}

ExprPtr Expr::make_tensor(ExprPtr a, ExprPtr b) {
  Expr e;
  e.node = Node::tensor;
  e.child0 = std::move(a);
  e.child1 = std::move(b);
  return make_node(std::move(e));
}

ExprPtr Expr::make_dual(ExprPtr a) {
  Expr e;
  e.node = Node::dual;
  e.child0 = std::move(a);
  return make_node(std::move(e));
}

ExprPtr Expr::make_lower(ExprPtr a) {
  Expr e;
  e.node = Node::lower;
  e.child0 = std::move(a);
  return make_node(std::move(e));
}

ExprPtr Expr::make_upper(ExprPtr a) {
  Expr e;
  e.node = Node::upper;
  e.child0 = std::move(a);
  return make_node(std::move(e));
}

ExprPtr Expr::make_power(ExprPtr a) {
  Expr e;
  e.node = Node::power;
  e.child0 = std::move(a);
  return make_node(std::move(e));
}

ExprPtr Expr::make_connected_components() {
  Expr e;
  e.node = Node::connected_components;
  return make_node(std::move(e));
}

ExprPtr Expr::make_triple_diag() {
  Expr e;
  e.node = Node::triple_diag;
  return make_node(std::move(e));
}

std::string render_expr(const Expr& e) {
  switch (e.node) {
    case Expr::Node::id:
      return "id";
    case Expr::Node::constant:
      return "const(" + e.constant_name + ")";
    case Expr::Node::sum:
      return "sum(" + render_expr(*e.child0) + "," + render_expr(*e.child1) + ")";
    case Expr::Node::tensor:
      return "tensor(" + render_expr(*e.child0) + "," + render_expr(*e.child1) + ")";
    case Expr::Node::dual:
      return "dual(" + render_expr(*e.child0) + ")";
    case Expr::Node::lower:
      return "lower(" + render_expr(*e.child0) + ")";
    case Expr::Node::upper:
      return "upper(" + render_expr(*e.child0) + ")";
    case Expr::Node::power:
      return "power(" + render_expr(*e.child0) + ")";
    case Expr::Node::connected_components:
      return "connected_components";
    case Expr::Node::triple_diag:
      return "triple_diag";
  }
  return "?";
}

bool is_lower_id(const Expr& e) {
  return e.node == Expr::Node::lower && e.child0->node == Expr::Node::id;
}

bool is_upper_id(const Expr& e) {
  return e.node == Expr::Node::upper && e.child0->node == Expr::Node::id;
}

bool is_power_id(const Expr& e) {
  return e.node == Expr::Node::power && e.child0->node == Expr::Node::id;
}

bool has_non_bcc_leaf(const Expr& e) {
  switch (e.node) {
    case Expr::Node::connected_components:
    case Expr::Node::triple_diag:
      return true;
    case Expr::Node::sum:
    case Expr::Node::tensor:
      return has_non_bcc_leaf(*e.child0) || has_non_bcc_leaf(*e.child1);
    case Expr::Node::dual:
    case Expr::Node::lower:
    case Expr::Node::upper:
    case Expr::Node::power:
      return has_non_bcc_leaf(*e.child0);
    default:
      return false;
  }
}

std::vector<QValue> up_closure(const VCat& a, const std::vector<QValue>& phi) {
  const Quantale& q = *a.q;
  std::vector<QValue> out(a.size(), q.bot());
  for (size_t x = 0; x < a.size(); ++x) {
    QValue acc = q.bot();
    for (size_t y = 0; y < a.size(); ++y) acc = q.join2(acc, q.tensor(phi[y], a.at(y, x)));
    out[x] = acc;
  }
  return out;
}

std::vector<QValue> down_closure(const VCat& a, const std::vector<QValue>& phi) {
  const Quantale& q = *a.q;
  std::vector<QValue> out(a.size(), q.bot());
  for (size_t x = 0; x < a.size(); ++x) {
    QValue acc = q.bot();
    for (size_t y = 0; y < a.size(); ++y) acc = q.join2(acc, q.tensor(phi[y], a.at(x, y)));
    out[x] = acc;
  }
  return out;
}

std::vector<int> connected_components_of(const VCat& a) {
  const Quantale& q = *a.q;
  size_t n = a.size();
  auto edge = [&](size_t x, size_t y) {
    return q.le(q.unit(), a.at(x, y)) || q.le(q.unit(), a.at(y, x));
  };
  std::vector<int> comp(n, -1);
  int next = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (size_t y = 0; y < n; ++y)
        if (comp[y] < 0 && edge(x, y)) {
          comp[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return comp;
}

AppliedView::AppliedView(ExprPtr t, CatPtr a, const EndoOptions& opts)
    : t_(std::move(t)), base_(std::move(a)), opts_(opts), q_(base_->q) {
  const SizeLimits& lim = opts_.limits;
  switch (t_->node) {
    case Expr::Node::id:
      direct_ = base_;
      labels_ = base_->objects;
      break;
    case Expr::Node::constant:
      if (!t_->constant_cat) throw QcatError("constant endofunctor without a category");
      if (!t_->constant_cat->q->same_as(*q_))
        throw QcatError("constant endofunctor category lives over a different quantale");
      direct_ = t_->constant_cat;
      labels_ = direct_->objects;
      break;
    case Expr::Node::sum: {
      left_ = std::make_unique<AppliedView>(t_->child0, base_, opts_);
      right_ = std::make_unique<AppliedView>(t_->child1, base_, opts_);
      labels_ = block_labels(left_->labels(), right_->labels());
      break;
    }
    case Expr::Node::tensor: {
      left_ = std::make_unique<AppliedView>(t_->child0, base_, opts_);
      right_ = std::make_unique<AppliedView>(t_->child1, base_, opts_);
      if (left_->size() * right_->size() > lim.max_objects)
        throw QcatError("tensor blow-up guard: " + std::to_string(left_->size() * right_->size()) +
                        " objects; raise --max-objects to override");
      labels_.reserve(left_->size() * right_->size());
      for (size_t i = 0; i < left_->size(); ++i)
        for (size_t j = 0; j < right_->size(); ++j)
          labels_.push_back("(" + left_->label(i) + "," + right_->label(j) + ")");
      break;
    }
    case Expr::Node::dual: {
      left_ = std::make_unique<AppliedView>(t_->child0, opposite_ptr(base_), opts_);
      labels_ = left_->labels();
      break;
    }
    case Expr::Node::lower:
    case Expr::Node::upper: {
      left_ = std::make_unique<AppliedView>(t_->child0, base_, opts_);
      inner_ = std::make_shared<VCat>(left_->materialize());
      tables_ = enumerate_functor_tables(*inner_, t_->node == Expr::Node::lower, lim);
      labels_.reserve(tables_.size());
      for (const auto& tab : tables_) labels_.push_back(table_label(*q_, tab));
      break;
    }
    case Expr::Node::power: {
      left_ = std::make_unique<AppliedView>(t_->child0, base_, opts_);
      inner_ = std::make_shared<VCat>(left_->materialize());
      tables_ = enumerate_functor_tables(discrete(*inner_), true, lim);
      labels_.reserve(tables_.size());
      for (const auto& tab : tables_) labels_.push_back(table_label(*q_, tab));
      break;
    }
    case Expr::Node::connected_components: {
      comp_of_ = connected_components_of(*base_);
      int ncomp = comp_of_.empty() ? 0 : *std::max_element(comp_of_.begin(), comp_of_.end()) + 1;
      labels_.resize(ncomp);
      std::vector<bool> named(ncomp, false);
      for (size_t i = 0; i < comp_of_.size(); ++i)
        if (!named[comp_of_[i]]) {
          named[comp_of_[i]] = true;
          labels_[comp_of_[i]] = "comp_" + base_->objects[i];
        }
      break;
    }
    case Expr::Node::triple_diag: {
      size_t n = base_->size();
      if (n * n * n > lim.max_candidates)
        throw QcatError("triple blow-up guard; raise --max-objects to override");
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          for (size_t k = 0; k < n; ++k)
            if (i == j || i == k || j == k) {
              triples_.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
              labels_.push_back("(" + base_->objects[i] + "," + base_->objects[j] + "," +
                                base_->objects[k] + ")");
            }
      break;
    }
  }
  if (labels_.size() > lim.max_objects)
    throw QcatError("endofunctor blow-up guard: " + std::to_string(labels_.size()) +
                    " objects exceeds the cap of " + std::to_string(lim.max_objects) +
                    "; raise --max-objects to override");
}

QValue AppliedView::hom(size_t i, size_t j) const {
  const Quantale& q = *q_;
  switch (t_->node) {
    case Expr::Node::id:
    case Expr::Node::constant:
      return direct_->at(i, j);
    case Expr::Node::sum: {
      size_t nl = left_->size();
      bool il = i < nl, jl = j < nl;
      if (il != jl) return q.bot();
      return il ? left_->hom(i, j) : right_->hom(i - nl, j - nl);
    }
    case Expr::Node::tensor: {
      size_t nr = right_->size();
      return q.tensor(left_->hom(i / nr, j / nr), right_->hom(i % nr, j % nr));
    }
    case Expr::Node::dual:
      return left_->hom(j, i);
    case Expr::Node::lower: {
      QValue acc = q.top();
      for (size_t x = 0; x < inner_->size(); ++x) acc = q.meet2(acc, q.hom(tables_[i][x], tables_[j][x]));
      return acc;
    }
    case Expr::Node::upper: {
      QValue acc = q.top();
      for (size_t x = 0; x < inner_->size(); ++x) acc = q.meet2(acc, q.hom(tables_[j][x], tables_[i][x]));
      return acc;
    }
    case Expr::Node::power: {
      const VCat& c = *inner_;
      const auto& phi = tables_[i];
      const auto& psi = tables_[j];
      QValue fwd = q.top();
      for (size_t x = 0; x < c.size(); ++x) {
        QValue sup = q.bot();
        for (size_t y = 0; y < c.size(); ++y) sup = q.join2(sup, q.tensor(psi[y], c.at(x, y)));
        fwd = q.meet2(fwd, q.hom(phi[x], sup));
      }
      QValue bwd = q.top();
      for (size_t y = 0; y < c.size(); ++y) {
        QValue sup = q.bot();
        for (size_t x = 0; x < c.size(); ++x) sup = q.join2(sup, q.tensor(phi[x], c.at(x, y)));
        bwd = q.meet2(bwd, q.hom(psi[y], sup));
      }
      return q.tensor(fwd, bwd);
    }
    case Expr::Node::connected_components:
      return i == j ? q.unit() : q.bot();
    case Expr::Node::triple_diag: {
      const auto& x = triples_[i];
      const auto& y = triples_[j];
      return q.tensor(q.tensor(base_->at(x[0], y[0]), base_->at(x[1], y[1])), base_->at(x[2], y[2]));
    }
  }
  throw std::logic_error("bad expr node");
}

int AppliedView::index_of(const std::string& label) const {
  if (label_map_.empty() && !labels_.empty()) {
    label_map_.reserve(labels_.size());
    for (size_t i = 0; i < labels_.size(); ++i) label_map_.emplace(labels_[i], static_cast<int>(i));
  }
  auto it = label_map_.find(label);
  return it == label_map_.end() ? -1 : it->second;
}

const std::vector<QValue>& AppliedView::table(size_t i) const {
  if (t_->node != Expr::Node::lower && t_->node != Expr::Node::upper &&
      t_->node != Expr::Node::power)
    throw QcatError("object decoding is only available for lower/upper/power nodes");
  return tables_[i];
}

const VCat& AppliedView::inner() const {
  if (!inner_) throw QcatError("inner category is only available for lower/upper/power nodes");
  return *inner_;
}

VCat AppliedView::materialize() const {
  VCat r;
  r.q = q_;
  r.objects = labels_;
  size_t n = size();
  r.hom.assign(n, std::vector<QValue>(n, q_->bot()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.hom[i][j] = hom(i, j);
  return r;
}

std::vector<int> AppliedView::map_along(const VFunctor& f, const AppliedView& dst) const {
  if (t_.get() != dst.t_.get())
    throw std::logic_error("map_along between views of different expressions");
  const Quantale& q = *q_;
  switch (t_->node) {
    case Expr::Node::id:
      return f.map;
    case Expr::Node::constant: {
      std::vector<int> m(size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
      return m;
    }
    case Expr::Node::sum: {
      std::vector<int> ml = left_->map_along(f, *dst.left_);
      std::vector<int> mr = right_->map_along(f, *dst.right_);
      std::vector<int> m;
      m.reserve(ml.size() + mr.size());
      int off = static_cast<int>(dst.left_->size());
      for (int v : ml) m.push_back(v);
      for (int v : mr) m.push_back(v + off);
      return m;
    }
    case Expr::Node::tensor: {
      std::vector<int> ml = left_->map_along(f, *dst.left_);
      std::vector<int> mr = right_->map_along(f, *dst.right_);
      std::vector<int> m;
      m.reserve(size());
      size_t nr = right_->size(), dnr = dst.right_->size();
      for (size_t i = 0; i < size(); ++i)
        m.push_back(ml[i / nr] * static_cast<int>(dnr) + mr[i % nr]);
      return m;
    }
    case Expr::Node::dual: {
      VFunctor fop;
      fop.src = left_->base();
      fop.dst = dst.left_->base();
      fop.map = f.map;
      return left_->map_along(fop, *dst.left_);
    }
    case Expr::Node::lower:
    case Expr::Node::upper:
    case Expr::Node::power: {
      VFunctor g;
      g.src = inner_;
      g.dst = dst.inner_;
      g.map = left_->map_along(f, *dst.left_);
      const VCat& d = *dst.inner_;
      std::vector<int> m(size());
      for (size_t i = 0; i < size(); ++i) {
        std::vector<QValue> img(d.size(), q.bot());
        for (size_t y = 0; y < d.size(); ++y) {
          QValue acc = q.bot();
          for (size_t x = 0; x < inner_->size(); ++x) {
            if (t_->node == Expr::Node::lower)
              acc = q.join2(acc, q.tensor(tables_[i][x], d.at(y, g.map[x])));
            else if (t_->node == Expr::Node::upper)
              acc = q.join2(acc, q.tensor(tables_[i][x], d.at(g.map[x], y)));
            else if (g.map[x] == static_cast<int>(y))
              acc = q.join2(acc, tables_[i][x]);
          }
          img[y] = acc;
        }
        int idx = dst.index_of(table_label(q, img));
        if (idx < 0)
          throw std::logic_error("applied functor image " + table_label(q, img) +
                                 " is not an object of the target");
        m[i] = idx;
      }
      return m;
    }
    case Expr::Node::connected_components: {
      std::vector<int> repr(size(), -1);
      for (size_t i = 0; i < comp_of_.size(); ++i)
        if (repr[comp_of_[i]] < 0) repr[comp_of_[i]] = static_cast<int>(i);
      std::vector<int> m(size());
      for (size_t k = 0; k < size(); ++k) m[k] = dst.comp_of_[f.map[repr[k]]];
      return m;
    }
    case Expr::Node::triple_diag: {
      std::vector<int> m(size());
      for (size_t i = 0; i < triples_.size(); ++i) {
        const auto& tr = triples_[i];
        std::string lbl = "(" + dst.base()->objects[f.map[tr[0]]] + "," +
                          dst.base()->objects[f.map[tr[1]]] + "," + dst.base()->objects[f.map[tr[2]]] +
                          ")";
        int idx = dst.index_of(lbl);
        if (idx < 0) throw std::logic_error("triple image missing from target");
        m[i] = idx;
      }
      return m;
    }
  }
  throw std::logic_error("bad expr node");
}

VCat apply_to_category(const ExprPtr& t, const CatPtr& a, const EndoOptions& opts) {
  return AppliedView(t, a, opts).materialize();
}

CatPtr apply_to_category_ptr(const ExprPtr& t, const CatPtr& a, const EndoOptions& opts) {
  return std::make_shared<VCat>(apply_to_category(t, a, opts));
}

VFunctor apply_to_functor(const ExprPtr& t, const VFunctor& f, const EndoOptions& opts) {
  AppliedView vs(t, f.src, opts);
  AppliedView vd(t, f.dst, opts);
  VFunctor r;
  r.map = vs.map_along(f, vd);
  r.src = std::make_shared<VCat>(vs.materialize());
  r.dst = std::make_shared<VCat>(vd.materialize());
  return r;
}

bool check_local_monotonicity(const ExprPtr& t, const VFunctor& f, const VFunctor& g,
                              const EndoOptions& opts) {
  if (!same_cat(*f.src, *g.src) || !same_cat(*f.dst, *g.dst))
    throw QcatError("check_local_monotonicity: source/destination mismatch");
  if (!functor_le(f, g)) throw QcatError("check_local_monotonicity: precondition f <= g fails");
  AppliedView vs(t, f.src, opts);
  AppliedView vd(t, f.dst, opts);
  std::vector<int> mf = vs.map_along(f, vd);
  std::vector<int> mg = vs.map_along(g, vd);
  const Quantale& q = *f.src->q;
  for (size_t i = 0; i < vs.size(); ++i)
    if (!q.le(q.unit(), vd.hom(mf[i], mg[i]))) return false;
  return true;
}

}  // namespace qcat
