#pragma once

#include <array>
#include <memory>

#include "qcat/vcat.hpp"

namespace qcat {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Endofunctors of Vcat as evaluable syntax trees:
///   Id | Const(X) | Sum | Tensor | Dual | Lower | Upper | Power
///   | ConnectedComponents | TripleDiag
/// Lower(T) is L∘T with L A = [A^op,V]; Upper(T) is U∘T with U A = [A,V]^op;
/// Power(T) takes all V-subsets of |T A| with the Egli-Milner style hom.
struct Expr {
  enum class Node {
    id,
    constant,
    sum,
    tensor,
    dual,
    lower,
    upper,
    power,
    connected_components,
    triple_diag,
  };

  Node node = Node::id;
  std::string constant_name;
  CatPtr constant_cat;
  ExprPtr child0;
  ExprPtr child1;

  static ExprPtr make_id();
  static ExprPtr make_const(std::string name, CatPtr cat);
  static ExprPtr make_sum(ExprPtr a, ExprPtr b);
  static ExprPtr make_tensor(ExprPtr a, ExprPtr b);
  static ExprPtr make_dual(ExprPtr a);
  static ExprPtr make_lower(ExprPtr a);
  static ExprPtr make_upper(ExprPtr a);
  static ExprPtr make_power(ExprPtr a);
  static ExprPtr make_connected_components();
  static ExprPtr make_triple_diag();
};

std::string render_expr(const Expr& e);

bool is_lower_id(const Expr& e);
bool is_upper_id(const Expr& e);
bool is_power_id(const Expr& e);

/// True when the expression contains a leaf with no functorial relation
/// lifting (connected components or the diagonal-triples functor).
bool has_non_bcc_leaf(const Expr& e);

struct EndoOptions {
  SizeLimits limits;
};

/// The category T(A) with objects enumerated eagerly but homs computed on
/// demand. Only the outermost layer stays lazy; inner layers of nested
/// expressions are materialized. This keeps relation lifting affordable:
/// it reads only the hom entries it needs from T(Coll R).
class AppliedView {
 public:
  AppliedView(ExprPtr t, CatPtr a, const EndoOptions& opts = {});

  const ExprPtr& expr() const { return t_; }
  const CatPtr& base() const { return base_; }
  size_t size() const { return labels_.size(); }
  const std::string& label(size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  QValue hom(size_t i, size_t j) const;
  int index_of(const std::string& label) const;

  /// Value-table decoding; outermost lower/upper/power nodes only.
  const std::vector<QValue>& table(size_t i) const;
  /// The materialized inner category of an outermost lower/upper/power node.
  const VCat& inner() const;

  VCat materialize() const;

  /// Object map of T(f) from this view (over f.src) into dst (over f.dst).
  std::vector<int> map_along(const VFunctor& f, const AppliedView& dst) const;

 private:
  ExprPtr t_;
  CatPtr base_;
  EndoOptions opts_;
  QuantalePtr q_;

  std::unique_ptr<AppliedView> left_, right_;
  CatPtr direct_;                            // id, constant
  CatPtr inner_;                             // lower/upper/power: materialized child
  std::vector<std::vector<QValue>> tables_;  // lower/upper/power
  std::vector<int> comp_of_;                 // connected components
  std::vector<std::array<int, 3>> triples_;  // triple_diag
  std::vector<std::string> labels_;
  mutable std::unordered_map<std::string, int> label_map_;
};

VCat apply_to_category(const ExprPtr& t, const CatPtr& a, const EndoOptions& opts = {});
CatPtr apply_to_category_ptr(const ExprPtr& t, const CatPtr& a, const EndoOptions& opts = {});
VFunctor apply_to_functor(const ExprPtr& t, const VFunctor& f, const EndoOptions& opts = {});

/// Precondition f ≤ g; returns whether T f ≤ T g.
bool check_local_monotonicity(const ExprPtr& t, const VFunctor& f, const VFunctor& g,
                              const EndoOptions& opts = {});

/// φ↑(a) = ⋁_{a'} φ(a')⊗A(a',a) and φ↓(a) = ⋁_{a'} φ(a')⊗A(a,a').
std::vector<QValue> up_closure(const VCat& a, const std::vector<QValue>& phi);
std::vector<QValue> down_closure(const VCat& a, const std::vector<QValue>& phi);

/// Component id per object; ids ordered by least member.
std::vector<int> connected_components_of(const VCat& a);

}  // namespace qcat
