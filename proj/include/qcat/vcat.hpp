#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcat/quantale.hpp"
#include "qcat/report.hpp"

namespace qcat {

/// A finite V-category: ordered object labels plus a hom matrix, hom[from][to].
struct VCat {
  QuantalePtr q;
  std::vector<std::string> objects;
  std::vector<std::vector<QValue>> hom;

  size_t size() const { return objects.size(); }
  const QValue& at(size_t from, size_t to) const { return hom[from][to]; }
  int index_of(const std::string& label) const;
};

using CatPtr = std::shared_ptr<const VCat>;

CatPtr make_cat(QuantalePtr q, std::vector<std::string> objects, std::vector<std::vector<QValue>> hom);

bool same_cat(const VCat& a, const VCat& b);
std::unordered_map<std::string, int> label_index(const VCat& a);

/// A V-functor: an object map that never increases distances (A(a,a') ≤ B(fa,fa')).
struct VFunctor {
  CatPtr src;
  CatPtr dst;
  std::vector<int> map;

  int operator()(int a) const { return map[a]; }
};

VFunctor identity_functor(CatPtr a);
VFunctor compose(const VFunctor& g, const VFunctor& f);  // g after f
bool same_functor(const VFunctor& f, const VFunctor& g);

Report validate_category(const VCat& a);
Report validate_functor(const VFunctor& f);

VCat opposite(const VCat& a);
CatPtr opposite_ptr(const CatPtr& a);
VCat tensor_product(const VCat& a, const VCat& b);
VCat coproduct(const VCat& a, const VCat& b);
VCat discrete(const VCat& a);

/// Labels for a two-block category; the blocks are prefixed only on collision.
std::vector<std::string> block_labels(const std::vector<std::string>& left,
                                      const std::vector<std::string>& right);

struct Preorder {
  std::vector<std::string> objects;
  std::vector<std::vector<bool>> le;
};

Preorder underlying_preorder(const VCat& a);
VCat free_on_preorder(QuantalePtr q, const Preorder& p);

bool functor_le(const VFunctor& f, const VFunctor& g);
bool is_fully_faithful(const VFunctor& f);
bool is_surjective_on_objects(const VFunctor& f);

struct SizeLimits {
  size_t max_objects = 4096;
  size_t max_candidates = size_t{1} << 20;
};

/// All tables t : objects(A) → carrier that are V-functors A^op→V (contravariant)
/// or A→V (covariant), in lexicographic order of the value tables.
std::vector<std::vector<QValue>> enumerate_functor_tables(const VCat& a, bool contravariant,
                                                          const SizeLimits& lim = {});

std::string table_label(const Quantale& q, const std::vector<QValue>& table);

/// A category whose objects are value tables, with the decoding kept alongside.
struct TableCat {
  VCat cat;
  std::vector<std::vector<QValue>> tables;
  int index_of_table(const std::vector<QValue>& t) const;
};

TableCat presheaf_category(const VCat& a, const SizeLimits& lim = {});    // [A^op, V]
TableCat copresheaf_category(const VCat& a, const SizeLimits& lim = {});  // [A, V]^op

VCat tensor_two(const VCat& a);

}  // namespace qcat
