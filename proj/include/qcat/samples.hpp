#pragma once

#include <random>

#include "qcat/squares.hpp"

namespace qcat {

/// Deterministic generator of random categories, functors, modules and lax
/// squares over a quantale. Categories come from random matrices closed under
/// composition; functors are built with their hom inequalities holding by
/// construction, so no rejection sampling is needed.
class SampleGen {
 public:
  explicit SampleGen(uint64_t seed) : rng_(seed) {}

  size_t pick(size_t n);  // uniform-ish in [0, n)

  std::vector<QValue> value_pool(const Quantale& q) const;
  QValue value(const Quantale& q);

  CatPtr category(QuantalePtr q, size_t n, const std::string& prefix);
  Module module(CatPtr a, CatPtr b);

  /// A fresh category on n objects with a functor into c.
  VFunctor functor_into(CatPtr c, size_t n, const std::string& prefix);

  /// A fully faithful functor: a full subcategory inclusion on a random
  /// multiset of objects of c.
  VFunctor ff_into(CatPtr c, size_t n, const std::string& prefix);

  LaxSquare lax_square(QuantalePtr q, size_t max_objects);

 private:
  std::mt19937_64 rng_;
};

/// Closes a raw matrix into a category: joins the unit onto the diagonal and
/// sweeps A(x,z) ∨= A(y,z)⊗A(x,y) to a fixpoint.
std::vector<std::vector<QValue>> categorify(const Quantale& q,
                                            std::vector<std::vector<QValue>> hom);

}  // namespace qcat
