#pragma once

#include "qcat/vcat.hpp"

namespace qcat {

/// A module (weighted relation) R from A to B: a functor B^op⊗A→V.
/// matrix[b][a] stores R(b,a); rows are indexed by objects of dst, columns by src.
struct Module {
  CatPtr src;  // A
  CatPtr dst;  // B
  std::vector<std::vector<QValue>> matrix;

  const QValue& at(size_t b, size_t a) const { return matrix[b][a]; }
};

Module make_module(CatPtr src, CatPtr dst, std::vector<std::vector<QValue>> matrix);

Report validate_module(const Module& r);
bool same_module(const Module& r, const Module& s);
bool module_le(const Module& r, const Module& s);

/// Least module above a raw matrix: R̂(b,a) = ⋁_{b',a'} B(b,b') ⊗ M(b',a') ⊗ A(a',a).
Module bimodule_closure(CatPtr a, CatPtr b, const std::vector<std::vector<QValue>>& raw);

Module identity_module(CatPtr a);
Module compose(const Module& s, const Module& r);  // S·R(c,a) = ⋁_b S(c,b)⊗R(b,a)

Module graph_lower(const VFunctor& f);  // f_◇(b,a) = B(b,fa),  A -|-> B
Module graph_upper(const VFunctor& f);  // f^◇(a,b) = B(fa,b),  B -|-> A

/// Self-test of f_◇ ⊣ f^◇: id_A ≤ f^◇·f_◇ and f_◇·f^◇ ≤ id_B.
Report check_graph_adjunction(const VFunctor& f);

/// The collage of R : A -|-> B glues B and A with cross-homs R(b,a);
/// i0 : B → coll and i1 : A → coll are the fully faithful legs.
struct Collage {
  CatPtr coll;
  VFunctor i0;
  VFunctor i1;
};

Collage collage(const Module& r);
bool same_collage(const Collage& c, const Collage& d);

/// Recovers the module of a cospan: (i0)^◇ · (i1)_◇.
Module module_of_cospan(const VFunctor& i0, const VFunctor& i1);

/// R† : [A^op,V] → [B^op,V], the Kleisli extension f ↦ (b ↦ ⋁_a f(a)⊗R(b,a)).
VFunctor module_dagger(const Module& r, const SizeLimits& lim = {});

VFunctor yoneda(CatPtr a, const SizeLimits& lim = {});        // A → [A^op,V]
Module evaluation_module(CatPtr a, const SizeLimits& lim = {});  // ev_A : [A^op,V] -|-> A, ev(a,f)=f(a)

}  // namespace qcat
