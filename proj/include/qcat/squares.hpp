#pragma once

#include <optional>

#include "qcat/vmod.hpp"

namespace qcat {

/// A lax square
///
///     P --p1--> B
///     p0        g
///     v    ≤    v
///     A --f---> C
///
/// with f∘p0 ≤ g∘p1.
struct LaxSquare {
  VFunctor p0;  // P → A
  VFunctor p1;  // P → B
  VFunctor f;   // A → C
  VFunctor g;   // B → C
};

Report validate_square(const LaxSquare& sq);

struct ExactWitness {
  int a = -1;
  int b = -1;
  QValue lhs;
  QValue rhs;
};

struct ExactnessResult {
  bool exact = false;
  std::optional<ExactWitness> witness;
};

/// Checks C(fa,gb) = ⋁_w A(a,p0 w) ⊗ B(p1 w,b) for all a, b.
/// Throws on a non-lax input.
ExactnessResult is_exact(const LaxSquare& sq);

/// The ≥ half of exactness, which holds for every lax square.
bool near_exactness_holds(const LaxSquare& sq);

/// A cospan apex with its two legs.
struct Cospan {
  CatPtr apex;
  VFunctor i0;
  VFunctor i1;
};

/// The cocomma object f▷g of f : C→A, g : C→B, with legs i0 : A→f▷g, i1 : B→f▷g.
/// Cross-homs are (i0 a → i1 b) = ⋁_c A(a,fc) ⊗ B(gc,b), the other direction ⊥.
Cospan cocomma(const VFunctor& f, const VFunctor& g);

LaxSquare cocomma_square(const VFunctor& f, const VFunctor& g, const Cospan& cc);

/// Pushout of C ←f– A –j→ B along a fully faithful (and object-injective) j,
/// with legs i0 : C→P (fully faithful) and i1 : B→P.
Cospan pushout_along_ff(const VFunctor& j, const VFunctor& f);

/// f = j∘e with e surjective on objects and j fully faithful;
/// the middle category has the objects of A and homs B(fa,fa').
struct Factorization {
  VFunctor e;
  VFunctor j;
};

Factorization factorize(const VFunctor& f);

enum class ComposeRoute { pushout, cocomma };

/// Composes collages through the middle pushout or cocomma; both routes
/// return collage(S·R) exactly.
Collage compose_collages(const Collage& sc, const Collage& rc, ComposeRoute route);

}  // namespace qcat
