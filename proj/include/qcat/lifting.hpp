#pragma once

#include "qcat/endo.hpp"
#include "qcat/squares.hpp"

namespace qcat {

/// T̄(R)(B,A) = T(Coll R)(T i0 (B), T i1 (A)), read off the collage of R.
Module lift_via_collage(const ExprPtr& t, const Module& r, const EndoOptions& opts = {});

enum class ClosedFormFunctor { lower, upper, power };

/// The displayed closed forms:
///   L̄(R)(B,A) = ⋀_b [B b, ⋁_a R(b,a)⊗A a]
///   Ū(R)(B,A) = ⋀_a [A a, ⋁_b R(b,a)⊗B b]
///   P̄(R)(B,A) = ⋀_b [B b, ⋁_a A a⊗R(b,a)] ⊗ ⋀_a [A a, ⋁_b B b⊗R(b,a)]
Module lift_closed_form(ClosedFormFunctor which, const Module& r, const EndoOptions& opts = {});

/// Closed form when t is exactly lower(id)/upper(id)/power(id), collage route otherwise.
Module lift_module(const ExprPtr& t, const Module& r, const EndoOptions& opts = {});

LaxSquare apply_to_square(const ExprPtr& t, const LaxSquare& sq, const EndoOptions& opts = {});

struct BatteryLine {
  std::string check;
  std::string instance;
  bool pass = false;
  std::string detail;
};

struct BatteryReport {
  std::vector<BatteryLine> lines;
  bool passed() const;
  const BatteryLine* first_failure() const;
};

struct ModulePairSample {
  std::string name;
  Module s;  // B -|-> C
  Module r;  // A -|-> B
};

/// Checks T̄(id)=id, T̄(S·R)=T̄(S)·T̄(R) and the extension equalities
/// T̄(f_◇)=(Tf)_◇, T̄(f^◇)=(Tf)^◇. A failure witnesses that T has no lifting.
BatteryReport functoriality_battery(const ExprPtr& t, const std::vector<CatPtr>& cats,
                                    const std::vector<ModulePairSample>& pairs,
                                    const std::vector<VFunctor>& functors,
                                    const EndoOptions& opts = {}, int jobs = 1);

struct CocommaSample {
  std::string name;
  VFunctor f;  // C → A
  VFunctor g;  // C → B
};

/// Checks (a) preservation of fully faithful functors on the ff samples,
/// (b) for each cocomma sample, that the canonical comparison
/// can : Tf ▷ Tg → T(f▷g) is a functor that is fully faithful on the image
/// blocks and the forward cross block (the content of exactness-preservation),
/// and (c) that the images of the supplied exact squares stay exact.
BatteryReport bcc_battery(const ExprPtr& t, const std::vector<VFunctor>& ff_samples,
                          const std::vector<CocommaSample>& cocomma_samples,
                          const std::vector<LaxSquare>& exact_squares = {},
                          const EndoOptions& opts = {}, int jobs = 1);

/// δ_A : T[A^op,V] → [(TA)^op,V], curried from R = T̄((yon_A)^◇).
struct DistributiveLaw {
  CatPtr base;
  VFunctor component;
};

DistributiveLaw derive_distributive_law(const ExprPtr& t, const CatPtr& a,
                                        const EndoOptions& opts = {});

struct DistributiveAxiomReport {
  Report unit;
  Report mult;
  bool mult_skipped = false;
  std::string skip_reason;
  bool ok() const { return unit.ok() && (mult_skipped || mult.ok()); }
};

/// Checks the unit triangle δ∘T(yon)=yon∘T and the multiplication pentagon
/// δ∘T(mult) = mult∘Lδ∘δ at the given category. The multiplication layer is
/// skipped (with a reason) when the double presheaf level exceeds the guard.
DistributiveAxiomReport check_distributive_axioms(const ExprPtr& t, const CatPtr& a,
                                                  const EndoOptions& opts = {});

}  // namespace qcat
