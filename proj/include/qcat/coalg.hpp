#pragma once

#include <map>

#include "qcat/lifting.hpp"

namespace qcat {

/// A T-coalgebra: a V-functor ξ : X → TX. xi.dst is the materialized T X.
struct Coalgebra {
  CatPtr space;
  ExprPtr functor;
  VFunctor xi;
};

Coalgebra make_coalgebra(CatPtr space, ExprPtr functor, std::vector<int> xi_map,
                         const EndoOptions& opts = {});
Report validate_coalgebra(const Coalgebra& c, const EndoOptions& opts = {});

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Formulas: atoms, constants, finite meets/joins, and the cover modality ∇γ
/// where γ is a finite quantale-weighted set of formulas.
struct Formula {
  enum class Node { atom, constant, meet, join, nabla };
  Node node = Node::atom;
  std::string atom;
  QValue value;
  std::vector<FormulaPtr> children;
  std::vector<std::pair<FormulaPtr, QValue>> weights;

  static FormulaPtr make_atom(std::string name);
  static FormulaPtr make_const(QValue v);
  static FormulaPtr make_meet(std::vector<FormulaPtr> kids);
  static FormulaPtr make_join(std::vector<FormulaPtr> kids);
  static FormulaPtr make_nabla(std::vector<std::pair<FormulaPtr, QValue>> weights);
};

std::string render_formula(const Formula& f);

/// A coalgebra with an atom valuation; each atom's table must be a
/// V-functor X → V.
struct Model {
  Coalgebra coalg;
  std::map<std::string, std::vector<QValue>> valuation;
};

Report validate_model(const Model& m);

/// Satisfaction values over all states. ∇γ evaluates through the relation
/// lifting of the dual functor over the collage of the forcing module, with
/// the formula stage taken discrete; for L/U/P coalgebras the closed form is
/// used and cross-checked against the collage route.
std::vector<QValue> eval_table(const Model& m, const FormulaPtr& phi, const EndoOptions& opts = {});
QValue eval(const Model& m, const FormulaPtr& phi, int state, const EndoOptions& opts = {});

bool is_coalgebra_morphism(const Coalgebra& c1, const Coalgebra& c2, const VFunctor& f,
                           const EndoOptions& opts = {});

/// All V-functors f with ξ'∘f = Tf∘ξ, by exhaustive enumeration of object maps.
std::vector<VFunctor> find_coalgebra_morphisms(const Coalgebra& c1, const Coalgebra& c2,
                                               const EndoOptions& opts = {},
                                               size_t max_maps = 1000000);

struct BisimEdge {
  size_t from;  // index of the source coalgebra
  size_t to;    // index of the target coalgebra
  VFunctor f;
};

struct PartitionBlock {
  std::vector<std::pair<size_t, std::string>> members;  // (coalgebra index, state)
};

/// Union-find closure of the pairs (x, f x); the result is relative to the
/// supplied witnesses, not to the class of all coalgebras.
std::vector<PartitionBlock> bisimilarity_closure(const std::vector<Coalgebra>& coalgs,
                                                 const std::vector<BisimEdge>& edges,
                                                 const EndoOptions& opts = {});

/// For each morphism edge and formula, checks eval(m1,φ,x) = eval(m2,φ,fx).
Report check_invariance(const std::vector<Model>& models, const std::vector<BisimEdge>& edges,
                        const std::vector<FormulaPtr>& formulas, const EndoOptions& opts = {});

struct SimulationResult {
  Module sim;  // X -|-> Y; sim(y,x) is the degree to which y simulates x
  bool converged = false;
  bool monotone = true;
  int iterations = 0;
};

/// Greatest fixpoint of Φ(R)(y,x) = T̄(R)(ν y, ξ x), by descending iteration
/// from the full matrix. Terminates on finite quantales; otherwise stops at
/// the iteration cap with converged=false.
SimulationResult largest_simulation(const Coalgebra& c1, const Coalgebra& c2,
                                    const EndoOptions& opts = {}, int max_iterations = 0);

}  // namespace qcat
