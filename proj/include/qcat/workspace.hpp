#pragma once

#include "qcat/coalg.hpp"

namespace qcat {

/// Parse failure carrying every schema violation found, not just the first.
struct ParseError : QcatError {
  std::vector<std::string> errors;
  explicit ParseError(std::vector<std::string> errs)
      : QcatError(errs.empty() ? "parse error" : errs.front()), errors(std::move(errs)) {}
};

/// A named batch of definitions over a single quantale.
struct Workspace {
  QuantaleSpec qspec;
  QuantalePtr q;

  std::map<std::string, CatPtr> categories;

  struct FunctorEntry {
    std::string src, dst;
    VFunctor f;
  };
  std::map<std::string, FunctorEntry> functors;

  struct ModuleEntry {
    std::string src, dst;
    Module m;
  };
  std::map<std::string, ModuleEntry> modules;

  std::map<std::string, ExprPtr> endofunctors;

  struct SquareEntry {
    std::string p0, p1, f, g;
  };
  std::map<std::string, SquareEntry> squares;

  struct CoalgebraEntry {
    std::string space, functor;
    Coalgebra c;
  };
  std::map<std::string, CoalgebraEntry> coalgebras;

  struct ModelEntry {
    std::string coalgebra;
    Model m;
  };
  std::map<std::string, ModelEntry> models;

  std::map<std::string, FormulaPtr> formulas;

  LaxSquare resolve_square(const std::string& name) const;
};

Workspace parse_workspace(const std::string& text, const EndoOptions& opts = {});
std::string emit_workspace(const Workspace& ws);

bool same_workspace(const Workspace& a, const Workspace& b);

}  // namespace qcat
