#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qcat/rational.hpp"
#include "qcat/report.hpp"

namespace qcat {

enum class QuantaleKind {
  two,
  lukasiewicz_chain,
  godel_chain,
  unit_lukasiewicz,
  unit_godel,
  unit_product,
  lawvere_plus,
  unit_ultrametric,
};

struct QuantaleSpec {
  std::string kind;
  int n = 0;  // chain kinds only
};

/// A commutative quantale: a complete lattice with a commutative monotone
/// tensor whose right adjoint is the internal hom. All arithmetic is exact.
///
/// Finite kinds (two, the Łukasiewicz and Gödel chains) carry their values as
/// chain indices 0..n. The unit-interval kinds carry exact rationals in [0,1],
/// lawvere_plus a non-negative rational or ∞. For lawvere_plus and
/// unit_ultrametric the lattice order is the reversed real order; only
/// le/join/meet are meaningful order-wise, never raw real comparison.
class Quantale {
 public:
  static std::shared_ptr<const Quantale> make(const QuantaleSpec& spec);

  QuantaleKind kind() const { return kind_; }
  const std::string& kind_name() const { return kind_name_; }
  int chain_n() const { return n_; }
  bool finite() const;
  bool reversed() const;  // lattice order is >=_R

  bool contains(const QValue& x) const;
  void require(const QValue& x) const;

  bool le(const QValue& x, const QValue& y) const;
  QValue tensor(const QValue& x, const QValue& y) const;
  QValue hom(const QValue& x, const QValue& y) const;
  QValue join(const std::vector<QValue>& xs) const;
  QValue meet(const std::vector<QValue>& xs) const;
  QValue join2(const QValue& x, const QValue& y) const;
  QValue meet2(const QValue& x, const QValue& y) const;

  QValue bot() const;
  QValue top() const;
  QValue unit() const;

  /// The full carrier, ascending in the lattice order. Finite kinds only.
  std::vector<QValue> carrier() const;

  QValue parse_value(const std::string& text) const;
  std::string render(const QValue& x) const { return x.str(); }

  /// Checks the lattice, monoid and adjunction laws. Exhaustive over the
  /// carrier for finite kinds; over the given samples (plus ⊥, ⊤, I) otherwise.
  Report validate_laws(const std::vector<QValue>& samples = {}) const;

  bool same_as(const Quantale& other) const {
    return kind_ == other.kind_ && n_ == other.n_;
  }

 private:
  Quantale(QuantaleKind kind, std::string name, int n) : kind_(kind), kind_name_(std::move(name)), n_(n) {}

  QuantaleKind kind_;
  std::string kind_name_;
  int n_ = 0;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

}  // namespace qcat
