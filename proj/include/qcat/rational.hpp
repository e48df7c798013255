#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcat {

/// Error for bad input: unknown kinds, carrier mismatches, parse failures.
struct QcatError : std::runtime_error {
  explicit QcatError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact scalar: a rational number p/q (q > 0, reduced) or the token ∞.
/// Carries no quantale semantics; ordering here is the ordinary real order
/// with ∞ greatest. All arithmetic is exact and throws on int64 overflow.
class QValue {
 public:
  QValue() = default;
  QValue(long long n) : num_(n) {}  // NOLINT: implicit integer literals are convenient
  static QValue rational(long long num, long long den);
  static QValue infinity();

  // Accepts "p/q", a plain integer "p", or "inf".
  static QValue parse(const std::string& text);

  bool is_inf() const { return inf_; }
  long long num() const { return num_; }
  long long den() const { return den_; }

  // Chain index access; throws unless the value is a small non-negative integer.
  long long as_index() const;

  std::string str() const;

  friend bool operator==(const QValue& a, const QValue& b) {
    return a.inf_ == b.inf_ && (a.inf_ || (a.num_ == b.num_ && a.den_ == b.den_));
  }
  friend bool operator!=(const QValue& a, const QValue& b) { return !(a == b); }
  // Real-number order, ∞ greatest.
  friend bool operator<(const QValue& a, const QValue& b);
  friend bool operator<=(const QValue& a, const QValue& b) { return a < b || a == b; }
  friend bool operator>(const QValue& a, const QValue& b) { return b < a; }
  friend bool operator>=(const QValue& a, const QValue& b) { return b <= a; }

  // ∞ is absorbing for +; * and / reject ∞ (no quantale here needs them).
  friend QValue operator+(const QValue& a, const QValue& b);
  friend QValue operator-(const QValue& a, const QValue& b);
  friend QValue operator*(const QValue& a, const QValue& b);
  friend QValue operator/(const QValue& a, const QValue& b);

  static const QValue& min(const QValue& a, const QValue& b) { return b < a ? b : a; }
  static const QValue& max(const QValue& a, const QValue& b) { return a < b ? b : a; }

 private:
  static QValue make(__int128 num, __int128 den);

  long long num_ = 0;
  long long den_ = 1;
  bool inf_ = false;
};

}  // namespace qcat
