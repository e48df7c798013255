#include "qcat/rational.hpp"

#include <limits>

namespace qcat {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

QValue QValue::make(__int128 num, __int128 den) {
  if (den == 0) throw QcatError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 lo = std::numeric_limits<long long>::min();
  constexpr __int128 hi = std::numeric_limits<long long>::max();
  if (num < lo || num > hi || den > hi)
    throw QcatError("rational overflow (value exceeds 64-bit exact range)");
  QValue v;
  v.num_ = static_cast<long long>(num);
  v.den_ = static_cast<long long>(den);
  return v;
}

QValue QValue::rational(long long num, long long den) {
  return make(num, den);
}

QValue QValue::infinity() {
  QValue v;
  v.inf_ = true;
  return v;
}

QValue QValue::parse(const std::string& text) {
  if (text == "inf") return infinity();
  if (text.empty()) throw QcatError("empty value literal");
  if (text.find('.') != std::string::npos)
    throw QcatError("decimal literal '" + text + "' not accepted: use p/q");
  auto parse_int = [](const std::string& s) -> long long {
    if (s.empty()) throw QcatError("bad rational literal");
    size_t pos = 0;
    long long v = 0;
    bool neg = false;
    if (s[0] == '-') {
      neg = true;
      pos = 1;
      if (s.size() == 1) throw QcatError("bad rational literal '" + s + "'");
    }
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9') throw QcatError("bad rational literal '" + s + "'");
      if (v > (std::numeric_limits<long long>::max() - 9) / 10)
        throw QcatError("rational literal out of range '" + s + "'");
      v = v * 10 + (s[pos] - '0');
    }
    return neg ? -v : v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return make(parse_int(text), 1);
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw QcatError("bad rational literal '" + text + "': denominator must be positive");
  return make(num, den);
}

long long QValue::as_index() const {
  if (inf_ || den_ != 1 || num_ < 0) throw QcatError("value " + str() + " is not a chain index");
  return num_;
}

std::string QValue::str() const {
  if (inf_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const QValue& a, const QValue& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

QValue operator+(const QValue& a, const QValue& b) {
  if (a.inf_ || b.inf_) return QValue::infinity();
  return QValue::make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

QValue operator-(const QValue& a, const QValue& b) {
  if (b.inf_) throw QcatError("cannot subtract inf");
  if (a.inf_) return QValue::infinity();
  return QValue::make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
}

QValue operator*(const QValue& a, const QValue& b) {
  if (a.inf_ || b.inf_) throw QcatError("cannot multiply inf");
  return QValue::make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

QValue operator/(const QValue& a, const QValue& b) {
  if (a.inf_ || b.inf_) throw QcatError("cannot divide inf");
  if (b.num_ == 0) throw QcatError("division by zero");
  return QValue::make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

}  // namespace qcat
