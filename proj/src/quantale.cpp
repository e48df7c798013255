#include "qcat/quantale.hpp"

#include <algorithm>

namespace qcat {

namespace {

const QValue kZero = QValue(0);
const QValue kOne = QValue(1);

}  // namespace

std::shared_ptr<const Quantale> Quantale::make(const QuantaleSpec& spec) {
  const std::string& k = spec.kind;
  auto mk = [&](QuantaleKind kind, int n) {
    return std::shared_ptr<const Quantale>(new Quantale(kind, k, n));
  };
  if (k == "two") return mk(QuantaleKind::two, 1);
  if (k == "lukasiewicz_chain" || k == "godel_chain") {
    if (spec.n < 1) throw QcatError("chain quantale '" + k + "' needs n >= 1");
    return mk(k == "lukasiewicz_chain" ? QuantaleKind::lukasiewicz_chain : QuantaleKind::godel_chain,
              spec.n);
  }
  if (k == "unit_lukasiewicz") return mk(QuantaleKind::unit_lukasiewicz, 0);
  if (k == "unit_godel") return mk(QuantaleKind::unit_godel, 0);
  if (k == "unit_product") return mk(QuantaleKind::unit_product, 0);
  if (k == "lawvere_plus") return mk(QuantaleKind::lawvere_plus, 0);
  if (k == "unit_ultrametric") return mk(QuantaleKind::unit_ultrametric, 0);
  if (k == "probabilistic")
    throw QcatError("quantale kind 'probabilistic' is out of scope (function-valued carrier)");
  throw QcatError("unsupported quantale kind '" + k + "'");
}

bool Quantale::finite() const {
  switch (kind_) {
    case QuantaleKind::two:
    case QuantaleKind::lukasiewicz_chain:
    case QuantaleKind::godel_chain:
      return true;
    default:
      return false;
  }
}

bool Quantale::reversed() const {
  return kind_ == QuantaleKind::lawvere_plus || kind_ == QuantaleKind::unit_ultrametric;
}

bool Quantale::contains(const QValue& x) const {
  switch (kind_) {
    case QuantaleKind::two:
    case QuantaleKind::lukasiewicz_chain:
    case QuantaleKind::godel_chain:
      return !x.is_inf() && x.den() == 1 && x.num() >= 0 && x.num() <= n_;
    case QuantaleKind::unit_lukasiewicz:
    case QuantaleKind::unit_godel:
    case QuantaleKind::unit_product:
    case QuantaleKind::unit_ultrametric:
      return !x.is_inf() && kZero <= x && x <= kOne;
    case QuantaleKind::lawvere_plus:
      return x.is_inf() || kZero <= x;
  }
  return false;
}

void Quantale::require(const QValue& x) const {
  if (!contains(x))
    throw QcatError("value " + x.str() + " is outside the carrier of quantale '" + kind_name_ + "'");
}

bool Quantale::le(const QValue& x, const QValue& y) const {
  return reversed() ? y <= x : x <= y;
}

QValue Quantale::tensor(const QValue& x, const QValue& y) const {
  switch (kind_) {
    case QuantaleKind::two:
    case QuantaleKind::godel_chain:
      return QValue::min(x, y);
    case QuantaleKind::lukasiewicz_chain: {
      QValue s = x + y - QValue(n_);
      return QValue::max(s, kZero);
    }
    case QuantaleKind::unit_lukasiewicz: {
      QValue s = x + y - kOne;
      return QValue::max(s, kZero);
    }
    case QuantaleKind::unit_godel:
      return QValue::min(x, y);
    case QuantaleKind::unit_product:
      return x * y;
    case QuantaleKind::lawvere_plus:
      return x + y;
    case QuantaleKind::unit_ultrametric:
      return QValue::max(x, y);
  }
  throw QcatError("bad quantale kind");
}

QValue Quantale::hom(const QValue& x, const QValue& y) const {
  switch (kind_) {
    case QuantaleKind::two:
    case QuantaleKind::godel_chain:
      return x <= y ? QValue(n_) : y;
    case QuantaleKind::lukasiewicz_chain: {
      QValue r = QValue(n_) - x + y;
      return QValue::min(r, QValue(n_));
    }
    case QuantaleKind::unit_lukasiewicz: {
      QValue r = kOne - x + y;
      return QValue::min(r, kOne);
    }
    case QuantaleKind::unit_godel:
      return x <= y ? kOne : y;
    case QuantaleKind::unit_product:
      return x <= y ? kOne : y / x;
    case QuantaleKind::lawvere_plus:
      return x >= y ? kZero : y - x;  // truncated subtraction; [inf,y]=0, [x,inf]=inf
    case QuantaleKind::unit_ultrametric:
      return x >= y ? kZero : y;
  }
  throw QcatError("bad quantale kind");
}

QValue Quantale::join2(const QValue& x, const QValue& y) const {
  return reversed() ? QValue::min(x, y) : QValue::max(x, y);
}

QValue Quantale::meet2(const QValue& x, const QValue& y) const {
  return reversed() ? QValue::max(x, y) : QValue::min(x, y);
}

QValue Quantale::join(const std::vector<QValue>& xs) const {
  QValue acc = bot();
  for (const auto& x : xs) acc = join2(acc, x);
  return acc;
}

QValue Quantale::meet(const std::vector<QValue>& xs) const {
  QValue acc = top();
  for (const auto& x : xs) acc = meet2(acc, x);
  return acc;
}

QValue Quantale::bot() const {
  switch (kind_) {
    case QuantaleKind::lawvere_plus:
      return QValue::infinity();
    case QuantaleKind::unit_ultrametric:
      return kOne;
    case QuantaleKind::two:
    case QuantaleKind::lukasiewicz_chain:
    case QuantaleKind::godel_chain:
    case QuantaleKind::unit_lukasiewicz:
    case QuantaleKind::unit_godel:
    case QuantaleKind::unit_product:
      return kZero;
  }
  throw QcatError("bad quantale kind");
}

QValue Quantale::top() const {
  switch (kind_) {
    case QuantaleKind::two:
    case QuantaleKind::lukasiewicz_chain:
    case QuantaleKind::godel_chain:
      return QValue(n_);
    case QuantaleKind::unit_lukasiewicz:
    case QuantaleKind::unit_godel:
    case QuantaleKind::unit_product:
      return kOne;
    case QuantaleKind::lawvere_plus:
    case QuantaleKind::unit_ultrametric:
      return kZero;
  }
  throw QcatError("bad quantale kind");
}

QValue Quantale::unit() const {
  // All supported kinds are integral: the tensor unit is the top element.
  return top();
}

std::vector<QValue> Quantale::carrier() const {
  if (!finite()) throw QcatError("quantale '" + kind_name_ + "' has an infinite carrier");
  std::vector<QValue> out;
  out.reserve(n_ + 1);
  for (int i = 0; i <= n_; ++i) out.emplace_back(i);
  return out;
}

QValue Quantale::parse_value(const std::string& text) const {
  QValue v = QValue::parse(text);
  if (v.is_inf() && kind_ != QuantaleKind::lawvere_plus)
    throw QcatError("'inf' is only a value of the lawvere_plus quantale");
  require(v);
  return v;
}

Report Quantale::validate_laws(const std::vector<QValue>& samples) const {
  Report rep;
  std::vector<QValue> s;
  if (finite()) {
    s = carrier();
  } else {
    if (samples.empty()) {
      rep.add("law check on an infinite quantale needs a nonempty sample list");
      return rep;
    }
    s = samples;
    s.push_back(bot());
    s.push_back(top());
    s.push_back(unit());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (const auto& x : s) {
    if (!contains(x)) {
      rep.add("sample " + x.str() + " outside carrier");
      return rep;
    }
  }

  auto name = [](const QValue& v) { return v.str(); };

  for (const auto& x : s) {
    if (!le(x, x)) rep.add("order not reflexive at " + name(x));
    if (!le(bot(), x)) rep.add("bot not least at " + name(x));
    if (!le(x, top())) rep.add("top not greatest at " + name(x));
    if (tensor(unit(), x) != x) rep.add("unit law fails at " + name(x));
  }
  for (const auto& x : s)
    for (const auto& y : s) {
      if (le(x, y) && le(y, x) && x != y) rep.add("antisymmetry fails at " + name(x) + "," + name(y));
      if (tensor(x, y) != tensor(y, x)) rep.add("commutativity fails at " + name(x) + "," + name(y));
      QValue j = join2(x, y);
      QValue m = meet2(x, y);
      if (!le(x, j) || !le(y, j)) rep.add("join not an upper bound at " + name(x) + "," + name(y));
      if (!le(m, x) || !le(m, y)) rep.add("meet not a lower bound at " + name(x) + "," + name(y));
    }
  for (const auto& x : s)
    for (const auto& y : s)
      for (const auto& z : s) {
        if (le(x, y) && le(y, z) && !le(x, z))
          rep.add("transitivity fails at " + name(x) + "," + name(y) + "," + name(z));
        if (tensor(tensor(x, y), z) != tensor(x, tensor(y, z)))
          rep.add("associativity fails at " + name(x) + "," + name(y) + "," + name(z));
        if (le(x, y) && !le(tensor(x, z), tensor(y, z)))
          rep.add("tensor not monotone at " + name(x) + "," + name(y) + "," + name(z));
        if (le(tensor(x, y), z) != le(y, hom(x, z)))
          rep.add("adjunction fails at x=" + name(x) + " y=" + name(y) + " z=" + name(z));
        if (le(x, z) && le(y, z) && !le(join2(x, y), z))
          rep.add("join not least upper bound at " + name(x) + "," + name(y) + "," + name(z));
        if (le(z, x) && le(z, y) && !le(z, meet2(x, y)))
          rep.add("meet not greatest lower bound at " + name(x) + "," + name(y) + "," + name(z));
        if (tensor(x, join2(y, z)) != join2(tensor(x, y), tensor(x, z)))
          rep.add("tensor does not distribute over join at " + name(x) + "," + name(y) + "," + name(z));
      }
  return rep;
}

}  // namespace qcat
