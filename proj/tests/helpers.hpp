#pragma once

#include <string>
#include <vector>

#include "qcat/vcat.hpp"

namespace qcat::testing {

inline QuantalePtr mkq(const std::string& kind, int n = 0) { return Quantale::make({kind, n}); }

inline QValue v(const std::string& s) { return QValue::parse(s); }

inline CatPtr cat(QuantalePtr q, std::vector<std::string> objects,
                  std::vector<std::vector<std::string>> hom) {
  std::vector<std::vector<QValue>> m;
  m.reserve(hom.size());
  for (auto& row : hom) {
    std::vector<QValue> r;
    r.reserve(row.size());
    for (auto& s : row) r.push_back(q->parse_value(s));
    m.push_back(std::move(r));
  }
  return make_cat(std::move(q), std::move(objects), std::move(m));
}

// free category on a chain 0 < 1 < ... < n-1 over any quantale
inline CatPtr chain_cat(QuantalePtr q, size_t n) {
  Preorder p;
  for (size_t i = 0; i < n; ++i) p.objects.push_back("c" + std::to_string(i));
  p.le.assign(n, std::vector<bool>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p.le[i][j] = i <= j;
  return std::make_shared<VCat>(free_on_preorder(std::move(q), p));
}

inline CatPtr discrete_cat(QuantalePtr q, std::vector<std::string> objects) {
  size_t n = objects.size();
  std::vector<std::vector<QValue>> hom(n, std::vector<QValue>(n, q->bot()));
  for (size_t i = 0; i < n; ++i) hom[i][i] = q->unit();
  return make_cat(std::move(q), std::move(objects), std::move(hom));
}

inline CatPtr unit_cat(QuantalePtr q) { return discrete_cat(std::move(q), {"*"}); }

// The truncated words space over {a,b}: distance 0 on prefix pairs, 2^-n
// otherwise where n is the longest common prefix. Computed from string
// logic here, independently of any library code.
inline CatPtr ainfty_sample() {
  QuantalePtr q = mkq("unit_ultrametric");
  std::vector<std::string> words = {"e", "a", "b", "aa", "ab", "ba", "bb"};
  auto word = [](const std::string& w) { return w == "e" ? std::string() : w; };
  size_t n = words.size();
  std::vector<std::vector<QValue>> hom(n, std::vector<QValue>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::string vi = word(words[i]), wj = word(words[j]);
      if (wj.rfind(vi, 0) == 0) {
        hom[i][j] = QValue(0);
      } else {
        size_t lcp = 0;
        while (lcp < vi.size() && lcp < wj.size() && vi[lcp] == wj[lcp]) ++lcp;
        long long den = 1;
        for (size_t k = 0; k < lcp; ++k) den *= 2;
        hom[i][j] = QValue::rational(1, den);
      }
    }
  return make_cat(std::move(q), std::move(words), std::move(hom));
}

inline VFunctor functor_of(CatPtr src, CatPtr dst, std::vector<int> map) {
  VFunctor f;
  f.src = std::move(src);
  f.dst = std::move(dst);
  f.map = std::move(map);
  return f;
}

// all preorders on n labeled points, as free categories over q
inline std::vector<CatPtr> all_preorder_cats(QuantalePtr q, size_t n) {
  std::vector<CatPtr> out;
  size_t offdiag = n * (n - 1);
  for (size_t mask = 0; mask < (size_t{1} << offdiag); ++mask) {
    Preorder p;
    for (size_t i = 0; i < n; ++i) p.objects.push_back(std::string(1, char('a' + i)));
    p.le.assign(n, std::vector<bool>(n, false));
    size_t bit = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) {
          p.le[i][j] = true;
          continue;
        }
        p.le[i][j] = (mask >> bit) & 1;
        ++bit;
      }
    bool transitive = true;
    for (size_t i = 0; i < n && transitive; ++i)
      for (size_t j = 0; j < n && transitive; ++j)
        for (size_t k = 0; k < n && transitive; ++k)
          if (p.le[i][j] && p.le[j][k] && !p.le[i][k]) transitive = false;
    if (transitive) out.push_back(std::make_shared<VCat>(free_on_preorder(q, p)));
  }
  return out;
}

}  // namespace qcat::testing
