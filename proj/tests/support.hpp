#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>

#include "sdcat/classify.hpp"
#include "sdcat/colimits.hpp"
#include "sdcat/errors.hpp"
#include "sdcat/io.hpp"
#include "sdcat/oracle.hpp"

namespace sdcat::test {

inline std::filesystem::path corpus(const std::string& name) { return std::filesystem::path(SDCAT_CORPUS_DIR) / name; }
inline ShiftPtr shift(const std::string& name) { return load_shift(corpus(name)); }
inline BlockMap bmap(const std::string& name) { return load_bmap(corpus(name)); }
inline CategoryTag cat(const char* s) { return CategoryTag::parse(s); }

inline Alphabet digits(int k) {
  std::vector<std::string> t;
  for (int i = 0; i < k; ++i) t.push_back(std::to_string(i));
  return Alphabet(t);
}
inline ShiftPtr full(int k) { return Shift::full(digits(k)); }
inline Word w(const Shift& x, const std::string& s) { return x.alphabet().parse_word(s); }

/// The orbit of ∞u∞ as a finite shift over a.
inline ShiftPtr orbit_of(const Alphabet& a, const Word& u) {
  const int n = static_cast<int>(u.size());
  LabeledGraph g;
  g.k = a.size();
  g.n = n;
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, u[i]});
  return Shift::from_graph(a, g);
}

/// Six-symbol SFT with the letter-level equivalence generated by 1~2~3.
inline SubshiftRelation six_symbol_relation() {
  auto a = digits(6);
  std::vector<Word> two;
  for (const char* p : {"00", "01", "02", "03", "14", "24", "25", "35", "40", "50"}) two.push_back(a.parse_word(p));
  auto x = Shift::from_allowed(a, 2, two);
  auto pa = product_alphabet(a, a);
  std::vector<Word> letters;
  for (int s = 0; s < 6; ++s) letters.push_back({s * 6 + s});
  for (auto [p, q] : {std::pair{1, 2}, {2, 1}, {2, 3}, {3, 2}}) letters.push_back({p * 6 + q});
  auto allowed = Shift::from_allowed(pa, 1, letters);
  return SubshiftRelation{intersection_shift(*product_shift(*x, *x), *allowed), x, x};
}

/// Pairs of binary sequences that agree, or differ as u01^∞ against u10^∞.
inline SubshiftRelation carry_relation() {
  auto x = full(2);
  auto pa = product_alphabet(x->alphabet(), x->alphabet());
  auto sym = [](int top, int bottom) { return top * 2 + bottom; };
  std::set<Word> blocks;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        blocks.insert({sym(a, a), sym(b, b), sym(c, c)});
        blocks.insert({sym(a, a), sym(b, b), sym(c, 1 - c)});
        blocks.insert({sym(a, a), sym(b, 1 - b), sym(1 - b, b)});
        blocks.insert({sym(a, 1 - a), sym(1 - a, a), sym(1 - a, a)});
        blocks.insert({sym(a, 1 - a), sym(a, 1 - a), sym(a, 1 - a)});
      }
  auto rel = Shift::from_allowed(pa, 3, std::vector<Word>(blocks.begin(), blocks.end()));
  return SubshiftRelation{rel, x, x};
}

/// Seeded generator of small shifts and maps.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  Word word(int k, int len) {
    Word out(len);
    for (auto& c : out) c = below(k);
    return out;
  }

  /// SFT on k symbols with a few random forbidden words of length <= 3; nonempty.
  ShiftPtr sft(int k) {
    for (;;) {
      std::vector<Word> fb;
      int n = below(3);
      for (int i = 0; i < n; ++i) fb.push_back(word(k, 2 + below(2)));
      auto x = Shift::from_forbidden(digits(k), fb);
      if (!x->is_empty()) return x;
    }
  }

  /// Sofic shift from a random labeled graph on up to 4 vertices; nonempty.
  ShiftPtr sofic(int k) {
    for (;;) {
      LabeledGraph g;
      g.k = k;
      g.n = 2 + below(3);
      int e = g.n + below(2 * g.n);
      for (int i = 0; i < e; ++i) g.edges.push_back({below(g.n), below(g.n), below(k)});
      auto x = Shift::from_graph(digits(k), g);
      if (!x->is_empty()) return x;
    }
  }

  /// Random radius-r map from x into y = full shift on k symbols (or x itself when y is null).
  BlockMap map_to_full(const ShiftPtr& x, int k, int r, ShiftPtr y = nullptr) {
    if (!y) y = full(k);
    const int n = block_index(*x, 2 * r + 1).size();
    std::vector<int> rule(n);
    for (auto& v : rule) v = below(k);
    return BlockMap(x, y, r, rule);
  }

  BlockMap endo_full(int k, int r) {
    auto x = full(k);
    return map_to_full(x, k, r, x);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace sdcat::test
