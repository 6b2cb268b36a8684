#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdcat/automata.hpp"
#include "sdcat/graph.hpp"
#include "sdcat/word.hpp"

namespace sdcat {

class Shift;
using ShiftPtr = std::shared_ptr<const Shift>;

enum class ShiftKind { Forbidden, Graph };

/// The point ∞w∞ shifted left by phase.
struct PeriodicPoint {
  Word word;
  int phase = 0;

  /// Symbol at coordinate i.
  int at(long i) const;
  /// The repeating word read from coordinate 0.
  Word aligned() const;
  PeriodicPoint shifted(int by = 1) const;
  bool operator==(const PeriodicPoint& o) const;  // equality as points
};

/// The point ∞u.wv∞ (w starts at coordinate 0).
struct EventuallyPeriodicPoint {
  Word left;
  Word center;
  Word right;
};

/// A sofic shift given by forbidden words or a labeled graph. Immutable; the
/// minimal acceptor of the factor language and its right-resolving cover are
/// built at construction.
class Shift {
 public:
  static ShiftPtr from_forbidden(Alphabet alpha, std::vector<Word> forbidden, std::optional<int> point = {});
  static ShiftPtr from_graph(Alphabet alpha, LabeledGraph g, std::vector<std::string> node_names = {},
                             std::optional<int> point = {});
  /// SFT whose allowed m-blocks are exactly the given words.
  static ShiftPtr from_allowed(Alphabet alpha, int m, const std::vector<Word>& allowed,
                               std::optional<int> point = {});
  /// Points all of whose factors are factors of words in the regular language.
  static ShiftPtr from_regex(Alphabet alpha, std::string_view re, std::optional<int> point = {});
  static ShiftPtr from_cover(Alphabet alpha, const DGraph& g, std::optional<int> point = {});
  static ShiftPtr full(Alphabet alpha, std::optional<int> point = {});
  /// The one-point shift over a single symbol "0".
  static ShiftPtr trivial();
  static ShiftPtr empty(Alphabet alpha);

  ShiftPtr with_point(std::optional<int> point) const;

  const Alphabet& alphabet() const { return alpha_; }
  int k() const { return alpha_.size(); }
  ShiftKind kind() const { return kind_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  /// Presentation graph as given (graph kind) or the avoidance automaton (forbidden kind).
  const LabeledGraph& raw_graph() const { return raw_; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  std::optional<int> point() const { return point_; }

  /// Minimal deterministic acceptor of B(X); every state accepts.
  const Dfa& language() const { return lang_; }
  /// Right-resolving presentation: the bi-essential part of language().
  const DGraph& cover() const { return cover_; }
  /// Map from cover states to language() states.
  const std::vector<int>& cover_to_language() const { return cover_to_lang_; }

  bool is_empty() const { return cover_.n == 0; }
  bool contains_word(const Word& w) const { return lang_.accepts(w); }
  bool contains_periodic(const Word& w) const;
  bool contains(const PeriodicPoint& p) const { return contains_periodic(p.word); }
  bool contains(const EventuallyPeriodicPoint& p) const;
  /// B_n(X) in lexicographic order.
  std::vector<Word> words(int n) const { return dfa_words_of_length(lang_, n); }
  /// Largest forbidden-word length (forbidden kind), else 0.
  int declared_window() const;

  /// Syntactic monoid, built on first use.
  const TransitionMonoid& monoid() const;

  /// Cover states with a left-infinite path labeled ...uuu ending there.
  std::vector<char> left_periodic_states(const Word& u) const;
  /// Cover states from which v^∞ can be read.
  std::vector<char> right_periodic_states(const Word& v) const;

 private:
  Shift() = default;
  void build();

  Alphabet alpha_;
  ShiftKind kind_ = ShiftKind::Graph;
  std::vector<Word> forbidden_;
  LabeledGraph raw_;
  std::vector<std::string> node_names_;
  std::optional<int> point_;
  Dfa lang_;
  DGraph cover_;
  std::vector<int> cover_to_lang_;
  mutable std::once_flag monoid_once_;
  mutable std::unique_ptr<TransitionMonoid> monoid_;
};

bool same_language(const Shift& a, const Shift& b);
/// B(a) ⊆ B(b) with matching alphabets.
bool is_subshift(const Shift& a, const Shift& b);
/// Reversed presentation.
ShiftPtr mirror(const Shift& x);

/// Product with pair symbols (a, b) at index a * |B| + b.
ShiftPtr product_shift(const Shift& a, const Shift& b);

/// Union of two subshifts over one alphabet.
ShiftPtr union_shift(const Shift& a, const Shift& b);
/// Subshift over the same alphabet generated by the cover restricted to the given states.
ShiftPtr restrict_cover(const Shift& x, const std::vector<char>& states);

}  // namespace sdcat
