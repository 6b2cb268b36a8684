#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdcat/word.hpp"

namespace sdcat {

/// Nondeterministic acceptor. Label -1 is an epsilon move.
struct Nfa {
  int k = 0;
  std::vector<std::vector<std::pair<int, int>>> out;  // (label, to)
  std::vector<int> initial;
  std::vector<char> accepting;

  int size() const { return static_cast<int>(out.size()); }
  int add_state(bool accept = false);
  void add_edge(int from, int label, int to) { out[from].push_back({label, to}); }
};

/// Deterministic acceptor with partial transitions (-1 = dead).
struct Dfa {
  int k = 0;
  int n = 0;
  int init = -1;
  std::vector<int> delta;  // n * k
  std::vector<char> accept;

  int next(int q, int a) const { return q < 0 ? -1 : delta[static_cast<std::size_t>(q) * k + a]; }
  int run(int q, const Word& w) const;
  bool accepts(const Word& w) const;
  bool empty() const { return init < 0; }
  bool operator==(const Dfa& o) const = default;
};

/// Subset construction; throws BudgetExceeded past max_states subsets.
Dfa determinize(const Nfa& a, std::size_t max_states = 1u << 20);
/// Trim, Moore refinement and BFS renumbering. Two minimized acceptors of one
/// language are structurally equal.
Dfa minimize(const Dfa& a);
Dfa determinize_minimize(const Nfa& a);

Nfa to_nfa(const Dfa& d);
Nfa reverse(const Dfa& d);

Dfa dfa_intersection(const Dfa& a, const Dfa& b);
Dfa dfa_union(const Dfa& a, const Dfa& b);
/// Complement relative to all words over the alphabet.
Dfa dfa_complement(const Dfa& a);

/// Shortest word accepted by a and rejected by b (length-lexicographically least).
std::optional<Word> dfa_difference_witness(const Dfa& a, const Dfa& b);
bool dfa_included(const Dfa& a, const Dfa& b);
bool dfa_equal(const Dfa& a, const Dfa& b);

/// All accepted words of the given length, in lexicographic order.
std::vector<Word> dfa_words_of_length(const Dfa& d, int len);
/// Number of accepted words of each length 0..max_len (saturating).
std::vector<std::uint64_t> dfa_count_words(const Dfa& d, int max_len);

/// Thompson construction. Syntax: single-character symbols, <tok> for longer
/// tokens, juxtaposition, '|', postfix '*', '+', '?', parentheses.
Nfa regex_nfa(std::string_view re, const Alphabet& alpha);

/// Transition monoid of a deterministic acceptor: functions on states with
/// -1 = undefined, generated by the letters. Element 0 is the identity.
class TransitionMonoid {
 public:
  explicit TransitionMonoid(const Dfa& d, std::size_t max_elements = 1u << 18);

  int size() const { return static_cast<int>(elems_.size()); }
  int identity() const { return 0; }
  /// The everywhere-undefined function, or -1 if absent.
  int zero() const { return zero_; }
  int letter(int a) const { return letters_[a]; }
  int mul(int a, int b) const;
  int times_letter(int e, int a) const { return right_[static_cast<std::size_t>(e) * k_ + a]; }
  int class_of(const Word& w) const;
  bool is_idempotent(int e) const { return mul(e, e) == e; }
  const std::vector<int>& function(int e) const { return elems_[e]; }
  /// State reached from q under element e, or -1.
  int act(int q, int e) const { return q < 0 ? -1 : elems_[e][q]; }
  std::vector<std::vector<int>> table() const;
  int alphabet_size() const { return k_; }

 private:
  int n_ = 0;
  int k_ = 0;
  int zero_ = -1;
  std::vector<std::vector<int>> elems_;
  std::unordered_map<std::vector<int>, int, WordHash> index_;
  std::vector<int> right_;
  std::vector<int> letters_;
};

/// Indices i1 < i2 with seq[i1] ... seq[i2-1] idempotent, scanning i1 then i2
/// ascending.
std::optional<std::pair<int, int>> find_idempotent_factor(const TransitionMonoid& m,
                                                          const std::vector<int>& seq);

/// w is pumpable when its class in m is idempotent and, if h is given, its
/// class in h is idempotent as well.
bool is_pumpable(const TransitionMonoid& m, const Word& w, const TransitionMonoid* h = nullptr);

}  // namespace sdcat
