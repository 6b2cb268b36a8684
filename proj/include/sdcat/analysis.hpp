#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sdcat/blockmap.hpp"
#include "sdcat/verdict.hpp"

namespace sdcat {

/// Subshift of X × Y over the pair alphabet, with its coordinate projections.
struct SubshiftRelation {
  ShiftPtr relation;
  ShiftPtr left;
  ShiftPtr right;

  BlockMap p1() const;
  BlockMap p2() const;
  /// Pair symbol index for (a, b).
  int pair(int a, int b) const { return a * right->k() + b; }
  int first(int s) const { return s / right->k(); }
  int second(int s) const { return s % right->k(); }
  /// The transposed relation {(y, x)} (left and right must share an alphabet).
  SubshiftRelation transposed() const;
};

ShiftPtr image(const BlockMap& f);
bool is_surjective(const BlockMap& f);
/// Shortest word of B(target) outside B(f(source)).
std::optional<Word> surjectivity_witness(const BlockMap& f);

SubshiftRelation diagonal(ShiftPtr x);
SubshiftRelation kernel_set(const BlockMap& f);
/// {(x, y) : f(x) = g(y)}.
SubshiftRelation fiber_product(const BlockMap& f, const BlockMap& g);
ShiftPtr equalizer_set(const BlockMap& f, const BlockMap& g);

/// Subshifts generated by the strongly connected components of the cover.
std::vector<ShiftPtr> scc_subshifts(const Shift& x);
/// Inclusion-maximal SCC-generated subshifts, deduplicated.
std::vector<ShiftPtr> constituents(const Shift& x);
bool is_transitive(const Shift& x);
/// A shortest w with ∞w∞ in X (lexicographically least among those), if X is nonempty.
std::optional<Word> shortest_periodic_word(const Shift& x);
bool is_mixing(const Shift& x);
bool is_countable(const Shift& x);
bool is_finite(const Shift& x);
/// Period of the minimal right-resolving presentation of a transitive shift (0 if not transitive).
int fischer_period(const Shift& x);

/// Per(X) = {n >= 1 : some x has σ^n x = x}, stored as an eventually periodic
/// indicator sequence.
class PeriodSet {
 public:
  PeriodSet() = default;
  PeriodSet(int n0, int d, std::vector<char> head);
  bool contains(long n) const;
  int preperiod() const { return n0_; }
  int period() const { return d_; }
  std::vector<int> upto(int n) const;
  /// Residues r mod d (in [0, d)) that belong to Per for all large n.
  std::vector<int> residues() const;
  bool empty() const;

 private:
  int n0_ = 0;
  int d_ = 1;
  std::vector<char> head_;  // head_[n] for 1 <= n <= n0 + d
};

PeriodSet periods(const Shift& x);
/// Smallest n in Per(a) \ Per(b).
std::optional<long> period_excess(const PeriodSet& a, const PeriodSet& b);
/// X ◁ Y, read as Per(X) ⊆ Per(Y).
Verdict is_peric(const BlockMap& f);
Verdict periods_included(const Shift& x, const Shift& y);

/// YES with certificate window m, or NO with a non-SFT witness family.
Verdict is_sft(const Shift& x);
/// SFT defined by the allowed words B_m(X).
ShiftPtr sft_approximation(const Shift& x, int m);

struct InjectivityFamily {
  bool injective = true;
  bool injective_on_periodic = true;
  bool injective_on_uniform = true;
  nlohmann::json witness;  // first failing pair, if any
};
InjectivityFamily injectivity_family(const BlockMap& f);

/// Diamond search on Ker f.
Verdict is_preinjective(const BlockMap& f);

struct Resolvingness {
  bool right = true;
  bool left = true;
};
Resolvingness resolvingness(const BlockMap& f);

/// JSON encodings used in reports.
nlohmann::json word_json(const Alphabet& a, const Word& w);
nlohmann::json ep_json(const Alphabet& a, const EventuallyPeriodicPoint& p);

}  // namespace sdcat
