#pragma once

#include <vector>

#include "sdcat/dynamics.hpp"
#include "sdcat/limits.hpp"

namespace sdcat {

/// An equivalence on B_n(X) and the subshift relation it defines on X².
struct LocalEquivalence {
  int n = 1;
  WordIndex words;
  /// Class id of each word of B_n(X), ids in order of least member.
  std::vector<int> cls;
  SubshiftRelation relation;

  int classes() const;
  bool related(const Word& u, const Word& v) const;
  /// Pairs (u, v) of distinct related words.
  std::vector<std::pair<Word, Word>> pairs() const;
};

/// {(x, y) ∈ X² : every aligned pair of n-windows is related by cls}.
SubshiftRelation induced_relation(ShiftPtr x, int n, const WordIndex& words, const std::vector<int>& cls);

/// YES with certificate (n, extra pairs) when r is defined by an equivalence
/// on n-words for some n <= max_window.
Verdict is_local_equivalence(const SubshiftRelation& r, int max_window = 4);

/// Transitivity of r restricted to pairs of points of period dividing n, for n <= max_period.
Verdict transitive_on_periodic(const SubshiftRelation& r, int max_period = 6);

/// Smallest local equivalence of window n containing the generator.
LocalEquivalence local_closure(const SubshiftRelation& generator, ShiftPtr x, int n);

struct CoequalizerCaps {
  int window_cap = 4;
  int level_cap = 4;
  int power_cap = 32;
  int shift_power_cap = 4;
};

/// Coequalizer of f and the identity; the single leg is the quotient map.
LimitResult coequalizer_id(const BlockMap& f, CategoryTag cat, const CoequalizerCaps& caps = {});

/// Equalizer of f and the zero map into p(Y).
LimitResult kernel_P(const BlockMap& f, CategoryTag cat);
/// ID_Y for the zero map, the map to the zero object for surjections.
LimitResult cokernel_P(const BlockMap& f, CategoryTag cat);

}  // namespace sdcat
