#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdcat/analysis.hpp"

namespace sdcat {

/// f^n at least radius (f^0 is the identity).
BlockMap power(const BlockMap& f, int n);

/// Injective and surjective; YES carries the inverse as certificate_map when
/// one is found within radius_cap.
Verdict is_reversible(const BlockMap& f, int radius_cap = 6);

struct EventualPeriodicity {
  bool found = false;
  int preperiod = 0;
  int period = 0;
  int cap = 0;
  /// Set when the power radius outgrew max_words before the cap.
  bool budget_stop = false;
};

/// Least k, then least p, with f^k = f^{k+p}, among the first cap powers.
EventualPeriodicity eventual_periodicity(const BlockMap& f, int cap = 32, std::uint64_t max_words = 1u << 20);

/// Every point has the same eventual period p.
Verdict is_visibly_eventually_periodic(const BlockMap& f, const EventualPeriodicity& ep);

struct OrbitQuotient {
  ShiftPtr object;
  BlockMap g;
  /// Half-width of the windows collected into each orbit symbol.
  int window = 0;
};

/// Map identifying the f-orbit of f^k(x), symbols being sets of aligned
/// windows of f^k(x), ..., f^{k+p-1}(x). Empty when no half-width up to
/// window_cap has kernel equal to the orbit relation.
std::optional<OrbitQuotient> orbit_subshift(const BlockMap& f, int k, int p, int window_cap = 4);

/// Strong connectivity of the level-n chain graph on B_n(X).
bool chain_transitive_level(const BlockMap& f, int n);

struct SpreadingNilpotent {
  std::optional<int> spreading;  // symbol
  bool nilpotent = false;
  int nilpotent_steps = 0;       // n with f^n(X) a single uniform point
  std::optional<int> nil_symbol;
  int cap = 0;
};
SpreadingNilpotent spreading_nilpotent(const BlockMap& f, int cap = 16);

/// Condition (1) exactly, condition (2) for powers up to depth.
Verdict visibly_blocking(const BlockMap& f, const std::vector<Word>& W, int depth = 3);

}  // namespace sdcat
