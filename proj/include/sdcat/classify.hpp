#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdcat/analysis.hpp"
#include "sdcat/category.hpp"

namespace sdcat {

struct ClassifyCaps {
  int p_cap = 6;
  int radius_cap = 3;
  int window_cap = 6;
  std::uint64_t node_budget = 2'000'000;
  std::size_t state_budget = 200'000;
};

/// Finite-domain constraint problem solved by backtracking with forward checking.
struct Csp {
  struct Constraint {
    std::vector<int> vars;
    /// Called with every variable of vars assigned (others may be -1).
    std::function<bool(const std::vector<int>&)> ok;
  };
  std::vector<std::vector<int>> domains;
  std::vector<Constraint> constraints;
};

enum class CspStatus { Found, Exhausted, Budget };

/// Enumerates solutions until accept returns true.
CspStatus solve_csp(const Csp& csp, std::uint64_t node_budget,
                    const std::function<bool(const std::vector<int>&)>& accept);

Verdict is_epic(const BlockMap& f, CategoryTag cat);
Verdict is_monic(const BlockMap& f, CategoryTag cat);

struct StrongConditionReport {
  int p = 1;
  Answer answer = Answer::Undecided;
  /// The choice G(u) for each u in P_p(Y) when the answer is YES.
  std::vector<std::pair<Word, Word>> G;
  nlohmann::json witness;
  std::string note;
};

/// Same-length words a with ∞a∞ in X and f(∞a.a∞) = ∞u.u∞.
std::vector<Word> periodic_preimages(const BlockMap& f, const Word& u);

StrongConditionReport strong_condition(const BlockMap& f, int p, const ClassifyCaps& caps = {});

/// g : Y -> X of radius s with f ∘ g = ID_Y (preserving points when pointed).
/// Empty when none exists or the node or complete-candidate budget runs out.
std::optional<BlockMap> find_section(const BlockMap& f, int s, bool pointed, std::uint64_t node_budget = 2'000'000);
/// h : Y -> X of radius s with h ∘ f = ID_X.
std::optional<BlockMap> find_retraction(const BlockMap& f, int s, bool pointed, std::uint64_t node_budget = 2'000'000);

Verdict is_split_epic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps = {});
Verdict is_split_monic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps = {});
Verdict is_regular_epic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps = {});
Verdict is_regular_monic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps = {});

/// All six properties plus the underlying injectivity data as one JSON row.
nlohmann::json classify(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps = {});

/// Existence of some block map Z -> Y: decided when Y is a mixing SFT,
/// otherwise only the period condition Per(Z) ⊆ Per(Y) is reported.
Verdict exists_morphism(const Shift& z, const Shift& y);

/// Y ∩ Z for shifts over one alphabet.
ShiftPtr intersection_shift(const Shift& y, const Shift& z);

}  // namespace sdcat
