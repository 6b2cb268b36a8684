#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdcat/blockmap.hpp"

// Reference implementations by exhaustion. Everything here works from the raw
// presentation graph and local rule tables and shares no decision code with
// the engine.
namespace sdcat::oracle {

/// Nondeterministic labeled graph in which every state is initial and accepting.
struct Nfa {
  int k = 0;
  std::vector<std::vector<std::pair<int, int>>> out;  // (label, to)
  int size() const { return static_cast<int>(out.size()); }
};

/// Essential part of the raw presentation of a shift.
class BruteShift {
 public:
  explicit BruteShift(const Shift& x);

  int k() const { return nfa_.k; }
  int vertices() const { return nfa_.size(); }
  const Nfa& nfa() const { return nfa_; }
  bool contains_word(const Word& w) const;
  /// ∞w∞ ∈ X.
  bool contains_periodic(const Word& w) const;
  std::vector<Word> words(int n) const;

 private:
  Nfa nfa_;
};

/// Shortest word read in a but not in b, if any.
std::optional<Word> nfa_difference(const Nfa& a, const Nfa& b, std::uint64_t budget = 1u << 22);

/// The image presentation of f: states are (vertex, last 2r symbols).
struct ImageNfa {
  Nfa nfa;                // labeled by image symbols
  std::vector<int> input;  // source symbol per edge, in out order
  std::vector<std::vector<int>> input_of;  // parallel to nfa.out
};
ImageNfa image_nfa(const BlockMap& f);

/// All radius-r maps source -> target whose image lies in target, in rule order.
std::vector<BlockMap> enumerate_block_maps(ShiftPtr source, ShiftPtr target, int r, std::uint64_t budget = 1u << 24);

enum class Property { Surjective, Injective, InjectiveOnPeriodic, Preinjective, SplitEpic, MonicK2, RegularMonicK2 };
std::string to_string(Property p);
/// Accepts epic/surjective, injective, per-injective, preinjective, split-epic, monic, regular-monic.
Property parse_property(std::string_view s);

struct Bounds {
  int period = 6;
  int section_radius = 1;
  int window = 6;
  std::uint64_t budget = 1u << 24;
};

bool brute_decide(Property p, const BlockMap& f, const Bounds& b = {});

bool image_within(const BlockMap& f, const Shift& y);
/// Equality of two maps with a common source, compared on all source words.
bool brute_maps_equal(const BlockMap& f, const BlockMap& g);
/// (g ∘ f) == h, evaluated word by word without building the composite.
bool brute_composite_equals(const BlockMap& g, const BlockMap& f, const BlockMap& h);

/// Every ∞u∞ in Y with |u| <= max_period has a preimage ∞a∞ with |a| = |u|.
bool same_period_preimages(const BlockMap& f, int max_period);

/// True when no point ∞a.z b∞ with |z| <= |w| + extra maps to ∞u.w v∞, the
/// tails aligned with the image tails.
bool tuple_has_no_preimage(const BlockMap& f, const Word& u, const Word& a, const Word& v, const Word& b,
                           const Word& w, int extra = 8);

/// A radius-s map g : Y -> X with f ∘ g = ID_Y by plain backtracking.
std::optional<BlockMap> brute_section(const BlockMap& f, int s, std::uint64_t budget = 1u << 24);

/// All radius-r maps m : z -> obj with legs[i] ∘ m == cone[i]; legs must be radius 0.
std::vector<BlockMap> mediators(ShiftPtr z, ShiftPtr obj, const std::vector<BlockMap>& legs,
                                const std::vector<BlockMap>& cone, int r, std::uint64_t budget = 1u << 22);

/// CSV of engine and brute verdicts over all radius-r endomorphisms of the full shift on k symbols.
std::string census_csv(int radius, int k, const std::vector<Property>& checks, int* disagreements = nullptr);

}  // namespace sdcat::oracle
