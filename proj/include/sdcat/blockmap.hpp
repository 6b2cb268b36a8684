#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sdcat/shift.hpp"

namespace sdcat {

/// Index of a sorted set of word codes; dense when k^len is small.
class WordIndex {
 public:
  WordIndex() = default;
  WordIndex(std::vector<std::uint64_t> sorted_codes, int k, int len);

  int size() const { return static_cast<int>(codes_.size()); }
  /// Position of a code, or -1.
  int find(std::uint64_t code) const;
  int find(const Word& w) const { return find(encode(w, k_)); }
  int find(const int* w) const { return find(encode(w, len_, k_)); }
  std::uint64_t code(int i) const { return codes_[i]; }
  Word word(int i) const { return decode(codes_[i], len_, k_); }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  int length() const { return len_; }

 private:
  std::vector<std::uint64_t> codes_;
  std::vector<int> dense_;
  std::unordered_map<std::uint64_t, int> sparse_;
  int k_ = 0;
  int len_ = 0;
  bool is_dense_ = false;
};

/// B_len(X) as a WordIndex.
WordIndex block_index(const Shift& x, int len);

/// Graph whose bi-infinite paths are the points of X, each edge labeled by
/// the index (in B_m(X)) of the m-window ending at that edge.
struct WindowGraph {
  int m = 1;
  WordIndex windows;
  LabeledGraph graph;
};
WindowGraph window_graph(const Shift& x, int m);

/// Sliding block code with a total local rule on B_{2r+1}(source).
class BlockMap {
 public:
  BlockMap(ShiftPtr source, ShiftPtr target, int radius, std::vector<int> rule);

  static BlockMap from_function(ShiftPtr source, ShiftPtr target, int radius,
                                const std::function<int(const Word&)>& rule);
  /// Completes a partial rule with an optional default; rejects words outside B(source).
  static BlockMap from_rules(ShiftPtr source, ShiftPtr target, int radius, const std::map<Word, int>& rules,
                             std::optional<int> default_symbol);
  static BlockMap identity(ShiftPtr x);
  static BlockMap constant(ShiftPtr source, ShiftPtr target, int symbol);
  /// Identity rule into a shift over the same alphabet.
  static BlockMap inclusion(ShiftPtr sub, ShiftPtr ambient);

  const ShiftPtr& source() const { return src_; }
  const ShiftPtr& target() const { return dst_; }
  int radius() const { return r_; }
  int window() const { return 2 * r_ + 1; }
  const WordIndex& domain() const { return dom_; }
  const std::vector<int>& rule() const { return rule_; }
  /// Rule value on a window, or -1 when the window is outside B_{2r+1}(source).
  int local(const Word& w) const;
  int local(const int* w) const;

  /// Image of a finite word (length shrinks by 2r).
  Word apply(const Word& w) const;
  PeriodicPoint apply(const PeriodicPoint& x) const;

  BlockMap with_target(ShiftPtr target) const;
  BlockMap with_source(ShiftPtr source) const;
  BlockMap padded(int radius) const;
  /// Equal map at the least radius.
  BlockMap reduced() const;

 private:
  ShiftPtr src_, dst_;
  int r_ = 0;
  WordIndex dom_;
  std::vector<int> rule_;
};

/// x[from, to) of ∞u.wv∞.
Word ep_window(const EventuallyPeriodicPoint& p, long from, long to);
/// f(x)[from, to).
Word apply_window(const BlockMap& f, const EventuallyPeriodicPoint& x, long from, long to);
/// Equality of f(x) and g(y) as points.
bool images_equal(const BlockMap& f, const EventuallyPeriodicPoint& x, const BlockMap& g,
                  const EventuallyPeriodicPoint& y);
bool points_equal(const EventuallyPeriodicPoint& x, const EventuallyPeriodicPoint& y);

/// f(X) presented by relabeling the window graph of the source.
ShiftPtr image_shift(const BlockMap& f);

BlockMap compose(const BlockMap& g, const BlockMap& f);
bool maps_equal(const BlockMap& f, const BlockMap& g);
BlockMap mirror(const BlockMap& f);

/// Checks that the image lies in the target, and point preservation when requested.
void validate(const BlockMap& f, bool pointed = false);
bool preserves_point(const BlockMap& f);

struct Recoding {
  BlockMap symbol_map;  // radius 0 on the higher-block shift
  BlockMap conj;        // source -> higher-block shift
  BlockMap conj_inv;    // higher-block shift -> source
};
Recoding recode_to_symbol_map(const BlockMap& f);
/// Higher-block presentation X^[m] with one symbol per word of B_m(X).
ShiftPtr higher_block(const Shift& x, int m);

}  // namespace sdcat
