#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdcat/analysis.hpp"
#include "sdcat/category.hpp"

namespace sdcat {

enum class LimitStatus { Exists, NotExists, Undecided };

std::string to_string(LimitStatus s);

/// A constructed cone (or cocone) and its status.
struct LimitResult {
  LimitStatus status = LimitStatus::Undecided;
  std::string reason;
  ShiftPtr object;
  std::vector<BlockMap> legs;
  nlohmann::json bound;  // caps used, null when exact

  bool exists() const { return status == LimitStatus::Exists; }
  static LimitResult not_exists(std::string why);
  static LimitResult undecided(std::string why, nlohmann::json bound = nullptr);
};

nlohmann::json to_json(const LimitResult& r);

LimitResult terminal(CategoryTag cat);
LimitResult initial(CategoryTag cat);
/// Legs are the projections p1, p2.
LimitResult product(ShiftPtr x, ShiftPtr y, CategoryTag cat);
/// Legs are the injections.
LimitResult coproduct(ShiftPtr x, ShiftPtr y, CategoryTag cat);
/// One leg: the inclusion into the common source.
LimitResult equalizer(const BlockMap& f, const BlockMap& g, CategoryTag cat);
/// Legs are the projections to the sources of f and g.
LimitResult pullback(const BlockMap& f, const BlockMap& g, CategoryTag cat);
LimitResult kernel_pair(const BlockMap& f, CategoryTag cat);

/// The unique u : f(X) -> target(g) with u ∘ f = g, searching radii up to radius_cap.
std::optional<BlockMap> connecting_map(const BlockMap& f, const BlockMap& g, int radius_cap = 6);

/// Legs are e (onto the image) and m (the inclusion), with m ∘ e = f.
LimitResult image_factorization(const BlockMap& f, CategoryTag cat, int window_cap = 8);

/// Inclusion of the union of the images of two injective maps into X.
BlockMap subobject_union(const BlockMap& i1, const BlockMap& i2);

/// The map W -> rel with coordinates (h1, h2); throws ValidationError when
/// the pair does not land in rel.
BlockMap pairing(const BlockMap& h1, const BlockMap& h2, const ShiftPtr& rel);
/// h with its target narrowed to sub (the mediating map into a subobject).
BlockMap corestrict(const BlockMap& h, const ShiftPtr& sub);

}  // namespace sdcat
