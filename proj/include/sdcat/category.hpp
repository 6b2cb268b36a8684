#pragma once

#include <string>
#include <string_view>

#include "sdcat/blockmap.hpp"

namespace sdcat {

enum class Restriction { K, T, M, P };

/// One of the twelve categories (K/T/M/P)(1/2/3).
struct CategoryTag {
  Restriction restriction = Restriction::K;
  int level = 3;

  static CategoryTag parse(std::string_view s);  // throws ParseError
  std::string name() const;
  bool pointed() const { return restriction == Restriction::P; }
  /// Mixing objects (M and P).
  bool mixing() const { return restriction == Restriction::M || restriction == Restriction::P; }
  bool transitive() const { return restriction != Restriction::K; }
  bool operator==(const CategoryTag&) const = default;
};

/// Empty string when x is an object of cat, else the reason it is not.
std::string object_violation(const Shift& x, CategoryTag cat);
bool is_object(const Shift& x, CategoryTag cat);
/// Throws ValidationError when x is not an object of cat.
void require_object(const Shift& x, CategoryTag cat);
/// Throws ValidationError when f is not a morphism of cat.
void require_morphism(const BlockMap& f, CategoryTag cat);

}  // namespace sdcat
