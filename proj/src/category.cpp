#include "sdcat/category.hpp"

#include "sdcat/analysis.hpp"
#include "sdcat/errors.hpp"

namespace sdcat {

CategoryTag CategoryTag::parse(std::string_view s) {
  if (s.size() != 2) throw ParseError("bad category tag '" + std::string(s) + "'");
  CategoryTag t;
  switch (s[0]) {
    case 'K':
      t.restriction = Restriction::K;
      break;
    case 'T':
      t.restriction = Restriction::T;
      break;
    case 'M':
      t.restriction = Restriction::M;
      break;
    case 'P':
      t.restriction = Restriction::P;
      break;
    default:
      throw ParseError("bad category tag '" + std::string(s) + "'");
  }
  if (s[1] < '1' || s[1] > '3') throw ParseError("bad category tag '" + std::string(s) + "'");
  t.level = s[1] - '0';
  return t;
}

std::string CategoryTag::name() const {
  const char* r = "KTMP";
  return std::string(1, r[static_cast<int>(restriction)]) + std::to_string(level);
}

std::string object_violation(const Shift& x, CategoryTag cat) {
  if (cat.level <= 2 && !is_sft(x).is_yes()) return "not of finite type";
  if (x.is_empty()) {
    // The empty shift is an object of K and M but not of T or P.
    if (cat.restriction == Restriction::T) return "empty shift is not transitive";
    if (cat.pointed()) return "empty shift has no uniform point";
    return {};
  }
  if (cat.restriction == Restriction::T && !is_transitive(x)) return "not transitive";
  if (cat.mixing() && !is_mixing(x)) return "not mixing";
  if (cat.pointed() && !x.point()) return "no designated uniform point";
  return {};
}

bool is_object(const Shift& x, CategoryTag cat) { return object_violation(x, cat).empty(); }

void require_object(const Shift& x, CategoryTag cat) {
  auto why = object_violation(x, cat);
  if (!why.empty()) throw ValidationError("not an object of " + cat.name() + ": " + why);
}

void require_morphism(const BlockMap& f, CategoryTag cat) {
  require_object(*f.source(), cat);
  if (f.target() != f.source()) require_object(*f.target(), cat);
  if (cat.level == 1 && !same_language(*f.source(), *f.target()))
    throw ValidationError(cat.name() + " morphisms are endomorphisms");
  if (cat.pointed() && !preserves_point(f)) throw ValidationError(cat.name() + " morphisms preserve the uniform point");
}

}  // namespace sdcat
