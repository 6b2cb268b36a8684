#include "sdcat/verdict.hpp"

namespace sdcat {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "YES";
    case Answer::No:
      return "NO";
    default:
      return "UNDECIDED";
  }
}

int exit_code(Answer a) {
  switch (a) {
    case Answer::Yes:
      return 0;
    case Answer::No:
      return 1;
    default:
      return 2;
  }
}

Verdict Verdict::yes(std::string note) {
  Verdict v;
  v.answer = Answer::Yes;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::no(std::string note) {
  Verdict v;
  v.answer = Answer::No;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::undecided(std::string note) {
  Verdict v;
  v.answer = Answer::Undecided;
  v.note = std::move(note);
  return v;
}

Verdict from_bool(bool b, std::string note) { return b ? Verdict::yes(std::move(note)) : Verdict::no(std::move(note)); }

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["answer"] = to_string(v.answer);
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.certificate.is_null()) j["certificate"] = v.certificate;
  if (!v.witness.is_null()) j["witness"] = v.witness;
  if (!v.bound.is_null()) j["bound"] = v.bound;
  return j;
}

}  // namespace sdcat
