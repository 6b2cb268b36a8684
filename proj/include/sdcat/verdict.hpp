#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "sdcat/blockmap.hpp"

namespace sdcat {

enum class Answer { Yes, No, Undecided };

std::string to_string(Answer a);
/// CLI exit code: 0 yes, 1 no, 2 undecided.
int exit_code(Answer a);

/// Three-valued decision result with optional certificate and witness.
struct Verdict {
  Answer answer = Answer::Undecided;
  std::string note;
  nlohmann::json certificate;  // null when absent
  nlohmann::json witness;      // null when absent
  nlohmann::json bound;        // caps used, null when exact
  std::optional<BlockMap> certificate_map;

  static Verdict yes(std::string note = {});
  static Verdict no(std::string note = {});
  static Verdict undecided(std::string note = {});

  bool is_yes() const { return answer == Answer::Yes; }
  bool is_no() const { return answer == Answer::No; }
  bool is_undecided() const { return answer == Answer::Undecided; }
  Verdict& with_witness(nlohmann::json w) {
    witness = std::move(w);
    return *this;
  }
  Verdict& with_certificate(nlohmann::json c) {
    certificate = std::move(c);
    return *this;
  }
  Verdict& with_bound(nlohmann::json b) {
    bound = std::move(b);
    return *this;
  }
};

nlohmann::json to_json(const Verdict& v);
Verdict from_bool(bool b, std::string note = {});

}  // namespace sdcat
