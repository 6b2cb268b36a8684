#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sdcat/blockmap.hpp"
#include "sdcat/shift.hpp"

namespace sdcat {

/// Parses the .shift format:
///   alphabet: 0 1
///   kind: sft | graph | regex
///   forbidden: 11 101        (sft; repeatable)
///   allowed: 000 001         (sft alternative: allowed blocks of one length)
///   node: a b                (graph; repeatable)
///   edge: a b 1              (graph; from, to, label)
///   regex: (0|1)*            (regex)
///   point: 0                 (optional designated uniform point)
ShiftPtr parse_shift(std::string_view text, const std::string& origin = "<string>");
ShiftPtr load_shift(const std::filesystem::path& path);
std::string format_shift(const Shift& x);
void save_shift(const Shift& x, const std::filesystem::path& path);

/// Parses the .bmap format; source/target paths are relative to base_dir.
///   source: x.shift
///   target: y.shift
///   radius: 1
///   rule: 011 -> 1           (repeatable)
///   default: 0               (optional)
BlockMap parse_bmap(std::string_view text, const std::filesystem::path& base_dir,
                    const std::string& origin = "<string>");
BlockMap load_bmap(const std::filesystem::path& path);
std::string format_bmap(const BlockMap& f, const std::string& source_ref, const std::string& target_ref);
/// Writes f to path together with sibling shift files <stem>.src.shift and
/// <stem>.dst.shift (a single <stem>.obj.shift for endomorphisms).
void save_bmap(const BlockMap& f, const std::filesystem::path& path);

/// Concatenated tokens, as used inside the file formats.
std::string compact(const Alphabet& a, const Word& w);

}  // namespace sdcat
