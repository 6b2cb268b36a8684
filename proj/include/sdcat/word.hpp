#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sdcat {

using Word = std::vector<int>;

/// Ordered finite set of symbol tokens. Symbols are indices into the token list.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& token(int i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  /// Index of a token, or -1.
  int index(std::string_view tok) const;
  int at(std::string_view tok) const;  // throws ParseError

  /// Tokenizes by whitespace, then greedy longest match inside each chunk.
  Word parse_word(std::string_view text) const;
  /// Concatenates when every token is one character, else space-separated.
  std::string render(const Word& w) const;
  bool single_char() const { return single_char_; }

  bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  std::size_t max_len_ = 0;
  bool single_char_ = true;
};

/// Pair alphabet; symbol (a, b) has index a * |B| + b and renders as "(a,b)".
Alphabet product_alphabet(const Alphabet& a, const Alphabet& b);

/// Base-k big-endian code of a word; numeric order equals lexicographic order
/// among words of one length.
std::uint64_t encode(const Word& w, int k);
std::uint64_t encode(const int* w, int len, int k);
Word decode(std::uint64_t code, int len, int k);
/// k^len, throwing BudgetExceeded on 64-bit overflow.
std::uint64_t ipow_checked(int k, int len);

Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, int times);
Word reversed(const Word& w);
Word subword(const Word& w, int from, int len);
/// Smallest d dividing |w| with w = (w[0,d))^(|w|/d).
int least_period(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace sdcat
