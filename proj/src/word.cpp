#include "sdcat/word.hpp"

#include <algorithm>
#include <cctype>

#include "sdcat/errors.hpp"

namespace sdcat {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (int i = 0; i < size(); ++i) {
    const auto& t = tokens_[i];
    if (t.empty()) throw ValidationError("empty alphabet token");
    for (char c : t)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw ValidationError("alphabet token contains whitespace: '" + t + "'");
    if (!index_.emplace(t, i).second) throw ValidationError("duplicate alphabet token '" + t + "'");
    max_len_ = std::max(max_len_, t.size());
    if (t.size() != 1) single_char_ = false;
  }
}

int Alphabet::index(std::string_view tok) const {
  auto it = index_.find(std::string(tok));
  return it == index_.end() ? -1 : it->second;
}

int Alphabet::at(std::string_view tok) const {
  int i = index(tok);
  if (i < 0) throw ParseError("unknown symbol '" + std::string(tok) + "'");
  return i;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view chunk = text.substr(i, end - i);
    std::size_t j = 0;
    while (j < chunk.size()) {
      int found = -1;
      std::size_t flen = 0;
      for (std::size_t len = std::min(max_len_, chunk.size() - j); len >= 1; --len) {
        int idx = index(chunk.substr(j, len));
        if (idx >= 0) {
          found = idx;
          flen = len;
          break;
        }
      }
      if (found < 0)
        throw ParseError("cannot tokenize '" + std::string(chunk) + "' at offset " + std::to_string(j));
      out.push_back(found);
      j += flen;
    }
    i = end;
  }
  return out;
}

std::string Alphabet::render(const Word& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i) s += ' ';
    s += token(w[i]);
  }
  return s;
}

Alphabet product_alphabet(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> toks;
  toks.reserve(static_cast<std::size_t>(a.size()) * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) toks.push_back("(" + a.token(i) + "," + b.token(j) + ")");
  return Alphabet(std::move(toks));
}

std::uint64_t encode(const int* w, int len, int k) {
  std::uint64_t c = 0;
  for (int i = 0; i < len; ++i) c = c * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(w[i]);
  return c;
}

std::uint64_t encode(const Word& w, int k) { return encode(w.data(), static_cast<int>(w.size()), k); }

Word decode(std::uint64_t code, int len, int k) {
  Word w(len);
  for (int i = len - 1; i >= 0; --i) {
    w[i] = static_cast<int>(code % static_cast<std::uint64_t>(k));
    code /= static_cast<std::uint64_t>(k);
  }
  return w;
}

std::uint64_t ipow_checked(int k, int len) {
  std::uint64_t r = 1;
  for (int i = 0; i < len; ++i) {
    if (r > (UINT64_MAX / 2) / static_cast<std::uint64_t>(std::max(k, 1)))
      throw BudgetExceeded("word code overflow: " + std::to_string(k) + "^" + std::to_string(len));
    r *= static_cast<std::uint64_t>(k);
  }
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word repeat(const Word& w, int times) {
  Word r;
  r.reserve(w.size() * static_cast<std::size_t>(std::max(times, 0)));
  for (int i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word subword(const Word& w, int from, int len) { return Word(w.begin() + from, w.begin() + from + len); }

int least_period(const Word& w) {
  int n = static_cast<int>(w.size());
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : w) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sdcat
