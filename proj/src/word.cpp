#include "stallings/word.hpp"

#include <cctype>
#include <charconv>

#include "stallings/errors.hpp"

namespace stallings {

Alphabet::Alphabet(std::size_t r) : rank(r) {
  if (r == 0) throw InvalidInput("alphabet rank must be positive");
}

void check_letters(const Word& w, const Alphabet& a) {
  for (Letter x : w) {
    if (x.index() >= a.rank) {
      throw InvalidInput("letter index " + std::to_string(x.index()) +
                         " outside alphabet of rank " + std::to_string(a.rank));
    }
  }
}

Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter x : w) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(std::move(stack));
}

Word reduce(const Word& w, const Alphabet& a) {
  check_letters(w, a);
  return reduce(w);
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.append(v);
  return out;
}

Word multiply(const Word& u, const Word& v) { return reduce(concat(u, v)); }

Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

Word power(const Word& w, long long k) {
  if (k < 0) return power(inverse(w), -k);
  CyclicReduction cr = cyclic_reduce(w);
  Word body;
  for (long long i = 0; i < k; ++i) body.append(cr.core);
  // core is cyclically reduced, so core^k needs no further cancellation.
  return reduce(concat(concat(cr.conjugator, body), inverse(cr.conjugator)));
}

Word conjugate(const Word& w, const Word& by) {
  return reduce(concat(concat(inverse(by), w), by));
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  return is_reduced(w) && (w.size() < 2 || w.front() != w.back().inverse());
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word r = reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {Word(r.begin() + lo, r.begin() + hi), Word(r.begin(), r.begin() + lo)};
}

namespace {

bool numeric_form(const Alphabet& a) { return a.rank > 26; }

}  // namespace

std::string format_letter(Letter x, const Alphabet& a) {
  if (numeric_form(a)) return (x.is_inverse() ? "X" : "x") + std::to_string(x.index());
  char c = static_cast<char>('a' + x.index());
  return std::string(1, x.is_inverse() ? static_cast<char>(std::toupper(c)) : c);
}

std::string format_word(const Word& w, const Alphabet& a) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter x : w) out += format_letter(x, a);
  return out;
}

Word parse_word(std::string_view text, const Alphabet& a) {
  Word w;
  if (text == "1") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (numeric_form(a)) {
      if (c != 'x' && c != 'X') {
        throw InvalidInput("malformed word '" + std::string(text) + "': expected x<i> or X<i>");
      }
      std::size_t index = 0;
      const char* first = text.data() + i + 1;
      const char* last = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(first, last, index);
      if (ec != std::errc() || ptr == first) {
        throw InvalidInput("malformed word '" + std::string(text) + "': missing letter index");
      }
      if (index >= a.rank) throw InvalidInput("letter x" + std::to_string(index) + " outside alphabet");
      w.push_back(c == 'x' ? Letter::positive(index) : Letter::negative(index));
      i = static_cast<std::size_t>(ptr - text.data());
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw InvalidInput("malformed word '" + std::string(text) + "': unexpected '" + c + "'");
    }
    bool upper = std::isupper(static_cast<unsigned char>(c));
    std::size_t index = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(c)) - 'a');
    if (index >= a.rank) {
      throw InvalidInput("letter '" + std::string(1, c) + "' outside alphabet of rank " +
                         std::to_string(a.rank));
    }
    w.push_back(upper ? Letter::negative(index) : Letter::positive(index));
    ++i;
  }
  return w;
}

std::vector<Word> parse_words(std::string_view text, const Alphabet& a) {
  std::vector<Word> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_word(piece, a));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_words(const std::vector<Word>& ws, const Alphabet& a) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ',';
    out += format_word(ws[i], a);
  }
  return out;
}

}  // namespace stallings
