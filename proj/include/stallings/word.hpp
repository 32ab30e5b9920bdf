#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace stallings {

struct Alphabet {
  std::size_t rank;

  // Throws InvalidInput for rank 0.
  explicit Alphabet(std::size_t r);

  // Number of signed letters, 2 * rank.
  std::size_t num_codes() const noexcept { return 2 * rank; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A signed letter packed as 2*index + sign. Code order is a < A < b < B < ...,
// which is the fixed letter order used by every BFS in the library.
class Letter {
 public:
  constexpr Letter() noexcept = default;

  static constexpr Letter positive(std::size_t index) noexcept {
    return Letter(static_cast<std::uint32_t>(2 * index));
  }
  static constexpr Letter negative(std::size_t index) noexcept {
    return Letter(static_cast<std::uint32_t>(2 * index + 1));
  }
  static constexpr Letter from_code(std::uint32_t code) noexcept { return Letter(code); }

  constexpr std::uint32_t code() const noexcept { return code_; }
  constexpr std::size_t index() const noexcept { return code_ >> 1; }
  constexpr bool is_inverse() const noexcept { return (code_ & 1u) != 0; }
  constexpr Letter inverse() const noexcept { return Letter(code_ ^ 1u); }

  friend constexpr auto operator<=>(Letter, Letter) noexcept = default;

 private:
  constexpr explicit Letter(std::uint32_t code) noexcept : code_(code) {}
  std::uint32_t code_ = 0;
};

class Word {
 public:
  using value_type = Letter;
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  template <typename It>
  Word(It first, It last) : letters_(first, last) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const_iterator begin() const noexcept { return letters_.begin(); }
  const_iterator end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  void push_back(Letter x) { letters_.push_back(x); }
  void pop_back() { letters_.pop_back(); }
  void append(const Word& w) { letters_.insert(letters_.end(), w.begin(), w.end()); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  Word core;
  Word conjugator;  // reduce(conjugator * core * conjugator^-1) == reduce(w)
};

// Throws InvalidInput if some letter index is >= a.rank.
void check_letters(const Word& w, const Alphabet& a);

Word reduce(const Word& w);
Word reduce(const Word& w, const Alphabet& a);
Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);   // no reduction
Word multiply(const Word& u, const Word& v);  // reduce(u v)
Word operator*(const Word& u, const Word& v);
Word power(const Word& w, long long k);       // reduced; negative k allowed
Word conjugate(const Word& w, const Word& by);  // reduce(by^-1 w by)

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
CyclicReduction cyclic_reduce(const Word& w);

// Lowercase is positive, uppercase is the inverse. Above rank 26 letters are
// written x<i> / X<i>. The empty word prints as "1"; "1" and "" both parse to it.
Word parse_word(std::string_view text, const Alphabet& a);
std::string format_word(const Word& w, const Alphabet& a);

// Comma-separated lists, as used by the CLI.
std::vector<Word> parse_words(std::string_view text, const Alphabet& a);
std::string format_words(const std::vector<Word>& ws, const Alphabet& a);

std::string format_letter(Letter x, const Alphabet& a);

}  // namespace stallings
