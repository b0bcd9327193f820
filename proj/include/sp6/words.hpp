#ifndef SP6_WORDS_HPP
#define SP6_WORDS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "sp6/exactmath.hpp"

namespace sp6 {

struct HyperCase;

class InvalidWord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Letter of the alphabet {A, B, a, b}; lowercase is the inverse.
constexpr bool is_letter(char c) { return c == 'A' || c == 'B' || c == 'a' || c == 'b'; }
constexpr char inverse_letter(char c) {
  switch (c) {
    case 'A': return 'a';
    case 'a': return 'A';
    case 'B': return 'b';
    case 'b': return 'B';
    default: return c;
  }
}

/// Freely reduced word over {A, B, a, b}.
class Word {
 public:
  Word() = default;

  /// Reduces `text` to its free normal form. ASCII whitespace is skipped so
  /// that words wrapped over several lines parse; any other character
  /// outside the alphabet throws InvalidWord.
  static Word parse(std::string_view text);

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  /// Reduced concatenation: this word followed by `rhs`.
  Word concat(const Word& rhs) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

inline Word parse_and_reduce(std::string_view text) { return Word::parse(text); }
inline Word invert(const Word& w) { return w.inverse(); }

/// M(w) = M(l_k) ... M(l_1) for w = l_1 ... l_k, with M(a) = A^{-1},
/// M(b) = B^{-1}.
ExactMatrix evaluate(const Word& w, const HyperCase& c);

}  // namespace sp6

#endif  // SP6_WORDS_HPP
