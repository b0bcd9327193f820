#include "sp6/words.hpp"

#include <algorithm>
#include <cctype>

#include "sp6/hypergeo.hpp"

namespace sp6 {

Word Word::parse(std::string_view text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!is_letter(c)) {
      throw InvalidWord("invalid character '" + std::string(1, c) + "' at position " +
                        std::to_string(i) + " (alphabet is A, B, a, b)");
    }
    // stack reduction reaches the free normal form in one pass
    if (!w.letters_.empty() && w.letters_.back() == inverse_letter(c)) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(c);
    }
  }
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.resize(letters_.size());
  std::transform(letters_.rbegin(), letters_.rend(), w.letters_.begin(), inverse_letter);
  return w;
}

Word Word::concat(const Word& rhs) const { return parse(letters_ + rhs.letters_); }

ExactMatrix evaluate(const Word& w, const HyperCase& c) {
  ExactMatrix acc = ExactMatrix::identity(c.dimension());
  for (char l : w.letters()) {
    switch (l) {
      case 'A': acc = c.A * acc; break;
      case 'B': acc = c.B * acc; break;
      case 'a': acc = c.A_inv * acc; break;
      case 'b': acc = c.B_inv * acc; break;
    }
  }
  return acc;
}

}  // namespace sp6
