#include <algorithm>
#include <cctype>
#include <mutex>

#include "sp6/cli_io.hpp"

namespace sp6 {

namespace {

struct BuiltinData {
  std::string_view label;
  std::string_view alpha;
  std::string_view beta;
  std::string_view word;
  std::uint64_t word_checksum;
  std::string_view omega;
  std::string_view det_omega;
  std::string_view x1;
  std::string_view x2;
};

// The C-47 word is split across two literals.
constexpr BuiltinData kBuiltins[] = {
    {"C-47", "0,0,1/5,2/5,3/5,4/5", "1/2,1/2,1/3,1/3,2/3,2/3",
     "bbbbbaabbbbbbAAbbbbbbaabbbbbbAAbbbbbbAAbbbbbbABaBaaBBBBBBAAAbAbaaBaBaBaBaBAAAAAAABaBaB"
     "BaBabaa",
     0x0551f1fe8c6e7e50ULL,
     "0 29 -50 51 -28 1 "
     "-29 0 29 -50 51 -28 "
     "50 -29 0 29 -50 51 "
     "-51 50 -29 0 29 -50 "
     "28 -51 50 -29 0 29 "
     "-1 28 -51 50 -29 0",
     "1679616", "-5,-8,-10,-8,-5,0",
     "491566906334,537748595482,224774947812,73905511690,-18977654566,0"},
    {"C-55", "0,0,1/8,3/8,5/8,7/8", "1/2,1/2,1/12,5/12,7/12,11/12",
     "baaaabaaaabaaaabaaaabaaaabaaaabaaaaaBABaBABAAbaaB", 0xd2ea093929f6f675ULL,
     "0 1 6 3 4 5 "
     "-1 0 1 6 3 4 "
     "-6 -1 0 1 6 3 "
     "-3 -6 -1 0 1 6 "
     "-4 -3 -6 -1 0 1 "
     "-5 -4 -3 -6 -1 0",
     "4096", "-4,1,2,1,-4,0", "40999920,-275447328,-132048384,236325024,314749968,0"},
};

BigInt to_integer(const BigRat& q, std::string_view what) {
  if (q.get_den() != 1) throw InputError(std::string(what) + " must be an integer");
  return q.get_num();
}

Certificate make_builtin(const BuiltinData& d) {
  if (fnv1a64(d.word) != d.word_checksum) {
    throw std::logic_error("builtin witness word for " + std::string(d.label) +
                           " does not match its checksum");
  }
  const auto omega = parse_rational_list(d.omega);
  Certificate c{std::string(d.label), ParameterMultiset::parse(d.alpha),
                ParameterMultiset::parse(d.beta), std::string(d.word),
                ExactMatrix(6, 6, omega), {}};
  c.expected.det_omega = to_integer(parse_rational_list(d.det_omega).at(0), "det_omega");
  c.expected.x1 = ExactVector(parse_rational_list(d.x1));
  c.expected.x2 = ExactVector(parse_rational_list(d.x2));
  return c;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::vector<Certificate>& builtin_certificates() {
  static const std::vector<Certificate> certs = [] {
    std::vector<Certificate> v;
    for (const auto& d : kBuiltins) v.push_back(make_builtin(d));
    return v;
  }();
  return certs;
}

std::optional<Certificate> find_builtin(std::string_view label) {
  for (const auto& c : builtin_certificates()) {
    if (c.label == label) return c;
  }
  return std::nullopt;
}

std::vector<std::string> builtin_labels() {
  std::vector<std::string> out;
  for (const auto& d : kBuiltins) out.emplace_back(d.label);
  return out;
}

std::vector<BigRat> parse_rational_list(std::string_view text) {
  std::vector<BigRat> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const auto slash = token.find('/');
    BigInt num, den = 1;
    if (num.set_str(token.substr(0, slash), 10) != 0 ||
        (slash != std::string::npos && den.set_str(token.substr(slash + 1), 10) != 0) ||
        den == 0) {
      throw InputError("cannot parse number '" + token + "'");
    }
    out.push_back(make_rat(num, den));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace sp6
