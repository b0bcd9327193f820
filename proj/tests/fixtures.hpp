#ifndef SP6_TESTS_FIXTURES_HPP
#define SP6_TESTS_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sp6/certify.hpp"
#include "sp6/cli_io.hpp"
#include "sp6/hypergeo.hpp"
#include "sp6/words.hpp"

namespace fixtures {

// Reference values.
inline constexpr long kOmega47[36] = {0,   29,  -50, 51,  -28, 1,   -29, 0,   29,  -50, 51,  -28,
                                      50,  -29, 0,   29,  -50, 51,  -51, 50,  -29, 0,   29,  -50,
                                      28,  -51, 50,  -29, 0,   29,  -1,  28,  -51, 50,  -29, 0};
inline constexpr long kOmega55[36] = {0,  1,  6,  3,  4,  5,  -1, 0,  1,  6,  3,  4,
                                      -6, -1, 0,  1,  6,  3,  -3, -6, -1, 0,  1,  6,
                                      -4, -3, -6, -1, 0,  1,  -5, -4, -3, -6, -1, 0};
inline constexpr long kF47[7] = {1, -1, 0, 0, 0, -1, 1};
inline constexpr long kG47[7] = {1, 4, 8, 10, 8, 4, 1};
inline constexpr long kF55[7] = {1, -2, 1, 0, 1, -2, 1};
inline constexpr long kG55[7] = {1, 2, 0, -2, 0, 2, 1};
inline constexpr long kX1_47[6] = {-5, -8, -10, -8, -5, 0};
inline constexpr long kX1_55[6] = {-4, 1, 2, 1, -4, 0};
inline constexpr const char* kX2_47 =
    "491566906334,537748595482,224774947812,73905511690,-18977654566,0";
inline constexpr const char* kX2_55 = "40999920,-275447328,-132048384,236325024,314749968,0";

// Computed independently with a computer algebra system.
inline constexpr long kX2Primitive47[6] = {1002449, 1096627, 458382, 150715, -38701, 0};
inline constexpr long kX2Primitive55[6] = {3865, -25966, -12448, 22278, 29671, 0};
inline constexpr long kX2Content47 = 490366;
inline constexpr long kX2Content55 = 10608;
inline constexpr long kLambda47Den = 36;  // lambda = -1/36
inline constexpr long kLambda55Den = 8;   // lambda = -1/8
inline constexpr long kEtaCharPoly47[7] = {1, 14, 24, 30, 24, 14, 1};
inline constexpr long kEtaCharPoly55[7] = {1, 10, -2, -6, -2, 10, 1};
inline constexpr double kEtaLambda47 = -12.225036936171986;
inline constexpr double kEtaLambda55 = -10.141723601610014;
inline constexpr double kEtaRatio47 = 12.225036936171982;
inline constexpr double kEtaRatio55 = 10.141723601610003;

// Produced by this implementation and frozen.
inline constexpr const char* kWordBFirstFailure = "commutation";
inline constexpr std::uint64_t kSearch47Len4Examined = 160;

inline sp6::IntPoly poly(const long (&c)[7]) {
  std::vector<sp6::BigInt> v(std::begin(c), std::end(c));
  return sp6::IntPoly(std::move(v));
}

inline sp6::ExactVector vec(const long (&c)[6]) { return sp6::ExactVector::from_ints(c); }

inline sp6::ExactMatrix omega(const long (&c)[36]) { return sp6::ExactMatrix::from_ints(6, 6, c); }

inline const sp6::HyperCase& case47() {
  static const sp6::HyperCase hc = [] {
    const auto c = *sp6::find_builtin("C-47");
    return sp6::build_case(c.label, c.alpha, c.beta);
  }();
  return hc;
}

inline const sp6::HyperCase& case55() {
  static const sp6::HyperCase hc = [] {
    const auto c = *sp6::find_builtin("C-55");
    return sp6::build_case(c.label, c.alpha, c.beta);
  }();
  return hc;
}

inline sp6::Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  static constexpr char kLetters[] = {'A', 'B', 'a', 'b'};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s(len(rng), ' ');
  for (auto& c : s) c = kLetters[pick(rng)];
  return sp6::Word::parse(s);
}

struct DecodedPng {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
};

DecodedPng read_png(const std::filesystem::path& path);

inline std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sp6_test_" + name);
}

}  // namespace fixtures

#endif  // SP6_TESTS_FIXTURES_HPP
