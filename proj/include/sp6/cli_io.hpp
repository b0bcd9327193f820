#ifndef SP6_CLI_IO_HPP
#define SP6_CLI_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sp6/certify.hpp"

namespace sp6 {

/// Malformed user input (certificate files, flags). Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;

// ---------------------------------------------------------------- registry

std::uint64_t fnv1a64(std::string_view text);

/// Builtin certificates "C-47" and "C-55"; the witness words are checked
/// against their embedded checksums on first access.
const std::vector<Certificate>& builtin_certificates();
std::optional<Certificate> find_builtin(std::string_view label);
std::vector<std::string> builtin_labels();

/// Comma- or whitespace-separated integers or fractions.
std::vector<BigRat> parse_rational_list(std::string_view text);

// -------------------------------------------------------- certificate files

/// Line-oriented "key: value" text. Keys, in write order: label, alpha,
/// beta, word, omega (36 integers row-major), expected.det_omega,
/// expected.x1, expected.x2. '#' starts a comment line. alpha and beta may
/// be omitted when label names a builtin case.
Certificate read_certificate(std::istream& in);
Certificate load_certificate(const std::string& path);
void write_certificate(std::ostream& out, const Certificate& cert);

// ----------------------------------------------------------------- reports

/// Stable, diff-friendly text: fixed field order, exact integers in full.
std::string format_report(const VerificationReport& report);
/// Per-check results as JSON.
std::string format_report_json(const VerificationReport& report);

// --------------------------------------------------------------------- CLI

/// Entry point behind the `sp6` binary. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sp6

#endif  // SP6_CLI_IO_HPP
