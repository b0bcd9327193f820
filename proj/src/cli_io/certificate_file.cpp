#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sp6/cli_io.hpp"

namespace sp6 {

namespace {

constexpr std::string_view kKeys[] = {"label", "alpha", "beta", "word", "omega",
                                      "expected.det_omega", "expected.x1", "expected.x2"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string join_list(const std::vector<BigRat>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

}  // namespace

Certificate read_certificate(std::istream& in) {
  std::map<std::string, std::string, std::less<>> fields;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw InputError("certificate line " + std::to_string(lineno) + ": expected 'key: value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, colon));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw InputError("certificate line " + std::to_string(lineno) + ": unknown field '" + key + "'");
    }
    if (!fields.emplace(key, trim(std::string_view(t).substr(colon + 1))).second) {
      throw InputError("certificate line " + std::to_string(lineno) + ": duplicate field '" + key + "'");
    }
  }

  auto get = [&](std::string_view key) -> const std::string* {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second;
  };
  if (!get("label") || get("label")->empty()) throw InputError("certificate has no label");
  if (!get("word")) throw InputError("certificate has no word field");
  const std::string label = *get("label");

  std::optional<Certificate> builtin;
  if (!get("alpha") || !get("beta")) {
    builtin = find_builtin(label);
    if (!builtin) {
      throw InputError("certificate '" + label + "' needs alpha and beta (not a builtin case)");
    }
  }

  try {
    Certificate c{label,
                  get("alpha") ? ParameterMultiset::parse(*get("alpha")) : builtin->alpha,
                  get("beta") ? ParameterMultiset::parse(*get("beta")) : builtin->beta,
                  *get("word"),
                  std::nullopt,
                  {}};
    if (const auto* om = get("omega")) {
      auto entries = parse_rational_list(*om);
      if (entries.size() != c.alpha.size() * c.alpha.size()) {
        throw InputError("omega has " + std::to_string(entries.size()) + " entries, expected " +
                         std::to_string(c.alpha.size() * c.alpha.size()));
      }
      c.omega = ExactMatrix(c.alpha.size(), c.alpha.size(), std::move(entries));
    }
    if (const auto* d = get("expected.det_omega")) {
      const auto v = parse_rational_list(*d);
      if (v.size() != 1 || v[0].get_den() != 1) throw InputError("expected.det_omega must be one integer");
      c.expected.det_omega = v[0].get_num();
    }
    if (const auto* x = get("expected.x1")) c.expected.x1 = ExactVector(parse_rational_list(*x));
    if (const auto* x = get("expected.x2")) c.expected.x2 = ExactVector(parse_rational_list(*x));
    return c;
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("certificate '") + label + "': " + e.what());
  }
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open certificate file " + path);
  return read_certificate(in);
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "label: " << cert.label << "\n";
  out << "alpha: " << cert.alpha.to_string() << "\n";
  out << "beta: " << cert.beta.to_string() << "\n";
  out << "word: " << cert.word << "\n";
  if (cert.omega) out << "omega: " << join_list(cert.omega->data(), " ") << "\n";
  if (cert.expected.det_omega) out << "expected.det_omega: " << cert.expected.det_omega->get_str() << "\n";
  if (cert.expected.x1) out << "expected.x1: " << join_list(cert.expected.x1->entries(), ",") << "\n";
  if (cert.expected.x2) out << "expected.x2: " << join_list(cert.expected.x2->entries(), ",") << "\n";
}

}  // namespace sp6
