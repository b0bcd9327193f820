#include <json.hpp>
#include <sstream>

#include "sp6/cli_io.hpp"

namespace sp6 {

namespace {

nlohmann::json vector_json(const ExactVector& v) {
  auto a = nlohmann::json::array();
  for (const auto& e : v.entries()) a.push_back(e.get_str());
  return a;
}

}  // namespace

std::string format_report(const VerificationReport& r) {
  std::ostringstream os;
  os << "certificate: " << r.label << "\n";
  os << "word: " << r.word << "\n";
  os << "word_length: " << r.word.size() << "\n";
  for (const auto& c : r.checks) {
    os << "check " << c.index << " " << c.name << ": " << to_string(c.status);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  if (r.omega) {
    os << "omega:\n";
    for (std::size_t i = 0; i < r.omega->rows(); ++i) {
      os << "  ";
      for (std::size_t j = 0; j < r.omega->cols(); ++j) {
        if (j) os << " ";
        os << (*r.omega)(i, j).get_str();
      }
      os << "\n";
    }
  }
  os << "det_omega: " << (r.det_omega ? r.det_omega->get_str() : "-") << "\n";
  auto transvection = [&](const char* idx, const std::optional<TransvectionData>& t) {
    if (!t) {
      os << "x" << idx << ": -\n";
      return;
    }
    os << "x" << idx << ": " << t->direction.to_string() << "\n";
    os << "x" << idx << "_column: " << t->image_column.to_string() << "\n";
    os << "lambda" << idx << ": " << t->lambda.get_str() << "\n";
  };
  transvection("1", r.t1);
  transvection("2", r.t2);
  os << "pairing: " << (r.pairing ? r.pairing->get_str() : "-") << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  os << "assumption: " << kZariskiAssumption << "\n";
  os << "verdict: " << (r.verdict ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string format_report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["certificate"] = r.label;
  j["word"] = r.word;
  j["word_length"] = r.word.size();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"index", c.index},
                      {"name", c.name},
                      {"status", std::string(to_string(c.status))},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  if (r.omega) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < r.omega->rows(); ++i) rows.push_back(vector_json(r.omega->row(i)));
    j["omega"] = rows;
  }
  j["det_omega"] = r.det_omega ? nlohmann::json(r.det_omega->get_str()) : nlohmann::json();
  auto tj = [](const std::optional<TransvectionData>& t) {
    if (!t) return nlohmann::ordered_json();
    nlohmann::ordered_json o;
    o["direction"] = vector_json(t->direction);
    o["column"] = vector_json(t->image_column);
    o["lambda"] = t->lambda.get_str();
    return o;
  };
  j["x1"] = tj(r.t1);
  j["x2"] = tj(r.t2);
  j["pairing"] = r.pairing ? nlohmann::json(r.pairing->get_str()) : nlohmann::json();
  j["warnings"] = r.warnings;
  j["assumption"] = std::string(kZariskiAssumption);
  j["verdict"] = r.verdict ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace sp6
