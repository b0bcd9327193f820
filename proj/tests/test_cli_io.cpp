#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "sp6/cli_io.hpp"
#include "sp6/limitset.hpp"

using namespace sp6;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sp6");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::uint64_t pixel_hash(const std::filesystem::path& p) {
  const auto img = fixtures::read_png(p);
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size()));
}

}  // namespace

// Pixel hash of the first run of
//   sp6 render --case C-55 --depth 10 --threads 1 --width 512 --height 512
inline constexpr std::uint64_t kRender55Depth10Hash = 0x52be26188e9204beULL;

TEST_CASE("registry") {
  CHECK(builtin_labels() == std::vector<std::string>{"C-47", "C-55"});
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  const auto c47 = find_builtin("C-47");
  REQUIRE(c47);
  CHECK(*c47->omega == fixtures::omega(fixtures::kOmega47));
  CHECK(*c47->expected.det_omega == 1679616);
  CHECK(*c47->expected.x1 == fixtures::vec(fixtures::kX1_47));
  CHECK(*c47->expected.x2 == ExactVector(parse_rational_list(fixtures::kX2_47)));
  const auto c55 = find_builtin("C-55");
  REQUIRE(c55);
  CHECK(*c55->omega == fixtures::omega(fixtures::kOmega55));
  CHECK(*c55->expected.x1 == fixtures::vec(fixtures::kX1_55));
  CHECK_FALSE(find_builtin("A-1"));
}

TEST_CASE("parse_rational_list") {
  const auto v = parse_rational_list("1, -2/4  3");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == make_rat(-1, 2));
  CHECK_THROWS_AS(parse_rational_list("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational_list("x"), InputError);
}

TEST_CASE("certificate files round trip") {
  for (const auto& c : builtin_certificates()) {
    std::stringstream ss;
    write_certificate(ss, c);
    CHECK(read_certificate(ss) == c);
  }
  Certificate minimal{"C-55", ParameterMultiset::parse("0,0,1/8,3/8,5/8,7/8"),
                      ParameterMultiset::parse("1/2,1/2,1/12,5/12,7/12,11/12"), "bAB", std::nullopt, {}};
  std::stringstream ss;
  write_certificate(ss, minimal);
  CHECK(read_certificate(ss) == minimal);
}

TEST_CASE("certificate files: builtin defaults and errors") {
  std::istringstream in("# comment\nlabel: C-47\nword: Ba\n");
  const auto c = read_certificate(in);
  CHECK(c.alpha == find_builtin("C-47")->alpha);
  CHECK(c.word == "Ba");
  CHECK_FALSE(c.omega);

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    return read_certificate(s);
  };
  CHECK_THROWS_AS(bad("label: X\nword: A\n"), InputError);
  CHECK_THROWS_AS(bad("label: C-47\nword: A\nword: B\n"), InputError);
  CHECK_THROWS_AS(bad("label: C-47\nword: A\ncolor: red\n"), InputError);
  CHECK_THROWS_AS(bad("label: C-47\nword: A\nomega: 1 2 3\n"), InputError);
  CHECK_THROWS_AS(bad("label: C-47\n"), InputError);
  CHECK_THROWS_AS(bad("just text\n"), InputError);
}

TEST_CASE("report format") {
  const auto rep = verify_certificate(*find_builtin("C-47"));
  const std::string text = format_report(rep);
  CHECK(text.find("det_omega: 1679616\n") != std::string::npos);
  CHECK(text.find("pairing: 0\n") != std::string::npos);
  CHECK(text.find("x2_column: (491566906334, 537748595482, 224774947812, 73905511690, -18977654566, 0)") !=
        std::string::npos);
  CHECK(text.find("check 8 expected_values: pass") != std::string::npos);
  CHECK(text.find("verdict: PASS\n") != std::string::npos);
  CHECK(text == format_report(verify_certificate(*find_builtin("C-47"))));

  const auto j = nlohmann::json::parse(format_report_json(rep));
  CHECK(j["verdict"] == "pass");
  CHECK(j["checks"].size() == 8);
  CHECK(j["checks"][6]["name"] == "orthogonality");
  CHECK(j["x2"]["column"][0] == "491566906334");
  CHECK(j["pairing"] == "0");
}

TEST_CASE("cli poly") {
  auto r = cli({"poly", "--alpha", "0,0,1/5,2/5,3/5,4/5"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "x^6 - x^5 - x + 1\n");
  r = cli({"poly", "--alpha", "0,0,0,0,0,0"});
  CHECK(r.out == "x^6 - 6x^5 + 15x^4 - 20x^3 + 15x^2 - 6x + 1\n");
  r = cli({"poly", "--alpha", "1/5,0,0,0,0,0"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("denominator 5") != std::string::npos);
}

TEST_CASE("cli form") {
  const auto r = cli({"form", "--case", "C-55"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("det_omega: 4096") != std::string::npos);
  CHECK(r.out.find("  0 1 6 3 4 5\n") != std::string::npos);
  CHECK(cli({"form", "--case", "C-99"}).code == kExitUsage);
  CHECK(cli({"form", "--alpha", "0,0,1/5,2/5,3/5,4/5"}).code == kExitUsage);
}

TEST_CASE("cli verify") {
  auto r = cli({"verify", "--case", "C-47"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("det_omega: 1679616") != std::string::npos);
  CHECK(r.out.find("pairing: 0") != std::string::npos);
  CHECK(cli({"verify", "--case", "C-55"}).code == kExitPass);

  r = cli({"verify", "--case", "C-47", "--word", ""});
  CHECK(r.code == kExitVerifyFail);
  CHECK(r.out.find("check 6 independence: FAIL") != std::string::npos);

  r = cli({"verify", "--case", "C-55", "--json"});
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "pass");

  const auto cert_path = fixtures::temp_path("c47.cert");
  const auto report_path = fixtures::temp_path("c47.report");
  r = cli({"verify", "--case", "C-47", "--write-cert", cert_path.string(), "--report", report_path.string()});
  CHECK(r.code == kExitPass);
  CHECK(load_certificate(cert_path) == *find_builtin("C-47"));
  CHECK(count_lines(report_path) > 20);
  CHECK(cli({"verify", "--cert", cert_path.string()}).code == kExitPass);

  auto tampered = *find_builtin("C-47");
  (*tampered.omega)(2, 5) += 1;
  {
    std::ofstream f(cert_path);
    write_certificate(f, tampered);
  }
  r = cli({"verify", "--cert", cert_path.string()});
  CHECK(r.code == kExitVerifyFail);
  CHECK(r.out.find("check 2 form_preservation: FAIL") != std::string::npos);

  CHECK(cli({"verify", "--cert", "/nonexistent/file.cert"}).code == kExitUsage);
  CHECK(cli({"verify", "--case", "C-47", "--word", "AxB"}).code == kExitUsage);
  std::filesystem::remove(cert_path);
  std::filesystem::remove(report_path);
}

TEST_CASE("cli orbit and render") {
  const auto cloud = fixtures::temp_path("cloud8.txt");
  auto r = cli({"orbit", "--case", "C-47", "--depth", "8", "--out", cloud.string()});
  CHECK(r.code == kExitPass);
  CHECK(count_lines(cloud) == 13121);
  std::filesystem::remove(cloud);

  CHECK(cli({"orbit", "--case", "C-47", "--depth", "-1", "--out", cloud.string()}).code == kExitUsage);
  CHECK(cli({"orbit", "--case", "C-47", "--depth", "2"}).code == kExitUsage);
  CHECK(cli({"orbit", "--case", "C-47", "--depth", "2", "--chart", "1,2", "--out", cloud.string()}).code ==
        kExitUsage);
  CHECK(cli({"render", "--case", "C-47", "--depth", "2"}).code == kExitUsage);

  const auto img1 = fixtures::temp_path("r55_a.png");
  const auto img2 = fixtures::temp_path("r55_b.png");
  for (const auto& p : {img1, img2}) {
    r = cli({"render", "--case", "C-55", "--depth", "10", "--threads", "1", "--width", "512", "--height", "512",
             "--out", p.string()});
    REQUIRE(r.code == kExitPass);
  }
  const auto h = pixel_hash(img1);
  CHECK(h == pixel_hash(img2));
  CHECK(h == kRender55Depth10Hash);

  const auto img3 = fixtures::temp_path("r55_c.png");
  r = cli({"render", "--case", "C-55", "--depth", "10", "--threads", "4", "--width", "512", "--height", "512",
           "--out", img3.string()});
  CHECK(pixel_hash(img3) == h);

  r = cli({"render", "--case", "C-55", "--depth", "6", "--axes", "13", "--window", "-1,1,-1,1", "--out",
           img3.string()});
  CHECK(r.code == kExitPass);
  CHECK(cli({"render", "--case", "C-55", "--depth", "6", "--window", "1,-1,0,1", "--out", img3.string()}).code ==
        kExitUsage);
  for (const auto& p : {img1, img2, img3}) std::filesystem::remove(p);
}

TEST_CASE("cli search and usage errors") {
  auto r = cli({"search", "--case", "C-47", "--max-len", "4"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("witness: none") != std::string::npos);
  CHECK(cli({"search", "--case", "C-47", "--max-len", "13"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitPass);
}
