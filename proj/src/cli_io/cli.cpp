#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "sp6/cli_io.hpp"
#include "sp6/limitset.hpp"

namespace sp6 {

namespace {

struct CaseFlags {
  std::string case_label;
  std::string alpha;
  std::string beta;
  std::string label = "custom";
  bool any_degree = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--case", case_label, "Builtin case label (" + join_labels() + ")");
    cmd->add_option("--alpha", alpha, "Parameter multiset alpha, e.g. 0,0,1/5,2/5,3/5,4/5");
    cmd->add_option("--beta", beta, "Parameter multiset beta");
    cmd->add_option("--label", label, "Label for a custom case");
    cmd->add_flag("--any-degree", any_degree, "Allow parameter multisets of any size");
  }

  static std::string join_labels() {
    std::string s;
    for (const auto& l : builtin_labels()) s += (s.empty() ? "" : ", ") + l;
    return s;
  }

  Certificate certificate() const {
    if (!case_label.empty()) {
      if (!alpha.empty() || !beta.empty()) throw InputError("--case excludes --alpha/--beta");
      auto c = find_builtin(case_label);
      if (!c) throw InputError("unknown case '" + case_label + "' (builtin: " + join_labels() + ")");
      return *c;
    }
    if (alpha.empty() || beta.empty()) throw InputError("give --case, or both --alpha and --beta");
    return Certificate{label, ParameterMultiset::parse(alpha), ParameterMultiset::parse(beta),
                       "", std::nullopt, {}};
  }

  HyperCase build() const {
    const Certificate c = certificate();
    return build_case(c.label, c.alpha, c.beta, BuildOptions{any_degree});
  }
};

std::vector<double> parse_doubles(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw InputError(std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers");
  }
  return out;
}

struct OrbitFlags {
  int depth = -1;
  std::string chart = "auto";
  double cutoff = 1e-3;
  unsigned threads = 0;
  std::string format = "text";
  int width = 1024;
  int height = 1024;
  std::string axes = "12";
  std::string window;
  double alpha = 0.15;

  void attach(CLI::App* cmd) {
    cmd->add_option("--depth", depth, "Maximum word length N")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--chart", chart, "Chart functional: 'auto' or six comma-separated numbers");
    cmd->add_option("--cutoff", cutoff, "Discard points with |l(v)| below this")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    cmd->add_option("--width", width, "Image width")->check(CLI::PositiveNumber);
    cmd->add_option("--height", height, "Image height")->check(CLI::PositiveNumber);
    cmd->add_option("--axes", axes, "Plotted components: 12 or 13")->check(CLI::IsMember({"12", "13"}));
    cmd->add_option("--window", window, "Viewport xmin,xmax,ymin,ymax in PC coordinates (zoom)");
    cmd->add_option("--alpha-weight", alpha, "Additive weight per point")->check(CLI::PositiveNumber);
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.orbit.depth = depth;
    c.orbit.threads = threads;
    c.orbit.cutoff = cutoff;
    if (chart != "auto") {
      const auto v = parse_doubles(chart, kDim, "--chart");
      Vec6 ell;
      std::copy(v.begin(), v.end(), ell.begin());
      c.orbit.chart = ell;
    }
    c.cloud_format = format == "binary" ? CloudFormat::binary : CloudFormat::text;
    c.render.width = width;
    c.render.height = height;
    c.render.vertical_component = axes == "13" ? 2 : 1;
    c.render.alpha = alpha;
    if (!window.empty()) {
      const auto v = parse_doubles(window, 4, "--window");
      if (!(v[1] > v[0]) || !(v[3] > v[2])) throw InputError("--window needs xmin < xmax and ymin < ymax");
      c.render.window = Viewport{v[0], v[1], v[2], v[3]};
    }
    return c;
  }
};

void print_summary(std::ostream& out, const PipelineSummary& s) {
  out << "eta_lambda1: " << s.gap.lambda1 << "\n";
  out << "spectral_gap: " << s.gap.ratio << "\n";
  out << "power_iterations: " << s.seed.iterations << "\n";
  out << "chart:";
  for (double x : s.chart_functional) out << " " << x;
  out << "\n";
  out << "emitted: " << s.emitted << "\n";
  out << "retained: " << s.retained << "\n";
  out << "retained_by_tag:";
  for (std::size_t t = 0; t < kTagCount; ++t) {
    out << " " << tag_name(static_cast<GeneratorTag>(t)) << "=" << s.retained_by_tag[t];
  }
  out << "\n";
  out << "pca_variances: " << s.pca.variances[0] << " " << s.pca.variances[1] << " "
      << s.pca.variances[2] << "\n";
  if (s.viewport) {
    out << "viewport: " << s.viewport->xmin << " " << s.viewport->xmax << " " << s.viewport->ymin
        << " " << s.viewport->ymax << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certificates and limit-set sketches for degree-six symplectic "
               "hypergeometric groups",
               "sp6"};
  app.require_subcommand(1);

  // poly
  std::string poly_alpha;
  auto* poly = app.add_subcommand("poly", "Print the polynomial of a parameter multiset");
  poly->add_option("--alpha", poly_alpha, "Parameter multiset")->required();

  // form
  CaseFlags form_case;
  auto* form = app.add_subcommand("form", "Build a case and print its invariant symplectic form");
  form_case.attach(form);

  // verify
  CaseFlags verify_case;
  std::string cert_path, report_path, write_cert_path, word_override;
  bool verify_json = false;
  bool has_word = false;
  auto* verify = app.add_subcommand("verify", "Verify an arithmeticity certificate");
  verify_case.attach(verify);
  verify->add_option("--cert", cert_path, "Certificate file");
  auto* word_opt = verify->add_option("--word", word_override, "Witness word (overrides the certificate's)");
  verify->add_flag("--json", verify_json, "Emit per-check results as JSON");
  verify->add_option("--report", report_path, "Also write the text report to this file");
  verify->add_option("--write-cert", write_cert_path, "Write the certificate that was verified");

  // orbit / render
  CaseFlags orbit_case;
  OrbitFlags orbit_flags;
  std::string orbit_out, orbit_render;
  auto* orbit = app.add_subcommand("orbit", "Enumerate the orbit and export the projected cloud");
  orbit_case.attach(orbit);
  orbit_flags.attach(orbit);
  orbit->add_option("--out", orbit_out, "Point-cloud output file");
  orbit->add_option("--format", orbit_flags.format, "Cloud format")->check(CLI::IsMember({"text", "binary"}));
  orbit->add_option("--render", orbit_render, "Also render a PNG scatter to this file");

  CaseFlags render_case;
  OrbitFlags render_flags;
  std::string render_out;
  auto* render = app.add_subcommand("render", "Render the projected orbit as a PNG scatter");
  render_case.attach(render);
  render_flags.attach(render);
  render->add_option("--out", render_out, "PNG output file")->required();

  // search
  CaseFlags search_case;
  std::size_t max_len = 4;
  std::uint64_t budget = 0;
  auto* search = app.add_subcommand("search", "Exhaustive search over short words for a witness");
  search_case.attach(search);
  search->add_option("--max-len", max_len, "Maximum word length (at most 12)")->check(CLI::Range(0, 12));
  search->add_option("--budget", budget, "Maximum number of words examined (0 = unlimited)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  has_word = word_opt->count() > 0;

  try {
    if (*poly) {
      out << parameters_to_polynomial(ParameterMultiset::parse(poly_alpha)).to_string() << "\n";
      return kExitPass;
    }

    if (*form) {
      const HyperCase hc = form_case.build();
      out << "case: " << hc.label << "\n";
      out << "f: " << hc.f.to_string() << "\n";
      out << "g: " << hc.g.to_string() << "\n";
      out << "omega:\n";
      for (std::size_t i = 0; i < hc.omega.rows(); ++i) {
        out << " ";
        for (std::size_t j = 0; j < hc.omega.cols(); ++j) out << " " << hc.omega(i, j).get_str();
        out << "\n";
      }
      out << "det_omega: " << det(hc.omega).get_str() << "\n";
      for (const auto& w : hc.warnings) out << "warning: " << w << "\n";
      return kExitPass;
    }

    if (*verify) {
      Certificate cert = [&] {
        if (!cert_path.empty()) {
          if (!verify_case.case_label.empty() || !verify_case.alpha.empty()) {
            throw InputError("--cert excludes --case/--alpha/--beta");
          }
          return load_certificate(cert_path);
        }
        return verify_case.certificate();
      }();
      if (has_word) cert.word = word_override;
      const HyperCase hc =
          build_case(cert.label, cert.alpha, cert.beta, BuildOptions{verify_case.any_degree});
      const VerificationReport rep = verify_certificate(cert, hc);
      const std::string text = format_report(rep);
      out << (verify_json ? format_report_json(rep) : text);
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!(f << text)) throw InputError("cannot write report to " + report_path);
      }
      if (!write_cert_path.empty()) {
        std::ofstream f(write_cert_path);
        write_certificate(f, cert);
        if (!f) throw InputError("cannot write certificate to " + write_cert_path);
      }
      return rep.verdict ? kExitPass : kExitVerifyFail;
    }

    if (*orbit || *render) {
      const bool is_render = render->parsed();
      const HyperCase hc = (is_render ? render_case : orbit_case).build();
      PipelineConfig cfg = (is_render ? render_flags : orbit_flags).config();
      if (is_render) {
        cfg.image_out = render_out;
      } else {
        if (orbit_out.empty() && orbit_render.empty()) {
          throw InputError("orbit needs --out and/or --render");
        }
        if (!orbit_out.empty()) cfg.cloud_out = orbit_out;
        if (!orbit_render.empty()) cfg.image_out = orbit_render;
      }
      print_summary(out, run_pipeline(hc, cfg));
      return kExitPass;
    }

    if (*search) {
      const HyperCase hc = search_case.build();
      const SearchResult r = search_witness(hc, max_len, budget);
      out << "examined: " << r.examined << "\n";
      if (r.word) {
        out << "witness: " << r.word->letters() << "\n";
      } else {
        out << "witness: none" << (r.budget_exhausted ? " (budget exhausted)" : "") << "\n";
      }
      return kExitPass;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sp6
