// Command line front end: parse the file formats, run the pipeline stages,
// and print deterministic reports.  Exit codes: 0 success, 1 parse or
// validation failure, 2 resource limit hit.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plusctl/chain.hpp"
#include "plusctl/errors.hpp"
#include "plusctl/extract.hpp"
#include "plusctl/json_io.hpp"
#include "plusctl/kernel.hpp"
#include "plusctl/obstruct.hpp"
#include "plusctl/plus.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/words.hpp"

namespace {

using namespace plusctl;

struct CommonOpts {
  std::size_t max_cosets = kDefaultMaxCosets;
  std::string format = "text";
  std::string out;
  unsigned long long seed = 0;  // accepted for reproducible reruns; nothing here is randomized
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--max-cosets", o.max_cosets, "Coset enumeration limit")
      ->envname("PLUSCTL_MAX_COSETS");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_str("text");
  cmd->add_option("--out", o.out, "Write the command's JSON artifact to this file");
  cmd->add_option("--seed", o.seed, "Seed echoed into reruns for byte-identical output");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file '" + path + "'");
  out << text;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

Coefficients parse_coeff(const std::string& s) {
  if (s == "trivial") return Coefficients::trivial;
  if (s == "regular") return Coefficients::regular;
  throw ValidationError("unknown coefficients '" + s + "'");
}

std::string invariant_factor_line(const std::vector<Int>& factors) {
  if (factors.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ' ';
    s += factors[i].str();
  }
  return s;
}

Json homology_json(const AlgebraicComplex& c, Coefficients co,
                   std::optional<long long> deg) {
  Json groups = Json::array();
  if (deg.has_value()) {
    groups.push_back(
        {{"degree", *deg}, {"group", homology(c, co, *deg).to_string()}});
  } else {
    for (std::size_t d = 0; d < c.ranks.size(); ++d)
      groups.push_back({{"degree", d},
                        {"group", homology(c, co, static_cast<long long>(d)).to_string()}});
  }
  return groups;
}

void homology_text(std::ostream& os, const AlgebraicComplex& c, Coefficients co,
                   std::optional<long long> deg, const std::string& indent) {
  if (deg.has_value()) {
    os << indent << "H_" << *deg << " = " << homology(c, co, *deg).to_string() << "\n";
    return;
  }
  for (std::size_t d = 0; d < c.ranks.size(); ++d)
    os << indent << "H_" << d << " = "
       << homology(c, co, static_cast<long long>(d)).to_string() << "\n";
}

void emit_report(const CommonOpts& o, const std::string& text, const Json& report) {
  if (o.format == "json")
    std::cout << json_render(report);
  else
    std::cout << text;
}

// Shared text block for every command that carries a plus complex.
void plus_summary(std::ostream& os, const PlusComplex& pc) {
  os << "realization order: " << pc.realization->order() << "\n";
  os << "full ranks:";
  for (std::size_t r : pc.full.ranks) os << ' ' << r;
  os << "\n";
  os << "added cells: " << pc.added_cells() << "\n";
  os << "chi = " << euler_characteristic(pc.full.ranks) << "\n";
  os << "homology (trivial coefficients):\n";
  homology_text(os, pc.full, Coefficients::trivial, std::nullopt, "  ");
  os << "homology (regular coefficients):\n";
  homology_text(os, pc.full, Coefficients::regular, std::nullopt, "  ");
}

Json plus_summary_json(const PlusComplex& pc) {
  Json j;
  j["order"] = pc.realization->order();
  j["full_ranks"] = pc.full.ranks;
  j["added_cells"] = pc.added_cells();
  j["chi"] = euler_characteristic(pc.full.ranks);
  j["homology_trivial"] = homology_json(pc.full, Coefficients::trivial, std::nullopt);
  j["homology_regular"] = homology_json(pc.full, Coefficients::regular, std::nullopt);
  return j;
}

int run_homology(const std::string& input, const CommonOpts& o, const std::string& coeff,
                 std::optional<long long> deg) {
  const std::string text = read_file(input);
  const Coefficients co = parse_coeff(coeff);
  AlgebraicComplex c;
  if (looks_like_json(text)) {
    const PlusComplex pc = plus_from_json(json_parse(text));
    c = pc.full;
  } else {
    const Presentation p = parse_presentation(text);
    c = cayley_complex(p, share(todd_coxeter(p, o.max_cosets)));
  }

  std::ostringstream os;
  os << "coefficients: " << to_string(co) << "\n";
  os << "realization order: " << c.realization->order() << "\n";
  homology_text(os, c, co, deg, "");

  Json report;
  report["command"] = "homology";
  report["coefficients"] = to_string(co);
  report["order"] = c.realization->order();
  report["groups"] = homology_json(c, co, deg);
  emit_report(o, os.str(), report);
  if (!o.out.empty()) write_file(o.out, json_render(report));
  return 0;
}

int run_plus(const std::string& input, const std::string& kernel_path, const CommonOpts& o) {
  const Presentation p = parse_presentation(read_file(input));
  KernelSpec ks;
  if (!kernel_path.empty()) ks = parse_kernel_spec(read_file(kernel_path), p);

  Presentation quotiented = p;
  for (const Word& k : ks.kernel_words) quotiented.relators.push_back(k);
  const RealizationPtr quotient = share(todd_coxeter(quotiented, o.max_cosets));
  const PlusComplex pc = build_plus_complex(p, quotient, ks, o.max_cosets);

  std::ostringstream os;
  plus_summary(os, pc);
  Json report = plus_summary_json(pc);
  report["command"] = "plus";
  emit_report(o, os.str(), report);
  if (!o.out.empty()) write_file(o.out, json_render(plus_to_json(pc)));
  return 0;
}

int run_perfect(const std::string& input, const CommonOpts& o) {
  const SesSpec s = parse_ses_spec(read_file(input), o.max_cosets);
  PerfectnessCertificate cert;
  std::string subject;
  int order = 0;
  if (s.kernel.kernel_words.empty()) {
    subject = "presented group";
    cert = is_perfect(s.eps);
    order = s.quotient->order();  // quotient of nothing: the group itself
  } else {
    subject = "kernel of the quotient map";
    cert = is_perfect(reidemeister_schreier(s.eps, s.quotient));
    order = s.quotient->order();
  }

  std::ostringstream os;
  os << "subject: " << subject << "\n";
  os << "realization order: " << order << "\n";
  os << "H_1 = " << cert.h1.to_string() << "\n";
  os << "invariant factors: " << invariant_factor_line(cert.invariant_factors) << "\n";
  os << "perfect: " << (cert.perfect ? "yes" : "no") << "\n";

  Json report;
  report["command"] = "perfect";
  report["subject"] = subject;
  report["order"] = order;
  report["h1"] = cert.h1.to_string();
  Json factors = Json::array();
  for (const Int& f : cert.invariant_factors) factors.push_back(f.str());
  report["invariant_factors"] = std::move(factors);
  report["perfect"] = cert.perfect;
  emit_report(o, os.str(), report);
  if (!o.out.empty()) write_file(o.out, json_render(report));
  return 0;
}

int run_extract(const std::string& input, const CommonOpts& o) {
  const CellThreeComplex x = cell_three_from_json(json_parse(read_file(input)), o.max_cosets);
  const ThreeComplexReport check = validate_three_complex(x, o.max_cosets);
  if (!check.ok) {
    for (const std::string& f : check.failures) std::cerr << "error: " << f << "\n";
    return 1;
  }
  const StabilizedComplex sx = stabilize(x, *check.phi);
  const PartialPresentationResult derived = derive_partial_presentation(sx);
  const RoundTripReport rt = round_trip_verify(x, derived, o.max_cosets);
  if (!rt.ok) {
    for (const std::string& f : rt.failures) std::cerr << "error: " << f << "\n";
    return 1;
  }

  std::ostringstream os;
  os << "realization order: " << x.quotient->order() << "\n";
  os << "three cells: " << x.three_cells() << "\n";
  os << "derived presentation: " << serialize_presentation(derived.eps) << "\n";
  os << "kernel relators: " << derived.kernel_relators.size() << "\n";
  os << "round trip: ok\n";
  os << "chi = " << rt.euler << "\n";

  Json report;
  report["command"] = "extract";
  report["order"] = x.quotient->order();
  report["three_cells"] = x.three_cells();
  report["derived_presentation"] = presentation_to_json(derived.eps);
  report["kernel_relators"] = derived.kernel_relators.size();
  report["round_trip"] = "ok";
  report["chi"] = rt.euler;
  emit_report(o, os.str(), report);
  if (!o.out.empty()) write_file(o.out, json_render(plus_to_json(rt.rebuilt)));
  return 0;
}

int run_obstruct(const std::string& input, const CommonOpts& o, bool construct) {
  const SesSpec s = parse_ses_spec(read_file(input), o.max_cosets);
  const ObstructionReport r = check_inequality(s);

  std::ostringstream os;
  os << "realization order: " << s.quotient->order() << "\n";
  os << "Def(presentation) = " << r.def_eps << "\n";
  os << "chi = " << r.chi << "\n";
  os << "rk bounds: [" << r.rk.lower << ", " << r.rk.upper << "]\n";
  if (r.asserted_def_E.has_value()) os << "asserted Def(E) = " << *r.asserted_def_E << "\n";
  if (r.asserted_def_G.has_value()) os << "asserted Def(G) = " << *r.asserted_def_G << "\n";
  os << "conclusion: " << to_string(r.conclusion) << "\n";
  for (const std::string& n : r.notes) os << "note: " << n << "\n";

  Json report;
  report["command"] = "obstruct";
  report["order"] = s.quotient->order();
  report["def_presentation"] = r.def_eps;
  report["chi"] = r.chi;
  report["rk_lower"] = r.rk.lower;
  report["rk_upper"] = r.rk.upper;
  if (r.asserted_def_E.has_value()) report["asserted_def_E"] = *r.asserted_def_E;
  if (r.asserted_def_G.has_value()) report["asserted_def_G"] = *r.asserted_def_G;
  report["conclusion"] = to_string(r.conclusion);
  report["notes"] = r.notes;

  std::optional<CandidateReport> candidate;
  if (construct) {
    candidate = construct_candidate(s, o.max_cosets);
    os << "candidate chi = " << candidate->chi << "\n";
    os << "kernel H_1 = " << candidate->certificate.h1.to_string() << "\n";
    os << "kernel invariant factors: "
       << invariant_factor_line(candidate->certificate.invariant_factors) << "\n";
    os << "perfectness: verified\n";
    plus_summary(os, candidate->complex);
    Json cj = plus_summary_json(candidate->complex);
    cj["kernel_h1"] = candidate->certificate.h1.to_string();
    Json factors = Json::array();
    for (const Int& f : candidate->certificate.invariant_factors) factors.push_back(f.str());
    cj["kernel_invariant_factors"] = std::move(factors);
    report["candidate"] = std::move(cj);
  }

  emit_report(o, os.str(), report);
  if (!o.out.empty()) {
    if (candidate.has_value())
      write_file(o.out, json_render(plus_to_json(candidate->complex)));
    else
      write_file(o.out, json_render(report));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain level plus construction toolkit"};
  app.require_subcommand(1);

  std::string input, coeff = "trivial", kernel_path;
  std::optional<long long> deg;
  bool construct = false;
  CommonOpts opts;

  CLI::App* homology_cmd =
      app.add_subcommand("homology", "Homology of a presentation or stored complex");
  homology_cmd->add_option("input", input, "Presentation file or plus-complex JSON")
      ->required();
  homology_cmd->add_option("--coeff", coeff, "Coefficients")
      ->check(CLI::IsMember({"trivial", "regular"}));
  homology_cmd->add_option("--deg", deg, "Report a single degree");
  add_common(homology_cmd, opts);

  CLI::App* plus_cmd = app.add_subcommand("plus", "Build the extended complex");
  plus_cmd->add_option("input", input, "Presentation file")->required();
  plus_cmd->add_option("--kernel", kernel_path, "Kernel spec file");
  add_common(plus_cmd, opts);

  CLI::App* perfect_cmd =
      app.add_subcommand("perfect", "Perfectness certificate for a group or kernel");
  perfect_cmd->add_option("input", input, "Presentation file with optional kernel lines")
      ->required();
  add_common(perfect_cmd, opts);

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Derive a presentation from a three complex");
  extract_cmd->add_option("input", input, "Cell three complex JSON file")->required();
  add_common(extract_cmd, opts);

  CLI::App* obstruct_cmd =
      app.add_subcommand("obstruct", "Deficiency bounds and the obstruction inequality");
  obstruct_cmd->add_option("input", input, "Sequence spec file")->required();
  obstruct_cmd->add_flag("--construct", construct, "Also build the candidate complex");
  add_common(obstruct_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (homology_cmd->parsed()) return run_homology(input, opts, coeff, deg);
    if (plus_cmd->parsed()) return run_plus(input, kernel_path, opts);
    if (perfect_cmd->parsed()) return run_perfect(input, opts);
    if (extract_cmd->parsed()) return run_extract(input, opts);
    if (obstruct_cmd->parsed()) return run_obstruct(input, opts, construct);
  } catch (const ResourceExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
