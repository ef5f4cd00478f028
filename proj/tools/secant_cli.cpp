// Command-line driver: build lattice models, search and verify picture
// certificates, run the Terracini rank oracle, scan whole families against
// the built-in classification, and draw certificates as SVG.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "secant/certificate.h"
#include "secant/oracle.h"
#include "secant/report.h"
#include "secant/search.h"
#include "secant/svg.h"

using namespace secant;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ModelSpec parse_spec(const std::string& variety, std::vector<int>& degrees) {
  auto v = variety_from_name(variety);
  if (!v) throw CLI::ValidationError("--variety", "unknown variety " + variety);
  ModelSpec spec{*v, degrees};
  validate_spec(spec);  // degree-0 building blocks are internal only
  return spec;
}

void print_report(const APReport& rep) {
  if (!rep.valid_partition) {
    std::cout << "INVALID: " << rep.failure << "\n";
    return;
  }
  std::cout << "parts: " << rep.parts_total << " (" << rep.full_parts << " full, "
            << rep.deficient_parts << " deficient)\n";
  std::cout << "  k  lower  expected  verdict\n";
  for (const auto& row : rep.rows) {
    std::cout << std::setw(3) << row.k << std::setw(7) << row.lower_bound << std::setw(10)
              << row.expected << "  "
              << (row.verdict == Verdict::NonDefectiveCertified ? "certified" : "below expected")
              << "\n";
  }
  std::cout << "picture: " << (rep.non_defective ? "non-defective" : "not non-defective") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice certificates and rank oracles for secant dimensions of "
               "Segre-Veronese and flag embeddings"};
  app.require_subcommand(1);

  std::string variety = "p1p1";
  std::vector<int> degrees;
  std::string cert_in, cert_out, svg_out, json_out;
  std::uint64_t seed = 1;
  std::uint32_t prime = 2147483647u;
  int trials = 3;
  int kk = 0;
  std::int64_t budget = 200000;
  bool strict = false, use_induction = false, json_mode = false;
  std::string cells = "auto";
  std::vector<int> max_degrees;

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--variety", variety, "p1, p2, p1p1, p1p1p1, p2p1, flag")->required();
    cmd->add_option("--degrees", degrees, "degree tuple, e.g. --degrees 3 2")->required();
  };

  auto* cmd_model = app.add_subcommand("model", "build a model and print its JSON");
  add_model_opts(cmd_model);
  cmd_model->add_option("--out", json_out, "write JSON here instead of stdout");

  auto* cmd_search = app.add_subcommand("search", "search a certificate for one model");
  add_model_opts(cmd_search);
  cmd_search->add_option("--cert-out", cert_out, "write the certificate JSON here");
  cmd_search->add_option("--svg-out", svg_out, "draw the certificate");
  cmd_search->add_option("--seed", seed, "search seed");
  cmd_search->add_option("--max-backtracks", budget, "search budget");
  cmd_search->add_option("--cells", cells, "types12 | any | auto");
  cmd_search->add_flag("--induction", use_induction, "use the gluing planner");

  auto* cmd_verify = app.add_subcommand("verify", "verify a certificate file");
  cmd_verify->add_option("--cert-in", cert_in, "certificate JSON")->required();
  cmd_verify->add_flag("--json", json_mode, "machine-readable output");

  auto* cmd_oracle = app.add_subcommand("oracle", "Terracini rank oracle");
  add_model_opts(cmd_oracle);
  cmd_oracle->add_option("--k", kk, "compute dims up to this k (default: capping k)");
  cmd_oracle->add_option("--prime", prime, "31-bit prime");
  cmd_oracle->add_option("--seed", seed, "oracle seed");
  cmd_oracle->add_option("--trials", trials, "independent trials");
  cmd_oracle->add_option("--out", json_out, "write the report here");

  auto* cmd_theorem = app.add_subcommand("theorem", "scan a family and classify");
  cmd_theorem->add_option("--variety", variety, "p1p1, p1p1p1, p2p1, flag")->required();
  cmd_theorem->add_option("--max-degrees", max_degrees, "degree caps (default per family)");
  cmd_theorem->add_option("--seed", seed, "seed");
  cmd_theorem->add_option("--prime", prime, "31-bit prime");
  cmd_theorem->add_option("--trials", trials, "oracle trials");
  cmd_theorem->add_option("--json-out", json_out, "write the JSON table here");
  cmd_theorem->add_flag("--strict", strict, "fail when any non-defective case lacks a certificate");

  auto* cmd_draw = app.add_subcommand("draw", "render a certificate as SVG");
  cmd_draw->add_option("--cert-in", cert_in, "certificate JSON")->required();
  cmd_draw->add_option("--svg-out", svg_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_model->parsed()) {
      Model m = build_model(parse_spec(variety, degrees));
      std::string j = model_to_json(m);
      if (json_out.empty())
        std::cout << j;
      else
        write_file(json_out, j);
      return 0;
    }

    if (cmd_search->parsed()) {
      Model m = build_model(parse_spec(variety, degrees));
      SearchConfig cfg;
      cfg.seed = seed;
      cfg.max_backtracks = budget;
      if (cells == "types12")
        cfg.cell_shapes = CellShapes::Types12Only;
      else if (cells == "any")
        cfg.cell_shapes = CellShapes::AnyIndependent;
      SearchResult res = use_induction ? search_by_induction(m, cfg) : search_certificate(m, cfg);
      if (!res.certificate) {
        std::cout << "no certificate found (budget "
                  << (res.hit_budget ? "exhausted" : "sufficient, search space exhausted")
                  << ")\n";
        return 2;
      }
      print_report(res.report);
      if (!cert_out.empty()) write_file(cert_out, certificate_to_json(*res.certificate));
      if (!svg_out.empty()) emit_svg(*res.certificate, svg_out);
      return 0;
    }

    if (cmd_verify->parsed()) {
      Certificate cert = certificate_from_json(read_file(cert_in));
      APReport rep = verify_certificate(cert);
      if (json_mode) {
        std::cout << "{\"valid\":" << (rep.valid_partition ? "true" : "false")
                  << ",\"non_defective\":" << (rep.non_defective ? "true" : "false") << "}\n";
      } else {
        std::cout << "model " << cert.model_spec.str() << "\n";
        print_report(rep);
      }
      return rep.valid_partition ? 0 : 1;
    }

    if (cmd_oracle->parsed()) {
      Model m = build_model(parse_spec(variety, degrees));
      OracleOptions opts;
      opts.prime = prime;
      opts.seed = seed;
      opts.trials = trials;
      int kmax = kk > 0 ? kk : capping_k(m);
      OracleReport rep = terracini_profile(m, kmax, opts);
      std::string j = oracle_report_to_json(rep);
      if (json_out.empty())
        std::cout << j;
      else
        write_file(json_out, j);
      return 0;
    }

    if (cmd_theorem->parsed()) {
      auto v = variety_from_name(variety);
      if (!v) throw std::runtime_error("unknown variety " + variety);
      ScanOptions opts;
      opts.max_degrees = max_degrees;
      opts.oracle.prime = prime;
      opts.oracle.seed = seed;
      opts.oracle.trials = trials;
      opts.search.seed = seed;
      opts.strict = strict;
      TheoremScan scan = run_theorem_scan(*v, opts);
      std::cout << scan_to_text(scan);
      if (!json_out.empty()) write_file(json_out, scan_to_json(scan));
      return scan.ok(strict) ? 0 : 1;
    }

    if (cmd_draw->parsed()) {
      Certificate cert = certificate_from_json(read_file(cert_in));
      emit_svg(cert, svg_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
