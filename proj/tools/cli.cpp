#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfister/render.hpp"

namespace pfister::cli {
namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  unsigned n = 2;
  std::string mode;  // empty: symbolic for n <= 3, modular above
  std::uint64_t prime = kMersenne61;
  unsigned samples = 30;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::string emit = "matrix";
  std::optional<unsigned> level;
  bool timings = false;
};

Mode resolve_mode(const RunConfig& cfg) {
  if (cfg.mode.empty()) return cfg.n <= kMaxSymbolicMatrixFold ? Mode::symbolic : Mode::modular;
  return cfg.mode == "symbolic" ? Mode::symbolic : Mode::modular;
}

ModularOptions modular_options(const RunConfig& cfg) {
  mod::require_verification_prime(cfg.prime);
  if (cfg.samples == 0) throw UsageError("--samples must be positive");
  return {cfg.prime, cfg.samples, cfg.seed};
}

void check_n(unsigned n) {
  if (n < 1 || n > kMaxFold) throw UsageError("--n must lie in 1.." + std::to_string(kMaxFold));
}

std::string report_latex(const Report& report) {
  std::ostringstream os;
  os << "\\begin{tabular}{lll}\n\\hline\nidentity & statement & verdict \\\\\n\\hline\n";
  for (const IdentityCheck& c : report.identities) {
    os << "\\texttt{" << c.name << "} & \\verb|" << c.statement << "| & " << (c.passed ? "pass" : "fail")
       << " \\\\\n";
  }
  os << "\\hline\n\\end{tabular}\n";
  if (const auto bound = report.log10_sz_bound()) os << "% Schwartz-Zippel bound: " << format_bound(*bound) << "\n";
  for (const std::string& note : report.notes) os << "% note: " << note << "\n";
  return os.str();
}

std::string render_report(const Report& report, const RunConfig& cfg) {
  if (cfg.format == "json") return to_json(report, cfg.timings).dump(2) + "\n";
  if (cfg.format == "latex") return report_latex(report);
  return to_text(report, cfg.timings);
}

std::string emit_poly(const std::string& name, const Fraction& value, const RunConfig& cfg) {
  if (cfg.format == "json") {
    nlohmann::ordered_json j{{"name", name}, {"value", value.to_string()}};
    if (value.is_polynomial()) j["poly"] = poly_to_json(value.num());
    return j.dump(2) + "\n";
  }
  if (cfg.format == "latex") return value.to_latex() + "\n";
  return value.to_string() + "\n";
}

std::string emit_matrix(const PfisterConstruction<Fraction>& c, const RunConfig& cfg) {
  if (cfg.format == "json") return matrix_to_json(c).dump(2) + "\n";
  if (cfg.format == "latex") return matrix_to_latex(c);
  return matrix_to_text(c);
}

std::string cmd_construct(const RunConfig& cfg) {
  check_n(cfg.n);
  const unsigned n = cfg.n;
  if (cfg.emit == "psi" || cfg.emit == "psi-hat") {
    const unsigned level = cfg.level.value_or(n);
    if (level > n) throw UsageError("--level must lie in 0.." + std::to_string(n));
    const unsigned xs = std::max(1u << n, cfg.emit == "psi" ? 1u << level : 2u << level);
    const auto table = std::make_shared<const VariableTable>(n, xs);
    const bool hat = cfg.emit == "psi-hat";
    return emit_poly(std::string(hat ? "psi_hat_" : "psi_") + std::to_string(level),
                     hat ? psi_hat(table, level) : psi(table, level), cfg);
  }
  if (cfg.emit == "theta") {
    const unsigned level = cfg.level.value_or(n);
    if (level < 1 || level > n) throw UsageError("--level must lie in 1.." + std::to_string(n));
    const TowerAlgebra alg(SymbolicDomain::for_fold(n), n);
    const auto theta = alg.theta(level);
    if (cfg.format == "json") return element_to_json(theta, n).dump(2) + "\n";
    if (cfg.format == "latex") return element_to_latex(theta) + "\n";
    return element_to_text(theta) + "\n";
  }
  if (cfg.emit == "form") {
    const DiagonalForm f = pfister(VariableTable::for_fold(n), n);
    if (cfg.format == "json") return form_to_json(f).dump(2) + "\n";
    std::string out;
    for (const Fraction& c : f.coeffs()) {
      out += (out.empty() ? "" : ", ") + (cfg.format == "latex" ? c.to_latex() : c.to_string());
    }
    return cfg.format == "latex" ? "\\langle " + out + " \\rangle\n" : "<" + out + ">\n";
  }
  if (cfg.emit == "basis") {
    const auto basis = corrected_basis(n);
    if (cfg.format == "json") return basis_to_json(basis, n).dump(2) + "\n";
    std::string out;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
      const auto& b = basis.elements[i];
      out += cfg.format == "latex" ? "b_{" + std::to_string(i + 1) + "} = " + element_to_latex(b) + " \\\\\n"
                                   : "b" + std::to_string(i + 1) + " = " + element_to_text(b) + "\n";
    }
    return out;
  }
  if (cfg.emit == "matrix") return emit_matrix(pfister_matrix(n), cfg);
  throw UsageError("unknown --emit selector '" + cfg.emit + "'");
}

Report verification_report(const RunConfig& cfg, const Hooks& hooks) {
  check_n(cfg.n);
  const Mode mode = resolve_mode(cfg);
  if (mode == Mode::symbolic && cfg.n > kMaxSymbolicMatrixFold) {
    throw UsageError("symbolic verification supports n <= " + std::to_string(kMaxSymbolicMatrixFold) +
                     "; use --mode modular");
  }
  const ModularOptions options = mode == Mode::modular ? modular_options(cfg) : ModularOptions{};
  Report report;
  report.append(verify_norm_product(cfg.n, cfg.n, mode, options));
  report.append(verify_scaling(cfg.n, cfg.n, mode, options));
  report.append(verify_gram_diagonal(cfg.n, mode, options));
  report.append(verify_strict_multiplicativity(cfg.n, mode, options, hooks.fault));
  if (cfg.n >= 3) {
    report.notes.push_back("the corrected basis for n >= 3 is built with the correction map T_m That_m^{-1}; "
                           "its orthogonality is verified, not assumed");
  }
  return report;
}

std::string paper_check_text(const PaperCheck& pc, const RunConfig& cfg) {
  std::ostringstream os;
  for (const EntryVerdict& v : pc.entries) {
    os << "T(" << v.entry.row << "," << v.entry.col << ")  " << (v.match ? "match   " : "MISMATCH") << "  printed "
       << v.entry.printed << "  computed " << v.computed << "\n";
  }
  os << pc.matches() << "/" << pc.entries.size() << " entries match\n";
  os << to_text(pc.report, cfg.timings);
  return os.str();
}

std::string paper_check_json(const PaperCheck& pc, const RunConfig& cfg) {
  nlohmann::ordered_json j = to_json(pc.report, cfg.timings);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const EntryVerdict& v : pc.entries) {
    nlohmann::ordered_json e{{"row", v.entry.row},
                             {"col", v.entry.col},
                             {"printed", v.entry.printed},
                             {"computed", v.computed},
                             {"verdict", v.match ? "match" : "mismatch"}};
    if (v.entry.note) e["note"] = *v.entry.note;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  j["matched"] = std::to_string(pc.matches()) + "/" + std::to_string(pc.entries.size());
  return j.dump(2) + "\n";
}

void write_output(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Pfister form multiplicativity: constructions and exact verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, latex or text")
        ->check(CLI::IsMember({"json", "latex", "text"}));
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
  };
  const auto add_fold = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "fold count n")->required(); };
  const auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "symbolic or modular (default: symbolic for n <= 3)")
        ->check(CLI::IsMember({"symbolic", "modular"}));
    sub->add_option("--prime", cfg.prime, "odd prime > 2^30 for modular mode");
    sub->add_option("--samples", cfg.samples, "number of sampled points");
    sub->add_option("--seed", cfg.seed, "seed for point sampling");
    sub->add_flag("--timings", cfg.timings, "include wall-clock timings (output is then not reproducible)");
  };

  CLI::App* construct = app.add_subcommand("construct", "emit theta, psi, psi-hat, basis, matrix or form");
  add_fold(construct);
  add_common(construct);
  construct->add_option("--emit", cfg.emit, "theta | psi | psi-hat | basis | matrix | form")
      ->check(CLI::IsMember({"theta", "psi", "psi-hat", "basis", "matrix", "form"}));
  construct->add_option("--level", cfg.level, "level for theta, psi and psi-hat (default n)");

  CLI::App* verify = app.add_subcommand("verify", "norm product, scaling, Gram and congruence checks");
  add_fold(verify);
  add_common(verify);
  add_sampling(verify);

  CLI::App* matrix = app.add_subcommand("matrix", "emit the Pfister matrix T");
  add_fold(matrix);
  add_common(matrix);

  CLI::App* paper = app.add_subcommand("paper-check", "compare the 2-fold matrix with the printed one");
  add_common(paper);
  paper->add_flag("--timings", cfg.timings, "include wall-clock timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*construct) {
      write_output(cmd_construct(cfg), cfg, out);
      return kExitPass;
    }
    if (*matrix) {
      check_n(cfg.n);
      write_output(emit_matrix(pfister_matrix(cfg.n), cfg), cfg, out);
      return kExitPass;
    }
    if (*verify) {
      const Report report = verification_report(cfg, hooks);
      write_output(render_report(report, cfg), cfg, out);
      return report.all_passed() ? kExitPass : kExitFail;
    }
    const PaperCheck pc = paper_example_n2(hooks.fault);
    write_output(cfg.format == "json"    ? paper_check_json(pc, cfg)
                 : cfg.format == "latex" ? report_latex(pc.report)
                                         : paper_check_text(pc, cfg),
                 cfg, out);
    return pc.report.all_passed() && pc.matches() == pc.entries.size() ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const PoleError& e) {
    err << "sampling failed: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace pfister::cli
