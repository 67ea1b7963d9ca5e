#include "stabb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string_view>

#include "stabb/basis.hpp"
#include "stabb/io.hpp"
#include "stabb/monomial.hpp"
#include "stabb/points.hpp"
#include "stabb/rational.hpp"
#include "stabb/soi.hpp"

namespace stabb {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

std::string term_set(const std::vector<PowerProduct>& terms) {
  std::string out = "{";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(terms[i]);
  }
  return out + "}";
}

// Renders leading term plus tail with printed-sign coefficients; exact zeros
// are dropped.
template <class Coefficient, class Format>
std::string render_polynomial(const PowerProduct& leading,
                              const std::vector<std::pair<PowerProduct, Coefficient>>& tail,
                              Format format, const Coefficient& zero) {
  std::string out = to_string(leading);
  for (const auto& [term, c] : tail) {
    if (c == zero) continue;
    const bool negative = c < zero;
    out += negative ? " - " : " + ";
    std::string magnitude = format(negative ? Coefficient(-c) : c);
    out += magnitude;
    if (!term.is_one()) {
      out += "*";
      out += to_string(term);
    }
  }
  return out;
}

bool trace_enabled() {
  const char* v = std::getenv("STABLE_BORDER_LOG");
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

void log_trace(const SOIResult& result, std::ostream& err) {
  if (!trace_enabled()) return;
  for (const TraceEntry& e : result.trace) {
    err << "term " << to_string(e.term) << ": ||e|| = " << fmt_double(e.e_hat_norm)
        << (e.accepted ? " > " : " <= ") << fmt_double(e.threshold)
        << (e.accepted ? " accept" : " reject") << "\n";
  }
}

ordered_json terms_json(const std::vector<PowerProduct>& terms) {
  ordered_json a = ordered_json::array();
  for (const PowerProduct& t : terms) a.push_back(to_string(t));
  return a;
}

ordered_json soi_json(const SOIResult& result) {
  ordered_json j;
  j["order_ideal"] = terms_json(result.order_ideal.terms());
  j["corners"] = terms_json(result.corners);
  j["quotient_basis"] = result.is_quotient_basis;
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& e : result.trace) {
    ordered_json entry;
    entry["term"] = to_string(e.term);
    entry["e_hat_norm"] = e.e_hat_norm;
    entry["threshold"] = e.threshold;
    entry["accepted"] = e.accepted;
    trace.push_back(std::move(entry));
  }
  j["trace"] = std::move(trace);
  return j;
}

void print_soi_text(const SOIResult& result, std::ostream& out) {
  out << "order ideal: " << term_set(result.order_ideal.terms()) << "\n";
  out << "corners: " << term_set(result.corners) << "\n";
  out << "quotient basis: " << (result.is_quotient_basis ? "yes" : "no") << "\n";
}

// Tail of border polynomial j in descending term order with printed signs:
// the polynomial is border[j] - sum_i coefficients(i, j) * order_ideal[i].
std::vector<std::pair<PowerProduct, double>> border_tail(const BorderBasis& basis, int j) {
  std::vector<std::pair<PowerProduct, double>> tail;
  for (std::size_t i = basis.order_ideal.size(); i-- > 0;)
    tail.emplace_back(basis.order_ideal.term(i),
                      -basis.coefficients(static_cast<Eigen::Index>(i), j));
  return tail;
}

Eigen::VectorXd resolve_tolerance(const RunConfig& config) {
  if (config.tolerance) return *config.tolerance;
  if (auto sidecar = load_tolerance_sidecar(config.input_path)) return *sidecar;
  throw std::invalid_argument("no tolerance given: pass --tolerance or provide a .json sidecar");
}

TermOrdering make_ordering(const RunConfig& config, int nvars) {
  if (config.ordering != "deglex")
    throw std::invalid_argument("unsupported ordering: " + config.ordering);
  return TermOrdering(nvars);
}

SOIOptions make_soi_options(const RunConfig& config) {
  SOIOptions options;
  options.precision_bits = config.precision_bits;
  if (config.candidate_rule == "literal") {
    options.rule = CandidateRule::literal;
  } else if (config.candidate_rule == "bm") {
    options.rule = CandidateRule::bm;
  } else {
    throw std::invalid_argument("unsupported candidate rule: " + config.candidate_rule);
  }
  return options;
}

void emit(const ordered_json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

int run_soi_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CsvPoints csv = load_points_csv(config.input_path);
  const EmpiricalPointSet x(csv.values, resolve_tolerance(config));
  const TermOrdering ordering = make_ordering(config, x.nvars());
  const SOIResult result = stable_order_ideal(x, ordering, make_soi_options(config));
  log_trace(result, err);
  if (config.format == "json") {
    emit(soi_json(result), out);
  } else {
    print_soi_text(result, out);
  }
  return 0;
}

int run_border_basis_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CsvPoints csv = load_points_csv(config.input_path);
  const EmpiricalPointSet x(csv.values, resolve_tolerance(config));
  const TermOrdering ordering = make_ordering(config, x.nvars());
  const SOIResult result = stable_order_ideal(x, ordering, make_soi_options(config));
  log_trace(result, err);
  if (!result.is_quotient_basis)
    throw NotQuotientBasisError(static_cast<int>(result.order_ideal.size()), x.count());
  const BorderBasis basis =
      border_basis(result.order_ideal, x.points, ordering, config.precision_bits);

  if (config.format == "json") {
    ordered_json j = soi_json(result);
    ordered_json polys = ordered_json::array();
    for (std::size_t k = 0; k < basis.border.size(); ++k) {
      ordered_json p;
      p["term"] = to_string(basis.border[k]);
      ordered_json coeff;
      for (std::size_t i = 0; i < basis.order_ideal.size(); ++i)
        coeff[to_string(basis.order_ideal.term(i))] =
            -basis.coefficients(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      p["coefficients"] = std::move(coeff);
      polys.push_back(std::move(p));
    }
    j["basis"] = std::move(polys);
    emit(j, out);
  } else {
    print_soi_text(result, out);
    out << "border basis:\n";
    for (std::size_t k = 0; k < basis.border.size(); ++k) {
      out << "  "
          << render_polynomial(basis.border[k], border_tail(basis, static_cast<int>(k)),
                               fmt_double, 0.0)
          << "\n";
    }
  }
  return 0;
}

int run_bm_command(const RunConfig& config, std::ostream& out, std::ostream&) {
  const CsvPoints csv = load_points_csv(config.input_path);
  std::vector<std::vector<Rational>> points;
  for (const auto& row : csv.cells) {
    std::vector<Rational> p;
    for (const std::string& cell : row) p.push_back(rational_from_decimal(cell));
    points.push_back(std::move(p));
  }
  const TermOrdering ordering = make_ordering(config, csv.nvars());
  const ExactPolynomialBasis basis = bm_quotient_basis(points, ordering);

  if (config.format == "json") {
    ordered_json j;
    j["quotient_basis"] = terms_json(basis.quotient_basis.terms());
    ordered_json polys = ordered_json::array();
    for (const ExactPolynomial& g : basis.polynomials) {
      ordered_json p;
      p["term"] = to_string(g.leading_term);
      ordered_json coeff;
      for (std::size_t i = 0; i < basis.quotient_basis.size(); ++i) {
        const PowerProduct& t = basis.quotient_basis.term(i);
        coeff[to_string(t)] = to_fraction_string(g.coefficient(t));
      }
      p["coefficients"] = std::move(coeff);
      polys.push_back(std::move(p));
    }
    j["basis"] = std::move(polys);
    emit(j, out);
  } else {
    out << "quotient basis: " << term_set(basis.quotient_basis.terms()) << "\n";
    out << "groebner basis:\n";
    for (const ExactPolynomial& g : basis.polynomials) {
      out << "  "
          << render_polynomial(g.leading_term, g.tail,
                               [](const Rational& r) { return to_fraction_string(r); },
                               Rational(0))
          << "\n";
    }
  }
  return 0;
}

int run_verify_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CsvPoints csv = load_points_csv(config.input_path);
  const EmpiricalPointSet x(csv.values, resolve_tolerance(config));
  const TermOrdering ordering = make_ordering(config, x.nvars());
  const SOIResult result = stable_order_ideal(x, ordering, make_soi_options(config));
  log_trace(result, err);
  const StabilityReport report =
      verify_stability(result.order_ideal, x, config.trials, config.seed);

  if (config.format == "json") {
    ordered_json j;
    j["order_ideal"] = terms_json(result.order_ideal.terms());
    j["trials"] = report.trials;
    j["worst_min_singular_value"] =
        report.worst_min_singular_value ? ordered_json(*report.worst_min_singular_value)
                                        : ordered_json(nullptr);
    j["median_min_singular_value"] =
        report.median_min_singular_value ? ordered_json(*report.median_min_singular_value)
                                         : ordered_json(nullptr);
    j["failures"] = report.failures.size();
    j["stable"] = report.stable;
    emit(j, out);
  } else {
    out << "order ideal: " << term_set(result.order_ideal.terms()) << "\n";
    out << "trials: " << report.trials << "\n";
    if (report.worst_min_singular_value)
      out << "worst min singular value: " << fmt_double(*report.worst_min_singular_value) << "\n";
    if (report.median_min_singular_value)
      out << "median min singular value: " << fmt_double(*report.median_min_singular_value)
          << "\n";
    out << "failures: " << report.failures.size() << "\n";
    out << "verdict: " << (report.stable ? "stable" : "unstable") << "\n";
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "soi") return run_soi_command(config, out, err);
    if (config.subcommand == "border-basis") return run_border_basis_command(config, out, err);
    if (config.subcommand == "bm") return run_bm_command(config, out, err);
    if (config.subcommand == "verify") return run_verify_command(config, out, err);
    throw std::invalid_argument("unknown subcommand: " + config.subcommand);
  } catch (const NotQuotientBasisError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_impl(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stable order ideals and border bases for noisy point sets"};
  app.require_subcommand(1);

  RunConfig config;
  std::string tolerance_text;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", config.input_path, "CSV point file, one point per row")->required();
    cmd->add_option("--ordering", config.ordering, "term ordering (deglex)");
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_numeric = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", tolerance_text,
                    "per-coordinate tolerance e1,...,en (falls back to a .json sidecar)");
    cmd->add_option("--precision", config.precision_bits, "working precision in bits (>= 53)");
    cmd->add_option("--candidate-rule", config.candidate_rule,
                    "candidate update rule: literal or bm")
        ->check(CLI::IsMember({"literal", "bm"}));
  };

  CLI::App* soi = app.add_subcommand("soi", "compute the stable order ideal");
  add_input(soi);
  add_numeric(soi);

  CLI::App* bb = app.add_subcommand("border-basis",
                                    "compute the border basis of the stable quotient basis");
  add_input(bb);
  add_numeric(bb);

  CLI::App* bm = app.add_subcommand("bm", "exact rational basis of the vanishing ideal");
  add_input(bm);

  CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo stability check");
  add_input(verify);
  add_numeric(verify);
  verify->add_option("--trials", config.trials, "number of sampled perturbations")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", config.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  if (!tolerance_text.empty()) {
    try {
      config.tolerance = parse_tolerance(tolerance_text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return run(config, out, err);
}

}  // namespace stabb
