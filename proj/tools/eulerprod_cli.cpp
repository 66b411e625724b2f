// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: computing the limit constant by every implemented
// route, exporting partial-product and convergence tables (CSV/JSON), and
// running the numerical verification suites.
//
// Exit codes: 0 success; 1 failed verification; 2 usage error;
//             3 insufficient precision; 4 convergence failure.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "eulerprod/eulerprod.hpp"

namespace {

using namespace eulerprod;

constexpr long kDefaultBits = 256;
constexpr double kDefaultTol = 1e-10;

int print_usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 2;
}

/// "1..50" or "1,2,5" or "1e-4,1e-6" into a numeric list.
std::vector<double> parse_params(const std::string& text, bool counts) {
  std::vector<double> out;
  auto range_pos = text.find("..");
  if (counts && range_pos != std::string::npos) {
    long lo = std::stol(text.substr(0, range_pos));
    long hi = std::stol(text.substr(range_pos + 2));
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad range " + text);
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<double>(v));
    return out;
  }
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) out.push_back(std::stod(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty parameter list");
  return out;
}

int run_gamma(const std::string& method_name_arg, long terms, double tol,
              bool terms_given, bool tol_given, long bits) {
  auto m = method_from_name(method_name_arg);
  if (!m) return print_usage_error("unknown method '" + method_name_arg + "'");
  const bool wants_terms = method_takes_count(*m);
  const bool wants_tol = !wants_terms || *m == Method::Accelerated;
  if (wants_terms && (!terms_given || terms < 1))
    return print_usage_error("method '" + method_name_arg +
                             "' needs --terms N with N >= 1");
  if (!wants_terms && terms_given)
    return print_usage_error("method '" + method_name_arg +
                             "' does not take --terms");
  if (!wants_tol && tol_given)
    return print_usage_error("method '" + method_name_arg +
                             "' does not take --tol");
  if (wants_tol && !(tol > 0))
    return print_usage_error("--tol must be positive");

  PrecisionContext ctx(bits);
  const auto n = static_cast<unsigned long>(terms);
  Real value(bits);
  double bound = tol;
  switch (*m) {
    case Method::Limit:
      value = gamma_limit(n, ctx);
      bound = 0.5 / static_cast<double>(n);
      break;
    case Method::TelescopedSeries:
      value = gamma_telescoped_series(n, ctx);
      bound = 0.5 / static_cast<double>(n);
      break;
    case Method::ProductSeries:
      value = gamma_series_partial(n, ctx);
      bound = 1.0 / static_cast<double>(n + 1);
      break;
    case Method::Accelerated:
      value = gamma_accelerated(n, tol, ctx);
      break;
    case Method::HypIntegral:
      value = gamma_hyp_integral(tol, ctx);
      break;
    case Method::Classical:
      value = gamma_classical(tol, ctx);
      break;
    case Method::StripIntegral:
      value = gamma_strip_integral(tol, ctx);
      break;
    case Method::TriangleIntegral:
      value = gamma_triangle_integral(tol, ctx);
      break;
    case Method::DoubleIntegral:
      value = gamma_double_integral(tol, ctx);
      break;
    case Method::TrigammaIntegral:
      value = gamma_trigamma_integral(tol, ctx);
      break;
  }
  int digits = static_cast<int>(static_cast<double>(bits) * 0.30103) - 2;
  std::printf("%s ± %.3e\n", to_decimal(value, digits).c_str(), bound);
  return 0;
}

int run_product(long n_max, long bits, const std::string& format) {
  auto fmt = output_format_from_name(format);
  if (!fmt) return print_usage_error("unknown format '" + format + "'");
  if (n_max < 1) return print_usage_error("--n-max must be >= 1");
  PrecisionContext ctx(bits);
  std::vector<double> params;
  for (long n = 1; n <= n_max; ++n) params.push_back(static_cast<double>(n));
  auto rows = convergence_table(Method::ProductSeries, params, ctx);
  for (const auto& r : rows)
    if (!r.error.empty())
      throw precision_error(r.error, required_bits(static_cast<unsigned long>(
                                         r.parameter)));
  std::fputs(render_product_table(rows, *fmt).c_str(), stdout);
  return 0;
}

int run_table(const std::string& method_name_arg, const std::string& params,
              double tol, long bits, const std::string& format) {
  auto m = method_from_name(method_name_arg);
  if (!m) return print_usage_error("unknown method '" + method_name_arg + "'");
  auto fmt = output_format_from_name(format);
  if (!fmt) return print_usage_error("unknown format '" + format + "'");
  std::vector<double> list;
  try {
    list = parse_params(params, method_takes_count(*m));
  } catch (const std::exception& e) {
    return print_usage_error(std::string("bad --params: ") + e.what());
  }
  PrecisionContext ctx(bits);
  auto rows = convergence_table(*m, list, ctx, tol);
  std::fputs(render_table(rows, gamma_reference(bits + 64), *fmt).c_str(),
             stdout);
  return 0;
}

int run_verify(const std::string& suite, double tol, long bits) {
  PrecisionContext ctx(bits);
  auto rep = run_verify_suite(suite, tol, ctx);
  if (!rep) return print_usage_error("unknown suite '" + suite + "'");
  for (const auto& c : rep->checks)
    std::printf("%s  %-45s max residual %.3e  (tol %.3e)\n",
                c.pass() ? "PASS" : "FAIL", c.name.c_str(), c.max_residual,
                c.threshold);
  if (!rep->all_pass()) {
    std::fputs("failing checks:\n", stdout);
    for (const auto& c : rep->checks)
      if (!c.pass())
        std::printf("  %s residual %.6e exceeds %.6e\n", c.name.c_str(),
                    c.max_residual, c.threshold);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "High-precision computation of the Euler limit constant and the "
      "infinite product for its exponential, with numerical verification "
      "of the identities behind them."};
  app.require_subcommand(1);

  long bits = kDefaultBits;

  auto add_precision = [&](CLI::App* cmd) {
    cmd->add_option("--precision", bits,
                    "working precision in bits (default 256)")
        ->envname("EULER_PRODUCT_BITS")
        ->check(CLI::Range(64L, 1L << 22));
  };

  // gamma
  auto* gamma = app.add_subcommand(
      "gamma", "compute the constant by one method");
  std::string method;
  long terms = 0;
  double tol = kDefaultTol;
  gamma->add_option("--method", method,
                    "limit | telescoped-series | product-series | "
                    "hypergeometric-integral | classical | strip-integral | "
                    "triangle-integral | double-integral | trigamma-integral "
                    "| accelerated")
      ->required();
  auto* terms_opt = gamma->add_option(
      "--terms", terms, "term/shift count for the series-style methods");
  auto* tol_opt = gamma->add_option(
      "--tol", tol, "tolerance for the integral methods (default 1e-10)");
  add_precision(gamma);

  // product
  auto* product = app.add_subcommand(
      "product", "partial products a(n) with their gaps to the limit");
  long n_max = 0;
  std::string format = "csv";
  product->add_option("--n-max", n_max, "largest factor index")->required();
  product->add_option("--format", format, "csv | json (default csv)");
  add_precision(product);

  // table
  auto* table = app.add_subcommand(
      "table", "convergence table for one method over a parameter list");
  std::string table_method, table_params, table_format = "csv";
  double table_tol = kDefaultTol;
  table->add_option("--method", table_method, "method name")->required();
  table->add_option("--params", table_params,
                    "comma list, or lo..hi for count methods")
      ->required();
  table->add_option("--tol", table_tol,
                    "tolerance for the accelerated method (default 1e-10)");
  table->add_option("--format", table_format, "csv | json (default csv)");
  add_precision(table);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run a numerical identity suite");
  std::string suite;
  double verify_tol = 1e-12;
  verify->add_option("--suite", suite,
                     "hypergeometric | digamma | beta | bounds | "
                     "change-of-vars | series-identities | all")
      ->required();
  verify->add_option("--tol", verify_tol,
                     "residual tolerance (default 1e-12)");
  add_precision(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gamma->parsed())
      return run_gamma(method, terms, tol, terms_opt->count() > 0,
                       tol_opt->count() > 0, bits);
    if (product->parsed()) return run_product(n_max, bits, format);
    if (table->parsed())
      return run_table(table_method, table_params, table_tol, bits,
                       table_format);
    if (verify->parsed()) return run_verify(suite, verify_tol, bits);
  } catch (const eulerprod::precision_error& e) {
    std::fprintf(stderr, "precision error: %s\n", e.what());
    return 3;
  } catch (const eulerprod::convergence_error& e) {
    std::fprintf(stderr,
                 "convergence error: %s (partial value %.17g, estimate %.3e)\n",
                 e.what(), e.partial_value(), e.err_estimate());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
