// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "eulerprod/gamma_methods.hpp"
#include "eulerprod/precision.hpp"
#include "eulerprod/reference.hpp"

namespace eulerprod {

enum class OutputFormat { Csv, Json };

inline std::optional<OutputFormat> output_format_from_name(
    const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return std::nullopt;
}

/// Decimal rendering of x: round-trip digit count for the value's precision,
/// trailing zeros stripped, capped at max_sig_digits. Fixed notation inside
/// a moderate exponent window, scientific outside it. Deterministic.
inline std::string to_decimal(const Real& x, int max_sig_digits) {
  if (x.is_nan()) return "nan";
  if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
  if (x.is_zero()) return "0";

  int digits = static_cast<int>(static_cast<double>(x.prec()) * 0.30103) + 1;
  if (digits > max_sig_digits) digits = max_sig_digits;
  if (digits < 2) digits = 2;

  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits),
                           x.raw(), MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  // value = 0.mant * 10^e10
  std::string out;
  if (e10 >= -3 && e10 <= 21) {
    if (e10 <= 0) {
      out = "0." + std::string(static_cast<size_t>(-e10), '0') + mant;
    } else if (static_cast<size_t>(e10) >= mant.size()) {
      out = mant + std::string(static_cast<size_t>(e10) - mant.size(), '0');
    } else {
      out = mant.substr(0, static_cast<size_t>(e10)) + "." +
            mant.substr(static_cast<size_t>(e10));
    }
  } else {
    out = mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e10 - 1));
  }
  return neg ? "-" + out : out;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string format_parameter(const ConvergenceRecord& r) {
  if (r.parameter_is_count)
    return std::to_string(static_cast<long long>(r.parameter));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", r.parameter);
  return buf;
}

inline std::string format_err(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", e);
  return buf;
}

}  // namespace detail

/// Convergence table with columns method, parameter, approximation,
/// abs_error (against the frozen reference), work, error.
inline std::string render_table(const std::vector<ConvergenceRecord>& rows,
                                const Real& reference, OutputFormat fmt,
                                int value_digits = 40) {
  if (fmt == OutputFormat::Csv) {
    std::string out = "method,parameter,approximation,abs_error,work,error\n";
    for (const auto& r : rows) {
      out += method_name(r.method);
      out += ',' + detail::format_parameter(r);
      if (r.error.empty()) {
        out += ',' + to_decimal(r.approximation, value_digits);
        out += ',' + detail::format_err(r.abs_error_vs(reference));
        out += ',' + std::to_string(r.work);
        out += ',';
      } else {
        out += ",,,0," + detail::csv_quote(r.error);
      }
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["method"] = method_name(r.method);
    if (r.parameter_is_count)
      o["parameter"] = static_cast<long long>(r.parameter);
    else
      o["parameter"] = r.parameter;
    if (r.error.empty()) {
      o["approximation"] = to_decimal(r.approximation, value_digits);
      o["abs_error"] = detail::format_err(r.abs_error_vs(reference));
      o["work"] = r.work;
      o["error"] = "";
    } else {
      o["approximation"] = "";
      o["abs_error"] = "";
      o["work"] = 0;
      o["error"] = r.error;
    }
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

/// Partial-product table with columns n, a_n, gap where gap is the frozen
/// exponential reference minus a(n); a(n) increases strictly with n.
inline std::string render_product_table(
    const std::vector<ConvergenceRecord>& rows, OutputFormat fmt,
    int value_digits = 40) {
  Real expref = exp_gamma_reference(320);
  if (fmt == OutputFormat::Csv) {
    std::string out = "n,a_n,gap\n";
    for (const auto& r : rows) {
      out += std::to_string(static_cast<long long>(r.parameter));
      out += ',' + to_decimal(r.approximation, value_digits);
      out += ',' + to_decimal(expref - r.approximation, 20);
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["n"] = static_cast<long long>(r.parameter);
    o["a_n"] = to_decimal(r.approximation, value_digits);
    o["gap"] = to_decimal(expref - r.approximation, 20);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace eulerprod
