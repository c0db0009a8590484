#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tailbound/class_spec.hpp"
#include "tailbound/report.hpp"

namespace tailbound {

inline constexpr int kSchemaVersion = 1;

enum class InfoLevel { mean, moments, variance, conditional_means, conditional_probs };

std::string_view level_name(InfoLevel level);
std::optional<InfoLevel> level_from_name(std::string_view name);

struct Sweep {
  std::vector<double> sigma2;  // variance level only; replaces every sigma2
  std::vector<double> t;
  bool operator==(const Sweep&) const = default;
};

// A problem instance: n summands, one class per summand, threshold t.
// Classes hold the alternative matching the level.
struct Instance {
  int schema_version = kSchemaVersion;
  InfoLevel level = InfoLevel::mean;
  int n = 0;
  double t = 0.0;
  std::vector<ClassSpec> classes;
  Sweep sweep;

  double mean_p() const;
  // Common sigma2 when every class is a variance class with the same value.
  std::optional<double> common_sigma2() const;
  bool operator==(const Instance&) const = default;
};

// Parses a JSON instance document. Schema problems (missing or mistyped
// fields, with their paths) are collected and thrown together as ParseError;
// once the schema is sound every cross-field constraint is checked and all
// failures are thrown together as ValidationError.
Instance parse_instance(std::string_view text);

// Re-checks every constraint; returns the list of failures (empty when valid).
std::vector<std::string> validation_issues(const Instance& inst);

// JSON with per-variable arrays and numbers rounded to 12 significant digits.
std::string serialize_instance(const Instance& inst);

// One concrete instance per point of the sweep grid (sigma2 outer, t inner).
std::vector<Instance> expand_sweep(const Instance& inst);

enum class OutputFormat { csv, table };

inline constexpr std::string_view kCsvHeader = "method,value,witness_h,witness_eps,witness_s,clamped,n,p_or_q1,sigma2,t";

// "%.12g"; non-finite values print as inf / -inf / nan.
std::string format_number(double x);

// CSV rows are ordered by (sigma2, t, method), stable; table rows by value
// ascending. Empty input gives the header alone.
std::string emit_results(std::span<const BoundReport> reports, OutputFormat format);

// Inverse of the CSV emitter for the value-carrying columns.
struct CsvRow {
  std::string method;
  double value;
  std::optional<double> witness_h;
  std::optional<double> witness_eps;
  std::optional<int> witness_s;
  bool clamped;
  int n;
  double p;
  std::optional<double> sigma2;
  double t;
};
std::vector<CsvRow> parse_results_csv(std::string_view text);

}  // namespace tailbound
