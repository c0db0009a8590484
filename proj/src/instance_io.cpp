#include "tailbound/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

using nlohmann::json;

constexpr std::string_view kLevelNames[] = {"mean", "moments", "variance", "conditional-means",
                                            "conditional-probs"};

double round12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

// Collects schema problems while reading fields, each tagged with its path.
class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  std::vector<std::string>& issues() { return issues_; }
  bool has(const char* key) const { return doc_.contains(key); }

  void fail(const std::string& path, const std::string& what) { issues_.push_back("$." + path + ": " + what); }

  std::optional<double> number(const json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "expected a finite number");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> number(const char* key, bool required) {
    if (!has(key)) {
      if (required) fail(key, "missing required field");
      return std::nullopt;
    }
    return number(doc_.at(key), key);
  }

  std::optional<std::vector<double>> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto x = number(v[i], path + "[" + std::to_string(i) + "]");
      ok = ok && x.has_value();
      out.push_back(x.value_or(0.0));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  // Scalar shared by all variables, or one value per variable.
  std::optional<std::vector<double>> per_variable(const char* key, std::optional<int> n) {
    if (!has(key)) {
      fail(key, "missing required field");
      return std::nullopt;
    }
    const json& v = doc_.at(key);
    if (v.is_array()) {
      auto xs = numbers(v, key);
      if (xs && n && static_cast<int>(xs->size()) != *n) {
        fail(key, "expected " + std::to_string(*n) + " entries (one per variable), got " +
                      std::to_string(xs->size()));
        return std::nullopt;
      }
      return xs;
    }
    auto x = number(v, key);
    if (!x || !n) return std::nullopt;
    return std::vector<double>(static_cast<std::size_t>(*n), *x);
  }

  // Shared vector, or an array of per-variable vectors.
  std::optional<std::vector<std::vector<double>>> per_variable_vectors(const char* key, std::optional<int> n) {
    if (!has(key)) {
      fail(key, "missing required field");
      return std::nullopt;
    }
    const json& v = doc_.at(key);
    if (!v.is_array() || v.empty()) {
      fail(key, "expected a nonempty array");
      return std::nullopt;
    }
    if (v[0].is_array()) {
      std::vector<std::vector<double>> out;
      bool ok = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        auto xs = numbers(v[i], std::string(key) + "[" + std::to_string(i) + "]");
        ok = ok && xs.has_value();
        if (xs) out.push_back(std::move(*xs));
      }
      if (!ok) return std::nullopt;
      if (n && static_cast<int>(out.size()) != *n) {
        fail(key, "expected " + std::to_string(*n) + " rows (one per variable), got " + std::to_string(out.size()));
        return std::nullopt;
      }
      return out;
    }
    auto xs = numbers(v, key);
    if (!xs || !n) return std::nullopt;
    return std::vector<std::vector<double>>(static_cast<std::size_t>(*n), *xs);
  }

 private:
  const json& doc_;
  std::vector<std::string> issues_;
};

void push_unique(std::vector<std::string>& out, std::string msg) {
  if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(std::move(msg));
}

std::vector<std::string> range_issues(int n, double t, double mean_p, std::span<const double> sweep_t) {
  std::vector<std::string> out;
  auto check = [&](double tv, const std::string& where) {
    if (!(tv > n * mean_p)) push_unique(out, where + ": t must exceed np (np = " + format_number(n * mean_p) + ")");
    if (!(tv < n)) push_unique(out, where + ": t must be less than n");
  };
  if (!(mean_p > 0.0 && mean_p < 1.0)) out.push_back("$.p: average mean must lie in (0,1)");
  check(t, "$.t");
  for (std::size_t k = 0; k < sweep_t.size(); ++k) check(sweep_t[k], "$.sweep.t[" + std::to_string(k) + "]");
  return out;
}

std::vector<std::string> class_issues(const Instance& inst) {
  std::vector<std::string> out;
  std::optional<int> order;
  std::optional<PartitionSpec> partition;
  for (std::size_t i = 0; i < inst.classes.size(); ++i) {
    const std::string where = "variable " + std::to_string(i + 1) + ": ";
    const auto& cls = inst.classes[i];
    try {
      if (const auto* mc = std::get_if<MeanClass>(&cls)) {
        if (!(mc->p >= 0.0 && mc->p <= 1.0)) throw DomainError("mean must lie in [0,1]");
      } else if (const auto* mv = std::get_if<MomentVector>(&cls)) {
        if (order && *order != mv->order()) push_unique(out, "$.moments: all moment vectors must have the same order");
        order = mv->order();
        bernstein_weights(*mv);
      } else if (const auto* vs = std::get_if<VarianceClassSpec>(&cls)) {
        validate(*vs);
      } else if (const auto* cm = std::get_if<ConditionalMeansSpec>(&cls)) {
        if (partition && !(*partition == cm->partition)) push_unique(out, "$.partition: must be shared");
        partition = cm->partition;
        validate(*cm);
      } else if (const auto* cp = std::get_if<ConditionalProbsSpec>(&cls)) {
        validate(*cp);
      }
    } catch (const std::exception& e) {
      push_unique(out, where + e.what());
    }
  }
  if (!inst.sweep.sigma2.empty()) {
    if (inst.level != InfoLevel::variance) {
      out.push_back("$.sweep.sigma2: only allowed at the variance level");
    } else {
      for (std::size_t k = 0; k < inst.sweep.sigma2.size(); ++k) {
        for (const auto& cls : inst.classes) {
          try {
            validate(VarianceClassSpec{std::get<VarianceClassSpec>(cls).p, inst.sweep.sigma2[k]});
          } catch (const std::exception& e) {
            push_unique(out, "$.sweep.sigma2[" + std::to_string(k) + "]: " + e.what());
          }
        }
      }
    }
  }
  return out;
}

json to_json(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(round12(x));
  return arr;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::vector<std::string> report_cells(const BoundReport& r) {
  const auto& w = r.witness;
  return {std::string(method_name(r.method)),
          format_number(r.value),
          optional_number(w.h),
          optional_number(w.eps),
          w.s ? std::to_string(*w.s) : std::string(),
          r.clamped ? "1" : "0",
          std::to_string(r.context.n),
          format_number(r.context.p),
          optional_number(r.context.sigma2),
          format_number(r.context.t)};
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> cell_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::string_view level_name(InfoLevel level) { return kLevelNames[static_cast<int>(level)]; }

std::optional<InfoLevel> level_from_name(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kLevelNames[i] == name) return static_cast<InfoLevel>(i);
  }
  return std::nullopt;
}

double Instance::mean_p() const {
  if (classes.empty()) return 0.0;
  double total = 0.0;
  for (const auto& c : classes) total += class_mean(c);
  return total / static_cast<double>(classes.size());
}

std::optional<double> Instance::common_sigma2() const {
  if (level != InfoLevel::variance || classes.empty()) return std::nullopt;
  const double s = std::get<VarianceClassSpec>(classes.front()).sigma2;
  for (const auto& c : classes) {
    if (std::get<VarianceClassSpec>(c).sigma2 != s) return std::nullopt;
  }
  return s;
}

std::vector<std::string> validation_issues(const Instance& inst) {
  auto out = range_issues(inst.n, inst.t, inst.mean_p(), inst.sweep.t);
  if (static_cast<int>(inst.classes.size()) != inst.n) out.push_back("$.n: class list length differs from n");
  for (auto& s : class_issues(inst)) out.push_back(std::move(s));
  return out;
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError({std::string("$: malformed document: ") + e.what()});
  }
  if (!doc.is_object()) throw ParseError({"$: expected an object at the top level"});

  Reader rd(doc);
  static const std::vector<std::string> kKnown = {"schema_version", "level", "n", "t", "p", "moments",
                                                  "sigma2", "partition", "mu", "q", "sweep"};
  for (const auto& item : doc.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), item.key()) == kKnown.end()) rd.fail(item.key(), "unknown field");
  }

  Instance inst;
  if (rd.has("schema_version")) {
    const auto& v = doc.at("schema_version");
    if (!v.is_number_integer()) {
      rd.fail("schema_version", "expected an integer");
    } else if (v.get<int>() != kSchemaVersion) {
      rd.fail("schema_version", "unsupported version " + v.dump() + " (expected " +
                                    std::to_string(kSchemaVersion) + ")");
    }
  }
  if (rd.has("level")) {
    const auto& v = doc.at("level");
    const auto lvl = v.is_string() ? level_from_name(v.get<std::string>()) : std::nullopt;
    if (!lvl) {
      rd.fail("level", "expected one of mean, moments, variance, conditional-means, conditional-probs");
    } else {
      inst.level = *lvl;
    }
  }
  std::optional<int> n;
  if (!rd.has("n")) {
    rd.fail("n", "missing required field");
  } else if (!doc.at("n").is_number_integer() || doc.at("n").get<long long>() < 1 ||
             doc.at("n").get<long long>() > 1'000'000) {
    rd.fail("n", "expected a positive integer");
  } else {
    n = doc.at("n").get<int>();
  }
  const auto t = rd.number("t", true);

  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (rd.has(k)) rd.fail(k, "not used at level " + std::string(level_name(inst.level)));
    }
  };

  std::optional<std::vector<double>> p, sigma2, q, partition;
  std::optional<std::vector<std::vector<double>>> moments, mu;
  switch (inst.level) {
    case InfoLevel::mean:
      p = rd.per_variable("p", n);
      forbid({"moments", "sigma2", "partition", "mu", "q"});
      break;
    case InfoLevel::moments:
      moments = rd.per_variable_vectors("moments", n);
      forbid({"p", "sigma2", "partition", "mu", "q"});
      break;
    case InfoLevel::variance:
      p = rd.per_variable("p", n);
      sigma2 = rd.per_variable("sigma2", n);
      forbid({"moments", "partition", "mu", "q"});
      break;
    case InfoLevel::conditional_means:
      p = rd.per_variable("p", n);
      if (rd.has("partition")) partition = rd.numbers(doc.at("partition"), "partition");
      else rd.fail("partition", "missing required field");
      mu = rd.per_variable_vectors("mu", n);
      forbid({"moments", "sigma2", "q"});
      break;
    case InfoLevel::conditional_probs: {
      const auto shared_p = rd.number("p", true);
      if (shared_p && n) p = std::vector<double>(static_cast<std::size_t>(*n), *shared_p);
      if (rd.has("partition")) partition = rd.numbers(doc.at("partition"), "partition");
      else rd.fail("partition", "missing required field");
      if (rd.has("q")) q = rd.numbers(doc.at("q"), "q");
      else rd.fail("q", "missing required field");
      forbid({"moments", "sigma2", "mu"});
      break;
    }
  }

  if (rd.has("sweep")) {
    const auto& sw = doc.at("sweep");
    if (!sw.is_object()) {
      rd.fail("sweep", "expected an object");
    } else {
      for (const auto& item : sw.items()) {
        if (item.key() == "sigma2") {
          if (auto xs = rd.numbers(item.value(), "sweep.sigma2")) inst.sweep.sigma2 = *xs;
        } else if (item.key() == "t") {
          if (auto xs = rd.numbers(item.value(), "sweep.t")) inst.sweep.t = *xs;
        } else {
          rd.fail("sweep." + item.key(), "unknown field");
        }
      }
    }
  }

  if (!rd.issues().empty()) throw ParseError(std::move(rd.issues()));

  inst.n = *n;
  inst.t = *t;
  std::vector<std::string> issues;
  std::vector<double> means(static_cast<std::size_t>(inst.n), 0.0);
  bool built = true;
  std::optional<PartitionSpec> part;
  if (partition) {
    try {
      part.emplace(*partition);
    } catch (const std::exception& e) {
      issues.push_back(std::string("$.partition: ") + e.what());
      built = false;
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (p) means[idx] = (*p)[idx];
    try {
      switch (inst.level) {
        case InfoLevel::mean:
          inst.classes.emplace_back(MeanClass{(*p)[idx]});
          break;
        case InfoLevel::moments:
          if (!(*moments)[idx].empty()) means[idx] = (*moments)[idx].front();
          inst.classes.emplace_back(MomentVector((*moments)[idx]));
          break;
        case InfoLevel::variance:
          inst.classes.emplace_back(VarianceClassSpec{(*p)[idx], (*sigma2)[idx]});
          break;
        case InfoLevel::conditional_means:
          if (part) inst.classes.emplace_back(ConditionalMeansSpec{*part, (*mu)[idx], (*p)[idx]});
          break;
        case InfoLevel::conditional_probs:
          if (part) inst.classes.emplace_back(ConditionalProbsSpec{*part, *q, (*p)[idx]});
          break;
      }
    } catch (const std::exception& e) {
      push_unique(issues, "variable " + std::to_string(i + 1) + ": " + e.what());
      built = false;
    }
  }
  const double mean_p = std::accumulate(means.begin(), means.end(), 0.0) / inst.n;
  for (auto& s : range_issues(inst.n, inst.t, mean_p, inst.sweep.t)) issues.push_back(std::move(s));
  if (built) {
    for (auto& s : class_issues(inst)) issues.push_back(std::move(s));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = inst.schema_version;
  doc["level"] = std::string(level_name(inst.level));
  doc["n"] = inst.n;
  doc["t"] = round12(inst.t);
  std::vector<double> ps, s2;
  json rows = json::array();
  for (const auto& cls : inst.classes) {
    ps.push_back(class_mean(cls));
    if (const auto* mv = std::get_if<MomentVector>(&cls)) rows.push_back(to_json(mv->values()));
    if (const auto* vs = std::get_if<VarianceClassSpec>(&cls)) s2.push_back(vs->sigma2);
    if (const auto* cm = std::get_if<ConditionalMeansSpec>(&cls)) rows.push_back(to_json(cm->mu));
  }
  switch (inst.level) {
    case InfoLevel::mean:
      doc["p"] = to_json(ps);
      break;
    case InfoLevel::moments:
      doc["moments"] = rows;
      break;
    case InfoLevel::variance:
      doc["p"] = to_json(ps);
      doc["sigma2"] = to_json(s2);
      break;
    case InfoLevel::conditional_means:
      doc["p"] = to_json(ps);
      doc["partition"] = to_json(std::get<ConditionalMeansSpec>(inst.classes.front()).partition.breakpoints());
      doc["mu"] = rows;
      break;
    case InfoLevel::conditional_probs: {
      const auto& cp = std::get<ConditionalProbsSpec>(inst.classes.front());
      doc["p"] = round12(cp.p);
      doc["partition"] = to_json(cp.partition.breakpoints());
      doc["q"] = to_json(cp.q);
      break;
    }
  }
  if (!inst.sweep.sigma2.empty() || !inst.sweep.t.empty()) {
    nlohmann::ordered_json sw = nlohmann::ordered_json::object();
    if (!inst.sweep.sigma2.empty()) sw["sigma2"] = to_json(inst.sweep.sigma2);
    if (!inst.sweep.t.empty()) sw["t"] = to_json(inst.sweep.t);
    doc["sweep"] = sw;
  }
  return doc.dump(2) + "\n";
}

std::vector<Instance> expand_sweep(const Instance& inst) {
  std::vector<std::optional<double>> s2s;
  if (inst.sweep.sigma2.empty()) s2s.push_back(std::nullopt);
  for (double s : inst.sweep.sigma2) s2s.push_back(s);
  std::vector<double> ts = inst.sweep.t.empty() ? std::vector<double>{inst.t} : inst.sweep.t;
  std::vector<Instance> out;
  for (const auto& s2 : s2s) {
    for (double tv : ts) {
      Instance one = inst;
      one.sweep = {};
      one.t = tv;
      if (s2) {
        for (auto& cls : one.classes) std::get<VarianceClassSpec>(cls).sigma2 = *s2;
      }
      out.push_back(std::move(one));
    }
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string emit_results(std::span<const BoundReport> reports, OutputFormat format) {
  std::vector<const BoundReport*> rows;
  for (const auto& r : reports) rows.push_back(&r);
  std::string out;
  if (format == OutputFormat::csv) {
    std::stable_sort(rows.begin(), rows.end(), [](const BoundReport* a, const BoundReport* b) {
      const double sa = a->context.sigma2.value_or(-1.0);
      const double sb = b->context.sigma2.value_or(-1.0);
      if (sa != sb) return sa < sb;
      if (a->context.t != b->context.t) return a->context.t < b->context.t;
      return a->method < b->method;
    });
    out.append(kCsvHeader).push_back('\n');
    for (const auto* r : rows) {
      const auto cells = report_cells(*r);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out.push_back(',');
        out += cells[c];
      }
      out.push_back('\n');
    }
    return out;
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BoundReport* a, const BoundReport* b) { return a->value < b->value; });
  std::vector<std::vector<std::string>> table{split(kCsvHeader, ',')};
  for (const auto* r : rows) table.push_back(report_cells(*r));
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : table) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += pad(row[c], width[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out.push_back('\n');
  }
  return out;
}

std::vector<CsvRow> parse_results_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      if (line != kCsvHeader) throw ParseError({"csv: unexpected header"});
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 10) throw ParseError({"csv: expected 10 columns in row \"" + line + "\""});
    CsvRow r;
    r.method = cells[0];
    r.value = std::strtod(cells[1].c_str(), nullptr);
    r.witness_h = cell_number(cells[2]);
    r.witness_eps = cell_number(cells[3]);
    if (!cells[4].empty()) r.witness_s = std::stoi(cells[4]);
    r.clamped = cells[5] == "1";
    r.n = std::stoi(cells[6]);
    r.p = std::strtod(cells[7].c_str(), nullptr);
    r.sigma2 = cell_number(cells[8]);
    r.t = std::strtod(cells[9].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tailbound
