#include "tailbound/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/evaluate.hpp"
#include "tailbound/figure.hpp"
#include "tailbound/instance_io.hpp"
#include "tailbound/validation.hpp"

namespace tailbound {

namespace {

struct InputFailure {
  std::string message;
};

Instance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputFailure{"cannot read " + path};
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    std::string msg = path + ": parse error";
    for (const auto& s : e.issues()) msg += "\n  " + s;
    throw InputFailure{msg};
  } catch (const ValidationError& e) {
    std::string msg = path + ": validation error";
    for (const auto& s : e.issues()) msg += "\n  " + s;
    throw InputFailure{msg};
  }
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& name : names) {
    if (name == "all") return {};
    auto m = method_from_name(name);
    if (!m) throw InputFailure{"unknown method '" + name + "'"};
    out.push_back(*m);
  }
  return out;
}

std::string where(const BoundContext& ctx) {
  std::string s = "t=" + format_number(ctx.t);
  if (ctx.sigma2) s += ", sigma2=" + format_number(*ctx.sigma2);
  return s;
}

int cmd_bound(const std::string& path, const std::vector<std::string>& method_names, const std::string& format,
              std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(path);
  const auto methods = parse_methods(method_names);
  const auto outcomes = evaluate_instance(inst, methods);
  std::vector<BoundReport> reports;
  std::string skipped;
  for (const auto& o : outcomes) {
    if (o.report) {
      reports.push_back(*o.report);
    } else {
      skipped += "# skipped " + std::string(method_name(o.method)) + " (" + where(o.context) + "): " +
                 o.skip_reason + "\n";
    }
  }
  if (format == "table") {
    out << emit_results(reports, OutputFormat::table) << skipped;
  } else {
    out << emit_results(reports, OutputFormat::csv);
    err << skipped;
  }
  return kExitOk;
}

std::string describe(const DiscreteDist& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += " ";
    s += format_number(d.support()[i]) + ":" + format_number(d.probs()[i]);
  }
  return s;
}

int cmd_verify(const std::string& path, int trials, std::uint64_t seed, double corrupt_scale, std::ostream& out,
               std::ostream& err) {
  const Instance inst = load_instance(path);
  if (inst.n > kMaxValidationVariables) {
    throw InputFailure{"verify: exact enumeration supports n <= " + std::to_string(kMaxValidationVariables) +
                       ", instance has n = " + std::to_string(inst.n)};
  }
  if (trials < 0) throw InputFailure{"verify: --trials must be nonnegative"};
  std::string table = "method,bound,max_tail,violations,trials,t,sigma2\n";
  std::string failures;
  int violations = 0;
  for (const auto& one : expand_sweep(inst)) {
    for (const auto& o : evaluate_methods(one)) {
      if (!o.report || trials == 0) continue;
      const double bound = o.report->value * corrupt_scale;
      const auto rep = validate_bound(one.classes, one.t, bound, trials, seed);
      table += std::string(method_name(o.method)) + "," + format_number(bound) + "," + format_number(rep.max_tail) +
               "," + std::to_string(rep.violations) + "," + std::to_string(rep.trials) + "," +
               format_number(one.t) + "," + (o.context.sigma2 ? format_number(*o.context.sigma2) : "") + "\n";
      if (!rep.passed()) {
        violations += rep.violations;
        failures += "counterexample for " + std::string(method_name(o.method)) + " (" + where(o.context) +
                    ", trial " + std::to_string(*rep.first_violation) + "):\n";
        for (std::size_t i = 0; i < rep.counterexample.size(); ++i) {
          failures += "  X_" + std::to_string(i + 1) + " = {" + describe(rep.counterexample[i]) + "}\n";
        }
        failures += "  P[S >= t] = " + format_number(convolve(rep.counterexample).survival(one.t)) + " > bound " +
                    format_number(bound) + "\n";
      }
    }
  }
  out << table;
  err << failures;
  return violations == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_figure1(const std::string& dir, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  try {
    files = write_figure1(dir);
  } catch (const std::exception& e) {
    throw InputFailure{"figure1: " + std::string(e.what())};
  }
  for (const auto& f : files) out << f.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail bounds for sums of bounded independent random variables"};
  app.require_subcommand(1);

  std::string path;
  std::vector<std::string> methods;
  std::string format = "csv";
  auto* bound = app.add_subcommand("bound", "Compute every applicable bound for an instance file");
  bound->add_option("file", path, "Instance file (JSON)")->required();
  bound->add_option("--methods", methods, "Comma-separated method names, or 'all'")->delimiter(',');
  bound->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "table"}));

  int trials = 1000;
  std::uint64_t seed = 1;
  double corrupt_scale = 1.0;
  auto* verify = app.add_subcommand("verify", "Search for class members that violate the computed bounds");
  verify->add_option("file", path, "Instance file (JSON), n <= 8")->required();
  verify->add_option("--trials", trials, "Random member draws per bound");
  verify->add_option("--seed", seed, "Root seed");
  // Test hook: scale every bound before checking it.
  verify->add_option("--corrupt-scale", corrupt_scale)->group("");

  std::string out_dir;
  auto* figure = app.add_subcommand("figure1", "Write the 12 variance-sweep panels as CSV files");
  figure->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  // Output is buffered so a failing command prints nothing on stdout.
  std::ostringstream buffered;
  try {
    int code = kExitOk;
    if (bound->parsed()) {
      code = cmd_bound(path, methods, format, buffered, err);
    } else if (verify->parsed()) {
      code = cmd_verify(path, trials, seed, corrupt_scale, buffered, err);
    } else {
      code = cmd_figure1(out_dir, buffered);
    }
    out << buffered.str();
    return code;
  } catch (const InputFailure& e) {
    err << "error: " << e.message << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace tailbound
