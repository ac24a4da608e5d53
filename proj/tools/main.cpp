// qcdist command line: evaluate the distortion special functions, sweep them
// into tables, run the inequality verifier, print the sharp constants.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcdist/bounds.hpp"
#include "qcdist/distortion.hpp"
#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"
#include "qcdist/modulus.hpp"
#include "qcdist/report.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Parameter names each function expects, in column order.
const std::map<std::string, std::vector<std::string>>& function_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"K", {"r"}},        {"E", {"r"}},     {"mu", {"r"}},
      {"mu-inv", {"y"}},   {"m", {"r"}},     {"phi", {"K", "r"}},
      {"lambda", {"K"}},   {"eta", {"K", "t"}},
      {"eta-log", {"K", "t"}},               {"psi", {"a", "z"}},
      {"kp", {"p"}},       {"qs-margin", {"K"}},
  };
  return m;
}

double call_function(const std::string& fn,
                     const std::map<std::string, double>& args,
                     bool m_derivative) {
  using namespace qcdist;
  auto arg = [&](const char* name) {
    auto it = args.find(name);
    if (it == args.end()) {
      throw UsageError(std::string("missing --") + name);
    }
    return it->second;
  };
  if (fn == "K") return ellint_k(UnitRadius(arg("r")));
  if (fn == "E") return ellint_e(UnitRadius(arg("r")));
  if (fn == "mu") return mu(UnitRadius(arg("r")));
  if (fn == "mu-inv") return mu_inverse(arg("y")).r();
  if (fn == "m") {
    const MValue v = m_function(UnitRadius(arg("r")));
    return m_derivative ? v.derivative : v.value;
  }
  if (fn == "phi") return phi(Dilatation(arg("K")), UnitRadius(arg("r")));
  if (fn == "lambda") return lambda(Dilatation(arg("K")));
  if (fn == "eta") return eta(Dilatation(arg("K")), arg("t"));
  if (fn == "eta-log") return eta_log(Dilatation(arg("K")), arg("t"));
  if (fn == "psi") return schottky_psi(arg("a"), arg("z"));
  if (fn == "kp") {
    const double p = arg("p");
    return singular_value(static_cast<int>(std::llround(p))).k_p;
  }
  if (fn == "qs-margin") return quasisymmetry_margin(Dilatation(arg("K")));
  throw UsageError("unknown function '" + fn + "'");
}

// Range syntax: "v" | "a:b" (unit steps, inclusive) | "a:b:n"; --log switches
// multi-point ranges to geometric spacing.
qcdist::Range parse_range(const std::string& text, bool log_spaced) {
  qcdist::Range r;
  const auto c1 = text.find(':');
  try {
    if (c1 == std::string::npos) {
      r.start = r.stop = std::stod(text);
      r.count = 1;
      return r;
    }
    const auto c2 = text.find(':', c1 + 1);
    r.start = std::stod(text.substr(0, c1));
    if (c2 == std::string::npos) {
      r.stop = std::stod(text.substr(c1 + 1));
      r.count = static_cast<int>(std::llround(r.stop - r.start)) + 1;
    } else {
      r.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
      r.count = std::stoi(text.substr(c2 + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "' (want start:stop:count)");
  }
  r.log_spaced = log_spaced && r.count > 1;
  return r;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) {
    return std::cout;
  }
  file.open(path);
  if (!file) {
    throw std::ios_base::failure("cannot open '" + path + "'");
  }
  return file;
}

int threads_from_env() {
  const char* env = std::getenv("QCDIST_THREADS");
  if (env == nullptr) {
    return 0;
  }
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

struct ConstantRow {
  const char* name;
  double computed;
  double reference;
  double tolerance;
  const char* citation;
};

std::vector<ConstantRow> constant_rows() {
  const qcdist::PaperConstants& pc = qcdist::PaperConstants::get();
  return {
      {"a", pc.a, 4.3768, 5e-4, "Theorem 1.11"},
      {"b", pc.b, 2.1884, 2.5e-4, "Theorem 3.1"},
      {"c", pc.c_taylor, 7.2372, 5e-4, "Theorem 1.11"},
      {"c1", pc.c1_taylor, 20.2035, 5e-4, "Theorem 1.11"},
      {"c_sandwich", pc.c_sandwich, 0.06991, 5e-5, "Theorem 3.21"},
      {"c_eta", pc.c_eta17, 0.0602, 5e-4, "(1.17)"},
      {"c_power", pc.c_417, 1.115, 5e-3, "(4.17)"},
      {"K0", pc.k0_317, 1.07066, 5e-5, "Corollary 3.17"},
      {"F(1)", pc.f1_check, 7.1210, 5e-4, "Theorem 1.11 proof"},
      {"g5(1/sqrt2)", pc.g5_check, 0.148, 5e-3, "Theorem 4.27 proof"},
  };
}

int run_constants(const std::string& format, const std::string& out_path,
                  int digits) {
  std::ofstream file;
  std::ostream& out = open_sink(out_path, file);
  const auto rows = constant_rows();
  bool all_ok = true;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      const double diff = std::abs(r.computed - r.reference);
      all_ok = all_ok && diff <= r.tolerance;
      ordered_json j;
      j["name"] = r.name;
      j["computed"] = r.computed;
      j["reference"] = r.reference;
      j["abs_diff"] = diff;
      j["tolerance"] = r.tolerance;
      j["citation"] = r.citation;
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else if (format == "csv") {
    out << "name,computed,reference,abs_diff,tolerance,citation\n";
    for (const auto& r : rows) {
      const double diff = std::abs(r.computed - r.reference);
      all_ok = all_ok && diff <= r.tolerance;
      out << r.name << ',' << fmt(r.computed, 17) << ',' << fmt(r.reference, 17)
          << ',' << fmt(diff, 6) << ',' << fmt(r.tolerance, 6) << ','
          << r.citation << '\n';
    }
  } else {
    out << "name          computed              reference   |diff|     citation\n";
    for (const auto& r : rows) {
      const double diff = std::abs(r.computed - r.reference);
      all_ok = all_ok && diff <= r.tolerance;
      char line[160];
      std::snprintf(line, sizeof line, "%-13s %-21s %-11s %-10s %s\n", r.name,
                    fmt(r.computed, digits).c_str(),
                    fmt(r.reference, 7).c_str(), fmt(diff, 3).c_str(),
                    r.citation);
      out << line;
    }
  }
  return all_ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"special functions of plane quasiconformal distortion theory"};
  app.require_subcommand(1);

  std::string format = "plain";
  std::string out_path;
  int digits = 15;
  bool log_flag = false;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--out", out_path, "write output to a file");
  app.add_option("--precision", digits, "significant digits (1..17)")
      ->check(CLI::Range(1, 17));
  app.add_flag("--log", log_flag, "log-space the sweep ranges");

  std::string fn_name;
  std::map<std::string, std::string> raw;
  bool m_derivative = false;
  auto add_param_opts = [&](CLI::App* cmd) {
    cmd->add_option("function", fn_name, "one of: K E mu mu-inv m phi lambda eta eta-log psi kp qs-margin")
        ->required();
    for (const char* p : {"K", "r", "t", "y", "p", "a", "z"}) {
      cmd->add_option(std::string("--") + p, raw[p]);
    }
    cmd->add_flag("--dm", m_derivative, "for m: print the derivative instead");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a function at a point");
  eval_cmd->fallthrough();
  add_param_opts(eval_cmd);

  CLI::App* table_cmd =
      app.add_subcommand("table", "sweep one or two parameters into a table");
  table_cmd->fallthrough();
  add_param_opts(table_cmd);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the inequality verification suite");
  verify_cmd->fallthrough();
  std::string k_range_text, t_range_text;
  std::vector<std::string> only;
  verify_cmd->add_option("--K", k_range_text, "K grid as start:stop:count");
  verify_cmd->add_option("--t", t_range_text, "t grid as start:stop:count");
  verify_cmd->add_option("--only", only, "restrict to named families");

  CLI::App* constants_cmd =
      app.add_subcommand("constants", "print the sharp constants");
  constants_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (constants_cmd->parsed()) {
      return run_constants(format, out_path, digits);
    }

    if (verify_cmd->parsed()) {
      qcdist::GridSpec spec;
      if (!k_range_text.empty()) spec.k_range = parse_range(k_range_text, log_flag);
      if (!t_range_text.empty()) spec.t_range = parse_range(t_range_text, log_flag);
      spec.only = only;
      const qcdist::VerifyReport report =
          qcdist::verify_grid(spec, threads_from_env());
      std::ofstream file;
      std::ostream& out = open_sink(out_path, file);
      if (format == "json") {
        out << qcdist::report_json(report);
      } else if (format == "csv") {
        out << qcdist::report_csv(report);
      } else {
        out << "checks: " << report.total << "  failed: " << report.failed
            << "  skipped: " << report.skips.size() << "\n";
        for (const auto& f : report.families) {
          char line[200];
          std::snprintf(line, sizeof line, "  %-32s %-22s points %-6ld min margin % .3e\n",
                        f.name.c_str(), f.paper_ref.c_str(), f.points,
                        f.min_margin);
          out << line;
        }
        for (const auto& c : report.checks) {
          if (!c.pass) {
            out << "FAIL " << c.name << " K=" << fmt(c.k, 17)
                << " t=" << fmt(c.t, 17) << " lhs=" << fmt(c.lhs, 17)
                << " rhs=" << fmt(c.rhs, 17) << " margin=" << fmt(c.margin, 6)
                << "\n";
          }
        }
      }
      return report.failed == 0 ? kExitOk : kExitDomain;
    }

    // eval / table share the parameter machinery.
    const auto& specs = function_params();
    auto spec_it = specs.find(fn_name);
    if (spec_it == specs.end()) {
      throw UsageError("unknown function '" + fn_name + "'");
    }
    const std::vector<std::string>& params = spec_it->second;

    std::vector<std::pair<std::string, qcdist::Range>> ranges;
    for (const std::string& p : params) {
      const std::string& text = raw[p];
      if (text.empty()) {
        throw UsageError("missing --" + p + " for " + fn_name);
      }
      ranges.emplace_back(p, parse_range(text, log_flag));
    }

    std::ofstream file;
    std::ostream& out = open_sink(out_path, file);

    if (eval_cmd->parsed()) {
      std::map<std::string, double> args;
      for (const auto& [p, r] : ranges) {
        if (r.count != 1) {
          throw UsageError("eval takes single values; use `table` to sweep");
        }
        args[p] = r.start;
      }
      const double value = call_function(fn_name, args, m_derivative);
      if (format == "json") {
        ordered_json j;
        for (const auto& [p, v] : args) j[p] = v;
        j[fn_name] = value;
        out << j.dump() << "\n";
      } else if (format == "csv") {
        for (const auto& p : params) out << p << ',';
        out << fn_name << "\n";
        for (const auto& p : params) out << fmt(args[p], digits) << ',';
        out << fmt(value, digits) << "\n";
      } else {
        out << fmt(value, digits) << "\n";
      }
      return kExitOk;
    }

    // table
    int swept = 0;
    for (const auto& [p, r] : ranges) {
      if (r.count > 1) ++swept;
    }
    if (swept == 0 || swept > 2) {
      throw UsageError("table sweeps one or two parameters");
    }
    std::vector<std::vector<double>> columns;
    for (const auto& pr : ranges) {
      columns.push_back(qcdist::make_points(pr.second));
    }
    // Cartesian sweep in declaration order, last parameter fastest.
    std::vector<std::map<std::string, double>> rows;
    std::vector<std::size_t> idx(ranges.size(), 0);
    while (true) {
      std::map<std::string, double> args;
      for (std::size_t i = 0; i < ranges.size(); ++i) {
        args[ranges[i].first] = columns[i][idx[i]];
      }
      rows.push_back(args);
      bool carried_out = true;
      std::size_t i = ranges.size();
      while (i > 0) {
        --i;
        if (++idx[i] < columns[i].size()) {
          carried_out = false;
          break;
        }
        idx[i] = 0;
      }
      if (carried_out) break;
    }
    if (format == "json") {
      ordered_json arr = ordered_json::array();
      for (auto& args : rows) {
        ordered_json j;
        for (const auto& p : params) j[p] = args[p];
        j[fn_name] = call_function(fn_name, args, m_derivative);
        arr.push_back(j);
      }
      out << arr.dump(2) << "\n";
    } else {
      const char sep = format == "csv" ? ',' : ' ';
      for (const auto& p : params) out << p << sep;
      out << fn_name << "\n";
      for (auto& args : rows) {
        const double value = call_function(fn_name, args, m_derivative);
        for (const auto& p : params) out << fmt(args[p], digits) << sep;
        out << fmt(value, digits) << "\n";
      }
    }
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qcdist::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qcdist::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const qcdist::OverflowInfo& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}
