#include "fbmsig_cli/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fbmsig/expected_signature.hpp"
#include "fbmsig/grid_approx.hpp"
#include "fbmsig_cli/commands.hpp"
#include "fbmsig_cli/config.hpp"

namespace fbmsig::cli {

namespace {

// Every key a config file may contain. Keys that the chosen subcommand does
// not take are ignored, so one file can serve several commands.
const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> help{
      {"H", "Hurst parameters, comma-separated"},
      {"words", "words as comma-separated letters, several separated by ';' (letter 0 is time)"},
      {"m", "grid sizes, comma-separated"},
      {"depth", "longest word when --words is not given"},
      {"d", "number of spatial letters"},
      {"tol", "numerical tolerance"},
      {"budget", "largest number of cell assignments to enumerate"},
      {"degree", "verification degree (default: the formula's claimed degree)"},
      {"branch", "ansatz root: minus or plus"},
      {"problem", "test problem: zero, quadratic or linear"},
      {"T", "time horizon(s)"},
      {"x0", "initial value"},
      {"sigma", "coefficient of the linear test field"},
      {"paths", "Monte-Carlo paths"},
      {"steps", "grid steps per Monte-Carlo path"},
      {"seed", "Monte-Carlo seed"},
      {"M", "growth constant of the error bound"},
      {"gamma", "factorial growth exponent of the error bound, in [0, 1/2)"},
  };
  return help;
}

using Handler = std::function<CommandResult(const Settings&)>;

struct Leaf {
  CLI::App* app = nullptr;
  Handler handler;
};

std::string error_line(const std::exception& e) { return std::string("error: ") + e.what(); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected signatures of fractional Brownian motion, grid approximation, cubature and SDE checks",
               "fbmsig"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string output_path;
  std::string format = "csv";
  bool no_timestamp = false;
  app.add_option("--config", config_path, "key=value file; command-line flags take precedence");
  app.add_option("-o,--output", output_path, "write the report to this file instead of stdout");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--no-timestamp", no_timestamp, "omit the generated/runtime header line");

  std::map<std::string, std::string> raw;
  std::vector<Leaf> leaves;
  const auto leaf = [&](CLI::App* parent, const char* name, const char* desc, std::vector<std::string> keys,
                        Handler handler) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    for (const std::string& key : keys) {
      sub->add_option("--" + key, raw[key], option_help().at(key));
    }
    leaves.push_back({sub, std::move(handler)});
  };

  leaf(&app, "expected-sig", "exact expected signature coefficients with decay bounds",
       {"H", "words", "depth", "d", "tol"}, cmd_expected_sig);
  leaf(&app, "approx-sig", "expected coefficients of the piecewise-linear interpolation", {"H", "words", "m", "budget"},
       cmd_approx_sig);
  leaf(&app, "convergence", "approximation gaps, fitted slopes and the coefficient bound",
       {"H", "words", "m", "tol"}, cmd_convergence);
  CLI::App* cubature = app.add_subcommand("cubature", "cubature formula tools");
  cubature->require_subcommand(1);
  leaf(cubature, "verify", "check the cubature equations word by word", {"H", "degree", "branch", "tol"},
       cmd_cubature_verify);
  leaf(cubature, "solve", "solve the three-path ansatz", {"H", "branch"}, cmd_cubature_solve);
  CLI::App* sde = app.add_subcommand("sde", "SDE weak approximation");
  sde->require_subcommand(1);
  leaf(sde, "compare", "cubature against Monte Carlo on a test problem",
       {"problem", "H", "T", "x0", "sigma", "paths", "steps", "seed", "M", "gamma"}, cmd_sde_compare);
  leaf(&app, "bounds", "series constants and error-bound shapes", {"H", "T", "tol", "M", "gamma", "d"}, cmd_bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  const Leaf* chosen = nullptr;
  for (const Leaf& l : leaves) {
    if (l.app->parsed()) chosen = &l;
  }
  if (!chosen) {
    err << "error: no command given\n";
    return kUsageError;
  }

  const auto started = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    Settings settings;
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_key_value_file(config_path)) {
        if (key == "output") {
          if (app.get_option("--output")->count() == 0) output_path = value;
        } else if (key == "format") {
          if (app.get_option("--format")->count() == 0) format = value;
        } else if (key == "timestamp") {
          if (app.get_option("--no-timestamp")->count() == 0) no_timestamp = !parse_bool(key, value);
        } else if (!option_help().count(key)) {
          throw UsageError("config file: unknown key '" + key + "'");
        } else if (CLI::Option* opt = chosen->app->get_option_no_throw("--" + key); opt && opt->count() == 0) {
          settings.set(key, value);
        }
      }
      if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
    }
    for (const CLI::Option* opt : chosen->app->get_options()) {
      if (opt->count() == 0) continue;
      const std::string key = opt->get_name(false, true).substr(2);
      settings.set(key, raw[key]);
    }
    result = chosen->handler(settings);
  } catch (const UsageError& e) {
    err << error_line(e) << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << error_line(e) << " (reduce m or raise --budget)\n";
    return kUsageError;
  } catch (const QuadratureError& e) {
    err << error_line(e) << '\n';
    return kToleranceFailure;
  } catch (const std::invalid_argument& e) {
    err << error_line(e) << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << error_line(e) << '\n';
    return kToleranceFailure;
  }

  if (!no_timestamp) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", secs);
    result.report.header = utc_timestamp() + "; runtime " + buf + " s";
  }
  const std::string text = format == "json" ? to_json(result.report) : to_csv(result.report);
  if (output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(output_path);
    if (!(file << text)) {
      err << "error: cannot write " << output_path << '\n';
      return kUsageError;
    }
  }
  return result.exit_code;
}

}  // namespace fbmsig::cli
