#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sobolab/construction.hpp"
#include "sobolab/experiments.hpp"
#include "sobolab/fourier.hpp"
#include "sobolab/io.hpp"
#include "sobolab/seminorm.hpp"
#include "sobolab/stieltjes.hpp"

namespace {

using namespace sobolab;

struct Options {
  std::string config;
  bool exploratory = false;

  double alpha = 1.0 / 3.0;
  int blocks = 4;
  std::size_t truncation = 0;
  std::size_t knots = 32;
  std::uint64_t seed = 7;
  std::uint64_t seed_alt = 42;
  bool mutate = false;
  std::string json_out;

  std::string out;
  std::string system_out;
  std::string in;
  double s = 0.5;
  std::size_t grid = std::size_t{1} << 16;
  std::string system;
  std::int64_t n = 0;
  std::string csv_out;

  std::vector<int> block_list{1, 2, 3, 4, 5, 6};
  std::size_t budget = 2000;
  int restarts = 4;

  int terms = 12;
};

// Rejects alpha outside (0, 1/2) unless exploring the boundary case.
Modulus power_modulus(const Options& o) {
  if (!(o.alpha > 0.0)) throw CLI::ValidationError("--alpha", "must be positive");
  if (o.alpha >= 0.5 && !(o.exploratory && o.alpha == 0.5)) {
    throw CLI::ValidationError("--alpha", "must lie in (0, 1/2); alpha = 1/2 needs --exploratory");
  }
  return Modulus::power(o.alpha);
}

void print_suite(const SuiteResult& s) {
  std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << "  " << s.detail;
  if (!s.witness.empty()) std::cout << "  [witness: " << s.witness << "]";
  if (s.warning) std::cout << "  (warning)";
  std::cout << "  " << s.seconds << " s\n";
}

// Config entries become `--key value` tokens placed right after the
// subcommand name, so explicit flags later on the command line win.
std::vector<std::string> with_config(int argc, char** argv, const std::set<std::string>& commands) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return args;

  const auto entries = load_config(path);
  std::vector<std::string> injected;
  for (const auto& [raw_key, value] : entries) {
    std::string key = raw_key;
    if (key == "omega.alpha") key = "alpha";
    if (key == "omega.kind") {
      if (value != "power") throw std::runtime_error("config: only omega.kind = power is supported");
      continue;
    }
    if (key == "placement.gap_rule") {
      if (value != "equal") throw std::runtime_error("config: placement.gap_rule must be equal");
      continue;
    }
    if (value == "true" || value == "false") {
      if (value == "true") injected.push_back("--" + key);
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  std::vector<std::string> out;
  bool placed = false;
  for (const auto& a : args) {
    out.push_back(a);
    if (!placed && commands.count(a) > 0) {
      out.insert(out.end(), injected.begin(), injected.end());
      placed = true;
    }
  }
  return out;
}

int run_verify(const Options& o) {
  VerifyConfig cfg;
  cfg.omega = power_modulus(o);
  cfg.blocks = o.blocks;
  cfg.knots = o.knots;
  cfg.seed = o.seed;
  cfg.seed_alt = o.seed_alt;
  cfg.mutation = o.mutate ? Mutation::halve_v_weights : Mutation::none;
  const VerifyReport report = verify_all(cfg);
  for (const auto& s : report.suites) print_suite(s);
  if (!o.json_out.empty()) write_text_file(o.json_out, to_json(report).dump(2) + "\n");
  std::cout << (report.passed() ? "all suites passed\n" : "some suites FAILED\n");
  return report.passed() ? 0 : 1;
}

int run_construct(const Options& o) {
  const Modulus omega = power_modulus(o);
  const DeltaSequence d = build_delta_sequence(omega, o.blocks, o.exploratory);
  const std::size_t count = o.truncation == 0 ? d.size() : o.truncation;
  const TriangleSystem sys = place_intervals(d, count);
  const PiecewiseLinear f = build_f(sys);
  if (o.out.empty()) {
    std::cout << to_json(f).dump() << "\n";
  } else {
    write_text_file(o.out, to_json(f).dump(2) + "\n");
  }
  if (!o.system_out.empty()) write_text_file(o.system_out, to_json(sys).dump(2) + "\n");
  std::cerr << "blocks " << d.blocks() << ", triangles " << sys.size() << ", knots " << f.size()
            << (d.exploratory ? " (exploratory: outside the valid range, no claims)" : "") << "\n";
  return 0;
}

int run_seminorm(const Options& o) {
  if (!is_power_of_two(o.grid)) throw CLI::ValidationError("--grid", "must be a power of two");
  const PiecewiseLinear f = pl_from_json(read_json_file(o.in));
  SeminormReport r;
  r.s = o.s;
  r.n = o.grid;
  r.spectral = sobolev_spectral(pl_spectrum(f, static_cast<int>(o.grid / 2)), o.s);
  r.integral = sobolev_integral(sample(f, o.grid));
  json j = to_json(r);
  if (o.s == 0.5) j["exact"] = pl_half_seminorm(f);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_stieltjes(const Options& o) {
  if (o.n <= 0) throw CLI::ValidationError("--n", "must be a positive integer");
  const TriangleSystem sys = system_from_json(read_json_file(o.system));
  const StieltjesReport r = stieltjes_check(sys, o.n);
  if (!o.csv_out.empty()) write_text_file(o.csv_out, stieltjes_csv(r));
  std::cout << to_json(r).dump(2) << "\n";
  return r.holds() ? 0 : 1;
}

int run_obstruct(const Options& o) {
  ObstructionConfig cfg;
  cfg.omega = power_modulus(o);
  cfg.exploratory = o.exploratory;
  cfg.blocks = o.block_list;
  cfg.knots = o.knots;
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  const auto records = run_obstruction(cfg);
  for (const auto& r : records) {
    std::cout << "J=" << r.blocks << " K=" << r.triangles << " bound " << r.sup_lower_bound
              << " best product " << r.min_product << " evals " << r.evals << " violations "
              << r.violations << " (" << r.seconds << " s)\n";
  }
  const SuiteResult verdict = obstruction_suite(records);
  print_suite(verdict);
  std::cout << "note: the search covers a finite family of piecewise-linear homeomorphisms; "
               "only the lower bound is certified\n";
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    json all = json::array();
    for (const auto& r : records) all.push_back(to_json(r));
    const std::filesystem::path dir(o.out);
    write_text_file((dir / "obstruction.json").string(), all.dump(2) + "\n");
    write_text_file((dir / "obstruction.csv").string(), obstruction_csv(records));
  }
  return verdict.passed ? 0 : 1;
}

int run_lacunary(const Options& o) {
  const LacunaryReport r = lacunary_fixture(o.terms);
  std::cout << to_json(r).dump(2) << "\n";
  return std::fabs(r.seminorm_sq - (o.terms + 1)) <= 1e-12 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Sobolev seminorms, tent-sum constructions and change-of-variable experiments", "sobolab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;
  app.add_option("--config", o.config, "flat key = value file; keys mirror the long flags");
  app.add_flag("--exploratory", o.exploratory, "allow alpha = 1/2 (no acceptance claims)");

  const auto add_alpha = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha, "exponent of the power modulus delta^alpha");
    c->add_flag("--exploratory", o.exploratory, "allow alpha = 1/2 (no acceptance claims)");
  };

  auto* verify = app.add_subcommand("verify", "run every verification suite");
  add_alpha(verify);
  verify->add_option("--blocks", o.blocks, "block count for the construction suites");
  verify->add_option("--knots", o.knots, "homeomorphism knot count");
  verify->add_option("--seed", o.seed, "seed for the random suites");
  verify->add_option("--seed-alt", o.seed_alt, "seed for the superposition suite");
  verify->add_flag("--mutate", o.mutate, "halve the weights of v (the suite must then fail)");
  verify->add_option("--json", o.json_out, "write the report as JSON");

  auto* construct = app.add_subcommand("construct", "build f = u + iv");
  add_alpha(construct);
  construct->add_option("--blocks", o.blocks, "number of blocks J");
  construct->add_option("--truncation", o.truncation, "keep only the first K triangles (0 = all)");
  construct->add_option("--out", o.out, "PL JSON output (stdout if omitted)");
  construct->add_option("--system", o.system_out, "also write the interval system JSON");

  auto* seminorm = app.add_subcommand("seminorm", "seminorms of a PL function");
  seminorm->add_option("--in", o.in, "PL JSON input")->required();
  seminorm->add_option("--s", o.s, "smoothness exponent");
  seminorm->add_option("--grid", o.grid, "grid size N (power of two)");

  auto* stieltjes = app.add_subcommand("stieltjes", "integral of v against u_n with per-interval bounds");
  stieltjes->add_option("--system", o.system, "interval system JSON")->required();
  stieltjes->add_option("--n", o.n, "truncation index n")->required();
  stieltjes->add_option("--csv", o.csv_out, "per-interval CSV output");

  auto* obstruct = app.add_subcommand("obstruct", "search homeomorphisms against the certified bound");
  add_alpha(obstruct);
  obstruct->add_option("--blocks", o.block_list, "block counts, comma separated")->delimiter(',');
  obstruct->add_option("--knots", o.knots, "homeomorphism knot count M");
  obstruct->add_option("--budget", o.budget, "objective evaluations per block count");
  obstruct->add_option("--seed", o.seed, "seed for restart points");
  obstruct->add_option("--restarts", o.restarts, "Nelder-Mead restarts");
  obstruct->add_option("--out", o.out, "output directory for obstruction.json / .csv");

  auto* lacunary = app.add_subcommand("lacunary", "dyadic lacunary partial sum");
  lacunary->add_option("--terms", o.terms, "highest dyadic index K");

  const std::set<std::string> commands{"verify", "construct", "seminorm", "stieltjes", "obstruct",
                                       "lacunary"};
  try {
    auto args = with_config(argc, argv, commands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) return run_verify(o);
    if (*construct) return run_construct(o);
    if (*seminorm) return run_seminorm(o);
    if (*stieltjes) return run_stieltjes(o);
    if (*obstruct) return run_obstruct(o);
    if (*lacunary) return run_lacunary(o);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
