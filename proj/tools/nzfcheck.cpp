// nzfcheck: command-line front end.
//
//   nzfcheck check --model M.ta --formula "AG(ready1 -> AF critical1)" [--mode under --level 2]
//   nzfcheck check --model M.ta --formula-file props.tctl    (one formula per line)
//   nzfcheck gen --family fischer --n 3 --out models/
//   nzfcheck oracle-check --model M.ta --formula "EGF p"
//
// Exit codes: 0 satisfied (or oracle agrees), 1 refuted (or oracle
// disagrees), 2 inconclusive, 10 and up for errors. With several formulas
// any refutation wins, then any inconclusive verdict.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nzf/benchmarks.hpp"
#include "nzf/engine.hpp"
#include "nzf/model_io.hpp"
#include "nzf/region_oracle.hpp"

namespace {

enum Exit : int {
  kSatisfied = 0,
  kRefuted = 1,
  kInconclusive = 2,
  kUsage = 10,
  kInputError = 11,
  kIoError = 12,
  kRuntimeError = 13,
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CheckArgs {
  std::string model, formula, formula_file, mode = "exact", stats;
  std::size_t level = 1;
  bool big_chunks = true, no_big_chunks = false, no_non_zeno = false, witness = false;
};

// One formula per non-blank line; lines starting with // are skipped.
std::vector<std::string> formula_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line.compare(b, 2, "//") == 0) continue;
    out.push_back(line.substr(b));
  }
  return out;
}

int run_check(const CheckArgs& args) {
  const auto mode = nzf::parse_approx_mode(args.mode);
  if (!mode) {
    std::cerr << "error: --mode must be exact, under or over\n";
    return kUsage;
  }
  const nzf::TimedAutomaton model = nzf::load_model(args.model);
  const std::vector<std::string> texts =
      args.formula_file.empty() ? std::vector<std::string>{args.formula} : formula_lines(read_file(args.formula_file));
  if (texts.empty()) throw std::invalid_argument("formula file holds no formula");

  nzf::EngineConfig cfg;
  cfg.level = args.level;
  cfg.big_chunks = args.big_chunks && !args.no_big_chunks;
  cfg.non_zeno = !args.no_non_zeno;

  nlohmann::json stats = nlohmann::json::array();
  bool any_refuted = false, any_open = false;
  for (const auto& text : texts) {
    nzf::TimedAutomaton a = model;  // freeze clocks are added per formula
    const nzf::FormulaPtr f = nzf::parse_formula(text, a);

    const auto start = std::chrono::steady_clock::now();
    nzf::Engine engine(a, cfg, nzf::max_constant(*f));
    const nzf::CheckResult result = engine.check(*f, *mode);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::cout << nzf::to_string(result.verdict);
    if (texts.size() > 1) std::cout << "  " << text;
    std::cout << "\n";
    if (args.witness && !result.witness.is_empty())
      std::cout << result.witness.to_string(a.mode_names(), engine.system().clock_names());
    any_refuted |= result.verdict == nzf::Verdict::Refuted;
    any_open |= result.verdict == nzf::Verdict::Inconclusive;

    const auto& st = engine.stats();
    stats.push_back({
        {"verdict", nzf::to_string(result.verdict)},
        {"mode", nzf::to_string(*mode)},
        {"level_used", st.level_used},
        {"fixpoint_iterations", st.fixpoint_iterations},
        {"peak_zone_count", st.peak_zone_count},
        {"final_zone_count", result.final_zone_count},
        {"wall_ms", wall_ms},
    });
  }

  if (!args.stats.empty()) {
    // a single object for one formula, an array for several
    const nlohmann::json& j = stats.size() == 1 ? stats[0] : stats;
    std::ofstream out(args.stats);
    if (!(out << j.dump(2) << "\n")) throw std::ios_base::failure("cannot write '" + args.stats + "'");
  }
  if (any_refuted) return kRefuted;
  return any_open ? kInconclusive : kSatisfied;
}

int run_gen(const std::string& family, int n, const std::string& out) {
  const auto fam = nzf::parse_family(family);
  if (!fam) {
    std::cerr << "error: unknown family '" << family << "'\n";
    return kUsage;
  }
  const auto b = nzf::generate(*fam, n);
  std::cout << nzf::write_benchmark(b, out) << "\n";
  return 0;
}

int run_oracle_check(const std::string& model, const std::string& formula) {
  nzf::TimedAutomaton a = nzf::load_model(model);
  const nzf::FormulaPtr f = nzf::parse_formula(formula, a);
  nzf::RegionOracle oracle(a, f.get());
  nzf::Engine engine(a, {}, nzf::max_constant(*f));
  const auto got = engine.eval(*f, nzf::ApproxMode::Exact);
  const auto want = oracle.to_state_set(oracle.eval(*f), engine.system().dim());
  const bool agree = nzf::equals(got, want);
  std::cout << (agree ? "agree" : "disagree") << " (" << oracle.size() << " regions)\n";
  if (!agree) {
    const auto clocks = engine.system().clock_names();
    std::cout << "engine:\n" << got.to_string(a.mode_names(), clocks) << "oracle:\n"
              << want.to_string(a.mode_names(), clocks);
  }
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timed automata model checker with non-Zeno fairness"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check", "Check a formula against a model");
  cmd_check->add_option("--model", check.model, "Model file")->required()->check(CLI::ExistingFile);
  auto* opt_formula = cmd_check->add_option("--formula", check.formula, "Formula text");
  auto* opt_file = cmd_check->add_option("--formula-file", check.formula_file, "File holding the formula")
                       ->check(CLI::ExistingFile);
  opt_formula->excludes(opt_file);
  cmd_check->add_option("--mode", check.mode, "exact, under or over")->capture_default_str();
  cmd_check->add_option("--level", check.level, "Zone-search rounds for under")->capture_default_str();
  cmd_check->add_flag("--big-chunks", check.big_chunks, "Prune whole backward closures (default)");
  cmd_check->add_flag("--no-big-chunks", check.no_big_chunks, "Prune only the found zone");
  cmd_check->add_flag("--no-non-zeno", check.no_non_zeno, "Do not require divergence after until");
  cmd_check->add_option("--stats", check.stats, "Write run statistics as JSON");
  cmd_check->add_flag("--witness", check.witness, "Print initial states violating the formula");

  std::string family, out = ".";
  int n = 2;
  auto* cmd_gen = app.add_subcommand("gen", "Write a benchmark model and its property");
  cmd_gen->add_option("--family", family, "fischer, fischer-bug, csma, csma-bug or pathos")->required();
  cmd_gen->add_option("--n", n, "Number of processes")->required();
  cmd_gen->add_option("--out", out, "Output directory")->capture_default_str();

  std::string oracle_model, oracle_formula;
  auto* cmd_oracle = app.add_subcommand("oracle-check", "Compare the engine with the region graph (small models)");
  cmd_oracle->add_option("--model", oracle_model, "Model file")->required()->check(CLI::ExistingFile);
  cmd_oracle->add_option("--formula", oracle_formula, "Formula text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (cmd_check->parsed()) {
      if (check.formula.empty() && check.formula_file.empty()) {
        std::cerr << "error: one of --formula or --formula-file is required\n";
        return kUsage;
      }
      return run_check(check);
    }
    if (cmd_gen->parsed()) return run_gen(family, n, out);
    if (cmd_oracle->parsed()) return run_oracle_check(oracle_model, oracle_formula);
  } catch (const nzf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const nzf::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsage;
}
