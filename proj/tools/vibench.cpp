// vibench: sweep projection-type VI solvers over random affine benchmark
// instances, or dump a single instance as JSON.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vi/bench.hpp"
#include "vi/problems.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return std::cout ? 0 : 1;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "vibench: cannot open '" << path << "' for writing\n";
    return 2;
  }
  out << text;
  out.close();
  if (!out) {
    std::cerr << "vibench: write to '" << path << "' failed\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark projection-type solvers for monotone variational inequalities"};
  app.require_subcommand(0, 1);

  vi::BenchSpec spec;
  spec.cfg = vi::benchmark_config();
  std::vector<std::string> algo_names{"pc", "sem", "msem"};
  std::string format = "table";
  std::string out_path;

  app.add_option("--sizes", spec.sizes, "Problem dimensions m")->delimiter(',')->capture_default_str();
  app.add_option("--l", spec.l, "Number of constraint rows")->capture_default_str();
  app.add_option("--seeds", spec.seeds, "Instance seeds")->delimiter(',')->capture_default_str();
  app.add_option("--algos", algo_names, "Subset of pm,eg,pc,sem,msem")
      ->delimiter(',')
      ->check(CLI::IsMember({"pm", "eg", "pc", "sem", "msem"}))
      ->capture_default_str();
  app.add_option("--sigma", spec.cfg.ls.sigma, "Initial trial step")->capture_default_str();
  app.add_option("--rho", spec.cfg.ls.rho, "Backtracking factor in (0,1)")->capture_default_str();
  app.add_option("--mu", spec.cfg.ls.mu, "Acceptance ratio in (0,1)")->capture_default_str();
  app.add_option("--gamma", spec.cfg.gamma, "Relaxation in (0,2)")->capture_default_str();
  app.add_option("--eps", spec.cfg.eps, "Stop when ||x|| <= eps")->capture_default_str();
  app.add_option("--max-iter", spec.cfg.max_iter, "Iteration cap per run")->capture_default_str();
  app.add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_flag("--parallel", spec.parallel, "Run sweep cells concurrently");
  std::string projector = "active-set";
  app.add_option("--projector", projector, "Polyhedral projector: active-set or dykstra")
      ->check(CLI::IsMember({"active-set", "dykstra"}))
      ->capture_default_str();

  auto* inst_cmd = app.add_subcommand("instance", "Print one benchmark instance as JSON");
  int inst_m = 5;
  int inst_l = 100;
  std::uint64_t inst_seed = 1;
  std::string inst_out;
  inst_cmd->add_option("--m", inst_m, "Dimension")->capture_default_str();
  inst_cmd->add_option("--l", inst_l, "Constraint rows")->capture_default_str();
  inst_cmd->add_option("--seed", inst_seed, "Seed")->capture_default_str();
  inst_cmd->add_option("--out", inst_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (inst_cmd->parsed()) {
      return write_output(vi::serialize(vi::harker_pang(inst_m, inst_l, inst_seed)) + '\n', inst_out);
    }

    spec.algos.clear();
    for (const auto& name : algo_names) spec.algos.push_back(*vi::parse_algorithm(name));
    spec.format = *vi::parse_format(format);
    spec.projector =
        projector == "dykstra" ? vi::PolyhedralMethod::Dykstra : vi::PolyhedralMethod::ActiveSet;
    if (!out_path.empty()) spec.output_path = out_path;
    spec.validate();

    const auto rows = vi::run_bench(spec);
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        std::cerr << "vibench: m=" << r.m << " seed=" << r.seed << " algo=" << vi::short_name(r.algo)
                  << ": " << r.error << '\n';
      }
    }
    return write_output(vi::render(rows, spec.format, spec.parallel), out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "vibench: " << e.what() << '\n';
    return 2;
  }
}
