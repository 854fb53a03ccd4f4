#include "vi/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vi/problems.hpp"

namespace vi {

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

void BenchSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("bench: sizes must be nonempty");
  if (seeds.empty()) throw std::invalid_argument("bench: seeds must be nonempty");
  if (algos.empty()) throw std::invalid_argument("bench: algos must be nonempty");
  if (l < 1) throw std::invalid_argument("bench: l must be >= 1");
  for (int m : sizes) {
    if (m < 1) throw std::invalid_argument("bench: sizes must be >= 1");
  }
  cfg.validate();
}

SolverConfig benchmark_config() {
  SolverConfig cfg;
  cfg.ls = LineSearchParams{7.55, 0.5, 0.85};
  cfg.gamma = 1.99;
  cfg.eps = 0.005;
  cfg.stop_rule = StopRule::NormX;
  return cfg;
}

bool BenchRow::same_record(const BenchRow& o) const noexcept {
  return m == o.m && seed == o.seed && algo == o.algo && iterations == o.iterations &&
         inner_trials == o.inner_trials && wall_seconds == o.wall_seconds &&
         converged == o.converged;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  SolverConfig cfg = spec.cfg;
  cfg.stop_rule = StopRule::NormX;
  cfg.record_trajectory = false;

  struct Cell {
    std::size_t instance;
    Algorithm algo;
  };
  struct Problem {
    ProblemInstance inst;
    Vector x0;
  };
  std::vector<Problem> problems;
  std::vector<Cell> cells;
  std::vector<BenchRow> rows;
  for (int m : spec.sizes) {
    for (auto seed : spec.seeds) {
      problems.push_back({harker_pang(m, spec.l, seed), starting_point(m, seed)});
      problems.back().inst.set.set_polyhedral_method(spec.projector);
      for (auto algo : spec.algos) {
        cells.push_back({problems.size() - 1, algo});
        BenchRow row;
        row.m = m;
        row.seed = seed;
        row.algo = algo;
        rows.push_back(row);
      }
    }
  }

  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic) if (spec.parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& p = problems[cells[i].instance];
    BenchRow& row = rows[i];
    try {
      const SolveReport rep = solve(cells[i].algo, p.inst.field, p.inst.set, p.x0, cfg);
      row.iterations = rep.iterations;
      row.inner_trials = rep.inner_trials;
      row.wall_seconds = rep.wall_seconds;
      row.converged = rep.converged;
    } catch (const std::exception& e) {
      row.converged = false;
      row.error = e.what();
    }
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  // snprintf honors LC_NUMERIC; the program never changes it from "C".
  return buf;
}

}  // namespace

std::string render_csv(const std::vector<BenchRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + std::to_string(r.seed) + ',' + std::string(short_name(r.algo)) +
           ',' + std::to_string(r.iterations) + ',' + std::to_string(r.inner_trials) + ',' +
           format_double(r.wall_seconds) + ',' + (r.converged ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::json rows_to_json(const std::vector<BenchRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"m", r.m},
                   {"seed", r.seed},
                   {"algo", std::string(short_name(r.algo))},
                   {"iterations", r.iterations},
                   {"inner_trials", r.inner_trials},
                   {"wall_seconds", r.wall_seconds},
                   {"converged", r.converged}});
  }
  return arr;
}

std::vector<BenchRow> rows_from_json(const nlohmann::json& j) {
  std::vector<BenchRow> rows;
  for (const auto& o : j) {
    BenchRow r;
    r.m = o.at("m").get<int>();
    r.seed = o.at("seed").get<std::uint64_t>();
    const auto name = o.at("algo").get<std::string>();
    auto algo = parse_algorithm(name);
    if (!algo) throw std::invalid_argument("bench json: unknown algo '" + name + "'");
    r.algo = *algo;
    r.iterations = o.at("iterations").get<int>();
    r.inner_trials = o.at("inner_trials").get<long>();
    r.wall_seconds = o.at("wall_seconds").get<double>();
    r.converged = o.at("converged").get<bool>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_json(const std::vector<BenchRow>& rows) { return rows_to_json(rows).dump(2) + '\n'; }

std::string render_table(const std::vector<BenchRow>& rows, bool timing_unreliable) {
  std::vector<Algorithm> algos;
  std::map<int, std::map<Algorithm, std::vector<const BenchRow*>>> groups;
  for (const auto& r : rows) {
    if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
    groups[r.m][r.algo].push_back(&r);
  }

  struct Cells {
    std::string iter, inner, cpu;
  };
  auto summarize = [](const std::vector<const BenchRow*>& cell) -> Cells {
    std::vector<double> it, in, cpu;
    for (const auto* r : cell) {
      if (!r->converged) continue;
      it.push_back(r->iterations);
      in.push_back(static_cast<double>(r->inner_trials));
      cpu.push_back(r->wall_seconds);
    }
    if (cell.empty() || 2 * it.size() <= cell.size()) return {"--", "--", "--"};
    auto whole = [](double v) {
      return v == static_cast<double>(static_cast<long>(v)) ? std::to_string(static_cast<long>(v))
                                                             : format_cell(v, 1);
    };
    return {whole(median(it)), whole(median(in)), format_cell(median(cpu), 4)};
  };

  constexpr std::size_t kWidth = 12;
  auto pad = [](const std::string& s) {
    return s.size() >= kWidth ? s + ' ' : std::string(kWidth - s.size(), ' ') + s;
  };

  std::ostringstream os;
  if (timing_unreliable) os << "# cells ran in parallel: CPU columns are not comparable\n";
  os << pad("m") << " |";
  for (const char* group : {"Iter.", "InIt.", "CPU (s)"}) {
    for (auto a : algos) os << pad(std::string(group) + ' ' + std::string(short_name(a)));
    os << " |";
  }
  os << '\n';
  for (const auto& [m, by_algo] : groups) {
    std::vector<Cells> summary;
    for (auto a : algos) {
      auto it = by_algo.find(a);
      summary.push_back(it == by_algo.end() ? Cells{"", "", ""} : summarize(it->second));
    }
    os << pad(std::to_string(m)) << " |";
    for (const auto& c : summary) os << pad(c.iter);
    os << " |";
    for (const auto& c : summary) os << pad(c.inner);
    os << " |";
    for (const auto& c : summary) os << pad(c.cpu);
    os << " |\n";
  }
  return os.str();
}

std::string render(const std::vector<BenchRow>& rows, OutputFormat format, bool timing_unreliable) {
  switch (format) {
    case OutputFormat::Table: return render_table(rows, timing_unreliable);
    case OutputFormat::Csv:
      return (timing_unreliable ? std::string("# wall_seconds unreliable: cells ran in parallel\n") : "") +
             render_csv(rows);
    case OutputFormat::Json: return render_json(rows);
  }
  return {};
}

}  // namespace vi
