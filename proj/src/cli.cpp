#include "wheelopt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "wheelopt/datagen.hpp"
#include "wheelopt/experiments.hpp"
#include "wheelopt/ilp.hpp"
#include "wheelopt/io.hpp"
#include "wheelopt/sa.hpp"
#include "wheelopt/simulator.hpp"

namespace wheelopt::cli {

namespace {

struct Options {
  std::string instance;
  std::string demand;
  std::string wheel;
  std::string method;
  std::string policy = "trigger";
  std::string spec;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t iterations = 2000;
  std::optional<double> cooling;
  std::int64_t step = 1;
  std::int64_t lambda_max = ilp::kDefaultLambdaMax;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  io::Instance instance;
  DemandSchedule schedule;
};

Problem load_problem(const Options& opt) {
  auto inst = io::load_instance(opt.instance);
  std::optional<DemandSchedule> schedule;
  if (!opt.demand.empty()) {
    schedule = io::load_demand_csv(opt.demand, inst.items.size(), inst.config.num_periods);
  } else if (inst.demand) {
    schedule = inst.demand;
  } else {
    throw InputError("--demand: required (instance '" + opt.instance + "' has no [demand] section)");
  }
  return Problem{std::move(inst), std::move(*schedule)};
}

ProductWheel parse_wheel(const Options& opt, std::size_t num_items) {
  ProductWheel wheel = [&] {
    try {
      return ProductWheel::parse(opt.wheel);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--wheel: ") + e.what());
    }
  }();
  if (wheel.size() != num_items) {
    throw InputError("--wheel: " + std::to_string(wheel.size()) + " entries given for " +
                     std::to_string(num_items) + " items");
  }
  return wheel;
}

SkipPolicy parse_policy(const std::string& text) {
  if (text == "trigger") return SkipPolicy::trigger_point;
  if (text == "never") return SkipPolicy::never_skip;
  throw InputError("--policy: expected 'trigger' or 'never', got '" + text + "'");
}

std::string skips_text(const PeriodRecord& rec) {
  std::string s;
  for (std::size_t i = 0; i < rec.skipping.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(rec.skipping[i]);
  }
  return s;
}

void print_simulation(std::ostream& out, const SimulationResult& result) {
  out << "feasible: " << (result.feasible ? "yes" : "no") << "\n";
  if (result.violation) out << "violation: " << result.violation->describe() << "\n";
  out << "rms_wheel_time: " << io::format_fixed(result.rms_wheel_time) << "\n"
      << "total_cost: " << io::format_fixed(result.total_cost) << "\n"
      << "period,wheel_time,cycles,skips,setup_cost,inventory_cost,cost\n";
  for (const auto& rec : result.periods) {
    out << rec.period_index << ',' << io::format_fixed(rec.period_wheel_time) << ',' << rec.cycles
        << ',' << skips_text(rec) << ',' << io::format_fixed(rec.setup_cost) << ','
        << io::format_fixed(rec.inventory_cost) << ',' << io::format_fixed(rec.cost()) << "\n";
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("--out: cannot open '" + path + "' for writing");
  return out;
}

int cmd_gen_demand(const Options& opt, std::ostream& out) {
  const auto inst = io::load_instance(opt.instance);
  const auto schedule = generate_schedule(
      demand_spec_from_items(inst.items, inst.config.num_periods, opt.seed));
  if (opt.out.empty()) {
    io::write_demand_csv(out, schedule);
  } else {
    auto file = open_output(opt.out);
    io::write_demand_csv(file, schedule);
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const auto problem = load_problem(opt);
  const auto wheel = parse_wheel(opt, problem.instance.items.size());
  const auto result = simulate(wheel, problem.schedule, problem.instance.items,
                               problem.instance.config, parse_policy(opt.policy));
  print_simulation(out, result);
  return result.feasible ? kExitOk : kExitInfeasible;
}

int optimize_ilp(const Options& opt, const Problem& p, std::ostream& out, nlohmann::json& doc) {
  const auto& items = p.instance.items;
  const auto& config = p.instance.config;
  const auto sol = ilp::solve_instance(p.schedule, items, config, opt.lambda_max);
  doc["method"] = "ilp";
  doc["lambda_max"] = opt.lambda_max;
  doc["nodes"] = sol.nodes;
  if (sol.status != ilp::Status::optimal) {
    out << "status: infeasible\n";
    doc["status"] = "infeasible";
    return kExitInfeasible;
  }
  const auto& wheel = *sol.wheel;
  const double relaxed = ilp::relaxed_total_cost(wheel, p.schedule, items, config);
  const auto sim = simulate(wheel, p.schedule, items, config, SkipPolicy::never_skip);
  out << "status: optimal\n"
      << "wheel: " << wheel.to_string() << "\n"
      << "wheel_time: " << io::format_fixed(sol.objective_value) << "\n"
      << "relaxed_cost: " << io::format_fixed(relaxed) << "\n"
      << "simulated_cost: " << io::format_fixed(sim.total_cost) << "\n"
      << "simulated_feasible: " << (sim.feasible ? "yes" : "no") << "\n";
  if (sim.violation) out << "simulated_violation: " << sim.violation->describe() << "\n";
  if (sol.at_box_boundary) {
    out << "warning: optimum touches lambda_max = " << opt.lambda_max << "; the box may bind\n";
  }
  doc["status"] = "optimal";
  doc["wheel"] = std::vector<std::int64_t>(wheel.batches().begin(), wheel.batches().end());
  doc["wheel_time"] = sol.objective_value;
  doc["relaxed_cost"] = relaxed;
  doc["simulated_cost"] = sim.total_cost;
  doc["simulated_feasible"] = sim.feasible;
  doc["at_box_boundary"] = sol.at_box_boundary;
  return kExitOk;
}

int optimize_sa(const Options& opt, const Problem& p, std::ostream& out, nlohmann::json& doc) {
  const auto& items = p.instance.items;
  const auto& config = p.instance.config;
  doc["method"] = "sa";

  std::optional<ProductWheel> initial;
  if (!opt.wheel.empty()) {
    initial = parse_wheel(opt, items.size());
  } else {
    initial = sa::suggest_initial_wheel(p.schedule, items, config);
    if (!initial) {
      out << "status: infeasible\nreason: no feasible starting wheel found\n";
      doc["status"] = "infeasible";
      return kExitInfeasible;
    }
  }

  sa::SaConfig cfg;
  cfg.iterations = opt.iterations;
  cfg.proposal_step = opt.step;
  cfg.seed = opt.seed;
  if (opt.cooling) {
    cfg.cooling = *opt.cooling;
  } else {
    const double start_rms = simulate(*initial, p.schedule, items, config).rms_wheel_time;
    cfg.cooling = std::max(0.05 * start_rms, 1e-9);
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  std::optional<sa::SaTrace> found;
  try {
    found = sa::optimize(*initial, p.schedule, items, config, cfg);
  } catch (const sa::SaError& e) {
    if (e.kind() == sa::SaError::Kind::no_feasible_start) {
      out << "status: infeasible\nreason: " << e.what() << "\n";
      doc["status"] = "infeasible";
      return kExitInfeasible;
    }
    out << "warning: " << e.what() << "; reporting progress so far\n";
    found = e.partial();
  }
  const auto& trace = *found;

  const auto sim = simulate(trace.best_wheel, p.schedule, items, config);
  out << "status: optimal\n"
      << "wheel: " << trace.best_wheel.to_string() << "\n"
      << "rms_wheel_time: " << io::format_fixed(trace.best_rms) << "\n"
      << "total_cost: " << io::format_fixed(sim.total_cost) << "\n"
      << "start_wheel: " << trace.start.to_string() << "\n"
      << "cooling: " << io::format_fixed(cfg.cooling) << "\n"
      << "iterations: " << trace.iterations.size() << "\n"
      << "accepted: " << trace.accepted_count() << "\n"
      << "worsening_accepted: " << trace.worsening_accepted_count() << "\n"
      << "best_iteration: " << trace.best_iteration << "\n";
  doc["status"] = "optimal";
  doc["wheel"] = std::vector<std::int64_t>(trace.best_wheel.batches().begin(),
                                            trace.best_wheel.batches().end());
  doc["rms_wheel_time"] = trace.best_rms;
  doc["total_cost"] = sim.total_cost;
  doc["cooling"] = cfg.cooling;
  doc["iterations"] = trace.iterations.size();
  doc["accepted"] = trace.accepted_count();
  doc["best_iteration"] = trace.best_iteration;
  doc["seed"] = opt.seed;
  return kExitOk;
}

int cmd_optimize(const Options& opt, std::ostream& out) {
  const auto problem = load_problem(opt);
  nlohmann::json doc;
  int code = kExitOk;
  if (opt.method == "ilp") {
    code = optimize_ilp(opt, problem, out, doc);
  } else if (opt.method == "sa") {
    code = optimize_sa(opt, problem, out, doc);
  } else {
    throw InputError("--method: expected 'ilp' or 'sa', got '" + opt.method + "'");
  }
  if (!opt.out.empty()) {
    auto file = open_output(opt.out);
    file << doc.dump(2) << "\n";
  }
  return code;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = io::load_sweep_spec(opt.spec);
  unsigned threads = 0;
  try {
    threads = experiments::threads_from_env();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto rows = experiments::run_sweep(spec, threads);
  for (const auto& row : rows) {
    if (row.outcome == experiments::Outcome::error) {
      err << "sweep point " << experiments::to_string(row.axis) << "=" << row.axis_value
          << " schedule " << row.schedule_id << " " << experiments::to_string(row.method)
          << ": " << row.error << "\n";
    }
  }
  if (opt.out.empty()) {
    io::write_sweep_csv(out, rows);
  } else {
    auto file = open_output(opt.out);
    io::write_sweep_csv(file, rows);
    out << "wrote " << rows.size() << " rows to " << opt.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product wheel simulation and optimization"};
  app.require_subcommand(1);
  Options opt;

  auto* gen = app.add_subcommand("gen-demand", "Sample a synthetic demand schedule as CSV");
  gen->add_option("--instance", opt.instance, "Instance file")->required();
  gen->add_option("--seed", opt.seed, "Random seed");
  gen->add_option("--out", opt.out, "Output CSV (default: stdout)");

  auto* sim = app.add_subcommand("simulate", "Simulate one wheel over the horizon");
  sim->add_option("--instance", opt.instance, "Instance file")->required();
  sim->add_option("--demand", opt.demand, "Demand CSV (default: instance [demand])");
  sim->add_option("--wheel", opt.wheel, "Comma-separated batch counts")->required();
  sim->add_option("--policy", opt.policy, "Skipping policy: trigger or never");

  auto* optimize = app.add_subcommand("optimize", "Minimize rms wheel time");
  optimize->add_option("--instance", opt.instance, "Instance file")->required();
  optimize->add_option("--demand", opt.demand, "Demand CSV (default: instance [demand])");
  optimize->add_option("--method", opt.method, "ilp or sa")->required();
  optimize->add_option("--lambda-max", opt.lambda_max, "ILP upper bound on batch counts");
  optimize->add_option("--seed", opt.seed, "SA seed");
  optimize->add_option("--iterations", opt.iterations, "SA iterations");
  optimize->add_option("--cooling", opt.cooling, "SA cooling constant (default: 5% of start rms)");
  optimize->add_option("--step", opt.step, "SA maximum per-item perturbation");
  optimize->add_option("--wheel", opt.wheel, "SA starting wheel (default: heuristic)");
  optimize->add_option("--out", opt.out, "Write a JSON result file");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  sweep->add_option("--spec", opt.spec, "Sweep spec file")->required();
  sweep->add_option("--out", opt.out, "Output CSV (default: stdout)");

  std::vector<std::string> argv_storage{"wheelopt"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (gen->parsed()) return cmd_gen_demand(opt, out);
    if (sim->parsed()) return cmd_simulate(opt, out);
    if (optimize->parsed()) return cmd_optimize(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace wheelopt::cli
