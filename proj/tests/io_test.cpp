#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wheelopt/datagen.hpp"
#include "wheelopt/io.hpp"

namespace wheelopt::io {
namespace {

const std::filesystem::path kData = WHEELOPT_DATA_DIR;

Instance parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in, "inline.ini");
}

std::string error_of(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = R"(
[horizon]
num_periods = 2
period_length = 100
cost_tolerance = 10
[item]
batch_time = 1
batch_size = 10
setup_cost = 1
inventory_cost_rate = 0.1
)";

TEST(ParseInstance, TableOneFile) {
  const auto inst = load_instance(kData / "synthetic3.ini");
  EXPECT_EQ(inst.config.num_items, 3u);
  EXPECT_EQ(inst.config.num_periods, 24u);
  EXPECT_EQ(inst.config.period_length, 400.0);
  EXPECT_EQ(inst.config.cost_tolerance, 40000.0);
  const auto expected = oracle::synthetic_items();
  ASSERT_EQ(inst.items.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(inst.items[i].name, expected[i].name);
    EXPECT_EQ(inst.items[i].batch_time, expected[i].batch_time);
    EXPECT_EQ(inst.items[i].batch_size, expected[i].batch_size);
    EXPECT_EQ(inst.items[i].setup_cost, expected[i].setup_cost);
    EXPECT_EQ(inst.items[i].inventory_cost_rate, expected[i].inventory_cost_rate);
    EXPECT_EQ(inst.items[i].trigger_point, expected[i].trigger_point);
    EXPECT_EQ(inst.items[i].demand_mean, expected[i].demand_mean);
    EXPECT_EQ(inst.items[i].demand_std, expected[i].demand_std);
  }
  EXPECT_FALSE(inst.demand);
}

TEST(ParseInstance, InlineDemandAndDefaults) {
  const auto inst = load_instance(kData / "single_item.ini");
  ASSERT_TRUE(inst.demand);
  EXPECT_EQ((*inst.demand)(0, 1), 50);
  EXPECT_EQ((*inst.demand)(0, 2), 50);

  const auto minimal = parse_text(kMinimal);
  EXPECT_EQ(minimal.items[0].name, "item1");
  EXPECT_EQ(minimal.items[0].initial_inventory, 0);
  EXPECT_EQ(minimal.items[0].trigger_point, 0);
}

TEST(ParseInstance, RejectsUnknownKeysAndSections) {
  EXPECT_NE(error_of(std::string(kMinimal) + "colour = red\n").find("unknown key 'colour'"),
            std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "[extras]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "batch_size = 4\n").find("duplicate key"),
            std::string::npos);
}

TEST(ParseInstance, DiagnosticsNameLineAndField) {
  std::string bad = kMinimal;
  bad.replace(bad.find("batch_size = 10"), 15, "batch_size = ten");
  const auto msg = error_of(bad);
  EXPECT_NE(msg.find("inline.ini:8:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("batch_size"), std::string::npos);

  std::string zero = kMinimal;
  zero.replace(zero.find("batch_time = 1"), 14, "batch_time = 0");
  EXPECT_NE(error_of(zero).find("batch_time"), std::string::npos);

  EXPECT_NE(error_of("[item]\nbatch_time = 1\n").find("missing"), std::string::npos);
  EXPECT_NE(error_of("num_periods = 2\n").find("outside of any section"), std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "[demand]\nvalues = 1, 2, 3\n").find("expected 2"),
            std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "[demand]\nvalues = 1, -2\n").find(">= 0"),
            std::string::npos);
}

TEST(InstanceFile, WriteThenParse) {
  Instance inst;
  inst.items = oracle::synthetic_items();
  inst.config = oracle::synthetic_config(12345.5);
  inst.demand = generate_schedule(demand_spec_from_items(inst.items, 24, 8));
  std::ostringstream out;
  write_instance(out, inst);
  const auto back = parse_text(out.str());
  EXPECT_EQ(back.config.cost_tolerance, 12345.5);
  EXPECT_EQ(back.items[2].batch_time, 2.0);
  EXPECT_EQ(back.demand, inst.demand);
}

TEST(DemandCsv, RoundTrip) {
  const auto d = generate_schedule(demand_spec_from_items(oracle::synthetic_items(), 24, 1));
  std::stringstream buf;
  write_demand_csv(buf, d);
  const std::string text = buf.str();
  EXPECT_EQ(text.rfind("item,period,demand\n1,1,", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 73);
  EXPECT_EQ(read_demand_csv(buf, "d.csv", 3, 24), d);
}

TEST(DemandCsv, StrictValidation) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_demand_csv(in, "d.csv", 1, 2);
  };
  EXPECT_NO_THROW(read("item,period,demand\n1,2,5\n1,1,4\n"));
  EXPECT_THROW(read("item,demand\n1,1\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,4\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,4\n1,1,4\n1,2,3\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,4\n2,2,3\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,4\n1,3,3\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,-4\n1,2,3\n"), ParseError);
  EXPECT_THROW(read("item,period,demand\n1,1,4.5\n1,2,3\n"), ParseError);
}

TEST(DemandCsv, ReferencedFromInstance) {
  const auto dir = std::filesystem::temp_directory_path() / "wheelopt_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "d.csv");
    csv << "item,period,demand\n1,1,7\n1,2,9\n";
    std::ofstream ini(dir / "inst.ini");
    ini << kMinimal << "[demand]\ncsv = d.csv\n";
  }
  const auto inst = load_instance(dir / "inst.ini");
  ASSERT_TRUE(inst.demand);
  EXPECT_EQ((*inst.demand)(0, 2), 9);
  std::filesystem::remove_all(dir);
}

TEST(SweepSpecFile, BundledSpecs) {
  const auto spec = load_sweep_spec(kData / "sweep_cost_tolerance.ini");
  EXPECT_EQ(spec.axis, experiments::SweepAxis::cost_tolerance);
  EXPECT_EQ(spec.values, experiments::default_grid(spec.axis));
  EXPECT_EQ(spec.items.size(), 3u);
  EXPECT_EQ(spec.schedule_seeds(), (std::vector<std::uint64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(spec.sa.iterations, 2000u);
  EXPECT_EQ(spec.sa.restarts, 3u);
  EXPECT_EQ(load_sweep_spec(kData / "sweep_setup_multiplier.ini").axis,
            experiments::SweepAxis::setup_multiplier);
  EXPECT_EQ(load_sweep_spec(kData / "sweep_inventory_multiplier.ini").axis,
            experiments::SweepAxis::inventory_multiplier);
}

TEST(SweepSpecFile, InlineInstanceAndErrors) {
  std::istringstream in(std::string(kMinimal) +
                        "[sweep]\naxis = setup_multiplier\nvalues = 1, 2\nnum_schedules = 1\n"
                        "methods = sa\n[sa]\niterations = 10\n");
  const auto spec = parse_sweep_spec(in, "s.ini");
  EXPECT_EQ(spec.values, (std::vector<double>{1, 2}));
  EXPECT_EQ(spec.methods, (std::vector<experiments::Method>{experiments::Method::sa}));
  EXPECT_EQ(spec.sa.iterations, 10u);

  auto bad = [](const std::string& tail) {
    std::istringstream s(std::string(kMinimal) + tail);
    return parse_sweep_spec(s, "s.ini");
  };
  EXPECT_THROW(bad("[sweep]\naxis = nope\n"), ParseError);
  EXPECT_THROW(bad("[sweep]\naxis = cost_tolerance\nvalues = 3, 1\n"), ParseError);
  EXPECT_THROW(bad("[sweep]\naxis = cost_tolerance\nspeed = 1\n"), ParseError);
  EXPECT_THROW(bad("[sweep]\naxis = cost_tolerance\n[sa]\ntemperature = 1\n"), ParseError);
}

TEST(FormatFixed, SixDecimals) {
  EXPECT_EQ(format_fixed(1.0), "1.000000");
  EXPECT_EQ(format_fixed(2.0 / 3.0), "0.666667");
  EXPECT_EQ(format_fixed(-0.0), "0.000000");
  EXPECT_EQ(format_fixed(-1e-9), "0.000000");
}

TEST(SweepCsv, ParsesBackAtWrittenPrecision) {
  experiments::SweepRow feasible;
  feasible.axis_value = 40000;
  feasible.schedule_id = 2;
  feasible.method = experiments::Method::ilp;
  feasible.outcome = experiments::Outcome::feasible;
  feasible.rms_wheel_time = 228.0;
  feasible.simulated_total_cost = 38123.456789123;
  feasible.relaxed_cost = 2.0 / 3.0;
  feasible.wheel = ProductWheel({53, 33, 71});
  feasible.wallclock_ms = 12.5;
  experiments::SweepRow infeasible = feasible;
  infeasible.method = experiments::Method::sa;
  infeasible.outcome = experiments::Outcome::infeasible;
  infeasible.rms_wheel_time.reset();
  infeasible.simulated_total_cost.reset();
  infeasible.relaxed_cost.reset();
  infeasible.wheel.reset();
  experiments::SweepRow errored = infeasible;
  errored.outcome = experiments::Outcome::error;

  std::stringstream buf;
  write_sweep_csv(buf, {feasible, infeasible, errored});
  const std::string text = buf.str();
  EXPECT_NE(text.find("cost_tolerance,40000.000000,2,ilp,true,228.000000,38123.456789,0.666667,"
                      "53;33;71,12.500000\n"),
            std::string::npos);
  EXPECT_NE(text.find("cost_tolerance,40000.000000,2,sa,false,,,,,12.500000\n"), std::string::npos);

  const auto rows = read_sweep_csv(buf, "sweep.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].wheel, feasible.wheel);
  EXPECT_EQ(io::format_fixed(*rows[0].simulated_total_cost), "38123.456789");
  EXPECT_EQ(io::format_fixed(*rows[0].relaxed_cost), "0.666667");
  EXPECT_EQ(rows[1].outcome, experiments::Outcome::infeasible);
  EXPECT_FALSE(rows[1].rms_wheel_time);
  EXPECT_EQ(rows[2].outcome, experiments::Outcome::error);
  std::stringstream again;
  write_sweep_csv(again, rows);
  EXPECT_EQ(again.str(), text);
}

TEST(SweepCsv, RejectsMalformedRows) {
  auto read = [](const std::string& body) {
    std::istringstream in(std::string(kSweepCsvHeader) + "\n" + body);
    return read_sweep_csv(in, "sweep.csv");
  };
  EXPECT_THROW(read("cost_tolerance,1,1,ilp,maybe,,,,,0\n"), ParseError);
  EXPECT_THROW(read("cost_tolerance,1,1,ilp,true\n"), ParseError);
  EXPECT_THROW(read("tau,1,1,ilp,true,,,,,0\n"), ParseError);
  std::istringstream no_header("a,b\n");
  EXPECT_THROW(read_sweep_csv(no_header, "x"), ParseError);
}

}  // namespace
}  // namespace wheelopt::io
