#include "wheelopt/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wheelopt::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, sep)) parts.push_back(trim(token));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::string source;
  std::vector<Section> sections;
};

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

Document parse_document(std::istream& in, const std::string& source) {
  Document doc{source, {}};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(source, line_no, "unterminated section header");
      doc.sections.push_back(Section{trim(line.substr(1, line.size() - 2)), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(source, line_no, "expected 'key = value'");
    if (doc.sections.empty()) fail(source, line_no, "entry outside of any section");
    doc.sections.back().entries.push_back(Entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
  }
  return doc;
}

/// Reads the entries of one section, rejecting unknown and duplicate keys.
class SectionReader {
 public:
  SectionReader(const Document& doc, const Section& section, std::set<std::string> known,
                std::set<std::string> repeatable = {})
      : doc_(doc), section_(section) {
    for (const auto& e : section.entries) {
      if (!known.count(e.key)) {
        fail(doc.source, e.line, "unknown key '" + e.key + "' in [" + section.name + "]");
      }
      if (!repeatable.count(e.key) && values_.count(e.key)) {
        fail(doc.source, e.line, "duplicate key '" + e.key + "' in [" + section.name + "]");
      }
      values_.emplace(e.key, &e);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::vector<const Entry*> all(const std::string& key) const {
    std::vector<const Entry*> out;
    auto [lo, hi] = values_.equal_range(key);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
  }

  const Entry& entry(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      fail(doc_.source, section_.line, "missing key '" + key + "' in [" + section_.name + "]");
    }
    return *it->second;
  }

  std::string text(const std::string& key) const { return entry(key).value; }

  double real(const std::string& key) const { return parse_real(entry(key)); }
  std::int64_t integer(const std::string& key) const { return parse_integer(entry(key)); }

  double real_or(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  double parse_real(const Entry& e) const { return parse_real(e, e.value); }
  double parse_real(const Entry& e, const std::string& token) const {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc() || ptr != end) {
      fail(doc_.source, e.line, "field '" + e.key + "': '" + token + "' is not a number");
    }
    return v;
  }

  std::int64_t parse_integer(const Entry& e) const { return parse_integer(e, e.value); }
  std::int64_t parse_integer(const Entry& e, const std::string& token) const {
    std::int64_t v = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc() || ptr != end) {
      fail(doc_.source, e.line, "field '" + e.key + "': '" + token + "' is not an integer");
    }
    return v;
  }

  std::size_t count(const std::string& key) const {
    const auto v = integer(key);
    if (v < 0) fail(doc_.source, entry(key).line, "field '" + key + "' must be >= 0");
    return static_cast<std::size_t>(v);
  }

 private:
  const Document& doc_;
  const Section& section_;
  std::multimap<std::string, const Entry*> values_;
};

ItemParams read_item(const Document& doc, const Section& section, std::size_t ordinal) {
  SectionReader r(doc, section,
                  {"name", "batch_time", "batch_size", "setup_cost", "inventory_cost_rate",
                   "initial_inventory", "trigger_point", "demand_mean", "demand_std"});
  ItemParams item;
  item.name = r.has("name") ? r.text("name") : "item" + std::to_string(ordinal);
  item.batch_time = r.real("batch_time");
  item.batch_size = r.integer("batch_size");
  item.setup_cost = r.real("setup_cost");
  item.inventory_cost_rate = r.real("inventory_cost_rate");
  item.initial_inventory = r.integer_or("initial_inventory", 0);
  item.trigger_point = r.integer_or("trigger_point", 0);
  item.demand_mean = r.real_or("demand_mean", 0.0);
  item.demand_std = r.real_or("demand_std", 0.0);
  try {
    item.validate();
  } catch (const std::invalid_argument& e) {
    fail(doc.source, section.line, e.what());
  }
  return item;
}

HorizonConfig read_horizon(const Document& doc, const Section& section) {
  SectionReader r(doc, section, {"num_items", "num_periods", "period_length", "cost_tolerance"});
  HorizonConfig config;
  config.num_items = r.has("num_items") ? r.count("num_items") : 0;
  config.num_periods = r.count("num_periods");
  config.period_length = r.real("period_length");
  config.cost_tolerance = r.real("cost_tolerance");
  return config;
}

/// Pulls [horizon], [item] and [demand] out of a document. Sections named in
/// `others` are left for the caller; anything else is an error.
Instance read_instance_sections(const Document& doc, const std::filesystem::path& base_dir,
                                const std::set<std::string>& others = {}) {
  Instance inst;
  const Section* horizon = nullptr;
  const Section* demand = nullptr;
  for (const auto& s : doc.sections) {
    if (s.name == "horizon") {
      if (horizon) fail(doc.source, s.line, "duplicate [horizon] section");
      horizon = &s;
    } else if (s.name == "item") {
      inst.items.push_back(read_item(doc, s, inst.items.size() + 1));
    } else if (s.name == "demand") {
      if (demand) fail(doc.source, s.line, "duplicate [demand] section");
      demand = &s;
    } else if (!others.count(s.name)) {
      fail(doc.source, s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!horizon) fail(doc.source, 0, "missing [horizon] section");
  if (inst.items.empty()) fail(doc.source, 0, "no [item] sections");

  inst.config = read_horizon(doc, *horizon);
  if (inst.config.num_items == 0) inst.config.num_items = inst.items.size();
  try {
    validate_instance(inst.items, inst.config);
  } catch (const std::invalid_argument& e) {
    fail(doc.source, horizon->line, e.what());
  }

  if (demand) {
    SectionReader r(doc, *demand, {"csv", "values"}, {"values"});
    const auto n = inst.items.size();
    const auto horizon_len = inst.config.num_periods;
    if (r.has("csv") && r.has("values")) {
      fail(doc.source, demand->line, "[demand] takes either csv or values, not both");
    }
    if (r.has("csv")) {
      std::filesystem::path path = r.text("csv");
      if (path.is_relative()) path = base_dir / path;
      inst.demand = load_demand_csv(path, n, horizon_len);
    } else {
      const auto rows = r.all("values");
      if (rows.size() != n) {
        fail(doc.source, demand->line,
             "[demand] needs one 'values' line per item (" + std::to_string(n) + ")");
      }
      std::vector<std::int64_t> values;
      for (const auto* e : rows) {
        const auto tokens = split(e->value, ',');
        if (tokens.size() != horizon_len) {
          fail(doc.source, e->line, "field 'values': expected " + std::to_string(horizon_len) +
                                        " demands, got " + std::to_string(tokens.size()));
        }
        for (const auto& t : tokens) {
          const auto v = r.parse_integer(*e, t);
          if (v < 0) fail(doc.source, e->line, "field 'values': demand must be >= 0");
          values.push_back(v);
        }
      }
      inst.demand = DemandSchedule(n, horizon_len, std::move(values));
    }
  }
  return inst;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return in;
}

}  // namespace

Instance parse_instance(std::istream& in, const std::string& source_name,
                        const std::filesystem::path& base_dir) {
  return read_instance_sections(parse_document(in, source_name), base_dir);
}

Instance load_instance(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_instance(in, path.string(), path.parent_path());
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << "[horizon]\n"
      << "num_periods = " << instance.config.num_periods << "\n"
      << "period_length = " << format_fixed(instance.config.period_length) << "\n"
      << "cost_tolerance = " << format_fixed(instance.config.cost_tolerance) << "\n";
  for (const auto& item : instance.items) {
    out << "\n[item]\n"
        << "name = " << item.name << "\n"
        << "batch_time = " << format_fixed(item.batch_time) << "\n"
        << "batch_size = " << item.batch_size << "\n"
        << "setup_cost = " << format_fixed(item.setup_cost) << "\n"
        << "inventory_cost_rate = " << format_fixed(item.inventory_cost_rate) << "\n"
        << "initial_inventory = " << item.initial_inventory << "\n"
        << "trigger_point = " << item.trigger_point << "\n"
        << "demand_mean = " << format_fixed(item.demand_mean) << "\n"
        << "demand_std = " << format_fixed(item.demand_std) << "\n";
  }
  if (instance.demand) {
    out << "\n[demand]\n";
    const auto& d = *instance.demand;
    for (std::size_t i = 0; i < d.num_items(); ++i) {
      out << "values = ";
      for (std::size_t h = 1; h <= d.num_periods(); ++h) out << (h > 1 ? ", " : "") << d(i, h);
      out << "\n";
    }
  }
}

void write_demand_csv(std::ostream& out, const DemandSchedule& schedule) {
  out << "item,period,demand\n";
  for (std::size_t i = 0; i < schedule.num_items(); ++i) {
    for (std::size_t h = 1; h <= schedule.num_periods(); ++h) {
      out << (i + 1) << ',' << h << ',' << schedule(i, h) << '\n';
    }
  }
}

DemandSchedule read_demand_csv(std::istream& in, const std::string& source_name,
                               std::size_t num_items, std::size_t num_periods) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != "item,period,demand") {
    fail(source_name, 1, "expected header 'item,period,demand'");
  }
  DemandSchedule schedule(num_items, num_periods);
  std::vector<bool> seen(num_items * num_periods, false);
  auto number = [&](const std::string& token, const char* field) {
    std::int64_t v = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc() || ptr != end) {
      fail(source_name, line_no, std::string("field '") + field + "': '" + token + "' is not an integer");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split(trim(line), ',');
    if (cols.size() != 3) fail(source_name, line_no, "expected 3 columns");
    const auto item = number(cols[0], "item");
    const auto period = number(cols[1], "period");
    const auto demand = number(cols[2], "demand");
    if (item < 1 || static_cast<std::size_t>(item) > num_items) {
      fail(source_name, line_no, "field 'item': " + cols[0] + " outside 1.." + std::to_string(num_items));
    }
    if (period < 1 || static_cast<std::size_t>(period) > num_periods) {
      fail(source_name, line_no,
           "field 'period': " + cols[1] + " outside 1.." + std::to_string(num_periods));
    }
    if (demand < 0) fail(source_name, line_no, "field 'demand': must be >= 0");
    const auto idx = static_cast<std::size_t>(item - 1) * num_periods + static_cast<std::size_t>(period - 1);
    if (seen[idx]) fail(source_name, line_no, "duplicate (item, period) row");
    seen[idx] = true;
    schedule.set(static_cast<std::size_t>(item - 1), static_cast<std::size_t>(period), demand);
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      fail(source_name, line_no, "missing row for item " + std::to_string(k / num_periods + 1) +
                                     ", period " + std::to_string(k % num_periods + 1));
    }
  }
  return schedule;
}

DemandSchedule load_demand_csv(const std::filesystem::path& path, std::size_t num_items,
                               std::size_t num_periods) {
  auto in = open_input(path);
  return read_demand_csv(in, path.string(), num_items, num_periods);
}

experiments::SweepSpec parse_sweep_spec(std::istream& in, const std::string& source_name,
                                        const std::filesystem::path& base_dir) {
  const auto doc = parse_document(in, source_name);
  const Section* sweep = nullptr;
  const Section* sa = nullptr;
  bool inline_instance = false;
  for (const auto& s : doc.sections) {
    if (s.name == "sweep") {
      if (sweep) fail(source_name, s.line, "duplicate [sweep] section");
      sweep = &s;
    } else if (s.name == "sa") {
      if (sa) fail(source_name, s.line, "duplicate [sa] section");
      sa = &s;
    } else if (s.name == "horizon" || s.name == "item" || s.name == "demand") {
      inline_instance = true;
    } else {
      fail(source_name, s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!sweep) fail(source_name, 0, "missing [sweep] section");

  SectionReader r(doc, *sweep,
                  {"instance", "axis", "values", "num_schedules", "seeds", "methods", "lambda_max"});
  experiments::SweepSpec spec;

  Instance inst;
  if (r.has("instance")) {
    if (inline_instance) fail(source_name, sweep->line, "instance given both inline and by path");
    std::filesystem::path path = r.text("instance");
    if (path.is_relative()) path = base_dir / path;
    inst = load_instance(path);
  } else {
    inst = read_instance_sections(doc, base_dir, {"sweep", "sa"});
  }
  spec.items = inst.items;
  spec.config = inst.config;

  try {
    spec.axis = experiments::parse_axis(r.text("axis"));
  } catch (const std::invalid_argument& e) {
    fail(source_name, r.entry("axis").line, e.what());
  }
  if (r.has("values")) {
    const auto& e = r.entry("values");
    for (const auto& t : split(e.value, ',')) spec.values.push_back(r.parse_real(e, t));
  } else {
    spec.values = experiments::default_grid(spec.axis);
  }
  spec.num_schedules = r.has("num_schedules") ? r.count("num_schedules") : 5;
  if (r.has("seeds")) {
    const auto& e = r.entry("seeds");
    for (const auto& t : split(e.value, ',')) {
      const auto v = r.parse_integer(e, t);
      if (v < 0) fail(source_name, e.line, "field 'seeds': must be >= 0");
      spec.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  if (r.has("methods")) {
    spec.methods.clear();
    const auto& e = r.entry("methods");
    for (const auto& t : split(e.value, ',')) {
      try {
        spec.methods.push_back(experiments::parse_method(t));
      } catch (const std::invalid_argument& ex) {
        fail(source_name, e.line, ex.what());
      }
    }
  }
  spec.lambda_max = r.integer_or("lambda_max", spec.lambda_max);

  if (sa) {
    SectionReader s(doc, *sa,
                    {"iterations", "cooling_fraction", "step", "restarts", "max_proposal_attempts"});
    if (s.has("iterations")) spec.sa.iterations = s.count("iterations");
    spec.sa.cooling_fraction = s.real_or("cooling_fraction", spec.sa.cooling_fraction);
    spec.sa.step = s.integer_or("step", spec.sa.step);
    if (s.has("restarts")) spec.sa.restarts = s.count("restarts");
    if (s.has("max_proposal_attempts")) spec.sa.max_proposal_attempts = s.count("max_proposal_attempts");
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(source_name, sweep->line, e.what());
  }
  return spec;
}

experiments::SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_sweep_spec(in, path.string(), path.parent_path());
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out(buf);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

std::string sweep_csv_line(const experiments::SweepRow& row) {
  auto opt = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string(); };
  const char* outcome = row.outcome == experiments::Outcome::feasible     ? "true"
                        : row.outcome == experiments::Outcome::infeasible ? "false"
                                                                          : "error";
  std::ostringstream line;
  line << experiments::to_string(row.axis) << ',' << format_fixed(row.axis_value) << ','
       << row.schedule_id << ',' << experiments::to_string(row.method) << ',' << outcome << ','
       << opt(row.rms_wheel_time) << ',' << opt(row.simulated_total_cost) << ','
       << opt(row.relaxed_cost) << ',' << (row.wheel ? row.wheel->to_string(';') : "") << ','
       << format_fixed(row.wallclock_ms);
  return line.str();
}

void write_sweep_csv(std::ostream& out, const std::vector<experiments::SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : rows) out << sweep_csv_line(row) << '\n';
}

std::vector<experiments::SweepRow> read_sweep_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != kSweepCsvHeader) {
    fail(source_name, 1, "unexpected sweep CSV header");
  }
  auto real = [&](const std::string& t, const char* field) {
    double v = 0.0;
    const auto* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || ptr != end) {
      fail(source_name, line_no, std::string("field '") + field + "': '" + t + "' is not a number");
    }
    return v;
  };
  auto opt_real = [&](const std::string& t, const char* field) -> std::optional<double> {
    if (t.empty()) return std::nullopt;
    return real(t, field);
  };

  std::vector<experiments::SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto c = split(trim(line), ',');
    if (c.size() != 10) fail(source_name, line_no, "expected 10 columns");
    experiments::SweepRow row;
    try {
      row.axis = experiments::parse_axis(c[0]);
      row.method = experiments::parse_method(c[3]);
    } catch (const std::invalid_argument& e) {
      fail(source_name, line_no, e.what());
    }
    row.axis_value = real(c[1], "axis_value");
    row.schedule_id = static_cast<std::size_t>(real(c[2], "schedule_id"));
    if (c[4] == "true") {
      row.outcome = experiments::Outcome::feasible;
    } else if (c[4] == "false") {
      row.outcome = experiments::Outcome::infeasible;
    } else if (c[4] == "error") {
      row.outcome = experiments::Outcome::error;
    } else {
      fail(source_name, line_no, "field 'feasible': expected true, false or error");
    }
    row.rms_wheel_time = opt_real(c[5], "rms_wheel_time");
    row.simulated_total_cost = opt_real(c[6], "simulated_total_cost");
    row.relaxed_cost = opt_real(c[7], "relaxed_cost");
    if (!c[8].empty()) {
      try {
        row.wheel = ProductWheel::parse(c[8], ';');
      } catch (const std::invalid_argument& e) {
        fail(source_name, line_no, e.what());
      }
    }
    row.wallclock_ms = real(c[9], "wallclock_ms");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wheelopt::io
