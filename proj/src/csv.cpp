#include "mvbandit/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mvbandit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) {
    throw std::invalid_argument("bad numeric field: '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  return static_cast<std::uint64_t>(std::strtoull(s.c_str(), nullptr, 10));
}

void expect_header(const std::string& got, const std::string& want) {
  if (got != want) {
    throw std::invalid_argument("unexpected header: '" + got + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_regret_csv(std::ostream& out, std::span<const ScenarioRow> rows) {
  out << "policy,T,replications,empirical_xi,se,benchmark,proxy_emp,proxy_cf,"
         "term_delta,term_gamma,term_cross,term_sigma,thm3_upper,thm2_lower,thm1_gap\n";
  for (const ScenarioRow& row : rows) {
    const RegretReport& r = row.report;
    out << row.policy << ',' << row.horizon << ',' << r.replications << ','
        << format_double(r.empirical_mv.value) << ',' << format_double(r.empirical_mv.std_err) << ','
        << format_double(r.benchmark_mv) << ',' << format_double(r.proxy_empirical.value) << ','
        << format_double(r.closed_form.total.value) << ',' << format_double(r.closed_form.term_gap.value)
        << ',' << format_double(r.closed_form.term_spread.value) << ','
        << format_double(r.closed_form.term_cross.value) << ','
        << format_double(r.closed_form.term_best_var) << ',' << format_double(r.ucb_regret_upper) << ','
        << format_double(r.consistency_lower) << ',' << format_double(r.benchmark_gap_bound) << '\n';
  }
}

std::vector<ParsedRegretRow> parse_regret_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty regret csv");
  }
  expect_header(line,
                "policy,T,replications,empirical_xi,se,benchmark,proxy_emp,proxy_cf,"
                "term_delta,term_gamma,term_cross,term_sigma,thm3_upper,thm2_lower,thm1_gap");
  std::vector<ParsedRegretRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split_line(line);
    if (fields.size() != 15) {
      throw std::invalid_argument("regret row needs 15 fields");
    }
    ParsedRegretRow row;
    row.policy = fields[0];
    row.horizon = parse_u64(fields[1]);
    row.replications = parse_u64(fields[2]);
    row.empirical_xi = parse_double(fields[3]);
    row.se = parse_double(fields[4]);
    row.benchmark = parse_double(fields[5]);
    row.proxy_emp = parse_double(fields[6]);
    row.proxy_cf = parse_double(fields[7]);
    row.term_delta = parse_double(fields[8]);
    row.term_gamma = parse_double(fields[9]);
    row.term_cross = parse_double(fields[10]);
    row.term_sigma = parse_double(fields[11]);
    row.thm3_upper = parse_double(fields[12]);
    row.thm2_lower = parse_double(fields[13]);
    row.thm1_gap = parse_double(fields[14]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_tail_csv(std::ostream& out, const TailCheckReport& report) {
  out << "s,delta,tail_side,empirical,bound,std_err,violated\n";
  for (const TailCheckRow& row : report.rows) {
    out << row.sample_count << ',' << format_double(row.deviation) << ','
        << (row.side == TailSide::kUpper ? "upper" : "lower") << ',' << format_double(row.empirical)
        << ',' << format_double(row.bound) << ',' << format_double(row.std_err) << ','
        << (row.violated.has_value() ? (*row.violated ? "true" : "false") : "na") << '\n';
  }
}

TailCheckReport parse_tail_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty tail csv");
  }
  expect_header(line, "s,delta,tail_side,empirical,bound,std_err,violated");
  TailCheckReport report;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split_line(line);
    if (fields.size() != 7) {
      throw std::invalid_argument("tail row needs 7 fields");
    }
    TailCheckRow row;
    row.sample_count = parse_u64(fields[0]);
    row.deviation = parse_double(fields[1]);
    if (fields[2] == "upper") {
      row.side = TailSide::kUpper;
    } else if (fields[2] == "lower") {
      row.side = TailSide::kLower;
    } else {
      throw std::invalid_argument("bad tail side: '" + fields[2] + "'");
    }
    row.empirical = parse_double(fields[3]);
    row.bound = parse_double(fields[4]);
    row.std_err = parse_double(fields[5]);
    if (fields[6] == "true") {
      row.violated = true;
    } else if (fields[6] == "false") {
      row.violated = false;
    } else if (fields[6] == "na") {
      row.violated = std::nullopt;
    } else {
      throw std::invalid_argument("bad violated flag: '" + fields[6] + "'");
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace, std::size_t max_rows) {
  out << "t,arm,reward\n";
  if (trace.choices.empty() || max_rows == 0) {
    return;
  }
  const std::size_t stride = (trace.choices.size() + max_rows - 1) / max_rows;
  for (std::size_t i = 0; i < trace.choices.size(); i += stride) {
    out << (i + 1) << ',' << trace.choices[i] << ',' << format_double(trace.rewards[i]) << '\n';
  }
}

void write_minimax_csv(std::ostream& out, std::span<const MinimaxRow> rows) {
  out << "T,delta,regret_f,se_f,regret_f_prime,se_f_prime,max_regret\n";
  for (const MinimaxRow& row : rows) {
    out << row.horizon << ',' << format_double(row.delta) << ',' << format_double(row.regret_f.value)
        << ',' << format_double(row.regret_f.std_err) << ',' << format_double(row.regret_f_prime.value)
        << ',' << format_double(row.regret_f_prime.std_err) << ',' << format_double(row.max_regret)
        << '\n';
  }
}

}  // namespace mvbandit
