#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mvbandit/concentration.hpp"
#include "mvbandit/experiments.hpp"

namespace mvbandit {

/// 17 significant digits; round-trips any double exactly.
std::string format_double(double v);

// Regret reports. Columns:
//   policy, T, replications, empirical_xi, se, benchmark, proxy_emp, proxy_cf,
//   term_delta, term_gamma, term_cross, term_sigma, thm3_upper, thm2_lower, thm1_gap
void write_regret_csv(std::ostream& out, std::span<const ScenarioRow> rows);

struct ParsedRegretRow {
  std::string policy;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  double empirical_xi = 0.0;
  double se = 0.0;
  double benchmark = 0.0;
  double proxy_emp = 0.0;
  double proxy_cf = 0.0;
  double term_delta = 0.0;
  double term_gamma = 0.0;
  double term_cross = 0.0;
  double term_sigma = 0.0;
  double thm3_upper = 0.0;
  double thm2_lower = 0.0;
  double thm1_gap = 0.0;
};

std::vector<ParsedRegretRow> parse_regret_csv(std::istream& in);

// Tail check reports. Columns: s, delta, tail_side, empirical, bound, std_err, violated
// (violated is true/false, or na for inapplicable lower-tail cells).
void write_tail_csv(std::ostream& out, const TailCheckReport& report);
TailCheckReport parse_tail_csv(std::istream& in);

// Reward traces. Columns: t, arm, reward. Long traces are downsampled by a
// stride so at most `max_rows` rows are written.
void write_trace_csv(std::ostream& out, const RunTrace& trace, std::size_t max_rows = 10000);

// Minimax scaling rows. Columns: T, delta, regret_f, se_f, regret_f_prime,
// se_f_prime, max_regret.
void write_minimax_csv(std::ostream& out, std::span<const MinimaxRow> rows);

}  // namespace mvbandit
