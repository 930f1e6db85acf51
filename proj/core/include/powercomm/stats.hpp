#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace powercomm {

struct RegressionResult {
  double b = 0.0;         // coefficient of interest (power indicator)
  double t = 0.0;         // t statistic (OLS) or Wald z (logistic)
  double p = 1.0;         // two-sided p-value
  std::int64_t n = 0;     // complete cases used
  std::vector<std::string> controls;
  std::string method;     // "ols", "logistic_wald", "logistic_lrt", "trivial"
};

struct RandomizationResult {
  double p_value = 1.0;   // (count(|shuffled| >= |observed|) + 1) / (R + 1)
  int iterations = 0;
  std::uint64_t seed = 0;
  double observed_diff = 0.0;  // mean(a) - mean(b)
};

struct RelativeDifference {
  std::string feature;
  double rd_percent = 0.0;  // (mean_sub - mean_sup) * 100 / mean_sup
  double mean_sub = 0.0;
  double mean_sup = 0.0;
  bool significant = false;
};

// Distribution helpers (tested against quadrature/erfc oracles).
double regularized_incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, double df);
double normal_two_sided_p(double z);
double chi2_p_one_df(double x);  // upper tail, 1 degree of freedom

// OLS of values on [intercept, power, token_count]; reports the power
// coefficient with its two-sided t-test. Throws std::runtime_error on a
// rank-deficient design and std::invalid_argument when fewer than 4
// complete cases remain.
RegressionResult ols_power_regression(const std::vector<double>& values,
                                      const std::vector<int>& power,
                                      const std::vector<double>& token_counts);

// Logistic regression of a binary outcome on [intercept, x] via
// Newton-Raphson (tolerance 1e-8, max 100 iterations); Wald z and p for x.
// Throws when a class is missing, on separation, or on non-convergence
// (the message carries the iteration trace).
RegressionResult logistic_regression(const std::vector<int>& y,
                                     const std::vector<int>& x);

// Robust wrapper for audit use: constant y or constant x -> trivial null
// (p=1); separation/non-convergence falls back to a 2x2 likelihood-ratio
// test (method "logistic_lrt").
RegressionResult logistic_power_test(const std::vector<int>& y,
                                     const std::vector<int>& x);

// Throws std::invalid_argument when mean_sup == 0.
RelativeDifference relative_difference(double mean_sub, double mean_sup);

// Each p -> min(1, p*m). Requires m >= p_values.size().
std::vector<double> bonferroni(const std::vector<double>& p_values, int m);

// Paired label-swap randomization over aligned correctness vectors; each
// pair swaps with probability 1/2 per iteration, counter-seeded from the
// given seed. Differences are compared in integer space. Requires equal
// lengths and R >= 1000.
RandomizationResult approx_randomization(const std::vector<int>& correct_a,
                                         const std::vector<int>& correct_b,
                                         int R, std::uint64_t seed);

// One participant row for the hypothesis suite: raw per-thread belief
// counts, the token-count control, and the power role (1 = superior).
struct ParticipantBelief {
  double cb = 0, ncb = 0, rob = 0, na = 0;
  double token_count = 0;
  int power = 0;
};

struct HypothesisRow {
  std::string feature;  // CBCount / NCBCount / ROBCount / NACount
  double b = 0, t = 0, p = 1, p_adjusted = 1;
  double rd_percent = 0, mean_sub = 0, mean_sup = 0;
  std::int64_t n = 0;
  bool significant = false;  // p_adjusted < 0.05
};

// One OLS test per belief count (token-count control), Bonferroni m=4,
// plus relative differences of per-100-token group means. Rows ordered
// CB, NCB, ROB, NA.
std::vector<HypothesisRow> run_hypothesis_suite(
    const std::vector<ParticipantBelief>& participants);

// Machine-readable table: header + one row per feature, tab-separated.
std::string format_hypothesis_report(const std::vector<HypothesisRow>& rows);

// Chart-data rows "label<TAB>rd_percent<TAB>significant".
std::string format_chart_data(const std::vector<HypothesisRow>& rows);

}  // namespace powercomm
