#include "powercomm/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "powercomm/rng.hpp"

namespace powercomm {
namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  const int kMaxIter = 300;
  const double kEps = 1e-12;
  const double kFpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpmin) d = kFpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpmin) d = kFpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpmin) c = kFpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpmin) d = kFpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpmin) c = kFpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction stalled");
}

std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a,
                             std::array<double, 3> rhs) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) throw std::runtime_error("collinear design (zero matrix)");
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-12 * scale)
      throw std::runtime_error("collinear design (rank-deficient)");
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return {rhs[0] / a[0][0], rhs[1] / a[1][1], rhs[2] / a[2][2]};
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double binom_loglik(double p, double k, double n) {
  double ll = 0.0;
  if (k > 0) ll += k * std::log(p);
  if (n - k > 0) ll += (n - k) * std::log1p(-p);
  return ll;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("t-test needs df > 0");
  if (!std::isfinite(t)) return 0.0;
  double p = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
  return std::clamp(p, 0.0, 1.0);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double chi2_p_one_df(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

RegressionResult ols_power_regression(const std::vector<double>& values,
                                      const std::vector<int>& power,
                                      const std::vector<double>& token_counts) {
  const size_t n = values.size();
  if (power.size() != n || token_counts.size() != n)
    throw std::invalid_argument("ols inputs must be aligned");
  if (n < 4)
    throw std::invalid_argument("too few complete cases (need >= 4)");
  std::array<std::array<double, 3>, 3> xtx{};
  std::array<double, 3> xty{};
  for (size_t i = 0; i < n; ++i) {
    std::array<double, 3> x = {1.0, static_cast<double>(power[i]),
                               token_counts[i]};
    for (int r = 0; r < 3; ++r) {
      xty[r] += x[r] * values[i];
      for (int c = 0; c < 3; ++c) xtx[r][c] += x[r] * x[c];
    }
  }
  std::array<double, 3> beta = solve3(xtx, xty);
  // (X'X)^-1 column for the power coefficient's variance.
  std::array<double, 3> inv_col = solve3(xtx, {0.0, 1.0, 0.0});
  double rss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double fit = beta[0] + beta[1] * power[i] + beta[2] * token_counts[i];
    double r = values[i] - fit;
    rss += r * r;
  }
  double df = static_cast<double>(n) - 3.0;
  double sigma2 = rss / df;
  double var_b = sigma2 * std::max(inv_col[1], 0.0);
  RegressionResult out;
  out.b = beta[1];
  out.n = static_cast<std::int64_t>(n);
  out.controls = {"token_count"};
  out.method = "ols";
  if (var_b > 0.0) {
    out.t = beta[1] / std::sqrt(var_b);
    out.p = student_t_two_sided_p(out.t, df);
  } else {
    out.t = 0.0;
    out.p = 1.0;
  }
  return out;
}

RegressionResult logistic_regression(const std::vector<int>& y,
                                     const std::vector<int>& x) {
  const size_t n = y.size();
  if (x.size() != n) throw std::invalid_argument("logistic inputs misaligned");
  bool has0 = false, has1 = false;
  for (int yi : y) (yi ? has1 : has0) = true;
  if (!has0 || !has1)
    throw std::runtime_error("both outcome classes must be present");
  double b0 = 0.0, b1 = 0.0;
  std::string trace;
  auto info = [&](double& h00, double& h01, double& h11) {
    h00 = h01 = h11 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double mu = 1.0 / (1.0 + std::exp(-(b0 + b1 * x[i])));
      double w = mu * (1.0 - mu);
      h00 += w;
      h01 += w * x[i];
      h11 += w * x[i] * x[i];
    }
  };
  for (int iter = 1; iter <= 100; ++iter) {
    double g0 = 0.0, g1 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double mu = 1.0 / (1.0 + std::exp(-(b0 + b1 * x[i])));
      g0 += y[i] - mu;
      g1 += x[i] * (y[i] - mu);
    }
    double h00, h01, h11;
    info(h00, h01, h11);
    double det = h00 * h11 - h01 * h01;
    if (!(det > 1e-12 * (std::fabs(h00 * h11) + 1e-300)))
      throw std::runtime_error(
          "singular information matrix (separation suspected)\n" + trace);
    double d0 = (h11 * g0 - h01 * g1) / det;
    double d1 = (-h01 * g0 + h00 * g1) / det;
    b0 += d0;
    b1 += d1;
    char line[128];
    std::snprintf(line, sizeof(line), "iter %d: b0=%.10g b1=%.10g step=%.3g\n",
                  iter, b0, b1, std::max(std::fabs(d0), std::fabs(d1)));
    trace += line;
    if (std::fabs(b0) > 30.0 || std::fabs(b1) > 30.0)
      throw std::runtime_error("separation detected (diverging coefficient)\n" +
                               trace);
    if (std::max(std::fabs(d0), std::fabs(d1)) < 1e-8) {
      double h00f, h01f, h11f;
      info(h00f, h01f, h11f);
      double detf = h00f * h11f - h01f * h01f;
      if (!(detf > 0.0))
        throw std::runtime_error("singular information at optimum\n" + trace);
      double se = std::sqrt(h00f / detf);
      RegressionResult out;
      out.b = b1;
      out.t = se > 0.0 ? b1 / se : 0.0;
      out.p = se > 0.0 ? normal_two_sided_p(out.t) : 1.0;
      out.n = static_cast<std::int64_t>(n);
      out.method = "logistic_wald";
      return out;
    }
  }
  throw std::runtime_error("logistic regression did not converge\n" + trace);
}

RegressionResult logistic_power_test(const std::vector<int>& y,
                                     const std::vector<int>& x) {
  const size_t n = y.size();
  if (x.size() != n) throw std::invalid_argument("logistic inputs misaligned");
  RegressionResult trivial;
  trivial.n = static_cast<std::int64_t>(n);
  trivial.method = "trivial";
  if (n == 0) return trivial;
  bool y_varies = false, x_varies = false;
  for (size_t i = 1; i < n; ++i) {
    y_varies |= y[i] != y[0];
    x_varies |= x[i] != x[0];
  }
  if (!y_varies || !x_varies) return trivial;
  try {
    return logistic_regression(y, x);
  } catch (const std::exception&) {
    // 2x2 likelihood-ratio test is defined even under separation.
    double n1 = 0, k1 = 0, n0 = 0, k0 = 0;
    for (size_t i = 0; i < n; ++i) {
      if (x[i]) {
        ++n1;
        k1 += y[i];
      } else {
        ++n0;
        k0 += y[i];
      }
    }
    double pp = (k0 + k1) / (n0 + n1);
    double g = 2.0 * (binom_loglik(k1 / n1, k1, n1) +
                      binom_loglik(k0 / n0, k0, n0) -
                      binom_loglik(pp, k0 + k1, n0 + n1));
    g = std::max(g, 0.0);
    RegressionResult out;
    out.b = std::log((k1 + 0.5) / (n1 - k1 + 0.5)) -
            std::log((k0 + 0.5) / (n0 - k0 + 0.5));
    out.t = (out.b < 0 ? -1.0 : 1.0) * std::sqrt(g);
    out.p = chi2_p_one_df(g);
    out.n = static_cast<std::int64_t>(n);
    out.method = "logistic_lrt";
    return out;
  }
}

RelativeDifference relative_difference(double mean_sub, double mean_sup) {
  if (mean_sup == 0.0)
    throw std::invalid_argument("relative difference undefined for zero "
                                "superior mean");
  RelativeDifference rd;
  rd.mean_sub = mean_sub;
  rd.mean_sup = mean_sup;
  rd.rd_percent = (mean_sub - mean_sup) * 100.0 / mean_sup;
  return rd;
}

std::vector<double> bonferroni(const std::vector<double>& p_values, int m) {
  if (m < static_cast<int>(p_values.size()))
    throw std::invalid_argument("bonferroni m must cover all tests");
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) out.push_back(std::min(1.0, p * m));
  return out;
}

RandomizationResult approx_randomization(const std::vector<int>& correct_a,
                                         const std::vector<int>& correct_b,
                                         int R, std::uint64_t seed) {
  if (correct_a.size() != correct_b.size())
    throw std::invalid_argument("correctness vectors must be aligned");
  if (R < 1000) throw std::invalid_argument("randomization needs R >= 1000");
  const size_t n = correct_a.size();
  std::int64_t observed = 0;
  for (size_t i = 0; i < n; ++i) observed += correct_a[i] - correct_b[i];
  const std::int64_t obs_abs = observed < 0 ? -observed : observed;
  int count = 0;
  for (int r = 0; r < R; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::int64_t diff = 0;
    for (size_t i = 0; i < n; ++i) {
      int d = correct_a[i] - correct_b[i];
      diff += rng.next_bool() ? -d : d;
    }
    if ((diff < 0 ? -diff : diff) >= obs_abs) ++count;
  }
  RandomizationResult out;
  out.p_value = static_cast<double>(count + 1) / static_cast<double>(R + 1);
  out.iterations = R;
  out.seed = seed;
  out.observed_diff = n ? static_cast<double>(observed) / n : 0.0;
  return out;
}

std::vector<HypothesisRow> run_hypothesis_suite(
    const std::vector<ParticipantBelief>& participants) {
  std::vector<ParticipantBelief> rows;
  for (const auto& p : participants)
    if (p.token_count > 0) rows.push_back(p);
  struct Feature {
    const char* name;
    double ParticipantBelief::* member;
  };
  const std::array<Feature, 4> kFeatures = {{
      {"CBCount", &ParticipantBelief::cb},
      {"NCBCount", &ParticipantBelief::ncb},
      {"ROBCount", &ParticipantBelief::rob},
      {"NACount", &ParticipantBelief::na},
  }};
  std::vector<HypothesisRow> out;
  std::vector<double> raw_p;
  for (const Feature& f : kFeatures) {
    std::vector<double> values, tokens;
    std::vector<int> power;
    // Group means are counts normalized by word count: total heads per 100
    // tokens within each group, so short rows are not over-weighted.
    double cnt_sub = 0, cnt_sup = 0, tok_sub = 0, tok_sup = 0;
    for (const auto& p : rows) {
      values.push_back(p.*(f.member));
      power.push_back(p.power);
      tokens.push_back(p.token_count);
      if (p.power) {
        cnt_sup += p.*(f.member);
        tok_sup += p.token_count;
      } else {
        cnt_sub += p.*(f.member);
        tok_sub += p.token_count;
      }
    }
    RegressionResult reg = ols_power_regression(values, power, tokens);
    HypothesisRow row;
    row.feature = f.name;
    row.b = reg.b;
    row.t = reg.t;
    row.p = reg.p;
    row.n = reg.n;
    row.mean_sub = tok_sub > 0 ? cnt_sub / tok_sub * 100.0 : 0.0;
    row.mean_sup = tok_sup > 0 ? cnt_sup / tok_sup * 100.0 : 0.0;
    // A zero superior mean leaves rd at 0 (the ratio has no defined value).
    if (row.mean_sup != 0.0)
      row.rd_percent = relative_difference(row.mean_sub, row.mean_sup)
                           .rd_percent;
    raw_p.push_back(reg.p);
    out.push_back(std::move(row));
  }
  std::vector<double> adj = bonferroni(raw_p, 4);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].p_adjusted = adj[i];
    out[i].significant = adj[i] < 0.05;
  }
  return out;
}

std::string format_hypothesis_report(const std::vector<HypothesisRow>& rows) {
  std::string s =
      "feature\tb\tt\tp\tp_adjusted\trd_percent\tmean_sub\tmean_sup\tn\t"
      "significant\n";
  for (const auto& r : rows) {
    s += r.feature;
    s += '\t';
    s += fmt_g(r.b);
    s += '\t';
    s += fmt_g(r.t);
    s += '\t';
    s += fmt_g(r.p);
    s += '\t';
    s += fmt_g(r.p_adjusted);
    s += '\t';
    s += fmt_g(r.rd_percent);
    s += '\t';
    s += fmt_g(r.mean_sub);
    s += '\t';
    s += fmt_g(r.mean_sup);
    s += '\t';
    s += std::to_string(r.n);
    s += '\t';
    s += r.significant ? "1" : "0";
    s += '\n';
  }
  return s;
}

std::string format_chart_data(const std::vector<HypothesisRow>& rows) {
  std::string s;
  for (const auto& r : rows) {
    s += r.feature;
    s += '\t';
    s += fmt_g(r.rd_percent);
    s += '\t';
    s += r.significant ? "1" : "0";
    s += '\n';
  }
  return s;
}

}  // namespace powercomm
