#include "powercomm/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "powercomm/rng.hpp"

namespace powercomm {
namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct SparseInstance {
  std::vector<std::pair<int, double>> x;
  double y = 0.0;
};

std::vector<SparseInstance> sparsify(const std::vector<Instance>& instances,
                                     const Vocabulary& vocab) {
  std::vector<SparseInstance> out(instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].label != 1 && instances[i].label != -1)
      throw std::invalid_argument("labels must be +1 or -1");
    out[i].y = static_cast<double>(instances[i].label);
    for (const auto& [name, v] : instances[i].features) {
      if (v == 0.0) continue;
      auto it = vocab.index.find(name);
      if (it != vocab.index.end()) out[i].x.emplace_back(it->second, v);
    }
  }
  return out;
}

}  // namespace

double LinearModel::weight(const std::string& name) const {
  auto it = vocab.index.find(name);
  return it == vocab.index.end() ? 0.0
                                 : weights[static_cast<size_t>(it->second)];
}

double LinearModel::score(const std::map<std::string, double>& features) const {
  double s = bias;
  for (const auto& [name, v] : features) {
    auto it = vocab.index.find(name);
    if (it != vocab.index.end())
      s += weights[static_cast<size_t>(it->second)] * v;
  }
  return s;
}

LinearModel train_svm(const std::vector<Instance>& train,
                      const Vocabulary& vocab, const TrainConfig& config) {
  if (config.reg_strength <= 0.0)
    throw std::invalid_argument("regularization strength must be positive");
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (config.loss != "HINGE")
    throw std::invalid_argument("unsupported loss: " + config.loss);
  if (train.size() < 2)
    throw std::invalid_argument("need at least 2 training instances");
  bool has_pos = false, has_neg = false;
  for (const Instance& ins : train) {
    if (ins.label > 0) has_pos = true;
    if (ins.label < 0) has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument(
        "degenerate labels: training data contains a single class");

  const std::vector<SparseInstance> data = sparsify(train, vocab);
  const size_t dim = vocab.index.size();
  const double lambda = config.reg_strength;
  const double t0 = 10.0;

  // Scaled representation w = s * v avoids touching every coordinate on the
  // per-step decay; weights are averaged over the final epoch for stability.
  std::vector<double> v(dim, 0.0);
  double s = 1.0;
  double b = 0.0;
  std::vector<double> avg_w(dim, 0.0);
  double avg_b = 0.0;
  size_t avg_n = 0;

  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  long long t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    const bool final_epoch = (epoch == config.epochs - 1);
    for (size_t idx : order) {
      ++t;
      const double step_t = static_cast<double>(t) + t0;
      const double eta = 1.0 / (lambda * step_t);
      s *= 1.0 - 1.0 / step_t;
      if (s < 1e-9) {
        for (double& vd : v) vd *= s;
        s = 1.0;
      }
      const SparseInstance& e = data[idx];
      double dot = 0.0;
      for (const auto& [c, val] : e.x) dot += v[static_cast<size_t>(c)] * val;
      if (e.y * (s * dot + b) < 1.0) {
        const double g = eta * e.y / s;
        for (const auto& [c, val] : e.x) v[static_cast<size_t>(c)] += g * val;
        b += eta * e.y;
      }
      if (final_epoch) {
        for (size_t d = 0; d < dim; ++d) avg_w[d] += s * v[d];
        avg_b += b;
        ++avg_n;
      }
    }
  }

  LinearModel model;
  model.vocab = vocab;
  model.config = config;
  model.weights.resize(dim);
  for (size_t d = 0; d < dim; ++d)
    model.weights[d] = avg_w[d] / static_cast<double>(avg_n);
  model.bias = avg_b / static_cast<double>(avg_n);
  return model;
}

double svm_objective(const LinearModel& model,
                     const std::vector<Instance>& instances) {
  if (instances.empty())
    throw std::invalid_argument("objective needs at least one instance");
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  reg *= 0.5 * model.config.reg_strength;
  double loss = 0.0;
  for (const Instance& ins : instances) {
    const double margin =
        static_cast<double>(ins.label) * model.score(ins.features);
    loss += std::max(0.0, 1.0 - margin);
  }
  return reg + loss / static_cast<double>(instances.size());
}

EvalResult evaluate(const LinearModel& model,
                    const std::vector<Instance>& instances) {
  if (instances.empty())
    throw std::invalid_argument("no instances to evaluate");
  const size_t n = instances.size();
  EvalResult r;
  r.total = static_cast<std::int64_t>(n);
  r.correctness.assign(n, 0);
  auto work = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      const Gold gold = instances[i].label > 0 ? Gold::P1_SUPERIOR
                                               : Gold::P1_SUBORDINATE;
      r.correctness[i] = model.predict(instances[i]) == gold ? 1 : 0;
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  if (n >= 4096 && hw > 1) {
    const size_t nthreads = std::min<size_t>(hw, 8);
    std::vector<std::thread> pool;
    const size_t chunk = (n + nthreads - 1) / nthreads;
    for (size_t k = 0; k < nthreads; ++k) {
      const size_t lo = k * chunk;
      const size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  } else {
    work(0, n);
  }
  for (int c : r.correctness) r.correct += c;
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  return r;
}

void save_model(const LinearModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  std::vector<std::string> names(model.weights.size());
  for (const auto& [name, col] : model.vocab.index) {
    if (col < 0 || static_cast<size_t>(col) >= names.size())
      throw std::runtime_error("vocabulary column out of range: " + name);
    names[static_cast<size_t>(col)] = name;
  }
  out << "powercomm-model 1\n";
  out << "reg_strength\t" << fmt17(model.config.reg_strength) << '\n';
  out << "epochs\t" << model.config.epochs << '\n';
  out << "seed\t" << model.config.seed << '\n';
  out << "loss\t" << model.config.loss << '\n';
  out << "bias\t" << fmt17(model.bias) << '\n';
  out << "features\t" << model.weights.size() << '\n';
  for (size_t d = 0; d < names.size(); ++d)
    out << names[d] << '\t' << fmt17(model.weights[d]) << '\n';
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty model file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "powercomm-model 1")
    throw std::runtime_error("unsupported model schema: " + line);

  LinearModel model;
  long long nfeatures = -1;
  auto next_kv = [&](const char* key) -> std::string {
    if (!std::getline(in, line))
      throw std::runtime_error(std::string("model file truncated before ") +
                               key);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != key)
      throw std::runtime_error(std::string("expected model field ") + key +
                               ", got: " + line);
    return line.substr(tab + 1);
  };
  model.config.reg_strength = std::strtod(next_kv("reg_strength").c_str(), nullptr);
  model.config.epochs = std::stoi(next_kv("epochs"));
  model.config.seed = std::strtoull(next_kv("seed").c_str(), nullptr, 10);
  model.config.loss = next_kv("loss");
  model.bias = std::strtod(next_kv("bias").c_str(), nullptr);
  nfeatures = std::stoll(next_kv("features"));
  if (nfeatures < 0) throw std::runtime_error("negative feature count");
  model.weights.reserve(static_cast<size_t>(nfeatures));
  for (long long i = 0; i < nfeatures; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("model file truncated in weight block");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t tab = line.rfind('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("malformed weight line: " + line);
    model.vocab.index[line.substr(0, tab)] = static_cast<int>(i);
    model.weights.push_back(std::strtod(line.c_str() + tab + 1, nullptr));
  }
  if (model.vocab.index.size() != static_cast<size_t>(nfeatures))
    throw std::runtime_error("duplicate feature names in model file");
  return model;
}

namespace {

// Parses "P1:LN:<lemma>(<LABEL>)" / "P2:LN:<lemma>(<LABEL>)" unigram names.
// Returns false for anything else (other families, orders >= 2, plain mode).
bool parse_tagged_unigram(const std::string& name, bool& is_p1,
                          std::string& lemma, BeliefLabel& label) {
  bool p1 = name.rfind("P1:LN:", 0) == 0;
  bool p2 = name.rfind("P2:LN:", 0) == 0;
  if (!p1 && !p2) return false;
  const std::string rest = name.substr(6);
  if (rest.find('_') != std::string::npos) return false;  // n-gram joiner
  if (rest.empty() || rest.back() != ')') return false;
  const size_t open = rest.rfind('(');
  if (open == std::string::npos || open == 0) return false;
  const std::string tag = rest.substr(open + 1, rest.size() - open - 2);
  if (tag != "CB" && tag != "NCB" && tag != "ROB" && tag != "NA") return false;
  is_p1 = p1;
  lemma = rest.substr(0, open);
  label = belief_from_name(tag);
  return true;
}

}  // namespace

std::vector<WeightVariationRow> weight_variation_report(
    const LinearModel& model, int top_k) {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  std::map<std::string, std::map<BeliefLabel, double>> by_lemma;
  bool any = false;
  for (const auto& [name, col] : model.vocab.index) {
    bool is_p1 = false;
    std::string lemma;
    BeliefLabel label = BeliefLabel::CB;
    if (!parse_tagged_unigram(name, is_p1, lemma, label)) continue;
    any = true;
    const double w = model.weights[static_cast<size_t>(col)];
    by_lemma[lemma][label] += is_p1 ? w : -w;
  }
  if (!any)
    throw std::invalid_argument(
        "no label-tagged lemma unigrams in model vocabulary");

  std::vector<WeightVariationRow> rows;
  for (auto& [lemma, versions] : by_lemma) {
    if (versions.size() < 2) continue;
    double mean = 0.0;
    for (const auto& [lab, w] : versions) mean += w;
    mean /= static_cast<double>(versions.size());
    double var = 0.0;
    for (const auto& [lab, w] : versions) var += (w - mean) * (w - mean);
    var /= static_cast<double>(versions.size());
    rows.push_back(WeightVariationRow{lemma, versions, std::sqrt(var)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const WeightVariationRow& a, const WeightVariationRow& b) {
              if (a.stddev != b.stddev) return a.stddev > b.stddev;
              return a.head_lemma < b.head_lemma;
            });
  if (rows.size() > static_cast<size_t>(top_k)) rows.resize(static_cast<size_t>(top_k));
  return rows;
}

std::string format_weight_variation(
    const std::vector<WeightVariationRow>& rows) {
  std::string out = "lemma\tstddev\tversions\n";
  for (const auto& row : rows) {
    out += row.head_lemma + '\t' + fmt6(row.stddev) + '\t';
    bool first = true;
    for (const auto& [label, w] : row.version_weights) {
      if (!first) out += ' ';
      first = false;
      out += std::string(to_string(label)) + "=" + fmt6(w);
    }
    out += '\n';
  }
  return out;
}

RegSelection select_reg_strength(const std::vector<Instance>& train,
                                 const Vocabulary& vocab,
                                 const std::vector<Instance>& dev,
                                 TrainConfig base,
                                 const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty regularization grid");
  RegSelection sel;
  double best_acc = -1.0;
  for (double strength : grid) {
    TrainConfig cfg = base;
    cfg.reg_strength = strength;
    LinearModel m = train_svm(train, vocab, cfg);
    const double acc = evaluate(m, dev).accuracy;
    sel.grid.emplace_back(strength, acc);
    if (acc > best_acc) {
      best_acc = acc;
      sel.reg_strength = strength;
      sel.model = std::move(m);
    }
  }
  return sel;
}

}  // namespace powercomm
