#include "powercomm/features.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace powercomm {
namespace {

bool starts_with(const std::string& s, const char* pre) {
  return s.rfind(pre, 0) == 0;
}

bool is_ngram_name(const std::string& n) {
  return starts_with(n, "LN:") || starts_with(n, "PN:") ||
         starts_with(n, "MN:");
}

bool has_ngram_infix(const std::string& n) {
  return n.find(":LN:") != std::string::npos ||
         n.find(":PN:") != std::string::npos ||
         n.find(":MN:") != std::string::npos || is_ngram_name(n);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(NgramFamily f) {
  switch (f) {
    case NgramFamily::LN: return "LN";
    case NgramFamily::PN: return "PN";
    case NgramFamily::MN: return "MN";
  }
  return "?";
}

FeatureConfig parse_feature_spec(const std::string& spec) {
  FeatureConfig cfg;
  cfg.vrb = cfg.pst = cfg.thr = cfg.dia = cfg.odp = false;
  std::string cur;
  std::vector<std::string> parts;
  for (char c : spec + "+") {
    if (c == '+') {
      if (!cur.empty()) parts.push_back(to_lower(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty feature spec");
  for (const std::string& p : parts) {
    if (p == "vrb") cfg.vrb = true;
    else if (p == "pst") cfg.pst = true;
    else if (p == "thr") cfg.thr = true;
    else if (p == "dia") cfg.dia = true;
    else if (p == "odp") cfg.odp = true;
    else if (p == "bel") cfg.bel = true;
    else if (p == "ln") cfg.ln = true;
    else if (p == "lnapnd") { cfg.ln = true; cfg.ln_mode = AppendMode::APPEND; }
    else if (p == "pn") cfg.pn = true;
    else if (p == "pnapnd") { cfg.pn = true; cfg.pn_mode = AppendMode::APPEND; }
    else if (p == "mn") cfg.mn = true;
    else if (p == "mnapnd") { cfg.mn = true; cfg.mn_mode = AppendMode::APPEND; }
    else if (p == "baseline") cfg.vrb = cfg.pst = cfg.thr = cfg.dia = cfg.odp = true;
    else if (p == "all") {
      cfg.vrb = cfg.pst = cfg.thr = cfg.dia = cfg.odp = true;
      cfg.ln = cfg.pn = cfg.mn = true;
    } else {
      throw std::invalid_argument("unknown feature family: " + p);
    }
  }
  return cfg;
}

std::string feature_spec_to_string(const FeatureConfig& cfg) {
  std::vector<std::string> parts;
  if (cfg.vrb) parts.push_back("VRB");
  if (cfg.pst) parts.push_back("PST");
  if (cfg.thr) parts.push_back("THR");
  if (cfg.dia) parts.push_back("DIA");
  if (cfg.odp) parts.push_back("ODP");
  if (cfg.bel) parts.push_back("BEL");
  if (cfg.ln) parts.push_back(cfg.ln_mode == AppendMode::APPEND ? "LNapnd" : "LN");
  if (cfg.pn) parts.push_back(cfg.pn_mode == AppendMode::APPEND ? "PNapnd" : "PN");
  if (cfg.mn) parts.push_back(cfg.mn_mode == AppendMode::APPEND ? "MNapnd" : "MN");
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "+";
    out += p;
  }
  return out;
}

FeatureExtractor::FeatureExtractor(const BeliefTagger& tagger,
                                   FeatureConfig config)
    : tagger_(tagger), cfg_(std::move(config)) {}

std::vector<std::string> FeatureExtractor::build_ngrams(
    const Sentence& sentence, const std::map<int, BeliefLabel>& head_labels,
    NgramFamily family, int order, AppendMode mode) {
  if (order < 1) throw std::invalid_argument("ngram order must be >= 1");
  std::vector<std::string> units;
  units.reserve(sentence.tokens.size() + 2);
  if (order >= 2) units.push_back("<s>");
  for (size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& t = sentence.tokens[i];
    std::string u;
    switch (family) {
      case NgramFamily::LN: u = t.lemma; break;
      case NgramFamily::PN: u = to_string(t.pos); break;
      case NgramFamily::MN:
        u = is_open_class(t.pos) ? std::string(to_string(t.pos)) : t.lemma;
        break;
    }
    if (mode == AppendMode::APPEND) {
      auto it = head_labels.find(static_cast<int>(i));
      if (it != head_labels.end())
        u += std::string("(") + to_string(it->second) + ")";
    }
    units.push_back(std::move(u));
  }
  if (order >= 2) units.push_back("</s>");
  std::vector<std::string> out;
  if (units.size() < static_cast<size_t>(order)) return out;
  for (size_t i = 0; i + order <= units.size(); ++i) {
    std::string g = units[i];
    for (int k = 1; k < order; ++k) g += "_" + units[i + k];
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<AnalyzedMessage> FeatureExtractor::analyze_thread(
    const Thread& thread) const {
  const TextProcessor& tp = tagger_.text();
  std::vector<AnalyzedMessage> out;
  out.reserve(thread.messages.size());
  for (const Message& m : thread.messages) {
    AnalyzedMessage a;
    a.msg = &m;
    a.sentences = tp.analyze(m.body);
    a.heads = tagger_.tag_sentences(a.sentences);
    a.dia = dialog_acts_of(a.sentences);
    a.odp = odp_of(a.sentences);
    for (const Sentence& s : a.sentences)
      a.tokens += static_cast<std::int64_t>(s.tokens.size());
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

bool is_request_action(const Sentence& s, const Lexicons& lx) {
  (void)lx;
  if (s.is_imperative) return true;
  const auto& toks = s.tokens;
  const int n = static_cast<int>(toks.size());
  auto next_non_adv = [&](int i) {
    for (int j = i + 1; j < n; ++j)
      if (toks[j].pos != Pos::ADV) return j;
    return -1;
  };
  for (int i = 0; i < n; ++i) {
    std::string l = to_lower(toks[i].surface);
    if (l == "please") {
      int j = next_non_adv(i);
      if (j >= 0 && toks[j].pos == Pos::VERB) return true;
    }
    if (toks[i].pos == Pos::MODAL) {
      const std::string& ml = toks[i].lemma;
      if (ml == "can" || ml == "could" || ml == "will" || ml == "would") {
        int j = next_non_adv(i);
        if (j >= 0 && to_lower(toks[j].surface) == "you") return true;
      }
    }
  }
  return false;
}

bool phrase_match_at(const std::vector<std::string>& lower, size_t i,
                     const std::set<std::string>& phrases, int max_len) {
  for (int len = std::min<int>(max_len, static_cast<int>(lower.size() - i));
       len >= 1; --len) {
    std::string phrase = lower[i];
    for (int k = 1; k < len; ++k) phrase += " " + lower[i + k];
    if (phrases.count(phrase)) return true;
  }
  return false;
}

std::vector<std::string> lower_surfaces(const Sentence& s) {
  std::vector<std::string> out;
  out.reserve(s.tokens.size());
  for (const Token& t : s.tokens) out.push_back(to_lower(t.surface));
  return out;
}

bool greeting_at_start(const Sentence& s, const std::set<std::string>& greet) {
  if (s.tokens.empty()) return false;
  return phrase_match_at(lower_surfaces(s), 0, greet, 3);
}

bool has_urgency_cue(const Sentence& s, const std::set<std::string>& cues) {
  auto lower = lower_surfaces(s);
  for (size_t i = 0; i < lower.size(); ++i)
    if (phrase_match_at(lower, i, cues, 5)) return true;
  return false;
}

}  // namespace

DialogActCounts FeatureExtractor::dialog_acts_of(
    const std::vector<Sentence>& sentences) const {
  const Lexicons& lx = tagger_.text().lexicons();
  DialogActCounts c;
  const size_t n = sentences.size();
  for (size_t si = 0; si < n; ++si) {
    const Sentence& s = sentences[si];
    if (is_request_action(s, lx)) {
      ++c.request_action;
    } else if (s.is_question) {
      ++c.request_info;
    } else if ((si == 0 || si + 1 == n) && greeting_at_start(s, lx.greetings)) {
      ++c.conventional;
    } else {
      ++c.inform;
    }
  }
  return c;
}

int FeatureExtractor::odp_of(const std::vector<Sentence>& sentences) const {
  const Lexicons& lx = tagger_.text().lexicons();
  int count = 0;
  for (const Sentence& s : sentences)
    if (is_request_action(s, lx) && has_urgency_cue(s, lx.urgency_cues))
      ++count;
  return count;
}

DialogActCounts FeatureExtractor::tag_dialog_acts(const Message& message) const {
  return dialog_acts_of(tagger_.text().analyze(message.body));
}

int FeatureExtractor::detect_odp(const Message& message) const {
  return odp_of(tagger_.text().analyze(message.body));
}

BeliefCounts FeatureExtractor::belief_counts(
    const Thread& thread, const std::string& participant) const {
  std::vector<const Message*> own;
  for (const Message& m : thread.messages)
    if (m.sender == participant) own.push_back(&m);
  return tagger_.tag_messages(own).counts;
}

std::pair<FeatureVector, FeatureVector> FeatureExtractor::extract_pair(
    const Thread& thread, const std::vector<AnalyzedMessage>& analyzed,
    const Ripp& ripp) const {
  auto participants_of = [](const Message& m) {
    std::set<std::string> ps;
    ps.insert(m.sender);
    for (const auto& r : m.to) ps.insert(r);
    for (const auto& r : m.cc) ps.insert(r);
    return ps;
  };

  auto build_side = [&](const std::string& me,
                        const std::string& other) -> FeatureVector {
    FeatureVector fv;
    std::vector<size_t> own, theirs;
    for (size_t i = 0; i < analyzed.size(); ++i) {
      if (analyzed[i].msg->sender == me) own.push_back(i);
      if (analyzed[i].msg->sender == other) theirs.push_back(i);
    }
    if (own.empty()) {
      fv.defined = false;
      return fv;
    }
    auto put = [&](const std::string& name, double v) {
      if (v != 0.0) fv.entries[name] = v;
    };

    std::int64_t own_tokens = 0, other_tokens = 0;
    for (size_t i : own) own_tokens += analyzed[i].tokens;
    for (size_t i : theirs) other_tokens += analyzed[i].tokens;

    if (cfg_.vrb) {
      double mc = static_cast<double>(own.size());
      double pair_total = static_cast<double>(own.size() + theirs.size());
      put("VRB:message_count", mc);
      put("VRB:message_ratio", mc / pair_total);
      put("VRB:token_count", static_cast<double>(own_tokens));
      double tok_total = static_cast<double>(own_tokens + other_tokens);
      if (tok_total > 0)
        put("VRB:token_ratio", static_cast<double>(own_tokens) / tok_total);
      put("VRB:tokens_per_message", static_cast<double>(own_tokens) / mc);
    }

    if (cfg_.pst) {
      const size_t n = thread.messages.size();
      put("PST:initiator", thread.messages.front().sender == me ? 1.0 : 0.0);
      if (n > 1) {
        put("PST:first_msg_pos",
            static_cast<double>(own.front()) / static_cast<double>(n - 1));
        put("PST:last_msg_pos",
            static_cast<double>(own.back()) / static_cast<double>(n - 1));
      }
    }

    if (cfg_.thr) {
      double sum_rcpt = 0, sum_to = 0, sum_cc = 0;
      for (size_t i : own) {
        const Message& m = *analyzed[i].msg;
        sum_to += static_cast<double>(m.to.size());
        sum_cc += static_cast<double>(m.cc.size());
        sum_rcpt += static_cast<double>(m.to.size() + m.cc.size());
      }
      double mc = static_cast<double>(own.size());
      put("THR:mean_recipients", sum_rcpt / mc);
      put("THR:mean_to", sum_to / mc);
      put("THR:mean_cc", sum_cc / mc);
      if (!theirs.empty()) {
        std::set<std::string> their_ids, replied;
        for (size_t i : theirs) their_ids.insert(analyzed[i].msg->id);
        for (size_t i : own) {
          const auto& irt = analyzed[i].msg->in_reply_to;
          if (irt && their_ids.count(*irt)) replied.insert(*irt);
        }
        put("THR:reply_rate",
            static_cast<double>(replied.size()) /
                static_cast<double>(their_ids.size()));
      }
      bool added = false, removed = false;
      for (size_t i : own) {
        if (i == 0) continue;
        auto prev = participants_of(*analyzed[i - 1].msg);
        auto cur = participants_of(*analyzed[i].msg);
        for (const auto& p : cur)
          if (!prev.count(p)) added = true;
        for (const auto& p : prev)
          if (!cur.count(p)) removed = true;
      }
      put("THR:added_participant", added ? 1.0 : 0.0);
      put("THR:removed_participant", removed ? 1.0 : 0.0);
    }

    if (cfg_.dia) {
      DialogActCounts d;
      for (size_t i : own) {
        d.request_action += analyzed[i].dia.request_action;
        d.request_info += analyzed[i].dia.request_info;
        d.inform += analyzed[i].dia.inform;
        d.conventional += analyzed[i].dia.conventional;
      }
      put("DIA:request_action", d.request_action);
      put("DIA:request_info", d.request_info);
      put("DIA:inform", d.inform);
      put("DIA:conventional", d.conventional);
    }

    if (cfg_.odp) {
      int odp = 0;
      for (size_t i : own) odp += analyzed[i].odp;
      put("ODP:count", odp);
    }

    if (cfg_.bel) {
      std::int64_t cb = 0, ncb = 0, rob = 0, na = 0;
      for (size_t i : own) {
        for (const auto& h : analyzed[i].heads) {
          switch (h.label) {
            case BeliefLabel::CB: ++cb; break;
            case BeliefLabel::NCB: ++ncb; break;
            case BeliefLabel::ROB: ++rob; break;
            case BeliefLabel::NA: ++na; break;
          }
        }
      }
      put("BEL:cb", static_cast<double>(cb));
      put("BEL:ncb", static_cast<double>(ncb));
      put("BEL:rob", static_cast<double>(rob));
      put("BEL:na", static_cast<double>(na));
      if (own_tokens > 0) {
        put("BEL:cb_per100", 100.0 * cb / own_tokens);
        put("BEL:ncb_per100", 100.0 * ncb / own_tokens);
        put("BEL:rob_per100", 100.0 * rob / own_tokens);
        put("BEL:na_per100", 100.0 * na / own_tokens);
      }
    }

    struct Fam {
      bool on;
      NgramFamily family;
      AppendMode mode;
      const char* prefix;
    };
    const Fam fams[3] = {
        {cfg_.ln, NgramFamily::LN, cfg_.ln_mode, "LN:"},
        {cfg_.pn, NgramFamily::PN, cfg_.pn_mode, "PN:"},
        {cfg_.mn, NgramFamily::MN, cfg_.mn_mode, "MN:"},
    };
    for (const Fam& fam : fams) {
      if (!fam.on) continue;
      for (size_t i : own) {
        const AnalyzedMessage& a = analyzed[i];
        for (size_t si = 0; si < a.sentences.size(); ++si) {
          std::map<int, BeliefLabel> head_labels;
          for (const auto& h : a.heads)
            if (h.sentence_ref == static_cast<int>(si))
              head_labels[h.token_index] = h.label;
          for (int order : cfg_.ngram_orders) {
            for (auto& g : build_ngrams(a.sentences[si], head_labels,
                                        fam.family, order, fam.mode))
              fv.entries[fam.prefix + g] += 1.0;
          }
        }
      }
    }
    return fv;
  };

  return {build_side(ripp.p1, ripp.p2), build_side(ripp.p2, ripp.p1)};
}

std::pair<FeatureVector, FeatureVector> FeatureExtractor::extract_pair(
    const Thread& thread, const Ripp& ripp) const {
  return extract_pair(thread, analyze_thread(thread), ripp);
}

Instance make_instance(const FeatureVector& f1, const FeatureVector& f2,
                       const Ripp& ripp) {
  Instance ins;
  ins.id = ripp.thread_id + "/" + ripp.p1 + "/" + ripp.p2;
  ins.label = ripp.gold == Gold::P1_SUPERIOR ? 1 : -1;
  if (!f1.defined || !f2.defined) return ins;
  for (const auto& [n, v] : f1.entries) ins.features["P1:" + n] = v;
  for (const auto& [n, v] : f2.entries) ins.features["P2:" + n] = v;
  std::set<std::string> scalar_names;
  for (const auto& [n, v] : f1.entries)
    if (!is_ngram_name(n)) scalar_names.insert(n);
  for (const auto& [n, v] : f2.entries)
    if (!is_ngram_name(n)) scalar_names.insert(n);
  for (const auto& n : scalar_names) {
    auto it1 = f1.entries.find(n);
    auto it2 = f2.entries.find(n);
    double v1 = it1 == f1.entries.end() ? 0.0 : it1->second;
    double v2 = it2 == f2.entries.end() ? 0.0 : it2->second;
    double s = v1 + v2;
    if (s != 0.0 && v1 != 0.0) ins.features["RATIO:" + n] = v1 / s;
  }
  return ins;
}

Vocabulary build_vocabulary(const std::vector<Instance>& train_instances,
                            int df_floor) {
  std::map<std::string, int> df;
  for (const Instance& ins : train_instances)
    for (const auto& [name, v] : ins.features) ++df[name];
  Vocabulary vocab;
  int col = 0;
  for (const auto& [name, count] : df) {
    if (has_ngram_infix(name) && count < df_floor) continue;
    vocab.index[name] = col++;
  }
  return vocab;
}

void save_instances(const std::vector<Instance>& instances,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instances file: " + path);
  out << "#powercomm-instances\t1\n";
  for (const Instance& ins : instances) {
    out << ins.id << "\t__label__\t" << ins.label << '\n';
    for (const auto& [name, v] : ins.features)
      out << ins.id << '\t' << name << '\t' << fmt17(v) << '\n';
  }
}

std::vector<Instance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instances file: " + path);
  std::vector<Instance> out;
  std::map<std::string, size_t> by_id;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      saw_header = true;
      if (line != "#powercomm-instances\t1")
        throw std::runtime_error("unsupported instances schema in " + path +
                                 ": " + line);
      continue;
    }
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos
                                        : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw std::runtime_error("malformed instances line: " + line);
    std::string id = line.substr(0, t1);
    std::string name = line.substr(t1 + 1, t2 - t1 - 1);
    std::string val = line.substr(t2 + 1);
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      by_id[id] = out.size();
      out.push_back(Instance{id, 1, {}});
      it = by_id.find(id);
    }
    Instance& ins = out[it->second];
    if (name == "__label__")
      ins.label = std::stoi(val);
    else
      ins.features[name] = std::strtod(val.c_str(), nullptr);
  }
  return out;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vocabulary file: " + path);
  out << "#powercomm-vocab\t1\n";
  for (const auto& [name, col] : vocab.index)
    out << name << '\t' << col << '\n';
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
  Vocabulary v;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      saw_header = true;
      if (line != "#powercomm-vocab\t1")
        throw std::runtime_error("unsupported vocabulary schema in " + path +
                                 ": " + line);
      continue;
    }
    size_t tab = line.rfind('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("malformed vocabulary line: " + line);
    v.index[line.substr(0, tab)] = std::stoi(line.substr(tab + 1));
  }
  return v;
}

}  // namespace powercomm
