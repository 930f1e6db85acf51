#include "powercomm/corpus.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "powercomm/rng.hpp"

namespace powercomm {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::vector<std::string> read_all_lines(const std::string& path,
                                        const char* what) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error(std::string("cannot open ") + what + " file: " +
                             path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Returns an empty string on success, else the reason the thread is invalid.
std::string validate_thread(const Thread& t) {
  if (t.id.empty()) return "empty thread id";
  if (t.messages.empty()) return "no messages";
  std::set<std::string> seen;
  for (size_t i = 0; i < t.messages.size(); ++i) {
    const Message& m = t.messages[i];
    if (m.id.empty()) return "empty message id";
    if (!seen.insert(m.id).second) return "duplicate message id";
    if (m.sender.empty()) return "empty sender";
    if (i > 0 && m.timestamp < t.messages[i - 1].timestamp)
      return "timestamps out of order";
  }
  // Reply links must resolve to an earlier message of the same thread.
  std::set<std::string> earlier;
  for (const Message& m : t.messages) {
    if (m.in_reply_to) {
      if (!earlier.count(*m.in_reply_to)) {
        if (seen.count(*m.in_reply_to)) return "reply link points forward";
        return "dangling reply link";
      }
    }
    earlier.insert(m.id);
  }
  return "";
}

Thread thread_from_json(const ordered_json& j, std::string* split_name) {
  if (!j.is_object()) throw std::runtime_error("record is not an object");
  if (!j.contains("schema") || !j["schema"].is_number_integer() ||
      j["schema"].get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported schema version");
  Thread t;
  t.id = j.at("id").get<std::string>();
  for (const auto& jm : j.at("messages")) {
    Message m;
    m.id = jm.at("id").get<std::string>();
    m.sender = jm.at("sender").get<std::string>();
    m.to = jm.at("to").get<std::vector<std::string>>();
    if (jm.contains("cc")) m.cc = jm["cc"].get<std::vector<std::string>>();
    m.timestamp = jm.at("timestamp").get<std::int64_t>();
    m.subject = jm.at("subject").get<std::string>();
    m.body = jm.at("body").get<std::string>();
    if (jm.contains("in_reply_to") && !jm["in_reply_to"].is_null())
      m.in_reply_to = jm["in_reply_to"].get<std::string>();
    t.messages.push_back(std::move(m));
  }
  if (j.contains("split")) *split_name = j["split"].get<std::string>();
  return t;
}

ordered_json thread_to_json(const Thread& t, Split split) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["id"] = t.id;
  j["messages"] = ordered_json::array();
  for (const Message& m : t.messages) {
    ordered_json jm;
    jm["id"] = m.id;
    jm["sender"] = m.sender;
    jm["to"] = m.to;
    jm["cc"] = m.cc;
    jm["timestamp"] = m.timestamp;
    jm["subject"] = m.subject;
    jm["body"] = m.body;
    if (m.in_reply_to) jm["in_reply_to"] = *m.in_reply_to;
    j["messages"].push_back(std::move(jm));
  }
  j["split"] = to_string(split);
  return j;
}

}  // namespace

const char* to_string(Split s) {
  switch (s) {
    case Split::TRAIN: return "train";
    case Split::DEV: return "dev";
    case Split::TEST: return "test";
  }
  return "?";
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::TRAIN;
  if (name == "dev") return Split::DEV;
  if (name == "test") return Split::TEST;
  throw std::invalid_argument("unknown split name: " + name);
}

const char* to_string(Gold g) {
  return g == Gold::P1_SUPERIOR ? "P1_SUPERIOR" : "P1_SUBORDINATE";
}

Split split_for_thread(const std::string& thread_id, const SplitRatios& r) {
  // FNV-1a barely propagates trailing-character differences into the high
  // bits, so finish with an avalanche mix before taking the 53-bit mantissa;
  // sequential ids ("x-000001", "x-000002", ...) must still spread.
  std::uint64_t h = fnv1a(thread_id);
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  h ^= h >> 31;
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  if (u < r.train) return Split::TRAIN;
  if (u < r.train + r.dev) return Split::DEV;
  return Split::TEST;
}

Corpus load_corpus(const std::string& corpus_path,
                   const std::string& dominance_path,
                   const std::string& splits_path,
                   const SplitRatios& ratios) {
  Corpus c;
  std::map<std::string, Split> file_splits;
  if (!splits_path.empty()) {
    for (const std::string& line : read_all_lines(splits_path, "splits")) {
      if (line.empty() || line[0] == '#') continue;
      size_t tab = line.find('\t');
      if (tab == std::string::npos)
        throw std::runtime_error("splits line lacks a tab: " + line);
      file_splits[line.substr(0, tab)] =
          split_from_name(line.substr(tab + 1));
    }
  }

  std::set<std::string> thread_ids;
  size_t line_no = 0;
  for (const std::string& line : read_all_lines(corpus_path, "corpus")) {
    ++line_no;
    if (line.empty()) continue;
    std::string record_split;
    Thread t;
    try {
      ordered_json j = ordered_json::parse(line);
      t = thread_from_json(j, &record_split);
    } catch (const std::exception& e) {
      c.skipped.push_back({"", std::string("line ") + std::to_string(line_no) +
                                   ": " + e.what()});
      continue;
    }
    std::string reason = validate_thread(t);
    if (!reason.empty()) {
      c.skipped.push_back({t.id, reason});
      continue;
    }
    if (!thread_ids.insert(t.id).second) {
      c.skipped.push_back({t.id, "duplicate thread id"});
      continue;
    }
    Split sp;
    auto fs = file_splits.find(t.id);
    if (fs != file_splits.end())
      sp = fs->second;
    else if (!record_split.empty())
      sp = split_from_name(record_split);
    else
      sp = split_for_thread(t.id, ratios);
    c.splits[t.id] = sp;
    c.threads.push_back(std::move(t));
  }

  if (!dominance_path.empty()) {
    std::set<std::pair<std::string, std::string>> unordered_seen;
    for (const std::string& line : read_all_lines(dominance_path,
                                                  "dominance")) {
      if (line.empty() || line[0] == '#') continue;
      size_t tab = line.find('\t');
      if (tab == std::string::npos)
        throw std::runtime_error("dominance line lacks a tab: " + line);
      DominanceTuple d{line.substr(0, tab), line.substr(tab + 1)};
      if (d.superior == d.subordinate) {
        c.warnings.push_back("dominance tuple relates a participant to "
                             "itself, skipped: " + d.superior);
        continue;
      }
      auto key = std::minmax(d.superior, d.subordinate);
      if (!unordered_seen.insert({key.first, key.second}).second) {
        c.warnings.push_back("dominance pair seen twice (second orientation "
                             "or duplicate skipped): " + d.superior + "/" +
                             d.subordinate);
        continue;
      }
      c.dominance.push_back(std::move(d));
    }
  }
  return c;
}

void save_corpus(const Corpus& corpus, const std::string& corpus_path,
                 const std::string& dominance_path,
                 const std::string& splits_path) {
  {
    std::ofstream out(corpus_path);
    if (!out)
      throw std::runtime_error("cannot write corpus file: " + corpus_path);
    for (const Thread& t : corpus.threads)
      out << thread_to_json(t, corpus.splits.at(t.id)).dump() << '\n';
  }
  {
    std::ofstream out(dominance_path);
    if (!out)
      throw std::runtime_error("cannot write dominance file: " +
                               dominance_path);
    for (const DominanceTuple& d : corpus.dominance)
      out << d.superior << '\t' << d.subordinate << '\n';
  }
  if (!splits_path.empty()) {
    std::ofstream out(splits_path);
    if (!out)
      throw std::runtime_error("cannot write splits file: " + splits_path);
    for (const Thread& t : corpus.threads)
      out << t.id << '\t' << to_string(corpus.splits.at(t.id)) << '\n';
  }
}

std::vector<Ripp> extract_ripps(const Thread& thread,
                                const std::vector<DominanceTuple>& dominance,
                                Split split) {
  std::set<std::pair<std::string, std::string>> interacted;  // canonical
  for (const Message& m : thread.messages) {
    auto add = [&](const std::string& r) {
      if (r.empty() || r == m.sender) return;
      auto key = std::minmax(m.sender, r);
      interacted.insert({key.first, key.second});
    };
    for (const std::string& r : m.to) add(r);
    for (const std::string& r : m.cc) add(r);
  }
  std::vector<Ripp> out;
  for (const auto& [a, b] : interacted) {
    for (const DominanceTuple& d : dominance) {
      if (d.superior == a && d.subordinate == b) {
        out.push_back({thread.id, a, b, Gold::P1_SUPERIOR, split});
        break;
      }
      if (d.superior == b && d.subordinate == a) {
        out.push_back({thread.id, a, b, Gold::P1_SUBORDINATE, split});
        break;
      }
    }
  }
  // interacted is already (p1,p2)-sorted; out inherits that order.
  return out;
}

std::vector<Ripp> extract_all_ripps(const Corpus& corpus) {
  std::vector<Ripp> out;
  for (const Thread& t : corpus.threads) {
    auto rs = extract_ripps(t, corpus.dominance, corpus.splits.at(t.id));
    out.insert(out.end(), rs.begin(), rs.end());
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats st;
  for (const Thread& t : corpus.threads)
    ++st.threads[static_cast<int>(corpus.splits.at(t.id))];
  for (const Ripp& r : extract_all_ripps(corpus))
    ++st.ripps[static_cast<int>(r.split)];
  return st;
}

std::string format_stats_table(const CorpusStats& stats) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-10s %10s %10s %10s\n", "", "train",
                "dev", "test");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-10s %10" PRId64 " %10" PRId64
                " %10" PRId64 "\n", "threads", stats.threads[0],
                stats.threads[1], stats.threads[2]);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-10s %10" PRId64 " %10" PRId64
                " %10" PRId64 "\n", "RIPPs", stats.ripps[0], stats.ripps[1],
                stats.ripps[2]);
  out += buf;
  return out;
}

}  // namespace powercomm
