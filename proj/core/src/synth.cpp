#include "powercomm/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "powercomm/rng.hpp"

namespace powercomm {
namespace {

// One emitted sentence with the commitment heads it is known to contain
// under the rule tagger (templates are built so this is exact).
struct TemplateSentence {
  std::string text;
  int tokens = 0;
  int cb = 0, ncb = 0, rob = 0, na = 0;
};

const char* const kCbVerbs[] = {"need", "review", "expect", "approve",
                                "support"};
const char* const kObjects[] = {"report", "budget", "plan", "proposal",
                                "schedule"};
const char* const kNcbSubjects[] = {"vendor", "team", "client", "board"};
const char* const kNcbVerbs[] = {"delay", "change", "move", "cancel"};
const char* const kNames[] = {"sara", "john", "alex", "maria", "victor"};
const char* const kReportVerbs[] = {"says", "claims", "reports", "suggests"};
const char* const kRobVerbs[] = {"submit", "finish", "send", "sign"};
const char* const kNaVerbs[] = {"send", "review", "update", "finish"};
const char* const kSubjects[] = {"budget planning", "schedule review",
                                 "project update", "contract question"};
const char* const kFillers[] = {
    "thanks for the update .", "thanks for the help .",
    "hello to the team .",     "greetings to the team .",
    "best regards to all .",
};

// Token counts are constant within each template category; the rate solver
// below depends on that.
constexpr double kTokCb = 6, kTokNcb = 7, kTokRob = 8, kTokNa = 6,
                 kTokFill = 5;

template <std::size_t N>
const char* pick(Rng& rng, const char* const (&arr)[N]) {
  return arr[rng.next_below(N)];
}

TemplateSentence make_cb(Rng& rng) {
  TemplateSentence t;
  t.text = std::string("today i ") + pick(rng, kCbVerbs) + " the " +
           pick(rng, kObjects) + " .";
  t.tokens = 6;
  t.cb = 1;
  return t;
}

TemplateSentence make_ncb(Rng& rng) {
  TemplateSentence t;
  t.text = std::string("the ") + pick(rng, kNcbSubjects) + " may " +
           pick(rng, kNcbVerbs) + " the " + pick(rng, kObjects) + " .";
  t.tokens = 7;
  t.ncb = 1;
  return t;
}

TemplateSentence make_rob(Rng& rng) {
  const std::size_t i = rng.next_below(std::size(kNames));
  const std::size_t j =
      (i + 1 + rng.next_below(std::size(kNames) - 1)) % std::size(kNames);
  TemplateSentence t;
  // The reporting verb itself is a committed head; the embedded verb is the
  // reported one.
  t.text = std::string(kNames[i]) + " " + pick(rng, kReportVerbs) + " " +
           kNames[j] + " will " + pick(rng, kRobVerbs) + " the " +
           pick(rng, kObjects) + " .";
  t.tokens = 8;
  t.cb = 1;
  t.rob = 1;
  return t;
}

TemplateSentence make_na(Rng& rng) {
  TemplateSentence t;
  if (rng.next_bool()) {
    t.text = std::string("please ") + pick(rng, kNaVerbs) + " the " +
             pick(rng, kObjects) + " now .";
  } else {
    t.text = std::string("could you ") + pick(rng, kNaVerbs) + " the " +
             pick(rng, kObjects) + " ?";
  }
  t.tokens = 6;
  t.na = 1;
  return t;
}

TemplateSentence make_filler(Rng& rng) {
  TemplateSentence t;
  t.text = pick(rng, kFillers);
  t.tokens = 5;
  return t;
}

struct CategoryMix {
  double p_cb = 0, p_ncb = 0, p_rob = 0, p_na = 0;
  double expected_tokens = 0;
};

// Solves per-slot template probabilities so the configured per-100-token
// head rates hold in expectation. Reporting-frame sentences contribute one
// committed head besides the reported one, so the committed-template share
// is reduced accordingly; expected tokens per slot is the fixed point of
// the category mix over the per-category token counts.
CategoryMix solve_mix(const RoleRates& r) {
  if (r.cb < 0 || r.ncb < 0 || r.rob < 0 || r.na < 0)
    throw std::invalid_argument("infeasible rates: negative rate");
  const double a_cb = r.cb / 100.0, a_ncb = r.ncb / 100.0,
               a_rob = r.rob / 100.0, a_na = r.na / 100.0;
  if (a_cb < a_rob)
    throw std::invalid_argument(
        "infeasible rates: cb rate below rob rate (reporting frames already "
        "contribute committed heads)");
  const double c_cb = a_cb - a_rob;
  const double d = c_cb * (kTokCb - kTokFill) + a_ncb * (kTokNcb - kTokFill) +
                   a_rob * (kTokRob - kTokFill) + a_na * (kTokNa - kTokFill);
  if (d >= 1.0)
    throw std::invalid_argument(
        "infeasible rates: expected tokens per sentence diverge");
  const double tbar = kTokFill / (1.0 - d);
  CategoryMix m;
  m.p_cb = c_cb * tbar;
  m.p_ncb = a_ncb * tbar;
  m.p_rob = a_rob * tbar;
  m.p_na = a_na * tbar;
  m.expected_tokens = tbar;
  if (m.p_cb + m.p_ncb + m.p_rob + m.p_na > 1.0)
    throw std::invalid_argument(
        "infeasible rates: template probability mass exceeds 1");
  return m;
}

void validate_structure(const SynthConfig& c) {
  if (c.n_threads < 1) throw std::invalid_argument("n_threads must be >= 1");
  if (c.min_participants < 2 || c.max_participants < c.min_participants ||
      c.max_participants > 9)
    throw std::invalid_argument(
        "participant range must satisfy 2 <= min <= max <= 9");
  if (c.hierarchy_depth < 2)
    throw std::invalid_argument("hierarchy depth must be >= 2");
  if (c.min_messages < 1 || c.max_messages < c.min_messages)
    throw std::invalid_argument("message range must satisfy 1 <= min <= max");
  if (c.min_messages < c.max_participants)
    throw std::invalid_argument(
        "message range too small: every participant must send at least once");
  if (c.min_sentences < 1 || c.max_sentences < c.min_sentences)
    throw std::invalid_argument(
        "infeasible rates: expected sentence count < 1 per message");
}

std::string thread_tag(const char* prefix, int i) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s-%06d", prefix, i);
  return buf;
}

std::string join_sentences(const std::vector<std::string>& sents) {
  std::string body;
  for (const std::string& s : sents) {
    if (!body.empty()) body += ' ';
    body += s;
  }
  return body;
}

constexpr const char* kSuperiorRole = "superior";
constexpr const char* kSubordinateRole = "subordinate";

}  // namespace

SynthConfig default_synth_config() {
  SynthConfig c;
  c.superior = RoleRates{6.0, 1.0, 0.75, 3.0};
  c.subordinate = RoleRates{6.0, 1.0 * 1.48, 0.75 * 1.653, 2.0};
  return c;
}

SynthConfig null_synth_config() {
  SynthConfig c = default_synth_config();
  c.subordinate = c.superior;
  return c;
}

SynthResult generate_corpus(const SynthConfig& config) {
  validate_structure(config);
  const CategoryMix sup_mix = solve_mix(config.superior);
  const CategoryMix sub_mix = solve_mix(config.subordinate);

  SynthResult res;
  for (int ti = 0; ti < config.n_threads; ++ti) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(ti)));
    const std::string tid = thread_tag("synth", ti);

    const int nparts = static_cast<int>(
        rng.next_int(config.min_participants, config.max_participants));
    // Hierarchy levels are assigned to shuffled participant names so that
    // canonical pair order does not leak the direction.
    std::vector<int> name_of_level(static_cast<size_t>(nparts));
    std::iota(name_of_level.begin(), name_of_level.end(), 0);
    rng.shuffle(name_of_level);
    std::vector<int> level_of_name(static_cast<size_t>(nparts), 0);
    for (int l = 0; l < nparts; ++l) {
      const auto name = static_cast<size_t>(name_of_level[static_cast<size_t>(l)]);
      level_of_name[name] = std::min(l, config.hierarchy_depth - 1);
    }

    std::vector<std::string> ids(static_cast<size_t>(nparts));
    for (int n = 0; n < nparts; ++n)
      ids[static_cast<size_t>(n)] = tid + "-p" + std::to_string(n);

    for (int a = 0; a < nparts; ++a) {
      for (int b = a + 1; b < nparts; ++b) {
        const int la = level_of_name[static_cast<size_t>(a)];
        const int lb = level_of_name[static_cast<size_t>(b)];
        if (la < lb)
          res.corpus.dominance.push_back(
              {ids[static_cast<size_t>(a)], ids[static_cast<size_t>(b)]});
        else if (lb < la)
          res.corpus.dominance.push_back(
              {ids[static_cast<size_t>(b)], ids[static_cast<size_t>(a)]});
      }
    }

    std::vector<BookkeepingRow> rows(static_cast<size_t>(nparts));
    for (int n = 0; n < nparts; ++n) {
      BookkeepingRow& row = rows[static_cast<size_t>(n)];
      row.thread_id = tid;
      row.participant = ids[static_cast<size_t>(n)];
      row.role = level_of_name[static_cast<size_t>(n)] == 0 ? kSuperiorRole
                                                            : kSubordinateRole;
    }

    Thread th;
    th.id = tid;
    const std::string subject = pick(rng, kSubjects);
    const int nmsgs = static_cast<int>(
        rng.next_int(config.min_messages, config.max_messages));
    for (int mi = 0; mi < nmsgs; ++mi) {
      const int sender_name =
          mi < nparts ? mi : static_cast<int>(rng.next_int(0, nparts - 1));
      Message m;
      m.id = tid + "-m" + std::to_string(mi);
      m.sender = ids[static_cast<size_t>(sender_name)];
      for (int n = 0; n < nparts; ++n)
        if (n != sender_name) m.to.push_back(ids[static_cast<size_t>(n)]);
      m.timestamp = 1700000000LL + 86400LL * ti + 600LL * mi;
      m.subject = mi == 0 ? subject : "re: " + subject;
      if (mi > 0)
        m.in_reply_to = tid + "-m" + std::to_string(rng.next_int(0, mi - 1));

      const bool is_sup = level_of_name[static_cast<size_t>(sender_name)] == 0;
      const CategoryMix& mix = is_sup ? sup_mix : sub_mix;
      BookkeepingRow& row = rows[static_cast<size_t>(sender_name)];
      const int nsent = static_cast<int>(
          rng.next_int(config.min_sentences, config.max_sentences));
      std::vector<std::string> sents;
      sents.reserve(static_cast<size_t>(nsent));
      for (int si = 0; si < nsent; ++si) {
        const double u = rng.next_double();
        TemplateSentence t;
        if (u < mix.p_cb)
          t = make_cb(rng);
        else if (u < mix.p_cb + mix.p_ncb)
          t = make_ncb(rng);
        else if (u < mix.p_cb + mix.p_ncb + mix.p_rob)
          t = make_rob(rng);
        else if (u < mix.p_cb + mix.p_ncb + mix.p_rob + mix.p_na)
          t = make_na(rng);
        else
          t = make_filler(rng);
        sents.push_back(t.text);
        row.cb += t.cb;
        row.ncb += t.ncb;
        row.rob += t.rob;
        row.na += t.na;
        row.tokens += t.tokens;
      }
      m.body = join_sentences(sents);
      th.messages.push_back(std::move(m));
    }

    res.corpus.threads.push_back(std::move(th));
    res.corpus.splits[tid] = split_for_thread(tid, config.ratios);
    for (auto& r : rows) res.bookkeeping.push_back(std::move(r));
  }
  return res;
}

namespace {

// Contrast pairs: the superior uses the first verb in the plain frame and
// the second in the conditional frame; the subordinate swaps them.
const std::pair<const char*, const char*> kContrastPairs[] = {
    {"need", "want"},
    {"expect", "plan"},
};

// "today i <v> the <obj> ." -- <v> is a committed head.
TemplateSentence contrast_plain(const char* v, const char* obj) {
  TemplateSentence t;
  t.text = std::string("today i ") + v + " the " + obj + " .";
  t.tokens = 6;
  t.cb = 1;
  return t;
}

// "if today i <v> the <obj> , i will call you ." -- <v> sits in the
// conditional antecedent (non-belief) and the consequent verb is committed.
TemplateSentence contrast_conditional(const char* v, const char* obj) {
  TemplateSentence t;
  t.text = std::string("if today i ") + v + " the " + obj +
           " , i will call you .";
  t.tokens = 12;
  t.cb = 1;
  t.na = 1;
  return t;
}

}  // namespace

SynthResult generate_belief_contrast_corpus(const SynthConfig& config) {
  if (config.n_threads < 1)
    throw std::invalid_argument("n_threads must be >= 1");

  SynthResult res;
  for (int ti = 0; ti < config.n_threads; ++ti) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(ti)));
    const std::string tid = thread_tag("contrast", ti);
    const std::string id_a = tid + "-a";
    const std::string id_b = tid + "-b";
    const bool a_is_boss = rng.next_bool();
    const std::string& boss = a_is_boss ? id_a : id_b;
    const std::string& worker = a_is_boss ? id_b : id_a;
    res.corpus.dominance.push_back({boss, worker});

    BookkeepingRow boss_row{tid, boss, kSuperiorRole, 0, 0, 0, 0, 0};
    BookkeepingRow worker_row{tid, worker, kSubordinateRole, 0, 0, 0, 0, 0};

    Thread th;
    th.id = tid;
    const int n_exchanges = static_cast<int>(rng.next_int(1, 2));
    const bool boss_starts = rng.next_bool();
    for (int ex = 0; ex < n_exchanges; ++ex) {
      // Draw the exchange content once; the two directions mirror it with
      // the frame roles of each verb pair swapped. Fillers are shared so
      // that plain lemma n-grams stay exactly symmetric across roles.
      struct Unit {
        const std::pair<const char*, const char*>* pair;
        const char* obj;
      };
      const int units = static_cast<int>(rng.next_int(1, 3));
      std::vector<Unit> drawn(static_cast<size_t>(units));
      for (Unit& u : drawn) {
        u.pair = &kContrastPairs[rng.next_below(std::size(kContrastPairs))];
        u.obj = pick(rng, kObjects);
      }
      const int fillers = static_cast<int>(rng.next_int(0, 2));
      std::vector<std::string> shared_fillers;
      for (int f = 0; f < fillers; ++f)
        shared_fillers.push_back(make_filler(rng).text);

      for (int half = 0; half < 2; ++half) {
        const int mi = 2 * ex + half;
        const bool from_boss = (mi % 2 == 0) == boss_starts;
        Message m;
        m.id = tid + "-m" + std::to_string(mi);
        m.sender = from_boss ? boss : worker;
        m.to.push_back(from_boss ? worker : boss);
        m.timestamp = 1700000000LL + 86400LL * ti + 600LL * mi;
        m.subject = mi == 0 ? "report handoff" : "re: report handoff";
        if (mi > 0) m.in_reply_to = tid + "-m" + std::to_string(mi - 1);

        BookkeepingRow& row = from_boss ? boss_row : worker_row;
        std::vector<std::string> sents;
        for (const Unit& u : drawn) {
          const char* plain_verb = from_boss ? u.pair->first : u.pair->second;
          const char* cond_verb = from_boss ? u.pair->second : u.pair->first;
          for (const TemplateSentence& t :
               {contrast_plain(plain_verb, u.obj),
                contrast_conditional(cond_verb, u.obj)}) {
            sents.push_back(t.text);
            row.cb += t.cb;
            row.ncb += t.ncb;
            row.rob += t.rob;
            row.na += t.na;
            row.tokens += t.tokens;
          }
        }
        for (const std::string& f : shared_fillers) {
          sents.push_back(f);
          row.tokens += static_cast<std::int64_t>(kTokFill);
        }
        rng.shuffle(sents);
        m.body = join_sentences(sents);
        th.messages.push_back(std::move(m));
      }
    }

    res.corpus.threads.push_back(std::move(th));
    res.corpus.splits[tid] = split_for_thread(tid, config.ratios);
    res.bookkeeping.push_back(std::move(a_is_boss ? boss_row : worker_row));
    res.bookkeeping.push_back(std::move(a_is_boss ? worker_row : boss_row));
  }
  return res;
}

void save_bookkeeping(const std::vector<BookkeepingRow>& rows,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write bookkeeping file: " + path);
  out << "#powercomm-bookkeeping\t1\n";
  out << "thread_id\tparticipant\trole\tcb\tncb\trob\tna\ttokens\n";
  for (const BookkeepingRow& r : rows) {
    out << r.thread_id << '\t' << r.participant << '\t' << r.role << '\t'
        << r.cb << '\t' << r.ncb << '\t' << r.rob << '\t' << r.na << '\t'
        << r.tokens << '\n';
  }
}

std::vector<BookkeepingRow> load_bookkeeping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bookkeeping file: " + path);
  std::vector<BookkeepingRow> rows;
  std::string line;
  bool saw_schema = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_schema) {
      saw_schema = true;
      if (line != "#powercomm-bookkeeping\t1")
        throw std::runtime_error("unsupported bookkeeping schema in " + path +
                                 ": " + line);
      continue;
    }
    if (line.rfind("thread_id\t", 0) == 0) continue;
    std::vector<std::string> f;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      f.push_back(line.substr(start, tab == std::string::npos
                                         ? std::string::npos
                                         : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (f.size() != 8)
      throw std::runtime_error("malformed bookkeeping line: " + line);
    BookkeepingRow r;
    r.thread_id = f[0];
    r.participant = f[1];
    r.role = f[2];
    r.cb = std::stoll(f[3]);
    r.ncb = std::stoll(f[4]);
    r.rob = std::stoll(f[5]);
    r.na = std::stoll(f[6]);
    r.tokens = std::stoll(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace powercomm
