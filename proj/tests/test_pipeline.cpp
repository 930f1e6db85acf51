#include "powercomm/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

using namespace powercomm;
namespace fs = std::filesystem;

namespace {

bool has(const std::string& dir, const char* name) {
  return fs::exists(fs::path(dir) / name);
}

std::string first_line(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

// Runs the CLI entry point while capturing stderr.
int run_capture(const std::vector<std::string>& args, std::string* err) {
  std::stringstream captured;
  std::streambuf* old = std::cerr.rdbuf(captured.rdbuf());
  const int rc = run(args);
  std::cerr.rdbuf(old);
  if (err) *err = captured.str();
  return rc;
}

}  // namespace

TEST_CASE("command pipeline runs end to end through all eight commands") {
  testutil::TempDir tmp("pipe-e2e");
  const std::string synth_dir = tmp.path("synth");
  const std::string ingest_dir = tmp.path("ingest");
  const std::string tag_dir = tmp.path("tag");
  const std::string feat_dir = tmp.path("feat");
  const std::string train_dir = tmp.path("train");
  const std::string eval_dir = tmp.path("eval");
  const std::string analyze_dir = tmp.path("analyze");
  const std::string weights_dir = tmp.path("weights");

  REQUIRE(run({"synth", "--config", "default", "--threads", "60", "--seed",
               "11", "--out", synth_dir}) == 0);
  for (const char* f : {"corpus.jsonl", "dominance.tsv", "splits.tsv",
                        "bookkeeping.tsv", "synth.manifest.json"})
    CHECK(has(synth_dir, f));

  const std::string corpus = synth_dir + "/corpus.jsonl";
  const std::string dominance = synth_dir + "/dominance.tsv";
  const std::string splits = synth_dir + "/splits.tsv";

  REQUIRE(run({"ingest", "--corpus", corpus, "--dominance", dominance,
               "--splits", splits, "--out", ingest_dir}) == 0);
  for (const char* f : {"corpus.jsonl", "dominance.tsv", "splits.tsv",
                        "corpus_stats.txt", "skipped.tsv",
                        "ingest.manifest.json"})
    CHECK(has(ingest_dir, f));
  CHECK(first_line(ingest_dir + "/skipped.tsv") == "#powercomm-skipped\t1");

  REQUIRE(run({"tag", "--corpus", corpus, "--out", tag_dir}) == 0);
  CHECK(has(tag_dir, "tags.tsv"));
  CHECK(has(tag_dir, "belief_counts.tsv"));
  CHECK(has(tag_dir, "tag.manifest.json"));
  CHECK(first_line(tag_dir + "/tags.tsv") == "#powercomm-tags\t1");
  CHECK(first_line(tag_dir + "/belief_counts.tsv") ==
        "#powercomm-belief-counts\t1");

  REQUIRE(run({"featurize", "--corpus", corpus, "--dominance", dominance,
               "--splits", splits, "--features", "LNapnd", "--out",
               feat_dir}) == 0);
  for (const char* f :
       {"train.instances.tsv", "dev.instances.tsv", "test.instances.tsv",
        "vocab.tsv", "featurize.manifest.json"})
    CHECK(has(feat_dir, f));
  CHECK(first_line(feat_dir + "/train.instances.tsv") ==
        "#powercomm-instances\t1");
  CHECK(first_line(feat_dir + "/vocab.tsv") == "#powercomm-vocab\t1");

  REQUIRE(run({"train", "--instances", feat_dir, "--reg", "0.05", "--epochs",
               "8", "--seed", "5", "--out", train_dir}) == 0);
  CHECK(has(train_dir, "model.txt"));
  CHECK(has(train_dir, "train.manifest.json"));
  CHECK(first_line(train_dir + "/model.txt").rfind("powercomm-model 1", 0) ==
        0);

  REQUIRE(run({"eval", "--model", train_dir + "/model.txt", "--instances",
               feat_dir + "/test.instances.tsv", "--out", eval_dir}) == 0);
  CHECK(has(eval_dir, "eval.tsv"));
  CHECK(first_line(eval_dir + "/eval.tsv") == "#powercomm-eval\t1");

  REQUIRE(run({"analyze", "--corpus", corpus, "--dominance", dominance,
               "--out", analyze_dir}) == 0);
  CHECK(has(analyze_dir, "hypothesis_report.tsv"));
  CHECK(has(analyze_dir, "chart_data.tsv"));

  REQUIRE(run({"weights", "--model", train_dir + "/model.txt", "--top", "5",
               "--out", weights_dir}) == 0);
  CHECK(has(weights_dir, "weight_variation.tsv"));

  // Manifests carry the command name, the tool version, and outputs.
  std::ifstream mf(synth_dir + "/synth.manifest.json");
  nlohmann::json j;
  mf >> j;
  CHECK(j.at("command") == "synth");
  CHECK(j.at("tool_version") == std::string(tool_version()));
  CHECK(j.at("seed") == 11);
  CHECK(j.at("outputs").size() == 4);
  CHECK(j.contains("timing_ms"));
}

TEST_CASE("rerunning a command reproduces its artifacts byte for byte") {
  testutil::TempDir tmp("pipe-rerun");
  const std::string a = tmp.path("a");
  const std::string b = tmp.path("b");
  for (const std::string& dir : {a, b})
    REQUIRE(run({"synth", "--config", "default", "--threads", "25", "--seed",
                 "9", "--out", dir}) == 0);
  for (const char* f :
       {"corpus.jsonl", "dominance.tsv", "splits.tsv", "bookkeeping.tsv"}) {
    INFO("artifact ", f);
    CHECK(testutil::slurp(a + "/" + f) == testutil::slurp(b + "/" + f));
  }
}

TEST_CASE("tag --text prints records and honors --out") {
  testutil::TempDir tmp("pipe-text");
  const std::string out = tmp.path("tagtext");
  REQUIRE(run({"tag", "--text", "John will submit the report .", "--out",
               out}) == 0);
  REQUIRE(has(out, "text_tags.tsv"));
  std::ifstream in(out + "/text_tags.tsv");
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(all.find("submit") != std::string::npos);
  CHECK(all.find("CB") != std::string::npos);
}

TEST_CASE("exit codes: help 0, flag and input problems 1, runtime faults 2") {
  testutil::TempDir tmp("pipe-exit");
  std::string err;

  CHECK(run_capture({"--help"}, &err) == 0);
  CHECK(run_capture({}, &err) == 1);
  CHECK(run_capture({"frobnicate"}, &err) == 1);
  CHECK(run_capture({"synth"}, &err) == 1);  // missing required --out

  // tag wants exactly one input form.
  CHECK(run_capture({"tag", "--out", tmp.path("t1")}, &err) == 1);
  CHECK(err.find("exactly one of") != std::string::npos);
  CHECK(run_capture({"tag", "--text", "x", "--corpus", "y", "--out",
                     tmp.path("t2")},
                    &err) == 1);

  // Missing input artifacts name the command that produces them.
  fs::create_directories(tmp.path("empty"));
  CHECK(run_capture({"train", "--instances", tmp.path("empty"), "--reg",
                     "0.1", "--out", tmp.path("t3")},
                    &err) == 1);
  CHECK(err.find("missing input artifact") != std::string::npos);
  CHECK(err.find("`featurize` command") != std::string::npos);

  CHECK(run_capture({"ingest", "--corpus", tmp.path("nope.jsonl"),
                     "--dominance", tmp.path("nope.tsv"), "--out",
                     tmp.path("t4")},
                    &err) == 1);
  CHECK(err.find("`synth` command") != std::string::npos);

  // A present but corrupt model is a runtime fault, not a usage error.
  const std::string bad_model = tmp.path("bad_model.txt");
  {
    std::ofstream f(bad_model);
    f << "some-other-format 3\n";
  }
  const std::string bad_inst = tmp.path("bad_inst.tsv");
  {
    std::ofstream f(bad_inst);
    f << "#powercomm-instances\t1\n";
  }
  CHECK(run_capture({"eval", "--model", bad_model, "--instances", bad_inst,
                     "--out", tmp.path("t5")},
                    &err) == 2);
  CHECK(err.find("runtime error") != std::string::npos);
}

TEST_CASE("synth accepts a JSON configuration file") {
  testutil::TempDir tmp("pipe-cfg");
  const std::string cfg_path = tmp.path("cfg.json");
  {
    std::ofstream f(cfg_path);
    f << R"({"n_threads": 12, "subordinate": {"ncb": 1.48}})" << '\n';
  }
  const std::string out = tmp.path("out");
  REQUIRE(run({"synth", "--config", cfg_path, "--seed", "4", "--out", out}) ==
          0);
  std::ifstream in(out + "/corpus.jsonl");
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 12);

  // Unreadable config is a usage error.
  std::string err;
  CHECK(run_capture({"synth", "--config", tmp.path("absent.json"), "--out",
                     tmp.path("o2")},
                    &err) == 1);
}
