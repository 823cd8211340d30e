// Copyright 2026 The Stage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end runs of the stage binary. STAGE_BIN and STAGE_TEST_DATA come
// from the test harness environment.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string stage_bin() {
  const char* bin = std::getenv("STAGE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "STAGE_BIN must point at the built stage binary");
  return bin;
}

std::string test_data() {
  const char* dir = std::getenv("STAGE_TEST_DATA");
  REQUIRE_MESSAGE(dir != nullptr, "STAGE_TEST_DATA must point at tests/corpus");
  return dir;
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "stage_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& args) {
  std::string command = stage_bin() + " " + args + " 2>/dev/null";
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.contains("meta")) continue;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

TEST_CASE("extract on a cue file") {
  fs::path dir = temp_dir();
  write_file(dir / "cues.txt", "three days ago\nbefore three days ago\nfour hours\n");
  fs::path out = dir / "extract.jsonl";
  REQUIRE(run("extract --cues " + (dir / "cues.txt").string() + " -o " + out.string()) == 0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["expr"] == "Instant(anchor=present,dist=Length(3,day))");
  CHECK(rows[0]["features"]["is_point"] == true);
  CHECK(rows[0]["features"]["len_is_int"] == false);
  CHECK(rows[1]["expr"] ==
        "Interval(start=Unknown,end=Instant(anchor=present,dist=Length(3,day)),length=Unknown)");
  CHECK(rows[2]["status"] == "length");
  CHECK(rows[2]["expr"] == "Length(4,hour)");
}

TEST_CASE("extract with a document date resolves cues") {
  fs::path dir = temp_dir();
  write_file(dir / "one_cue.txt", "three days ago\n");
  fs::path out = dir / "resolved.jsonl";
  REQUIRE(run("extract --cues " + (dir / "one_cue.txt").string() + " --dct 2001-01-10 -o " +
              out.string()) == 0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["resolved"] == "Instant(at=2001-01-07T00:00)");
}

TEST_CASE("parse prints bracketed trees") {
  fs::path dir = temp_dir();
  write_file(dir / "tree_cue.txt", "three days ago\n");
  fs::path out = dir / "trees.txt";
  REQUIRE(run("parse --cues " + (dir / "tree_cue.txt").string() + " --trees -o " + out.string()) ==
          0);
  std::string text = read_file(out);
  CHECK(text.find("(Instant (Length (Num three) (Unit days)) (AgoMarker ago))") !=
        std::string::npos);
}

TEST_CASE("pipeline runs are byte-identical") {
  fs::path dir = temp_dir();
  std::string corpus = test_data() + std::string("/mini_corpus.jsonl");
  fs::path out1 = dir / "run1.jsonl";
  fs::path out2 = dir / "run2.jsonl";
  REQUIRE(run("extract --corpus " + corpus + " -o " + out1.string()) == 0);
  REQUIRE(run("extract --corpus " + corpus + " --jobs 4 -o " + out2.string()) == 0);
  CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("constraints on the walkthrough document") {
  fs::path dir = temp_dir();
  write_file(dir / "abc.jsonl",
             R"({"doc_id":"d1","text":"A three days ago B two days ago C one week ago",)"
             R"("events":[{"id":"A","span":[0,1],"cue":[2,16]},)"
             R"({"id":"B","span":[17,18],"cue":[19,31]},)"
             R"({"id":"C","span":[32,33],"cue":[34,46]}]})"
             "\n");
  fs::path out = dir / "constraints.jsonl";
  REQUIRE(run("constraints --corpus " + (dir / "abc.jsonl").string() + " -o " + out.string()) ==
          0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == json({{"doc_id", "d1"}, {"source", "A"}, {"target", "B"}, {"relation", "b"}}));
  CHECK(rows[1] == json({{"doc_id", "d1"}, {"source", "A"}, {"target", "C"}, {"relation", "a"}}));
}

TEST_CASE("order solves and eval ordering scores") {
  fs::path dir = temp_dir();
  std::string probs =
      R"({"doc_id":"d1","source":"e1","target":"e2","probs":{"b":0.9,"a":0.1}})"
      "\n"
      R"({"doc_id":"d1","source":"e2","target":"e3","probs":{"b":0.9,"a":0.1}})"
      "\n"
      R"({"doc_id":"d1","source":"e1","target":"e3","probs":{"b":0.45,"a":0.55}})"
      "\n";
  write_file(dir / "probs.jsonl", probs);
  fs::path out = dir / "ordered.jsonl";
  REQUIRE(run("order --probs " + (dir / "probs.jsonl").string() + " -o " + out.string()) == 0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["objective"] == "9/4");
  CHECK(rows[0]["proven_optimal"] == true);

  // soft mode without stage rows decodes identically
  fs::path soft_out = dir / "ordered_soft.jsonl";
  REQUIRE(run("order --probs " + (dir / "probs.jsonl").string() +
              " --mode soft --alpha 0.9 -o " + soft_out.string()) == 0);
  auto soft_rows = records(read_file(soft_out));
  REQUIRE(soft_rows.size() == 1);
  CHECK(soft_rows[0]["objective"] == "9/4");
  for (const auto& p : soft_rows[0]["pairs"]) CHECK(p["relation"] == "b");

  write_file(dir / "gold.jsonl",
             R"({"doc_id":"d1","source":"e1","target":"e2","relation":"b"})"
             "\n"
             R"({"doc_id":"d1","source":"e2","target":"e3","relation":"b"})"
             "\n"
             R"({"doc_id":"d1","source":"e1","target":"e3","relation":"b"})"
             "\n");
  fs::path metrics = dir / "metrics.json";
  REQUIRE(run("eval ordering --pred " + out.string() + " --gold " + (dir / "gold.jsonl").string() +
              " -o " + metrics.string()) == 0);
  auto m = records(read_file(metrics));
  REQUIRE(m.size() == 1);
  CHECK(m[0]["f1"] == doctest::Approx(1.0));
}

TEST_CASE("soft mode rewards the parser prediction") {
  fs::path dir = temp_dir();
  write_file(dir / "soft_probs.jsonl",
             R"({"doc_id":"d1","source":"e1","target":"e2","probs":{"b":0.5,"a":0.5}})"
             "\n");
  write_file(dir / "soft_stage.jsonl",
             R"({"doc_id":"d1","source":"t:e1","target":"e2","relation":"a"})"
             "\n");
  fs::path out = dir / "soft_out.jsonl";
  REQUIRE(run("order --probs " + (dir / "soft_probs.jsonl").string() + " --stage " +
              (dir / "soft_stage.jsonl").string() + " --mode soft --alpha 0.9 -o " +
              out.string()) == 0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 1);
  bool saw_stage_pair = false;
  for (const auto& p : rows[0]["pairs"]) {
    if (p["source"] == "t:e1" && p["target"] == "e2") {
      saw_stage_pair = true;
      CHECK(p["relation"] == "a");
      CHECK(p["dummy"] == true);
    }
  }
  CHECK(saw_stage_pair);
}

TEST_CASE("eval extraction over the mini corpus") {
  fs::path dir = temp_dir();
  std::string corpus = test_data() + std::string("/mini_corpus.jsonl");
  fs::path sys = dir / "system.jsonl";
  REQUIRE(run("extract --corpus " + corpus + " -o " + sys.string()) == 0);
  fs::path report = dir / "report.json";
  REQUIRE(run("eval extraction --corpus " + corpus + " --system " + sys.string() + " -o " +
              report.string()) == 0);
  auto rows = records(read_file(report));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["n"] == 20);
  CHECK(rows[0]["match_rate"] == doctest::Approx(1.0));
  CHECK(rows[0]["extended_rate"].get<double>() >= 0.5);
}

TEST_CASE("schema violations exit nonzero") {
  fs::path dir = temp_dir();
  write_file(dir / "bad.jsonl", "{\"doc_id\":\"d\"}\n");
  CHECK(run("extract --corpus " + (dir / "bad.jsonl").string()) != 0);
  write_file(dir / "bad_probs.jsonl",
             R"({"doc_id":"d","source":"a","target":"b","probs":{"b":0.5,"a":0.9}})"
             "\n");
  CHECK(run("order --probs " + (dir / "bad_probs.jsonl").string()) != 0);
  CHECK(run("extract --cues /no/such/file") != 0);
}

TEST_CASE("inputs are validated before any output file appears") {
  fs::path dir = temp_dir();
  // one good document followed by a broken one
  write_file(dir / "halfbad.jsonl",
             R"({"doc_id":"ok","text":"three days ago",)"
             R"("events":[{"id":"e1","span":[0,1],"cue":[0,14]}]})"
             "\n{\"doc_id\":\"broken\"}\n");
  fs::path out = dir / "never_written.jsonl";
  fs::remove(out);
  CHECK(run("extract --corpus " + (dir / "halfbad.jsonl").string() + " -o " + out.string()) != 0);
  CHECK(!fs::exists(out));
}

TEST_CASE("a grammar file extends coverage without a rebuild") {
  fs::path dir = temp_dir();
  const char* repo = std::getenv("STAGE_REPO_DATA");
  std::string base = repo ? std::string(repo) + "/grammar.stg" : "data/grammar.stg";
  std::string extended = read_file(base) + "\nlex inside : FuncWithin\n";
  write_file(dir / "custom.stg", extended);
  write_file(dir / "inside.txt", "inside four hours\n");

  fs::path out = dir / "custom_out.jsonl";
  REQUIRE(run("extract --grammar " + (dir / "custom.stg").string() + " --cues " +
              (dir / "inside.txt").string() + " -o " + out.string()) == 0);
  auto rows = records(read_file(out));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[0]["expr"].get<std::string>().starts_with("Range("));

  // an invalid grammar is rejected up front
  write_file(dir / "broken.stg", "Length -> Num Unit Unit @num_unit_to_length\n");
  CHECK(run("extract --grammar " + (dir / "broken.stg").string() + " --cues " +
            (dir / "inside.txt").string()) != 0);
}
