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

#include "stage/jsonl.hpp"

#include <condition_variable>
#include <deque>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"

namespace stage {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> parse_span(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
    throw std::invalid_argument(std::string(what) + " must be a [start, end] pair");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

Rational rational_from_json(const json& j) {
  if (!j.is_number()) throw std::invalid_argument("probability must be a number");
  // Route through the decimal literal so 0.45 means exactly 45/100.
  return Rational::from_decimal(j.dump());
}

}  // namespace

Document parse_document_json(const std::string& text) {
  json j = json::parse(text);  // throws json::parse_error
  Document doc;
  doc.doc_id = j.at("doc_id").get<std::string>();
  doc.text = j.at("text").get<std::string>();
  if (j.contains("dct") && !j["dct"].is_null()) {
    auto dct = parse_iso_datetime(j["dct"].get<std::string>());
    if (!dct) throw std::invalid_argument("malformed dct: " + j["dct"].get<std::string>());
    doc.dct = dct;
  }
  for (const json& e : j.value("events", json::array())) {
    EventRecord event;
    event.id = e.at("id").get<std::string>();
    event.span = parse_span(e.at("span"), "event span");
    if (e.contains("cue") && !e["cue"].is_null()) event.cue_span = parse_span(e["cue"], "cue span");
    doc.events.push_back(std::move(event));
  }
  for (const json& g : j.value("gold_timex", json::array()))
    doc.gold_timex.push_back(parse_span(g, "gold timex span"));
  for (const json& t : j.value("gold_tlinks", json::array())) {
    TlinkRecord link;
    link.source = t.at("source").get<std::string>();
    link.target = t.at("target").get<std::string>();
    auto rel = relation_from_symbol(t.at("relation").get<std::string>());
    if (!rel)
      throw std::invalid_argument("unknown relation symbol " +
                                  t.at("relation").get<std::string>());
    link.relation = *rel;
    doc.gold_tlinks.push_back(std::move(link));
  }
  validate_document(doc);
  return doc;
}

std::string document_to_json(const Document& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  if (doc.dct) j["dct"] = format_iso_datetime(*doc.dct);
  j["text"] = doc.text;
  j["events"] = json::array();
  for (const auto& e : doc.events) {
    json je;
    je["id"] = e.id;
    je["span"] = {e.span.first, e.span.second};
    if (e.cue_span) je["cue"] = {e.cue_span->first, e.cue_span->second};
    j["events"].push_back(je);
  }
  j["gold_timex"] = json::array();
  for (const auto& g : doc.gold_timex) j["gold_timex"].push_back({g.first, g.second});
  j["gold_tlinks"] = json::array();
  for (const auto& t : doc.gold_tlinks) {
    j["gold_tlinks"].push_back(
        {{"source", t.source}, {"target", t.target}, {"relation", relation_symbol(t.relation)}});
  }
  return j.dump();
}

ProbRecord parse_prob_record(const std::string& text) {
  json j = json::parse(text);
  ProbRecord record;
  record.doc_id = j.at("doc_id").get<std::string>();
  record.source = j.at("source").get<std::string>();
  record.target = j.at("target").get<std::string>();
  const json& probs = j.at("probs");
  if (!probs.is_object() || probs.empty())
    throw std::invalid_argument("probs must be a non-empty object");
  for (const auto& [key, value] : probs.items()) {
    auto rel = relation_from_symbol(key);
    if (!rel) throw std::invalid_argument("unknown relation symbol " + key);
    record.probs[*rel] = rational_from_json(value);
  }
  return record;
}

ConstraintRecord parse_constraint_record(const std::string& text) {
  json j = json::parse(text);
  ConstraintRecord record;
  record.doc_id = j.at("doc_id").get<std::string>();
  record.constraint.source = j.at("source").get<std::string>();
  record.constraint.target = j.at("target").get<std::string>();
  std::string symbol = j.at("relation").get<std::string>();
  auto rel = relation_from_symbol(symbol);
  if (!rel || *rel == RelationLabel::kVague)
    throw std::invalid_argument("constraint relation must be one of a/b/s/i/ii, got " + symbol);
  record.constraint.relation = *rel;
  return record;
}

std::string constraint_record_to_json(const ConstraintRecord& record) {
  json j;
  j["doc_id"] = record.doc_id;
  j["source"] = record.constraint.source;
  j["target"] = record.constraint.target;
  j["relation"] = relation_symbol(record.constraint.relation);
  return j.dump();
}

std::pair<std::string, TlinkRecord> parse_tlink_record(const std::string& text) {
  json j = json::parse(text);
  TlinkRecord link;
  link.source = j.at("source").get<std::string>();
  link.target = j.at("target").get<std::string>();
  std::string symbol = j.at("relation").get<std::string>();
  auto rel = relation_from_symbol(symbol);
  if (!rel) throw std::invalid_argument("unknown relation symbol " + symbol);
  link.relation = *rel;
  return {j.value("doc_id", ""), link};
}

void process_lines(std::istream& in, std::ostream& out, int jobs,
                   const std::function<std::string(const std::string&, std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      std::string result = fn(line, ++line_no);
      if (!result.empty()) out << result << '\n';
    }
    return;
  }

  struct Shared {
    std::mutex mu;
    std::condition_variable room;    // producer waits for window space
    std::condition_variable ready;   // workers wait for input
    std::condition_variable done;    // emitter waits for results
    std::deque<std::pair<std::size_t, std::string>> queue;
    std::map<std::size_t, std::string> results;
    std::size_t next_emit = 1;
    bool eof = false;
    std::exception_ptr error;
  } shared;
  const std::size_t window = static_cast<std::size_t>(jobs) * 4;

  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&shared, &fn] {
      for (;;) {
        std::pair<std::size_t, std::string> task;
        {
          std::unique_lock lock(shared.mu);
          shared.ready.wait(lock, [&] { return !shared.queue.empty() || shared.eof || shared.error; });
          if (shared.error || (shared.queue.empty() && shared.eof)) return;
          task = std::move(shared.queue.front());
          shared.queue.pop_front();
        }
        try {
          std::string result = fn(task.second, task.first);
          std::lock_guard lock(shared.mu);
          shared.results[task.first] = std::move(result);
          shared.done.notify_all();
          shared.room.notify_all();
        } catch (...) {
          std::lock_guard lock(shared.mu);
          if (!shared.error) shared.error = std::current_exception();
          shared.done.notify_all();
          shared.room.notify_all();
          shared.ready.notify_all();
          return;
        }
      }
    });
  }

  auto drain_ready = [&](std::unique_lock<std::mutex>& lock) {
    while (true) {
      auto it = shared.results.find(shared.next_emit);
      if (it == shared.results.end()) break;
      std::string result = std::move(it->second);
      shared.results.erase(it);
      ++shared.next_emit;
      lock.unlock();
      if (!result.empty()) out << result << '\n';
      lock.lock();
    }
  };

  std::string line;
  std::size_t line_no = 0;
  std::size_t submitted = 0;
  {
    std::unique_lock lock(shared.mu);
    while (true) {
      drain_ready(lock);
      if (shared.error) break;
      if (shared.queue.size() + shared.results.size() >= window) {
        // wake either for window space or to drain a finished head-of-line
        shared.room.wait(lock, [&] {
          return shared.queue.size() + shared.results.size() < window ||
                 shared.results.contains(shared.next_emit) || shared.error;
        });
        continue;
      }
      lock.unlock();
      bool got = static_cast<bool>(std::getline(in, line));
      lock.lock();
      if (!got) break;
      shared.queue.emplace_back(++line_no, line);
      ++submitted;
      shared.ready.notify_one();
    }
    shared.eof = true;
    shared.ready.notify_all();
    while (!shared.error && shared.next_emit <= submitted) {
      drain_ready(lock);
      if (shared.next_emit > submitted) break;
      shared.done.wait(lock, [&] {
        return shared.error || shared.results.contains(shared.next_emit);
      });
    }
    drain_ready(lock);
  }
  for (auto& w : workers) w.join();
  if (shared.error) std::rethrow_exception(shared.error);
}

}  // namespace stage
