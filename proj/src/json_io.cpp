// Copyright 2026 The CARE Authors
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

#include "care/json_io.hpp"

#include <string>
#include <vector>

namespace care {

namespace {

const Json& require_field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

long require_integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<long>();
}

Rat parse_rational_field(const Json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected an exact number (decimal or p/q string)");
}

Money parse_money_field(const Json& v, const std::string& path) {
  Rat r = parse_rational_field(v, path);
  if (r < 0) throw ParseError(path, "money amount must be non-negative");
  return Money(std::move(r));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("$", "malformed JSON");
  return instance_from_json(doc);
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("$", "expected a JSON object");

  const Json& jworkers = require_field(doc, "workers", "$");
  if (!jworkers.is_array() || jworkers.empty())
    throw ParseError("$.workers", "expected a non-empty array");
  std::vector<Worker> workers;
  workers.reserve(jworkers.size());
  for (size_t i = 0; i < jworkers.size(); ++i) {
    const std::string path = "$.workers[" + std::to_string(i) + "]";
    const Json& jw = jworkers[i];
    Worker w;
    w.id = static_cast<int>(require_integer(require_field(jw, "id", path), path + ".id"));
    w.group = static_cast<int>(require_integer(require_field(jw, "group", path), path + ".group"));
    w.bid = parse_money_field(require_field(jw, "bid", path), path + ".bid");
    if (jw.contains("cost")) w.cost = parse_money_field(jw["cost"], path + ".cost");
    w.reputation =
        parse_rational_field(require_field(jw, "reputation", path), path + ".reputation");
    workers.push_back(std::move(w));
  }

  const Json& jreqs = require_field(doc, "requesters", "$");
  if (!jreqs.is_array() || jreqs.empty())
    throw ParseError("$.requesters", "expected a non-empty array");
  std::vector<Requester> requesters;
  requesters.reserve(jreqs.size());
  for (size_t j = 0; j < jreqs.size(); ++j) {
    const std::string path = "$.requesters[" + std::to_string(j) + "]";
    const Json& jr = jreqs[j];
    Requester r;
    r.id = static_cast<int>(require_integer(require_field(jr, "id", path), path + ".id"));
    r.budget = parse_money_field(require_field(jr, "budget", path), path + ".budget");
    requesters.push_back(std::move(r));
  }

  const Json& jtau = require_field(doc, "tau", "$");
  if (!jtau.is_array() || jtau.empty()) throw ParseError("$.tau", "expected a non-empty matrix");
  CompatibilityMatrix tau;
  for (size_t l = 0; l < jtau.size(); ++l) {
    const std::string path = "$.tau[" + std::to_string(l) + "]";
    if (!jtau[l].is_array()) throw ParseError(path, "expected a row of integers");
    std::vector<long> row;
    for (size_t j = 0; j < jtau[l].size(); ++j) {
      long t = require_integer(jtau[l][j], path + "[" + std::to_string(j) + "]");
      if (t < 0) throw ParseError(path + "[" + std::to_string(j) + "]", "tau must be >= 0");
      row.push_back(t);
    }
    tau.tau.push_back(std::move(row));
  }

  Rat epsilon(10);
  if (doc.contains("epsilon")) epsilon = parse_rational_field(doc["epsilon"], "$.epsilon");
  uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned())
      throw ParseError("$.seed", "expected an integer");
    seed = doc["seed"].get<uint64_t>();
  }

  // Re-check group references here so the error carries a JSON path.
  const int L = tau.groups();
  for (size_t i = 0; i < workers.size(); ++i) {
    if (workers[i].group < 1 || workers[i].group > L)
      throw ParseError("$.workers[" + std::to_string(i) + "].group",
                       "unknown group " + std::to_string(workers[i].group) + " of " +
                           std::to_string(L));
  }
  try {
    return Instance(std::move(workers), std::move(requesters), std::move(tau),
                    std::move(epsilon), seed);
  } catch (const std::invalid_argument& e) {
    throw ParseError("$", e.what());
  }
}

Json instance_to_json(const Instance& inst) {
  Json doc;
  Json jworkers = Json::array();
  for (const Worker& w : inst.workers()) {
    Json jw;
    jw["id"] = w.id;
    jw["group"] = w.group;
    if (w.cost) jw["cost"] = w.cost->str();
    jw["bid"] = w.bid.str();
    jw["reputation"] = rational_str(w.reputation);
    jworkers.push_back(std::move(jw));
  }
  doc["workers"] = std::move(jworkers);
  Json jreqs = Json::array();
  for (const Requester& r : inst.requesters()) {
    Json jr;
    jr["id"] = r.id;
    jr["budget"] = r.budget.str();
    jreqs.push_back(std::move(jr));
  }
  doc["requesters"] = std::move(jreqs);
  Json jtau = Json::array();
  for (const auto& row : inst.tau().tau) jtau.push_back(row);
  doc["tau"] = std::move(jtau);
  doc["epsilon"] = rational_str(inst.epsilon());
  doc["seed"] = inst.seed();
  return doc;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

Json outcome_to_json(const Outcome& outcome) {
  Json doc;
  Json winners = Json::array();
  for (const auto& [w, r] : outcome.assignment.entries) winners.push_back(w);
  doc["winners"] = std::move(winners);
  Json payments = Json::object();
  for (const auto& [w, p] : outcome.payments) {
    Json jp;
    jp["requester"] = p.requester;
    jp["amount"] = p.amount.str();
    payments[std::to_string(w)] = std::move(jp);
  }
  doc["payments"] = std::move(payments);
  doc["total_reputation"] = rational_str(outcome.total_reputation);
  const Diagnostics& d = outcome.diagnostics;
  if (d.unit_price) doc["unit_price"] = d.unit_price->str();
  if (d.key_worker) doc["key_worker"] = *d.key_worker;
  if (d.critical_price) doc["critical_price"] = d.critical_price->str();
  if (d.bucket_chosen) doc["bucket"] = *d.bucket_chosen;
  if (d.gamma > 0) doc["gamma"] = d.gamma;
  if (!d.requester_spend.empty()) {
    Json spend = Json::object();
    for (const auto& [r, amount] : d.requester_spend)
      spend[std::to_string(r)] = amount.str();
    doc["requester_spend"] = std::move(spend);
  }
  if (!d.notes.empty()) doc["notes"] = d.notes;
  return doc;
}

Json violations_to_json(const std::vector<Violation>& violations) {
  Json arr = Json::array();
  for (const Violation& v : violations) {
    Json jv;
    jv["code"] = violation_code_name(v.code);
    jv["warning"] = v.warning;
    if (v.worker >= 0) jv["worker"] = v.worker;
    if (v.group >= 0) jv["group"] = v.group;
    if (v.requester >= 0) jv["requester"] = v.requester;
    jv["message"] = v.message;
    arr.push_back(std::move(jv));
  }
  return arr;
}

}  // namespace care
