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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "care/care_co.hpp"
#include "care/care_no.hpp"
#include "care/harness.hpp"
#include "care/json_io.hpp"
#include "care/oracle.hpp"
#include "care/pea.hpp"
#include "care/verify.hpp"

namespace {

using care::Json;

int log_level() {
  const char* env = std::getenv("CARE_LOG");
  return env ? std::atoi(env) : 0;
}

void info(const std::string& message) {
  if (log_level() >= 1) std::cerr << "[care] " << message << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
    info("wrote " + out_path);
  }
}

// Loads and validates; hard violations abort with exit 1.
care::Instance load_instance(const std::string& path) {
  care::Instance inst = care::parse_instance(read_file(path));
  const auto violations = care::validate(inst);
  for (const auto& v : violations) {
    if (v.warning)
      info(std::string("warning: ") + v.message);
    else
      std::cerr << "invalid instance: " << v.message << "\n";
  }
  if (care::has_hard_violation(violations)) std::exit(1);
  return inst;
}

Json assignment_json(const care::Assignment& assignment) {
  Json arr = Json::array();
  for (const auto& [w, r] : assignment.entries) {
    Json e;
    e["worker"] = w;
    e["requester"] = r;
    arr.push_back(std::move(e));
  }
  return arr;
}

int cmd_run(const std::string& instance_path, const std::string& mode, uint64_t seed,
            bool expectation, const std::string& out_path) {
  care::Instance inst = load_instance(instance_path);
  if (mode == "co") {
    emit(care::outcome_to_json(care::run_care_co(inst)).dump(2), out_path);
    return 0;
  }
  if (expectation) {
    care::OutcomeDistribution dist = care::run_care_no_expectation(inst);
    Json doc;
    doc["gamma"] = dist.partition.gamma;
    Json per_bucket = Json::array();
    for (const care::Outcome& o : dist.per_bucket) per_bucket.push_back(care::outcome_to_json(o));
    doc["per_bucket"] = std::move(per_bucket);
    doc["expected_reputation"] = care::rational_str(dist.expected_reputation);
    emit(doc.dump(2), out_path);
    return 0;
  }
  emit(care::outcome_to_json(care::run_care_no_sampled(inst, seed)).dump(2), out_path);
  return 0;
}

int cmd_gen(const std::string& params_path, uint64_t seed, const std::string& out_path,
            int workers, int requesters, int groups) {
  care::harness::GeneratorParams params;
  if (!params_path.empty()) {
    Json doc = Json::parse(read_file(params_path));
    if (doc.contains("workers")) params.workers = doc["workers"].get<int>();
    if (doc.contains("requesters")) params.requesters = doc["requesters"].get<int>();
    if (doc.contains("groups")) params.groups = doc["groups"].get<int>();
    if (doc.contains("budget_lo"))
      params.budget_lo = care::Money::parse(doc["budget_lo"].get<std::string>());
    if (doc.contains("budget_hi"))
      params.budget_hi = care::Money::parse(doc["budget_hi"].get<std::string>());
    if (doc.contains("epsilon"))
      params.epsilon = care::parse_rational(doc["epsilon"].get<std::string>());
  }
  if (workers > 0) params.workers = workers;
  if (requesters > 0) params.requesters = requesters;
  if (groups > 0) params.groups = groups;
  care::harness::GeneratedInstance gen = care::harness::generate_instance(params, seed);
  emit(care::instance_to_json(gen.instance).dump(2), out_path);
  return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& setting) {
  care::Instance inst = load_instance(instance_path);
  care::oracle::OptResult opt = setting == "co" ? care::oracle::opt_cooperative(inst)
                                                : care::oracle::opt_noncooperative(inst);
  Json doc;
  doc["setting"] = setting;
  doc["value"] = care::rational_str(opt.value);
  doc["cost_paid"] = opt.cost_paid.str();
  doc["assignment"] = assignment_json(opt.assignment);
  emit(doc.dump(2), "");
  return 0;
}

int cmd_verify(const std::string& property, long trials, uint64_t seed) {
  care::verify::PropertyResult result = care::verify::run_property(property, trials, seed);
  Json doc;
  doc["property"] = result.property;
  doc["trials"] = result.trials;
  doc["ok"] = result.ok;
  if (!result.ok) {
    doc["failure"] = result.failure;
    if (result.counterexample)
      doc["counterexample"] = care::instance_to_json(*result.counterexample);
  }
  emit(doc.dump(2), "");
  return result.ok ? 0 : 1;
}

int cmd_bench(const std::string& axis, int trials, uint64_t seed, const std::string& out_path,
              const std::string& mechanisms_csv, int jobs) {
  care::harness::SweepSpec sweep;
  sweep.axis = axis == "groups" ? care::harness::SweepAxis::Groups
                                : care::harness::SweepAxis::Requesters;
  sweep.trials = trials;
  sweep.seed = seed;

  std::vector<care::harness::MechanismId> mechanisms;
  std::map<std::string, care::harness::MechanismId> by_name = {
      {"co", care::harness::MechanismId::CareCo},
      {"no", care::harness::MechanismId::CareNo},
      {"ranpri", care::harness::MechanismId::RanPri},
      {"rrafl-ext", care::harness::MechanismId::RraflExt},
  };
  std::stringstream names(mechanisms_csv);
  std::string token;
  while (std::getline(names, token, ',')) {
    auto it = by_name.find(token);
    if (it == by_name.end()) throw CLI::ValidationError("unknown mechanism: " + token);
    mechanisms.push_back(it->second);
  }

  care::harness::GeneratorParams params;
  care::harness::ExperimentReport report =
      care::harness::run_experiment(sweep, params, mechanisms, jobs);
  emit(care::harness::report_csv(report), out_path);

  // Deterministic summary on stdout: mean reputation per sweep point
  // (runtimes live only in the CSV).
  std::map<std::pair<int, std::string>, care::Rat> sums;
  std::map<std::pair<int, std::string>, long> counts;
  for (const auto& row : report.rows) {
    sums[{row.value, row.mechanism}] += row.reputation;
    ++counts[{row.value, row.mechanism}];
  }
  Json summary;
  summary["axis"] = axis;
  Json means = Json::array();
  for (const auto& [key, sum] : sums) {
    Json entry;
    entry["value"] = key.first;
    entry["mechanism"] = key.second;
    entry["mean_reputation"] = care::rational_str(sum / counts[key]);
    means.push_back(std::move(entry));
  }
  summary["mean_reputation"] = std::move(means);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_pea_trace(const std::string& instance_path, const std::string& out_path) {
  care::Instance inst = load_instance(instance_path);
  std::vector<int> ids;
  for (const care::Worker& w : inst.workers()) ids.push_back(w.id);
  care::PeaTrace trace;
  care::Outcome outcome = care::run_pea(inst, ids, &trace);
  Json doc;
  Json points = Json::array();
  for (const care::PeaPricePoint& p : trace.points) {
    Json jp;
    jp["r"] = p.r.str();
    jp["employability"] = p.employability.str();
    jp["available"] = p.available;
    if (p.max_assignable) jp["max_assignable"] = *p.max_assignable;
    points.push_back(std::move(jp));
  }
  doc["prices"] = std::move(points);
  if (trace.critical) doc["critical_price"] = trace.critical->str();
  if (trace.left_adjacent) doc["left_adjacent"] = trace.left_adjacent->str();
  if (trace.right_adjacent) doc["right_adjacent"] = trace.right_adjacent->str();
  doc["last_affordable"] = trace.last_affordable;
  Json payment_sets = Json::object();
  for (const auto& [w, candidates] : trace.payment_candidates) {
    Json set = Json::array();
    for (const care::Money& b : candidates) set.push_back(b.str());
    if (trace.payment_unbounded.count(w)) set.push_back("inf");
    payment_sets[std::to_string(w)] = std::move(set);
  }
  doc["payment_sets"] = std::move(payment_sets);
  doc["outcome"] = care::outcome_to_json(outcome);
  emit(doc.dump(2), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compatibility-aware budget-feasible auction mechanisms"};
  app.require_subcommand(1);

  std::string instance_path, out_path, mode = "co", setting = "co", property = "ir";
  std::string axis = "requesters", mechanisms = "co,no,ranpri,rrafl-ext", params_path;
  uint64_t seed = 0;
  long trials = 100;
  int bench_trials = 10, jobs = 1, workers = 0, requesters = 0, groups = 0;
  bool expectation = false;

  CLI::App* run = app.add_subcommand("run", "run a mechanism on an instance file");
  run->add_option("--instance", instance_path, "instance JSON file")->required();
  run->add_option("--mode", mode, "co | no")->check(CLI::IsMember({"co", "no"}));
  auto* seed_opt = run->add_option("--seed", seed, "sampling seed (mode no)");
  run->add_flag("--expectation", expectation, "evaluate every bucket (mode no)")
      ->excludes(seed_opt);
  run->add_option("--out", out_path, "write the outcome JSON here instead of stdout");

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--params", params_path, "generator parameter JSON file");
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--out", out_path, "output file (default stdout)");
  gen->add_option("--workers", workers, "override worker count");
  gen->add_option("--requesters", requesters, "override requester count");
  gen->add_option("--groups", groups, "override group count");

  CLI::App* orc = app.add_subcommand("oracle", "exhaustive optimum for small instances");
  orc->add_option("--instance", instance_path, "instance JSON file")->required();
  orc->add_option("--setting", setting, "co | no")->check(CLI::IsMember({"co", "no"}));

  CLI::App* ver = app.add_subcommand("verify", "randomized property checking");
  ver->add_option("--property", property, "ir | budget | truthful | approx | lemmas | flow")
      ->required();
  ver->add_option("--trials", trials, "number of random instances");
  ver->add_option("--seed", seed, "root seed");
  ver->add_option("--jobs", jobs, "parallel workers (bench only, accepted here for symmetry)");

  CLI::App* bench = app.add_subcommand("bench", "mechanism comparison sweep");
  bench->add_option("--sweep", axis, "requesters | groups")
      ->check(CLI::IsMember({"requesters", "groups"}));
  bench->add_option("--trials", bench_trials, "seeds per sweep point");
  bench->add_option("--seed", seed, "base seed");
  bench->add_option("--out", out_path, "CSV report path")->required();
  bench->add_option("--mechanisms", mechanisms, "comma list: co,no,ranpri,rrafl-ext");
  bench->add_option("--jobs", jobs, "parallel workers");

  CLI::App* trace = app.add_subcommand("pea-trace", "dump the (r, E, M_f) table and P_i sets");
  trace->add_option("--instance", instance_path, "instance JSON file")->required();
  trace->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(instance_path, mode, seed, expectation, out_path);
    if (gen->parsed())
      return cmd_gen(params_path, seed, out_path, workers, requesters, groups);
    if (orc->parsed()) return cmd_oracle(instance_path, setting);
    if (ver->parsed()) return cmd_verify(property, trials, seed);
    if (bench->parsed())
      return cmd_bench(axis, bench_trials, seed, out_path, mechanisms, jobs);
    if (trace->parsed()) return cmd_pea_trace(instance_path, out_path);
  } catch (const care::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
