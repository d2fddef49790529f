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

#include "care/flow.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace care::flow {

namespace {

int clamp_cap(long cap, int workers) {
  // A requester can never take more units than there are workers.
  return static_cast<int>(std::min<long>(std::max<long>(cap, 0), workers));
}

std::vector<std::pair<int, int>> worker_refs(const Instance& inst,
                                             const std::vector<int>& worker_ids) {
  std::vector<std::pair<int, int>> refs;
  refs.reserve(worker_ids.size());
  for (int id : worker_ids) refs.emplace_back(id, inst.worker(id).group);
  return refs;
}

}  // namespace

FlowNetwork::FlowNetwork(int num_groups, int num_requesters,
                         const std::vector<std::vector<long>>& tau,
                         const std::vector<long>& requester_caps,
                         std::vector<std::pair<int, int>> workers)
    : num_groups_(num_groups),
      num_requesters_(num_requesters),
      workers_(std::move(workers)) {
  const int W = size();
  const int nodes = 2 + W + num_groups_ * num_requesters_ + num_requesters_;
  sink_ = nodes - 1;
  enabled_.assign(static_cast<size_t>(W), 0);
  source_arc_.assign(static_cast<size_t>(W), -1);

  // Arcs are appended per node in ascending target order; the CSR layout is
  // built in two passes so adjacency order equals insertion order.
  std::vector<std::vector<Arc>> adj(static_cast<size_t>(nodes));
  auto add_arc = [&](int from, int to, int cap) {
    adj[static_cast<size_t>(from)].push_back({to, static_cast<int>(adj[static_cast<size_t>(to)].size()), cap, 0});
    adj[static_cast<size_t>(to)].push_back({from, static_cast<int>(adj[static_cast<size_t>(from)].size()) - 1, 0, 0});
  };

  for (int i = 0; i < W; ++i) add_arc(0, worker_node_(i), 0);  // enabled later
  for (int i = 0; i < W; ++i) {
    const int g = workers_[static_cast<size_t>(i)].second - 1;
    for (int j = 0; j < num_requesters_; ++j) add_arc(worker_node_(i), slot_node_(g, j), 1);
  }
  for (int g = 0; g < num_groups_; ++g)
    for (int j = 0; j < num_requesters_; ++j)
      add_arc(slot_node_(g, j), requester_node_(j),
              clamp_cap(tau[static_cast<size_t>(g)][static_cast<size_t>(j)], W));
  for (int j = 0; j < num_requesters_; ++j)
    add_arc(requester_node_(j), sink_, clamp_cap(requester_caps[static_cast<size_t>(j)], W));

  first_arc_.assign(static_cast<size_t>(nodes) + 1, 0);
  for (int u = 0; u < nodes; ++u)
    first_arc_[static_cast<size_t>(u) + 1] =
        first_arc_[static_cast<size_t>(u)] + static_cast<int>(adj[static_cast<size_t>(u)].size());
  arcs_.resize(static_cast<size_t>(first_arc_.back()));
  for (int u = 0; u < nodes; ++u)
    for (size_t k = 0; k < adj[static_cast<size_t>(u)].size(); ++k) {
      Arc a = adj[static_cast<size_t>(u)][k];
      a.rev = first_arc_[static_cast<size_t>(a.to)] + a.rev;
      arcs_[static_cast<size_t>(first_arc_[static_cast<size_t>(u)]) + k] = a;
    }
  for (int i = 0; i < W; ++i) source_arc_[static_cast<size_t>(i)] = first_arc_[0] + i;
}

bool FlowNetwork::dfs_(int node, std::vector<char>& visited) {
  if (node == sink_) return true;
  visited[static_cast<size_t>(node)] = 1;
  for (int k = first_arc_[static_cast<size_t>(node)]; k < first_arc_[static_cast<size_t>(node) + 1]; ++k) {
    Arc& a = arcs_[static_cast<size_t>(k)];
    if (a.cap - a.flow <= 0 || visited[static_cast<size_t>(a.to)]) continue;
    if (dfs_(a.to, visited)) {
      ++a.flow;
      --arcs_[static_cast<size_t>(a.rev)].flow;
      return true;
    }
  }
  return false;
}

bool FlowNetwork::try_add(int index) {
  Arc& src = arcs_[static_cast<size_t>(source_arc_[static_cast<size_t>(index)])];
  enabled_[static_cast<size_t>(index)] = 1;
  src.cap = 1;
  if (src.flow >= src.cap) return true;
  std::vector<char> visited(static_cast<size_t>(sink_) + 1, 0);
  visited[0] = 1;  // a source->sink path never revisits the source
  if (dfs_(worker_node_(index), visited)) {
    ++src.flow;
    --arcs_[static_cast<size_t>(src.rev)].flow;
    ++flow_value_;
    return true;
  }
  return false;
}

void FlowNetwork::remove(int index) {
  Arc& src = arcs_[static_cast<size_t>(source_arc_[static_cast<size_t>(index)])];
  if (src.flow > 0) {
    // Walk the unit from the worker down to the sink and cancel it.
    --src.flow;
    ++arcs_[static_cast<size_t>(src.rev)].flow;
    int node = worker_node_(index);
    while (node != sink_) {
      for (int k = first_arc_[static_cast<size_t>(node)]; k < first_arc_[static_cast<size_t>(node) + 1]; ++k) {
        Arc& a = arcs_[static_cast<size_t>(k)];
        if (a.to != 0 && a.flow > 0) {
          --a.flow;
          ++arcs_[static_cast<size_t>(a.rev)].flow;
          node = a.to;
          break;
        }
      }
    }
    --flow_value_;
  }
  enabled_[static_cast<size_t>(index)] = 0;
  src.cap = 0;
}

bool FlowNetwork::reaugment() {
  std::vector<char> visited(static_cast<size_t>(sink_) + 1, 0);
  if (dfs_(0, visited)) {
    ++flow_value_;
    return true;
  }
  return false;
}

bool FlowNetwork::is_assigned(int index) const {
  return arcs_[static_cast<size_t>(source_arc_[static_cast<size_t>(index)])].flow > 0;
}

int FlowNetwork::assigned_requester(int index) const {
  if (!is_assigned(index)) return 0;
  const int node = worker_node_(index);
  for (int k = first_arc_[static_cast<size_t>(node)]; k < first_arc_[static_cast<size_t>(node) + 1]; ++k) {
    const Arc& a = arcs_[static_cast<size_t>(k)];
    if (a.to != 0 && a.flow > 0) {
      const int slot0 = a.to - 1 - size();
      return slot0 % num_requesters_ + 1;
    }
  }
  return 0;
}

Assignment FlowNetwork::decode() const {
  Assignment out;
  for (int i = 0; i < size(); ++i) {
    const int r = assigned_requester(i);
    if (r > 0) out.entries.emplace_back(worker_id(i), r);
  }
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

std::string FlowNetwork::to_dot() const {
  std::ostringstream os;
  os << "digraph assignment {\n  rankdir=LR;\n";
  auto name = [&](int node) -> std::string {
    if (node == 0) return "s";
    if (node == sink_) return "t";
    if (node <= size()) return "w" + std::to_string(worker_id(node - 1));
    const int base = node - 1 - size();
    if (base < num_groups_ * num_requesters_)
      return "g" + std::to_string(base / num_requesters_ + 1) + "r" +
             std::to_string(base % num_requesters_ + 1);
    return "r" + std::to_string(base - num_groups_ * num_requesters_ + 1);
  };
  const int nodes = sink_ + 1;
  for (int u = 0; u < nodes; ++u)
    for (int k = first_arc_[static_cast<size_t>(u)]; k < first_arc_[static_cast<size_t>(u) + 1]; ++k) {
      const Arc& a = arcs_[static_cast<size_t>(k)];
      if (a.cap == 0) continue;  // residual direction
      os << "  " << name(u) << " -> " << name(a.to) << " [label=\"" << a.flow << "/"
         << a.cap << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

FlowNetwork build_assignment_network(const Instance& inst,
                                     const std::vector<int>& worker_ids,
                                     const std::vector<long>& requester_caps) {
  return FlowNetwork(inst.L(), inst.m(), inst.tau().tau, requester_caps,
                     worker_refs(inst, worker_ids));
}

FlowResult max_cardinality(FlowNetwork net) {
  for (int i = 0; i < net.size(); ++i) net.try_add(i);
  FlowResult result;
  result.flow_value = net.flow_value();
  result.assignment = net.decode();
  return result;
}

FlowResult max_cardinality(const Instance& inst, const std::vector<int>& worker_ids,
                           const std::vector<long>& requester_caps) {
  return max_cardinality(build_assignment_network(inst, worker_ids, requester_caps));
}

FlowResult max_reputation(const Instance& inst, const std::vector<int>& worker_ids) {
  std::vector<int> ids = worker_ids;
  std::sort(ids.begin(), ids.end());
  const std::vector<long> caps(static_cast<size_t>(inst.m()),
                               static_cast<long>(ids.size()));
  FlowNetwork net = build_assignment_network(inst, ids, caps);

  // Admission order: reputation descending, id ascending. Each admitted
  // worker contributes exactly +v_i (an augmenting path re-routes earlier
  // units but never expels one), so this is the maximum-gain augmentation.
  std::vector<int> order(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Rat& va = inst.worker(ids[static_cast<size_t>(a)]).reputation;
    const Rat& vb = inst.worker(ids[static_cast<size_t>(b)]).reputation;
    if (va != vb) return va > vb;
    return ids[static_cast<size_t>(a)] < ids[static_cast<size_t>(b)];
  });

  FlowResult result;
  for (int idx : order) {
    if (net.try_add(idx))
      result.objective += inst.worker(ids[static_cast<size_t>(idx)]).reputation;
  }
  result.flow_value = net.flow_value();
  result.assignment = net.decode();
  return result;
}

FlowResult min_weight_at_cardinality(const Instance& inst,
                                     const std::vector<int>& worker_ids, long K,
                                     const std::vector<long>& requester_caps) {
  FlowNetwork net = build_assignment_network(inst, worker_ids, requester_caps);
  FlowResult result;
  if (K == 0) return result;
  for (int i = 0; i < net.size() && net.flow_value() < K; ++i) {
    if (net.try_add(i)) result.weight += Int(1) << (i + 1);
  }
  if (net.flow_value() < K)
    throw InfeasibleCardinality("requested cardinality " + std::to_string(K) +
                                " exceeds the maximum feasible assignment");
  result.flow_value = net.flow_value();
  result.assignment = net.decode();
  return result;
}

// ---------------------------------------------------------------------------
// Min-cost max-flow reference for the reputation objective. Plain successive
// shortest paths with Bellman-Ford; costs are exact rationals and the only
// negative arcs are source->worker, so no potentials are needed.

namespace {

struct CostArc {
  int to;
  int rev;
  int cap;
  int flow;
  Rat cost;
};

class MinCostNetwork {
 public:
  MinCostNetwork(const Instance& inst, const std::vector<int>& ids)
      : ids_(ids), m_(inst.m()), L_(inst.L()) {
    const int W = static_cast<int>(ids.size());
    nodes_ = 2 + W + L_ * m_ + m_;
    sink_ = nodes_ - 1;
    graph_.assign(static_cast<size_t>(nodes_), {});
    for (int i = 0; i < W; ++i)
      add_arc(0, 1 + i, 1, Rat(-inst.worker(ids[static_cast<size_t>(i)]).reputation));
    for (int i = 0; i < W; ++i) {
      const int g = inst.worker(ids[static_cast<size_t>(i)]).group - 1;
      for (int j = 0; j < m_; ++j) add_arc(1 + i, slot(g, j), 1, Rat(0));
    }
    for (int g = 0; g < L_; ++g)
      for (int j = 0; j < m_; ++j)
        add_arc(slot(g, j), req(j),
                static_cast<int>(std::min<long>(
                    inst.tau().tau[static_cast<size_t>(g)][static_cast<size_t>(j)], W)),
                Rat(0));
    for (int j = 0; j < m_; ++j) add_arc(req(j), sink_, W, Rat(0));
  }

  // Augments along minimum-cost paths while they have negative cost.
  Rat solve(Assignment* assignment, const Instance& inst) {
    Rat total = 0;
    while (true) {
      auto [found, cost] = augment_once();
      if (!found || cost >= 0) break;
      total -= cost;
    }
    if (assignment) {
      for (size_t i = 0; i < ids_.size(); ++i) {
        for (const CostArc& a : graph_[1 + i]) {
          if (a.to != 0 && a.flow > 0) {
            const int slot0 = a.to - 1 - static_cast<int>(ids_.size());
            assignment->entries.emplace_back(ids_[i], slot0 % m_ + 1);
          }
        }
      }
      std::sort(assignment->entries.begin(), assignment->entries.end());
    }
    (void)inst;
    return total;
  }

 private:
  int slot(int g, int j) const { return 1 + static_cast<int>(ids_.size()) + g * m_ + j; }
  int req(int j) const { return 1 + static_cast<int>(ids_.size()) + L_ * m_ + j; }

  void add_arc(int from, int to, int cap, Rat cost) {
    graph_[static_cast<size_t>(from)].push_back(
        {to, static_cast<int>(graph_[static_cast<size_t>(to)].size()), cap, 0, cost});
    graph_[static_cast<size_t>(to)].push_back(
        {from, static_cast<int>(graph_[static_cast<size_t>(from)].size()) - 1, 0, 0, Rat(-cost)});
  }

  std::pair<bool, Rat> augment_once() {
    std::vector<Rat> dist(static_cast<size_t>(nodes_), Rat(0));
    std::vector<char> reached(static_cast<size_t>(nodes_), 0);
    std::vector<std::pair<int, int>> pred(static_cast<size_t>(nodes_), {-1, -1});
    reached[0] = 1;
    for (int round = 0; round < nodes_; ++round) {
      bool relaxed = false;
      for (int u = 0; u < nodes_; ++u) {
        if (!reached[static_cast<size_t>(u)]) continue;
        const auto& arcs = graph_[static_cast<size_t>(u)];
        for (size_t k = 0; k < arcs.size(); ++k) {
          const CostArc& a = arcs[k];
          if (a.cap - a.flow <= 0) continue;
          const Rat cand = dist[static_cast<size_t>(u)] + a.cost;
          if (!reached[static_cast<size_t>(a.to)] || cand < dist[static_cast<size_t>(a.to)]) {
            reached[static_cast<size_t>(a.to)] = 1;
            dist[static_cast<size_t>(a.to)] = cand;
            pred[static_cast<size_t>(a.to)] = {u, static_cast<int>(k)};
            relaxed = true;
          }
        }
      }
      if (!relaxed) break;
    }
    if (!reached[static_cast<size_t>(sink_)]) return {false, Rat(0)};
    int node = sink_;
    while (node != 0) {
      auto [u, k] = pred[static_cast<size_t>(node)];
      CostArc& a = graph_[static_cast<size_t>(u)][static_cast<size_t>(k)];
      ++a.flow;
      --graph_[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].flow;
      node = u;
    }
    return {true, dist[static_cast<size_t>(sink_)]};
  }

  std::vector<int> ids_;
  int m_;
  int L_;
  int nodes_;
  int sink_;
  std::vector<std::vector<CostArc>> graph_;
};

}  // namespace

FlowResult max_reputation_mincost(const Instance& inst, const std::vector<int>& worker_ids) {
  std::vector<int> ids = worker_ids;
  std::sort(ids.begin(), ids.end());
  MinCostNetwork net(inst, ids);
  FlowResult result;
  result.objective = net.solve(&result.assignment, inst);
  result.flow_value = static_cast<long>(result.assignment.size());
  return result;
}

}  // namespace care::flow
