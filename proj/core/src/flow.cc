// Copyright 2026 The bigmarket Authors
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

#include "bigmarket/flow.h"

#include <algorithm>
#include <deque>
#include <limits>

namespace bigmarket {

MinCostFlow::MinCostFlow(int num_nodes)
    : num_nodes_(num_nodes), out_(num_nodes) {}

int MinCostFlow::AddArc(int tail, int head, int64_t capacity,
                        double unit_cost) {
  const int id = static_cast<int>(arcs_.size() / 2);
  out_[tail].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({head, capacity, 0, unit_cost});
  out_[head].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({tail, 0, 0, -unit_cost});
  return id;
}

double MinCostFlow::MinimizeCost(int source, int sink, double threshold) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(num_nodes_);
  std::vector<int> via(num_nodes_);
  std::vector<char> queued(num_nodes_);
  double total = 0.0;
  while (true) {
    // Queue-based Bellman-Ford over the residual graph.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(queued.begin(), queued.end(), 0);
    std::deque<int> queue{source};
    dist[source] = 0.0;
    queued[source] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (int a : out_[u]) {
        if (Residual(a) <= 0) continue;
        const int v = arcs_[a].head;
        const double nd = dist[u] + arcs_[a].cost;
        if (nd < dist[v] - 1e-15) {
          dist[v] = nd;
          via[v] = a;
          if (!queued[v]) {
            queued[v] = 1;
            queue.push_back(v);
          }
        }
      }
    }
    if (dist[sink] == kInf || dist[sink] >= -threshold) break;
    int64_t push = std::numeric_limits<int64_t>::max();
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].head) {
      push = std::min(push, Residual(via[v]));
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].head) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    total += push * dist[sink];
  }
  return total;
}

RealMaxFlow::RealMaxFlow(int num_nodes) : out_(num_nodes) {}

int RealMaxFlow::AddArc(int tail, int head, double capacity) {
  const int id = static_cast<int>(arcs_.size() / 2);
  out_[tail].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({head, capacity, 0.0});
  out_[head].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({tail, 0.0, 0.0});
  return id;
}

double RealMaxFlow::Solve(int source, int sink, double epsilon) {
  const int n = static_cast<int>(out_.size());
  double total = 0.0;
  std::vector<int> via(n);
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{source};
    via[source] = -2;
    while (!queue.empty() && via[sink] == -1) {
      const int u = queue.front();
      queue.pop_front();
      for (int a : out_[u]) {
        const int v = arcs_[a].head;
        if (via[v] == -1 && arcs_[a].capacity - arcs_[a].flow > epsilon) {
          via[v] = a;
          queue.push_back(v);
        }
      }
    }
    if (via[sink] == -1) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].head) {
      push = std::min(push, arcs_[via[v]].capacity - arcs_[via[v]].flow);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].head) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    total += push;
  }
  return total;
}

}  // namespace bigmarket
