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

#ifndef BIGMARKET_FLOW_H_
#define BIGMARKET_FLOW_H_

#include <cstdint>
#include <vector>

namespace bigmarket {

// Successive-shortest-path min-cost flow with integer capacities and real
// costs. Sized for the desk-scale graphs built by the welfare oracle; paths
// are found with Bellman-Ford so negative arc costs are allowed as long as the
// initial graph has no negative cycle.
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);

  int AddArc(int tail, int head, int64_t capacity, double unit_cost);

  // Augments from source to sink while the cheapest residual path has cost
  // below -threshold, i.e. while sending more flow lowers the total cost.
  // Returns the total cost of the resulting flow.
  double MinimizeCost(int source, int sink, double threshold = 1e-12);

  int64_t Flow(int arc) const { return arcs_[2 * arc].flow; }

 private:
  struct Arc {
    int head;
    int64_t capacity;
    int64_t flow;
    double cost;
  };

  int64_t Residual(int a) const { return arcs_[a].capacity - arcs_[a].flow; }

  int num_nodes_;
  std::vector<Arc> arcs_;  // arc 2e is forward, 2e+1 its reverse
  std::vector<std::vector<int>> out_;
};

// Edmonds-Karp maximum flow over real capacities.
class RealMaxFlow {
 public:
  explicit RealMaxFlow(int num_nodes);

  int AddArc(int tail, int head, double capacity);
  double Solve(int source, int sink, double epsilon = 1e-15);
  double Flow(int arc) const { return arcs_[2 * arc].flow; }

 private:
  struct Arc {
    int head;
    double capacity;
    double flow;
  };

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace bigmarket

#endif  // BIGMARKET_FLOW_H_
