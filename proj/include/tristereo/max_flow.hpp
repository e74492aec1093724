// Copyright 2026 The tristereo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace tristereo {

using Capacity = std::int64_t;

/// Directed graph with integer capacities between two implicit terminals.
///
/// Arcs are stored in sister pairs so residual capacity can be pushed back.
/// Terminal capacities are folded into a single signed residual per node
/// (positive: connected to the source, negative: to the sink), with the common
/// part counted directly as flow.
class FlowGraph {
public:
    explicit FlowGraph(int nodes = 0);

    /// Drop all arcs and terminal links, keep allocations.
    void reset(int nodes);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    std::size_t arc_count() const { return arcs_.size(); }

    /// Adds i->j with capacity cap and j->i with capacity rev_cap.
    void add_edge(int i, int j, Capacity cap, Capacity rev_cap);
    /// Adds source->i and i->sink capacities.
    void add_terminal(int i, Capacity source_cap, Capacity sink_cap);

private:
    friend struct MaxFlowSolver;

    struct Arc {
        int head;
        int next;    // next arc leaving the same tail
        Capacity residual;
    };
    struct Node {
        int first = -1;
        Capacity terminal = 0;  // source residual minus sink residual
    };

    std::vector<Node> nodes_;
    std::vector<Arc> arcs_;  // arcs 2k and 2k+1 are sisters
    Capacity base_flow_ = 0;
};

struct MaxFlowResult {
    Capacity flow = 0;
    /// 1 when the node lies on the source side of the minimum cut. Nodes not
    /// separated from either terminal are reported on the source side.
    std::vector<std::uint8_t> source_side;
};

/// Boykov-Kolmogorov augmenting-tree max-flow. Consumes the graph's residuals.
MaxFlowResult max_flow(FlowGraph& graph);

} // namespace tristereo
