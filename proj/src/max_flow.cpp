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

#include "tristereo/max_flow.hpp"

#include "tristereo/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace tristereo {

FlowGraph::FlowGraph(int nodes) { reset(nodes); }

void FlowGraph::reset(int nodes) {
    if (nodes < 0) {
        throw ConfigError("negative node count");
    }
    nodes_.assign(static_cast<std::size_t>(nodes), Node{});
    arcs_.clear();
    base_flow_ = 0;
}

void FlowGraph::add_edge(int i, int j, Capacity cap, Capacity rev_cap) {
    if (i < 0 || j < 0 || i >= node_count() || j >= node_count() || i == j) {
        throw ConfigError("invalid edge endpoints");
    }
    if (cap < 0 || rev_cap < 0) {
        throw ConfigError("negative edge capacity");
    }
    const int a = static_cast<int>(arcs_.size());
    arcs_.push_back(Arc{j, nodes_[static_cast<std::size_t>(i)].first, cap});
    arcs_.push_back(Arc{i, nodes_[static_cast<std::size_t>(j)].first, rev_cap});
    nodes_[static_cast<std::size_t>(i)].first = a;
    nodes_[static_cast<std::size_t>(j)].first = a + 1;
}

void FlowGraph::add_terminal(int i, Capacity source_cap, Capacity sink_cap) {
    if (i < 0 || i >= node_count()) {
        throw ConfigError("invalid terminal node");
    }
    if (source_cap < 0 || sink_cap < 0) {
        throw ConfigError("negative terminal capacity");
    }
    auto& n = nodes_[static_cast<std::size_t>(i)];
    // Existing residual r splits into (max(r,0), max(-r,0)); the shared part is already flow.
    Capacity s = std::max<Capacity>(n.terminal, 0) + source_cap;
    Capacity t = std::max<Capacity>(-n.terminal, 0) + sink_cap;
    const Capacity common = std::min(s, t);
    base_flow_ += common;
    n.terminal = s - t;
}

// ---------------------------------------------------------------------------

struct MaxFlowSolver {
    static constexpr int kNone = -1;      // free node
    static constexpr int kTerminal = -2;  // child of a terminal
    static constexpr int kOrphan = -3;

    using Arc = FlowGraph::Arc;

    struct State {
        int parent = kNone;  // arc from this node toward its parent
        bool sink_tree = false;
        bool active = false;
        long stamp = 0;
        int dist = 0;
    };

    explicit MaxFlowSolver(FlowGraph& g) : g(g), st(g.nodes_.size()) {}

    FlowGraph& g;
    std::vector<State> st;
    std::deque<int> active;
    std::deque<int> orphans;
    long time = 0;
    Capacity flow = 0;

    static int sister(int a) { return a ^ 1; }
    Arc& arc(int a) { return g.arcs_[static_cast<std::size_t>(a)]; }
    State& s(int i) { return st[static_cast<std::size_t>(i)]; }
    Capacity& terminal(int i) { return g.nodes_[static_cast<std::size_t>(i)].terminal; }
    int first(int i) { return g.nodes_[static_cast<std::size_t>(i)].first; }

    void activate(int i) {
        if (!s(i).active) {
            s(i).active = true;
            active.push_back(i);
        }
    }

    int next_active() {
        while (!active.empty()) {
            const int i = active.front();
            active.pop_front();
            s(i).active = false;
            if (s(i).parent != kNone) {
                return i;
            }
        }
        return kNone;
    }

    void init() {
        for (int i = 0; i < static_cast<int>(st.size()); ++i) {
            const Capacity r = terminal(i);
            if (r != 0) {
                s(i).sink_tree = r < 0;
                s(i).parent = kTerminal;
                s(i).stamp = 0;
                s(i).dist = 1;
                activate(i);
            }
        }
    }

    // Returns the arc (source-tree tail -> sink-tree head) joining the trees, or kNone.
    int grow(int i) {
        for (int a = first(i); a != kNone; a = arc(a).next) {
            const int j = arc(a).head;
            if (!s(i).sink_tree) {
                if (arc(a).residual == 0) {
                    continue;
                }
                if (s(j).parent == kNone) {
                    s(j).sink_tree = false;
                    s(j).parent = sister(a);
                    s(j).stamp = s(i).stamp;
                    s(j).dist = s(i).dist + 1;
                    activate(j);
                } else if (s(j).sink_tree) {
                    return a;
                } else if (s(j).stamp <= s(i).stamp && s(j).dist > s(i).dist) {
                    s(j).parent = sister(a);
                    s(j).stamp = s(i).stamp;
                    s(j).dist = s(i).dist + 1;
                }
            } else {
                if (arc(sister(a)).residual == 0) {
                    continue;
                }
                if (s(j).parent == kNone) {
                    s(j).sink_tree = true;
                    s(j).parent = sister(a);
                    s(j).stamp = s(i).stamp;
                    s(j).dist = s(i).dist + 1;
                    activate(j);
                } else if (!s(j).sink_tree) {
                    return sister(a);
                } else if (s(j).stamp <= s(i).stamp && s(j).dist > s(i).dist) {
                    s(j).parent = sister(a);
                    s(j).stamp = s(i).stamp;
                    s(j).dist = s(i).dist + 1;
                }
            }
        }
        return kNone;
    }

    void make_orphan(int i) {
        s(i).parent = kOrphan;
        orphans.push_back(i);
    }

    void augment(int middle) {
        // Bottleneck along source path, middle arc, sink path.
        Capacity b = arc(middle).residual;
        for (int i = arc(sister(middle)).head;;) {
            const int a = s(i).parent;
            if (a == kTerminal) {
                b = std::min(b, terminal(i));
                break;
            }
            b = std::min(b, arc(sister(a)).residual);
            i = arc(a).head;
        }
        for (int i = arc(middle).head;;) {
            const int a = s(i).parent;
            if (a == kTerminal) {
                b = std::min(b, -terminal(i));
                break;
            }
            b = std::min(b, arc(a).residual);
            i = arc(a).head;
        }

        arc(sister(middle)).residual += b;
        arc(middle).residual -= b;
        for (int i = arc(sister(middle)).head;;) {
            const int a = s(i).parent;
            if (a == kTerminal) {
                terminal(i) -= b;
                if (terminal(i) == 0) {
                    make_orphan(i);
                }
                break;
            }
            arc(a).residual += b;
            arc(sister(a)).residual -= b;
            if (arc(sister(a)).residual == 0) {
                make_orphan(i);
            }
            i = arc(a).head;
        }
        for (int i = arc(middle).head;;) {
            const int a = s(i).parent;
            if (a == kTerminal) {
                terminal(i) += b;
                if (terminal(i) == 0) {
                    make_orphan(i);
                }
                break;
            }
            arc(sister(a)).residual += b;
            arc(a).residual -= b;
            if (arc(a).residual == 0) {
                make_orphan(i);
            }
            i = arc(a).head;
        }
        flow += b;
    }

    // Distance from j to a terminal through valid parents, or -1 when the chain
    // ends at an orphan. Caches results via stamp/dist.
    int origin_distance(int j) {
        int d = 0;
        int k = j;
        while (true) {
            if (s(k).stamp == time) {
                d += s(k).dist;
                break;
            }
            const int a = s(k).parent;
            ++d;
            if (a == kTerminal) {
                s(k).stamp = time;
                s(k).dist = 1;
                break;
            }
            if (a == kOrphan || a == kNone) {
                return -1;
            }
            k = arc(a).head;
        }
        // Stamp the walked chain with exact distances.
        int dd = d;
        for (k = j; s(k).stamp != time; k = arc(s(k).parent).head) {
            s(k).stamp = time;
            s(k).dist = dd--;
        }
        return d;
    }

    void adopt(int i) {
        const bool sink = s(i).sink_tree;
        int best_arc = kNone;
        int best_dist = std::numeric_limits<int>::max();
        for (int a = first(i); a != kNone; a = arc(a).next) {
            // Residual must run from the candidate parent toward i (source tree)
            // or from i toward it (sink tree).
            const Capacity r = sink ? arc(a).residual : arc(sister(a)).residual;
            if (r == 0) {
                continue;
            }
            const int j = arc(a).head;
            if (s(j).sink_tree != sink || s(j).parent == kNone || s(j).parent == kOrphan) {
                continue;
            }
            const int d = origin_distance(j);
            if (d >= 0 && d < best_dist) {
                best_dist = d;
                best_arc = a;
            }
        }
        if (best_arc != kNone) {
            s(i).parent = best_arc;
            s(i).stamp = time;
            s(i).dist = best_dist + 1;
            return;
        }
        // No valid parent: i becomes free, its children become orphans.
        s(i).parent = kNone;
        for (int a = first(i); a != kNone; a = arc(a).next) {
            const int j = arc(a).head;
            if (s(j).sink_tree != sink || s(j).parent == kNone) {
                continue;
            }
            const Capacity r = sink ? arc(a).residual : arc(sister(a)).residual;
            if (r > 0) {
                activate(j);
            }
            const int pa = s(j).parent;
            if (pa != kTerminal && pa != kOrphan && arc(pa).head == i) {
                make_orphan(j);
            }
        }
    }

    MaxFlowResult run() {
        init();
        int current = kNone;
        while (true) {
            int i = current;
            if (i == kNone || s(i).parent == kNone) {
                current = kNone;
                i = next_active();
                if (i == kNone) {
                    break;
                }
            }
            const int middle = grow(i);
            ++time;
            if (middle == kNone) {
                current = kNone;
                continue;
            }
            // Keep expanding from i after the augmentation.
            current = i;
            augment(middle);
            while (!orphans.empty()) {
                const int o = orphans.front();
                orphans.pop_front();
                adopt(o);
            }
        }

        MaxFlowResult out;
        out.flow = flow + g.base_flow_;
        out.source_side.resize(st.size());
        for (std::size_t i = 0; i < st.size(); ++i) {
            out.source_side[i] = (st[i].parent != kNone && st[i].sink_tree) ? 0 : 1;
        }
        return out;
    }
};

MaxFlowResult max_flow(FlowGraph& graph) {
    MaxFlowSolver solver(graph);
    return solver.run();
}

} // namespace tristereo
