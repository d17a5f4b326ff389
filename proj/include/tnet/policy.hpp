#pragma once

#include <vector>

#include "tnet/dp.hpp"
#include "tnet/model.hpp"

namespace tnet {

struct ActionProb {
    PacketAction action;
    double prob = 0.0;
};

// Randomized Markov packet policy: per (flow, node, time-to-go) a
// distribution over {Wait} u {Transmit(link, option)}. States with no entry
// default to Wait; that covers unreachable states and s = 0.
struct PolicyTable {
    // dist[flow][node][s], s in [0, deadline_f]
    std::vector<std::vector<std::vector<std::vector<ActionProb>>>> dist;

    static PolicyTable all_wait(const ProblemSpec& spec) {
        PolicyTable pt;
        pt.dist.resize(spec.flows.size());
        for (size_t f = 0; f < spec.flows.size(); ++f)
            pt.dist[f].assign(spec.node_count,
                              std::vector<std::vector<ActionProb>>(
                                  spec.flows[f].rel_deadline + 1));
        return pt;
    }

    // nullptr or empty vector both mean Wait with probability 1.
    const std::vector<ActionProb>* at(int flow, NodeId node, int s) const {
        if (flow < 0 || flow >= static_cast<int>(dist.size())) return nullptr;
        const auto& per_node = dist[flow];
        if (node < 0 || node >= static_cast<int>(per_node.size())) return nullptr;
        const auto& per_s = per_node[node];
        if (s < 0 || s >= static_cast<int>(per_s.size())) return nullptr;
        return &per_s[s];
    }

    std::vector<ActionProb>& slot(int flow, NodeId node, int s) { return dist[flow][node][s]; }
};

} // namespace tnet
