#pragma once

#include <vector>

#include "tnet/model.hpp"

namespace tnet {

// One nonnegative price per node, paid per unit of transmit energy.
struct PriceVector {
    std::vector<double> lambda;

    static PriceVector zeros(int node_count) { return {std::vector<double>(node_count, 0.0)}; }
};

// A per-packet action: Wait, or Transmit on out-link `link` at power level
// `option`. Link/option are indices into ProblemSpec.
struct PacketAction {
    int link = -1;
    int option = 0;

    bool is_wait() const { return link < 0; }
    static PacketAction wait() { return {}; }

    friend bool operator==(const PacketAction& a, const PacketAction& b) {
        return a.link == b.link && (a.link < 0 || a.option == b.option);
    }
};

// Absolute tolerance for membership in the set of maximizing actions. The
// indifference set is what the LP randomizes over, so it must be preserved.
constexpr double kIndifferenceTol = 1e-12;

// Value function of the single-packet transportation problem for one flow at
// fixed prices. value[i][s] for s in [0, deadline]; optimal[i][s] holds every
// maximizer within kIndifferenceTol, Wait listed first when optimal.
struct ValueTable {
    int flow_index = -1;
    int deadline = 0;
    std::vector<std::vector<double>> value;
    std::vector<std::vector<std::vector<PacketAction>>> optimal;

    bool wait_optimal(NodeId node, int s) const {
        for (const auto& a : optimal[node][s])
            if (a.is_wait()) return true;
        return false;
    }
};

// Backward induction on V(i,s) = max{ V(i,s-1), max_{(i,j),e} [-lambda_i E_e
// + p_ij(e) V(j,s-1) + (1-p_ij(e)) V(i,s-1)] } with V(dest,s) = weight and
// V(i,0) = 0 elsewhere. Transmissions happen only at s >= 1.
ValueTable solve_packet_dp(const ProblemSpec& spec, int flow_index, const PriceVector& prices);

// Per-node time-to-go thresholds: transmit is optimal iff ttg > threshold[i],
// under the Wait-preferring tie-break. Requires a single energy level per
// link. Throws std::logic_error if the strict-transmit set is not an up-set
// in s (which would contradict the threshold structure of the optimum).
struct ThresholdTable {
    int flow_index = -1;
    std::vector<int> threshold; // per node; dest entry is the full deadline
};

ThresholdTable extract_thresholds(const ValueTable& vt, const ProblemSpec& spec);

} // namespace tnet
