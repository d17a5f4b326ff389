#include "tnet/dp.hpp"

#include <cassert>
#include <stdexcept>

namespace tnet {

ValueTable solve_packet_dp(const ProblemSpec& spec, int flow_index, const PriceVector& prices) {
    assert(flow_index >= 0 && flow_index < static_cast<int>(spec.flows.size()));
    assert(static_cast<int>(prices.lambda.size()) == spec.node_count);
    const FlowSpec& flow = spec.flows[flow_index];
    const int tau = flow.rel_deadline;

    ValueTable vt;
    vt.flow_index = flow_index;
    vt.deadline = tau;
    vt.value.assign(spec.node_count, std::vector<double>(tau + 1, 0.0));
    vt.optimal.assign(spec.node_count,
                      std::vector<std::vector<PacketAction>>(tau + 1));

    for (int s = 0; s <= tau; ++s) vt.value[flow.dest][s] = flow.weight;

    for (int s = 1; s <= tau; ++s) {
        for (NodeId i = 0; i < spec.node_count; ++i) {
            if (i == flow.dest) continue;
            const double wait_value = vt.value[i][s - 1];
            double best = wait_value;
            for (int l : spec.out_links[i]) {
                const LinkSpec& link = spec.links[l];
                for (const auto& opt : link.options) {
                    double v = -prices.lambda[i] * opt.energy +
                               opt.success_prob * vt.value[link.to][s - 1] +
                               (1.0 - opt.success_prob) * vt.value[i][s - 1];
                    if (v > best) best = v;
                }
            }
            vt.value[i][s] = best;

            auto& actions = vt.optimal[i][s];
            if (wait_value >= best - kIndifferenceTol) actions.push_back(PacketAction::wait());
            for (int l : spec.out_links[i]) {
                const LinkSpec& link = spec.links[l];
                for (int o = 0; o < static_cast<int>(link.options.size()); ++o) {
                    const auto& opt = link.options[o];
                    double v = -prices.lambda[i] * opt.energy +
                               opt.success_prob * vt.value[link.to][s - 1] +
                               (1.0 - opt.success_prob) * vt.value[i][s - 1];
                    if (v >= best - kIndifferenceTol) actions.push_back({l, o});
                }
            }
        }
    }
    return vt;
}

ThresholdTable extract_thresholds(const ValueTable& vt, const ProblemSpec& spec) {
    for (const auto& link : spec.links)
        if (link.options.size() != 1)
            throw std::invalid_argument("thresholds are defined only for single-energy links");

    const FlowSpec& flow = spec.flows[vt.flow_index];
    ThresholdTable table;
    table.flow_index = vt.flow_index;
    table.threshold.assign(spec.node_count, 0);

    for (NodeId i = 0; i < spec.node_count; ++i) {
        if (i == flow.dest) {
            table.threshold[i] = vt.deadline;
            continue;
        }
        // Largest s at which Wait is optimal; strict transmit must then hold
        // exactly on {s : s > threshold}.
        int threshold = 0;
        for (int s = 1; s <= vt.deadline; ++s)
            if (vt.wait_optimal(i, s)) threshold = s;
        for (int s = 1; s <= vt.deadline; ++s) {
            bool strict_transmit = !vt.wait_optimal(i, s);
            if (strict_transmit != (s > threshold))
                throw std::logic_error("not a threshold policy");
        }
        table.threshold[i] = threshold;
    }
    return table;
}

} // namespace tnet
