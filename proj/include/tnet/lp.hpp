#pragma once

#include <string>
#include <vector>

#include "tnet/dp.hpp"
#include "tnet/model.hpp"
#include "tnet/policy.hpp"
#include "tnet/simplex.hpp"

namespace tnet {

// Which average constraints become LP rows. The bound used for a truncation
// policy must relax exactly the hard constraints that policy enforces, so
// callers select rows instead of always taking every budget in the spec.
struct RowSelection {
    bool node_power = true;
    bool link_capacity = true;
};

// One occupation variable xi^f(i, j, e, s); action.is_wait() encodes the
// "not transmitted" pseudo-action.
struct OccupationVarKey {
    int flow = -1;
    NodeId node = -1;
    int s = 0;
    PacketAction action;
};

struct LpInstance {
    DenseLp lp;
    std::vector<OccupationVarKey> vars;

    // Contiguous variable range [begin, end) per reachable state.
    struct StateRange {
        int begin = 0;
        int end = 0;
        bool reachable() const { return end > begin; }
    };
    // state_vars[flow][node][s]
    std::vector<std::vector<std::vector<StateRange>>> state_vars;

    std::vector<int> init_row_of_flow;  // equality row index
    std::vector<int> power_row_of_node; // ub row index or -1
    std::vector<int> cap_row_of_link;   // ub row index or -1

    // Size the paper's unpruned formulation would have, kept for diagnostics.
    long long unpruned_vars = 0;
    long long unpruned_rows = 0;

    std::string describe() const; // human-readable dump (--dump-lp)
};

// Occupation-measure linear program over states reachable within the
// deadline from each flow's source. Throws std::invalid_argument when the
// selection yields no constraint rows at all.
LpInstance build_lp(const ProblemSpec& spec, RowSelection select = {});

struct OccupationSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;      // weighted timely-throughput
    double dual_objective = 0.0;
    std::vector<double> xi;
    std::vector<double> node_duals;      // per node, 0 where no row
    std::vector<double> link_duals;      // per link, 0 where no row
    std::vector<double> init_duals;      // per flow (A_f V^f at the source)
    std::vector<double> power_slack;     // per node with a row: P_i - usage
    std::vector<double> capacity_slack;  // per link with a row
    double max_residual = 0.0;
    int iterations = 0;
};

OccupationSolution solve_occupation_lp(const LpInstance& inst);

// Conditional action distribution at every state with positive occupation;
// zero-occupation states default to Wait.
PolicyTable extract_policy(const OccupationSolution& sol, const LpInstance& inst,
                           const ProblemSpec& spec);

// Nodal energy prices = duals of the node power rows, clamped to >= 0.
PriceVector extract_prices(const OccupationSolution& sol);

// Copy of the spec where nodes lacking an average-power budget inherit their
// peak-power budget (the natural average relaxation of a peak constraint).
ProblemSpec relax_peak_to_avg(const ProblemSpec& spec);

} // namespace tnet
