#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnet {

using NodeId = int;

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// One transmit power level of a link: spend `energy` per slot, succeed with
// probability `success_prob`.
struct TxOption {
    double energy = 1.0;
    double success_prob = 1.0;
};

struct LinkSpec {
    NodeId from = -1;
    NodeId to = -1;
    std::vector<TxOption> options;
};

enum class ArrivalKind { Deterministic, Bernoulli, Binomial };

// Number of packet arrivals per slot, i.i.d. across slots, mean equal to the
// flow rate. Binomial draws `trials` coins of probability rate/trials.
struct ArrivalModel {
    ArrivalKind kind = ArrivalKind::Deterministic;
    int trials = 1; // binomial only
};

struct FlowSpec {
    int id = 0;
    NodeId source = -1;
    NodeId dest = -1;
    int rel_deadline = 1; // slots between arrival and required delivery
    double weight = 1.0;
    double rate = 1.0; // packets per slot
    ArrivalModel arrival;
};

// Immutable problem instance. Budgets use kUnbounded where no constraint was
// given. `finalize()` fills the derived fields; parse_spec calls it.
struct ProblemSpec {
    int node_count = 0;
    std::vector<LinkSpec> links;
    std::vector<FlowSpec> flows;
    std::vector<double> avg_power;     // per node
    std::vector<double> peak_power;    // per node
    std::vector<double> link_capacity; // per link, mass per slot

    // Derived.
    int delta = 0;                           // max relative deadline
    std::vector<std::vector<int>> out_links; // node -> link indices

    void finalize();

    bool has_avg_power() const;
    bool has_peak_power() const;
    bool has_link_capacity() const;
    int flow_index(int flow_id) const; // -1 if unknown
    int find_link(NodeId from, NodeId to) const;

    // Hop distance table dist[a][b] (node_count^2, -1 = unreachable).
    std::vector<std::vector<int>> hop_distances() const;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string path; // offending field, e.g. "links[2].options[0].p"
    std::string message;
};

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse and fully validate a JSON instance document. Throws SpecError with
// the field path on the first syntax or semantic error. Warnings do not
// throw; retrieve them with validate_spec.
ProblemSpec parse_spec(const std::string& text);

std::string serialize_spec(const ProblemSpec& spec);

// Empty iff every invariant holds. Warnings (e.g. success probability not
// increasing in energy) are distinct from errors.
std::vector<Diagnostic> validate_spec(const ProblemSpec& spec);

// FNV-1a digest of the raw document, logged for provenance.
std::uint64_t spec_digest(const std::string& text);

} // namespace tnet
