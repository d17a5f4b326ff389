#include "tnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tnet {

using nlohmann::json;

void ProblemSpec::finalize() {
    delta = 0;
    for (const auto& f : flows) delta = std::max(delta, f.rel_deadline);
    if (avg_power.empty()) avg_power.assign(node_count, kUnbounded);
    if (peak_power.empty()) peak_power.assign(node_count, kUnbounded);
    if (link_capacity.empty()) link_capacity.assign(links.size(), kUnbounded);
    out_links.assign(node_count, {});
    for (int l = 0; l < static_cast<int>(links.size()); ++l) {
        const auto& link = links[l];
        if (link.from >= 0 && link.from < node_count) out_links[link.from].push_back(l);
    }
}

bool ProblemSpec::has_avg_power() const {
    return std::any_of(avg_power.begin(), avg_power.end(),
                       [](double p) { return std::isfinite(p); });
}

bool ProblemSpec::has_peak_power() const {
    return std::any_of(peak_power.begin(), peak_power.end(),
                       [](double p) { return std::isfinite(p); });
}

bool ProblemSpec::has_link_capacity() const {
    return std::any_of(link_capacity.begin(), link_capacity.end(),
                       [](double c) { return std::isfinite(c); });
}

int ProblemSpec::flow_index(int flow_id) const {
    for (int i = 0; i < static_cast<int>(flows.size()); ++i)
        if (flows[i].id == flow_id) return i;
    return -1;
}

int ProblemSpec::find_link(NodeId from, NodeId to) const {
    for (int l = 0; l < static_cast<int>(links.size()); ++l)
        if (links[l].from == from && links[l].to == to) return l;
    return -1;
}

std::vector<std::vector<int>> ProblemSpec::hop_distances() const {
    std::vector<std::vector<int>> dist(node_count, std::vector<int>(node_count, -1));
    for (int s = 0; s < node_count; ++s) {
        dist[s][s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int l : out_links[u]) {
                int v = links[l].to;
                if (dist[s][v] < 0) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw SpecError(path.empty() ? message : path + ": " + message);
}

double read_budget(const json& v, const std::string& path) {
    if (v.is_null()) return kUnbounded;
    if (!v.is_number()) fail(path, "expected a number or null");
    double x = v.get<double>();
    if (x < 0) fail(path, "must be nonnegative");
    return x;
}

ArrivalKind parse_arrival_kind(const std::string& kind, const std::string& path) {
    if (kind == "deterministic") return ArrivalKind::Deterministic;
    if (kind == "bernoulli") return ArrivalKind::Bernoulli;
    if (kind == "binomial") return ArrivalKind::Binomial;
    fail(path, "unknown arrival kind '" + kind + "'");
}

std::string arrival_kind_name(ArrivalKind kind) {
    switch (kind) {
    case ArrivalKind::Deterministic: return "deterministic";
    case ArrivalKind::Bernoulli: return "bernoulli";
    case ArrivalKind::Binomial: return "binomial";
    }
    return "?";
}

} // namespace

ProblemSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object()) fail("", "top level must be an object");

    ProblemSpec spec;
    if (!doc.contains("nodes") || !doc["nodes"].is_number_integer())
        fail("nodes", "required integer node count");
    spec.node_count = doc["nodes"].get<int>();

    if (!doc.contains("links") || !doc["links"].is_array()) fail("links", "required array");
    int li = 0;
    for (const auto& jl : doc["links"]) {
        std::string path = "links[" + std::to_string(li++) + "]";
        LinkSpec link;
        if (!jl.contains("from") || !jl.contains("to")) fail(path, "needs from and to");
        link.from = jl["from"].get<int>();
        link.to = jl["to"].get<int>();
        if (!jl.contains("options") || !jl["options"].is_array() || jl["options"].empty())
            fail(path + ".options", "required non-empty array");
        int oi = 0;
        for (const auto& jo : jl["options"]) {
            std::string opath = path + ".options[" + std::to_string(oi++) + "]";
            TxOption opt;
            if (!jo.contains("energy") || !jo.contains("p")) fail(opath, "needs energy and p");
            opt.energy = jo["energy"].get<double>();
            opt.success_prob = jo["p"].get<double>();
            link.options.push_back(opt);
        }
        spec.links.push_back(std::move(link));
    }

    if (!doc.contains("flows") || !doc["flows"].is_array()) fail("flows", "required array");
    int fi = 0;
    for (const auto& jf : doc["flows"]) {
        std::string path = "flows[" + std::to_string(fi++) + "]";
        FlowSpec flow;
        for (const char* k : {"id", "source", "dest", "deadline", "weight", "rate"})
            if (!jf.contains(k)) fail(path, std::string("missing field '") + k + "'");
        flow.id = jf["id"].get<int>();
        flow.source = jf["source"].get<int>();
        flow.dest = jf["dest"].get<int>();
        flow.rel_deadline = jf["deadline"].get<int>();
        flow.weight = jf["weight"].get<double>();
        flow.rate = jf["rate"].get<double>();
        if (jf.contains("arrival")) {
            const auto& ja = jf["arrival"];
            if (!ja.is_object() || !ja.contains("kind"))
                fail(path + ".arrival", "expected object with 'kind'");
            flow.arrival.kind = parse_arrival_kind(ja["kind"].get<std::string>(), path + ".arrival.kind");
            if (flow.arrival.kind == ArrivalKind::Binomial) {
                if (!ja.contains("trials")) fail(path + ".arrival", "binomial needs 'trials'");
                flow.arrival.trials = ja["trials"].get<int>();
            }
        }
        spec.flows.push_back(flow);
    }

    if (doc.contains("avg_power")) {
        const auto& ja = doc["avg_power"];
        if (!ja.is_array()) fail("avg_power", "expected array");
        int i = 0;
        for (const auto& v : ja)
            spec.avg_power.push_back(read_budget(v, "avg_power[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("peak_power")) {
        const auto& ja = doc["peak_power"];
        if (!ja.is_array()) fail("peak_power", "expected array");
        int i = 0;
        for (const auto& v : ja)
            spec.peak_power.push_back(read_budget(v, "peak_power[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("link_capacity")) {
        const auto& jc = doc["link_capacity"];
        if (!jc.is_object()) fail("link_capacity", "expected map \"from-to\" -> capacity");
        spec.link_capacity.assign(spec.links.size(), kUnbounded);
        for (const auto& [key, value] : jc.items()) {
            auto dash = key.find('-');
            if (dash == std::string::npos) fail("link_capacity." + key, "key must be \"from-to\"");
            int from = 0, to = 0;
            try {
                from = std::stoi(key.substr(0, dash));
                to = std::stoi(key.substr(dash + 1));
            } catch (const std::exception&) {
                fail("link_capacity." + key, "key must be \"from-to\" with integer node indices");
            }
            int l = -1;
            for (int i = 0; i < static_cast<int>(spec.links.size()); ++i)
                if (spec.links[i].from == from && spec.links[i].to == to) l = i;
            if (l < 0) fail("link_capacity." + key, "no such link");
            spec.link_capacity[l] = read_budget(value, "link_capacity." + key);
        }
    }

    spec.finalize();
    for (const auto& diag : validate_spec(spec))
        if (diag.severity == Diagnostic::Severity::Error) fail(diag.path, diag.message);
    return spec;
}

std::string serialize_spec(const ProblemSpec& spec) {
    json doc;
    doc["nodes"] = spec.node_count;
    doc["links"] = json::array();
    for (const auto& link : spec.links) {
        json jl;
        jl["from"] = link.from;
        jl["to"] = link.to;
        jl["options"] = json::array();
        for (const auto& opt : link.options)
            jl["options"].push_back({{"energy", opt.energy}, {"p", opt.success_prob}});
        doc["links"].push_back(std::move(jl));
    }
    doc["flows"] = json::array();
    for (const auto& flow : spec.flows) {
        json jf;
        jf["id"] = flow.id;
        jf["source"] = flow.source;
        jf["dest"] = flow.dest;
        jf["deadline"] = flow.rel_deadline;
        jf["weight"] = flow.weight;
        jf["rate"] = flow.rate;
        jf["arrival"] = {{"kind", arrival_kind_name(flow.arrival.kind)}};
        if (flow.arrival.kind == ArrivalKind::Binomial)
            jf["arrival"]["trials"] = flow.arrival.trials;
        doc["flows"].push_back(std::move(jf));
    }
    auto budgets = [](const std::vector<double>& v) {
        json arr = json::array();
        for (double x : v) {
            if (std::isfinite(x))
                arr.push_back(x);
            else
                arr.push_back(nullptr);
        }
        return arr;
    };
    if (spec.has_avg_power()) doc["avg_power"] = budgets(spec.avg_power);
    if (spec.has_peak_power()) doc["peak_power"] = budgets(spec.peak_power);
    if (spec.has_link_capacity()) {
        json caps = json::object();
        for (int l = 0; l < static_cast<int>(spec.links.size()); ++l) {
            if (std::isfinite(spec.link_capacity[l])) {
                std::string key = std::to_string(spec.links[l].from) + "-" +
                                  std::to_string(spec.links[l].to);
                caps[key] = spec.link_capacity[l];
            }
        }
        doc["link_capacity"] = std::move(caps);
    }
    return doc.dump(2);
}

std::vector<Diagnostic> validate_spec(const ProblemSpec& spec) {
    std::vector<Diagnostic> diags;
    auto error = [&](const std::string& path, const std::string& message) {
        diags.push_back({Diagnostic::Severity::Error, path, message});
    };
    auto warn = [&](const std::string& path, const std::string& message) {
        diags.push_back({Diagnostic::Severity::Warning, path, message});
    };

    if (spec.node_count < 2) error("nodes", "need at least 2 nodes");

    std::set<std::pair<int, int>> seen_links;
    for (int l = 0; l < static_cast<int>(spec.links.size()); ++l) {
        const auto& link = spec.links[l];
        std::string path = "links[" + std::to_string(l) + "]";
        if (link.from < 0 || link.from >= spec.node_count) error(path + ".from", "node out of range");
        if (link.to < 0 || link.to >= spec.node_count) error(path + ".to", "node out of range");
        if (link.from == link.to) error(path, "self-links are forbidden");
        if (!seen_links.insert({link.from, link.to}).second)
            error(path, "duplicate link");
        if (link.options.empty()) error(path + ".options", "must be non-empty");
        std::set<double> energies;
        bool increasing = true;
        double last_energy = -1, last_p = -1;
        std::vector<TxOption> sorted = link.options;
        std::sort(sorted.begin(), sorted.end(),
                  [](const TxOption& a, const TxOption& b) { return a.energy < b.energy; });
        for (int o = 0; o < static_cast<int>(link.options.size()); ++o) {
            const auto& opt = link.options[o];
            std::string opath = path + ".options[" + std::to_string(o) + "]";
            if (opt.success_prob < 0.0 || opt.success_prob > 1.0)
                error(opath + ".p", "success_prob out of [0,1]");
            if (opt.energy < 0.0) error(opath + ".energy", "must be nonnegative");
            if (!energies.insert(opt.energy).second)
                error(opath + ".energy", "energies must be distinct within a link");
        }
        for (const auto& opt : sorted) {
            if (last_energy >= 0 && opt.success_prob < last_p) increasing = false;
            last_energy = opt.energy;
            last_p = opt.success_prob;
        }
        if (!increasing)
            warn(path, "success probability is not increasing in energy");
    }

    auto dist = spec.node_count > 0 ? spec.hop_distances() : std::vector<std::vector<int>>{};
    std::set<int> flow_ids;
    for (int f = 0; f < static_cast<int>(spec.flows.size()); ++f) {
        const auto& flow = spec.flows[f];
        std::string path = "flows[" + std::to_string(f) + "]";
        if (!flow_ids.insert(flow.id).second) error(path + ".id", "duplicate flow id");
        if (flow.source < 0 || flow.source >= spec.node_count)
            error(path + ".source", "node out of range");
        if (flow.dest < 0 || flow.dest >= spec.node_count) error(path + ".dest", "node out of range");
        if (flow.source == flow.dest) error(path, "source equals dest");
        if (flow.rel_deadline < 1) error(path + ".deadline", "must be >= 1");
        if (flow.weight < 0) error(path + ".weight", "must be nonnegative");
        if (flow.rate < 0) error(path + ".rate", "must be nonnegative");
        if (flow.source >= 0 && flow.source < spec.node_count && flow.dest >= 0 &&
            flow.dest < spec.node_count && flow.source != flow.dest) {
            int hops = dist[flow.source][flow.dest];
            if (hops < 0 || hops > flow.rel_deadline)
                error(path, "dest not reachable from source within the relative deadline");
        }
        switch (flow.arrival.kind) {
        case ArrivalKind::Deterministic:
            if (flow.rate != std::floor(flow.rate))
                error(path + ".rate", "deterministic arrivals require an integer rate");
            break;
        case ArrivalKind::Bernoulli:
            if (flow.rate > 1.0) error(path + ".rate", "bernoulli arrivals require rate <= 1");
            break;
        case ArrivalKind::Binomial:
            if (flow.arrival.trials < 1)
                error(path + ".arrival.trials", "must be >= 1");
            else if (flow.rate > flow.arrival.trials)
                error(path + ".rate", "binomial arrivals require rate <= trials");
            break;
        }
    }

    if (spec.flows.empty()) error("flows", "need at least one flow");
    if (!spec.has_avg_power() && !spec.has_peak_power() && !spec.has_link_capacity())
        error("", "at least one of avg_power, peak_power, link_capacity must be present");

    if (static_cast<int>(spec.avg_power.size()) != spec.node_count)
        error("avg_power", "length must equal node count");
    if (static_cast<int>(spec.peak_power.size()) != spec.node_count)
        error("peak_power", "length must equal node count");

    int expected_delta = 0;
    for (const auto& f : spec.flows) expected_delta = std::max(expected_delta, f.rel_deadline);
    if (spec.delta != expected_delta) error("", "delta does not equal the max relative deadline");

    return diags;
}

std::uint64_t spec_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace tnet
