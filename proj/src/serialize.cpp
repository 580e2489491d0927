#include "crt/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace crt {

namespace {

using json = nlohmann::ordered_json;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string topology_to_json(const TopologySnapshot& snap) {
    json j;
    j["slot"] = snap.slot;
    j["duration_s"] = snap.duration_s;
    j["sample_time_s"] = snap.sample_time_s;
    j["num_nodes"] = snap.num_nodes;
    json links = json::array();
    for (const auto& l : snap.links)
        links.push_back(json::array({l.u, l.v, l.prop_delay_s, l.bandwidth_bps}));
    j["links"] = std::move(links);
    return j.dump(2) + "\n";
}

TopologySnapshot topology_from_json(const std::string& text) {
    json j = json::parse(text);
    TopologySnapshot snap;
    snap.slot = j.at("slot").get<int>();
    snap.duration_s = j.at("duration_s").get<double>();
    snap.sample_time_s = j.at("sample_time_s").get<double>();
    snap.num_nodes = j.at("num_nodes").get<int>();
    for (const auto& l : j.at("links")) {
        TopologySnapshot::Link dl;
        dl.u = l.at(0).get<NodeId>();
        dl.v = l.at(1).get<NodeId>();
        dl.prop_delay_s = l.at(2).get<double>();
        dl.bandwidth_bps = l.at(3).get<double>();
        snap.links.push_back(dl);
    }
    snap.build_index();
    return snap;
}

std::string flows_to_json(const std::vector<TtFlow>& flows) {
    json arr = json::array();
    for (const auto& f : flows) {
        json j;
        j["id"] = f.id;
        j["src"] = f.src;
        j["dst"] = f.dst;
        j["period_s"] = f.period_s;
        j["frame_bytes"] = f.frame_bytes;
        j["deadline_s"] = f.deadline_s;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<TtFlow> flows_from_json(const std::string& text) {
    json arr = json::parse(text);
    std::vector<TtFlow> flows;
    for (const auto& j : arr) {
        TtFlow f;
        f.id = j.at("id").get<int>();
        f.src = j.at("src").get<NodeId>();
        f.dst = j.at("dst").get<NodeId>();
        f.period_s = j.at("period_s").get<double>();
        f.frame_bytes = j.at("frame_bytes").get<double>();
        f.deadline_s = j.at("deadline_s").get<double>();
        flows.push_back(f);
    }
    return flows;
}

std::string schedule_to_json(const Schedule& schedule, const std::string& algo_name) {
    json j;
    j["algorithm"] = algo_name;
    j["num_slots"] = schedule.num_slots;
    json entries = json::array();
    for (const auto& e : schedule.entries) {
        json je;
        je["flow_id"] = e.flow_id;
        je["scheduled"] = e.scheduled;
        je["d_target_s"] = e.d_target_s;
        json paths = json::array();
        for (const auto& p : e.path_per_slot) {
            if (!p.empty())
                paths.push_back(json(p.nodes));
            else
                paths.push_back(nullptr);
        }
        je["paths"] = std::move(paths);
        je["residence_s"] = json(e.residence_s);
        je["wcd_total_s"] = json(e.wcd_total_s);
        if (e.dropped_at_slot)
            je["dropped_at_slot"] = *e.dropped_at_slot;
        else
            je["dropped_at_slot"] = nullptr;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string& text, std::string* algo_name) {
    json j = json::parse(text);
    if (algo_name) *algo_name = j.at("algorithm").get<std::string>();
    Schedule s;
    s.num_slots = j.at("num_slots").get<int>();
    for (const auto& je : j.at("entries")) {
        ScheduleEntry e;
        e.flow_id = je.at("flow_id").get<int>();
        e.scheduled = je.at("scheduled").get<bool>();
        e.d_target_s = je.at("d_target_s").get<double>();
        for (const auto& jp : je.at("paths")) {
            Path p;
            if (!jp.is_null()) p.nodes = jp.get<std::vector<NodeId>>();
            e.path_per_slot.push_back(std::move(p));
        }
        e.residence_s = je.at("residence_s").get<std::vector<std::vector<double>>>();
        e.wcd_total_s = je.at("wcd_total_s").get<std::vector<double>>();
        const auto& jd = je.at("dropped_at_slot");
        if (!jd.is_null()) e.dropped_at_slot = jd.get<int>();
        s.entries.push_back(std::move(e));
    }
    return s;
}

std::string packets_to_csv(const std::vector<PacketRecord>& packets) {
    std::string out = "flow_id,seq,slot,emit_s,delivered_s,e2e_delay_s,queue_wait_total_s\n";
    for (const auto& p : packets) {
        if (!p.delivered) continue;
        out += std::to_string(p.flow_id);
        out += ',';
        out += std::to_string(p.seq);
        out += ',';
        out += std::to_string(p.slot);
        out += ',';
        out += fmt9(p.emit_s);
        out += ',';
        out += fmt9(p.delivered_s);
        out += ',';
        out += fmt9(p.e2e_delay_s);
        out += ',';
        out += fmt9(p.queue_wait_total_s);
        out += '\n';
    }
    return out;
}

std::string metrics_csv_header() {
    return "algo,seed,sweep_param,n_flows,success_rate,max_overlap,p50_jitter_s,p99_jitter_s,"
           "resched_mean,wall_time_s\n";
}

std::string metrics_csv_row(const MetricsReport& r) {
    std::string out = r.algo;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += fmt9(r.sweep_param);
    out += ',';
    out += std::to_string(r.n_flows);
    out += ',';
    out += fmt9(r.success_rate);
    out += ',';
    out += std::to_string(r.max_overlap);
    out += ',';
    out += fmt9(r.p50_jitter_s);
    out += ',';
    out += fmt9(r.p99_jitter_s);
    out += ',';
    out += fmt9(r.resched_mean);
    out += ',';
    out += fmt9(r.wall_time_s);
    out += '\n';
    return out;
}

std::string manifest_json(const std::vector<std::pair<std::string, std::string>>& file_contents,
                          const std::string& config_text, const std::vector<uint64_t>& seeds) {
    auto sorted = file_contents;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json j;
    j["format_version"] = 1;
    j["config_hash"] = hash_hex(config_text);
    j["seeds"] = json(seeds);
    json files = json::object();
    for (const auto& [name, content] : sorted) files[name] = hash_hex(content);
    j["files"] = std::move(files);
    return j.dump(2) + "\n";
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace crt
