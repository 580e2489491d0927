#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crt/metrics.hpp"
#include "crt/scheduler.hpp"
#include "crt/simulator.hpp"
#include "crt/types.hpp"

namespace crt {

// JSON text, deterministic key order, round-trip exact doubles.
std::string topology_to_json(const TopologySnapshot& snap);
TopologySnapshot topology_from_json(const std::string& text);

std::string flows_to_json(const std::vector<TtFlow>& flows);
std::vector<TtFlow> flows_from_json(const std::string& text);

std::string schedule_to_json(const Schedule& schedule, const std::string& algo_name);
Schedule schedule_from_json(const std::string& text, std::string* algo_name = nullptr);

// CSV with pinned column order; numbers printed with %.9g.
std::string packets_to_csv(const std::vector<PacketRecord>& packets);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);

// Run manifest: effective config hash, seeds, and sorted file names with
// content hashes. No timestamps, so two identical runs produce byte-identical
// manifests.
std::string manifest_json(const std::vector<std::pair<std::string, std::string>>& file_contents,
                          const std::string& config_text, const std::vector<uint64_t>& seeds);

uint64_t fnv1a64(const std::string& data);
std::string hash_hex(const std::string& data);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace crt
