#pragma once

#include <array>
#include <optional>
#include <vector>

#include "crt/types.hpp"

namespace crt {

// Physical constants (spherical Earth, circular Keplerian orbits).
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3S2 = 398600.4418;
inline constexpr double kLightSpeedKmS = 299792.458;

// One Walker shell. raan_span_deg spreads the planes' ascending nodes over
// 360 (delta pattern) or 180 (star pattern, polar constellations).
// phasing_offset is the inter-plane phase shift as a fraction of the in-plane
// satellite spacing.
struct ShellParams {
    int planes = 6;
    int sats_per_plane = 11;
    double altitude_km = 780.0;
    double inclination_deg = 86.4;
    double phasing_offset = 0.0;
    double epoch_s = 0.0;
    double raan_span_deg = 360.0;
};

// Inter-satellite link rule (+Grid): 2 intra-plane ring neighbours plus the
// same-index satellite in each adjacent plane. Polar constellations switch
// inter-plane links off above the latitude threshold and leave the
// counter-rotating seam (last plane <-> first plane) unconnected.
struct IslConfig {
    bool inter_plane = true;
    bool wrap_seam = true;  // connect plane P-1 <-> plane 0
    std::optional<double> polar_lat_threshold_deg;
    double bandwidth_bps = 100e6;
};

// Defaults derived from the shell: polar shells (inclination >= 80 deg or a
// star RAAN span) get the 70 deg exclusion and an open seam.
IslConfig default_isl_config(const ShellParams& shell);

struct ConstellationModel {
    ShellParams shell;
    IslConfig isl;

    int num_nodes() const { return shell.planes * shell.sats_per_plane; }
    NodeId node_of(SatelliteId s) const { return s.plane * shell.sats_per_plane + s.index; }
    SatelliteId sat_of(NodeId n) const {
        return {n / shell.sats_per_plane, n % shell.sats_per_plane};
    }
};

ConstellationModel build_constellation(const ShellParams& shell, const IslConfig& isl);
ConstellationModel build_constellation(const ShellParams& shell);

// Known shells used by the experiment presets.
ShellParams iridium_shell();   // 6 x 11 @ 780 km, 86.4 deg, star pattern
ShellParams starlink_shell();  // 72 x 22 @ 550 km, 53 deg, delta pattern

// ECI position (km) of a satellite at `t_s` seconds past the shell epoch.
std::array<double, 3> satellite_position_km(const ConstellationModel& m, SatelliteId sat,
                                            double t_s);
double satellite_latitude_deg(const ConstellationModel& m, SatelliteId sat, double t_s);

// Topology sampled at the start of one slot (t_s seconds past epoch).
TopologySnapshot topology_at(const ConstellationModel& m, double t_s);

// num_slots snapshots sampled at epoch + slot * slot_duration.
std::vector<TopologySnapshot> snapshot_sequence(const ConstellationModel& m, int num_slots,
                                                double slot_duration_s);

// Random link failures plus delay perturbation, applied at physical-link
// granularity (both directions together), deterministic per seed.
struct PerturbationConfig {
    double link_fail_fraction = 0.0;
    double delay_perturb_fraction = 0.0;
    double delay_perturb_magnitude = 0.0;  // factor drawn from [1-m, 1+m]
};

TopologySnapshot apply_perturbation(const TopologySnapshot& snap, const PerturbationConfig& cfg,
                                    uint64_t seed);

}  // namespace crt
