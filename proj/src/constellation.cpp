#include "crt/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crt/rng.hpp"

namespace crt {

namespace {
constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }
}  // namespace

void TopologySnapshot::build_index() {
    std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    adj_offset.assign(num_nodes + 1, 0);
    for (const Link& l : links) adj_offset[l.u + 1]++;
    for (int i = 0; i < num_nodes; ++i) adj_offset[i + 1] += adj_offset[i];
}

int TopologySnapshot::link_index(NodeId u, NodeId v) const {
    if (u < 0 || u >= num_nodes) return -1;
    int lo = adj_offset[u], hi = adj_offset[u + 1];
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (links[mid].v < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < adj_offset[u + 1] && links[lo].v == v) return lo;
    return -1;
}

IslConfig default_isl_config(const ShellParams& shell) {
    IslConfig cfg;
    bool polar = shell.inclination_deg >= 80.0 || shell.raan_span_deg < 270.0;
    if (polar) {
        cfg.polar_lat_threshold_deg = 70.0;
        cfg.wrap_seam = false;
    }
    return cfg;
}

ConstellationModel build_constellation(const ShellParams& shell, const IslConfig& isl) {
    if (shell.planes < 1 || shell.sats_per_plane < 1)
        throw std::invalid_argument("constellation needs at least one plane and one satellite");
    if (shell.altitude_km <= 0) throw std::invalid_argument("nonpositive altitude");
    if (isl.bandwidth_bps <= 0) throw std::invalid_argument("nonpositive ISL bandwidth");
    return ConstellationModel{shell, isl};
}

ConstellationModel build_constellation(const ShellParams& shell) {
    return build_constellation(shell, default_isl_config(shell));
}

ShellParams iridium_shell() {
    ShellParams s;
    s.planes = 6;
    s.sats_per_plane = 11;
    s.altitude_km = 780.0;
    s.inclination_deg = 86.4;
    s.phasing_offset = 0.5;  // odd/even plane stagger
    s.raan_span_deg = 180.0;
    return s;
}

ShellParams starlink_shell() {
    ShellParams s;
    s.planes = 72;
    s.sats_per_plane = 22;
    s.altitude_km = 550.0;
    s.inclination_deg = 53.0;
    s.phasing_offset = 0.5;
    s.raan_span_deg = 360.0;
    return s;
}

std::array<double, 3> satellite_position_km(const ConstellationModel& m, SatelliteId sat,
                                            double t_s) {
    const ShellParams& sh = m.shell;
    double r = kEarthRadiusKm + sh.altitude_km;
    double n = std::sqrt(kEarthMuKm3S2 / (r * r * r));  // mean motion, rad/s
    double raan = deg2rad(sh.raan_span_deg) * sat.plane / sh.planes;
    double in_plane_spacing = 2.0 * kPi / sh.sats_per_plane;
    double u0 = in_plane_spacing * sat.index + in_plane_spacing * sh.phasing_offset * sat.plane;
    double u = u0 + n * t_s;  // argument of latitude
    double inc = deg2rad(sh.inclination_deg);
    double cu = std::cos(u), su = std::sin(u);
    double co = std::cos(raan), so = std::sin(raan);
    double ci = std::cos(inc), si = std::sin(inc);
    return {r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * su * si};
}

double satellite_latitude_deg(const ConstellationModel& m, SatelliteId sat, double t_s) {
    auto p = satellite_position_km(m, sat, t_s);
    double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::asin(p[2] / r) * 180.0 / kPi;
}

namespace {

double distance_km(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void add_bidirectional(TopologySnapshot& snap, NodeId a, NodeId b, double dist_km,
                       double bandwidth_bps) {
    double delay = dist_km / kLightSpeedKmS;
    snap.links.push_back({a, b, delay, bandwidth_bps});
    snap.links.push_back({b, a, delay, bandwidth_bps});
}

}  // namespace

TopologySnapshot topology_at(const ConstellationModel& m, double t_s) {
    const ShellParams& sh = m.shell;
    const int P = sh.planes, S = sh.sats_per_plane;
    TopologySnapshot snap;
    snap.num_nodes = m.num_nodes();
    snap.sample_time_s = t_s;

    std::vector<std::array<double, 3>> pos(snap.num_nodes);
    std::vector<double> lat(snap.num_nodes);
    for (int p = 0; p < P; ++p)
        for (int j = 0; j < S; ++j) {
            NodeId n = m.node_of({p, j});
            pos[n] = satellite_position_km(m, {p, j}, t_s);
            double r = std::sqrt(pos[n][0] * pos[n][0] + pos[n][1] * pos[n][1] +
                                 pos[n][2] * pos[n][2]);
            lat[n] = std::asin(pos[n][2] / r) * 180.0 / kPi;
        }

    // intra-plane ring
    if (S >= 2) {
        for (int p = 0; p < P; ++p)
            for (int j = 0; j < S; ++j) {
                int jn = (j + 1) % S;
                if (S == 2 && j == 1) break;  // avoid duplicating the single pair
                NodeId a = m.node_of({p, j}), b = m.node_of({p, jn});
                add_bidirectional(snap, a, b, distance_km(pos[a], pos[b]), m.isl.bandwidth_bps);
            }
    }

    // inter-plane, same index in the next plane
    if (m.isl.inter_plane && P >= 2) {
        int last_pair = m.isl.wrap_seam && P > 2 ? P : P - 1;
        for (int p = 0; p < last_pair; ++p) {
            int pn = (p + 1) % P;
            for (int j = 0; j < S; ++j) {
                NodeId a = m.node_of({p, j}), b = m.node_of({pn, j});
                if (m.isl.polar_lat_threshold_deg &&
                    (std::abs(lat[a]) > *m.isl.polar_lat_threshold_deg ||
                     std::abs(lat[b]) > *m.isl.polar_lat_threshold_deg))
                    continue;
                add_bidirectional(snap, a, b, distance_km(pos[a], pos[b]), m.isl.bandwidth_bps);
            }
        }
    }

    snap.build_index();
    for (const auto& l : snap.links)
        if (!(l.prop_delay_s > 0.0 && l.prop_delay_s < 1.0))
            throw std::logic_error("propagation delay out of range");
    return snap;
}

std::vector<TopologySnapshot> snapshot_sequence(const ConstellationModel& m, int num_slots,
                                                double slot_duration_s) {
    if (num_slots < 1) throw std::invalid_argument("need at least one slot");
    if (slot_duration_s <= 0) throw std::invalid_argument("nonpositive slot duration");
    std::vector<TopologySnapshot> out;
    out.reserve(num_slots);
    for (int t = 0; t < num_slots; ++t) {
        TopologySnapshot s = topology_at(m, m.shell.epoch_s + t * slot_duration_s);
        s.slot = t;
        s.duration_s = slot_duration_s;
        out.push_back(std::move(s));
    }
    return out;
}

TopologySnapshot apply_perturbation(const TopologySnapshot& snap, const PerturbationConfig& cfg,
                                    uint64_t seed) {
    if (cfg.link_fail_fraction < 0 || cfg.link_fail_fraction > 1 ||
        cfg.delay_perturb_fraction < 0 || cfg.delay_perturb_fraction > 1 ||
        cfg.delay_perturb_magnitude < 0 || cfg.delay_perturb_magnitude >= 1)
        throw std::invalid_argument("perturbation fractions out of range");

    // physical links = canonical (u<v) pairs, in deterministic sorted order
    std::vector<LinkKey> phys;
    for (const auto& l : snap.links)
        if (l.u < l.v) phys.push_back(link_key(l.u, l.v));
    std::sort(phys.begin(), phys.end());

    Rng rng(seed);
    size_t n_fail = static_cast<size_t>(std::llround(cfg.link_fail_fraction * phys.size()));
    std::vector<LinkKey> pool = phys;
    rng.shuffle(pool);
    std::vector<LinkKey> failed(pool.begin(), pool.begin() + n_fail);
    std::sort(failed.begin(), failed.end());

    std::vector<LinkKey> remaining(pool.begin() + n_fail, pool.end());
    std::sort(remaining.begin(), remaining.end());
    size_t n_perturb =
        static_cast<size_t>(std::llround(cfg.delay_perturb_fraction * remaining.size()));
    rng.shuffle(remaining);
    // factor per perturbed physical link, applied to both directions
    std::vector<std::pair<LinkKey, double>> scaled;
    scaled.reserve(n_perturb);
    for (size_t i = 0; i < n_perturb; ++i)
        scaled.emplace_back(remaining[i], rng.uniform(1.0 - cfg.delay_perturb_magnitude,
                                                      1.0 + cfg.delay_perturb_magnitude));
    std::sort(scaled.begin(), scaled.end());

    auto canonical = [](const TopologySnapshot::Link& l) {
        return l.u < l.v ? link_key(l.u, l.v) : link_key(l.v, l.u);
    };

    TopologySnapshot out;
    out.slot = snap.slot;
    out.duration_s = snap.duration_s;
    out.sample_time_s = snap.sample_time_s;
    out.num_nodes = snap.num_nodes;
    for (const auto& l : snap.links) {
        LinkKey ck = canonical(l);
        if (std::binary_search(failed.begin(), failed.end(), ck)) continue;
        TopologySnapshot::Link nl = l;
        auto it = std::lower_bound(scaled.begin(), scaled.end(), std::make_pair(ck, 0.0),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it != scaled.end() && it->first == ck) nl.prop_delay_s *= it->second;
        out.links.push_back(nl);
    }
    out.build_index();
    return out;
}

}  // namespace crt
