#pragma once

#include <cstdint>
#include <vector>

#include "empathy/core.hpp"

namespace empathy::forwarding {

// n-player crowdforwarding game: the network functions once at least
// critical_mass players forward, and the forwarders share the corresponding
// cost pool (success_cost while up, failure_cost while short).
struct CrowdForwardParams {
    int players = 3;
    int critical_mass = 2;
    double success_cost = 0.3;  // shared when cooperators reach critical mass
    double failure_cost = 0.3;  // shared when they fall short
    std::vector<double> path_success;  // end-to-end delivery probability per player
    EmpathyMatrix empathy{3};
    NeighborSets neighbors;  // empty = full interaction

    void validate() const;
};

// true = forward
using Profile = std::vector<bool>;

int cooperator_count(const Profile& profile);

// Four-branch payoff: with m cooperators and the network up (m >= critical
// mass) a forwarder earns its path success minus the cost share
// (critical_mass / m) * success_cost while bystanders free-ride; when the
// network is short, forwarders pay their share of the failure cost and
// bystanders get nothing.
PayoffProfile material_payoff(const CrowdForwardParams& params, const Profile& profile);

// Empathy-weighted sums over cooperating and bystanding neighbors; equals the
// empathic transform of the material profile.
PayoffProfile empathic_payoff(const CrowdForwardParams& params, const Profile& profile);

// Kindness a forwarding decision expresses towards any co-player at a given
// cooperator count: (critical_mass / (2 m)) * cost, positive when forwarding,
// negative when abstaining. Zero when nobody forwards.
double kindness_magnitude(const CrowdForwardParams& params, int cooperators);

// The same value produced by the generic midpoint-bracket kindness on the
// two-level transfer game (the forwarder gifts its cost share to the pool).
double kindness_via_bracket(const CrowdForwardParams& params, int cooperators, bool forwards);

// material + sensitivity-weighted products of own and perceived kindness,
// with beliefs consistent with the profile.
PayoffProfile reciprocity_payoff(const CrowdForwardParams& params, const Profile& profile);

enum class PayoffKind { Material, Empathic, Reciprocity };

struct DeviationAudit {
    bool equilibrium = false;
    std::vector<double> deviation_gain;  // unilateral flip payoff minus current, per player
};

// Weak-equilibrium audit: every player's unilateral deviation gain must be
// <= 1e-12.
DeviationAudit is_equilibrium(const CrowdForwardParams& params, const Profile& profile,
                              PayoffKind kind);

PayoffProfile payoff_by_kind(const CrowdForwardParams& params, const Profile& profile,
                             PayoffKind kind);

// Per-player multihop channel: path_success is the product of these per-hop
// success probabilities.
struct HopModel {
    std::vector<std::vector<double>> hop_success;
};

struct SampledPayoffs {
    PayoffProfile mean;
    PayoffProfile standard_error;
    std::int64_t paths = 0;
};

// Monte-Carlo estimate of the material payoff with hop-level channel draws;
// deterministic in the seed, with per-path substreams.
SampledPayoffs estimate_material_payoff(const CrowdForwardParams& params, const HopModel& hops,
                                        const Profile& profile, std::int64_t paths,
                                        std::uint64_t seed);

}  // namespace empathy::forwarding
