#include "empathy/forwarding.hpp"

#include <cmath>

#include "empathy/rng.hpp"

namespace empathy::forwarding {

void CrowdForwardParams::validate() const {
    if (players < 3) throw ValidationError("crowdforwarding needs at least three players");
    if (critical_mass < 2 || critical_mass > players)
        throw ValidationError("critical mass must lie in [2, players]");
    if (!(success_cost > 0.0) || !(failure_cost > 0.0))
        throw ValidationError("sharing costs must be positive");
    if (static_cast<int>(path_success.size()) != players)
        throw ValidationError("path success probabilities must match the player count");
    for (double p : path_success)
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("path success probabilities must lie in [0,1]");
    if (empathy.players() != players)
        throw ValidationError("empathy matrix must match the player count");
}

int cooperator_count(const Profile& profile) {
    int m = 0;
    for (bool f : profile) m += f ? 1 : 0;
    return m;
}

PayoffProfile material_payoff(const CrowdForwardParams& params, const Profile& profile) {
    params.validate();
    if (static_cast<int>(profile.size()) != params.players)
        throw ValidationError("profile size must match the player count");
    const int m = cooperator_count(profile);
    const bool network_up = m >= params.critical_mass;
    const double share =
        m > 0 ? static_cast<double>(params.critical_mass) / m *
                    (network_up ? params.success_cost : params.failure_cost)
              : 0.0;
    PayoffProfile r(params.players, 0.0);
    for (int i = 0; i < params.players; ++i) {
        if (network_up)
            r[i] = params.path_success[i] - (profile[i] ? share : 0.0);
        else
            r[i] = profile[i] ? -share : 0.0;
    }
    return r;
}

PayoffProfile empathic_payoff(const CrowdForwardParams& params, const Profile& profile) {
    return empathic_transform(material_payoff(params, profile), params.empathy,
                              params.neighbors);
}

double kindness_magnitude(const CrowdForwardParams& params, int cooperators) {
    if (cooperators <= 0) return 0.0;
    double cost =
        cooperators >= params.critical_mass ? params.success_cost : params.failure_cost;
    return static_cast<double>(params.critical_mass) / (2.0 * cooperators) * cost;
}

double kindness_via_bracket(const CrowdForwardParams& params, int cooperators, bool forwards) {
    if (cooperators <= 0) return 0.0;
    const double cost =
        cooperators >= params.critical_mass ? params.success_cost : params.failure_cost;
    const double share = static_cast<double>(params.critical_mass) / cooperators * cost;
    // two-level transfer game: by forwarding (action 0), the player gifts its
    // cost share to the co-player; the co-player has a single dummy action
    NormalFormGame g{{2, 1}, [share](int player, const std::vector<int>& a) {
                         return player == 1 ? (a[0] == 0 ? share : 0.0) : 0.0;
                     }};
    BeliefSystem b;
    b.first_order.assign(2, std::vector<std::vector<double>>(2, {1.0}));
    b.second_order.assign(2, std::vector<std::vector<std::vector<double>>>(
                                 2, std::vector<std::vector<double>>(2, {1.0})));
    return kindness(g, 0, 1, forwards ? 0 : 1, b);
}

PayoffProfile reciprocity_payoff(const CrowdForwardParams& params, const Profile& profile) {
    PayoffProfile material = material_payoff(params, profile);
    const int n = params.players;
    const double mag = kindness_magnitude(params, cooperator_count(profile));
    // belief consistency at the profile: perceived kindness of j equals j's
    // own kindness, signed by its action
    std::vector<std::vector<double>> kind(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> perceived(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            kind[i][j] = profile[i] ? mag : -mag;
            perceived[i][j] = profile[j] ? mag : -mag;
        }
    return empathy::reciprocity_payoff(material, params.empathy, kind, perceived,
                                       params.neighbors);
}

PayoffProfile payoff_by_kind(const CrowdForwardParams& params, const Profile& profile,
                             PayoffKind kind) {
    switch (kind) {
        case PayoffKind::Material: return material_payoff(params, profile);
        case PayoffKind::Empathic: return empathic_payoff(params, profile);
        case PayoffKind::Reciprocity: return reciprocity_payoff(params, profile);
    }
    throw ValidationError("unknown payoff kind");
}

DeviationAudit is_equilibrium(const CrowdForwardParams& params, const Profile& profile,
                              PayoffKind kind) {
    PayoffProfile current = payoff_by_kind(params, profile, kind);
    DeviationAudit audit;
    audit.deviation_gain.resize(params.players);
    audit.equilibrium = true;
    for (int i = 0; i < params.players; ++i) {
        Profile deviated = profile;
        deviated[i] = !deviated[i];
        PayoffProfile alt = payoff_by_kind(params, deviated, kind);
        audit.deviation_gain[i] = alt[i] - current[i];
        if (audit.deviation_gain[i] > 1e-12) audit.equilibrium = false;
    }
    return audit;
}

SampledPayoffs estimate_material_payoff(const CrowdForwardParams& params, const HopModel& hops,
                                        const Profile& profile, std::int64_t paths,
                                        std::uint64_t seed) {
    params.validate();
    if (paths < 1) throw ValidationError("need at least one sample path");
    if (static_cast<int>(hops.hop_success.size()) != params.players)
        throw ValidationError("hop model must cover every player");
    for (const auto& hop : hops.hop_success)
        for (double p : hop)
            if (!(p >= 0.0 && p <= 1.0))
                throw ValidationError("hop success probabilities must lie in [0,1]");

    const int n = params.players;
    PayoffProfile sum(n, 0.0), sumsq(n, 0.0);
    CrowdForwardParams draw = params;
    for (std::int64_t path = 0; path < paths; ++path) {
        Rng rng(seed, "forwarding-hops", static_cast<std::uint64_t>(path));
        for (int i = 0; i < n; ++i) {
            double indicator = 1.0;
            for (double p : hops.hop_success[i])
                if (rng.uniform() >= p) indicator = 0.0;
            draw.path_success[i] = indicator;
        }
        PayoffProfile r = material_payoff(draw, profile);
        for (int i = 0; i < n; ++i) {
            sum[i] += r[i];
            sumsq[i] += r[i] * r[i];
        }
    }
    SampledPayoffs out;
    out.paths = paths;
    out.mean.resize(n);
    out.standard_error.resize(n);
    for (int i = 0; i < n; ++i) {
        out.mean[i] = sum[i] / static_cast<double>(paths);
        double var = sumsq[i] / static_cast<double>(paths) - out.mean[i] * out.mean[i];
        out.standard_error[i] = std::sqrt(std::max(0.0, var) / static_cast<double>(paths));
    }
    return out;
}

}  // namespace empathy::forwarding
