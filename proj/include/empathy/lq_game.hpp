#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "empathy/core.hpp"

namespace empathy::lq {

// Linear-quadratic variance-reduction game on a shared scalar state
//   s_{t+1} = state_drift * s_t + mean_drift * E[s_t] + sum_j b_j a_jt + noise_gain * W_t.
// Player i pays state_weight[i][t] s_t^2 + mean_weight[i][t] (E s_t)^2
// + control_cost[i][t] a_it^2 each stage plus the terminal-state analogue,
// and cares about neighbors' costs through the empathy matrix.
struct LqGameParams {
    int players = 1;
    int horizon = 1;  // T >= 1
    double state_drift = 1.0;
    double mean_drift = 0.0;
    std::vector<double> control_gain;  // b, one per player
    double noise_gain = 0.0;
    std::vector<std::vector<double>> state_weight;   // [i][t], t = 0..T (T = terminal)
    std::vector<std::vector<double>> mean_weight;    // [i][t], t = 0..T
    std::vector<std::vector<double>> control_cost;   // [i][t], t = 0..T-1, strictly positive
    EmpathyMatrix empathy{1};
    NeighborSets neighbors;  // empty = full interaction
    double initial_mean = 0.0;
    double initial_variance = 0.0;

    void validate() const;

    // weights of the empathy-combined cost, built by the same lambda-sum as
    // the payoff transform; the combined state weight must be >= 0 and the
    // combined state+mean weight >= 0 (standing assumptions)
    std::vector<std::vector<double>> empathic_state_weight() const;
    std::vector<std::vector<double>> empathic_mean_weight() const;
};

// Feedback a_it = state_gain[i][t] (s_t - E s_t) + mean_gain[i][t] E s_t and
// the backward value coefficients: variance_coeff multiplies Var(s_t),
// mean_coeff multiplies (E s_t)^2.
struct RiccatiSchedule {
    std::vector<std::vector<double>> state_gain;      // [i][t], t = 0..T-1
    std::vector<std::vector<double>> mean_gain;       // [i][t], t = 0..T-1
    std::vector<std::vector<double>> variance_coeff;  // [i][t], t = 0..T
    std::vector<std::vector<double>> mean_coeff;      // [i][t], t = 0..T
};

// Backward sweep t = T-1..0. At each step the cross-coupled gain equations
// are linear in the unknown gains given the next-step value coefficients and
// are solved exactly as one n x n system per gain family.
RiccatiSchedule riccati_sweep(const LqGameParams& p);

// Closed-form best-response cost per player:
//   variance_coeff[i][0] Var(s_0) + mean_coeff[i][0] (E s_0)^2
//   + noise^2 sum_{t=0}^{T-1} variance_coeff[i][t+1].
std::vector<double> analytic_cost(const LqGameParams& p, const RiccatiSchedule& s);

// E[s_t] for t = 0..T under the closed loop: a product of the per-step
// factors state_drift + mean_drift + sum_i b_i mean_gain[i][t].
std::vector<double> mean_state(const LqGameParams& p, const RiccatiSchedule& s);

struct SimulationResult {
    std::vector<double> mean_cost;            // per player
    std::vector<double> cost_standard_error;  // per player
    std::vector<double> state_mean;           // per time, across paths
    std::vector<double> state_variance;       // per time, across paths
    std::int64_t paths = 0;
};

// Simulates the closed loop with Gaussian noise and Gaussian initial law.
// The mean-field term inside the feedback is the analytic E[s_t] (the law of
// the process), not the sample average. Deterministic in the seed; paths use
// independent counter-based substreams.
SimulationResult simulate(const LqGameParams& p, const RiccatiSchedule& s, std::int64_t paths,
                          std::uint64_t seed);

// one row per (player, t): gains and value coefficients
void export_schedule_csv(const std::string& path, const LqGameParams& p,
                         const RiccatiSchedule& s);

void export_mean_state_csv(const std::string& path, const LqGameParams& p,
                           const RiccatiSchedule& s);

}  // namespace empathy::lq
