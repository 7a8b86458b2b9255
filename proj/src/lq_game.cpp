#include "empathy/lq_game.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "empathy/csv.hpp"
#include "empathy/rng.hpp"

namespace empathy::lq {

namespace {

// per-time empathic combination w^combined_i[t] = w_i[t] + sum_j lambda_ij w_j[t]
std::vector<std::vector<double>> combine(const std::vector<std::vector<double>>& w,
                                         const EmpathyMatrix& empathy,
                                         const NeighborSets& neighbors) {
    const int n = empathy.players();
    const std::size_t len = w.front().size();
    std::vector<std::vector<double>> out(n, std::vector<double>(len, 0.0));
    PayoffProfile column(n);
    for (std::size_t t = 0; t < len; ++t) {
        for (int i = 0; i < n; ++i) column[i] = w[i][t];
        PayoffProfile mixed = empathic_transform(column, empathy, neighbors);
        for (int i = 0; i < n; ++i) out[i][t] = mixed[i];
    }
    return out;
}

}  // namespace

void LqGameParams::validate() const {
    if (players < 1) throw ValidationError("lq game needs at least one player");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (!std::isfinite(state_drift) || !std::isfinite(mean_drift) || !std::isfinite(noise_gain))
        throw ValidationError("drift and noise coefficients must be finite");
    if (static_cast<int>(control_gain.size()) != players)
        throw ValidationError("control gains must match the player count");
    auto check_table = [&](const std::vector<std::vector<double>>& w, std::size_t len,
                           const char* what) {
        if (static_cast<int>(w.size()) != players)
            throw ValidationError(std::string(what) + " must have one row per player");
        for (const auto& row : w) {
            if (row.size() != len)
                throw ValidationError(std::string(what) + " rows must cover the horizon");
            for (double v : row)
                if (!std::isfinite(v))
                    throw ValidationError(std::string(what) + " entries must be finite");
        }
    };
    check_table(state_weight, static_cast<std::size_t>(horizon) + 1, "state weights");
    check_table(mean_weight, static_cast<std::size_t>(horizon) + 1, "mean weights");
    check_table(control_cost, static_cast<std::size_t>(horizon), "control costs");
    for (const auto& row : control_cost)
        for (double c : row)
            if (!(c > 0.0)) throw ValidationError("control costs must be strictly positive");
    if (empathy.players() != players)
        throw ValidationError("empathy matrix must match the player count");
    if (!std::isfinite(initial_mean) || !(initial_variance >= 0.0))
        throw ValidationError("initial law needs finite mean and variance >= 0");

    // standing sign assumptions on the combined weights
    auto qc = empathic_state_weight();
    auto qb = empathic_mean_weight();
    for (int i = 0; i < players; ++i)
        for (int t = 0; t <= horizon; ++t) {
            if (qc[i][t] < 0.0)
                throw ValidationError("combined state weight must be >= 0 at every (player, t)");
            if (qc[i][t] + qb[i][t] < 0.0)
                throw ValidationError(
                    "combined state+mean weight must be >= 0 at every (player, t)");
        }
}

std::vector<std::vector<double>> LqGameParams::empathic_state_weight() const {
    return combine(state_weight, empathy, neighbors);
}

std::vector<std::vector<double>> LqGameParams::empathic_mean_weight() const {
    return combine(mean_weight, empathy, neighbors);
}

RiccatiSchedule riccati_sweep(const LqGameParams& p) {
    p.validate();
    const int n = p.players;
    const int T = p.horizon;
    const auto q = p.empathic_state_weight();
    const auto qb = p.empathic_mean_weight();
    const auto& b = p.control_gain;

    RiccatiSchedule s;
    s.state_gain.assign(n, std::vector<double>(T, 0.0));
    s.mean_gain.assign(n, std::vector<double>(T, 0.0));
    s.variance_coeff.assign(n, std::vector<double>(T + 1, 0.0));
    s.mean_coeff.assign(n, std::vector<double>(T + 1, 0.0));

    for (int i = 0; i < n; ++i) {
        s.variance_coeff[i][T] = q[i][T];
        s.mean_coeff[i][T] = q[i][T] + qb[i][T];
    }

    // solves (diag(c) + (b .* v) b^T) g = -(factor) (b .* v) for the coupled
    // gains, where v holds the next-step value coefficients
    auto solve_gains = [&](const std::vector<double>& value_next, double factor, int t,
                           const char* which) {
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) {
            double denom = p.control_cost[i][t] + b[i] * b[i] * value_next[i];
            if (!(denom > 0.0))
                throw SingularSystemError("non-positive gain denominator at t=" +
                                              std::to_string(t),
                                          t);
            for (int j = 0; j < n; ++j) M(i, j) = b[i] * value_next[i] * b[j];
            M(i, i) += p.control_cost[i][t];
            rhs(i) = -factor * b[i] * value_next[i];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible())
            throw SingularSystemError(std::string("coupled ") + which +
                                          " gain system singular at t=" + std::to_string(t),
                                      t);
        Eigen::VectorXd g = lu.solve(rhs);
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i) out[i] = g(i);
        return out;
    };

    std::vector<double> beta_next(n), gamma_next(n);
    for (int t = T - 1; t >= 0; --t) {
        for (int i = 0; i < n; ++i) {
            beta_next[i] = s.variance_coeff[i][t + 1];
            gamma_next[i] = s.mean_coeff[i][t + 1];
        }
        std::vector<double> eta = solve_gains(beta_next, p.state_drift, t, "state");
        std::vector<double> eta_bar =
            solve_gains(gamma_next, p.state_drift + p.mean_drift, t, "mean");

        for (int i = 0; i < n; ++i) {
            double cross = 0.0, cross_bar = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cross += b[j] * eta[j];
                cross_bar += b[j] * eta_bar[j];
            }
            double k = p.state_drift + cross;
            double k_bar = p.state_drift + p.mean_drift + cross_bar;
            double denom = p.control_cost[i][t] + b[i] * b[i] * beta_next[i];
            double denom_bar = p.control_cost[i][t] + b[i] * b[i] * gamma_next[i];
            s.state_gain[i][t] = eta[i];
            s.mean_gain[i][t] = eta_bar[i];
            s.variance_coeff[i][t] =
                q[i][t] + beta_next[i] * k * k -
                (b[i] * beta_next[i] * k) * (b[i] * beta_next[i] * k) / denom;
            s.mean_coeff[i][t] =
                q[i][t] + qb[i][t] + gamma_next[i] * k_bar * k_bar -
                (b[i] * gamma_next[i] * k_bar) * (b[i] * gamma_next[i] * k_bar) / denom_bar;
        }
    }
    return s;
}

std::vector<double> analytic_cost(const LqGameParams& p, const RiccatiSchedule& s) {
    std::vector<double> cost(p.players, 0.0);
    for (int i = 0; i < p.players; ++i) {
        double noise_term = 0.0;
        for (int t = 0; t < p.horizon; ++t) noise_term += s.variance_coeff[i][t + 1];
        cost[i] = s.variance_coeff[i][0] * p.initial_variance +
                  s.mean_coeff[i][0] * p.initial_mean * p.initial_mean +
                  p.noise_gain * p.noise_gain * noise_term;
    }
    return cost;
}

std::vector<double> mean_state(const LqGameParams& p, const RiccatiSchedule& s) {
    std::vector<double> m(static_cast<std::size_t>(p.horizon) + 1, 0.0);
    m[0] = p.initial_mean;
    for (int t = 0; t < p.horizon; ++t) {
        double factor = p.state_drift + p.mean_drift;
        for (int i = 0; i < p.players; ++i) factor += p.control_gain[i] * s.mean_gain[i][t];
        m[t + 1] = factor * m[t];
    }
    return m;
}

SimulationResult simulate(const LqGameParams& p, const RiccatiSchedule& s, std::int64_t paths,
                          std::uint64_t seed) {
    p.validate();
    if (paths < 1) throw ValidationError("need at least one simulation path");
    const int n = p.players;
    const int T = p.horizon;
    const auto q = p.empathic_state_weight();
    const auto qb = p.empathic_mean_weight();
    const std::vector<double> law_mean = mean_state(p, s);
    const double init_sd = std::sqrt(p.initial_variance);

    std::vector<double> cost_sum(n, 0.0), cost_sumsq(n, 0.0);
    std::vector<double> state_sum(T + 1, 0.0), state_sumsq(T + 1, 0.0);
    std::vector<double> cost(n);
    for (std::int64_t path = 0; path < paths; ++path) {
        Rng rng(seed, "lq-paths", static_cast<std::uint64_t>(path));
        double state = p.initial_mean + init_sd * rng.gaussian();
        std::fill(cost.begin(), cost.end(), 0.0);
        for (int t = 0; t <= T; ++t) {
            state_sum[t] += state;
            state_sumsq[t] += state * state;
            const double mean_t = law_mean[t];
            if (t == T) {
                for (int i = 0; i < n; ++i)
                    cost[i] += q[i][T] * state * state + qb[i][T] * mean_t * mean_t;
                break;
            }
            double drive = 0.0;
            for (int i = 0; i < n; ++i) {
                double action =
                    s.state_gain[i][t] * (state - mean_t) + s.mean_gain[i][t] * mean_t;
                cost[i] += q[i][t] * state * state + qb[i][t] * mean_t * mean_t +
                           p.control_cost[i][t] * action * action;
                drive += p.control_gain[i] * action;
            }
            state = p.state_drift * state + p.mean_drift * mean_t + drive +
                    p.noise_gain * rng.gaussian();
        }
        for (int i = 0; i < n; ++i) {
            cost_sum[i] += cost[i];
            cost_sumsq[i] += cost[i] * cost[i];
        }
    }

    SimulationResult out;
    out.paths = paths;
    out.mean_cost.resize(n);
    out.cost_standard_error.resize(n);
    const double np = static_cast<double>(paths);
    for (int i = 0; i < n; ++i) {
        out.mean_cost[i] = cost_sum[i] / np;
        double var = cost_sumsq[i] / np - out.mean_cost[i] * out.mean_cost[i];
        out.cost_standard_error[i] = std::sqrt(std::max(0.0, var) / np);
    }
    out.state_mean.resize(T + 1);
    out.state_variance.resize(T + 1);
    for (int t = 0; t <= T; ++t) {
        out.state_mean[t] = state_sum[t] / np;
        out.state_variance[t] =
            std::max(0.0, state_sumsq[t] / np - out.state_mean[t] * out.state_mean[t]);
    }
    return out;
}

void export_schedule_csv(const std::string& path, const LqGameParams& p,
                         const RiccatiSchedule& s) {
    CsvWriter csv(path);
    csv.row({"player", "t", "state_gain", "mean_gain", "variance_coeff", "mean_coeff"});
    for (int i = 0; i < p.players; ++i)
        for (int t = 0; t <= p.horizon; ++t) {
            bool has_gain = t < p.horizon;
            csv.row({std::to_string(i), std::to_string(t),
                     has_gain ? fmt_num(s.state_gain[i][t]) : "",
                     has_gain ? fmt_num(s.mean_gain[i][t]) : "",
                     fmt_num(s.variance_coeff[i][t]), fmt_num(s.mean_coeff[i][t])});
        }
}

void export_mean_state_csv(const std::string& path, const LqGameParams& p,
                           const RiccatiSchedule& s) {
    CsvWriter csv(path);
    csv.row({"t", "mean_state"});
    std::vector<double> m = mean_state(p, s);
    for (std::size_t t = 0; t < m.size(); ++t)
        csv.row({std::to_string(t), fmt_num(m[t])});
}

}  // namespace empathy::lq
