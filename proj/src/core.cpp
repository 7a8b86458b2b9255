#include "empathy/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace empathy {

namespace {

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " must be finite");
}

// Iterates pure action profiles of the players listed in `free_players`,
// all other slots held fixed in `profile`. Calls fn(weight) after setting
// the profile, where weight is the product of the given mixed-action
// probabilities for the free players.
void for_each_profile(const std::vector<int>& action_counts, std::vector<int>& profile,
                      const std::vector<int>& free_players,
                      const std::vector<const std::vector<double>*>& mixed,
                      const std::function<void(double)>& fn, std::size_t depth = 0,
                      double weight = 1.0) {
    if (depth == free_players.size()) {
        fn(weight);
        return;
    }
    int p = free_players[depth];
    for (int a = 0; a < action_counts[p]; ++a) {
        double w = (*mixed[depth])[a];
        if (w == 0.0) continue;
        profile[p] = a;
        for_each_profile(action_counts, profile, free_players, mixed, fn, depth + 1, weight * w);
    }
}

}  // namespace

EmpathyMatrix::EmpathyMatrix(int players, bool wide_range)
    : n_(players), wide_range_(wide_range), w_(static_cast<std::size_t>(players) * players, 0.0) {
    if (players < 1) throw ValidationError("EmpathyMatrix needs at least one player");
}

EmpathyMatrix EmpathyMatrix::uniform(int players, double w, bool wide_range) {
    EmpathyMatrix m(players, wide_range);
    for (int i = 0; i < players; ++i)
        for (int j = 0; j < players; ++j)
            if (i != j) m.set_weight(i, j, w);
    return m;
}

EmpathyMatrix EmpathyMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                       bool wide_range) {
    EmpathyMatrix m(static_cast<int>(rows.size()), wide_range);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw ValidationError("empathy matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (i == j) {
                if (rows[i][j] != 0.0)
                    throw ValidationError("empathy matrix diagonal must be zero");
                continue;
            }
            m.set_weight(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
        }
    }
    return m;
}

void EmpathyMatrix::set_weight(int i, int j, double w) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw ValidationError("empathy weight index out of range");
    if (i == j) throw ValidationError("empathy matrix diagonal is fixed at zero");
    check_finite(w, "empathy weight");
    if (!wide_range_ && (w < -1.0 || w > 1.0))
        throw ValidationError("empathy weight outside [-1,1]; construct with wide_range to allow");
    w_[static_cast<std::size_t>(i) * n_ + j] = w;
}

PayoffProfile empathic_transform(const PayoffProfile& material, const EmpathyMatrix& empathy,
                                 const NeighborSets& neighbors) {
    const int n = empathy.players();
    if (static_cast<int>(material.size()) != n)
        throw ValidationError("payoff profile size does not match player count");
    if (!neighbors.empty() && static_cast<int>(neighbors.size()) != n)
        throw ValidationError("neighbor sets size does not match player count");
    for (double r : material) check_finite(r, "material payoff");

    PayoffProfile out(material);
    for (int i = 0; i < n; ++i) {
        if (neighbors.empty()) {
            for (int j = 0; j < n; ++j)
                if (j != i) out[i] += empathy.weight(i, j) * material[j];
        } else {
            for (int j : neighbors[i]) {
                if (j < 0 || j >= n) throw ValidationError("neighbor index out of range");
                if (j != i) out[i] += empathy.weight(i, j) * material[j];
            }
        }
    }
    return out;
}

void check_probability_vector(const std::vector<double>& v, const std::string& what) {
    if (v.empty()) throw ValidationError(what + ": empty probability vector");
    double sum = 0.0;
    for (double p : v) {
        if (!std::isfinite(p) || p < 0.0)
            throw ValidationError(what + ": entries must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError(what + ": probabilities must sum to one");
}

void check_belief_system(const BeliefSystem& b, const std::vector<int>& action_counts) {
    const std::size_t n = action_counts.size();
    if (b.first_order.size() != n || b.second_order.size() != n)
        throw ValidationError("belief system player count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (b.first_order[i].size() != n || b.second_order[i].size() != n)
            throw ValidationError("belief system player count mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) check_probability_vector(b.first_order[i][j], "first-order belief");
            if (b.second_order[i][j].size() != n)
                throw ValidationError("belief system player count mismatch");
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) check_probability_vector(b.second_order[i][j][k], "second-order belief");
        }
    }
}

double kindness(const NormalFormGame& game, int i, int j, int a_i, const BeliefSystem& beliefs) {
    const int n = static_cast<int>(game.action_counts.size());
    if (i < 0 || i >= n || j < 0 || j >= n) throw ValidationError("kindness: player out of range");
    if (game.action_counts[i] <= 0 || game.action_counts[j] <= 0)
        throw ValidationError("kindness: empty action set");
    if (a_i < 0 || a_i >= game.action_counts[i])
        throw ValidationError("kindness: action out of range");

    std::vector<int> others;
    std::vector<const std::vector<double>*> mixed;
    for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        others.push_back(k);
        mixed.push_back(&beliefs.first_order[i][k]);
    }

    // expected payoff of j as a function of i's own action
    auto expected_for = [&](int x) {
        std::vector<int> profile(n, 0);
        profile[i] = x;
        double value = 0.0;
        for_each_profile(game.action_counts, profile, others, mixed,
                         [&](double w) { value += w * game.payoff(j, profile); });
        return value;
    };

    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    double at = 0.0;
    for (int x = 0; x < game.action_counts[i]; ++x) {
        double v = expected_for(x);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
        if (x == a_i) at = v;
    }
    return at - 0.5 * (hi + lo);
}

double perceived_kindness(const NormalFormGame& game, int i, int j, const BeliefSystem& beliefs) {
    const int n = static_cast<int>(game.action_counts.size());
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw ValidationError("perceived_kindness: player out of range");
    if (game.action_counts[j] <= 0)
        throw ValidationError("perceived_kindness: empty action set");

    // everyone but j follows i's second-order beliefs (what i thinks j thinks),
    // including i itself
    std::vector<int> others;
    std::vector<const std::vector<double>*> mixed;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        others.push_back(k);
        mixed.push_back(&beliefs.second_order[i][j][k]);
    }

    auto expected_for = [&](int y) {
        std::vector<int> profile(n, 0);
        profile[j] = y;
        double value = 0.0;
        for_each_profile(game.action_counts, profile, others, mixed,
                         [&](double w) { value += w * game.payoff(i, profile); });
        return value;
    };

    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    double believed = 0.0;
    const std::vector<double>& b_ij = beliefs.first_order[i][j];
    for (int y = 0; y < game.action_counts[j]; ++y) {
        double v = expected_for(y);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
        believed += b_ij[y] * v;
    }
    return believed - 0.5 * (hi + lo);
}

PayoffProfile reciprocity_payoff(const PayoffProfile& material, const EmpathyMatrix& sensitivity,
                                 const std::vector<std::vector<double>>& kind,
                                 const std::vector<std::vector<double>>& perceived,
                                 const NeighborSets& neighbors) {
    const int n = sensitivity.players();
    if (static_cast<int>(material.size()) != n || static_cast<int>(kind.size()) != n ||
        static_cast<int>(perceived.size()) != n)
        throw ValidationError("reciprocity_payoff: dimension mismatch");
    PayoffProfile out(material);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(kind[i].size()) != n || static_cast<int>(perceived[i].size()) != n)
            throw ValidationError("reciprocity_payoff: dimension mismatch");
        auto add = [&](int j) {
            if (j != i) out[i] += sensitivity.weight(i, j) * kind[i][j] * perceived[i][j];
        };
        if (neighbors.empty()) {
            for (int j = 0; j < n; ++j) add(j);
        } else {
            for (int j : neighbors[i]) add(j);
        }
    }
    return out;
}

double gap_ratio(const PayoffProfile& material, double w, int i, int j) {
    const int n = static_cast<int>(material.size());
    if (i < 0 || i >= n || j < 0 || j >= n) throw ValidationError("gap_ratio: player out of range");
    if (w <= 0.0 || w > 1.0) throw ValidationError("gap_ratio requires uniform empathy in (0,1]");
    if (material[i] == material[j])
        throw ValidationError("gap_ratio undefined: players have equal material payoff");
    PayoffProfile t = empathic_transform(material, EmpathyMatrix::uniform(n, w));
    return std::abs(t[i] - t[j]) / std::abs(material[i] - material[j]);
}

}  // namespace empathy
