#pragma once

#include <functional>
#include <vector>

#include "empathy/errors.hpp"

namespace empathy {

// One material payoff per player, in scenario-specific units.
using PayoffProfile = std::vector<double>;

// neighbors[i] = players whose payoff enters i's objective. An empty outer
// vector means full interaction (everyone is everyone's neighbor). Self
// entries are tolerated and ignored.
using NeighborSets = std::vector<std::vector<int>>;

// Pairwise empathy coefficients. weight(i,j) scales how much of j's material
// payoff enters i's objective: positive = partially altruistic, negative =
// partially spiteful, zero = selfish. Diagonal is fixed at zero. Entries are
// restricted to [-1,1] unless the matrix is built with wide_range = true.
class EmpathyMatrix {
public:
    explicit EmpathyMatrix(int players, bool wide_range = false);
    static EmpathyMatrix uniform(int players, double w, bool wide_range = false);
    static EmpathyMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   bool wide_range = false);

    int players() const { return n_; }
    double weight(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
    void set_weight(int i, int j, double w);
    bool wide_range() const { return wide_range_; }

private:
    int n_;
    bool wide_range_;
    std::vector<double> w_;  // row-major, zero diagonal
};

// First- and second-order beliefs over mixed actions.
// first_order[i][j] is i's belief about j's mixed action (a probability
// vector over j's action set; [i][i] unused). second_order[i][j][k] is i's
// belief about j's belief about k's mixed action (including k == i).
struct BeliefSystem {
    std::vector<std::vector<std::vector<double>>> first_order;
    std::vector<std::vector<std::vector<std::vector<double>>>> second_order;
};

// Finite normal-form game given by per-player action counts and a payoff
// callable over pure action profiles.
struct NormalFormGame {
    std::vector<int> action_counts;
    std::function<double(int player, const std::vector<int>& profile)> payoff;
};

// result[i] = material[i] + sum over neighbors j != i of weight(i,j) * material[j].
PayoffProfile empathic_transform(const PayoffProfile& material, const EmpathyMatrix& empathy,
                                 const NeighborSets& neighbors = {});

// i's kindness to j when playing own action a_i, with everyone else
// integrated out under i's first-order beliefs: j's expected payoff minus the
// midpoint of its best and worst values over i's alternatives. Positive
// means i is being kind to j.
double kindness(const NormalFormGame& game, int i, int j, int a_i, const BeliefSystem& beliefs);

// Perceived kindness of j towards i: i's expected payoff when j acts per
// i's first-order belief about j and everyone else (including i) per i's
// second-order beliefs, minus the same midpoint bracket over j's alternatives.
double perceived_kindness(const NormalFormGame& game, int i, int j, const BeliefSystem& beliefs);

// result[i] = material[i] + sum over neighbors j != i of
//   weight(i,j) * kind[i][j] * perceived[i][j].
// kind[i][j] is i's kindness to j, perceived[i][j] the kindness i perceives
// from j. Matching signs under positive weights raise the payoff (mutual
// kindness or mutual unkindness); mismatched signs lower it.
PayoffProfile reciprocity_payoff(const PayoffProfile& material, const EmpathyMatrix& sensitivity,
                                 const std::vector<std::vector<double>>& kind,
                                 const std::vector<std::vector<double>>& perceived,
                                 const NeighborSets& neighbors = {});

// |R_i^w - R_j^w| / |R_i - R_j| under uniform symmetric empathy w in (0,1],
// computed through the actual transform. Equals 1 - w identically.
double gap_ratio(const PayoffProfile& material, double w, int i, int j);

// Throws ValidationError unless v is a probability vector (entries >= 0,
// sum within 1e-12 of one).
void check_probability_vector(const std::vector<double>& v, const std::string& what);

void check_belief_system(const BeliefSystem& b, const std::vector<int>& action_counts);

}  // namespace empathy
