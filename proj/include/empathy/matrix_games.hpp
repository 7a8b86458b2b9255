#pragma once

#include <string>
#include <vector>

#include "empathy/core.hpp"

namespace empathy::games {

struct BimatrixGame {
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<double>> row_payoff;  // [row][col], row player's payoff
    std::vector<std::vector<double>> col_payoff;

    int rows() const { return static_cast<int>(row_labels.size()); }
    int cols() const { return static_cast<int>(col_labels.size()); }
    void validate() const;
};

struct PureProfile {
    int row = 0, col = 0;
    bool operator==(const PureProfile&) const = default;
};

struct MixedEquilibrium {
    std::vector<double> row_strategy, col_strategy;
};

// A continuum of equilibria: one player pinned to a pure action while the
// other may mix anywhere in [lo, hi] (probability of its first action).
struct DegenerateFamily {
    int fixed_player = 0;  // 0 = row player fixed, 1 = column player fixed
    int fixed_action = 0;
    double free_lo = 0.0, free_hi = 1.0;
};

struct EquilibriumSet {
    std::vector<PureProfile> pure;
    std::vector<MixedEquilibrium> mixed;
    std::vector<DegenerateFamily> families;
    bool degenerate = false;  // payoff ties produced non-isolated equilibria
};

// Weak (tie-inclusive) pure Nash by default; strict excludes ties.
std::vector<PureProfile> pure_nash(const BimatrixGame& g, bool strict = false);

// Full equilibrium set of a 2x2 game: pure equilibria, the interior mixed
// equilibrium from the indifference conditions when it lies in (0,1)^2, and
// degenerate continua reported as parameterized families.
EquilibriumSet mixed_nash_2x2(const BimatrixGame& g);

// True when no player can gain more than eps by a unilateral (pure) deviation
// from the mixed profile (p = P(row 0), q = P(col 0)).
bool is_epsilon_equilibrium_2x2(const BimatrixGame& g, double p, double q, double eps);

// One random payoff cell: scale * prod(indicator success probs) + offset.
struct RandomEntry {
    double scale = 0.0;
    std::vector<double> success_probs;
    double offset = 0.0;
};

struct RandomMatrixGame {
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<RandomEntry>> row_entries, col_entries;
};

// Replaces each random cell by its expectation.
BimatrixGame expected_game(const RandomMatrixGame& rmg);

// Wireless collision channel game: each player transmits (T) or waits (W);
// a lone transmitter succeeds when its SNR clears the threshold, which
// happens with probability p_i. Positive empathy weights credit the idle
// player with a share of the transmitter's success.
RandomMatrixGame collision_game(double p1, double p2, double lambda1 = 0.0, double lambda2 = 0.0);

// Equilibrium payoff gap of the collision game:
// max{(1-lambda2) p1, (1-lambda1) p2}. Non-increasing in each empathy weight.
double collision_gap(double p1, double p2, double lambda1, double lambda2);

// Two-pair forwarding dilemma. m11/m21 are player 1's expected end-to-end
// success products, n11/n12 player 2's, c1/c2 the forwarding energy costs.
struct ForwardingParams {
    double m11 = 0.0, m21 = 0.0, n11 = 0.0, n12 = 0.0;
    double c1 = 0.0, c2 = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    void validate() const;
};

// Material game (lambda ignored), in random-entry form.
RandomMatrixGame forwarding_random_game(const ForwardingParams& fp);

// The empathy-adjusted expected 2x2 game; the (nF,nF) cell is (0,0).
BimatrixGame empathic_game(const ForwardingParams& fp);

enum class Outcome { FfUnique, FfNfnfMixed, FnF, NfF, NfNf, Degenerate };

std::string outcome_name(Outcome o);

// Empathy band edges for the outcome table, emitted for cross-reference only
// (classification itself is by enumeration). p2_edge_alt is the alternative
// reading of player 2's lower edge discussed in the docs.
struct OutcomeThresholds {
    double p1_edge_low = 0.0;   // (c1 + m21 - m11) / n11
    double p1_edge_high = 0.0;  // c1 / n12
    double p2_edge_low = 0.0;   // (c2 + n12 - n11) / m11
    double p2_edge_low_alt = 0.0;  // (c2 + n12 - n11) / (m11 + c1)
    double p2_edge_high = 0.0;  // c2 / m21
};

struct OutcomeReport {
    Outcome label = Outcome::Degenerate;
    EquilibriumSet equilibria;
    BimatrixGame game;
    OutcomeThresholds thresholds;
};

// Classifies the forwarding outcome by enumerating the equilibria of the
// empathy-adjusted game. Boundary ties are labeled Degenerate.
OutcomeReport classify_outcome(const ForwardingParams& fp);

// Incomplete-information interaction between a high-empathy type (always
// forwards) and a selfish type, with the selfish fraction mu.
struct TypePairingOutcome {
    std::string pairing;  // "PT-PT", "PT-Se", "Se-PT", "Se-Se"
    std::string outcome;  // e.g. "FF", "FnF", "nFF+nFnF"
    double weight = 0.0;  // population probability of this pairing
};

struct TypeInteractionSummary {
    std::vector<TypePairingOutcome> pairings;
    // outcome label -> total population weight
    std::vector<std::pair<std::string, double>> outcome_mixture;
};

TypeInteractionSummary type_interaction(double mu_selfish, const ForwardingParams& fp);

// One row per equilibrium: type, profile/strategy, payoffs.
void export_equilibria_csv(const std::string& path, const BimatrixGame& g,
                           const EquilibriumSet& eqs);

}  // namespace empathy::games
