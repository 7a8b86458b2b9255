#include "empathy/matrix_games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "empathy/csv.hpp"

namespace empathy::games {

namespace {

constexpr double kTieTol = 1e-12;

double expected_payoff_row(const BimatrixGame& g, int r, double q) {
    return q * g.row_payoff[r][0] + (1.0 - q) * g.row_payoff[r][1];
}

double expected_payoff_col(const BimatrixGame& g, int c, double p) {
    return p * g.col_payoff[0][c] + (1.0 - p) * g.col_payoff[1][c];
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

void BimatrixGame::validate() const {
    const std::size_t r = row_labels.size(), c = col_labels.size();
    if (r == 0 || c == 0) throw ValidationError("game needs at least one action per player");
    if (row_payoff.size() != r || col_payoff.size() != r)
        throw ValidationError("payoff matrices must match action labels");
    for (std::size_t i = 0; i < r; ++i) {
        if (row_payoff[i].size() != c || col_payoff[i].size() != c)
            throw ValidationError("payoff matrices must match action labels");
        for (std::size_t j = 0; j < c; ++j)
            if (!std::isfinite(row_payoff[i][j]) || !std::isfinite(col_payoff[i][j]))
                throw ValidationError("payoff entries must be finite");
    }
}

std::vector<PureProfile> pure_nash(const BimatrixGame& g, bool strict) {
    g.validate();
    std::vector<PureProfile> out;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            bool ok = true;
            for (int r2 = 0; r2 < g.rows() && ok; ++r2) {
                if (r2 == r) continue;
                if (strict ? g.row_payoff[r2][c] >= g.row_payoff[r][c]
                           : g.row_payoff[r2][c] > g.row_payoff[r][c])
                    ok = false;
            }
            for (int c2 = 0; c2 < g.cols() && ok; ++c2) {
                if (c2 == c) continue;
                if (strict ? g.col_payoff[r][c2] >= g.col_payoff[r][c]
                           : g.col_payoff[r][c2] > g.col_payoff[r][c])
                    ok = false;
            }
            if (ok) out.push_back({r, c});
        }
    }
    return out;
}

bool is_epsilon_equilibrium_2x2(const BimatrixGame& g, double p, double q, double eps) {
    double row_value = p * expected_payoff_row(g, 0, q) + (1.0 - p) * expected_payoff_row(g, 1, q);
    double row_best = std::max(expected_payoff_row(g, 0, q), expected_payoff_row(g, 1, q));
    double col_value = q * expected_payoff_col(g, 0, p) + (1.0 - q) * expected_payoff_col(g, 1, p);
    double col_best = std::max(expected_payoff_col(g, 0, p), expected_payoff_col(g, 1, p));
    return row_best - row_value <= eps && col_best - col_value <= eps;
}

EquilibriumSet mixed_nash_2x2(const BimatrixGame& g) {
    g.validate();
    if (g.rows() != 2 || g.cols() != 2)
        throw ValidationError("mixed_nash_2x2 requires a 2x2 game");

    EquilibriumSet out;
    out.pure = pure_nash(g);

    const auto& A = g.row_payoff;
    const auto& B = g.col_payoff;

    // interior mixed equilibrium from the indifference conditions
    double den_q = A[0][0] - A[0][1] - A[1][0] + A[1][1];
    double den_p = B[0][0] - B[1][0] - B[0][1] + B[1][1];
    if (std::abs(den_q) > kTieTol && std::abs(den_p) > kTieTol) {
        double q = (A[1][1] - A[0][1]) / den_q;  // makes the row player indifferent
        double p = (B[1][1] - B[1][0]) / den_p;  // makes the column player indifferent
        if (p > kTieTol && p < 1.0 - kTieTol && q > kTieTol && q < 1.0 - kTieTol &&
            is_epsilon_equilibrium_2x2(g, p, q, 1e-9)) {
            out.mixed.push_back({{p, 1.0 - p}, {q, 1.0 - q}});
        }
    }

    // degenerate continua: one player pinned pure, the other indifferent
    auto scale = [&](double a, double b, double c, double d) {
        return std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    };
    for (int r = 0; r < 2; ++r) {
        double tol = kTieTol * scale(B[r][0], B[r][1], A[0][0], A[1][1]);
        if (std::abs(B[r][0] - B[r][1]) > tol) continue;
        // column player indifferent against row r; find q-range keeping r a best response
        // f(q) = q*(A[r][0]-A[1-r][0]) + (1-q)*(A[r][1]-A[1-r][1]) >= 0
        double d0 = A[r][0] - A[1 - r][0];
        double d1 = A[r][1] - A[1 - r][1];
        double lo = 0.0, hi = 1.0;
        double slope = d0 - d1;
        if (std::abs(slope) <= kTieTol) {
            if (d1 < -kTieTol) continue;  // never a best response
        } else if (slope > 0.0) {
            lo = std::max(lo, -d1 / slope);
        } else {
            hi = std::min(hi, -d1 / slope);
        }
        if (hi - lo > kTieTol) {
            out.families.push_back({0, r, lo, hi});
            out.degenerate = true;
        }
    }
    for (int c = 0; c < 2; ++c) {
        double tol = kTieTol * scale(A[0][c], A[1][c], B[0][0], B[1][1]);
        if (std::abs(A[0][c] - A[1][c]) > tol) continue;
        double d0 = B[0][c] - B[0][1 - c];
        double d1 = B[1][c] - B[1][1 - c];
        double lo = 0.0, hi = 1.0;
        double slope = d0 - d1;
        if (std::abs(slope) <= kTieTol) {
            if (d1 < -kTieTol) continue;
        } else if (slope > 0.0) {
            lo = std::max(lo, -d1 / slope);
        } else {
            hi = std::min(hi, -d1 / slope);
        }
        if (hi - lo > kTieTol) {
            out.families.push_back({1, c, lo, hi});
            out.degenerate = true;
        }
    }
    return out;
}

BimatrixGame expected_game(const RandomMatrixGame& rmg) {
    BimatrixGame g;
    g.row_labels = rmg.row_labels;
    g.col_labels = rmg.col_labels;
    const std::size_t r = rmg.row_labels.size(), c = rmg.col_labels.size();
    if (rmg.row_entries.size() != r || rmg.col_entries.size() != r)
        throw ValidationError("random game entries must match action labels");
    auto expect = [](const RandomEntry& e) {
        double prod = 1.0;
        for (double p : e.success_probs) {
            check_probability(p, "indicator success probability");
            prod *= p;
        }
        return e.scale * prod + e.offset;
    };
    g.row_payoff.assign(r, std::vector<double>(c, 0.0));
    g.col_payoff.assign(r, std::vector<double>(c, 0.0));
    for (std::size_t i = 0; i < r; ++i) {
        if (rmg.row_entries[i].size() != c || rmg.col_entries[i].size() != c)
            throw ValidationError("random game entries must match action labels");
        for (std::size_t j = 0; j < c; ++j) {
            g.row_payoff[i][j] = expect(rmg.row_entries[i][j]);
            g.col_payoff[i][j] = expect(rmg.col_entries[i][j]);
        }
    }
    g.validate();
    return g;
}

RandomMatrixGame collision_game(double p1, double p2, double lambda1, double lambda2) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    RandomMatrixGame rmg;
    rmg.row_labels = {"T", "W"};
    rmg.col_labels = {"T", "W"};
    rmg.row_entries.assign(2, std::vector<RandomEntry>(2));
    rmg.col_entries.assign(2, std::vector<RandomEntry>(2));
    // lone transmitter succeeds with its SNR probability; with empathy the
    // waiting player values a share of that success
    rmg.row_entries[0][1] = {1.0, {p1}, 0.0};
    rmg.col_entries[0][1] = {lambda2, {p1}, 0.0};
    rmg.row_entries[1][0] = {lambda1, {p2}, 0.0};
    rmg.col_entries[1][0] = {1.0, {p2}, 0.0};
    return rmg;
}

double collision_gap(double p1, double p2, double lambda1, double lambda2) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    if (lambda1 < 0.0 || lambda1 > 1.0 || lambda2 < 0.0 || lambda2 > 1.0)
        throw ValidationError("collision_gap expects empathy weights in [0,1]");
    return std::max((1.0 - lambda2) * p1, (1.0 - lambda1) * p2);
}

void ForwardingParams::validate() const {
    check_probability(m11, "m11");
    check_probability(m21, "m21");
    check_probability(n11, "n11");
    check_probability(n12, "n12");
    if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw ValidationError("forwarding costs must be finite and >= 0");
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
        throw ValidationError("empathy weights must be finite");
}

RandomMatrixGame forwarding_random_game(const ForwardingParams& fp) {
    fp.validate();
    RandomMatrixGame rmg;
    rmg.row_labels = {"F", "nF"};
    rmg.col_labels = {"F", "nF"};
    rmg.row_entries.assign(2, std::vector<RandomEntry>(2));
    rmg.col_entries.assign(2, std::vector<RandomEntry>(2));
    rmg.row_entries[0][0] = {1.0, {fp.m11}, -fp.c1};
    rmg.col_entries[0][0] = {1.0, {fp.n11}, -fp.c2};
    rmg.row_entries[0][1] = {0.0, {}, -fp.c1};
    rmg.col_entries[0][1] = {1.0, {fp.n12}, 0.0};
    rmg.row_entries[1][0] = {1.0, {fp.m21}, 0.0};
    rmg.col_entries[1][0] = {0.0, {}, -fp.c2};
    return rmg;
}

BimatrixGame empathic_game(const ForwardingParams& fp) {
    fp.validate();
    const double l1 = fp.lambda1, l2 = fp.lambda2;
    BimatrixGame g;
    g.row_labels = {"F", "nF"};
    g.col_labels = {"F", "nF"};
    g.row_payoff = {{fp.m11 - fp.c1 + l1 * (fp.n11 - fp.c2), -fp.c1 + l1 * fp.n12},
                    {fp.m21 - l1 * fp.c2, 0.0}};
    g.col_payoff = {{l2 * (fp.m11 - fp.c1) + fp.n11 - fp.c2, -l2 * fp.c1 + fp.n12},
                    {l2 * fp.m21 - fp.c2, 0.0}};
    return g;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::FfUnique: return "FF-unique";
        case Outcome::FfNfnfMixed: return "FF+nFnF+mixed";
        case Outcome::FnF: return "FnF";
        case Outcome::NfF: return "nFF";
        case Outcome::NfNf: return "nFnF";
        case Outcome::Degenerate: return "degenerate";
    }
    return "degenerate";
}

OutcomeReport classify_outcome(const ForwardingParams& fp) {
    OutcomeReport rep;
    rep.game = empathic_game(fp);
    rep.equilibria = mixed_nash_2x2(rep.game);

    auto div = [](double num, double den) {
        return den != 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
    };
    rep.thresholds.p1_edge_low = div(fp.c1 + fp.m21 - fp.m11, fp.n11);
    rep.thresholds.p1_edge_high = div(fp.c1, fp.n12);
    rep.thresholds.p2_edge_low = div(fp.c2 + fp.n12 - fp.n11, fp.m11);
    rep.thresholds.p2_edge_low_alt = div(fp.c2 + fp.n12 - fp.n11, fp.m11 + fp.c1);
    rep.thresholds.p2_edge_high = div(fp.c2, fp.m21);

    const auto& A = rep.game.row_payoff;
    const auto& B = rep.game.col_payoff;
    // boundary ties make the equilibrium set non-isolated
    bool tie = std::abs(A[0][0] - A[1][0]) <= kTieTol || std::abs(B[0][0] - B[0][1]) <= kTieTol ||
               std::abs(A[0][1]) <= kTieTol || std::abs(B[1][0]) <= kTieTol;
    if (tie || rep.equilibria.degenerate || !rep.equilibria.families.empty()) {
        rep.label = Outcome::Degenerate;
        return rep;
    }

    auto has = [&](int r, int c) {
        return std::find(rep.equilibria.pure.begin(), rep.equilibria.pure.end(),
                         PureProfile{r, c}) != rep.equilibria.pure.end();
    };
    const std::size_t npure = rep.equilibria.pure.size();
    const std::size_t nmixed = rep.equilibria.mixed.size();
    if (npure == 1 && nmixed == 0) {
        if (has(0, 0)) rep.label = Outcome::FfUnique;
        else if (has(0, 1)) rep.label = Outcome::FnF;
        else if (has(1, 0)) rep.label = Outcome::NfF;
        else rep.label = Outcome::NfNf;
    } else if (npure == 2 && has(0, 0) && has(1, 1) && nmixed == 1) {
        rep.label = Outcome::FfNfnfMixed;
    } else {
        rep.label = Outcome::Degenerate;
    }
    return rep;
}

TypeInteractionSummary type_interaction(double mu_selfish, const ForwardingParams& fp) {
    if (!(mu_selfish >= 0.0 && mu_selfish <= 1.0))
        throw ValidationError("selfish fraction must lie in [0,1]");
    fp.validate();

    auto compare = [](double a, double b) { return a > b ? 1 : (a < b ? -1 : 0); };

    TypeInteractionSummary sum;
    const double mu = mu_selfish;

    // high-empathy types forward whenever the channel terms are finite
    sum.pairings.push_back({"PT-PT", "FF", (1.0 - mu) * (1.0 - mu)});

    int c2cmp = compare(fp.n11 - fp.c2, fp.n12);
    std::string pt_se = c2cmp > 0 ? "FF" : (c2cmp < 0 ? "FnF" : "F,any-mix");
    sum.pairings.push_back({"PT-Se", pt_se, (1.0 - mu) * mu});

    int c1cmp = compare(fp.m11 - fp.c1, fp.m21);
    std::string se_pt = c1cmp > 0 ? "FF" : (c1cmp < 0 ? "nFF" : "any-mix,F");
    sum.pairings.push_back({"Se-PT", se_pt, mu * (1.0 - mu)});

    ForwardingParams material = fp;
    material.lambda1 = material.lambda2 = 0.0;
    auto eqs = pure_nash(expected_game(forwarding_random_game(material)));
    std::string se_se;
    for (const auto& e : eqs) {
        if (!se_se.empty()) se_se += "+";
        se_se += (e.row == 0 ? "F" : "nF");
        se_se += (e.col == 0 ? "F" : "nF");
    }
    if (se_se.empty()) se_se = "none";
    sum.pairings.push_back({"Se-Se", se_se, mu * mu});

    std::map<std::string, double> mixture;
    for (const auto& p : sum.pairings)
        if (p.weight > 0.0) mixture[p.outcome] += p.weight;
    sum.outcome_mixture.assign(mixture.begin(), mixture.end());
    return sum;
}

void export_equilibria_csv(const std::string& path, const BimatrixGame& g,
                           const EquilibriumSet& eqs) {
    CsvWriter csv(path);
    csv.row({"type", "row_strategy", "col_strategy", "row_payoff", "col_payoff"});
    for (const auto& e : eqs.pure) {
        double rp = g.row_payoff[e.row][e.col];
        double cp = g.col_payoff[e.row][e.col];
        csv.row({"pure", g.row_labels[e.row], g.col_labels[e.col], fmt_num(rp), fmt_num(cp)});
    }
    for (const auto& m : eqs.mixed) {
        double p = m.row_strategy[0], q = m.col_strategy[0];
        double rp = 0.0, cp = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                double w = (r == 0 ? p : 1 - p) * (c == 0 ? q : 1 - q);
                rp += w * g.row_payoff[r][c];
                cp += w * g.col_payoff[r][c];
            }
        csv.row({"mixed", fmt_num(p) + ";" + fmt_num(1 - p), fmt_num(q) + ";" + fmt_num(1 - q),
                 fmt_num(rp), fmt_num(cp)});
    }
    for (const auto& f : eqs.families) {
        std::string fixed = f.fixed_player == 0 ? g.row_labels[f.fixed_action]
                                                : g.col_labels[f.fixed_action];
        std::string range = "mix[" + fmt_num(f.free_lo) + "," + fmt_num(f.free_hi) + "]";
        if (f.fixed_player == 0)
            csv.row({"family", fixed, range, "", ""});
        else
            csv.row({"family", range, fixed, "", ""});
    }
}

}  // namespace empathy::games
