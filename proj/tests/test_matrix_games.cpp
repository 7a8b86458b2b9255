#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "empathy/matrix_games.hpp"
#include "empathy/rng.hpp"

using namespace empathy;
using namespace empathy::games;

namespace {

bool contains(const std::vector<PureProfile>& v, int r, int c) {
    return std::find(v.begin(), v.end(), PureProfile{r, c}) != v.end();
}

// independent audit: scan the strategy grid and collect eps-equilibria
std::vector<std::pair<double, double>> grid_scan_equilibria(const BimatrixGame& g, double step,
                                                            double eps) {
    std::vector<std::pair<double, double>> found;
    for (double p = 0.0; p <= 1.0 + 1e-12; p += step)
        for (double q = 0.0; q <= 1.0 + 1e-12; q += step)
            if (is_epsilon_equilibrium_2x2(g, std::min(p, 1.0), std::min(q, 1.0), eps))
                found.emplace_back(std::min(p, 1.0), std::min(q, 1.0));
    return found;
}

ForwardingParams fixture_params(double l1, double l2) {
    ForwardingParams fp;
    fp.m11 = 1.0;
    fp.m21 = 0.8;
    fp.n11 = 1.0;
    fp.n12 = 0.9;
    fp.c1 = fp.c2 = 0.5;
    fp.lambda1 = l1;
    fp.lambda2 = l2;
    return fp;
}

}  // namespace

TEST_CASE("expected_game: collision cells") {
    BimatrixGame g = expected_game(collision_game(0.8, 0.6));
    CHECK(g.row_payoff[0][1] == doctest::Approx(0.8).epsilon(1e-15));  // (T,W): lone transmitter 1
    CHECK(g.col_payoff[0][1] == 0.0);
    CHECK(g.row_payoff[1][0] == 0.0);  // (W,T): lone transmitter 2
    CHECK(g.col_payoff[1][0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(g.row_payoff[0][0] == 0.0);  // collision
    CHECK(g.col_payoff[1][1] == 0.0);
}

TEST_CASE("expected_game: degenerate and forwarding cells") {
    BimatrixGame zero = expected_game(collision_game(0.0, 0.0));
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            CHECK(zero.row_payoff[r][c] == 0.0);
            CHECK(zero.col_payoff[r][c] == 0.0);
        }

    ForwardingParams fp;
    fp.m11 = 0.9;
    fp.c1 = 0.2;
    BimatrixGame fwd = expected_game(forwarding_random_game(fp));
    CHECK(fwd.row_payoff[0][0] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("pure_nash: collision game keeps (T,T) without empathy") {
    BimatrixGame g = expected_game(collision_game(0.8, 0.6));
    auto eqs = pure_nash(g);
    CHECK(contains(eqs, 0, 0));  // (T,T)
    CHECK(contains(eqs, 0, 1));
    CHECK(contains(eqs, 1, 0));
    CHECK_FALSE(contains(eqs, 1, 1));
}

TEST_CASE("pure_nash: material forwarding dilemma collapses to nFnF") {
    ForwardingParams fp;
    fp.m11 = 0.8;
    fp.m21 = 0.7;
    fp.n11 = 0.8;
    fp.n12 = 0.6;
    fp.c1 = fp.c2 = 0.3;  // m11-c1 < m21 and n11-c2 < n12
    auto eqs = pure_nash(expected_game(forwarding_random_game(fp)));
    REQUIRE(eqs.size() == 1);
    CHECK(contains(eqs, 1, 1));
}

TEST_CASE("pure_nash: zero game ties") {
    BimatrixGame g = expected_game(collision_game(0.0, 0.0));
    CHECK(pure_nash(g).size() == 4);
    CHECK(pure_nash(g, true).empty());
}

TEST_CASE("mixed_nash_2x2: matching pennies") {
    BimatrixGame g;
    g.row_labels = {"H", "T"};
    g.col_labels = {"H", "T"};
    g.row_payoff = {{1, -1}, {-1, 1}};
    g.col_payoff = {{-1, 1}, {1, -1}};
    auto eqs = mixed_nash_2x2(g);
    CHECK(eqs.pure.empty());
    CHECK(eqs.families.empty());
    REQUIRE(eqs.mixed.size() == 1);
    CHECK(eqs.mixed[0].row_strategy[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eqs.mixed[0].col_strategy[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mixed_nash_2x2: dominant row, audited by grid scan") {
    BimatrixGame g;
    g.row_labels = {"a", "b"};
    g.col_labels = {"x", "y"};
    g.row_payoff = {{2, 2}, {0, 0}};
    g.col_payoff = {{1, 0}, {0, 1}};
    auto eqs = mixed_nash_2x2(g);
    REQUIRE(eqs.pure.size() == 1);
    CHECK(contains(eqs.pure, 0, 0));
    CHECK(eqs.mixed.empty());
    CHECK(eqs.families.empty());

    // every near-equilibrium on the grid places almost all mass on the
    // dominant row (and its best response)
    for (auto [p, q] : grid_scan_equilibria(g, 1e-3, 5e-3)) {
        CHECK(p >= 1.0 - 5e-3);
        CHECK(q >= 1.0 - 5e-3);
    }
}

TEST_CASE("mixed_nash_2x2: medium-band forwarding game has three equilibria") {
    auto g = empathic_game(fixture_params(0.45, 0.5));
    auto eqs = mixed_nash_2x2(g);
    REQUIRE(eqs.pure.size() == 2);
    CHECK(contains(eqs.pure, 0, 0));  // FF
    CHECK(contains(eqs.pure, 1, 1));  // nFnF
    REQUIRE(eqs.mixed.size() == 1);
    // indifference conditions solved by hand for this fixture
    CHECK(eqs.mixed[0].row_strategy[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eqs.mixed[0].col_strategy[0] == doctest::Approx(0.095 / 0.245).epsilon(1e-12));
    CHECK(is_epsilon_equilibrium_2x2(g, 0.5, 0.095 / 0.245, 1e-9));
}

TEST_CASE("mixed_nash_2x2: collision continuum reported as families") {
    BimatrixGame g = expected_game(collision_game(0.8, 0.6));
    auto eqs = mixed_nash_2x2(g);
    CHECK(eqs.degenerate);
    // row player pinned to T while the other mixes freely, and symmetrically
    bool row_T_family = false, col_T_family = false;
    for (const auto& f : eqs.families) {
        if (f.fixed_player == 0 && f.fixed_action == 0 && f.free_lo == 0.0 && f.free_hi == 1.0)
            row_T_family = true;
        if (f.fixed_player == 1 && f.fixed_action == 0 && f.free_lo == 0.0 && f.free_hi == 1.0)
            col_T_family = true;
    }
    CHECK(row_T_family);
    CHECK(col_T_family);

    // sampled family points survive the independent best-response audit
    for (const auto& f : eqs.families)
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double mix = f.free_lo + t * (f.free_hi - f.free_lo);
            double p = f.fixed_player == 0 ? (f.fixed_action == 0 ? 1.0 : 0.0) : mix;
            double q = f.fixed_player == 1 ? (f.fixed_action == 0 ? 1.0 : 0.0) : mix;
            CHECK(is_epsilon_equilibrium_2x2(g, p, q, 1e-9));
        }
}

TEST_CASE("empathic collision game drops (T,T) for positive empathy") {
    for (double l1 : {0.1, 0.5, 1.0})
        for (double l2 : {0.1, 0.5, 1.0}) {
            BimatrixGame g = expected_game(collision_game(0.8, 0.6, l1, l2));
            auto eqs = pure_nash(g);
            CHECK_FALSE(contains(eqs, 0, 0));
            CHECK(contains(eqs, 0, 1));  // (T,W) stays an equilibrium
        }
}

TEST_CASE("collision_gap values and monotonicity") {
    CHECK(collision_gap(0.8, 0.6, 0.0, 0.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(collision_gap(0.8, 0.6, 1.0, 1.0) == 0.0);
    CHECK(collision_gap(0.8, 0.6, 0.5, 0.5) == doctest::Approx(0.4).epsilon(1e-15));

    Rng rng(3, "collision-mono");
    for (int trial = 0; trial < 30; ++trial) {
        double p1 = rng.uniform(), p2 = rng.uniform();
        double prev = collision_gap(p1, p2, 0.0, 0.0);
        for (double l = 0.1; l <= 1.0 + 1e-12; l += 0.1) {
            double cur = collision_gap(p1, p2, l, l);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        // per-component monotonicity
        CHECK(collision_gap(p1, p2, 0.7, 0.2) <= collision_gap(p1, p2, 0.3, 0.2) + 1e-15);
        CHECK(collision_gap(p1, p2, 0.2, 0.7) <= collision_gap(p1, p2, 0.2, 0.3) + 1e-15);
    }
}

TEST_CASE("empathic_game entries") {
    ForwardingParams fp = fixture_params(0.0, 0.0);
    BimatrixGame material = expected_game(forwarding_random_game(fp));
    BimatrixGame g0 = empathic_game(fp);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            CHECK(g0.row_payoff[r][c] == doctest::Approx(material.row_payoff[r][c]).epsilon(1e-15));
            CHECK(g0.col_payoff[r][c] == doctest::Approx(material.col_payoff[r][c]).epsilon(1e-15));
        }

    ForwardingParams fp2;
    fp2.n12 = 0.9;
    fp2.c1 = 0.5;
    fp2.lambda1 = 1.0;
    CHECK(empathic_game(fp2).row_payoff[0][1] == doctest::Approx(0.4).epsilon(1e-15));

    ForwardingParams fp3;
    fp3.m11 = 1.0;
    fp3.n11 = 1.0;
    fp3.c1 = fp3.c2 = 0.5;
    fp3.lambda1 = fp3.lambda2 = 1.0;
    BimatrixGame g3 = empathic_game(fp3);
    CHECK(g3.row_payoff[0][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g3.col_payoff[0][0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("classify_outcome across the empathy bands") {
    // band edges for the fixture: player 1 at 0.3 and 0.5556, player 2 at 0.4 and 0.625
    auto check_label = [&](double l1, double l2, Outcome expect) {
        auto rep = classify_outcome(fixture_params(l1, l2));
        CHECK_MESSAGE(rep.label == expect,
                      "l1=", l1, " l2=", l2, " got ", outcome_name(rep.label));
    };
    check_label(0.8, -0.5, Outcome::FnF);
    check_label(0.8, 0.5, Outcome::FfUnique);
    check_label(0.8, 0.8, Outcome::FfUnique);
    check_label(0.45, -0.5, Outcome::NfNf);
    check_label(0.45, 0.5, Outcome::FfNfnfMixed);
    check_label(0.45, 0.8, Outcome::FfUnique);
    check_label(-0.5, -0.5, Outcome::NfNf);
    check_label(-0.5, 0.5, Outcome::NfNf);
    check_label(-0.5, 0.8, Outcome::NfF);
}

TEST_CASE("classify_outcome reports threshold values") {
    auto rep = classify_outcome(fixture_params(0.7, 0.7));
    CHECK(rep.thresholds.p1_edge_low == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(rep.thresholds.p1_edge_high == doctest::Approx(0.5 / 0.9).epsilon(1e-12));
    CHECK(rep.thresholds.p2_edge_low == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(rep.thresholds.p2_edge_low_alt == doctest::Approx(0.4 / 1.5).epsilon(1e-12));
    CHECK(rep.thresholds.p2_edge_high == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(rep.label == Outcome::FfUnique);
}

TEST_CASE("classify_outcome flags boundary equalities as degenerate") {
    // exactly at the upper empathy edge of player 1 the F-vs-nF payoff ties
    auto fp = fixture_params(0.5 / 0.9, 0.2);
    auto rep = classify_outcome(fp);
    CHECK(rep.label == Outcome::Degenerate);
}

TEST_CASE("returned equilibria survive the epsilon audit") {
    Rng rng(17, "mg-audit");
    for (int trial = 0; trial < 200; ++trial) {
        BimatrixGame g;
        g.row_labels = {"F", "nF"};
        g.col_labels = {"F", "nF"};
        g.row_payoff = {{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                        {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        g.col_payoff = {{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                        {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        auto eqs = mixed_nash_2x2(g);
        CHECK(!eqs.pure.empty() + !eqs.mixed.empty() + !eqs.families.empty() >= 1);
        for (const auto& e : eqs.pure)
            CHECK(is_epsilon_equilibrium_2x2(g, e.row == 0 ? 1.0 : 0.0, e.col == 0 ? 1.0 : 0.0,
                                             1e-9));
        for (const auto& m : eqs.mixed)
            CHECK(is_epsilon_equilibrium_2x2(g, m.row_strategy[0], m.col_strategy[0], 1e-9));
    }
}

TEST_CASE("type_interaction pairings") {
    ForwardingParams fp;
    fp.m11 = 0.8;
    fp.m21 = 0.7;
    fp.n11 = 0.8;
    fp.n12 = 0.6;
    fp.c1 = fp.c2 = 0.3;  // selfish players end at nFnF; m11-c1 < m21
    auto sum = type_interaction(0.4, fp);
    REQUIRE(sum.pairings.size() == 4);
    CHECK(sum.pairings[0].pairing == "PT-PT");
    CHECK(sum.pairings[0].outcome == "FF");
    CHECK(sum.pairings[0].weight == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(sum.pairings[1].outcome == "FnF");  // n11 - c2 = 0.5 < n12 = 0.6
    CHECK(sum.pairings[2].outcome == "nFF");  // m11 - c1 = 0.5 < m21 = 0.7
    CHECK(sum.pairings[3].pairing == "Se-Se");
    CHECK(sum.pairings[3].outcome == "nFnF");

    // selfish-only population reduces to the material game outcome
    auto all_se = type_interaction(1.0, fp);
    REQUIRE(all_se.outcome_mixture.size() == 1);
    CHECK(all_se.outcome_mixture[0].first == "nFnF");
    CHECK(all_se.outcome_mixture[0].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(collision_game(1.2, 0.5), ValidationError);
    CHECK_THROWS_AS(collision_gap(0.5, 0.5, -0.1, 0.0), ValidationError);
    ForwardingParams fp;
    fp.c1 = -1.0;
    CHECK_THROWS_AS(fp.validate(), ValidationError);
    CHECK_THROWS_AS(type_interaction(1.5, fixture_params(0, 0)), ValidationError);
}
