#pragma once

#include <string>
#include <vector>

#include "empathy/errors.hpp"

namespace empathy::energy {

// w(d) = amplitude * (1 - e^{-rate * d}): strictly concave increasing.
struct Satisfaction {
    double amplitude = 1.0;
    double rate = 1.0;
};

// p(D, S) = base + slope * (D - S), non-decreasing in aggregate demand.
struct LinearPrice {
    double base = 0.0;
    double slope = 0.0;
};

struct MarketModel {
    int consumers = 1;
    std::vector<Satisfaction> satisfaction;  // one per consumer
    LinearPrice price;
    double supply = 0.0;
    void validate() const;
};

struct SolveOptions {
    double damping = 0.5;
    double tol = 1e-10;  // max first-order-condition residual
    int max_iter = 20000;
};

struct DemandResult {
    std::vector<double> demand;
    double residual = 0.0;
    int iterations = 0;
};

// Consumer i's payoff under uniform empathy toward the others:
//   w_i(d_i) - p(D) d_i + empathy * sum_{j != i} (w_j(d_j) - p(D) d_j).
double empathic_payoff(const MarketModel& m, double empathy, const std::vector<double>& d, int i);

// Max violation of the stationarity conditions obtained by differentiating
// the empathic payoff: interior consumers must satisfy
//   w_i'(d_i) = p(D) + slope * d_i + empathy * slope * (D - d_i),
// consumers at zero must not want to consume.
double foc_residual(const MarketModel& m, double empathy, const std::vector<double>& d);

// Damped simultaneous best-response iteration, projected onto d >= 0, run
// until the residual drops below tol. Throws ConvergenceError (carrying the
// final residual) if the iteration cap is hit first.
DemandResult demand_equilibrium(const MarketModel& m, double empathy,
                                const SolveOptions& opts = {});

// A day of hourly market instances: appetite scales every consumer's
// satisfaction amplitude that hour; supply overrides the model supply when
// non-empty.
struct DayProfile {
    std::vector<double> appetite;
    std::vector<double> supply;
};

struct PeakTable {
    std::vector<double> lambdas;
    std::vector<std::vector<double>> aggregate;  // [hour][lambda index]
    std::vector<double> peak;                    // per lambda, max over hours
};

PeakTable peak_comparison(const MarketModel& m, const DayProfile& day,
                          const std::vector<double>& lambdas, const SolveOptions& opts = {});

void export_peak_table_csv(const std::string& path, const PeakTable& table);

}  // namespace empathy::energy
