#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "infocost/costs.hpp"
#include "infocost/model.hpp"
#include "infocost/types.hpp"

namespace infocost {

// Configuration of a simulation run. The estimator is deterministic given
// (seed, n_paths, steps_per_year, antithetic): results are bit-identical
// across n_threads because every path owns a counter-based random stream
// keyed by its index and the final reduction runs in fixed index order.
struct McConfig {
    std::int64_t n_paths = 200000;
    int steps_per_year = 100;
    std::uint64_t seed = 20260817;
    bool antithetic = false;
    int n_threads = 1;
    // Forces every strategy's risky weight to zero; terminal wealth is then
    // x0*exp(rT) on every path, so the estimate must match u(x0*exp(rT))
    // exactly. A sanity mode for the harness, not an estimator.
    bool force_zero_weight = false;

    void validate() const;
};

// Moment summary of one investor type's simulated expected utility.
struct McEstimate {
    double mean = 0.0;       // sample mean of terminal utility
    double std_error = 0.0;  // standard error of the mean
    std::int64_t n_samples = 0;
    double certainty_equivalent = 0.0;  // wealth whose sure utility equals `mean`
};

// Joint result of one pass over common random numbers: all four types are
// advanced on the same paths, so differences between types have far lower
// variance than independent runs would give.
struct McRun {
    std::array<McEstimate, 4> estimates;             // indexed by type_rank
    std::array<std::array<double, 4>, 4> covariance; // of per-sample utilities
    std::int64_t n_samples = 0;  // antithetic pair averages count as one sample
};

McRun simulate_all(double x0, const MarketParams& mkt, const InvestorProfile& prof,
                   const McConfig& cfg);

McEstimate simulate_value(InvestorType type, double x0, const MarketParams& mkt,
                          const InvestorProfile& prof, const McConfig& cfg);

// Welfare cost of a pair estimated from a joint run, with a delta-method
// standard error that uses the common-random-number covariance.
struct McCost {
    double estimate = 0.0;
    double std_error = 0.0;
};

McCost cost_from_run(const McRun& run, CostPair pair, const InvestorProfile& prof);

McCost simulate_cost(CostPair pair, double x0, const MarketParams& mkt,
                     const InvestorProfile& prof, const McConfig& cfg);

// Draws (market price of risk, observation path) pairs at a fixed time and
// checks the conditional-mean estimate against them: the estimation residual
// must be uncorrelated with the estimate and its variance must match the
// posterior variance.
struct FilterDiagnostics {
    double slope = 0.0;          // OLS slope of residual on estimate
    double slope_se = 0.0;
    double intercept = 0.0;
    double intercept_se = 0.0;
    double residual_var = 0.0;   // sample variance of (true - estimate)
    double expected_residual_var = 0.0;
    std::int64_t n_samples = 0;
};

FilterDiagnostics filter_consistency_run(double t, const MarketParams& mkt,
                                         std::int64_t n_samples, std::uint64_t seed);

namespace detail {

// Per-path random stream: a splitmix64 generator whose initial state is a
// bit-mix of (seed, path index), so any path's stream can be regenerated
// independently of the others. Normals come from Box-Muller in pairs.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path);

    std::uint64_t next_u64();
    double next_uniform();  // in [0, 1)
    double next_normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace detail

} // namespace infocost
