#include "infocost/mc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "infocost/errors.hpp"

namespace infocost {

void McConfig::validate() const {
    if (n_paths <= 0) throw std::invalid_argument("n_paths must be positive");
    if (steps_per_year <= 0) throw std::invalid_argument("steps_per_year must be positive");
    if (n_threads <= 0) throw std::invalid_argument("n_threads must be positive");
    if (antithetic && n_paths % 2 != 0) {
        throw std::invalid_argument("antithetic sampling requires an even n_paths");
    }
}

namespace detail {

namespace {

// splitmix64 output finalizer; also used to key per-path streams.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path)
    : state_(mix64(seed ^ mix64(path + kGolden))) {}

std::uint64_t PathRng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double PathRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PathRng::next_normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Box-Muller; 1 - u1 lies in (0, 1] so the log is finite.
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
}

} // namespace detail

namespace {

// Per-run constants and per-step coefficient tables, precomputed once so the
// path loop is arithmetic only.
struct Engine {
    int n_steps = 0;
    double dt = 0.0;
    double theta0 = 0.0, v0 = 0.0, sqrt_v0 = 0.0, sqrt_T = 0.0, inv_gamma = 0.0;
    bool zero_weight = false;
    std::vector<double> tgrid;          // t_k
    std::vector<double> filt_denom;     // 1/(1 + v0 t_k)
    std::vector<double> rational_mult;  // hedging multiplier at t_k
    std::vector<double> bridge_a;       // dt/(T - t_k)
    std::vector<double> bridge_b;       // sqrt(dt (T - t_k - dt)/(T - t_k))
};

Engine make_engine(const MarketParams& mkt, const InvestorProfile& prof,
                   const McConfig& cfg) {
    Engine e;
    const double T = prof.horizon;
    const double gamma = prof.gamma;
    std::int64_t n = std::llround(static_cast<double>(cfg.steps_per_year) * T);
    if (n < 1) n = 1;
    e.n_steps = static_cast<int>(n);
    e.dt = T / static_cast<double>(n);
    e.theta0 = mkt.theta0;
    e.v0 = mkt.v0;
    e.sqrt_v0 = std::sqrt(mkt.v0);
    e.sqrt_T = std::sqrt(T);
    e.inv_gamma = 1.0 / gamma;
    e.zero_weight = cfg.force_zero_weight;
    e.tgrid.resize(e.n_steps);
    e.filt_denom.resize(e.n_steps);
    e.rational_mult.resize(e.n_steps);
    e.bridge_a.resize(e.n_steps);
    e.bridge_b.resize(e.n_steps);
    const double den = gamma + (gamma - 1.0) * mkt.v0 * T;
    for (int k = 0; k < e.n_steps; ++k) {
        const double t = e.dt * static_cast<double>(k);
        const double rem = T - t;
        e.tgrid[k] = t;
        e.filt_denom[k] = 1.0 / (1.0 + mkt.v0 * t);
        e.rational_mult[k] = 1.0 + (1.0 - gamma) * rem * mkt.v0 / (den + mkt.v0 * t);
        e.bridge_a[k] = e.dt / rem;
        const double tail = rem - e.dt;
        e.bridge_b[k] = std::sqrt(e.dt * (tail > 0.0 ? tail : 0.0) / rem);
    }
    return e;
}

// Strategy-driven part of log terminal wealth for all four types on one path;
// the type-independent ln(x0) + r T is added by the caller. `sign` = -1 runs
// the antithetic mirror of the stream.
std::array<double, 4> run_one(detail::PathRng& rng, double sign, const Engine& e) {
    if (e.zero_weight) return {0.0, 0.0, 0.0, 0.0};
    const double theta = e.theta0 + e.sqrt_v0 * (sign * rng.next_normal());
    const double w_end = e.sqrt_T * (sign * rng.next_normal());
    const double a_u = e.theta0 * e.inv_gamma;  // sigma times portfolio weight
    const double a_i = theta * e.inv_gamma;
    const double drift_u = a_u * theta - 0.5 * a_u * a_u;
    const double drift_i = a_i * theta - 0.5 * a_i * a_i;
    double w = 0.0;
    double su = 0.0, sm = 0.0, sr = 0.0, si = 0.0;
    for (int k = 0; k < e.n_steps; ++k) {
        const double y = theta * e.tgrid[k] + w;
        const double theta_hat = (e.theta0 + e.v0 * y) * e.filt_denom[k];
        const double a_m = theta_hat * e.inv_gamma;
        const double a_r = a_m * e.rational_mult[k];
        double dw;
        if (k + 1 == e.n_steps) {
            dw = w_end - w;
            w = w_end;
        } else {
            const double z = sign * rng.next_normal();
            const double w_next = w + (w_end - w) * e.bridge_a[k] + e.bridge_b[k] * z;
            dw = w_next - w;
            w = w_next;
        }
        su += drift_u * e.dt + a_u * dw;
        sm += (a_m * theta - 0.5 * a_m * a_m) * e.dt + a_m * dw;
        sr += (a_r * theta - 0.5 * a_r * a_r) * e.dt + a_r * dw;
        si += drift_i * e.dt + a_i * dw;
    }
    return {su, sm, sr, si};
}

} // namespace

McRun simulate_all(double x0, const MarketParams& mkt, const InvestorProfile& prof,
                   const McConfig& cfg) {
    mkt.validate();
    prof.validate();
    cfg.validate();
    if (x0 <= 0.0) throw NonpositiveWealth("initial wealth must be positive");
    if (prof.horizon <= 0.0) throw ZeroHorizon("simulation requires T > 0");
    require_feasible(mkt, prof);

    const Engine engine = make_engine(mkt, prof, cfg);
    const bool log_util = detail::is_log_gamma(prof.gamma);
    const double eps = 1.0 - prof.gamma;
    const double base = std::log(x0) + mkt.r * prof.horizon;
    const std::int64_t n_samples = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;

    std::array<std::vector<double>, 4> samples;
    for (auto& v : samples) v.resize(static_cast<std::size_t>(n_samples));

    const auto to_utility = [&](double strategy_part) {
        const double lnx = base + strategy_part;
        return log_util ? lnx : std::exp(eps * lnx) / eps;
    };
    const auto worker = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t s = lo; s < hi; ++s) {
            if (cfg.antithetic) {
                detail::PathRng rng_a(cfg.seed, static_cast<std::uint64_t>(2 * s));
                detail::PathRng rng_b(cfg.seed, static_cast<std::uint64_t>(2 * s));
                const auto pa = run_one(rng_a, +1.0, engine);
                const auto pb = run_one(rng_b, -1.0, engine);
                for (int k = 0; k < 4; ++k) {
                    samples[k][static_cast<std::size_t>(s)] =
                        0.5 * (to_utility(pa[k]) + to_utility(pb[k]));
                }
            } else {
                detail::PathRng rng(cfg.seed, static_cast<std::uint64_t>(s));
                const auto p = run_one(rng, +1.0, engine);
                for (int k = 0; k < 4; ++k) {
                    samples[k][static_cast<std::size_t>(s)] = to_utility(p[k]);
                }
            }
        }
    };

    if (cfg.n_threads == 1 || n_samples < 2 * cfg.n_threads) {
        worker(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (n_samples + cfg.n_threads - 1) / cfg.n_threads;
        for (int t = 0; t < cfg.n_threads; ++t) {
            const std::int64_t lo = t * chunk;
            const std::int64_t hi = std::min<std::int64_t>(n_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Reductions run serially in index order so results do not depend on the
    // thread count.
    McRun run;
    run.n_samples = n_samples;
    std::array<double, 4> mean{};
    for (int k = 0; k < 4; ++k) {
        // Accumulate deviations from the first sample: exact when all samples
        // coincide (the forced zero-weight mode) and better conditioned in
        // general, since utilities cluster tightly around their mean.
        const double center = samples[k][0];
        double acc = 0.0;
        for (std::int64_t s = 0; s < n_samples; ++s) {
            acc += samples[k][static_cast<std::size_t>(s)] - center;
        }
        mean[k] = center + acc / static_cast<double>(n_samples);
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            double acc = 0.0;
            for (std::int64_t s = 0; s < n_samples; ++s) {
                acc += (samples[i][static_cast<std::size_t>(s)] - mean[i]) *
                       (samples[j][static_cast<std::size_t>(s)] - mean[j]);
            }
            const double cov = n_samples > 1 ? acc / static_cast<double>(n_samples - 1) : 0.0;
            run.covariance[i][j] = cov;
            run.covariance[j][i] = cov;
        }
    }
    for (int k = 0; k < 4; ++k) {
        McEstimate& est = run.estimates[k];
        est.mean = mean[k];
        est.n_samples = n_samples;
        est.std_error = std::sqrt(run.covariance[k][k] / static_cast<double>(n_samples));
        est.certainty_equivalent =
            log_util ? std::exp(mean[k]) : std::exp(std::log(eps * mean[k]) / eps);
    }
    return run;
}

McEstimate simulate_value(InvestorType type, double x0, const MarketParams& mkt,
                          const InvestorProfile& prof, const McConfig& cfg) {
    return simulate_all(x0, mkt, prof, cfg).estimates[static_cast<std::size_t>(type_rank(type))];
}

McCost cost_from_run(const McRun& run, CostPair pair, const InvestorProfile& prof) {
    pair.validate();
    const int i = type_rank(pair.from);
    const int j = type_rank(pair.to);
    if (i == j) return {0.0, 0.0};
    const double mi = run.estimates[static_cast<std::size_t>(i)].mean;
    const double mj = run.estimates[static_cast<std::size_t>(j)].mean;
    const double n = static_cast<double>(run.n_samples);
    const double cii = run.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    const double cjj = run.covariance[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    const double cij = run.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    double log1mc;      // estimate of log(1 - C)
    double var_log1mc;  // its delta-method variance
    if (detail::is_log_gamma(prof.gamma)) {
        log1mc = mi - mj;
        var_log1mc = (cii + cjj - 2.0 * cij) / n;
    } else {
        const double eps = 1.0 - prof.gamma;
        log1mc = std::log(mi / mj) / eps;
        var_log1mc = (cii / (mi * mi) + cjj / (mj * mj) - 2.0 * cij / (mi * mj)) / (n * eps * eps);
    }
    McCost out;
    out.estimate = -std::expm1(log1mc);
    out.std_error = std::exp(log1mc) * std::sqrt(var_log1mc);
    return out;
}

McCost simulate_cost(CostPair pair, double x0, const MarketParams& mkt,
                     const InvestorProfile& prof, const McConfig& cfg) {
    return cost_from_run(simulate_all(x0, mkt, prof, cfg), pair, prof);
}

FilterDiagnostics filter_consistency_run(double t, const MarketParams& mkt,
                                         std::int64_t n_samples, std::uint64_t seed) {
    mkt.validate();
    if (t < 0.0) throw TimeOutOfRange("time must be nonnegative");
    if (n_samples < 3) throw std::invalid_argument("need at least 3 samples");
    // Exact joint draw of (market price of risk, its observation at time t);
    // no time grid is involved.
    const double sqrt_v0 = std::sqrt(mkt.v0);
    const double sqrt_t = std::sqrt(t);
    const double denom = 1.0 / (1.0 + mkt.v0 * t);
    std::vector<double> est(static_cast<std::size_t>(n_samples));
    std::vector<double> resid(static_cast<std::size_t>(n_samples));
    for (std::int64_t s = 0; s < n_samples; ++s) {
        detail::PathRng rng(seed, static_cast<std::uint64_t>(s));
        const double theta = mkt.theta0 + sqrt_v0 * rng.next_normal();
        const double y = theta * t + sqrt_t * rng.next_normal();
        const double theta_hat = (mkt.theta0 + mkt.v0 * y) * denom;
        est[static_cast<std::size_t>(s)] = theta_hat;
        resid[static_cast<std::size_t>(s)] = theta - theta_hat;
    }
    const double n = static_cast<double>(n_samples);
    double mean_x = 0.0, mean_e = 0.0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        mean_x += est[static_cast<std::size_t>(s)];
        mean_e += resid[static_cast<std::size_t>(s)];
    }
    mean_x /= n;
    mean_e /= n;
    double sxx = 0.0, sxy = 0.0, see = 0.0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const double dx = est[static_cast<std::size_t>(s)] - mean_x;
        const double de = resid[static_cast<std::size_t>(s)] - mean_e;
        sxx += dx * dx;
        sxy += dx * de;
        see += de * de;
    }
    FilterDiagnostics d;
    d.n_samples = n_samples;
    d.slope = sxy / sxx;
    d.intercept = mean_e - d.slope * mean_x;
    double rss = 0.0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const double fit = d.intercept + d.slope * est[static_cast<std::size_t>(s)];
        const double u = resid[static_cast<std::size_t>(s)] - fit;
        rss += u * u;
    }
    const double sigma2 = rss / (n - 2.0);
    d.slope_se = std::sqrt(sigma2 / sxx);
    d.intercept_se = std::sqrt(sigma2 * (1.0 / n + mean_x * mean_x / sxx));
    d.residual_var = see / (n - 1.0);
    d.expected_residual_var = mkt.v0 * denom;
    return d;
}

} // namespace infocost
