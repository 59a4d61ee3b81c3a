// Acceptance harness: nine independent end-to-end checks, one PASS/FAIL line
// each, nonzero exit if any check fails. Each check runs inside its own
// try/catch so a thrown exception fails that check alone.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infocost/costs.hpp"
#include "infocost/mc.hpp"
#include "infocost/model.hpp"
#include "infocost/report.hpp"
#include "oracles.hpp"
#include "reference_tables.inc"

using namespace infocost;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int g_failures = 0;

template <typename Fn>
void run_check(int id, const char* label, Fn&& fn) {
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s%s%s\n", out.pass ? "PASS" : "FAIL", id, label,
                out.detail.empty() ? "" : " — ", out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Measures one computed table against its printed reference, in percentage
// points. Reports the worst deviation over the four cost columns and,
// separately, over the printed error column (whose reference was derived from
// already-rounded cells and therefore gets a looser tolerance).
struct TableDeviation {
    double worst_cost = 0.0;
    double worst_err = 0.0;
    std::string where_cost;
    std::string where_err;
    int cost_cells = 0;
};

TableDeviation measure_printed_table(CostKind kind, const PrintedRow* rows, size_t n_rows) {
    TableDeviation dev;
    auto note = [](double candidate, double& worst, std::string& where, double gamma, double T,
                   double sigma, const char* col) {
        if (candidate > worst) {
            worst = candidate;
            std::ostringstream w;
            w << col << " at gamma=" << gamma << " T=" << T << " sigma=" << sigma;
            where = w.str();
        }
    };
    for (size_t i = 0; i < n_rows; ++i) {
        const PrintedRow& ref = rows[i];
        for (double sigma : {kBaseSigma, kAltSigma}) {
            const double* printed = sigma == kBaseSigma ? ref.base : ref.alt;
            const TableRow got = make_table_row(kind, ref.gamma, ref.horizon, sigma);
            const double cols[4] = {got.c_um, got.c_mr, got.c_ri, got.c_ui};
            static constexpr const char* names[4] = {"C_UM", "C_MR", "C_RI", "C_UI"};
            for (int c = 0; c < 4; ++c) {
                note(std::fabs(100.0 * cols[c] - printed[c]), dev.worst_cost, dev.where_cost,
                     ref.gamma, ref.horizon, sigma, names[c]);
                ++dev.cost_cells;
            }
            note(std::fabs(100.0 * std::fabs(got.err) - printed[4]), dev.worst_err, dev.where_err,
                 ref.gamma, ref.horizon, sigma, "|E|");
        }
    }
    return dev;
}

Outcome criterion_table_cumulated() {
    const auto t0 = std::chrono::steady_clock::now();
    const TableDeviation dev =
        measure_printed_table(CostKind::Cumulated, kPrintedCumulated, std::size(kPrintedCumulated));
    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = dev.worst_cost <= 0.01 + 1e-12 && elapsed < 1.0;
    std::ostringstream d;
    d << dev.cost_cells << " cost cells, worst deviation " << dev.worst_cost << " pp ("
      << dev.where_cost << "), tol 0.01; built in " << elapsed << " s";
    out.detail = d.str();
    return out;
}

Outcome criterion_table_annual() {
    const auto t0 = std::chrono::steady_clock::now();
    const TableDeviation ann =
        measure_printed_table(CostKind::Annual, kPrintedAnnual, std::size(kPrintedAnnual));
    const TableDeviation cum =
        measure_printed_table(CostKind::Cumulated, kPrintedCumulated, std::size(kPrintedCumulated));
    const double elapsed = seconds_since(t0);
    Outcome out;
    // The printed error columns of both tables follow their rounded cells, so
    // they carry the rounding-aware 0.02 tolerance.
    out.pass = ann.worst_cost <= 0.01 + 1e-12 && ann.worst_err <= 0.02 + 1e-12 &&
               cum.worst_err <= 0.02 + 1e-12 && elapsed < 1.0;
    std::ostringstream d;
    d << ann.cost_cells << " cost cells, worst deviation " << ann.worst_cost << " pp ("
      << ann.where_cost << "), tol 0.01; error columns: annual " << ann.worst_err
      << " pp, cumulated " << cum.worst_err << " pp, tol 0.02; built in " << elapsed << " s";
    out.detail = d.str();
    return out;
}

Outcome criterion_decomposition_bridge() {
    std::mt19937_64 rng(20260817);
    const CostPair um{InvestorType::Unconditional, InvestorType::Myopic};
    const CostPair mr{InvestorType::Myopic, InvestorType::Rational};
    const CostPair ri{InvestorType::Rational, InvestorType::Informed};
    const CostPair ui{InvestorType::Unconditional, InvestorType::Informed};
    double worst_dec = 0.0, worst_bridge = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const testutil::GridSample s = testutil::sample_feasible(rng);
        const double cum_um = cumulated_cost(um, s.mkt, s.prof);
        const double cum_mr = cumulated_cost(mr, s.mkt, s.prof);
        const double cum_ri = cumulated_cost(ri, s.mkt, s.prof);
        const double cum_ui = cumulated_cost(ui, s.mkt, s.prof);
        worst_dec = std::max(
            worst_dec,
            std::fabs(cum_ui - (1.0 - (1.0 - cum_um) * (1.0 - cum_mr) * (1.0 - cum_ri))));
        // Annualization bridge c = 1 - (1 - C)^{1/T}, checked directly where
        // the reconstruction is well conditioned (1 - C not yet collapsing
        // toward the spacing of doubles near 1) and, everywhere, in the
        // algebraically identical surviving-wealth form (1 - c)^T = 1 - C.
        for (const CostPair pair : {um, mr, ri, ui}) {
            const double c = cumulated_cost(pair, s.mkt, s.prof);
            const double ann = annual_cost(pair, s.mkt, s.prof);
            if (c <= 1.0 - 1e-4) {
                worst_bridge = std::max(
                    worst_bridge,
                    std::fabs(ann - (1.0 - std::pow(1.0 - c, 1.0 / s.prof.horizon))));
            }
            worst_bridge = std::max(
                worst_bridge, std::fabs(std::pow(1.0 - ann, s.prof.horizon) - (1.0 - c)));
        }
    }
    Outcome out;
    out.pass = worst_dec <= 1e-12 && worst_bridge <= 1e-12;
    std::ostringstream d;
    d << "1000 draws: max multiplicative-identity gap " << worst_dec
      << ", max annualization gap " << worst_bridge << " (tolerance 1e-12)";
    out.detail = d.str();
    return out;
}

Outcome criterion_wealth_equivalence() {
    std::mt19937_64 rng(31);
    const CostPair pairs[] = {
        {InvestorType::Unconditional, InvestorType::Myopic},
        {InvestorType::Myopic, InvestorType::Rational},
        {InvestorType::Rational, InvestorType::Informed},
    };
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const testutil::GridSample s = testutil::sample_feasible(rng);
        for (const CostPair pair : pairs) {
            const double c = cumulated_cost(pair, s.mkt, s.prof);
            for (double x : {0.5, 1.0, 7.0}) {
                const double lhs = value(pair.from, x, s.mkt, s.prof);
                const double rhs = value(pair.to, x * (1.0 - c), s.mkt, s.prof);
                worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(lhs));
            }
        }
    }
    Outcome out;
    out.pass = worst <= 1e-10;
    std::ostringstream d;
    d << "200 draws x 3 pairs x 3 wealth levels: max relative gap " << worst
      << " (tolerance 1e-10)";
    out.detail = d.str();
    return out;
}

Outcome criterion_asymptotics() {
    const MarketParams mkt = calibrated_market(kBaseSigma);
    const CostPair um{InvestorType::Unconditional, InvestorType::Myopic};
    const CostPair ri{InvestorType::Rational, InvestorType::Informed};
    const double T = 1e-3;
    double worst_um = 0.0, worst_ri = 0.0, worst_ann = 0.0;
    for (double gamma : {0.8, 1.0, 2.0, 3.0, 6.0, 11.0}) {
        const InvestorProfile prof{gamma, T};
        const double lead_um = mkt.v0 * mkt.v0 * T * T / (4.0 * gamma);
        const double lead_ri = mkt.v0 * T / (2.0 * gamma);
        worst_um = std::max(worst_um,
                            std::fabs(cumulated_cost(um, mkt, prof) / lead_um - 1.0));
        worst_ri = std::max(worst_ri,
                            std::fabs(cumulated_cost(ri, mkt, prof) / lead_ri - 1.0));
        const double ann_limit = -std::expm1(-mkt.v0 / (2.0 * gamma));
        worst_ann = std::max(worst_ann,
                             std::fabs(annual_cost(ri, mkt, prof) / ann_limit - 1.0));
    }
    const double long_run = cumulated_cost(ri, mkt, InvestorProfile{4.0, 1e5});
    const double long_gap = std::fabs(long_run - (1.0 - std::sqrt(0.75)));
    Outcome out;
    out.pass = worst_um <= 0.05 && worst_ri <= 0.05 && worst_ann <= 0.01 && long_gap <= 1e-3;
    std::ostringstream d;
    d << "short-horizon rel gaps: C_UM " << worst_um << ", C_RI " << worst_ri << " (tol 0.05), "
      << "annual c_RI " << worst_ann << " (tol 0.01); long-horizon C_RI gap " << long_gap
      << " (tol 1e-3)";
    out.detail = d.str();
    return out;
}

Outcome criterion_ode_pde() {
    const MarketParams mkt = calibrated_market(kBaseSigma);
    double worst_ode = 0.0;
    for (double gamma : {0.8, 3.0}) {
        const InvestorProfile prof{gamma, 10.0};
        worst_ode = std::max(worst_ode, testutil::ode_residual_rational(mkt, prof, 10000));
        worst_ode = std::max(worst_ode, testutil::ode_residual_myopic(mkt, prof, 10000));
        worst_ode = std::max(worst_ode, testutil::ode_residual_unconditional(mkt, prof, 10000));
    }
    double worst_pde = 0.0;
    const InvestorProfile p3{3.0, 10.0};
    const InvestorProfile p08{0.8, 10.0};
    for (double y : {-0.5, 0.3, 1.0}) {
        worst_pde = std::max(worst_pde, testutil::pde_residual(InvestorType::Rational, 5.0, y,
                                                               mkt, p3, 1e-4));
        worst_pde = std::max(worst_pde, testutil::pde_residual(InvestorType::Rational, 10.0 / 3.0,
                                                               y, mkt, p08, 1e-4));
    }
    Outcome out;
    out.pass = worst_ode <= 1e-8 && worst_pde <= 1e-6;
    std::ostringstream d;
    d << "max ODE residual " << worst_ode << " over 3 systems x 2 gammas x 10000 points "
      << "(tol 1e-8); max PDE residual " << worst_pde << " (tol 1e-6)";
    out.detail = d.str();
    return out;
}

Outcome criterion_monte_carlo() {
    const auto t0 = std::chrono::steady_clock::now();
    const MarketParams mkt = calibrated_market(kBaseSigma);
    McConfig cfg;
    cfg.n_paths = 200000;
    cfg.steps_per_year = 100;
    cfg.seed = 20260817;
    struct Case {
        double gamma;
        double horizon;
    };
    const Case cases[] = {{1.0, 10.0}, {3.0, 5.0}, {6.0, 10.0}, {0.8, 5.0}};
    double worst_z = 0.0, worst_ce = 0.0;
    bool ok = true;
    std::ostringstream d;
    for (const Case cs : cases) {
        const InvestorProfile prof{cs.gamma, cs.horizon};
        const McRun run = simulate_all(1.0, mkt, prof, cfg);
        for (const InvestorType type :
             {InvestorType::Unconditional, InvestorType::Myopic, InvestorType::Rational,
              InvestorType::Informed}) {
            const McEstimate& est = run.estimates[type_rank(type)];
            const double truth = value(type, 1.0, mkt, prof);
            const double z = (est.mean - truth) / est.std_error;
            const double ce_truth = certainty_equivalent(type, 1.0, mkt, prof);
            const double ce_rel = std::fabs(est.certainty_equivalent - ce_truth) / ce_truth;
            worst_z = std::max(worst_z, std::fabs(z));
            worst_ce = std::max(worst_ce, ce_rel);
            if (std::fabs(z) > 3.0 || ce_rel > 0.005) {
                ok = false;
                d << " [gamma=" << cs.gamma << " T=" << cs.horizon << " type="
                  << type_name(type) << " z=" << z << " ce_rel=" << ce_rel << "]";
            }
        }
    }
    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = ok && elapsed < 120.0;
    std::ostringstream head;
    head << "4 configurations x 200000 paths: max |z| " << worst_z
         << " (tol 3), max CE relative error " << worst_ce << " (tol 0.005), " << elapsed
         << " s (limit 120)";
    out.detail = head.str() + d.str();
    return out;
}

Outcome criterion_log_continuity() {
    // Checks the power-utility value against the log-investor value at
    // gamma = 1 +/- 1e-4 after removing the 1/(1-gamma) constant. The gap is
    // first order in |gamma - 1| (about 1.7e-4 here), so the 1e-6 target
    // documents the convergence rate; it is not attainable at this offset.
    const MarketParams mkt = calibrated_market(kBaseSigma);
    double worst = 0.0;
    std::ostringstream d;
    d.precision(3);
    for (double gamma : {1.0 - 1e-4, 1.0 + 1e-4}) {
        const InvestorProfile prof{gamma, 10.0};
        const InvestorProfile log_prof{1.0, 10.0};
        d << (gamma < 1.0 ? " [gamma=1-1e-4:" : " [gamma=1+1e-4:");
        for (const InvestorType type :
             {InvestorType::Unconditional, InvestorType::Myopic, InvestorType::Rational,
              InvestorType::Informed}) {
            const double power = value(type, 1.0, mkt, prof);
            const double shifted = power - 1.0 / (1.0 - gamma);
            const double log_ref = log_investor_value(type, 1.0, mkt, log_prof);
            const double gap = std::fabs(shifted - log_ref);
            worst = std::max(worst, gap);
            d << " " << type_name(type) << "=" << gap;
        }
        d << "]";
    }
    Outcome out;
    out.pass = worst <= 1e-6;
    std::ostringstream head;
    head << "max |(V_gamma - (1-gamma)^{-1}) - V_log| = " << worst << " (tol 1e-6);";
    out.detail = head.str() + d.str();
    return out;
}

Outcome criterion_global_sanity() {
    std::mt19937_64 rng(57);
    double worst_order = 0.0;
    bool in_range = true;
    int saturated = 0;
    // Within a thin band above the critical risk aversion the mathematically
    // sub-unit cumulated cost can round to exactly 1.0 in double precision
    // (the survivor 1 - C falls below the spacing of doubles near 1). The
    // strict upper bound is enforced outside that band; inside it, an exact
    // 1.0 is accepted as boundary saturation and counted.
    constexpr double kCriticalBand = 0.05;
    for (int i = 0; i < 10000; ++i) {
        const testutil::GridSample s = testutil::sample_feasible(rng);
        const double vu = value(InvestorType::Unconditional, 1.0, s.mkt, s.prof);
        const double vm = value(InvestorType::Myopic, 1.0, s.mkt, s.prof);
        const double vr = value(InvestorType::Rational, 1.0, s.mkt, s.prof);
        const double vi = value(InvestorType::Informed, 1.0, s.mkt, s.prof);
        const double scale = std::max({std::fabs(vu), std::fabs(vm), std::fabs(vr),
                                       std::fabs(vi)});
        worst_order = std::max({worst_order, (vu - vm) / scale, (vm - vr) / scale,
                                (vr - vi) / scale});
        const bool near_critical =
            s.prof.gamma - gamma_bar(s.mkt.v0, s.prof.horizon) <= kCriticalBand;
        for (const CostKind kind : {CostKind::Cumulated, CostKind::Annual}) {
            const CostReport rep = cost_report(kind, s.mkt, s.prof);
            for (double c : {rep.c_um, rep.c_mr, rep.c_ri, rep.c_ui}) {
                if (c == 1.0 && near_critical) {
                    ++saturated;
                    continue;
                }
                in_range = in_range && c >= 0.0 && c < 1.0;
            }
        }
    }
    // A log investor never pays for hedging information it would not use.
    const MarketParams mkt = calibrated_market(kBaseSigma);
    const CostPair mr{InvestorType::Myopic, InvestorType::Rational};
    bool log_zero = true;
    for (double T : {0.5, 5.0, 17.0, 30.0}) {
        log_zero = log_zero && cumulated_cost(mr, mkt, InvestorProfile{1.0, T}) == 0.0 &&
                   annual_cost(mr, mkt, InvestorProfile{1.0, T}) == 0.0;
    }
    Outcome out;
    out.pass = worst_order <= 1e-12 && in_range && log_zero;
    std::ostringstream d;
    d << "10000 draws: worst ordering violation " << worst_order
      << " (tol 1e-12, relative); costs in [0,1): " << (in_range ? "yes" : "NO") << " ("
      << saturated << " near-critical cells saturated at 1.0)"
      << "; learning cost exactly zero for log investor: " << (log_zero ? "yes" : "NO");
    out.detail = d.str();
    return out;
}

} // namespace

int main() {
    std::printf("acceptance checks for the investor-information welfare library\n");
    run_check(1, "cumulated cost table matches the printed reference",
              criterion_table_cumulated);
    run_check(2, "annual cost table matches the printed reference", criterion_table_annual);
    run_check(3, "multiplicative decomposition and annualization bridge",
              criterion_decomposition_bridge);
    run_check(4, "cost equals the equivalent wealth give-up", criterion_wealth_equivalence);
    run_check(5, "short- and long-horizon asymptotics", criterion_asymptotics);
    run_check(6, "value exponents solve their ODE systems and the pricing PDE",
              criterion_ode_pde);
    run_check(7, "Monte Carlo oracle confirms every closed form", criterion_monte_carlo);
    run_check(8, "power-to-log continuity at gamma near 1", criterion_log_continuity);
    run_check(9, "global ordering, cost range, and log-investor invariants",
              criterion_global_sanity);
    if (g_failures == 0) {
        std::printf("all 9 acceptance checks passed\n");
        return 0;
    }
    std::printf("%d of 9 acceptance checks failed\n", g_failures);
    return 1;
}
