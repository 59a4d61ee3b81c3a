// Command-line front end: closed-form investor values, welfare-cost tables and
// figure series, and Monte Carlo cross-checks of the closed forms.
//
// Exit codes: 0 success; 2 bad input (parse error or infeasible parameters);
// 3 Monte Carlo disagreement (some |z| > 4); 1 unexpected failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infocost/mc.hpp"
#include "infocost/model.hpp"
#include "infocost/report.hpp"

namespace {

using nlohmann::json;
using namespace infocost;

struct Options {
    double gamma = 1.0;
    double horizon = 10.0;
    double sigma = kBaseSigma;
    std::optional<double> theta0;
    std::optional<double> v0;
    std::optional<double> r;
    bool wide_prior = false;
    double x = 1.0;
    std::string kind = "cumulated";
    std::int64_t paths = 200000;
    int steps_per_year = 100;
    std::uint64_t seed = 20260817;
    std::string out;
    std::string format;  // "", "csv", "json"
};

MarketParams market_from(const Options& o) {
    MarketParams mkt = calibrated_market(o.sigma, o.wide_prior);
    if (o.theta0) mkt.theta0 = *o.theta0;
    if (o.v0) mkt.v0 = *o.v0;
    if (o.r) mkt.r = *o.r;
    mkt.validate();
    return mkt;
}

CostKind kind_from(const std::string& name) {
    if (name == "cumulated") return CostKind::Cumulated;
    if (name == "annual") return CostKind::Annual;
    throw std::invalid_argument("kind must be 'cumulated' or 'annual'");
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + o.out);
    file << text;
}

json row_to_json(const TableRow& r) {
    return json{{"gamma", r.gamma},   {"T", r.horizon}, {"sigma", r.sigma},
                {"kind", cost_kind_name(r.kind)},       {"c_UM", r.c_um},
                {"c_MR", r.c_mr},     {"c_RI", r.c_ri}, {"c_UI", r.c_ui},
                {"err", r.err}};
}

CostPair pair_from(const std::string& name) {
    if (name.size() != 2) throw std::invalid_argument("pair must be two letters, e.g. UM");
    return CostPair{type_from_name(name.substr(0, 1)), type_from_name(name.substr(1, 1))};
}

int run_value(const Options& o, const std::string& type_arg) {
    const InvestorType type = type_from_name(type_arg);
    const MarketParams mkt = market_from(o);
    const InvestorProfile prof{o.gamma, o.horizon};
    const double v = value(type, o.x, mkt, prof);
    const double ce = certainty_equivalent(type, o.x, mkt, prof);
    if (o.format == "json") {
        emit(o, json{{"type", type_name(type)},
                     {"gamma", o.gamma},
                     {"T", o.horizon},
                     {"x", o.x},
                     {"value", v},
                     {"certainty_equivalent", ce}}
                    .dump(2));
    } else {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "type=%s gamma=%s T=%s x=%s value=%s certainty_equivalent=%s",
                      type_name(type), format_shortest(o.gamma).c_str(),
                      format_shortest(o.horizon).c_str(), format_shortest(o.x).c_str(),
                      format_shortest(v).c_str(), format_shortest(ce).c_str());
        emit(o, buf);
    }
    return 0;
}

int run_cost(const Options& o, CostKind kind, const std::string& pair_name) {
    const MarketParams mkt = market_from(o);
    const InvestorProfile prof{o.gamma, o.horizon};
    if (!pair_name.empty()) {
        const CostPair pair = pair_from(pair_name);
        const double c = kind == CostKind::Cumulated ? cumulated_cost(pair, mkt, prof)
                                                     : annual_cost(pair, mkt, prof);
        if (o.format == "json") {
            emit(o, json{{"pair", pair_name},
                         {"kind", cost_kind_name(kind)},
                         {"gamma", o.gamma},
                         {"T", o.horizon},
                         {"cost", c},
                         {"percent", format_percent(c)}}
                        .dump(2));
        } else {
            emit(o, "cost[" + pair_name + "] = " + format_percent(c) + "% (" +
                        format_shortest(c) + ")");
        }
        return 0;
    }
    const CostReport rep = cost_report(kind, mkt, prof);
    TableRow row;
    row.gamma = o.gamma;
    row.horizon = o.horizon;
    row.sigma = mkt.sigma;
    row.kind = kind;
    row.c_um = rep.c_um;
    row.c_mr = rep.c_mr;
    row.c_ri = rep.c_ri;
    row.c_ui = rep.c_ui;
    row.err = rep.approx_error;
    if (o.format == "json") {
        emit(o, row_to_json(row).dump(2));
    } else if (o.format == "csv") {
        emit(o, rows_to_csv({row}));
    } else {
        emit(o, rows_to_human({row}));
    }
    return 0;
}

int run_table(const Options& o, int which, const std::vector<double>& extra_horizons,
              bool sigma_given, bool kind_given) {
    CostKind kind = which == 2 ? CostKind::Annual : CostKind::Cumulated;
    if (kind_given) kind = kind_from(o.kind);
    const double only_sigma = sigma_given ? o.sigma : 0.0;
    const auto rows = cost_table(kind, extra_horizons, o.wide_prior, only_sigma);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(row_to_json(r));
        emit(o, arr.dump(2));
    } else if (o.format == "human") {
        emit(o, rows_to_human(rows));
    } else {
        emit(o, rows_to_csv(rows));
    }
    return 0;
}

int run_figure(const Options& o, const std::string& figure, int density, bool sigma_given) {
    FigureRequest req;
    if (!parse_figure_name(figure, req.geometry, req.kind)) {
        throw std::invalid_argument(
            "unknown figure '" + figure +
            "'; expected costs-vs-T, costs-vs-T-long, costs-vs-gamma or an annual- variant");
    }
    req.sigma = sigma_given ? o.sigma : kBaseSigma;
    req.wide_prior = o.wide_prior;
    req.density = density;
    const auto series = figure_data(req);
    for (const auto& s : series) {
        for (const auto& note : s.skipped) {
            std::cerr << "skipped: " << note << '\n';
        }
    }
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& s : series) {
            json pts = json::array();
            for (const auto& p : s.points) {
                json obj = row_to_json(p.row);
                obj["share_UM"] = p.share_um;
                obj["share_MR"] = p.share_mr;
                obj["share_RI"] = p.share_ri;
                pts.push_back(std::move(obj));
            }
            arr.push_back(json{{"label", s.label}, {"points", std::move(pts)},
                               {"skipped", s.skipped}});
        }
        emit(o, arr.dump(2));
    } else {
        emit(o, figures_to_csv(series));
    }
    return 0;
}

int run_mc_check(const Options& o, bool sanity_zero, bool antithetic, int threads) {
    const MarketParams mkt = market_from(o);
    const InvestorProfile prof{o.gamma, o.horizon};
    McConfig cfg;
    cfg.n_paths = o.paths;
    cfg.steps_per_year = o.steps_per_year;
    cfg.seed = o.seed;
    cfg.antithetic = antithetic;
    cfg.n_threads = threads;
    cfg.force_zero_weight = sanity_zero;
    const McRun run = simulate_all(o.x, mkt, prof, cfg);

    const bool log_util = detail::is_log_gamma(prof.gamma);
    const double eps = 1.0 - prof.gamma;
    // Reference value under a forced zero weight: sure wealth x*exp(rT),
    // written exactly as the simulator writes it so the match is bitwise.
    const double zero_weight_value =
        log_util ? std::log(o.x) + mkt.r * prof.horizon
                 : std::exp(eps * (std::log(o.x) + mkt.r * prof.horizon)) / eps;

    double max_abs_z = 0.0;
    json arr = json::array();
    std::string text;
    char buf[320];
    static constexpr InvestorType kTypes[] = {InvestorType::Unconditional, InvestorType::Myopic,
                                              InvestorType::Rational, InvestorType::Informed};
    for (const InvestorType type : kTypes) {
        const double closed = sanity_zero ? zero_weight_value : value(type, o.x, mkt, prof);
        const double ce_closed =
            sanity_zero ? o.x * std::exp(mkt.r * prof.horizon)
                        : certainty_equivalent(type, o.x, mkt, prof);
        const McEstimate& est = run.estimates[static_cast<std::size_t>(type_rank(type))];
        const double diff = est.mean - closed;
        const double z = diff == 0.0 ? 0.0 : diff / est.std_error;
        const double ce_rel = std::fabs(est.certainty_equivalent - ce_closed) / ce_closed;
        if (std::fabs(z) > max_abs_z) max_abs_z = std::fabs(z);
        arr.push_back(json{{"type", type_name(type)},
                           {"closed_form", closed},
                           {"mc_mean", est.mean},
                           {"mc_se", est.std_error},
                           {"z_score", z},
                           {"ce_closed", ce_closed},
                           {"ce_mc", est.certainty_equivalent},
                           {"ce_rel_error", ce_rel}});
        std::snprintf(buf, sizeof(buf),
                      "type=%s closed=%.10g mc=%.10g se=%.3g z=%+.3f ce_rel_err=%.3e\n",
                      type_name(type), closed, est.mean, est.std_error, z, ce_rel);
        text += buf;
    }
    std::snprintf(buf, sizeof(buf), "n_samples=%lld max|z|=%.3f\n",
                  static_cast<long long>(run.n_samples), max_abs_z);
    text += buf;
    if (o.format == "json") {
        emit(o, json{{"results", std::move(arr)}, {"max_abs_z", max_abs_z}}.dump(2));
    } else {
        emit(o, text);
    }
    return max_abs_z > 4.0 ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form investor values and welfare costs of information "
                 "constraints, with a Monte Carlo cross-check"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read defaults from a key=value file");

    Options o;
    app.add_option("--gamma", o.gamma, "Relative risk aversion");
    app.add_option("--T", o.horizon, "Investment horizon in years");
    app.add_option("--sigma", o.sigma, "Volatility (calibrations use 0.202 or 0.140)");
    auto* theta0_opt = app.add_option("--theta0", "Prior mean market price of risk");
    auto* v0_opt = app.add_option("--v0", "Prior variance of the market price of risk");
    auto* r_opt = app.add_option("--r", "Risk-free rate");
    app.add_flag("--wide-prior", o.wide_prior, "Use the wide prior calibration (0.0452/sigma)^2");
    app.add_option("--x", o.x, "Initial wealth")->check(CLI::PositiveNumber);
    app.add_option("--kind", o.kind, "Cost kind")->check(CLI::IsMember({"cumulated", "annual"}));
    app.add_option("--paths", o.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
    app.add_option("--steps-per-year", o.steps_per_year, "Euler steps per year")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Monte Carlo seed");
    app.add_option("--out", o.out, "Write output to this file instead of stdout");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "human"}));

    auto* value_cmd = app.add_subcommand("value", "Expected utility and certainty equivalent");
    std::string type_name = "R";
    value_cmd->add_option("--type", type_name, "Investor type: U, M, R or I");

    auto* cost_cmd = app.add_subcommand("cost", "Cumulated welfare costs");
    auto* annual_cmd = app.add_subcommand("annual-cost", "Annualized welfare costs");
    std::string pair_name;
    cost_cmd->add_option("--pair", pair_name, "Specific pair, e.g. UM, MR, RI, UI");
    annual_cmd->add_option("--pair", pair_name, "Specific pair, e.g. UM, MR, RI, UI");

    auto* table_cmd = app.add_subcommand("table", "Cost tables over the calibrated grid");
    int which = 1;
    std::vector<double> extra_horizons;
    table_cmd->add_option("--which", which, "1 = cumulated costs, 2 = annual costs")
        ->check(CLI::IsMember({1, 2}));
    table_cmd->add_option("--extra-T", extra_horizons, "Additional horizons to append");

    auto* figure_cmd = app.add_subcommand("figure-data", "Data series behind the figures");
    std::string figure_name;
    int density = 120;
    figure_cmd->add_option("--figure", figure_name, "costs-vs-T, costs-vs-T-long, costs-vs-gamma or annual- variant")
        ->required();
    figure_cmd->add_option("--density", density, "Grid points per series")
        ->check(CLI::Range(2, 100000));

    auto* mc_cmd = app.add_subcommand("mc-check", "Monte Carlo check of the closed forms");
    bool sanity_zero = false;
    bool antithetic = false;
    int threads = 1;
    mc_cmd->add_flag("--sanity-zero", sanity_zero,
                     "Force zero risky weight; the estimate must match exactly");
    mc_cmd->add_flag("--antithetic", antithetic, "Antithetic path pairs");
    mc_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (theta0_opt->count() > 0) o.theta0 = theta0_opt->as<double>();
        if (v0_opt->count() > 0) o.v0 = v0_opt->as<double>();
        if (r_opt->count() > 0) o.r = r_opt->as<double>();
        const bool sigma_given = app.count("--sigma") > 0;
        const bool kind_given = app.count("--kind") > 0;
        if (value_cmd->parsed()) return run_value(o, type_name);
        if (cost_cmd->parsed()) return run_cost(o, CostKind::Cumulated, pair_name);
        if (annual_cmd->parsed()) return run_cost(o, CostKind::Annual, pair_name);
        if (table_cmd->parsed()) return run_table(o, which, extra_horizons, sigma_given, kind_given);
        if (figure_cmd->parsed()) return run_figure(o, figure_name, density, sigma_given);
        if (mc_cmd->parsed()) return run_mc_check(o, sanity_zero, antithetic, threads);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "infeasible parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "out of range: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
