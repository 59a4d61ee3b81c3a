#include "infocost/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "infocost/model.hpp"

namespace infocost {

MarketParams calibrated_market(double sigma, bool wide_prior) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    MarketParams mkt;
    mkt.r = 0.05;
    mkt.sigma = sigma;
    mkt.theta0 = 0.08 / sigma;
    const double scale = wide_prior ? kWidePriorScale : kBasePriorScale;
    mkt.v0 = (scale / sigma) * (scale / sigma);
    return mkt;
}

const std::vector<double>& table_gammas() {
    static const std::vector<double> g{11.0, 6.0, 4.0, 3.0, 1.0, 0.8};
    return g;
}

const std::vector<double>& table_horizons() {
    static const std::vector<double> t{30.0, 20.0, 10.0, 5.0, 1.0};
    return t;
}

TableRow make_table_row(CostKind kind, double gamma, double T, double sigma,
                        bool wide_prior) {
    const MarketParams mkt = calibrated_market(sigma, wide_prior);
    TableRow row;
    row.gamma = gamma;
    row.horizon = T;
    row.sigma = sigma;
    row.kind = kind;
    if (T == 0.0) {
        // Zero horizon has no cost accrual; the annual rate is extended by its
        // T -> 0 limit (zero except for the full-information component).
        if (kind == CostKind::Annual) {
            const InvestorProfile prof{gamma, 1.0};  // horizon unused by this limit
            using I = InvestorType;
            row.c_um = limit_reference(kind, {I::Unconditional, I::Myopic},
                                       LimitCase::HorizonToZero, mkt, prof);
            row.c_mr = limit_reference(kind, {I::Myopic, I::Rational},
                                       LimitCase::HorizonToZero, mkt, prof);
            row.c_ri = limit_reference(kind, {I::Rational, I::Informed},
                                       LimitCase::HorizonToZero, mkt, prof);
            row.c_ui = limit_reference(kind, {I::Unconditional, I::Informed},
                                       LimitCase::HorizonToZero, mkt, prof);
            row.err = row.c_ui - (row.c_um + row.c_mr + row.c_ri);
        }
        return row;
    }
    const CostReport rep = cost_report(kind, mkt, InvestorProfile{gamma, T});
    row.c_um = rep.c_um;
    row.c_mr = rep.c_mr;
    row.c_ri = rep.c_ri;
    row.c_ui = rep.c_ui;
    row.err = rep.approx_error;
    return row;
}

std::vector<TableRow> cost_table(CostKind kind, const std::vector<double>& extra_horizons,
                                 bool wide_prior, double only_sigma) {
    std::vector<double> horizons = table_horizons();
    for (double t : extra_horizons) {
        if (t < 0.0) throw std::invalid_argument("horizons must be nonnegative");
        horizons.push_back(t);
    }
    std::sort(horizons.begin(), horizons.end(), std::greater<>());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());

    std::vector<double> sigmas;
    if (only_sigma > 0.0) {
        sigmas.push_back(only_sigma);
    } else {
        sigmas = {kBaseSigma, kAltSigma};
    }

    std::vector<TableRow> rows;
    rows.reserve(sigmas.size() * table_gammas().size() * horizons.size());
    for (double sigma : sigmas) {
        for (double gamma : table_gammas()) {
            for (double T : horizons) {
                rows.push_back(make_table_row(kind, gamma, T, sigma, wide_prior));
            }
        }
    }
    return rows;
}

std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_percent(double v) {
    // One rounding step from the full-precision fraction to hundredths of a
    // percent, ties away from zero.
    const long long scaled = std::llround(v * 10000.0);
    const long long mag = scaled < 0 ? -scaled : scaled;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", scaled < 0 ? "-" : "", mag / 100,
                  mag % 100);
    return buf;
}

namespace {

void append_row_csv(std::string& out, const TableRow& r) {
    out += format_shortest(r.gamma);
    out += ',';
    out += format_shortest(r.horizon);
    out += ',';
    out += format_shortest(r.sigma);
    out += ',';
    out += cost_kind_name(r.kind);
    out += ',';
    out += format_shortest(r.c_um);
    out += ',';
    out += format_shortest(r.c_mr);
    out += ',';
    out += format_shortest(r.c_ri);
    out += ',';
    out += format_shortest(r.c_ui);
    out += ',';
    out += format_shortest(r.err);
}

} // namespace

std::string rows_to_csv(const std::vector<TableRow>& rows) {
    std::string out = "gamma,T,sigma,kind,c_UM,c_MR,c_RI,c_UI,err\n";
    for (const TableRow& r : rows) {
        append_row_csv(out, r);
        out += '\n';
    }
    return out;
}

std::string rows_to_human(const std::vector<TableRow>& rows) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-6s %-8s %-6s %-6s %8s %8s %8s %8s %8s\n", "sigma",
                  "kind", "gamma", "T", "C_UM%", "C_MR%", "C_RI%", "C_UI%", "|E|%");
    out += line;
    for (const TableRow& r : rows) {
        std::snprintf(line, sizeof(line), "%-6s %-8s %-6s %-6s %8s %8s %8s %8s %8s\n",
                      format_shortest(r.sigma).c_str(), cost_kind_name(r.kind),
                      format_shortest(r.gamma).c_str(), format_shortest(r.horizon).c_str(),
                      format_percent(r.c_um).c_str(), format_percent(r.c_mr).c_str(),
                      format_percent(r.c_ri).c_str(), format_percent(r.c_ui).c_str(),
                      format_percent(std::fabs(r.err)).c_str());
        out += line;
    }
    return out;
}

namespace {

FigurePoint make_point(CostKind kind, double gamma, double T, double sigma,
                       bool wide_prior) {
    FigurePoint p;
    p.row = make_table_row(kind, gamma, T, sigma, wide_prior);
    const double total = p.row.c_um + p.row.c_mr + p.row.c_ri;
    if (total > 0.0) {
        p.share_um = p.row.c_um / total;
        p.share_mr = p.row.c_mr / total;
        p.share_ri = p.row.c_ri / total;
    }
    return p;
}

} // namespace

std::vector<FigureSeries> figure_data(const FigureRequest& req) {
    if (req.density < 2) throw std::invalid_argument("figure density must be at least 2");
    const MarketParams mkt = calibrated_market(req.sigma, req.wide_prior);
    std::vector<FigureSeries> out;
    char note[128];

    if (req.geometry == FigureGeometry::CostsVsGamma) {
        // Risk aversion sweep at fixed horizons, starting a guard above the
        // feasibility threshold for that horizon.
        constexpr double kGuard = 0.05;
        for (double T : {5.0, 10.0, 20.0}) {
            FigureSeries series;
            series.label = "T=" + format_shortest(T);
            const double lo = gamma_bar(mkt.v0, T) + kGuard;
            for (int k = 0; k <= req.density; ++k) {
                const double gamma =
                    lo + (12.0 - lo) * static_cast<double>(k) / static_cast<double>(req.density);
                series.points.push_back(make_point(req.kind, gamma, T, req.sigma, req.wide_prior));
            }
            out.push_back(std::move(series));
        }
        return out;
    }

    const double t_max = req.geometry == FigureGeometry::CostsVsHorizonLong ? 250.0 : 30.0;
    for (double gamma : {0.8, 1.0, 3.0}) {
        FigureSeries series;
        series.label = "gamma=" + format_shortest(gamma);
        for (int k = 1; k <= req.density; ++k) {
            const double T = t_max * static_cast<double>(k) / static_cast<double>(req.density);
            if (!is_feasible(mkt, InvestorProfile{gamma, T})) {
                std::snprintf(note, sizeof(note),
                              "gamma=%g T=%g skipped: horizon at or beyond critical T_bar=%g",
                              gamma, T, horizon_bar(gamma, mkt.v0));
                series.skipped.emplace_back(note);
                continue;
            }
            series.points.push_back(make_point(req.kind, gamma, T, req.sigma, req.wide_prior));
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::string figures_to_csv(const std::vector<FigureSeries>& series) {
    std::string out = "gamma,T,sigma,kind,c_UM,c_MR,c_RI,c_UI,err,share_UM,share_MR,share_RI\n";
    for (const FigureSeries& s : series) {
        for (const FigurePoint& p : s.points) {
            append_row_csv(out, p.row);
            out += ',';
            out += format_shortest(p.share_um);
            out += ',';
            out += format_shortest(p.share_mr);
            out += ',';
            out += format_shortest(p.share_ri);
            out += '\n';
        }
    }
    return out;
}

bool parse_figure_name(std::string_view name, FigureGeometry& geometry, CostKind& kind) {
    kind = CostKind::Cumulated;
    std::string_view rest = name;
    if (rest.starts_with("annual-")) {
        kind = CostKind::Annual;
        rest.remove_prefix(7);
    }
    if (rest == "costs-vs-T") {
        geometry = FigureGeometry::CostsVsHorizon;
    } else if (rest == "costs-vs-T-long") {
        geometry = FigureGeometry::CostsVsHorizonLong;
    } else if (rest == "costs-vs-gamma") {
        geometry = FigureGeometry::CostsVsGamma;
    } else {
        return false;
    }
    return true;
}

} // namespace infocost
