#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infocost/costs.hpp"

namespace infocost {

// Headline calibration: equity premium 0.08, prior dispersion scale 0.0243
// (or 0.0452 for the wide prior), both divided by volatility.
inline constexpr double kBaseSigma = 0.202;
inline constexpr double kAltSigma = 0.140;
inline constexpr double kBasePriorScale = 0.0243;
inline constexpr double kWidePriorScale = 0.0452;

MarketParams calibrated_market(double sigma, bool wide_prior = false);

// One cost-table cell: the four pairwise costs and the additivity error
// err = c_UI - (c_UM + c_MR + c_RI), all as raw fractions.
struct TableRow {
    double gamma = 0.0;
    double horizon = 0.0;
    double sigma = 0.0;
    CostKind kind = CostKind::Cumulated;
    double c_um = 0.0;
    double c_mr = 0.0;
    double c_ri = 0.0;
    double c_ui = 0.0;
    double err = 0.0;
};

const std::vector<double>& table_gammas();    // {11, 6, 4, 3, 1, 0.8}
const std::vector<double>& table_horizons();  // {30, 20, 10, 5, 1}

TableRow make_table_row(CostKind kind, double gamma, double T, double sigma,
                        bool wide_prior = false);

// Full table over both volatility blocks (or one, when only_sigma > 0),
// gamma-major with horizons descending; extra horizons are merged into the
// standard grid. A zero horizon yields the T -> 0 limiting row.
std::vector<TableRow> cost_table(CostKind kind,
                                 const std::vector<double>& extra_horizons = {},
                                 bool wide_prior = false, double only_sigma = 0.0);

// Shortest decimal that round-trips to the same double (to_chars).
std::string format_shortest(double v);
// Fraction -> percent with exactly two decimals, ties away from zero,
// rounded once from the full-precision value.
std::string format_percent(double v);

// Machine CSV: header gamma,T,sigma,kind,c_UM,c_MR,c_RI,c_UI,err with
// shortest round-trip floats; byte-stable for identical inputs.
std::string rows_to_csv(const std::vector<TableRow>& rows);
// Human-readable table in percent (two decimals, |err| column).
std::string rows_to_human(const std::vector<TableRow>& rows);

// Figure series: cost curves against horizon (standard and long range) or
// against risk aversion, for cumulated or annual costs.
enum class FigureGeometry { CostsVsHorizon, CostsVsHorizonLong, CostsVsGamma };

struct FigureRequest {
    FigureGeometry geometry = FigureGeometry::CostsVsHorizon;
    CostKind kind = CostKind::Cumulated;
    double sigma = kBaseSigma;
    bool wide_prior = false;
    int density = 120;  // grid points per series
};

struct FigurePoint {
    TableRow row;
    // Relative contribution of each component, with the sum of the three
    // component costs as denominator so the shares add to 1 exactly.
    double share_um = 0.0;
    double share_mr = 0.0;
    double share_ri = 0.0;
};

struct FigureSeries {
    std::string label;                 // "gamma=0.8" or "T=10"
    std::vector<FigurePoint> points;
    std::vector<std::string> skipped;  // human-readable notes on dropped grid points
};

std::vector<FigureSeries> figure_data(const FigureRequest& req);

// Figure CSV: the table schema plus share_UM,share_MR,share_RI columns.
std::string figures_to_csv(const std::vector<FigureSeries>& series);

// Parses names like "costs-vs-T", "annual-costs-vs-gamma"; returns false on
// unknown names.
bool parse_figure_name(std::string_view name, FigureGeometry& geometry, CostKind& kind);

} // namespace infocost
