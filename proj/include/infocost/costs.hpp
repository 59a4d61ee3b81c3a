#pragma once

#include "infocost/model.hpp"
#include "infocost/types.hpp"

namespace infocost {

enum class CostKind { Cumulated, Annual };

const char* cost_kind_name(CostKind k); // "cumulated" / "annual"

// An ordered pair of investor types i <= j in the order U < M < R < I. The
// associated welfare cost is the fraction of initial wealth investor i would
// give up to invest like j: V^i(x) = V^j(x*(1-C)).
struct CostPair {
    InvestorType from;
    InvestorType to;

    void validate() const; // throws std::invalid_argument unless from <= to
};

// Fraction of initial wealth over the whole horizon [0, T]. Wealth-independent
// by CRRA scaling; 0 at T = 0 and for identical types; in [0, 1) always.
double cumulated_cost(CostPair pair, const MarketParams& mkt, const InvestorProfile& prof);

// Per-year equivalent fee: 1 - (1 - C)^(1/T). Requires T > 0.
double annual_cost(CostPair pair, const MarketParams& mkt, const InvestorProfile& prof);

// The four costs of the decomposition U->M->R->I plus the error of the
// additive approximation, approx_error = c_UI - (c_UM + c_MR + c_RI).
struct CostReport {
    CostKind kind = CostKind::Cumulated;
    double c_um = 0.0;
    double c_mr = 0.0;
    double c_ri = 0.0;
    double c_ui = 0.0;
    double approx_error = 0.0;
    MarketParams params;   // inputs echoed for traceability
    InvestorProfile profile;
};

CostReport cost_report(CostKind kind, const MarketParams& mkt, const InvestorProfile& prof);

/// Leading Taylor coefficients of the cost in T near T = 0:
//   cost(T) = c0 + c1*T + c2*T^2 + o(T^2)   (cumulated; c0 = 0 always)
//   cost(T) = c0 + c1*T + o(T)              (annual; c2 = 0 by convention)
// Hard-coded closed forms used as asymptotic reference values in tests.
struct TaylorCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

TaylorCoeffs taylor_reference(CostKind kind, CostPair pair, const MarketParams& mkt,
                              double gamma);

// The asymptotic regimes with known closed-form cost limits.
enum class LimitCase {
    HorizonToInfinity, // T -> inf (gamma >= 1 only)
    HorizonToCritical, // T -> T_bar (0 < gamma < 1 only)
    HorizonToZero,     // T -> 0+
    GammaToInfinity,   // gamma -> inf at fixed T
    GammaToCritical,   // gamma -> gamma_bar+ at fixed T
};

// Closed-form limiting value of the cost in the requested regime; throws
// UnsupportedLimit for combinations without a stated limit (e.g. T -> inf
// with gamma < 1, where the horizon is capped at T_bar).
double limit_reference(CostKind kind, CostPair pair, LimitCase limit,
                       const MarketParams& mkt, const InvestorProfile& prof);

namespace detail {

// log(1 - C^{ij}) for gamma != 1: the exponent difference
// ((phi_i-phi_j)theta0^2 + (psi_i-psi_j))/(1-gamma), computed from the
// 1/(1-gamma)-scaled building blocks so no catastrophic cancellation occurs
// anywhere in gamma, and continuous through gamma = 1 where it matches the
// explicit log-investor formulas.
double log_one_minus_cost(CostPair pair, const MarketParams& mkt,
                          const InvestorProfile& prof);

} // namespace detail

} // namespace infocost
