#pragma once

#include "infocost/errors.hpp"
#include "infocost/types.hpp"

namespace infocost {

// --- Feasibility ------------------------------------------------------------
//
// Expected CRRA utility is finite iff gamma*(1 + v0*T) - v0*T > 0. For
// gamma >= 1 this always holds; for 0 < gamma < 1 it caps the horizon at
// T_bar = gamma / (v0*(1-gamma)), equivalently requires gamma above
// gamma_bar = v0*T / (1 + v0*T) at fixed T.

bool is_feasible(const MarketParams& mkt, const InvestorProfile& prof);
void require_feasible(const MarketParams& mkt, const InvestorProfile& prof); // throws InfeasibleParameters

double gamma_bar(double v0, double T);             // critical risk aversion at fixed T
double horizon_bar(double gamma, double v0);       // T_bar for gamma < 1; +inf for gamma >= 1

// --- Closed-form value functions ---------------------------------------------

// Stable roots of r^2 + (2/gamma - 1) r + (1-gamma)/gamma = 0 (larger-magnitude
// root from the quadratic formula, the other via the Vieta product).
MyopicRoots myopic_roots(double gamma);

// (phi, psi) exponent pair of V = x^(1-gamma)/(1-gamma) * exp(phi*theta0^2 + psi)
// for the requested investor type. Defined for gamma != 1 only.
PhiPsi phi_psi(InvestorType type, const MarketParams& mkt, const InvestorProfile& prof);

// Expected utility of terminal wealth for initial wealth x. Routes |gamma-1|
// <= 1e-9 to the logarithmic branch; elsewhere evaluates the power branch
// through log-domain arithmetic (log1p/expm1 forms), which stays accurate
// through the 1e-9 < |gamma-1| < 1e-6 band where naive evaluation cancels.
double value(InvestorType type, double x, const MarketParams& mkt, const InvestorProfile& prof);

// Same quantity in log-domain form, usable near the feasibility boundary
// where exp arguments exceed the double range.
LogValue value_log_domain(InvestorType type, double x, const MarketParams& mkt,
                          const InvestorProfile& prof);

// Expected log utility of the gamma = 1 investor (the limit of
// value - 1/(1-gamma) as gamma -> 1).
double log_investor_value(InvestorType type, double x, const MarketParams& mkt,
                          const InvestorProfile& prof);

// Deterministic wealth with the same utility as the investor's terminal
// wealth distribution: x * exp((phi*theta0^2 + psi)/(1-gamma)); the exponent
// is evaluated in a form that is continuous through gamma = 1.
double certainty_equivalent(InvestorType type, double x, const MarketParams& mkt,
                            const InvestorProfile& prof);

// --- Time-t value surfaces ----------------------------------------------------
//
// For types R, M, U (gamma != 1) the time-t value function given observation
// level y is
//   v(t,x,y) = (x e^{r(T-t)})^(1-gamma)/(1-gamma)
//              * exp(quad(t)*theta_hat^2 + lin(t)*theta_hat + cons(t)),
// with theta_hat = filter(t,y).theta_hat. R and M have lin = 0; U has quad = 0.

struct SurfaceCoeffs {
    double quad = 0.0;
    double lin = 0.0;
    double cons = 0.0;
};

SurfaceCoeffs surface_coeffs(InvestorType type, double t, const MarketParams& mkt,
                             const InvestorProfile& prof);

double value_surface(InvestorType type, double t, double x, double y,
                     const MarketParams& mkt, const InvestorProfile& prof);

// --- Filtering ----------------------------------------------------------------

// Conditional mean of Theta given the observation process value y at time t.
FilterState filter(double t, double y, const MarketParams& mkt);

// Conditional variance of Theta at time t: v0 / (1 + v0*t).
double posterior_variance(double t, const MarketParams& mkt);

// --- Strategies ---------------------------------------------------------------

// Risky-asset weight at time t. `signal` is the information the investor
// conditions on: the true Theta for Informed, theta_hat = filter(t, Y_t) for
// Rational and Myopic; Unconditional ignores it and uses theta0.
//
//   pi_I = Theta/(sigma*gamma)
//   pi_M = theta_hat/(sigma*gamma)
//   pi_R = pi_M * (1 + (1-gamma)(T-t) v0 / (gamma(1+v0 T) - v0 T + v0 t))
//   pi_U = theta0/(sigma*gamma)
//
// The Rational-minus-Myopic difference is the hedging demand; it is negative
// for gamma > 1 and vanishes at t = T and at gamma = 1.
double strategy(InvestorType type, double t, double signal, const MarketParams& mkt,
                const InvestorProfile& prof);

namespace detail {

// Whether gamma is routed to the logarithmic code path.
inline bool is_log_gamma(double gamma) { return gamma > 1.0 - 1e-9 && gamma < 1.0 + 1e-9; }

// Exponent building blocks scaled by 1/(1-gamma):
//   phi = (1-gamma) * phi_scaled,   psi = (1-gamma) * psi_scaled + r*(1-gamma)*T.
// Both factors stay finite and cancellation-free as gamma -> 1, which makes
// welfare-cost exponent differences (computed from these directly) accurate
// uniformly in gamma. The risk-free term r*(1-gamma)*T is identical across
// types and is added only when assembling values, never fed into costs.
struct ScaledExponent {
    double phi_scaled = 0.0;
    double psi_scaled = 0.0;
};

ScaledExponent scaled_exponent(InvestorType type, const MarketParams& mkt,
                               const InvestorProfile& prof);

} // namespace detail

} // namespace infocost
