#pragma once

#include <string>

namespace infocost {

// The four investor information regimes, ordered from least to best informed:
// the unconditional investor holds the prior mean forever, the myopic investor
// tracks the filter but ignores hedging, the rational investor adds the
// hedging demand, and the informed investor observes the market price of risk.
enum class InvestorType { Unconditional, Myopic, Rational, Informed };

// Position of a type in the total order U < M < R < I.
constexpr int type_rank(InvestorType t) { return static_cast<int>(t); }

const char* type_name(InvestorType t);      // "U", "M", "R", "I"
InvestorType type_from_name(const std::string& name); // accepts U/M/R/I, case-insensitive

// Market and prior parameters. The stock price follows
//   dS = S ((r + sigma*Theta) dt + sigma dW),
// with Theta ~ N(theta0, v0) drawn once at time zero, independent of W.
struct MarketParams {
    double r = 0.05;       // risk-free rate per year
    double sigma = 0.202;  // volatility per sqrt-year
    double theta0 = 0.08 / 0.202; // prior mean of the market price of risk
    double v0 = (0.0243 / 0.202) * (0.0243 / 0.202); // prior variance

    void validate() const; // throws std::invalid_argument
};

// Risk aversion and investment horizon of a CRRA investor with utility
// u(x) = x^(1-gamma)/(1-gamma) (gamma != 1) or ln x (gamma = 1).
struct InvestorProfile {
    double gamma = 1.0;   // relative risk aversion, > 0
    double horizon = 10.0; // T in years, >= 0

    void validate() const; // throws std::invalid_argument
};

// Exponent building blocks of the closed-form expected utility
//   V = x^(1-gamma)/(1-gamma) * exp(phi*theta0^2 + psi).
struct PhiPsi {
    double phi = 0.0;
    double psi = 0.0;
};

// Roots of the quadratic r^2 + (2/gamma - 1) r + (1-gamma)/gamma = 0 that
// parameterize the myopic investor's value function. r1 < r2 always
// (discriminant >= 1); gamma = 1 factors as r(r+1), giving {-1, 0}.
struct MyopicRoots {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Bayesian estimate of Theta given the observation process level y at time t:
//   theta_hat = (theta0 + v0*y) / (1 + v0*t).
struct FilterState {
    double t = 0.0;
    double y = 0.0;
    double theta_hat = 0.0;
};

// A value too large or of awkward sign for direct floating-point
// representation: value = sign * exp(log_abs). Near the feasibility boundary
// the exponent can exceed the double range, so comparisons and scaling should
// happen in this form.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1; // +1 or -1 (CRRA utilities are never zero for x > 0)

    double real() const; // sign * exp(log_abs); may overflow to +-inf
};

} // namespace infocost
