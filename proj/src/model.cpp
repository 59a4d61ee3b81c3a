#include "infocost/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace infocost {

namespace {

// gamma*(1+v0*T) - v0*T, written to avoid cancellation of the v0*T terms.
double feasibility_margin(double gamma, double v0, double T) {
    return gamma + (gamma - 1.0) * v0 * T;
}

void check_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

} // namespace

const char* type_name(InvestorType t) {
    switch (t) {
        case InvestorType::Unconditional: return "U";
        case InvestorType::Myopic: return "M";
        case InvestorType::Rational: return "R";
        case InvestorType::Informed: return "I";
    }
    return "?";
}

InvestorType type_from_name(const std::string& name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (up == "U" || up == "UNCONDITIONAL") return InvestorType::Unconditional;
    if (up == "M" || up == "MYOPIC") return InvestorType::Myopic;
    if (up == "R" || up == "RATIONAL") return InvestorType::Rational;
    if (up == "I" || up == "INFORMED") return InvestorType::Informed;
    throw std::invalid_argument("unknown investor type '" + name + "' (expected U, M, R or I)");
}

void MarketParams::validate() const {
    check_finite(r, "r");
    check_finite(sigma, "sigma");
    check_finite(theta0, "theta0");
    check_finite(v0, "v0");
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be > 0");
    if (v0 <= 0.0) throw std::invalid_argument("v0 must be > 0");
    if (r < 0.0) throw std::invalid_argument("r must be >= 0");
}

void InvestorProfile::validate() const {
    check_finite(gamma, "gamma");
    check_finite(horizon, "horizon");
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
    if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
}

double LogValue::real() const { return sign * std::exp(log_abs); }

bool is_feasible(const MarketParams& mkt, const InvestorProfile& prof) {
    mkt.validate();
    prof.validate();
    const double margin = feasibility_margin(prof.gamma, mkt.v0, prof.horizon);
    // Strict positivity with a relative guard band: the value formulas contain
    // logs and ratios of this expression, which blow up at the boundary.
    const double scale = prof.gamma * (1.0 + mkt.v0 * prof.horizon);
    return margin > 1e-12 * scale;
}

void require_feasible(const MarketParams& mkt, const InvestorProfile& prof) {
    if (!is_feasible(mkt, prof)) {
        std::ostringstream msg;
        msg << "infeasible parameters: gamma*(1+v0*T) - v0*T = "
            << feasibility_margin(prof.gamma, mkt.v0, prof.horizon)
            << " must be > 0 (gamma=" << prof.gamma << ", T=" << prof.horizon
            << ", v0=" << mkt.v0 << "; gamma_bar=" << gamma_bar(mkt.v0, prof.horizon);
        if (prof.gamma < 1.0) {
            msg << ", T_bar=" << horizon_bar(prof.gamma, mkt.v0);
        }
        msg << ")";
        throw InfeasibleParameters(msg.str());
    }
}

double gamma_bar(double v0, double T) {
    return v0 * T / (1.0 + v0 * T);
}

double horizon_bar(double gamma, double v0) {
    if (gamma >= 1.0) return std::numeric_limits<double>::infinity();
    return gamma / (v0 * (1.0 - gamma));
}

MyopicRoots myopic_roots(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
    const double b = 2.0 / gamma - 1.0;
    const double c = (1.0 - gamma) / gamma;
    // Discriminant 4/gamma^2 - 8/gamma + 5 = (2/gamma - 2)^2 + 1 >= 1: the
    // roots are always real and separated by at least 1.
    const double disc = b * b - 4.0 * c;
    const double big = (b >= 0.0) ? (-b - std::sqrt(disc)) / 2.0
                                  : (-b + std::sqrt(disc)) / 2.0;
    const double other = c / big; // Vieta; |big| >= 1/2 so never divides by zero
    return {std::min(big, other), std::max(big, other)};
}

namespace detail {

ScaledExponent scaled_exponent(InvestorType type, const MarketParams& mkt,
                               const InvestorProfile& prof) {
    const double gamma = prof.gamma;
    const double T = prof.horizon;
    const double v0 = mkt.v0;
    const double eps = 1.0 - gamma;
    const double l = std::log1p(v0 * T);

    switch (type) {
        case InvestorType::Informed: {
            const double den = feasibility_margin(gamma, v0, T);
            // psi = -(1/2) log(den/gamma); den/gamma = 1 - eps*v0*T/gamma.
            return {T / (2.0 * den), -std::log1p(-eps * v0 * T / gamma) / (2.0 * eps)};
        }
        case InvestorType::Rational: {
            const double den = feasibility_margin(gamma, v0, T);
            // psi = (1/2)(gamma*log(gamma/den) - (1-gamma)*log(1+v0*T)).
            return {T / (2.0 * den),
                    0.5 * (-gamma * std::log1p(-eps * v0 * T / gamma) / eps - l)};
        }
        case InvestorType::Myopic: {
            const MyopicRoots rr = myopic_roots(gamma);
            const double s = rr.r2 - rr.r1;
            const double sl = s * l;
            double phi_scaled, log_growth_scaled;
            if (sl < 500.0) {
                // phi = (1-gamma)((1+v0T)^s - 1) / (2 gamma v0 (r2 (1+v0T)^s - r1))
                const double em = std::expm1(sl);
                const double D = s + rr.r2 * em;
                if (!(D > 0.0)) {
                    throw ConsistencyError("myopic exponent denominator not positive");
                }
                phi_scaled = em / (2.0 * gamma * v0 * D);
                log_growth_scaled = std::log1p(rr.r2 * em / s) / eps;
            } else {
                // Same expressions divided through by (1+v0T)^s, for huge exponents.
                const double B = std::exp(-sl);
                const double D = s * B + rr.r2 * (1.0 - B);
                if (!(D > 0.0)) {
                    throw ConsistencyError("myopic exponent denominator not positive");
                }
                phi_scaled = (1.0 - B) / (2.0 * gamma * v0 * D);
                log_growth_scaled = (sl + std::log(D / s)) / eps;
            }
            // psi = (1/2)(log(s / (r2 (1+v0T)^s - r1)) + r2 log(1+v0T)).
            return {phi_scaled, 0.5 * ((rr.r2 / eps) * l - log_growth_scaled)};
        }
        case InvestorType::Unconditional:
            // phi = (1-gamma)(gamma T + (1-gamma) v0 T^2) / (2 gamma^2); psi = 0.
            return {(gamma * T + eps * v0 * T * T) / (2.0 * gamma * gamma), 0.0};
    }
    throw std::invalid_argument("unknown investor type");
}

} // namespace detail

PhiPsi phi_psi(InvestorType type, const MarketParams& mkt, const InvestorProfile& prof) {
    require_feasible(mkt, prof);
    if (detail::is_log_gamma(prof.gamma)) {
        throw LogGammaUnsupported("phi/psi are defined for gamma != 1; "
                                  "use log_investor_value for the log investor");
    }
    const double eps = 1.0 - prof.gamma;
    const auto se = detail::scaled_exponent(type, mkt, prof);
    return {eps * se.phi_scaled, eps * se.psi_scaled + mkt.r * eps * prof.horizon};
}

double log_investor_value(InvestorType type, double x, const MarketParams& mkt,
                          const InvestorProfile& prof) {
    if (!(x > 0.0)) throw NonpositiveWealth("initial wealth must be > 0");
    mkt.validate();
    prof.validate();
    const double T = prof.horizon;
    const double base = std::log(x) + mkt.r * T + mkt.theta0 * mkt.theta0 * T / 2.0;
    switch (type) {
        case InvestorType::Unconditional:
            return base;
        case InvestorType::Myopic:
        case InvestorType::Rational:
            return base + mkt.v0 * T / 2.0 - std::log1p(mkt.v0 * T) / 2.0;
        case InvestorType::Informed:
            return base + mkt.v0 * T / 2.0;
    }
    throw std::invalid_argument("unknown investor type");
}

namespace {

// v(t) = (x e^{r(T-t)})^(1-gamma)/(1-gamma) * exp(E) assembled in the log
// domain so that huge exponents near the feasibility boundary stay usable.
LogValue assemble_log_value(double eps, double x, double discounted_horizon, double r,
                            double exponent) {
    const double a = eps * (std::log(x) + r * discounted_horizon) + exponent;
    return {a - std::log(std::abs(eps)), eps > 0.0 ? 1 : -1};
}

SurfaceCoeffs surface_coeffs_unchecked(InvestorType type, double t, const MarketParams& mkt,
                                       const InvestorProfile& prof) {
    const double gamma = prof.gamma;
    const double T = prof.horizon;
    const double v0 = mkt.v0;
    const double eps = 1.0 - gamma;
    const double remaining = T - t;
    // log((1+v0T)/(1+v0t)) without forming the near-unit ratio
    const double l_rem = std::log1p(v0 * remaining / (1.0 + v0 * t));

    switch (type) {
        case InvestorType::Rational: {
            const double den_t = feasibility_margin(gamma, v0, T) + v0 * t;
            SurfaceCoeffs c;
            c.quad = eps * (1.0 + v0 * t) * remaining / (2.0 * den_t);
            // (1/2)(gamma log(gamma(1+v0T)/den_t) - log((1+v0T)/(1+v0t)))
            c.cons = 0.5 * (-gamma * std::log1p(-v0 * remaining / (gamma * (1.0 + v0 * T)))
                            - l_rem);
            return c;
        }
        case InvestorType::Myopic: {
            const MyopicRoots rr = myopic_roots(gamma);
            const double s = rr.r2 - rr.r1;
            const double em = std::expm1(s * l_rem);
            const double D = s + rr.r2 * em;
            if (!(D > 0.0)) {
                throw ConsistencyError("myopic exponent denominator not positive");
            }
            SurfaceCoeffs c;
            c.quad = eps * (1.0 + v0 * t) * em / (2.0 * gamma * v0 * D);
            c.cons = 0.5 * (rr.r2 * l_rem - std::log1p(rr.r2 * em / s));
            return c;
        }
        case InvestorType::Unconditional: {
            SurfaceCoeffs c;
            c.lin = eps / gamma * mkt.theta0 * remaining;
            c.cons = eps * remaining / (2.0 * gamma * gamma)
                     * (eps * (1.0 + v0 * T) / (1.0 + v0 * t) - 1.0) * mkt.theta0 * mkt.theta0;
            return c;
        }
        case InvestorType::Informed:
            break;
    }
    throw std::invalid_argument("value surfaces exist for types R, M, U only");
}

LogValue value_log_domain_impl(InvestorType type, double x, const MarketParams& mkt,
                               const InvestorProfile& prof) {
    const double eps = 1.0 - prof.gamma;
    if (type == InvestorType::Informed) {
        const auto se = detail::scaled_exponent(type, mkt, prof);
        const double exponent =
            eps * (se.phi_scaled * mkt.theta0 * mkt.theta0 + se.psi_scaled);
        return assemble_log_value(eps, x, prof.horizon, mkt.r, exponent);
    }
    // Evaluate through the time-0 surface so that value() and
    // value_surface(.,0,x,0) are the same code path, hence exactly equal.
    const SurfaceCoeffs c = surface_coeffs_unchecked(type, 0.0, mkt, prof);
    const FilterState f = filter(0.0, 0.0, mkt);
    const double th = f.theta_hat;
    return assemble_log_value(eps, x, prof.horizon, mkt.r,
                              (c.quad * th + c.lin) * th + c.cons);
}

} // namespace

LogValue value_log_domain(InvestorType type, double x, const MarketParams& mkt,
                          const InvestorProfile& prof) {
    if (!(x > 0.0)) throw NonpositiveWealth("initial wealth must be > 0");
    require_feasible(mkt, prof);
    if (detail::is_log_gamma(prof.gamma)) {
        throw LogGammaUnsupported("log-domain form exists for gamma != 1; "
                                  "use log_investor_value for the log investor");
    }
    return value_log_domain_impl(type, x, mkt, prof);
}

double value(InvestorType type, double x, const MarketParams& mkt,
             const InvestorProfile& prof) {
    if (!(x > 0.0)) throw NonpositiveWealth("initial wealth must be > 0");
    require_feasible(mkt, prof);
    if (detail::is_log_gamma(prof.gamma)) {
        return log_investor_value(type, x, mkt, prof);
    }
    return value_log_domain_impl(type, x, mkt, prof).real();
}

double certainty_equivalent(InvestorType type, double x, const MarketParams& mkt,
                            const InvestorProfile& prof) {
    if (!(x > 0.0)) throw NonpositiveWealth("initial wealth must be > 0");
    require_feasible(mkt, prof);
    if (detail::is_log_gamma(prof.gamma)) {
        return std::exp(log_investor_value(type, x, mkt, prof));
    }
    const auto se = detail::scaled_exponent(type, mkt, prof);
    return x * std::exp(se.phi_scaled * mkt.theta0 * mkt.theta0 + se.psi_scaled
                        + mkt.r * prof.horizon);
}

SurfaceCoeffs surface_coeffs(InvestorType type, double t, const MarketParams& mkt,
                             const InvestorProfile& prof) {
    require_feasible(mkt, prof);
    if (detail::is_log_gamma(prof.gamma)) {
        throw LogGammaUnsupported("value surfaces are implemented for gamma != 1");
    }
    if (t < 0.0 || t > prof.horizon) {
        throw TimeOutOfRange("t must lie in [0, T]");
    }
    return surface_coeffs_unchecked(type, t, mkt, prof);
}

double value_surface(InvestorType type, double t, double x, double y,
                     const MarketParams& mkt, const InvestorProfile& prof) {
    if (!(x > 0.0)) throw NonpositiveWealth("initial wealth must be > 0");
    const SurfaceCoeffs c = surface_coeffs(type, t, mkt, prof); // validates the rest
    const double th = filter(t, y, mkt).theta_hat;
    const double eps = 1.0 - prof.gamma;
    return assemble_log_value(eps, x, prof.horizon - t, mkt.r,
                              (c.quad * th + c.lin) * th + c.cons)
        .real();
}

FilterState filter(double t, double y, const MarketParams& mkt) {
    mkt.validate();
    if (t < 0.0) throw TimeOutOfRange("filter time must be >= 0");
    return {t, y, (mkt.theta0 + mkt.v0 * y) / (1.0 + mkt.v0 * t)};
}

double posterior_variance(double t, const MarketParams& mkt) {
    mkt.validate();
    if (t < 0.0) throw TimeOutOfRange("time must be >= 0");
    return mkt.v0 / (1.0 + mkt.v0 * t);
}

double strategy(InvestorType type, double t, double signal, const MarketParams& mkt,
                const InvestorProfile& prof) {
    require_feasible(mkt, prof);
    if (t < 0.0 || t > prof.horizon) {
        throw TimeOutOfRange("t must lie in [0, T]");
    }
    const double base = 1.0 / (mkt.sigma * prof.gamma);
    switch (type) {
        case InvestorType::Unconditional:
            return mkt.theta0 * base;
        case InvestorType::Myopic:
        case InvestorType::Informed:
            return signal * base;
        case InvestorType::Rational: {
            const double den_t = feasibility_margin(prof.gamma, mkt.v0, prof.horizon)
                                 + mkt.v0 * t;
            const double hedge = (1.0 - prof.gamma) * (prof.horizon - t) * mkt.v0 / den_t;
            return signal * base * (1.0 + hedge);
        }
    }
    throw std::invalid_argument("unknown investor type");
}

} // namespace infocost
