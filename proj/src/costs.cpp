#include "infocost/costs.hpp"

#include <cmath>

namespace infocost {

namespace {

// Per-type additive constant of the log investor's expected log utility,
// with the type-independent ln x + rT + theta0^2 T/2 part dropped (it cancels
// in every cost difference).
double log_branch_offset(InvestorType type, const MarketParams& mkt, double T) {
    switch (type) {
        case InvestorType::Unconditional:
            return 0.0;
        case InvestorType::Myopic:
        case InvestorType::Rational:
            return mkt.v0 * T / 2.0 - std::log1p(mkt.v0 * T) / 2.0;
        case InvestorType::Informed:
            return mkt.v0 * T / 2.0;
    }
    throw std::invalid_argument("unknown investor type");
}

// log(1 - C^{ij}) without the feasibility gate; the caller guarantees the
// exponents of both endpoint types stay finite at (gamma, T).
double log_one_minus_cost_unchecked(CostPair pair, const MarketParams& mkt,
                                    double gamma, double T) {
    if (pair.from == pair.to) return 0.0;
    const InvestorProfile prof{gamma, T};
    if (detail::is_log_gamma(gamma)) {
        return log_branch_offset(pair.from, mkt, T) - log_branch_offset(pair.to, mkt, T);
    }
    const auto from = detail::scaled_exponent(pair.from, mkt, prof);
    const auto to = detail::scaled_exponent(pair.to, mkt, prof);
    return (from.phi_scaled - to.phi_scaled) * mkt.theta0 * mkt.theta0
           + (from.psi_scaled - to.psi_scaled);
}

double cost_from_log(double log_one_minus_c) {
    double c = -std::expm1(log_one_minus_c);
    if (c < 0.0) {
        // The value ordering makes costs nonnegative; anything beyond rounding
        // noise is a bug, and rounding noise itself is snapped to zero openly.
        if (c < -1e-12) throw ConsistencyError("negative welfare cost");
        c = 0.0;
    }
    return c;
}

} // namespace

const char* cost_kind_name(CostKind k) {
    return k == CostKind::Cumulated ? "cumulated" : "annual";
}

void CostPair::validate() const {
    if (type_rank(from) > type_rank(to)) {
        throw std::invalid_argument("cost pair must be ordered with from <= to "
                                    "in the order U <= M <= R <= I");
    }
}

namespace detail {

double log_one_minus_cost(CostPair pair, const MarketParams& mkt,
                          const InvestorProfile& prof) {
    pair.validate();
    require_feasible(mkt, prof);
    return log_one_minus_cost_unchecked(pair, mkt, prof.gamma, prof.horizon);
}

} // namespace detail

double cumulated_cost(CostPair pair, const MarketParams& mkt, const InvestorProfile& prof) {
    return cost_from_log(detail::log_one_minus_cost(pair, mkt, prof));
}

double annual_cost(CostPair pair, const MarketParams& mkt, const InvestorProfile& prof) {
    const double log1mc = detail::log_one_minus_cost(pair, mkt, prof);
    if (prof.horizon <= 0.0) {
        throw ZeroHorizon("annual cost requires T > 0");
    }
    return cost_from_log(log1mc / prof.horizon);
}

CostReport cost_report(CostKind kind, const MarketParams& mkt, const InvestorProfile& prof) {
    using T = InvestorType;
    const auto one = [&](T a, T b) {
        return kind == CostKind::Cumulated ? cumulated_cost({a, b}, mkt, prof)
                                           : annual_cost({a, b}, mkt, prof);
    };
    CostReport rep;
    rep.kind = kind;
    rep.c_um = one(T::Unconditional, T::Myopic);
    rep.c_mr = one(T::Myopic, T::Rational);
    rep.c_ri = one(T::Rational, T::Informed);
    rep.c_ui = one(T::Unconditional, T::Informed);
    rep.approx_error = rep.c_ui - (rep.c_um + rep.c_mr + rep.c_ri);
    rep.params = mkt;
    rep.profile = prof;
    return rep;
}

TaylorCoeffs taylor_reference(CostKind kind, CostPair pair, const MarketParams& mkt,
                              double gamma) {
    pair.validate();
    mkt.validate();
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
    const double v0 = mkt.v0;

    // Per adjacent link of the chain U->M->R->I; a non-adjacent pair composes
    // the links it spans, which at leading order just adds coefficients
    // (cross terms are higher order).
    const bool spans_um = type_rank(pair.from) <= 0 && type_rank(pair.to) >= 1;
    const bool spans_ri = type_rank(pair.from) <= 2 && type_rank(pair.to) >= 3;
    TaylorCoeffs c;
    if (kind == CostKind::Cumulated) {
        // C^UM = v0^2 T^2/(4 gamma) + o(T^2); C^MR = o(T^2);
        // C^RI = v0 T/(2 gamma) + (v0^2/(4 gamma))(1/(2 gamma) - 2) T^2 + o(T^2).
        if (spans_um) c.c2 += v0 * v0 / (4.0 * gamma);
        if (spans_ri) {
            c.c1 += v0 / (2.0 * gamma);
            c.c2 += v0 * v0 / (4.0 * gamma) * (1.0 / (2.0 * gamma) - 2.0);
        }
    } else {
        // c^UM = v0^2 T/(4 gamma) + o(T); c^MR = o(T);
        // c^RI = 1 - e^{-v0/(2 gamma)} + e^{-v0/(2 gamma)} (v0^2/(2 gamma^2))(1/2 - gamma) T + o(T).
        const double decay = std::exp(-v0 / (2.0 * gamma));
        if (spans_ri) {
            c.c0 = -std::expm1(-v0 / (2.0 * gamma));
            c.c1 += decay * v0 * v0 / (2.0 * gamma * gamma) * (0.5 - gamma);
        }
        if (spans_um) c.c1 += (spans_ri ? decay : 1.0) * v0 * v0 / (4.0 * gamma);
    }
    return c;
}

namespace {

struct ComponentLimits {
    double um, mr, ri;
};

ComponentLimits component_limits(CostKind kind, LimitCase limit, const MarketParams& mkt,
                                 const InvestorProfile& prof) {
    const double gamma = prof.gamma;
    const double T = prof.horizon;
    const double v0 = mkt.v0;
    const bool log_gamma = detail::is_log_gamma(gamma);
    const auto finite_um = [&](double g, double horizon) {
        // C^UM stays finite and below 1 at the feasibility boundary: neither
        // endpoint's exponent involves the vanishing denominator.
        const double arg = log_one_minus_cost_unchecked(
            {InvestorType::Unconditional, InvestorType::Myopic}, mkt, g, horizon);
        return kind == CostKind::Cumulated ? -std::expm1(arg) : -std::expm1(arg / horizon);
    };

    switch (limit) {
        case LimitCase::HorizonToInfinity: {
            if (gamma < 1.0 && !log_gamma) {
                throw UnsupportedLimit("T -> inf undefined for gamma < 1 (horizon capped at T_bar)");
            }
            if (kind == CostKind::Cumulated) {
                if (log_gamma) return {1.0, 0.0, 1.0};
                return {1.0, 1.0, 1.0 - std::sqrt(1.0 - 1.0 / gamma)};
            }
            if (log_gamma) return {-std::expm1(-v0 / 2.0), 0.0, 0.0};
            return {1.0, 0.0, 0.0};
        }
        case LimitCase::HorizonToCritical: {
            if (gamma >= 1.0 || log_gamma) {
                throw UnsupportedLimit("T -> T_bar applies to 0 < gamma < 1 only");
            }
            return {finite_um(gamma, horizon_bar(gamma, v0)), 1.0, 1.0};
        }
        case LimitCase::HorizonToZero: {
            if (kind == CostKind::Cumulated) return {0.0, 0.0, 0.0};
            return {0.0, 0.0, -std::expm1(-v0 / (2.0 * gamma))};
        }
        case LimitCase::GammaToInfinity:
            return {0.0, 0.0, 0.0};
        case LimitCase::GammaToCritical: {
            if (T <= 0.0) {
                throw UnsupportedLimit("gamma -> gamma_bar requires T > 0");
            }
            return {finite_um(gamma_bar(v0, T), T), 1.0, 1.0};
        }
    }
    throw UnsupportedLimit("unknown limit case");
}

} // namespace

double limit_reference(CostKind kind, CostPair pair, LimitCase limit,
                       const MarketParams& mkt, const InvestorProfile& prof) {
    pair.validate();
    mkt.validate();
    prof.validate();
    if (pair.from == pair.to) return 0.0;
    const ComponentLimits cl = component_limits(kind, limit, mkt, prof);
    // Compose the spanned links multiplicatively: 1-C factors along the chain.
    double one_minus = 1.0;
    if (type_rank(pair.from) <= 0 && type_rank(pair.to) >= 1) one_minus *= 1.0 - cl.um;
    if (type_rank(pair.from) <= 1 && type_rank(pair.to) >= 2) one_minus *= 1.0 - cl.mr;
    if (type_rank(pair.from) <= 2 && type_rank(pair.to) >= 3) one_minus *= 1.0 - cl.ri;
    return 1.0 - one_minus;
}

} // namespace infocost
