#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "eulerpi/biguint.hpp"
#include "eulerpi/fixed_point.hpp"

namespace eulerpi {

enum class CaseId { X1, XHalf, XQuarter };

/// The three integrals dx/(4+x^4), x dx/(4+x^4), x^2 dx/(4+x^4).
enum class Component { Saturn, Jupiter, Mars };

inline constexpr Component kComponents[] = {Component::Saturn, Component::Jupiter, Component::Mars};
inline constexpr CaseId kCases[] = {CaseId::X1, CaseId::XHalf, CaseId::XQuarter};

constexpr std::string_view to_string(Component c) noexcept {
    switch (c) {
    case Component::Saturn: return "saturn";
    case Component::Jupiter: return "jupiter";
    case Component::Mars: return "mars";
    }
    return "?";
}

constexpr std::string_view to_string(CaseId c) noexcept {
    switch (c) {
    case CaseId::X1: return "1";
    case CaseId::XHalf: return "1/2";
    case CaseId::XQuarter: return "1/4";
    }
    return "?";
}

/// (prefactor_num / prefactor_den) * sum_{k>=0} (-1)^k q_den^-k / (offset + step*k)
struct SeriesSpec {
    std::uint64_t prefactor_num = 1;
    std::uint64_t prefactor_den = 1;
    std::uint64_t offset = 1;
    std::uint64_t step = 1;
    std::uint64_t q_den = 2;

    void validate() const {
        if (prefactor_num == 0 || prefactor_den == 0) throw std::invalid_argument("series prefactor must be positive");
        if (offset == 0 || step == 0) throw std::invalid_argument("series offset and step must be >= 1");
        if (q_den < 2) throw std::invalid_argument("series ratio denominator must be >= 2");
    }

    /// offset + step*k, checked against overflow.
    std::uint64_t denominator(std::uint64_t k) const {
        if (k != 0 && step > (std::numeric_limits<std::uint64_t>::max() - offset) / k)
            throw std::overflow_error("series term denominator overflows 64 bits");
        return offset + step * k;
    }

    /// Same series scaled by an integer coefficient, reduced.
    SeriesSpec scaled(std::uint64_t coefficient) const {
        SeriesSpec s = *this;
        std::uint64_t g = std::gcd(coefficient, prefactor_den);
        s.prefactor_num = prefactor_num * (coefficient / g);
        s.prefactor_den = prefactor_den / g;
        return s;
    }

    friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct CaseParams {
    CaseId id;
    std::uint64_t x_num;
    std::uint64_t x_den;
    std::uint64_t q_den;      // q = x^4/4 = 1/q_den
    std::uint64_t target_num; // the case's sum equals arctan(target_num/target_den)
    std::uint64_t target_den;
    std::string_view target_description;

    static constexpr CaseParams of(CaseId id) {
        switch (id) {
        case CaseId::X1: return {id, 1, 1, 4, 1, 1, "arctan(1) = pi/4"};
        case CaseId::XHalf: return {id, 1, 2, 64, 1, 3, "arctan(1/3)"};
        case CaseId::XQuarter: return {id, 1, 4, 1024, 1, 7, "arctan(1/7)"};
        }
        throw std::invalid_argument("unknown case");
    }
};

struct EvalResult {
    FixedPoint value;
    std::uint64_t terms_used = 0;
    BigUint error_ulps;
    std::size_t guaranteed_digits = 0;
    /// Terms summed by each underlying series, in evaluation order.
    std::vector<std::uint64_t> component_terms;

    ErrorLedger ledger() const { return ErrorLedger(error_ulps); }
};

namespace detail {

constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a == 0 ? 0 : (a - 1) / b + 1; }

} // namespace detail

/// Saturn: x/4, denominators 4k+1. Jupiter: x^2/8, 2k+1. Mars: x^3/4, 4k+3.
/// The ratio is q = x^4/4 in every case.
inline SeriesSpec series_for_case(const CaseParams& c, Component component) {
    unsigned power = 1;
    std::uint64_t constant = 4;
    SeriesSpec s;
    switch (component) {
    case Component::Saturn:
        power = 1, constant = 4, s.offset = 1, s.step = 4;
        break;
    case Component::Jupiter:
        power = 2, constant = 8, s.offset = 1, s.step = 2;
        break;
    case Component::Mars:
        power = 3, constant = 4, s.offset = 3, s.step = 4;
        break;
    }
    std::uint64_t num = detail::ipow(c.x_num, power);
    std::uint64_t den = detail::ipow(c.x_den, power) * constant;
    std::uint64_t g = std::gcd(num, den);
    s.prefactor_num = num / g;
    s.prefactor_den = den / g;
    s.q_den = c.q_den;
    return s;
}

inline SeriesSpec series_for_case(CaseId id, Component component) {
    return series_for_case(CaseParams::of(id), component);
}

/// Smallest N with prefactor * q^N / (offset + step*N) < 10^-target_digits,
/// decided in exact integer arithmetic.
inline std::uint64_t terms_needed(const SeriesSpec& spec, std::size_t target_digits) {
    spec.validate();
    const BigUint lhs = BigUint::pow10(target_digits).mul_small(spec.prefactor_num);
    BigUint scaled_power(spec.prefactor_den); // prefactor_den * q_den^N
    for (std::uint64_t n = 0;; ++n) {
        if (lhs < mul_small(scaled_power, spec.denominator(n))) return n;
        scaled_power.mul_small(spec.q_den);
    }
}

/// Smallest-guard context whose scale covers every truncating operation the
/// listed series will perform at that scale, plus `extra_ops`.
inline PrecisionContext plan_context(std::size_t target_digits, std::span<const SeriesSpec> specs,
                                     std::uint64_t extra_ops = 0) {
    std::size_t guard = PrecisionContext::kMinGuardDigits;
    for (;;) {
        std::uint64_t ops = extra_ops;
        for (const auto& s : specs) ops += 2 * terms_needed(s, target_digits + guard) + 1;
        std::size_t needed = PrecisionContext::required_guard_digits(ops);
        if (needed <= guard) return PrecisionContext(target_digits, guard);
        guard = needed;
    }
}

/// Forward summation with a running power p_k = prefactor * q^k. The term
/// count is fixed up front so that the first omitted term is below one ulp.
inline EvalResult eval_series(const SeriesSpec& spec, const PrecisionContext& ctx) {
    spec.validate();
    const std::size_t scale = ctx.scale();
    const std::uint64_t n_terms = terms_needed(spec, scale);
    const std::uint64_t planned_ops = 2 * n_terms + 1;
    if (!ctx.covers(planned_ops)) {
        const std::size_t guard = PrecisionContext::required_guard_digits(planned_ops);
        throw InsufficientPrecision(ctx.target_digits(), scale > guard ? scale - guard : 0);
    }

    ErrorLedger ledger;
    ErrorLedger power_ledger;
    FixedPoint power = fx_div_small(fx_mul_small(FixedPoint::one(scale), static_cast<std::int64_t>(spec.prefactor_num)),
                                    spec.prefactor_den, power_ledger);
    std::uint64_t power_err = 1; // ulps of error in `power`; stays <= 2 since q_den >= 2
    FixedPoint sum(scale);

    for (std::uint64_t k = 0; k < n_terms; ++k) {
        const std::uint64_t divisor = spec.denominator(k);
        ledger.charge(detail::ceil_div(power_err, divisor));
        FixedPoint term = fx_div_small(power, divisor, ledger);
        sum = (k % 2 == 0) ? sum + term : sum - term;
        if (k + 1 < n_terms) {
            power = fx_div_small(power, spec.q_den, power_ledger);
            power_err = detail::ceil_div(power_err, spec.q_den) + 1;
        }
    }
    // Alternating remainder: |first omitted term| < 10^-scale.
    ledger.charge(1);

    const std::size_t certified = guaranteed_digits(scale, ledger.ulps());
    if (certified < ctx.target_digits()) throw InsufficientPrecision(ctx.target_digits(), certified);
    return EvalResult{std::move(sum), n_terms, ledger.ulps(), certified, {n_terms}};
}

/// |term_{k+1}| / |term_k| as an exact reduced fraction.
struct TermRatio {
    std::uint64_t num;
    BigUint den;

    /// True iff num/den < 1/q_den.
    bool below_reciprocal(std::uint64_t q_den) const { return mul_small(BigUint(num), q_den) < den; }
};

inline TermRatio consecutive_term_ratio(const SeriesSpec& spec, std::uint64_t k) {
    spec.validate();
    std::uint64_t num = spec.denominator(k);
    std::uint64_t next = spec.denominator(k + 1);
    std::uint64_t q = spec.q_den;
    std::uint64_t g = std::gcd(num, q);
    num /= g, q /= g;
    g = std::gcd(num, next);
    num /= g, next /= g;
    return TermRatio{num, mul_small(BigUint(q), next)};
}

} // namespace eulerpi
