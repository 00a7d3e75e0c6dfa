#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eulerpi/fixed_point.hpp"
#include "eulerpi/series.hpp"

namespace eulerpi {

/// Test hooks that deliberately break a formula so verification paths can be
/// shown to fail.
struct FaultInjection {
    bool corrupt_jupiter_coefficient = false;
};

struct WeightedResult {
    std::int64_t coefficient;
    const EvalResult& result;
};

/// sum(c_i * v_i) with error sum(|c_i| * e_i). Exact apart from the inputs' errors.
inline EvalResult combine(std::span<const WeightedResult> parts, std::size_t scale) {
    EvalResult out{FixedPoint(scale), 0, BigUint{}, 0, {}};
    for (const auto& [coefficient, r] : parts) {
        const std::uint64_t weight = coefficient < 0 ? ~static_cast<std::uint64_t>(coefficient) + 1
                                                     : static_cast<std::uint64_t>(coefficient);
        out.value = out.value + fx_mul_small(r.value, coefficient);
        out.error_ulps += mul_small(r.error_ulps, weight);
        out.terms_used += r.terms_used;
        out.component_terms.insert(out.component_terms.end(), r.component_terms.begin(), r.component_terms.end());
    }
    out.guaranteed_digits = guaranteed_digits(scale, out.error_ulps);
    return out;
}

inline EvalResult combine(std::initializer_list<WeightedResult> parts, std::size_t scale) {
    return combine(std::span<const WeightedResult>(parts.begin(), parts.size()), scale);
}

namespace detail {

inline EvalResult require_digits(EvalResult r, const PrecisionContext& ctx) {
    if (r.guaranteed_digits < ctx.target_digits()) throw InsufficientPrecision(ctx.target_digits(), r.guaranteed_digits);
    return r;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The case sum: 2*saturn + 2*jupiter + mars = arctan(x / (2 - x)).

inline constexpr std::array<std::int64_t, 3> kSunCoefficients = {2, 2, 1};

inline std::array<SeriesSpec, 3> sun_series(CaseId id) {
    return {series_for_case(id, Component::Saturn), series_for_case(id, Component::Jupiter),
            series_for_case(id, Component::Mars)};
}

inline PrecisionContext plan_sun(CaseId id, std::size_t target_digits) {
    const auto specs = sun_series(id);
    return plan_context(target_digits, specs);
}

inline EvalResult sun(CaseId id, const PrecisionContext& ctx, const FaultInjection& faults = {}) {
    const auto specs = sun_series(id);
    const EvalResult saturn = eval_series(specs[0], ctx);
    const EvalResult jupiter = eval_series(specs[1], ctx);
    const EvalResult mars = eval_series(specs[2], ctx);
    const std::int64_t jupiter_coefficient = faults.corrupt_jupiter_coefficient ? 3 : kSunCoefficients[1];
    return detail::require_digits(
        combine({{kSunCoefficients[0], saturn}, {jupiter_coefficient, jupiter}, {kSunCoefficients[2], mars}},
                ctx.scale()),
        ctx);
}

// ---------------------------------------------------------------------------
// Identities.

struct IdentityVerdict {
    bool pass = false;
    BigUint residual_ulps;
    BigUint bound_ulps;
    std::size_t scale = 0;
};

inline PrecisionContext plan_identity(std::size_t target_digits) {
    std::vector<SeriesSpec> specs;
    for (CaseId id : kCases)
        for (const auto& s : sun_series(id)) specs.push_back(s);
    return plan_context(target_digits, specs);
}

/// Checks 2 arctan(1/3) + arctan(1/7) = arctan(1) through the three case sums.
/// The residual passes iff it is within the combined error bound.
inline IdentityVerdict verify_arctan_identity(const PrecisionContext& ctx, const FaultInjection& faults = {}) {
    if (ctx.target_digits() < 10) throw std::invalid_argument("identity check needs at least 10 digits");
    const EvalResult half = sun(CaseId::XHalf, ctx, faults);
    const EvalResult quarter = sun(CaseId::XQuarter, ctx, faults);
    const EvalResult one = sun(CaseId::X1, ctx, faults);
    const EvalResult diff = combine({{2, half}, {1, quarter}, {-1, one}}, ctx.scale());
    IdentityVerdict v;
    v.residual_ulps = diff.value.magnitude();
    v.bound_ulps = diff.error_ulps;
    v.pass = v.residual_ulps <= v.bound_ulps;
    v.scale = ctx.scale();
    return v;
}

struct FactorizationVerdict {
    bool pass = false;
    std::vector<std::int64_t> coefficients; // constant term first
};

/// Expands the product of two quadratics (constant term first) and checks it
/// against 4 + x^4.
inline FactorizationVerdict verify_factorization(std::array<std::int64_t, 3> first = {2, 2, 1},
                                                 std::array<std::int64_t, 3> second = {2, -2, 1}) {
    FactorizationVerdict v;
    v.coefficients.assign(first.size() + second.size() - 1, 0);
    for (std::size_t i = 0; i < first.size(); ++i)
        for (std::size_t j = 0; j < second.size(); ++j) v.coefficients[i + j] += first[i] * second[j];
    v.pass = v.coefficients == std::vector<std::int64_t>{4, 0, 0, 0, 1};
    return v;
}

// ---------------------------------------------------------------------------
// Pi.

enum class PiFormulaId { Case1, Combined, MachinOracle, LeibnizBaseline };

/// coefficient * arctan(num/den)
struct ArctanTerm {
    std::int64_t coefficient;
    std::uint64_t num;
    std::uint64_t den;
};

struct PiFormula {
    PiFormulaId id;
    std::string_view name;
    std::vector<ArctanTerm> terms;

    static PiFormula of(PiFormulaId id) {
        switch (id) {
        case PiFormulaId::Case1: return {id, "case1", {{4, 1, 1}}};
        case PiFormulaId::Combined: return {id, "combined", {{8, 1, 3}, {4, 1, 7}}};
        case PiFormulaId::MachinOracle: return {id, "machin", {{16, 1, 5}, {-4, 1, 239}}};
        case PiFormulaId::LeibnizBaseline: return {id, "leibniz", {{4, 1, 1}}};
        }
        throw std::invalid_argument("unknown pi formula");
    }
};

/// arctan(1/n) = sum (-1)^k n^-(2k+1) / (2k+1)
inline SeriesSpec arctan_taylor_series(std::uint64_t n) { return SeriesSpec{1, n, 1, 2, n * n}; }

inline constexpr std::size_t kLeibnizMaxDigits = 12;
inline constexpr std::uint64_t kLeibnizDefaultCap = 1'000'000;

/// The series each formula evaluates, before formula coefficients apply.
inline std::vector<SeriesSpec> evaluated_series(PiFormulaId id) {
    std::vector<SeriesSpec> out;
    auto append = [&](CaseId c) {
        for (const auto& s : sun_series(c)) out.push_back(s);
    };
    switch (id) {
    case PiFormulaId::Case1: append(CaseId::X1); break;
    case PiFormulaId::Combined:
        append(CaseId::XHalf);
        append(CaseId::XQuarter);
        break;
    case PiFormulaId::MachinOracle:
        out.push_back(arctan_taylor_series(5));
        out.push_back(arctan_taylor_series(239));
        break;
    case PiFormulaId::LeibnizBaseline: break; // ratio 1; not a SeriesSpec
    }
    return out;
}

/// The series of a Euler formula with every coefficient folded into the
/// prefactor, i.e. pi written directly as a sum of series.
inline std::vector<SeriesSpec> pi_series(PiFormulaId id) {
    std::vector<SeriesSpec> out;
    auto append = [&](CaseId c, std::uint64_t outer) {
        const auto specs = sun_series(c);
        for (std::size_t i = 0; i < specs.size(); ++i)
            out.push_back(specs[i].scaled(outer * static_cast<std::uint64_t>(kSunCoefficients[i])));
    };
    switch (id) {
    case PiFormulaId::Case1: append(CaseId::X1, 4); break;
    case PiFormulaId::Combined:
        append(CaseId::XHalf, 8);
        append(CaseId::XQuarter, 4);
        break;
    default: throw std::invalid_argument("pi_series is defined for the Euler formulas only");
    }
    return out;
}

inline PrecisionContext plan_pi(PiFormulaId id, std::size_t target_digits,
                                std::uint64_t leibniz_cap = kLeibnizDefaultCap) {
    if (id == PiFormulaId::LeibnizBaseline) return PrecisionContext::for_operations(target_digits, leibniz_cap + 1);
    const auto specs = evaluated_series(id);
    return plan_context(target_digits, specs);
}

namespace detail {

// 4 * (1 - 1/3 + 1/5 - ...) over `cap` terms; the remainder bound is 4/(2N+1).
inline EvalResult leibniz_partial_sum(const PrecisionContext& ctx, std::uint64_t cap) {
    const std::size_t scale = ctx.scale();
    const FixedPoint four = FixedPoint::from_integer(4, scale);
    ErrorLedger ledger;
    FixedPoint sum(scale);
    for (std::uint64_t k = 0; k < cap; ++k) {
        FixedPoint term = fx_div_small(four, 2 * k + 1, ledger);
        sum = (k % 2 == 0) ? sum + term : sum - term;
    }
    BigUint remainder = four.magnitude();
    if (remainder.divmod_small(2 * cap + 1) != 0) remainder += BigUint(1);
    ledger.charge(remainder);
    return EvalResult{std::move(sum), cap, ledger.ulps(), guaranteed_digits(scale, ledger.ulps()), {cap}};
}

} // namespace detail

/// The Leibniz baseline is refused beyond a dozen digits and otherwise returns
/// whatever its capped partial sum certifies, which may be fewer digits than
/// requested. Every other formula throws InsufficientPrecision in that case.
inline EvalResult compute_pi(PiFormulaId id, const PrecisionContext& ctx, const FaultInjection& faults = {},
                             std::uint64_t leibniz_cap = kLeibnizDefaultCap) {
    const std::size_t scale = ctx.scale();
    switch (id) {
    case PiFormulaId::Case1: {
        const EvalResult s = sun(CaseId::X1, ctx, faults);
        return detail::require_digits(combine({{4, s}}, scale), ctx);
    }
    case PiFormulaId::Combined: {
        const EvalResult third = sun(CaseId::XHalf, ctx, faults);
        const EvalResult seventh = sun(CaseId::XQuarter, ctx, faults);
        return detail::require_digits(combine({{8, third}, {4, seventh}}, scale), ctx);
    }
    case PiFormulaId::MachinOracle: {
        const EvalResult fifth = eval_series(arctan_taylor_series(5), ctx);
        const EvalResult big = eval_series(arctan_taylor_series(239), ctx);
        return detail::require_digits(combine({{16, fifth}, {-4, big}}, scale), ctx);
    }
    case PiFormulaId::LeibnizBaseline:
        if (ctx.target_digits() > kLeibnizMaxDigits)
            throw std::domain_error("Leibniz baseline refuses more than " + std::to_string(kLeibnizMaxDigits)
                                    + " digits: its term count grows like 10^digits");
        if (leibniz_cap == 0) throw std::invalid_argument("Leibniz term cap must be positive");
        return detail::leibniz_partial_sum(ctx, leibniz_cap);
    }
    throw std::invalid_argument("unknown pi formula");
}

inline EvalResult compute_pi(const PiFormula& formula, const PrecisionContext& ctx, const FaultInjection& faults = {},
                             std::uint64_t leibniz_cap = kLeibnizDefaultCap) {
    return compute_pi(formula.id, ctx, faults, leibniz_cap);
}

// ---------------------------------------------------------------------------
// Convergence comparison.

struct ComparisonRow {
    std::string method;
    std::string ratio;
    std::optional<double> terms_per_digit; // ln 10 / ln q_den
    std::optional<std::uint64_t> terms_for_target;
    std::string terms_symbolic; // set when terms_for_target is not evaluated
    std::string notes;

    std::string terms_display() const {
        return terms_for_target ? std::to_string(*terms_for_target) : terms_symbolic;
    }
};

inline double terms_per_digit(std::uint64_t q_den) {
    return std::log(10.0) / std::log(static_cast<double>(q_den));
}

/// Terms per series for the case sum to reach `target_digits`; the row
/// figure is the slowest of the three.
inline std::uint64_t euler_case_terms(CaseId id, std::size_t target_digits, std::uint64_t* total = nullptr) {
    const auto specs = sun_series(id);
    std::uint64_t worst = 0, sum = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        std::uint64_t n = terms_needed(specs[i].scaled(static_cast<std::uint64_t>(kSunCoefficients[i])), target_digits);
        worst = std::max(worst, n);
        sum += n;
    }
    if (total) *total = sum;
    return worst;
}

/// Each row counts the terms needed to get one arctangent value to
/// `target_digits` places.
inline std::vector<ComparisonRow> compare_convergence(std::size_t target_digits) {
    if (target_digits == 0) throw std::invalid_argument("target digits must be >= 1");
    std::vector<ComparisonRow> rows;

    rows.push_back({"leibniz", "1", std::nullopt, std::nullopt,
                    "≈5e" + std::to_string(target_digits - 1),
                    "remainder 1/(2N+1) < 10^-" + std::to_string(target_digits) + "; bound only, not evaluated"});

    // arctan(1/sqrt 3) = (1/sqrt 3) * sum (-1)^k 3^-k / (2k+1); prefactor bounded above by 1.
    const SeriesSpec sharp{1, 1, 1, 2, 3};
    rows.push_back({"sharp_model", "1/3", terms_per_digit(3), terms_needed(sharp, target_digits), "",
                    "irrational terms; rate modeled only, not evaluated"});

    struct EulerRow {
        const char* name;
        CaseId id;
    };
    for (const auto& [name, id] : {EulerRow{"euler_x1", CaseId::X1}, EulerRow{"euler_x_half", CaseId::XHalf},
                                    EulerRow{"euler_x_quarter", CaseId::XQuarter}}) {
        const auto c = CaseParams::of(id);
        std::uint64_t total = 0;
        const std::uint64_t worst = euler_case_terms(id, target_digits, &total);
        rows.push_back({name, "1/" + std::to_string(c.q_den), terms_per_digit(c.q_den), worst, "",
                        std::string(c.target_description) + "; 3 rational series, " + std::to_string(total)
                            + " terms in all; denominators powers of two"});
    }

    for (std::uint64_t n : {5u, 239u}) {
        const SeriesSpec s = arctan_taylor_series(n);
        rows.push_back({"machin_arctan_1_" + std::to_string(n), "1/" + std::to_string(s.q_den),
                        terms_per_digit(s.q_den), terms_needed(s, target_digits), "",
                        "arctan(1/" + std::to_string(n) + ") Taylor series"});
    }
    return rows;
}

} // namespace eulerpi
