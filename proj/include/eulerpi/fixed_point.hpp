#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "eulerpi/biguint.hpp"

namespace eulerpi {

/// Two operands with different scales met in one operation.
class ScaleMismatch : public std::logic_error {
public:
    ScaleMismatch(std::size_t lhs, std::size_t rhs)
        : std::logic_error("fixed-point scale mismatch: " + std::to_string(lhs) + " vs "
                           + std::to_string(rhs)) {}
};

/// The caller asked for more digits than the error bound certifies.
class InsufficientPrecision : public std::runtime_error {
public:
    InsufficientPrecision(std::size_t requested, std::size_t guaranteed)
        : std::runtime_error("insufficient precision: requested " + std::to_string(requested)
                             + " digits, only " + std::to_string(guaranteed) + " guaranteed"),
          requested_(requested), guaranteed_(guaranteed) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t guaranteed() const noexcept { return guaranteed_; }

private:
    std::size_t requested_;
    std::size_t guaranteed_;
};

/// The certified interval crosses a digit boundary at the requested length,
/// so the truncated expansion is not determined.
class DigitStraddle : public std::runtime_error {
public:
    DigitStraddle(std::size_t digits, const std::string& low, const std::string& high)
        : std::runtime_error("error interval straddles a digit boundary at " + std::to_string(digits)
                             + " digits: " + low + " .. " + high) {}
};

/// Smallest e with 10^e >= n (0 for n <= 1).
constexpr std::size_t ceil_log10(std::uint64_t n) noexcept {
    std::size_t e = 0;
    unsigned __int128 p = 1;
    while (p < n) {
        p *= 10;
        ++e;
    }
    return e;
}

/// Worst-case accumulated absolute error, in units of the last place of the
/// working scale. Only ever grows.
class ErrorLedger {
public:
    ErrorLedger() = default;
    explicit ErrorLedger(BigUint ulps) : ulps_(std::move(ulps)) {}

    void charge(const BigUint& ulps) { ulps_ += ulps; }
    void charge(std::uint64_t ulps) { ulps_ += BigUint(ulps); }

    /// The tracked value was multiplied exactly by an integer of magnitude
    /// `factor`; its existing error scales with it.
    void amplify(std::uint64_t factor) {
        if (factor == 0) throw std::invalid_argument("ErrorLedger: amplify by zero would shrink the ledger");
        ulps_.mul_small(factor);
    }

    const BigUint& ulps() const noexcept { return ulps_; }

private:
    BigUint ulps_;
};

/// Fractional digits certified at `scale` when the error is `ulps`:
/// scale - ceil(log10(ulps + 1)) - 1, floored at zero.
inline std::size_t guaranteed_digits(std::size_t scale, const BigUint& ulps) noexcept {
    std::size_t lost = ulps.digit_count() + 1;
    return scale > lost ? scale - lost : 0;
}

/// Requested digits plus guard digits; fixes the scale of a whole computation.
class PrecisionContext {
public:
    static constexpr std::size_t kMinGuardDigits = 10;

    PrecisionContext(std::size_t target_digits, std::size_t guard_digits)
        : target_digits_(target_digits), guard_digits_(guard_digits) {
        if (target_digits == 0) throw std::invalid_argument("target digits must be positive");
        if (guard_digits == 0) throw std::invalid_argument("guard digits must be positive");
    }

    /// Guard digits sized for `planned_ops` truncating operations.
    static PrecisionContext for_operations(std::size_t target_digits, std::uint64_t planned_ops) {
        return PrecisionContext(target_digits, required_guard_digits(planned_ops));
    }

    static constexpr std::size_t required_guard_digits(std::uint64_t planned_ops) noexcept {
        return ceil_log10(planned_ops) + kMinGuardDigits;
    }

    bool covers(std::uint64_t planned_ops) const noexcept {
        return guard_digits_ >= required_guard_digits(planned_ops);
    }

    std::size_t target_digits() const noexcept { return target_digits_; }
    std::size_t guard_digits() const noexcept { return guard_digits_; }
    std::size_t scale() const noexcept { return target_digits_ + guard_digits_; }

private:
    std::size_t target_digits_;
    std::size_t guard_digits_;
};

/// sign * magnitude * 10^-scale. Immutable; every operation returns a new value.
class FixedPoint {
public:
    explicit FixedPoint(std::size_t scale) : scale_(scale) {}

    FixedPoint(int sign, BigUint magnitude, std::size_t scale)
        : sign_(magnitude.is_zero() ? 0 : (sign < 0 ? -1 : 1)), magnitude_(std::move(magnitude)),
          scale_(scale) {
        if (sign == 0 && !magnitude_.is_zero())
            throw std::invalid_argument("FixedPoint: nonzero magnitude with sign 0");
    }

    static FixedPoint from_integer(std::int64_t v, std::size_t scale) {
        std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
        return FixedPoint(v < 0 ? -1 : 1, BigUint::pow10(scale).mul_small(mag), scale);
    }

    static FixedPoint one(std::size_t scale) { return from_integer(1, scale); }

    /// Raw value of `ulps` units in the last place.
    static FixedPoint from_ulps(int sign, BigUint ulps, std::size_t scale) {
        return FixedPoint(sign, std::move(ulps), scale);
    }

    /// Parses "[-]digits[.digits]" exactly; more fractional digits than
    /// `scale` is an error rather than a silent rounding.
    static FixedPoint parse(std::string_view text, std::size_t scale) {
        int sign = 1;
        if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
            sign = text.front() == '-' ? -1 : 1;
            text.remove_prefix(1);
        }
        auto dot = text.find('.');
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("FixedPoint: empty number");
        if (frac_part.size() > scale) throw std::invalid_argument("FixedPoint: more fractional digits than scale");
        std::string digits(int_part.empty() ? "0" : int_part);
        digits += frac_part;
        digits.append(scale - frac_part.size(), '0');
        return FixedPoint(sign, BigUint::from_digits(digits), scale);
    }

    int sign() const noexcept { return sign_; }
    const BigUint& magnitude() const noexcept { return magnitude_; }
    std::size_t scale() const noexcept { return scale_; }
    bool is_zero() const noexcept { return sign_ == 0; }

    /// Full exact expansion, e.g. "-0.250" at scale 3.
    std::string to_string() const { return render(sign_, magnitude_, scale_, scale_); }

    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;

    friend FixedPoint operator-(FixedPoint a) {
        a.sign_ = -a.sign_;
        return a;
    }

    friend FixedPoint fx_add(const FixedPoint& a, const FixedPoint& b) {
        if (a.scale_ != b.scale_) throw ScaleMismatch(a.scale_, b.scale_);
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        if (a.sign_ == b.sign_) return FixedPoint(a.sign_, a.magnitude_ + b.magnitude_, a.scale_);
        if (a.magnitude_ >= b.magnitude_) return FixedPoint(a.sign_, a.magnitude_ - b.magnitude_, a.scale_);
        return FixedPoint(b.sign_, b.magnitude_ - a.magnitude_, a.scale_);
    }

    friend FixedPoint fx_sub(const FixedPoint& a, const FixedPoint& b) { return fx_add(a, -b); }

    friend FixedPoint operator+(const FixedPoint& a, const FixedPoint& b) { return fx_add(a, b); }
    friend FixedPoint operator-(const FixedPoint& a, const FixedPoint& b) { return fx_sub(a, b); }

    /// Exact; contributes no error.
    friend FixedPoint fx_mul_small(const FixedPoint& a, std::int64_t m) {
        std::uint64_t mag = m < 0 ? ~static_cast<std::uint64_t>(m) + 1 : static_cast<std::uint64_t>(m);
        return FixedPoint(m < 0 ? -a.sign_ : a.sign_, mul_small(a.magnitude_, mag), a.scale_);
    }

    /// Truncates toward zero and charges exactly one ulp to `ledger`, even
    /// when the division happens to be exact.
    friend FixedPoint fx_div_small(const FixedPoint& a, std::uint64_t m, ErrorLedger& ledger) {
        if (m == 0) throw std::domain_error("fixed-point division by zero");
        BigUint q = a.magnitude_;
        q.divmod_small(m);
        ledger.charge(1);
        const int sign = q.is_zero() ? 0 : a.sign_;
        return FixedPoint(sign, std::move(q), a.scale_);
    }

    /// Decimal expansion truncated to `want_digits` fractional digits, every
    /// one of which is certified given the error in `ledger`.
    friend std::string fx_to_decimal_string(const FixedPoint& a, const ErrorLedger& ledger,
                                            std::size_t want_digits) {
        std::size_t certified = guaranteed_digits(a.scale_, ledger.ulps());
        if (want_digits > certified) throw InsufficientPrecision(want_digits, certified);

        FixedPoint slack = from_ulps(1, ledger.ulps(), a.scale_);
        FixedPoint low = a - slack;
        FixedPoint high = a + slack;
        std::string lo = render(low.sign_, low.magnitude_, low.scale_, want_digits);
        std::string hi = render(high.sign_, high.magnitude_, high.scale_, want_digits);
        if (lo != hi) throw DigitStraddle(want_digits, lo, hi);
        return hi;
    }

private:
    // Truncates toward zero. A truncated magnitude of zero prints unsigned.
    static std::string render(int sign, const BigUint& magnitude, std::size_t scale, std::size_t digits) {
        std::string s = magnitude.to_string();
        if (s.size() <= scale) s.insert(0, scale + 1 - s.size(), '0');
        std::string int_part = s.substr(0, s.size() - scale);
        std::string frac_part = s.substr(s.size() - scale, digits);
        std::string out = int_part;
        if (digits > 0) out += "." + frac_part;
        bool all_zero = out.find_first_not_of("0.") == std::string::npos;
        if (sign < 0 && !all_zero) out.insert(0, 1, '-');
        return out;
    }

    int sign_ = 0;
    BigUint magnitude_;
    std::size_t scale_;
};

} // namespace eulerpi
