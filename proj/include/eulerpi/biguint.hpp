#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eulerpi {

/// Non-negative integer of unbounded size stored as base-10^9 limbs,
/// least significant first. Only the operations a fixed-point decimal
/// carrier needs are provided: addition, subtraction, and multiplication or
/// division by a machine word. There is no big-by-big product or quotient.
class BigUint {
public:
    static constexpr std::uint32_t kBase = 1'000'000'000u;
    static constexpr unsigned kBaseDigits = 9;

    BigUint() = default;

    BigUint(std::uint64_t v) { // NOLINT(google-explicit-constructor)
        while (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
            v /= kBase;
        }
    }

    static BigUint pow10(std::size_t exponent) {
        BigUint r;
        r.limbs_.assign(exponent / kBaseDigits, 0u);
        std::uint32_t top = 1;
        for (std::size_t i = 0; i < exponent % kBaseDigits; ++i) top *= 10;
        r.limbs_.push_back(top);
        return r;
    }

    /// Parses a run of ASCII decimal digits (leading zeros allowed).
    static BigUint from_digits(std::string_view digits) {
        if (digits.empty()) throw std::invalid_argument("BigUint: empty digit string");
        BigUint r;
        std::size_t end = digits.size();
        while (end > 0) {
            std::size_t begin = end >= kBaseDigits ? end - kBaseDigits : 0;
            std::uint32_t limb = 0;
            for (std::size_t i = begin; i < end; ++i) {
                char c = digits[i];
                if (c < '0' || c > '9') throw std::invalid_argument("BigUint: non-digit character");
                limb = limb * 10 + static_cast<std::uint32_t>(c - '0');
            }
            r.limbs_.push_back(limb);
            end = begin;
        }
        r.trim();
        return r;
    }

    bool is_zero() const noexcept { return limbs_.empty(); }

    bool fits_u64() const noexcept {
        return limbs_.size() < 3 || (limbs_.size() == 3 && *this <= BigUint(~std::uint64_t{0}));
    }

    std::uint64_t to_u64() const {
        if (!fits_u64()) throw std::overflow_error("BigUint: value exceeds 64 bits");
        std::uint64_t v = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) v = v * kBase + *it;
        return v;
    }

    /// Number of decimal digits; zero has none. Equals ceil(log10(n + 1)).
    std::size_t digit_count() const noexcept {
        if (limbs_.empty()) return 0;
        std::size_t n = (limbs_.size() - 1) * kBaseDigits;
        for (std::uint32_t top = limbs_.back(); top != 0; top /= 10) ++n;
        return n;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string s = std::to_string(limbs_.back());
        for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
            std::string chunk = std::to_string(*it);
            s.append(kBaseDigits - chunk.size(), '0');
            s += chunk;
        }
        return s;
    }

    friend bool operator==(const BigUint&, const BigUint&) = default;

    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) noexcept {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    BigUint& operator+=(const BigUint& rhs) {
        if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0u);
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint32_t sum = limbs_[i] + carry + (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0u);
            carry = sum >= kBase ? 1u : 0u;
            limbs_[i] = carry ? sum - kBase : sum;
            if (!carry && i >= rhs.limbs_.size()) break;
        }
        if (carry) limbs_.push_back(carry);
        return *this;
    }

    /// Requires *this >= rhs.
    BigUint& operator-=(const BigUint& rhs) {
        if (*this < rhs) throw std::underflow_error("BigUint: subtraction would go negative");
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow
                - (i < rhs.limbs_.size() ? static_cast<std::int64_t>(rhs.limbs_[i]) : 0);
            borrow = diff < 0 ? 1 : 0;
            limbs_[i] = static_cast<std::uint32_t>(diff + borrow * kBase);
            if (!borrow && i >= rhs.limbs_.size()) break;
        }
        trim();
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

    BigUint& mul_small(std::uint64_t m) {
        if (m == 0 || limbs_.empty()) {
            limbs_.clear();
            return *this;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
        return *this;
    }

    /// Divides in place, truncating; returns the remainder.
    std::uint64_t divmod_small(std::uint64_t m) {
        if (m == 0) throw std::domain_error("BigUint: division by zero");
        unsigned __int128 rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            unsigned __int128 cur = rem * kBase + limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / m);
            rem = cur % m;
        }
        trim();
        return static_cast<std::uint64_t>(rem);
    }

    friend BigUint mul_small(BigUint a, std::uint64_t m) { return a.mul_small(m); }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

} // namespace eulerpi
