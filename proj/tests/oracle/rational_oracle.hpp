#pragma once

// Exact rational reference arithmetic built on GMP. Nothing here touches the
// library's BigUint/FixedPoint arithmetic except the one-way conversion
// to_rational(), which reads a FixedPoint's decimal string.

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "eulerpi/fixed_point.hpp"
#include "eulerpi/series.hpp"

namespace oracle {

inline mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

inline mpz_class pow_ui(unsigned long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline mpz_class from_u64(std::uint64_t v) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return r;
}

inline mpq_class to_rational(const eulerpi::FixedPoint& x) {
    mpq_class q(mpz_class(x.magnitude().to_string()), pow10(x.scale()));
    q.canonicalize();
    return x.sign() < 0 ? mpq_class(-q) : q;
}

inline mpq_class ulp(std::size_t scale) { return mpq_class(1, pow10(scale)); }

inline mpq_class prefactor(const eulerpi::SeriesSpec& s) {
    mpq_class p(from_u64(s.prefactor_num), from_u64(s.prefactor_den));
    p.canonicalize();
    return p;
}

/// Signed k-th term: prefactor * (-1)^k / (q_den^k * (offset + step*k)).
inline mpq_class term(const eulerpi::SeriesSpec& s, unsigned long k) {
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), from_u64(s.q_den).get_mpz_t(), k);
    den *= from_u64(s.offset) + from_u64(s.step) * k;
    mpq_class t(1, den);
    t.canonicalize();
    t *= prefactor(s);
    return k % 2 == 0 ? t : mpq_class(-t);
}

inline mpq_class partial_sum(const eulerpi::SeriesSpec& s, unsigned long n_terms) {
    mpq_class sum = 0;
    for (unsigned long k = 0; k < n_terms; ++k) sum += term(s, k);
    return sum;
}

/// arctan(p/q) by its Taylor series, summed until the first omitted term is
/// below 10^-(digits + 10). Returns the partial sum and that remainder bound.
/// arctan(1) converges too slowly that way and goes through
/// 4 arctan(1/5) - arctan(1/239) instead.
struct Enclosure {
    mpq_class value;
    mpq_class radius;
};

inline Enclosure arctan(unsigned long p, unsigned long q, unsigned long digits) {
    if (p == q) {
        const Enclosure a = arctan(1, 5, digits + 1);
        const Enclosure b = arctan(1, 239, digits + 1);
        return {4 * a.value - b.value, 4 * a.radius + b.radius};
    }
    mpq_class x(p, q);
    x.canonicalize();
    const mpq_class x2 = x * x;
    const mpq_class tol(1, pow10(digits + 10));
    mpq_class power = x;
    mpq_class sum = 0;
    for (unsigned long k = 0;; ++k) {
        mpq_class t = power / (2 * k + 1);
        if (t < tol) return {sum, t};
        sum += k % 2 == 0 ? t : mpq_class(-t);
        power *= x2;
    }
}

inline mpq_class abs(const mpq_class& v) { return v < 0 ? mpq_class(-v) : v; }

/// Decimal expansion of a non-negative rational truncated to `digits` places.
inline std::string truncated_decimal(const mpq_class& v, unsigned long digits) {
    mpz_class scaled = v.get_num() * pow10(digits) / v.get_den();
    std::string s = scaled.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits == 0) return s;
    return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

/// Truncated expansion of an enclosure; empty if the enclosure straddles a
/// digit boundary.
inline std::string certified_decimal(const Enclosure& e, unsigned long digits) {
    std::string lo = truncated_decimal(e.value - e.radius, digits);
    std::string hi = truncated_decimal(e.value + e.radius, digits);
    return lo == hi ? lo : std::string{};
}

/// Pi to `digits` places by Machin's formula in scaled mpz integer arithmetic
/// (the classic arccot loop), independent of the library's series engine.
inline std::string machin_pi_digits(unsigned long digits) {
    const unsigned long guard = 12;
    const mpz_class unity = pow10(digits + guard);
    auto arccot = [&](unsigned long n) {
        mpz_class sum = 0, power = unity / n;
        const unsigned long n2 = n * n;
        for (unsigned long k = 0; power != 0; ++k) {
            mpz_class t = power / (2 * k + 1);
            if (k % 2 == 0)
                sum += t;
            else
                sum -= t;
            power /= n2;
        }
        return sum;
    };
    mpz_class pi = 16 * arccot(5) - 4 * arccot(239);
    // Each arccot is off by at most a few hundred units of 10^-(digits+guard).
    Enclosure e{mpq_class(pi, unity), mpq_class(mpz_class(100000), unity)};
    e.value.canonicalize();
    e.radius.canonicalize();
    return certified_decimal(e, digits);
}

} // namespace oracle
