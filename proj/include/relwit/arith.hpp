#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relwit {

/// Arbitrary-precision signed integer. All arithmetic in this library is exact;
/// there is no floating point anywhere.
using ExactInt = boost::multiprecision::cpp_int;

inline bool is_prime(const ExactInt& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (ExactInt d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline ExactInt int_pow(ExactInt base, unsigned long e) {
    ExactInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// p-adic valuation value: a nonnegative integer or the distinguished
/// "infinite" value (valuation of zero). Never a sentinel integer.
class Valuation {
public:
    static Valuation infinite() { return Valuation(true, 0); }
    static Valuation finite(unsigned long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    unsigned long value() const {
        if (infinite_) throw std::logic_error("valuation is infinite");
        return value_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator==(const Valuation& a, unsigned long v) {
        return !a.infinite_ && a.value_ == v;
    }

    std::string to_string() const {
        return infinite_ ? "infinite" : std::to_string(value_);
    }

private:
    Valuation(bool inf, unsigned long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    unsigned long value_;
};

/// v_p(n): the largest e with p^e | n; infinite exactly when n = 0.
inline Valuation vp(ExactInt n, const ExactInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("vp: p is not prime");
    if (n == 0) return Valuation::infinite();
    if (n < 0) n = -n;
    unsigned long e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return Valuation::finite(e);
}

/// v_p((1+alpha)^n - 1) for alpha in pZ (in 4Z if p = 2) and n >= 1.
/// Equals v_p(alpha) + v_p(n) on that domain. Computed exactly by modular
/// powering at increasing working precision until the valuation resolves.
inline unsigned long unit_power_valuation(const ExactInt& p, const ExactInt& alpha,
                                          const ExactInt& n) {
    if (!is_prime(p)) throw std::invalid_argument("unit_power_valuation: p is not prime");
    if (n < 1) throw std::domain_error("unit_power_valuation: n must be positive");
    Valuation va = vp(alpha, p);
    if (va.is_infinite()) throw std::domain_error("unit_power_valuation: alpha = 0");
    unsigned long need = (p == 2) ? 2 : 1;
    if (va.value() < need)
        throw std::domain_error("unit_power_valuation: v_p(alpha) too small");

    unsigned long guess = va.value() + vp(n, p).value();
    for (unsigned long prec = guess + 4;; prec *= 2) {
        ExactInt mod = int_pow(p, prec);
        ExactInt base = ((1 + alpha) % mod + mod) % mod;
        ExactInt r = boost::multiprecision::powm(base, n, mod);
        r = (r - 1 + mod) % mod;
        if (r != 0) {
            Valuation v = vp(r, p);
            if (v.value() < prec) return v.value();
        }
        if (prec > 1u << 20)
            throw std::domain_error("unit_power_valuation: valuation did not resolve");
    }
}

/// Truncated p-adic integer: a residue mod p^N together with the precision N.
/// The residue is always reduced; precision is carried through operations and
/// never silently increased.
class PadicInt {
public:
    PadicInt(ExactInt p, unsigned precision, ExactInt value)
        : p_(std::move(p)), precision_(precision) {
        if (!is_prime(p_)) throw std::invalid_argument("PadicInt: p is not prime");
        if (precision_ < 1) throw std::invalid_argument("PadicInt: precision must be >= 1");
        modulus_ = int_pow(p_, precision_);
        residue_ = ((value % modulus_) + modulus_) % modulus_;
    }

    const ExactInt& prime() const { return p_; }
    unsigned precision() const { return precision_; }
    const ExactInt& residue() const { return residue_; }
    const ExactInt& modulus() const { return modulus_; }

    /// Valuation of the residue, capped at the precision; "infinite" means
    /// indistinguishable from zero at this precision.
    Valuation valuation() const {
        if (residue_ == 0) return Valuation::infinite();
        return vp(residue_, p_);
    }

    PadicInt with_precision(unsigned n) const {
        if (n > precision_)
            throw std::invalid_argument("PadicInt: cannot increase precision");
        return PadicInt(p_, n, residue_);
    }

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b) {
        return combine(a, b, a.residue_ + b.residue_);
    }
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b) {
        return combine(a, b, a.residue_ - b.residue_);
    }
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b) {
        return combine(a, b, a.residue_ * b.residue_);
    }
    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        if (a.p_ != b.p_) return false;
        unsigned n = std::min(a.precision_, b.precision_);
        ExactInt m = int_pow(a.p_, n);
        return a.residue_ % m == b.residue_ % m;
    }

    /// Multiplicative inverse of a unit residue.
    PadicInt inverse() const {
        if (residue_ % p_ == 0) throw std::domain_error("PadicInt: not a unit");
        // unit group of Z/p^N has order p^(N-1)(p-1)
        ExactInt order = int_pow(p_, precision_ - 1) * (p_ - 1);
        ExactInt inv = boost::multiprecision::powm(residue_, order - 1, modulus_);
        return PadicInt(p_, precision_, inv);
    }

    PadicInt pow(const ExactInt& e) const {
        if (e < 0) return inverse().pow(-e);
        return PadicInt(p_, precision_, boost::multiprecision::powm(residue_, e, modulus_));
    }

private:
    static PadicInt combine(const PadicInt& a, const PadicInt& b, ExactInt v) {
        if (a.p_ != b.p_) throw std::invalid_argument("PadicInt: prime mismatch");
        return PadicInt(a.p_, std::min(a.precision_, b.precision_), std::move(v));
    }

    ExactInt p_;
    unsigned precision_;
    ExactInt residue_;
    ExactInt modulus_;
};

namespace detail {

// Convergence threshold n > 1/(p-1): valuation >= 1 for odd p, >= 2 for p = 2.
inline unsigned long convergence_floor(const ExactInt& p) { return p == 2 ? 2 : 1; }

// Series engine shared by log and exp. Works on the canonical integer lift at
// guard precision N + vmax, dividing each term's p-part out exactly and
// multiplying by the inverse of the unit part.
struct SeriesContext {
    ExactInt p;
    unsigned target;     // N
    unsigned work;       // N + guard
    ExactInt mod_work;
    ExactInt mod_target;

    SeriesContext(const ExactInt& prime, unsigned N, unsigned guard)
        : p(prime), target(N), work(N + guard),
          mod_work(int_pow(prime, N + guard)), mod_target(int_pow(prime, N)) {}

    ExactInt unit_inverse(const ExactInt& w) const {
        ExactInt order = int_pow(p, work - 1) * (p - 1);
        return boost::multiprecision::powm(w % mod_work, order - 1, mod_work);
    }
};

}  // namespace detail

/// p-adic logarithm, truncated series log(u) = sum (-1)^{i+1} (u-1)^i / i.
/// Requires u = 1 mod p^n with n > 1/(p-1). The result is correct to the input
/// precision (the series derivative is a unit, so no digits are lost); division
/// by p inside the series is absorbed by an internal guard precision.
inline PadicInt padic_log(const PadicInt& u) {
    const ExactInt& p = u.prime();
    const unsigned N = u.precision();
    ExactInt x = u.residue() - 1;
    if (x == 0) return PadicInt(p, N, 0);
    Valuation vx = vp(x, p);
    if (vx.value() < detail::convergence_floor(p))
        throw std::domain_error("padic_log: argument outside convergence domain");
    const unsigned long n0 = vx.value();

    const unsigned long imax = 2 * N + 64;
    unsigned guard = 1;
    for (ExactInt q = p; q <= imax; q *= p) ++guard;
    detail::SeriesContext ctx(p, N, guard);

    ExactInt sum = 0;
    ExactInt xi = 1;  // x^i mod p^work
    for (unsigned long i = 1; i <= imax; ++i) {
        xi = xi * x % ctx.mod_work;
        unsigned long vi = vp(ExactInt(i), p).value();
        if (i * n0 < N + vi) {
            // term = x^i / i, split i = p^vi * w
            ExactInt w = ExactInt(i) / int_pow(p, vi);
            ExactInt term = xi / int_pow(p, vi) % ctx.mod_work * ctx.unit_inverse(w) % ctx.mod_work;
            if (i % 2 == 1)
                sum += term;
            else
                sum -= term;
        } else if (i * n0 >= N + static_cast<unsigned long>(guard)) {
            break;  // all later terms vanish mod p^N as well
        }
    }
    return PadicInt(p, N, sum % ctx.mod_target);
}

/// p-adic exponential, truncated series sum x^i / i!, for x in p^n Z_p with
/// n > 1/(p-1). Inverse to padic_log on the stated domains.
inline PadicInt padic_exp(const PadicInt& x) {
    const ExactInt& p = x.prime();
    const unsigned N = x.precision();
    const ExactInt& r = x.residue();
    if (r == 0) return PadicInt(p, N, 1);
    Valuation vx = vp(r, p);
    if (vx.value() < detail::convergence_floor(p))
        throw std::domain_error("padic_exp: argument outside convergence domain");
    const unsigned long n0 = vx.value();

    // v_p(i!) <= (i-1)/(p-1), so guard by imax/(p-1) + slack
    const unsigned long imax = 2 * N + 64;
    unsigned guard = static_cast<unsigned>(imax / static_cast<unsigned long>(p - 1)) + 4;
    detail::SeriesContext ctx(p, N, guard);

    ExactInt sum = 1;
    ExactInt xi = 1;
    unsigned long vfact = 0;     // v_p(i!)
    ExactInt wfact = 1;          // unit part of i! mod p^work
    for (unsigned long i = 1; i <= imax; ++i) {
        xi = xi * r % ctx.mod_work;
        ExactInt f = i;
        while (f % p == 0) {
            f /= p;
            ++vfact;
        }
        wfact = wfact * f % ctx.mod_work;
        if (i * n0 < N + vfact) {
            ExactInt term = xi / int_pow(p, vfact) % ctx.mod_work;
            term = term * ctx.unit_inverse(wfact) % ctx.mod_work;
            sum += term;
        } else if (i * n0 >= N + vfact + static_cast<unsigned long>(guard)) {
            break;
        }
    }
    return PadicInt(p, N, sum % ctx.mod_target);
}

/// Solves (1 + p^k u)^v = 1 + p^k for v in Z_p, via
/// v = log(1+p^k) / log(1+p^k u). Both logarithms have valuation exactly k, so
/// the quotient is determined mod p^(N-k); the result carries precision N - k.
inline PadicInt solve_power_exponent(const ExactInt& p, unsigned k, const PadicInt& u,
                                     unsigned N) {
    if (k < detail::convergence_floor(p))
        throw std::domain_error("solve_power_exponent: k violates convergence bound");
    if (u.prime() != p || u.residue() % p == 0)
        throw std::invalid_argument("solve_power_exponent: u must be a p-adic unit");
    if (N <= k) throw std::invalid_argument("solve_power_exponent: need N > k");

    ExactInt pk = int_pow(p, k);
    PadicInt base(p, N, 1 + pk * u.residue());
    PadicInt target(p, N, 1 + pk);
    PadicInt lb = padic_log(base);
    PadicInt lt = padic_log(target);
    if (!(lb.valuation() == k) || !(lt.valuation() == k))
        throw std::domain_error("solve_power_exponent: logarithm valuation mismatch");

    // divide both logs by p^k; the unit quotient is exact mod p^(N-k)
    PadicInt nb(p, N - k, lb.residue() / pk);
    PadicInt nt(p, N - k, lt.residue() / pk);
    return nt * nb.inverse();
}

}  // namespace relwit
