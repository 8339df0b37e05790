#pragma once

#include <relwit/arith.hpp>
#include <relwit/report.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace relwit {

inline ExactInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    ExactInt r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

/// Integer polynomial, coefficients ascending by degree, exact arithmetic.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<ExactInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(ExactInt v) { return IntPoly({std::move(v)}); }
    static IntPoly monomial(std::size_t deg, ExactInt v = 1) {
        std::vector<ExactInt> c(deg + 1, 0);
        c[deg] = std::move(v);
        return IntPoly(std::move(c));
    }

    const std::vector<ExactInt>& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    ExactInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ExactInt(0); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<ExactInt> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(c));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<ExactInt> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(c));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.zero() || b.zero()) return IntPoly();
        std::vector<ExactInt> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(c));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i == 1) s += "*s";
            if (i > 1) s += "*s^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<ExactInt> c_;
};

/// Element of the group ring Z[C_p]: integer coefficient vector of length p,
/// indexed by powers of the generator sigma; multiplication is cyclic
/// convolution (sigma^p = 1).
class GroupRingElem {
public:
    GroupRingElem(long long p, std::vector<ExactInt> coeffs)
        : p_(p), c_(std::move(coeffs)) {
        if (p_ < 2) throw std::invalid_argument("group ring: need p >= 2");
        if (c_.size() != static_cast<std::size_t>(p_))
            throw std::invalid_argument("group ring: coefficient vector must have length p");
    }
    static GroupRingElem zero(long long p) {
        return GroupRingElem(p, std::vector<ExactInt>(p, 0));
    }
    static GroupRingElem one(long long p) {
        auto e = zero(p);
        e.c_[0] = 1;
        return e;
    }
    /// sigma^t
    static GroupRingElem sigma_power(long long p, long long t) {
        auto e = zero(p);
        t %= p;
        if (t < 0) t += p;
        e.c_[static_cast<std::size_t>(t)] = 1;
        return e;
    }
    /// Reduce an integer polynomial via s^j -> sigma^(j mod p).
    static GroupRingElem from_poly(long long p, const IntPoly& poly) {
        auto e = zero(p);
        for (std::size_t j = 0; j < poly.coeffs().size(); ++j)
            e.c_[j % static_cast<std::size_t>(p)] += poly.coeffs()[j];
        return e;
    }

    long long p() const { return p_; }
    const std::vector<ExactInt>& coeffs() const { return c_; }

    friend GroupRingElem operator+(const GroupRingElem& a, const GroupRingElem& b) {
        auto r = a.compatible(b);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend GroupRingElem operator-(const GroupRingElem& a, const GroupRingElem& b) {
        auto r = a.compatible(b);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
        auto r = a.compatible(b);
        std::size_t p = r.c_.size();
        for (std::size_t i = 0; i < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < p; ++j) r.c_[(i + j) % p] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend GroupRingElem operator*(const ExactInt& s, const GroupRingElem& a) {
        auto r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].str();
        return s + ")";
    }

private:
    GroupRingElem compatible(const GroupRingElem& b) const {
        if (p_ != b.p_) throw std::invalid_argument("group ring: p mismatch");
        return zero(p_);
    }
    long long p_;
    std::vector<ExactInt> c_;
};

/// D_i(s) = sum_{j=0}^{p-i-1} C(p-j-1, i) s^j. Degree p-i-1; D_0 is the norm
/// element 1 + s + ... + s^(p-1).
inline IntPoly d_poly(long long p, long long i) {
    if (!is_prime(ExactInt(p))) throw std::invalid_argument("d_poly: p is not prime");
    if (i < 0 || i > p - 1) throw std::invalid_argument("d_poly: need 0 <= i <= p-1");
    std::vector<ExactInt> c;
    for (long long j = 0; j <= p - i - 1; ++j) c.push_back(binomial(p - j - 1, i));
    return IntPoly(std::move(c));
}

/// (s-1) D_i(s) = D_{i-1}(s) - C(p,i), verified in polynomial arithmetic for
/// every 1 <= i <= p-1.
inline Report lemma_di_check(long long p) {
    Report rep;
    rep.title = "D_i recurrence p=" + std::to_string(p);
    IntPoly s_minus_1({ExactInt(-1), ExactInt(1)});
    for (long long i = 1; i <= p - 1; ++i) {
        IntPoly lhs = s_minus_1 * d_poly(p, i);
        IntPoly rhs = d_poly(p, i - 1) - IntPoly::constant(binomial(p, i));
        rep.check("(s-1)D_" + std::to_string(i) + " = D_" + std::to_string(i - 1) + " - C(p," +
                      std::to_string(i) + ")",
                  lhs == rhs, lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
    }
    return rep;
}

/// Additive Z[C_p] form of the A_i recurrence: (sigma - 1) D_i(sigma) =
/// D_{i-1}(sigma) - C(p,i) * 1, plus the mod-p corollary (sigma-1) D_i = D_{i-1}.
inline Report module_recurrence_check(long long p) {
    Report rep;
    rep.title = "group-ring module recurrence p=" + std::to_string(p);
    auto sigma = GroupRingElem::sigma_power(p, 1);
    auto one = GroupRingElem::one(p);
    for (long long i = 1; i <= p - 1; ++i) {
        auto di = GroupRingElem::from_poly(p, d_poly(p, i));
        auto dim1 = GroupRingElem::from_poly(p, d_poly(p, i - 1));
        auto lhs = (sigma - one) * di;
        auto rhs = dim1 - binomial(p, i) * one;
        rep.check("(sigma-1)D_" + std::to_string(i) + " = D_" + std::to_string(i - 1) +
                      " - C(p,i)",
                  lhs == rhs, lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
        // p | C(p,i) for 1 <= i <= p-1, so mod p the correction term vanishes
        bool modp = true;
        auto diff = lhs - dim1;
        for (const auto& v : diff.coeffs())
            if (v % p != 0) modp = false;
        rep.check("(sigma-1)D_" + std::to_string(i) + " = D_" + std::to_string(i - 1) +
                      " mod p",
                  modp);
    }
    return rep;
}

namespace detail {

// Correction-term coefficient: c_{n,t,i} = sum_{l=0}^{i-1} C(n-1-t, l) C(p, i-l).
inline ExactInt tower_correction(long long p, long long n, long long t, long long i) {
    ExactInt c = 0;
    for (long long l = 0; l <= i - 1; ++l) c += binomial(n - 1 - t, l) * binomial(p, i - l);
    return c;
}

}  // namespace detail

/// Radical-tower induction identity in Z[C_p], everything multiplied through
/// by p to stay integral:
///   sigma^n D_i(sigma) = sum_{j=0}^{i} C(n,j) D_{i-j}(sigma)
///                        - sum_{t=0}^{n-1} c_{n,t,i} sigma^t,
/// and at n = p the exact cancellation
///   sum_{j=1}^{i} C(p,j) D_{i-j}(sigma) = sum_t c_{p,t,i} sigma^t,
/// which is the group-ring form of the p-th power acting trivially.
inline Report tower_induction_check(long long p, long long i, long long n) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("tower check: need 1 <= i <= p-1");
    if (n < 1 || n > p) throw std::invalid_argument("tower check: need 1 <= n <= p");
    Report rep;
    rep.title = "tower induction p=" + std::to_string(p) + " i=" + std::to_string(i) +
                " n=" + std::to_string(n);

    auto lhs = GroupRingElem::sigma_power(p, n) * GroupRingElem::from_poly(p, d_poly(p, i));
    auto rhs = GroupRingElem::zero(p);
    for (long long j = 0; j <= i; ++j)
        rhs = rhs + binomial(n, j) * GroupRingElem::from_poly(p, d_poly(p, i - j));
    for (long long t = 0; t <= n - 1; ++t)
        rhs = rhs - detail::tower_correction(p, n, t, i) * GroupRingElem::sigma_power(p, t);
    rep.check("sigma^n D_i = sum C(n,j) D_{i-j} - sum c_{n,t,i} sigma^t", lhs == rhs,
              lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());

    if (n == p) {
        auto a = GroupRingElem::zero(p);
        for (long long j = 1; j <= i; ++j)
            a = a + binomial(p, j) * GroupRingElem::from_poly(p, d_poly(p, i - j));
        auto b = GroupRingElem::zero(p);
        for (long long t = 0; t <= p - 1; ++t)
            b = b + detail::tower_correction(p, p, t, i) * GroupRingElem::sigma_power(p, t);
        rep.check("n = p cancellation", a == b,
                  a == b ? "" : a.to_string() + " vs " + b.to_string());
    }
    return rep;
}

/// Square matrix over Z/pZ.
class FpLinearMap {
public:
    FpLinearMap(long long p, std::size_t dim)
        : p_(p), d_(dim), m_(dim, std::vector<long long>(dim, 0)) {
        if (!is_prime(ExactInt(p))) throw std::invalid_argument("linear map: p is not prime");
        if (dim < 1) throw std::invalid_argument("linear map: need dim >= 1");
    }

    long long p() const { return p_; }
    std::size_t dim() const { return d_; }
    long long& at(std::size_t i, std::size_t j) { return m_[i][j]; }
    long long at(std::size_t i, std::size_t j) const { return m_[i][j]; }

    static FpLinearMap jordan_block(long long p, std::size_t dim) {
        FpLinearMap n(p, dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) n.m_[i][i + 1] = 1;
        return n;
    }

    std::vector<long long> apply(const std::vector<long long>& v) const {
        std::vector<long long> r(d_, 0);
        for (std::size_t i = 0; i < d_; ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < d_; ++j) acc = (acc + m_[i][j] * v[j]) % p_;
            r[i] = acc;
        }
        return r;
    }

    FpLinearMap compose(const FpLinearMap& other) const {
        FpLinearMap r(p_, d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t k = 0; k < d_; ++k) {
                if (m_[i][k] == 0) continue;
                for (std::size_t j = 0; j < d_; ++j)
                    r.m_[i][j] = (r.m_[i][j] + m_[i][k] * other.m_[k][j]) % p_;
            }
        return r;
    }

    bool zero() const {
        for (const auto& row : m_)
            for (long long v : row)
                if (v % p_ != 0) return false;
        return true;
    }

    /// Nilpotent within dim steps.
    bool is_nilpotent() const {
        FpLinearMap pw = *this;
        for (std::size_t t = 1; t <= d_; ++t) {
            if (pw.zero()) return true;
            pw = pw.compose(*this);
        }
        return pw.zero();
    }

private:
    long long p_;
    std::size_t d_;
    std::vector<std::vector<long long>> m_;
};

inline long long mod_pow64_ll(long long base, long long exp, long long mod) {
    base %= mod;
    if (base < 0) base += mod;
    long long r = 1;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

/// Row rank over Z/pZ by Gaussian elimination.
inline std::size_t fp_rank(long long p, std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        long long inv = mod_pow64_ll(rows[rank][col], p - 2, p);
        for (auto& v : rows[rank]) v = v % p * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] % p == 0) continue;
            long long f = rows[r][col] % p;
            for (std::size_t cc = 0; cc < cols; ++cc)
                rows[r][cc] = ((rows[r][cc] - f * rows[rank][cc]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Returns true iff {v, Nv, ..., N^k v} is linearly independent over Z/pZ.
/// Preconditions: N nilpotent and N^k v != 0; independence then always holds.
inline bool nilpotent_independence_check(const FpLinearMap& n,
                                         const std::vector<long long>& v, std::size_t k) {
    if (!n.is_nilpotent())
        throw std::domain_error("independence check: operator is not nilpotent");
    std::vector<std::vector<long long>> rows;
    auto cur = v;
    for (std::size_t i = 0; i <= k; ++i) {
        rows.push_back(cur);
        cur = n.apply(cur);
    }
    bool last_nonzero = false;
    for (long long x : rows.back())
        if (x % n.p() != 0) last_nonzero = true;
    if (!last_nonzero)
        throw std::domain_error("independence check: N^k v = 0 violates precondition");
    return fp_rank(n.p(), rows) == k + 1;
}

}  // namespace relwit
