#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dhmono/rational.hpp"

namespace dhmono {

// Exact arithmetic in Q(zeta_n) for odd n >= 3. Elements are polynomials in
// zeta reduced modulo the n-th cyclotomic polynomial Phi_n, held in canonical
// form so equality is coefficient-wise. Everything is immutable after
// construction; fields are interned per n and safe to share across threads.

namespace poly {

using P = std::vector<Rat>; // coefficient k belongs to x^k, no trailing zeros

inline void trim(P& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const P& p) { return static_cast<int>(p.size()) - 1; }

inline P mul(const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline P sub(P a, const P& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline P scale(P a, const Rat& c) {
    for (auto& x : a) x *= c;
    trim(a);
    return a;
}

// quotient + remainder, divisor nonzero
inline std::pair<P, P> divmod(P num, const P& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    P q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rat(0));
    const Rat& lead = den.back();
    while (deg(num) >= deg(den)) {
        int shift = deg(num) - deg(den);
        Rat c = num.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= c * den[i];
        trim(num);
    }
    trim(q);
    return {q, num};
}

// extended gcd: g = u*a + v*b with g monic (or zero)
inline void ext_gcd(P a, P b, P& g, P& u, P& v) {
    P u0{Rat(1)}, v0, u1, v1{Rat(1)};
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        P u2 = sub(u0, mul(q, u1));
        P v2 = sub(v0, mul(q, v1));
        u0 = std::move(u1); v0 = std::move(v1);
        u1 = std::move(u2); v1 = std::move(v2);
    }
    if (!a.empty()) {
        Rat inv = 1 / a.back();
        a = scale(a, inv);
        u0 = scale(u0, inv);
        v0 = scale(v0, inv);
    }
    g = std::move(a); u = std::move(u0); v = std::move(v0);
}

// Phi_n by exact division of x^n - 1 by all lower-level factors.
inline P cyclotomic(int n) {
    static std::map<int, P> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    std::vector<int> todo{n};
    while (!todo.empty()) {
        int m = todo.back();
        if (cache.count(m)) { todo.pop_back(); continue; }
        bool ready = true;
        for (int d = 1; d < m; ++d)
            if (m % d == 0 && !cache.count(d)) { todo.push_back(d); ready = false; }
        if (!ready) continue;
        P f(m + 1, Rat(0));
        f[0] = -1;
        f[m] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto [q, r] = divmod(f, cache[d]);
            if (!r.empty()) throw std::logic_error("cyclotomic division left a remainder");
            f = std::move(q);
        }
        cache[m] = std::move(f);
        todo.pop_back();
    }
    return cache[n];
}

} // namespace poly

class CycScalar;

class CyclotomicField {
public:
    // interned, lives for the program; n odd and >= 3
    static const CyclotomicField* get(int n);

    int n() const { return n_; }
    int degree() const { return deg_; }
    const poly::P& phi() const { return phi_; }

    // x^k mod Phi_n, defined for 0 <= k <= max_pow_
    const std::vector<Rat>& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

    // conj(x^k) = x^{k(n-1) mod n} reduced
    const std::vector<Rat>& conj_basis(int k) const { return conj_[static_cast<std::size_t>(k)]; }

private:
    explicit CyclotomicField(int n);

    int n_;
    int deg_;
    poly::P phi_;
    std::vector<std::vector<Rat>> powers_;
    std::vector<std::vector<Rat>> conj_;
};

class FieldMismatch : public std::invalid_argument {
public:
    FieldMismatch() : std::invalid_argument("operands live in different cyclotomic fields") {}
};

class CycScalar {
public:
    CycScalar() : field_(nullptr) {}

    static CycScalar zero(const CyclotomicField* f) { return CycScalar(f); }

    static CycScalar one(const CyclotomicField* f) {
        CycScalar s(f);
        s.c_[0] = 1;
        return s;
    }

    static CycScalar from_rat(const CyclotomicField* f, const Rat& q) {
        CycScalar s(f);
        s.c_[0] = q;
        return s;
    }

    static CycScalar from_int(const CyclotomicField* f, long v) { return from_rat(f, Rat(v)); }

    // zeta^k for any integer k
    static CycScalar zeta_pow(const CyclotomicField* f, long k) {
        long n = f->n();
        long r = ((k % n) + n) % n;
        CycScalar s(f);
        const auto& row = f->power(static_cast<int>(r));
        for (std::size_t i = 0; i < row.size(); ++i) s.c_[i] = row[i];
        return s;
    }

    const CyclotomicField* field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    const Rat& rational_part() const { return c_[0]; }

    friend bool operator==(const CycScalar& a, const CycScalar& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    CycScalar operator-() const {
        CycScalar r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    CycScalar& operator+=(const CycScalar& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    CycScalar& operator-=(const CycScalar& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }

    friend CycScalar operator*(const CycScalar& a, const CycScalar& b) {
        a.check(b);
        const CyclotomicField* f = a.field_;
        int d = f->degree();
        std::vector<Rat> conv(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        CycScalar r(f);
        for (int k = 0; k < d; ++k) r.c_[k] = std::move(conv[k]);
        for (int k = d; k <= 2 * d - 2; ++k) {
            if (conv[k] == 0) continue;
            const auto& row = f->power(k);
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) r.c_[i] += conv[k] * row[i];
        }
        return r;
    }

    CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }

    CycScalar inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero in Q(zeta_n)");
        poly::P a(c_.begin(), c_.end());
        poly::trim(a);
        poly::P g, u, v;
        poly::ext_gcd(a, field_->phi(), g, u, v);
        if (poly::deg(g) != 0) throw std::logic_error("Phi_n not coprime to nonzero element");
        CycScalar r(field_);
        for (std::size_t i = 0; i < u.size() && i < r.c_.size(); ++i) r.c_[i] = u[i];
        return r;
    }

    friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

    // field automorphism zeta -> zeta^{n-1}; an involution
    CycScalar conj() const {
        CycScalar r(field_);
        for (int k = 0; k < field_->degree(); ++k) {
            if (c_[k] == 0) continue;
            const auto& row = field_->conj_basis(k);
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) r.c_[i] += c_[k] * row[i];
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += rat_to_string(c_[i]);
        }
        return s + "]";
    }

private:
    explicit CycScalar(const CyclotomicField* f) : field_(f), c_(static_cast<std::size_t>(f->degree()), Rat(0)) {}

    void check(const CycScalar& o) const {
        if (field_ != o.field_) throw FieldMismatch();
    }

    const CyclotomicField* field_;
    std::vector<Rat> c_;
};

inline CyclotomicField::CyclotomicField(int n) : n_(n) {
    phi_ = poly::cyclotomic(n);
    deg_ = poly::deg(phi_);
    int maxp = std::max(2 * deg_ - 2, n - 1);
    powers_.resize(static_cast<std::size_t>(maxp) + 1);
    poly::P cur{Rat(1)};
    poly::P x{Rat(0), Rat(1)};
    for (int k = 0; k <= maxp; ++k) {
        std::vector<Rat> row(static_cast<std::size_t>(deg_), Rat(0));
        for (std::size_t i = 0; i < cur.size(); ++i) row[i] = cur[i];
        powers_[static_cast<std::size_t>(k)] = std::move(row);
        cur = poly::divmod(poly::mul(cur, x), phi_).second;
    }
    conj_.resize(static_cast<std::size_t>(deg_));
    for (int k = 0; k < deg_; ++k) {
        int e = (k == 0) ? 0 : n - k; // k*(n-1) mod n
        conj_[static_cast<std::size_t>(k)] = powers_[static_cast<std::size_t>(e)];
    }
}

inline const CyclotomicField* CyclotomicField::get(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("cyclotomic order must be odd and >= 3, got " + std::to_string(n));
    static std::map<int, std::unique_ptr<CyclotomicField>> registry;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(n);
    if (it == registry.end())
        it = registry.emplace(n, std::unique_ptr<CyclotomicField>(new CyclotomicField(n))).first;
    return it->second.get();
}

} // namespace dhmono
