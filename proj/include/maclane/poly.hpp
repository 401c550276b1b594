#pragma once

// Dense univariate polynomial algorithms over an abstract coefficient ring.
//
// A ring R provides: type E; zero(), one(), from_int(long), is_zero(a),
// eq(a,b), add, sub, neg, mul, and inv (only needed when R is a field).
// Polynomials are std::vector<E> in increasing degree, trailing zeros trimmed.

#include <gmpxx.h>

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "maclane/errors.hpp"

namespace maclane::poly {

template <class R>
using P = std::vector<typename R::E>;

template <class R>
void trim(const R& r, P<R>& f) {
    while (!f.empty() && r.is_zero(f.back())) f.pop_back();
}

template <class R>
int deg(const P<R>& f) {
    return static_cast<int>(f.size()) - 1;
}

template <class R>
typename R::E coeff(const R& r, const P<R>& f, int i) {
    if (i < 0 || i >= static_cast<int>(f.size())) return r.zero();
    return f[i];
}

template <class R>
P<R> constant(const R& r, const typename R::E& c) {
    if (r.is_zero(c)) return {};
    return {c};
}

template <class R>
P<R> monomial(const R& r, int k, const typename R::E& c) {
    if (r.is_zero(c)) return {};
    P<R> f(k + 1, r.zero());
    f[k] = c;
    return f;
}

template <class R>
P<R> variable(const R& r) {
    return monomial(r, 1, r.one());
}

template <class R>
bool equal(const R& r, const P<R>& a, const P<R>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!r.eq(a[i], b[i])) return false;
    return true;
}

template <class R>
P<R> add(const R& r, const P<R>& a, const P<R>& b) {
    P<R> c(std::max(a.size(), b.size()), r.zero());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = r.add(c[i], b[i]);
    trim(r, c);
    return c;
}

template <class R>
P<R> sub(const R& r, const P<R>& a, const P<R>& b) {
    P<R> c(std::max(a.size(), b.size()), r.zero());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = r.sub(c[i], b[i]);
    trim(r, c);
    return c;
}

template <class R>
P<R> neg(const R& r, const P<R>& a) {
    P<R> c;
    c.reserve(a.size());
    for (auto& x : a) c.push_back(r.neg(x));
    return c;
}

template <class R>
P<R> scale(const R& r, const P<R>& a, const typename R::E& k) {
    if (r.is_zero(k)) return {};
    P<R> c;
    c.reserve(a.size());
    for (auto& x : a) c.push_back(r.mul(x, k));
    trim(r, c);
    return c;
}

template <class R>
P<R> mul(const R& r, const P<R>& a, const P<R>& b) {
    if (a.empty() || b.empty()) return {};
    P<R> c(a.size() + b.size() - 1, r.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (r.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = r.add(c[i + j], r.mul(a[i], b[j]));
    }
    trim(r, c);
    return c;
}

template <class R>
P<R> shift(const R& r, const P<R>& a, int k) {
    if (a.empty()) return {};
    P<R> c(k, r.zero());
    c.insert(c.end(), a.begin(), a.end());
    return c;
}

template <class R>
P<R> pow(const R& r, P<R> a, unsigned long e) {
    P<R> res = constant(r, r.one());
    while (e) {
        if (e & 1) res = mul(r, res, a);
        e >>= 1;
        if (e) a = mul(r, a, a);
    }
    return res;
}

template <class R>
typename R::E eval(const R& r, const P<R>& f, const typename R::E& x) {
    typename R::E acc = r.zero();
    for (int i = deg<R>(f); i >= 0; --i) acc = r.add(r.mul(acc, x), f[i]);
    return acc;
}

// f(g(z))
template <class R>
P<R> compose(const R& r, const P<R>& f, const P<R>& g) {
    P<R> acc;
    for (int i = deg<R>(f); i >= 0; --i) acc = add(r, mul(r, acc, g), constant(r, f[i]));
    return acc;
}

// f(z + a)
template <class R>
P<R> translate(const R& r, const P<R>& f, const typename R::E& a) {
    P<R> g = f;
    int n = deg<R>(g);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) g[j] = r.add(g[j], r.mul(a, g[j + 1]));
    trim(r, g);
    return g;
}

// f(u z)
template <class R>
P<R> scale_var(const R& r, const P<R>& f, const typename R::E& u) {
    P<R> g;
    typename R::E pw = r.one();
    for (size_t i = 0; i < f.size(); ++i) {
        g.push_back(r.mul(f[i], pw));
        pw = r.mul(pw, u);
    }
    trim(r, g);
    return g;
}

template <class R>
P<R> derivative(const R& r, const P<R>& f) {
    P<R> g;
    for (size_t i = 1; i < f.size(); ++i) g.push_back(r.mul(r.from_int(static_cast<long>(i)), f[i]));
    trim(r, g);
    return g;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// k-th Hasse derivative: coefficient of w^k in f(z + w).
template <class R>
P<R> hasse(const R& r, const P<R>& f, int k) {
    P<R> g;
    for (int i = k; i <= deg<R>(f); ++i) {
        mpz_class b = binomial(i, k);
        g.push_back(r.mul(r.from_mpz(b), f[i]));
    }
    trim(r, g);
    return g;
}

template <class R>
std::pair<P<R>, P<R>> divmod(const R& r, const P<R>& a, const P<R>& b) {
    if (b.empty()) fail("DivisionByZeroPoly", "polynomial division by zero");
    P<R> rem = a;
    int db = deg<R>(b);
    if (deg<R>(a) < db) return {P<R>{}, rem};
    P<R> q(deg<R>(a) - db + 1, r.zero());
    auto ilc = r.inv(b.back());
    for (int i = deg<R>(rem); i >= db; --i) {
        if (r.is_zero(rem[i])) continue;
        auto c = r.mul(rem[i], ilc);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = r.sub(rem[i - db + j], r.mul(c, b[j]));
        rem[i] = r.zero();
    }
    trim(r, rem);
    trim(r, q);
    return {q, rem};
}

template <class R>
P<R> rem(const R& r, const P<R>& a, const P<R>& b) {
    return divmod(r, a, b).second;
}

template <class R>
P<R> quo(const R& r, const P<R>& a, const P<R>& b) {
    return divmod(r, a, b).first;
}

template <class R>
P<R> monic(const R& r, const P<R>& f) {
    if (f.empty()) return f;
    return scale(r, f, r.inv(f.back()));
}

template <class R>
bool is_monic(const R& r, const P<R>& f) {
    return !f.empty() && r.eq(f.back(), r.one());
}

template <class R>
P<R> gcd(const R& r, P<R> a, P<R> b) {
    // monic remainders keep rational coefficients from blowing up
    if (!b.empty()) b = monic(r, b);
    while (!b.empty()) {
        P<R> t = rem(r, a, b);
        if (!t.empty()) t = monic(r, t);
        a = std::move(b);
        b = std::move(t);
    }
    return monic(r, a);
}

// Returns (g, s, t) with s a + t b = g, g monic.
template <class R>
std::tuple<P<R>, P<R>, P<R>> xgcd(const R& r, const P<R>& a, const P<R>& b) {
    P<R> r0 = a, r1 = b, s0 = constant(r, r.one()), s1, t0, t1 = constant(r, r.one());
    while (!r1.empty()) {
        auto [q, rr] = divmod(r, r0, r1);
        P<R> s2 = sub(r, s0, mul(r, q, s1));
        P<R> t2 = sub(r, t0, mul(r, q, t1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    auto il = r.inv(r0.back());
    return {scale(r, r0, il), scale(r, s0, il), scale(r, t0, il)};
}

// inverse of a modulo m (must be coprime)
template <class R>
P<R> invmod(const R& r, const P<R>& a, const P<R>& m) {
    auto [g, s, t] = xgcd(r, a, m);
    (void)t;
    if (deg<R>(g) != 0) fail("NotInvertible", "element not invertible modulo polynomial");
    return rem(r, s, m);
}

template <class R>
P<R> mulmod(const R& r, const P<R>& a, const P<R>& b, const P<R>& m) {
    return rem(r, mul(r, a, b), m);
}

template <class R>
P<R> powmod(const R& r, P<R> a, mpz_class e, const P<R>& m) {
    P<R> res = rem(r, constant(r, r.one()), m);
    a = rem(r, a, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) res = mulmod(r, res, a, m);
        e >>= 1;
        if (e > 0) a = mulmod(r, a, a, m);
    }
    return res;
}

template <class R>
typename R::E power(const R& r, typename R::E a, unsigned long e) {
    typename R::E res = r.one();
    while (e) {
        if (e & 1) res = r.mul(res, a);
        e >>= 1;
        if (e) a = r.mul(a, a);
    }
    return res;
}

// Resultant over a field via the Euclidean remainder sequence.
template <class R>
typename R::E resultant(const R& r, P<R> a, P<R> b) {
    if (a.empty() || b.empty()) return r.zero();
    typename R::E acc = r.one();
    while (true) {
        int da = deg<R>(a), db = deg<R>(b);
        if (db == 0) return r.mul(acc, power(r, b[0], da));
        if (da == 0) return r.mul(acc, power(r, a[0], db));
        if (da < db) {
            if ((da * db) % 2) acc = r.neg(acc);
            std::swap(a, b);
            continue;
        }
        P<R> rr = rem(r, a, b);
        if (rr.empty()) return r.zero();
        int dr = deg<R>(rr);
        if ((da * db) % 2) acc = r.neg(acc);
        acc = r.mul(acc, power(r, b.back(), da - dr));
        a = std::move(b);
        b = std::move(rr);
    }
}

// Sylvester matrix determinant with formal degrees m >= deg a, n >= deg b.
template <class R>
typename R::E sylvester_det(const R& r, const P<R>& a, const P<R>& b, int m, int n) {
    int N = m + n;
    if (N == 0) return r.one();
    std::vector<std::vector<typename R::E>> M(N, std::vector<typename R::E>(N, r.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = coeff(r, a, m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = coeff(r, b, n - j);
    typename R::E det = r.one();
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int i = c; i < N; ++i)
            if (!r.is_zero(M[i][c])) {
                piv = i;
                break;
            }
        if (piv < 0) return r.zero();
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = r.neg(det);
        }
        det = r.mul(det, M[c][c]);
        auto ip = r.inv(M[c][c]);
        for (int i = c + 1; i < N; ++i) {
            if (r.is_zero(M[i][c])) continue;
            auto f = r.mul(M[i][c], ip);
            for (int j = c; j < N; ++j) M[i][j] = r.sub(M[i][j], r.mul(f, M[c][j]));
        }
    }
    return det;
}

template <class R>
typename R::E sylvester_det(const R& r, const P<R>& a, const P<R>& b) {
    return sylvester_det(r, a, b, deg<R>(a), deg<R>(b));
}

// f = sum c_m phi^m with deg c_m < deg phi; phi monic nonconstant.
template <class R>
std::vector<P<R>> phi_expansion(const R& r, P<R> f, const P<R>& phi) {
    if (deg<R>(phi) < 1) fail("DivisionByZeroPoly", "expansion needs a nonconstant polynomial");
    std::vector<P<R>> out;
    if (f.empty()) return out;
    while (!f.empty()) {
        auto [q, rr] = divmod(r, f, phi);
        out.push_back(std::move(rr));
        f = std::move(q);
    }
    return out;
}

template <class R>
P<R> phi_assemble(const R& r, const std::vector<P<R>>& c, const P<R>& phi) {
    P<R> acc;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = add(r, mul(r, acc, phi), c[i]);
    return acc;
}

// Map coefficients through a function into another ring.
template <class R2, class R1, class Fn>
P<R2> map_coeffs(const R2& r2, const P<R1>& f, Fn fn) {
    P<R2> g;
    g.reserve(f.size());
    for (auto& c : f) g.push_back(fn(c));
    trim(r2, g);
    return g;
}

// Squarefree test over a field (char 0 or separable case): gcd(f, f') = 1.
template <class R>
bool squarefree(const R& r, const P<R>& f) {
    P<R> d = derivative(r, f);
    if (d.empty()) return deg<R>(f) <= 0;
    return deg<R>(gcd(r, f, d)) == 0;
}

}  // namespace maclane::poly
