#pragma once

// Residue fields F_q (q = p^f) and Q, polynomials over them, factorization.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "maclane/poly.hpp"
#include "maclane/val.hpp"

namespace maclane {

// Scalars of F_p, p < 2^31.
struct FpScalar {
    using E = uint32_t;
    uint32_t p;
    E zero() const { return 0; }
    E one() const { return 1 % p; }
    E from_int(long n) const {
        long r = n % static_cast<long>(p);
        return static_cast<E>(r < 0 ? r + p : r);
    }
    E from_mpz(const mpz_class& n) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
        return static_cast<E>(r.get_ui());
    }
    bool is_zero(E a) const { return a == 0; }
    bool eq(E a, E b) const { return a == b; }
    E add(E a, E b) const { return static_cast<E>((uint64_t(a) + b) % p); }
    E sub(E a, E b) const { return static_cast<E>((uint64_t(a) + p - b) % p); }
    E neg(E a) const { return a == 0 ? 0 : p - a; }
    E mul(E a, E b) const { return static_cast<E>((uint64_t(a) * b) % p); }
    E inv(E a) const;
};

struct QScalar {
    using E = mpq_class;
    E zero() const { return 0; }
    E one() const { return 1; }
    E from_int(long n) const { return n; }
    E from_mpz(const mpz_class& n) const { return mpq_class(n); }
    bool is_zero(const E& a) const { return a == 0; }
    bool eq(const E& a, const E& b) const { return a == b; }
    E add(const E& a, const E& b) const { return a + b; }
    E sub(const E& a, const E& b) const { return a - b; }
    E neg(const E& a) const { return -a; }
    E mul(const E& a, const E& b) const { return a * b; }
    E inv(const E& a) const;
};

using FpPoly = std::vector<uint32_t>;
using QPoly = std::vector<mpq_class>;

// Residue field: F_{p^deg} = F_p[x]/(modulus) or Q.
struct ResField {
    bool char0 = false;
    uint32_t p = 0;
    int deg = 1;
    FpPoly modulus;  // monic, degree deg; for deg 1 this is x

    uint64_t order() const;  // q, only for finite fields of modest size
    bool same(const ResField& o) const {
        return char0 == o.char0 && p == o.p && deg == o.deg && modulus == o.modulus;
    }
    std::string describe() const;
};
using ResFieldPtr = std::shared_ptr<const ResField>;

// Element: coordinates a[0..deg) over F_p (trimmed), or a rational q.
struct ResElem {
    FpPoly a;
    mpq_class q;
    bool operator==(const ResElem& o) const { return a == o.a && q == o.q; }
    bool operator!=(const ResElem& o) const { return !(*this == o); }
};

ResFieldPtr prime_field(uint32_t p);
ResFieldPtr rational_field();
// F_{p^n} with the lexicographically least monic irreducible modulus.
ResFieldPtr finite_field(uint32_t p, int n);
FpPoly least_irreducible(uint32_t p, int n);
bool fp_irreducible(uint32_t p, const FpPoly& f);

struct ResRing {
    using E = ResElem;
    ResFieldPtr k;
    explicit ResRing(ResFieldPtr kk) : k(std::move(kk)) {}
    E zero() const { return {}; }
    E one() const;
    E from_int(long n) const;
    E from_mpz(const mpz_class& n) const;
    bool is_zero(const E& a) const { return a.a.empty() && a.q == 0; }
    bool eq(const E& a, const E& b) const { return a == b; }
    E add(const E& a, const E& b) const;
    E sub(const E& a, const E& b) const;
    E neg(const E& a) const;
    E mul(const E& a, const E& b) const;
    E inv(const E& a) const;
    E gen() const;  // the class of x (for F_p: an element of F_p, namely 0 when deg = 1)
    E from_fp(uint32_t c) const;
    E pow(const E& a, const mpz_class& e) const;
    E pth_root(const E& a) const;
    uint64_t key(const E& a) const;  // ordering key, lexicographic by coordinates
    std::vector<E> all_elements() const;
    std::string str(const E& a) const;
};

using ResPoly = std::vector<ResElem>;

struct Factor {
    ResPoly g;  // monic irreducible
    int mult;
};

// Factor a nonzero polynomial; factors sorted by (degree, coefficient keys).
std::vector<Factor> factor(const ResRing& R, const ResPoly& g);
// Roots in the field itself, sorted by key, without multiplicity.
std::vector<ResElem> roots(const ResRing& R, const ResPoly& g);
int separable_degree(const ResRing& R, const ResPoly& g);
long p_free_part(long n, long p);
bool res_irreducible(const ResRing& R, const ResPoly& g);
// strip factors y^k; returns k
int strip_y_power(const ResRing& R, ResPoly& g);
bool poly_less(const ResRing& R, const ResPoly& a, const ResPoly& b);
std::string poly_str(const ResRing& R, const ResPoly& g, const std::string& var = "y");

// k' = k[y]/(psi) flattened; iota = image of k's generator; z = image of y.
struct ResExtension {
    ResFieldPtr from, to;
    ResElem iota;
    ResElem z;
    int rel_deg = 1;
    ResElem map(const ResElem& a) const;  // k -> k'
    // write b in k' as sum_{l<rel_deg} c_l z^l with c_l in k
    std::vector<ResElem> decompose(const ResElem& b) const;
    ResPoly map_poly(const ResPoly& g) const;

    std::vector<std::vector<uint32_t>> inv_matrix;  // F_p-linear inverse of the basis map
};
ResExtension extend(const ResFieldPtr& k, const ResPoly& psi);

}  // namespace maclane
