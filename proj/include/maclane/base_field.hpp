#pragma once

// Base fields: Q with ord_p, F_p(t) with ord_t, Q(t) with ord_t.
// Each is the dense subfield of the completion we actually compute in.

#include <gmpxx.h>

#include <string>
#include <variant>

#include "maclane/residue.hpp"
#include "maclane/val.hpp"

namespace maclane {

// num/den over F_p[t]: gcd 1, den monic; zero is 0/1
struct FpRat {
    uint32_t p = 2;
    FpPoly num, den{1};
};

// num/den over Q[t], same normalization
struct QRat {
    QPoly num, den{mpq_class(1)};
};

class KElem {
public:
    KElem() : v(mpq_class(0)) {}
    KElem(const mpq_class& q) : v(q) { std::get<mpq_class>(v).canonicalize(); }
    KElem(const FpRat& r) : v(r) {}
    KElem(const QRat& r) : v(r) {}

    bool is_zero() const;
    bool operator==(const KElem& o) const;
    bool operator!=(const KElem& o) const { return !(*this == o); }

    KElem operator+(const KElem& o) const;
    KElem operator-(const KElem& o) const;
    KElem operator*(const KElem& o) const;
    KElem operator/(const KElem& o) const;
    KElem operator-() const;

    std::variant<mpq_class, FpRat, QRat> v;
};

enum class BaseKind { QP, FPT, QT };

class BaseField {
public:
    BaseField() = default;
    BaseField(BaseKind k, uint32_t p) : kind_(k), p_(p) {}

    static BaseField parse(const std::string& spec);  // qp:p, fpt:p, qt
    std::string spec() const;

    BaseKind kind() const { return kind_; }
    uint32_t p() const { return p_; }
    long residue_char() const { return kind_ == BaseKind::QT ? 0 : p_; }

    KElem zero() const;
    KElem one() const;
    KElem from_int(long n) const;
    KElem from_mpz(const mpz_class& n) const;
    KElem from_mpq(const mpq_class& q) const;
    KElem t() const;  // the variable t; fails for QP
    KElem uniformizer() const;
    KElem pi_pow(long k) const;

    Val val(const KElem& x) const;
    ResFieldPtr residue_field() const;
    ResElem reduce(const KElem& x) const;  // NegativeValuation when v(x) < 0
    KElem lift(const ResElem& r) const;
    // y with v(x - y) >= N, y of bounded size
    KElem truncate(const KElem& x, long N) const;

    std::string str(const KElem& x) const;
    bool operator==(const BaseField& o) const { return kind_ == o.kind_ && p_ == o.p_; }

private:
    BaseKind kind_ = BaseKind::QP;
    uint32_t p_ = 2;
};

struct KRing {
    using E = KElem;
    BaseField K;
    E zero() const { return K.zero(); }
    E one() const { return K.one(); }
    E from_int(long n) const { return K.from_int(n); }
    E from_mpz(const mpz_class& n) const { return K.from_mpz(n); }
    bool is_zero(const E& a) const { return a.is_zero(); }
    bool eq(const E& a, const E& b) const { return a == b; }
    E add(const E& a, const E& b) const { return a + b; }
    E sub(const E& a, const E& b) const { return a - b; }
    E neg(const E& a) const { return -a; }
    E mul(const E& a, const E& b) const { return a * b; }
    E inv(const E& a) const { return K.one() / a; }
};

}  // namespace maclane
