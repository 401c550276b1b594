#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace maclane {

// Exact valuation value: a rational number or +infinity.
class Val {
public:
    Val() : inf_(false), q_(0) {}
    Val(long n) : inf_(false), q_(n) {}
    Val(const mpq_class& q) : inf_(false), q_(q) { q_.canonicalize(); }
    Val(long num, long den) : inf_(false), q_(num, den) { q_.canonicalize(); }

    static Val inf() {
        Val v;
        v.inf_ = true;
        return v;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }
    const mpq_class& q() const;
    mpz_class num() const { return q().get_num(); }
    mpz_class den() const { return q().get_den(); }
    bool is_integer() const { return !inf_ && q_.get_den() == 1; }

    Val operator+(const Val& o) const;
    Val operator-(const Val& o) const;  // rhs must be finite
    Val operator-() const;
    Val operator*(const mpq_class& k) const;  // k >= 0 keeps inf, k = 0 on inf is an error
    Val operator/(const mpq_class& k) const;

    bool operator==(const Val& o) const;
    bool operator!=(const Val& o) const { return !(*this == o); }
    bool operator<(const Val& o) const;
    bool operator<=(const Val& o) const { return !(o < *this); }
    bool operator>(const Val& o) const { return o < *this; }
    bool operator>=(const Val& o) const { return !(*this < o); }

    std::string str() const;
    static Val parse(const std::string& s);

private:
    bool inf_;
    mpq_class q_;
};

inline Val vmin(const Val& a, const Val& b) { return b < a ? b : a; }
inline Val vmax(const Val& a, const Val& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Val& v);

// Helpers on rationals used all over the valuation code.
mpz_class floor_q(const mpq_class& x);
mpz_class ceil_q(const mpq_class& x);
std::string qstr(const mpq_class& x);

}  // namespace maclane
