#include "maclane/val.hpp"

#include "maclane/errors.hpp"

namespace maclane {

const mpq_class& Val::q() const {
    if (inf_) fail("InfiniteValue", "finite value expected");
    return q_;
}

Val Val::operator+(const Val& o) const {
    if (inf_ || o.inf_) return inf();
    return Val(mpq_class(q_ + o.q_));
}

Val Val::operator-(const Val& o) const {
    if (o.inf_) fail("InfiniteValue", "subtracting infinity");
    if (inf_) return inf();
    return Val(mpq_class(q_ - o.q_));
}

Val Val::operator-() const {
    if (inf_) fail("InfiniteValue", "negating infinity");
    return Val(mpq_class(-q_));
}

Val Val::operator*(const mpq_class& k) const {
    if (inf_) {
        if (k <= 0) fail("InfiniteValue", "scaling infinity by a non-positive number");
        return inf();
    }
    return Val(mpq_class(q_ * k));
}

Val Val::operator/(const mpq_class& k) const {
    if (k == 0) fail("DivisionByZero", "valuation divided by zero");
    if (inf_) {
        if (k < 0) fail("InfiniteValue", "scaling infinity by a negative number");
        return inf();
    }
    return Val(mpq_class(q_ / k));
}

bool Val::operator==(const Val& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return q_ == o.q_;
}

bool Val::operator<(const Val& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return q_ < o.q_;
}

std::string qstr(const mpq_class& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string Val::str() const {
    if (inf_) return "inf";
    return qstr(q_);
}

Val Val::parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return inf();
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail("ParseError", "bad rational '" + s + "'");
    q.canonicalize();
    return Val(q);
}

std::ostream& operator<<(std::ostream& os, const Val& v) { return os << v.str(); }

mpz_class floor_q(const mpq_class& x) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& x) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

}  // namespace maclane
