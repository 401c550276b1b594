#include "maclane/base_field.hpp"

#include <sstream>

#include "maclane/errors.hpp"

namespace maclane {

namespace {

template <class S>
void normalize_rat(const S& s, std::vector<typename S::E>& num, std::vector<typename S::E>& den) {
    poly::trim(s, num);
    poly::trim(s, den);
    if (den.empty()) fail("DivisionByZero", "zero denominator");
    if (num.empty()) {
        den = {s.one()};
        return;
    }
    if (poly::deg<S>(den) > 0) {
        auto g = poly::gcd(s, num, den);
        if (poly::deg<S>(g) > 0) {
            num = poly::quo(s, num, g);
            den = poly::quo(s, den, g);
        }
    }
    auto il = s.inv(den.back());
    if (!s.eq(il, s.one())) {
        num = poly::scale(s, num, il);
        den = poly::scale(s, den, il);
    }
}

template <class S, class T>
T rat_add(const S& s, const T& a, const T& b, bool subtract) {
    T r = a;
    auto nb = subtract ? poly::neg(s, b.num) : b.num;
    if (poly::equal(s, a.den, b.den)) {
        r.num = poly::add(s, a.num, nb);
        r.den = a.den;
    } else {
        r.num = poly::add(s, poly::mul(s, a.num, b.den), poly::mul(s, nb, a.den));
        r.den = poly::mul(s, a.den, b.den);
    }
    normalize_rat(s, r.num, r.den);
    return r;
}

template <class S, class T>
T rat_mul(const S& s, const T& a, const T& b) {
    T r = a;
    r.num = poly::mul(s, a.num, b.num);
    r.den = poly::mul(s, a.den, b.den);
    normalize_rat(s, r.num, r.den);
    return r;
}

template <class S, class T>
T rat_div(const S& s, const T& a, const T& b) {
    if (b.num.empty()) fail("DivisionByZero", "division by zero in base field");
    T r = a;
    r.num = poly::mul(s, a.num, b.den);
    r.den = poly::mul(s, a.den, b.num);
    normalize_rat(s, r.num, r.den);
    return r;
}

template <class V>
int low_index(const V& f) {
    for (size_t i = 0; i < f.size(); ++i)
        if (!(f[i] == 0)) return static_cast<int>(i);
    return -1;
}

FpScalar fps(const FpRat& r) { return FpScalar{r.p}; }

const FpRat& as_fp(const KElem& x) { return std::get<FpRat>(x.v); }
const QRat& as_q(const KElem& x) { return std::get<QRat>(x.v); }
const mpq_class& as_rat(const KElem& x) { return std::get<mpq_class>(x.v); }

void same_kind(const KElem& a, const KElem& b) {
    if (a.v.index() != b.v.index()) fail("Internal", "mixing elements of different base fields");
}

// power series of num/den (den(0) != 0) up to t^M (exclusive), as a polynomial
template <class S>
std::vector<typename S::E> series(const S& s, const std::vector<typename S::E>& num,
                                  const std::vector<typename S::E>& den, int M) {
    std::vector<typename S::E> out(M, s.zero());
    auto id0 = s.inv(den[0]);
    for (int i = 0; i < M; ++i) {
        auto acc = poly::coeff(s, num, i);
        for (int j = 1; j <= i && j < static_cast<int>(den.size()); ++j) acc = s.sub(acc, s.mul(den[j], out[i - j]));
        out[i] = s.mul(acc, id0);
    }
    poly::trim(s, out);
    return out;
}

template <class S>
std::string tpoly_str(const S& s, const std::vector<typename S::E>& f, bool fp) {
    (void)s;
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        std::string c;
        bool neg = false;
        if constexpr (std::is_same_v<typename S::E, mpq_class>) {
            if (f[i] == 0) continue;
            mpq_class a = f[i];
            if (a < 0) {
                neg = true;
                a = -a;
            }
            c = qstr(a);
        } else {
            if (f[i] == 0) continue;
            c = std::to_string(f[i]);
        }
        (void)fp;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (i == 0)
            os << c;
        else {
            if (c != "1") os << c << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace

// ---- KElem ----

bool KElem::is_zero() const {
    switch (v.index()) {
        case 0: return as_rat(*this) == 0;
        case 1: return as_fp(*this).num.empty();
        default: return as_q(*this).num.empty();
    }
}

bool KElem::operator==(const KElem& o) const {
    if (v.index() != o.v.index()) return false;
    switch (v.index()) {
        case 0: return as_rat(*this) == as_rat(o);
        case 1: return as_fp(*this).num == as_fp(o).num && as_fp(*this).den == as_fp(o).den;
        default: return as_q(*this).num == as_q(o).num && as_q(*this).den == as_q(o).den;
    }
}

KElem KElem::operator+(const KElem& o) const {
    same_kind(*this, o);
    switch (v.index()) {
        case 0: return KElem(mpq_class(as_rat(*this) + as_rat(o)));
        case 1: return KElem(rat_add(fps(as_fp(*this)), as_fp(*this), as_fp(o), false));
        default: return KElem(rat_add(QScalar{}, as_q(*this), as_q(o), false));
    }
}

KElem KElem::operator-(const KElem& o) const {
    same_kind(*this, o);
    switch (v.index()) {
        case 0: return KElem(mpq_class(as_rat(*this) - as_rat(o)));
        case 1: return KElem(rat_add(fps(as_fp(*this)), as_fp(*this), as_fp(o), true));
        default: return KElem(rat_add(QScalar{}, as_q(*this), as_q(o), true));
    }
}

KElem KElem::operator*(const KElem& o) const {
    same_kind(*this, o);
    switch (v.index()) {
        case 0: return KElem(mpq_class(as_rat(*this) * as_rat(o)));
        case 1: return KElem(rat_mul(fps(as_fp(*this)), as_fp(*this), as_fp(o)));
        default: return KElem(rat_mul(QScalar{}, as_q(*this), as_q(o)));
    }
}

KElem KElem::operator/(const KElem& o) const {
    same_kind(*this, o);
    switch (v.index()) {
        case 0:
            if (as_rat(o) == 0) fail("DivisionByZero", "division by zero in base field");
            return KElem(mpq_class(as_rat(*this) / as_rat(o)));
        case 1: return KElem(rat_div(fps(as_fp(*this)), as_fp(*this), as_fp(o)));
        default: return KElem(rat_div(QScalar{}, as_q(*this), as_q(o)));
    }
}

KElem KElem::operator-() const {
    switch (v.index()) {
        case 0: return KElem(mpq_class(-as_rat(*this)));
        case 1: {
            FpRat r = as_fp(*this);
            r.num = poly::neg(fps(r), r.num);
            return KElem(r);
        }
        default: {
            QRat r = as_q(*this);
            r.num = poly::neg(QScalar{}, r.num);
            return KElem(r);
        }
    }
}

// ---- BaseField ----

BaseField BaseField::parse(const std::string& spec) {
    auto bad = [&]() { fail("BadBaseSpec", "expected qp:<p>, fpt:<p> or qt, got '" + spec + "'"); };
    if (spec == "qt") return BaseField(BaseKind::QT, 0);
    auto colon = spec.find(':');
    if (colon == std::string::npos) bad();
    std::string kind = spec.substr(0, colon), ps = spec.substr(colon + 1);
    unsigned long p = 0;
    try {
        size_t used = 0;
        p = std::stoul(ps, &used);
        if (used != ps.size()) bad();
    } catch (const std::exception&) {
        bad();
    }
    if (p < 2 || p > 65521 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
        fail("BadBaseSpec", "p must be a prime below 65536");
    if (kind == "qp") return BaseField(BaseKind::QP, static_cast<uint32_t>(p));
    if (kind != "fpt") bad();
    return BaseField(BaseKind::FPT, static_cast<uint32_t>(p));
}

std::string BaseField::spec() const {
    switch (kind_) {
        case BaseKind::QP: return "qp:" + std::to_string(p_);
        case BaseKind::FPT: return "fpt:" + std::to_string(p_);
        default: return "qt";
    }
}

KElem BaseField::zero() const { return from_int(0); }
KElem BaseField::one() const { return from_int(1); }

KElem BaseField::from_int(long n) const { return from_mpz(mpz_class(n)); }

KElem BaseField::from_mpz(const mpz_class& n) const {
    switch (kind_) {
        case BaseKind::QP: return KElem(mpq_class(n));
        case BaseKind::FPT: {
            FpRat r;
            r.p = p_;
            uint32_t c = FpScalar{p_}.from_mpz(n);
            if (c) r.num = {c};
            return KElem(r);
        }
        default: {
            QRat r;
            if (n != 0) r.num = {mpq_class(n)};
            return KElem(r);
        }
    }
}

KElem BaseField::from_mpq(const mpq_class& q) const {
    if (kind_ == BaseKind::QP) return KElem(q);
    return from_mpz(q.get_num()) / from_mpz(q.get_den());
}

KElem BaseField::t() const {
    switch (kind_) {
        case BaseKind::QP: fail("BadElement", "no variable t over qp");
        case BaseKind::FPT: {
            FpRat r;
            r.p = p_;
            r.num = {0, 1};
            return KElem(r);
        }
        default: {
            QRat r;
            r.num = {mpq_class(0), mpq_class(1)};
            return KElem(r);
        }
    }
}

KElem BaseField::uniformizer() const {
    if (kind_ == BaseKind::QP) return from_int(p_);
    return t();
}

KElem BaseField::pi_pow(long k) const {
    KElem base = uniformizer();
    KElem res = one();
    long a = k < 0 ? -k : k;
    while (a) {
        if (a & 1) res = res * base;
        a >>= 1;
        if (a) base = base * base;
    }
    if (k < 0) return one() / res;
    return res;
}

Val BaseField::val(const KElem& x) const {
    if (x.is_zero()) return Val::inf();
    switch (kind_) {
        case BaseKind::QP: {
            const mpq_class& q = as_rat(x);
            mpz_class a = q.get_num(), b = q.get_den(), pp = p_;
            long va = static_cast<long>(mpz_remove(a.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t()));
            long vb = static_cast<long>(mpz_remove(b.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t()));
            return Val(va - vb);
        }
        case BaseKind::FPT: {
            auto& r = as_fp(x);
            return Val(static_cast<long>(low_index(r.num) - low_index(r.den)));
        }
        default: {
            auto& r = as_q(x);
            return Val(static_cast<long>(low_index(r.num) - low_index(r.den)));
        }
    }
}

ResFieldPtr BaseField::residue_field() const {
    if (kind_ == BaseKind::QT) return rational_field();
    return prime_field(p_);
}

ResElem BaseField::reduce(const KElem& x) const {
    Val v = val(x);
    if (v < Val(0)) fail("NegativeValuation", "reduction of an element of valuation " + v.str());
    ResElem e;
    if (v > Val(0)) return e;
    switch (kind_) {
        case BaseKind::QP: {
            const mpq_class& q = as_rat(x);
            FpScalar F{p_};
            uint32_t c = F.mul(F.from_mpz(q.get_num()), F.inv(F.from_mpz(q.get_den())));
            if (c) e.a = {c};
            return e;
        }
        case BaseKind::FPT: {
            auto& r = as_fp(x);
            FpScalar F{p_};
            uint32_t c = F.mul(r.num[0], F.inv(r.den[0]));
            if (c) e.a = {c};
            return e;
        }
        default: {
            auto& r = as_q(x);
            e.q = r.num[0] / r.den[0];
            return e;
        }
    }
}

KElem BaseField::lift(const ResElem& r) const {
    if (kind_ == BaseKind::QT) return from_mpq(r.q);
    if (r.a.size() > 1) fail("Internal", "lift of a non-prime-field residue to the base");
    return from_int(r.a.empty() ? 0 : r.a[0]);
}

KElem BaseField::truncate(const KElem& x, long N) const {
    Val v = val(x);
    if (v >= Val(N)) return zero();
    long k = v.num().get_si();
    long M = N - k;
    switch (kind_) {
        case BaseKind::QP: {
            mpq_class u = as_rat(x);
            mpz_class pp = p_, pk;
            if (k >= 0) {
                mpz_pow_ui(pk.get_mpz_t(), pp.get_mpz_t(), k);
                u /= pk;
            } else {
                mpz_pow_ui(pk.get_mpz_t(), pp.get_mpz_t(), -k);
                u *= pk;
            }
            mpz_class mod;
            mpz_pow_ui(mod.get_mpz_t(), pp.get_mpz_t(), M);
            mpz_class inv, num = u.get_num(), den = u.get_den();
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
            mpz_class w = (num * inv) % mod;
            if (w < 0) w += mod;
            // balanced representative keeps signs readable
            if (w > mod / 2) w -= mod;
            mpq_class res(w);
            if (k >= 0)
                res *= pk;
            else
                res /= pk;
            res.canonicalize();
            return KElem(res);
        }
        case BaseKind::FPT: {
            auto& r = as_fp(x);
            FpScalar F{p_};
            int ln = low_index(r.num), ld = low_index(r.den);
            FpPoly n(r.num.begin() + ln, r.num.end()), d(r.den.begin() + ld, r.den.end());
            FpRat out;
            out.p = p_;
            out.num = series(F, n, d, static_cast<int>(M));
            if (k >= 0)
                out.num = poly::shift(F, out.num, static_cast<int>(k));
            else
                out.den = poly::monomial(F, static_cast<int>(-k), F.one());
            normalize_rat(F, out.num, out.den);
            return KElem(out);
        }
        default: {
            auto& r = as_q(x);
            QScalar Q;
            int ln = low_index(r.num), ld = low_index(r.den);
            QPoly n(r.num.begin() + ln, r.num.end()), d(r.den.begin() + ld, r.den.end());
            QRat out;
            out.num = series(Q, n, d, static_cast<int>(M));
            if (k >= 0)
                out.num = poly::shift(Q, out.num, static_cast<int>(k));
            else
                out.den = poly::monomial(Q, static_cast<int>(-k), Q.one());
            normalize_rat(Q, out.num, out.den);
            return KElem(out);
        }
    }
}

std::string BaseField::str(const KElem& x) const {
    switch (x.v.index()) {
        case 0: return qstr(as_rat(x));
        case 1: {
            auto& r = as_fp(x);
            std::string n = tpoly_str(FpScalar{r.p}, r.num, true);
            if (r.den.size() == 1) return n;
            return "(" + n + ")/(" + tpoly_str(FpScalar{r.p}, r.den, true) + ")";
        }
        default: {
            auto& r = as_q(x);
            std::string n = tpoly_str(QScalar{}, r.num, false);
            if (r.den.size() == 1) return n;
            return "(" + n + ")/(" + tpoly_str(QScalar{}, r.den, false) + ")";
        }
    }
}

}  // namespace maclane
