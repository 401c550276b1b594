#include "maclane/residue.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace maclane {

using FpR = FpScalar;

FpScalar::E FpScalar::inv(E a) const {
    if (a == 0) fail("DivisionByZero", "inverse of 0 in F_p");
    long long t = 0, nt = 1, r = p, nr = a;
    while (nr) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (t < 0) t += p;
    return static_cast<E>(t);
}

QScalar::E QScalar::inv(const E& a) const {
    if (a == 0) fail("DivisionByZero", "inverse of 0 in Q");
    return 1 / a;
}

uint64_t ResField::order() const {
    uint64_t q = 1;
    for (int i = 0; i < deg; ++i) q *= p;
    return q;
}

std::string ResField::describe() const {
    if (char0) return "Q";
    if (deg == 1) return "F_" + std::to_string(p);
    std::ostringstream os;
    os << "F_" << p << "^" << deg;
    return os.str();
}

ResFieldPtr prime_field(uint32_t p) {
    auto k = std::make_shared<ResField>();
    k->p = p;
    k->deg = 1;
    k->modulus = {0, 1};
    return k;
}

ResFieldPtr rational_field() {
    auto k = std::make_shared<ResField>();
    k->char0 = true;
    k->deg = 1;
    return k;
}

namespace {

FpPoly fp_x_pow_pk(const FpR& R, const FpPoly& base, int k, const FpPoly& m) {
    FpPoly a = base;
    for (int i = 0; i < k; ++i) a = poly::powmod(R, a, mpz_class(R.p), m);
    return a;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool fp_irreducible(uint32_t p, const FpPoly& f0) {
    FpR R{p};
    FpPoly f = poly::monic(R, f0);
    int n = poly::deg<FpR>(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    FpPoly x = poly::variable(R);
    FpPoly xq = fp_x_pow_pk(R, x, n, f);
    if (!poly::equal(R, xq, poly::rem(R, x, f))) return false;
    for (int r : prime_divisors(n)) {
        FpPoly t = poly::sub(R, fp_x_pow_pk(R, x, n / r, f), x);
        if (poly::deg<FpR>(poly::gcd(R, f, t)) != 0) return false;
    }
    return true;
}

FpPoly least_irreducible(uint32_t p, int n) {
    if (n == 1) return {0, 1};
    uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    for (uint64_t N = 0; N < total; ++N) {
        FpPoly f(n + 1, 0);
        uint64_t t = N;
        for (int i = 0; i < n; ++i) {
            f[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        f[n] = 1;
        if (f[0] == 0) continue;
        if (fp_irreducible(p, f)) return f;
    }
    fail("Internal", "no irreducible polynomial found");
}

ResFieldPtr finite_field(uint32_t p, int n) {
    if (n == 1) return prime_field(p);
    auto k = std::make_shared<ResField>();
    k->p = p;
    k->deg = n;
    k->modulus = least_irreducible(p, n);
    return k;
}

// ---- ResRing ----

ResElem ResRing::one() const {
    ResElem e;
    if (k->char0)
        e.q = 1;
    else
        e.a = {1};
    return e;
}

ResElem ResRing::from_fp(uint32_t c) const {
    ResElem e;
    c %= k->p;
    if (c) e.a = {c};
    return e;
}

ResElem ResRing::from_int(long n) const {
    ResElem e;
    if (k->char0) {
        e.q = n;
        return e;
    }
    return from_fp(FpR{k->p}.from_int(n));
}

ResElem ResRing::from_mpz(const mpz_class& n) const {
    ResElem e;
    if (k->char0) {
        e.q = n;
        return e;
    }
    return from_fp(FpR{k->p}.from_mpz(n));
}

ResElem ResRing::add(const ResElem& x, const ResElem& y) const {
    ResElem e;
    if (k->char0) {
        e.q = x.q + y.q;
        return e;
    }
    e.a = poly::add(FpR{k->p}, x.a, y.a);
    return e;
}

ResElem ResRing::sub(const ResElem& x, const ResElem& y) const {
    ResElem e;
    if (k->char0) {
        e.q = x.q - y.q;
        return e;
    }
    e.a = poly::sub(FpR{k->p}, x.a, y.a);
    return e;
}

ResElem ResRing::neg(const ResElem& x) const {
    ResElem e;
    if (k->char0) {
        e.q = -x.q;
        return e;
    }
    e.a = poly::neg(FpR{k->p}, x.a);
    return e;
}

ResElem ResRing::mul(const ResElem& x, const ResElem& y) const {
    ResElem e;
    if (k->char0) {
        e.q = x.q * y.q;
        return e;
    }
    FpR R{k->p};
    e.a = poly::mul(R, x.a, y.a);
    if (poly::deg<FpR>(e.a) >= k->deg) e.a = poly::rem(R, e.a, k->modulus);
    return e;
}

ResElem ResRing::inv(const ResElem& x) const {
    if (is_zero(x)) fail("DivisionByZero", "inverse of 0 in residue field");
    ResElem e;
    if (k->char0) {
        e.q = 1 / x.q;
        return e;
    }
    FpR R{k->p};
    if (k->deg == 1) {
        e.a = {R.inv(x.a[0])};
        return e;
    }
    e.a = poly::invmod(R, x.a, k->modulus);
    return e;
}

ResElem ResRing::gen() const {
    ResElem e;
    if (k->char0 || k->deg == 1) return e;
    e.a = {0, 1};
    return e;
}

ResElem ResRing::pow(const ResElem& x, const mpz_class& e0) const {
    ResElem res = one(), b = x;
    mpz_class e = e0;
    if (e < 0) {
        b = inv(b);
        e = -e;
    }
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) res = mul(res, b);
        e >>= 1;
        if (e > 0) b = mul(b, b);
    }
    return res;
}

ResElem ResRing::pth_root(const ResElem& x) const {
    if (k->char0) return x;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), k->p, k->deg - 1);
    return pow(x, e);
}

uint64_t ResRing::key(const ResElem& x) const {
    uint64_t acc = 0;
    for (int i = static_cast<int>(x.a.size()) - 1; i >= 0; --i) acc = acc * k->p + x.a[i];
    return acc;
}

std::vector<ResElem> ResRing::all_elements() const {
    std::vector<ResElem> out;
    uint64_t q = k->order();
    for (uint64_t N = 0; N < q; ++N) {
        ResElem e;
        uint64_t t = N;
        for (int i = 0; i < k->deg; ++i) {
            e.a.push_back(static_cast<uint32_t>(t % k->p));
            t /= k->p;
        }
        poly::trim(FpR{k->p}, e.a);
        out.push_back(e);
    }
    return out;
}

std::string ResRing::str(const ResElem& x) const {
    if (k->char0) return qstr(x.q);
    if (x.a.empty()) return "0";
    if (k->deg == 1) return std::to_string(x.a[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(x.a.size()) - 1; i >= 0; --i) {
        if (!x.a[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << x.a[i];
        else {
            if (x.a[i] != 1) os << x.a[i] << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---- polynomial helpers ----

bool poly_less(const ResRing& R, const ResPoly& a, const ResPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (R.k->char0) {
            if (a[i].q != b[i].q) return a[i].q < b[i].q;
        } else {
            uint64_t ka = R.key(a[i]), kb = R.key(b[i]);
            if (ka != kb) return ka < kb;
        }
    }
    return false;
}

std::string poly_str(const ResRing& R, const ResPoly& g, const std::string& var) {
    if (g.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
        if (R.is_zero(g[i])) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = R.str(g[i]);
        bool one = R.eq(g[i], R.one());
        if (i == 0)
            os << c;
        else {
            if (!one) os << "(" << c << ")*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

int strip_y_power(const ResRing& R, ResPoly& g) {
    int k = 0;
    while (k < static_cast<int>(g.size()) && R.is_zero(g[k])) ++k;
    g.erase(g.begin(), g.begin() + k);
    return k;
}

namespace {

using RP = ResPoly;

RP pth_root_poly(const ResRing& R, const RP& f) {
    uint32_t p = R.k->p;
    RP g;
    for (size_t i = 0; i < f.size(); i += p) g.push_back(R.pth_root(f[i]));
    poly::trim(R, g);
    return g;
}

// Square-free decomposition in characteristic p (or 0): list of (factor, multiplicity).
void sqf(const ResRing& R, const RP& f, int mult, std::vector<std::pair<RP, int>>& out) {
    if (poly::deg<ResRing>(f) <= 0) return;
    RP d = poly::derivative(R, f);
    RP c = d.empty() ? f : poly::gcd(R, f, d);
    RP w = poly::quo(R, f, c);
    int i = 1;
    while (poly::deg<ResRing>(w) > 0) {
        RP y = poly::gcd(R, w, c);
        RP fac = poly::quo(R, w, y);
        if (poly::deg<ResRing>(fac) > 0) out.push_back({poly::monic(R, fac), i * mult});
        w = y;
        c = poly::quo(R, c, y);
        ++i;
    }
    if (poly::deg<ResRing>(c) > 0) {
        if (R.k->char0) fail("Internal", "square-free decomposition over Q left a remainder");
        sqf(R, pth_root_poly(R, poly::monic(R, c)), mult * static_cast<int>(R.k->p), out);
    }
}

mpz_class field_order(const ResRing& R) {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), R.k->p, R.k->deg);
    return q;
}

RP frob_pow(const ResRing& R, const RP& a, const RP& m) { return poly::powmod(R, a, field_order(R), m); }

std::vector<std::pair<RP, int>> ddf(const ResRing& R, RP h) {
    std::vector<std::pair<RP, int>> out;
    RP x = poly::variable(R);
    RP xq = x;
    int i = 1;
    while (poly::deg<ResRing>(h) >= 2 * i) {
        xq = frob_pow(R, xq, h);
        RP g = poly::gcd(R, h, poly::sub(R, xq, x));
        if (poly::deg<ResRing>(g) > 0) {
            out.push_back({g, i});
            h = poly::quo(R, h, g);
            xq = poly::rem(R, xq, h);
        }
        ++i;
    }
    if (poly::deg<ResRing>(h) > 0) out.push_back({h, poly::deg<ResRing>(h)});
    return out;
}

RP random_poly(const ResRing& R, int n, std::mt19937_64& rng) {
    RP a;
    for (int i = 0; i < n; ++i) {
        ResElem e;
        for (int j = 0; j < R.k->deg; ++j) e.a.push_back(static_cast<uint32_t>(rng() % R.k->p));
        poly::trim(FpR{R.k->p}, e.a);
        a.push_back(e);
    }
    poly::trim(R, a);
    return a;
}

void edf(const ResRing& R, const RP& g, int d, std::mt19937_64& rng, std::vector<RP>& out) {
    int n = poly::deg<ResRing>(g);
    if (n <= d) {
        out.push_back(poly::monic(R, g));
        return;
    }
    mpz_class q = field_order(R);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        RP a = random_poly(R, n, rng);
        if (poly::deg<ResRing>(a) < 1) continue;
        RP b;
        if (R.k->p == 2) {
            int kd = R.k->deg * d;
            RP t = poly::rem(R, a, g), acc = t;
            for (int i = 1; i < kd; ++i) {
                t = poly::mulmod(R, t, t, g);
                acc = poly::add(R, acc, t);
            }
            b = acc;
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), d);
            e = (e - 1) / 2;
            b = poly::sub(R, poly::powmod(R, a, e, g), poly::constant(R, R.one()));
        }
        RP h = poly::gcd(R, g, b);
        int dh = poly::deg<ResRing>(h);
        if (dh > 0 && dh < n) {
            edf(R, h, d, rng, out);
            edf(R, poly::quo(R, g, h), d, rng, out);
            return;
        }
    }
    fail("Internal", "equal-degree splitting did not converge");
}

// ---- Q factorization, degree <= 4 ----

std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, int>> pf;
    for (mpz_class d = 2; d * d <= n && d < 1000000; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            pf.push_back({d, e});
        }
    }
    if (n > 1) pf.push_back({n, 1});
    std::vector<mpz_class> out{1};
    for (auto& [pr, e] : pf) {
        size_t cur = out.size();
        mpz_class pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= pr;
            for (size_t j = 0; j < cur; ++j) out.push_back(out[j] * pw);
        }
    }
    return out;
}

std::vector<mpq_class> rational_roots(const QPoly& f0) {
    QScalar Q;
    std::vector<mpq_class> out;
    QPoly f = f0;
    poly::trim(Q, f);
    if (poly::deg<QScalar>(f) < 1) return out;
    if (f[0] == 0) out.push_back(0);
    size_t k = 0;
    while (k < f.size() && f[k] == 0) ++k;
    f.erase(f.begin(), f.begin() + k);
    if (poly::deg<QScalar>(f) < 1) return out;
    mpz_class L = 1;
    for (auto& c : f) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> zc;
    for (auto& c : f) zc.push_back(mpz_class(c * L));
    auto dn = divisors(zc.front()), dd = divisors(zc.back());
    for (auto& u : dn)
        for (auto& w : dd)
            for (int s : {1, -1}) {
                mpq_class x(s * u, w);
                x.canonicalize();
                if (poly::eval(Q, f, x) == 0 &&
                    std::find(out.begin(), out.end(), x) == out.end())
                    out.push_back(x);
            }
    std::sort(out.begin(), out.end());
    return out;
}

bool rational_sqrt(const mpq_class& a, mpq_class& r) {
    if (a < 0) return false;
    mpz_class n = a.get_num(), d = a.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    r = mpq_class(sn, sd);
    r.canonicalize();
    return true;
}

// Squarefree monic f over Q of degree <= 4 into irreducibles.
void factor_q_sqfree(const QPoly& f0, std::vector<QPoly>& out) {
    QScalar Q;
    QPoly f = f0;
    for (auto& x : rational_roots(f)) {
        QPoly lin{-x, 1};
        f = poly::quo(Q, f, lin);
        out.push_back(lin);
    }
    int n = poly::deg<QScalar>(f);
    if (n <= 0) return;
    if (n == 4) {
        // (z^2 + p z + q)(z^2 + r z + s) via the resolvent cubic in y = q + s
        mpq_class a = f[3], b = f[2], c = f[1], d = f[0];
        QPoly res{-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1};
        for (auto& y : rational_roots(res)) {
            mpq_class dq = y * y - 4 * d, dp = a * a - 4 * (b - y), sq, sp;
            if (!rational_sqrt(dq, sq) || !rational_sqrt(dp, sp)) continue;
            mpq_class q1 = (y + sq) / 2, s1 = (y - sq) / 2;
            for (int sg : {1, -1}) {
                mpq_class p1 = (a + sg * sp) / 2, r1 = (a - sg * sp) / 2;
                if (p1 * s1 + q1 * r1 == c && q1 + s1 + p1 * r1 == b && q1 * s1 == d) {
                    QPoly A{q1, p1, 1}, B{s1, r1, 1};
                    out.push_back(A);
                    out.push_back(B);
                    return;
                }
            }
        }
    }
    out.push_back(f);
}

}  // namespace

std::vector<Factor> factor(const ResRing& R, const ResPoly& g0) {
    if (g0.empty()) fail("ZeroPolynomial", "factor of zero");
    std::vector<Factor> result;
    if (poly::deg<ResRing>(g0) == 0) return result;
    ResPoly g = poly::monic(R, g0);
    if (R.k->char0 && poly::deg<ResRing>(g) > 4) fail("DegreeTooLargeOverQ", "degree > 4 over Q");
    std::vector<std::pair<RP, int>> sq;
    sqf(R, g, 1, sq);
    std::mt19937_64 rng(0x5eed1234ULL);
    for (auto& [h, m] : sq) {
        if (R.k->char0) {
            QPoly qf;
            for (auto& c : h) qf.push_back(c.q);
            std::vector<QPoly> parts;
            factor_q_sqfree(qf, parts);
            for (auto& part : parts) {
                ResPoly rp;
                for (auto& c : part) {
                    ResElem e;
                    e.q = c;
                    rp.push_back(e);
                }
                result.push_back({rp, m});
            }
            continue;
        }
        for (auto& [gd, d] : ddf(R, h)) {
            std::vector<RP> parts;
            edf(R, gd, d, rng, parts);
            for (auto& part : parts) result.push_back({part, m});
        }
    }
    // merge equal factors (possible across square-free layers only in principle)
    std::sort(result.begin(), result.end(),
              [&](const Factor& a, const Factor& b) { return poly_less(R, a.g, b.g); });
    std::vector<Factor> merged;
    for (auto& f : result) {
        if (!merged.empty() && poly::equal(R, merged.back().g, f.g))
            merged.back().mult += f.mult;
        else
            merged.push_back(f);
    }
    return merged;
}

std::vector<ResElem> roots(const ResRing& R, const ResPoly& g) {
    std::vector<ResElem> out;
    for (auto& f : factor(R, g))
        if (poly::deg<ResRing>(f.g) == 1) out.push_back(R.neg(f.g[0]));
    if (!R.k->char0)
        std::sort(out.begin(), out.end(),
                  [&](const ResElem& a, const ResElem& b) { return R.key(a) < R.key(b); });
    else
        std::sort(out.begin(), out.end(), [](const ResElem& a, const ResElem& b) { return a.q < b.q; });
    return out;
}

bool res_irreducible(const ResRing& R, const ResPoly& g) {
    auto fs = factor(R, g);
    return fs.size() == 1 && fs[0].mult == 1;
}

int separable_degree(const ResRing& R, const ResPoly& g) {
    int s = 0;
    for (auto& f : factor(R, g)) s += poly::deg<ResRing>(f.g);
    return s;
}

long p_free_part(long n, long p) {
    if (n < 1) fail("InvalidArgument", "p_free_part needs n >= 1");
    if (p <= 1) return n;
    while (n % p == 0) n /= p;
    return n;
}

// ---- extensions ----

ResElem ResExtension::map(const ResElem& a) const {
    if (from->char0 || from->deg == 1 || from == to) return a;
    ResRing R(to);
    ResElem acc;
    for (int i = static_cast<int>(a.a.size()) - 1; i >= 0; --i) acc = R.add(R.mul(acc, iota), R.from_fp(a.a[i]));
    return acc;
}

ResPoly ResExtension::map_poly(const ResPoly& g) const {
    ResPoly out;
    for (auto& c : g) out.push_back(map(c));
    return out;
}

std::vector<ResElem> ResExtension::decompose(const ResElem& b) const {
    if (rel_deg == 1) return {b};
    uint32_t p = to->p;
    int N = to->deg, f = from->deg;
    std::vector<uint32_t> coords(N, 0);
    for (size_t i = 0; i < b.a.size(); ++i) coords[i] = b.a[i];
    std::vector<uint32_t> c(N, 0);
    for (int i = 0; i < N; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < N; ++j) acc = (acc + uint64_t(inv_matrix[i][j]) * coords[j]) % p;
        c[i] = static_cast<uint32_t>(acc);
    }
    std::vector<ResElem> out(rel_deg);
    for (int l = 0; l < rel_deg; ++l) {
        for (int a = 0; a < f; ++a) out[l].a.push_back(c[l * f + a]);
        poly::trim(FpR{p}, out[l].a);
    }
    return out;
}

ResExtension extend(const ResFieldPtr& k, const ResPoly& psi0) {
    ResRing R(k);
    ResPoly psi = poly::monic(R, psi0);
    int m = poly::deg<ResRing>(psi);
    if (m < 1) fail("Internal", "residue extension by a constant");
    ResExtension ext;
    ext.from = k;
    ext.rel_deg = m;
    if (m == 1) {
        ext.to = k;
        ext.iota = R.gen();
        ext.z = R.neg(psi[0]);
        return ext;
    }
    if (k->char0) fail("Unsupported", "nonlinear residue extension over Q");
    int N = k->deg * m;
    ext.to = finite_field(k->p, N);
    ResRing T(ext.to);
    if (k->deg == 1) {
        ext.iota = ResElem{};
    } else {
        ResPoly modk;
        for (auto c : k->modulus) modk.push_back(T.from_fp(c));
        auto rs = roots(T, modk);
        if (rs.empty()) fail("Internal", "embedding of residue field failed");
        ext.iota = rs.front();
    }
    ext.z = {};
    {
        ResPoly pt = ext.map_poly(psi);
        auto rs = roots(T, pt);
        if (rs.empty()) fail("Internal", "residual root not found in extension");
        ext.z = rs.front();
    }
    // basis iota^a z^l, column index l*f + a
    uint32_t p = k->p;
    int f = k->deg;
    std::vector<std::vector<uint32_t>> M(N, std::vector<uint32_t>(2 * N, 0));
    ResElem zl = T.one();
    for (int l = 0; l < m; ++l) {
        ResElem ia = zl;
        for (int a = 0; a < f; ++a) {
            for (size_t i = 0; i < ia.a.size(); ++i) M[i][l * f + a] = ia.a[i];
            ia = T.mul(ia, ext.iota);
        }
        zl = T.mul(zl, ext.z);
    }
    for (int i = 0; i < N; ++i) M[i][N + i] = 1;
    FpR F{p};
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int i = c; i < N; ++i)
            if (M[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0) fail("Internal", "residue basis is singular");
        std::swap(M[piv], M[c]);
        uint32_t iv = F.inv(M[c][c]);
        for (auto& x : M[c]) x = F.mul(x, iv);
        for (int i = 0; i < N; ++i) {
            if (i == c || !M[i][c]) continue;
            uint32_t fac = M[i][c];
            for (int j = 0; j < 2 * N; ++j) M[i][j] = F.sub(M[i][j], F.mul(fac, M[c][j]));
        }
    }
    ext.inv_matrix.assign(N, std::vector<uint32_t>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) ext.inv_matrix[i][j] = M[i][N + j];
    return ext;
}

}  // namespace maclane
