#include <cstdlib>
#include <iostream>

#include "maclane/errors.hpp"
#include "maclane/maclane.hpp"

namespace maclane {

namespace {

KPoly x_poly(const BaseField& K) { return {K.zero(), K.one()}; }

}  // namespace

FieldPtr ExtField::base(const BaseField& K) {
    auto F = std::make_shared<ExtField>();
    F->K_ = K;
    F->h_ = x_poly(K);
    F->n_ = 1;
    F->kres_ = K.residue_field();
    F->Pi_ = {K.uniformizer()};
    return F;
}

FieldPtr ExtField::create(const BaseField& K, const KPoly& h0) {
    KRing R{K};
    if (poly::deg<KRing>(h0) < 1) fail("InvalidArgument", "field modulus must be nonconstant");
    KPoly h = poly::monic(R, h0);
    auto F = std::make_shared<ExtField>();
    F->K_ = K;
    F->h_ = h;
    F->n_ = poly::deg<KRing>(h);
    if (F->n_ == 1) {
        F->kres_ = K.residue_field();
        F->Pi_ = {K.uniformizer()};
        return F;
    }
    FieldPtr B = base(K);
    IndVal V = approximants(B, to_fpoly(B, h));
    auto inv = ext_invariants(V);
    F->e_ = inv.e;
    F->f_ = inv.f;
    F->kres_ = V.st.back().k;
    // uniformizer: canonical monomial of value 1/e through the last finite stage
    int m = V.last_finite();
    auto b = monomial_exps(V, m, mpq_class(1, inv.e));
    FPoly mono = monomial_poly(V, b);
    F->Pi_ = poly::rem(R, to_kpoly(B, mono), h);
    F->chain_ = std::make_shared<IndVal>(std::move(V));
    return F;
}

FE ExtField::from_k(const KElem& c) const {
    if (c.is_zero()) return {};
    return {c};
}

FE ExtField::gen() const {
    if (n_ == 1) return from_k(-h_[0]);
    return {K_.zero(), K_.one()};
}

FE ExtField::add(const FE& a, const FE& b) const { return poly::add(KRing{K_}, a, b); }
FE ExtField::sub(const FE& a, const FE& b) const { return poly::sub(KRing{K_}, a, b); }
FE ExtField::neg(const FE& a) const { return poly::neg(KRing{K_}, a); }

FE ExtField::mul(const FE& a, const FE& b) const {
    if (a.empty() || b.empty()) return {};
    if (a.size() == 1 && b.size() == 1) return {a[0] * b[0]};
    KRing R{K_};
    if (a.size() == 1) return poly::scale(R, b, a[0]);
    if (b.size() == 1) return poly::scale(R, a, b[0]);
    return poly::rem(R, poly::mul(R, a, b), h_);
}

FE ExtField::inv(const FE& a) const {
    if (a.empty()) fail("DivisionByZero", "inverse of zero in extension field");
    if (a.size() == 1) return {K_.one() / a[0]};
    return poly::invmod(KRing{K_}, a, h_);
}

FE ExtField::pow(const FE& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    FE r = one(), b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

FE ExtField::reduce_poly(const KPoly& g) const {
    KRing R{K_};
    if (n_ == 1) return from_k(poly::eval(R, g, -h_[0]));
    return poly::rem(R, g, h_);
}

bool ExtField::eq(const FE& a, const FE& b) const { return poly::equal(KRing{K_}, a, b); }

Val ExtField::val(const FE& a) const {
    if (a.empty()) return Val::inf();
    if (a.size() == 1) return K_.val(a[0]);
    // equals v(Res(h, a)) / deg h, without the resultant
    return stabilized_evaluate(*chain_, to_fpoly(chain_->F, a));
}

ResElem ExtField::residue(const FE& a) const {
    Val v = val(a);
    if (v < Val(0)) fail("NotAUnit", "element has negative valuation " + v.str());
    if (v > Val(0)) return {};
    if (n_ == 1) return K_.reduce(a.empty() ? K_.zero() : a[0]);
    const IndVal& V = *chain_;
    int m = V.last_finite();
    FieldPtr B = V.F;
    ResPoly r = residual_at(V, m, to_fpoly(B, a), mpq_class(0));
    const ResExtension& ext = V.st.back().from_prev;
    return poly::eval(ResRing(ext.to), ext.map_poly(r), ext.z);
}

FE ExtField::lift(const ResElem& r) const {
    if (n_ == 1) return from_k(K_.lift(r));
    const IndVal& V = *chain_;
    FPoly c = lift_const(V, V.size(), r, mpq_class(0));
    return reduce_poly(to_kpoly(V.F, c));
}

FE ExtField::pi_pow(long k) const { return pow(Pi_, k); }

FE ExtField::truncate(const FE& a, const Val& N) const {
    if (a.empty() || N.is_inf()) return a;
    if (n_ == 1) return from_k(K_.truncate(a[0], ceil_q(N.q()).get_si()));
    Val vx = val(gen());
    FE out;
    for (size_t i = 0; i < a.size(); ++i) {
        mpq_class need = N.q();
        if (!vx.is_inf()) need -= vx.q() * mpq_class(static_cast<long>(i));
        out.push_back(K_.truncate(a[i], ceil_q(need).get_si()));
    }
    poly::trim(KRing{K_}, out);
    return out;
}

std::string ExtField::str(const FE& a, const std::string& var) const {
    if (n_ == 1) return a.empty() ? "0" : K_.str(a[0]);
    return kpoly_str(K_, a, var);
}

FPoly to_fpoly(const FieldPtr& F, const KPoly& f) {
    FPoly out;
    for (auto& c : f) out.push_back(F->from_k(c));
    poly::trim(FRing(F), out);
    return out;
}

KPoly to_kpoly(const FieldPtr& F, const FPoly& f) {
    KPoly out;
    for (auto& c : f) {
        if (c.size() > 1) fail("Internal", "coefficient is not in the base field");
        out.push_back(c.empty() ? F->K().zero() : c[0]);
    }
    poly::trim(KRing{F->K()}, out);
    return out;
}

// ---- embeddings ----

FE Embedding::map(const FE& a) const {
    if (a.empty()) return {};
    if (from->is_base()) return to->from_k(a[0]);
    FE acc;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) acc = to->add(to->mul(acc, gen_image), to->from_k(a[i]));
    return acc;
}

FPoly Embedding::map_poly(const FPoly& f) const {
    FPoly out;
    for (auto& c : f) out.push_back(map(c));
    return out;
}

Embedding identity_embedding(const FieldPtr& F) { return Embedding{F, F, F->gen()}; }

Embedding compose(const Embedding& a, const Embedding& b) {
    if (a.to.get() != b.from.get()) fail("Internal", "embeddings do not compose");
    return Embedding{a.from, b.to, b.map(a.gen_image)};
}

namespace {

// nd+1 distinct interpolation nodes in K
KElem node(const BaseField& K, long k) {
    if (K.kind() != BaseKind::FPT) return K.from_int(k);
    // base-p digits of k as coefficients of powers of t
    long p = K.p();
    KElem x = K.zero(), tp = K.one();
    for (; k > 0; k /= p, tp = tp * K.t()) x = x + K.from_int(k % p) * tp;
    return x;
}

KPoly interpolate(const BaseField& K, const std::vector<KElem>& xs, const std::vector<KElem>& ys) {
    KRing R{K};
    size_t n = xs.size();
    std::vector<KElem> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    KPoly acc = poly::constant(R, dd[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        acc = poly::mul(R, acc, KPoly{-xs[i], K.one()});
        acc = poly::add(R, acc, poly::constant(R, dd[i]));
    }
    return acc;
}

// sum_j P_j(x) (theta - lam x)^j over K, P_j given as polynomials in x
KPoly shear(const BaseField& K, const FPoly& P, const KElem& theta, long lam) {
    KRing R{K};
    KPoly lin = {theta, K.from_int(-lam)};
    poly::trim(R, lin);
    KPoly acc;
    for (int j = static_cast<int>(P.size()) - 1; j >= 0; --j) acc = poly::add(R, poly::mul(R, acc, lin), P[j]);
    return acc;
}

KElem det(const BaseField& K, std::vector<std::vector<KElem>> M) {
    int N = static_cast<int>(M.size());
    KElem d = K.one();
    for (int c = 0; c < N; ++c) {
        int piv = c;
        while (piv < N && M[piv][c].is_zero()) ++piv;
        if (piv == N) return K.zero();
        if (piv != c) {
            std::swap(M[piv], M[c]);
            d = -d;
        }
        d = d * M[c][c];
        KElem iv = K.one() / M[c][c];
        for (int r = c + 1; r < N; ++r) {
            if (M[r][c].is_zero()) continue;
            KElem f = M[r][c] * iv;
            for (int k = c; k < N; ++k) M[r][k] = M[r][k] - f * M[c][k];
        }
    }
    return d;
}

// coefficients (s0, s1) of the first subresultant of a, b with formal degrees m, n >= 1
std::pair<KElem, KElem> first_subresultant(const BaseField& K, const KPoly& a, const KPoly& b, int m, int n) {
    KRing R{K};
    int rows = m + n - 2, cols = m + n - 1;
    std::vector<std::vector<KElem>> M(rows, std::vector<KElem>(cols, K.zero()));
    // column c holds the coefficient of x^(cols - 1 - c)
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = poly::coeff(R, a, m - j);
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j <= n; ++j) M[n - 1 + i][i + j] = poly::coeff(R, b, n - j);
    auto minor = [&](int last) {
        std::vector<std::vector<KElem>> S(rows, std::vector<KElem>(rows));
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < rows - 1; ++c) S[r][c] = M[r][c];
            S[r][rows - 1] = M[r][last];
        }
        return det(K, S);
    };
    return {minor(cols - 1), minor(cols - 2)};
}

}  // namespace

Adjoined adjoin(const FieldPtr& F, const FPoly& P0) {
    FRing FR(F);
    if (poly::deg<FRing>(P0) < 1) fail("InvalidArgument", "adjoining a root of a constant");
    FPoly P = poly::monic(FR, P0);
    int d = poly::deg<FRing>(P);
    const BaseField& K = F->K();
    if (d == 1) return Adjoined{F, identity_embedding(F), F->neg(P[0])};
    if (F->is_base()) {
        FieldPtr G = ExtField::create(K, to_kpoly(F, P));
        return Adjoined{G, Embedding{F, G, G->from_k(F->gen().empty() ? K.zero() : F->gen()[0])}, G->gen()};
    }
    KRing R{K};
    int n = F->degree();
    int N = n * d;
    const KPoly& h = F->h();
    for (long step = 0; step <= 2L * N; ++step) {
        long lam = (step + 1) / 2 * (step % 2 ? 1 : -1);
        if (step == 0) lam = 0;
        std::vector<KElem> xs, ys;
        for (long k = 0; k <= N; ++k) {
            KElem th = node(K, k);
            KPoly Q = poly::rem(R, shear(K, P, th, lam), h);
            xs.push_back(th);
            ys.push_back(Q.empty() ? K.zero() : poly::resultant(R, h, Q));
        }
        KPoly H = interpolate(K, xs, ys);
        if (poly::deg<KRing>(H) != N) continue;
        H = poly::monic(R, H);
        KPoly dH = poly::derivative(R, H);
        if (dH.empty() || poly::deg<KRing>(poly::gcd(R, H, dH)) != 0) continue;
        trace(2, "adjoin: lambda = " + std::to_string(lam) + ", degree " + std::to_string(N));
        FieldPtr G = ExtField::create(K, H);
        FRing GR(G);
        FE th = G->gen();
        {
            // the common root x = alpha as -s0/s1 of the first subresultant,
            // interpolated in theta like the resultant
            std::vector<KElem> s0v, s1v;
            for (long k = 0; k <= N; ++k) {
                KPoly Q = poly::rem(R, shear(K, P, xs[k], lam), h);
                auto [s0, s1] = first_subresultant(K, h, Q, n, n - 1);
                s0v.push_back(s0);
                s1v.push_back(s1);
            }
            FE S1 = G->reduce_poly(interpolate(K, xs, s1v));
            if (!S1.empty()) {
                FE A = G->neg(G->div(G->reduce_poly(interpolate(K, xs, s0v)), S1));
                FE hA;
                for (int j = static_cast<int>(h.size()) - 1; j >= 0; --j) hA = G->add(G->mul(hA, A), G->from_k(h[j]));
                if (hA.empty()) return Adjoined{G, Embedding{F, G, A}, G->sub(th, G->mul(G->from_int(lam), A))};
            }
        }
        // common root x = alpha of h(x) and P(x, theta - lam x) over G
        FPoly hG = to_fpoly(G, h);
        FPoly lin = {th, G->from_int(-lam)};
        poly::trim(GR, lin);
        FPoly Q;
        for (int j = d; j >= 0; --j) {
            FPoly Pj = to_fpoly(G, P[j]);
            Q = poly::add(GR, poly::mul(GR, Q, lin), Pj);
        }
        FPoly g = poly::gcd(GR, hG, Q);
        if (poly::deg<FRing>(g) != 1) continue;
        g = poly::monic(GR, g);
        FE A = G->neg(g[0]);
        FE root = G->sub(th, G->mul(G->from_int(lam), A));
        return Adjoined{G, Embedding{F, G, A}, root};
    }
    fail("PrimitiveSearchExhausted", "no primitive element found with |lambda| <= " + std::to_string(N));
}

std::vector<FE> coordinates(const Adjoined& A, const FE& z) {
    const ExtField& G = *A.G;
    const FieldPtr& F = A.emb.from;
    const BaseField& K = G.K();
    int n = F->degree(), N = G.degree(), d = N / n;
    // columns: emb(y^j) beta^i as K-vectors; augmented by z
    std::vector<std::vector<KElem>> M(N, std::vector<KElem>(N + 1, K.zero()));
    FE bi = G.one();
    for (int i = 0; i < d; ++i) {
        FE yj = F->one();
        for (int j = 0; j < n; ++j) {
            FE col = G.mul(A.emb.map(yj), bi);
            for (size_t r = 0; r < col.size(); ++r) M[r][i * n + j] = col[r];
            yj = F->mul(yj, F->gen());
        }
        bi = G.mul(bi, A.root);
    }
    for (size_t r = 0; r < z.size(); ++r) M[r][N] = z[r];
    for (int c = 0; c < N; ++c) {
        int piv = c;
        while (piv < N && M[piv][c].is_zero()) ++piv;
        if (piv == N) fail("Internal", "adjoined powers are not a basis");
        std::swap(M[piv], M[c]);
        KElem iv = K.one() / M[c][c];
        for (int k = c; k <= N; ++k) M[c][k] = M[c][k] * iv;
        for (int r = 0; r < N; ++r) {
            if (r == c || M[r][c].is_zero()) continue;
            KElem f = M[r][c];
            for (int k = c; k <= N; ++k) M[r][k] = M[r][k] - f * M[c][k];
        }
    }
    std::vector<FE> out(d);
    KRing R{K};
    for (int i = 0; i < d; ++i) {
        KPoly c(n);
        for (int j = 0; j < n; ++j) c[j] = M[i * n + j][N];
        poly::trim(R, c);
        out[i] = c;
    }
    return out;
}

KPoly char_poly(const FieldPtr& L, const FE& a) {
    const BaseField& K = L->K();
    int n = L->degree();
    std::vector<KElem> xs, ys;
    for (long k = 0; k <= n; ++k) {
        xs.push_back(node(K, k));
        KPoly lin = poly::sub(KRing{K}, KPoly{xs.back()}, a);
        ys.push_back(resultant(K, L->h(), lin));
    }
    return interpolate(K, xs, ys);
}

WithValue ensure_value(const FieldPtr& F, const mpq_class& t) {
    mpq_class s = t * F->e();
    s.canonicalize();
    if (s.get_den() == 1) return WithValue{Adjoined{F, identity_embedding(F), F->gen()}, F->pi_pow(s.get_num().get_si())};
    long g = s.get_den().get_si();
    FRing FR(F);
    // x^g - Pi, or x^g + Pi^2 x - Pi when g is divisible by the characteristic
    FPoly P = poly::monomial(FR, static_cast<int>(g), F->one());
    P[0] = F->neg(F->uniformizer());
    long ch = F->K().kind() == BaseKind::FPT ? F->K().p() : 0;
    if (ch && g % ch == 0) P[1] = F->pi_pow(2);
    Adjoined A = adjoin(F, P);
    mpz_class k = s.get_num();  // value of root is 1/(g e_F), so root^(num) has value t
    FE u = A.G->pow(A.root, k.get_si());
    return WithValue{A, u};
}

std::string fpoly_str(const FieldPtr& F, const FPoly& f, const std::string& var) {
    if (F->is_base()) return kpoly_str(F->K(), to_kpoly(F, f), var);
    if (f.empty()) return "0";
    std::string out;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i].empty()) continue;
        if (!out.empty()) out += " + ";
        std::string c = F->str(f[i]);
        if (i == 0)
            out += "(" + c + ")";
        else {
            if (c != "1") out += "(" + c + ")*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

int log_level() {
    static int lvl = [] {
        const char* s = std::getenv("MACLANE_LOG");
        if (!s) return 0;
        std::string v(s);
        if (v == "trace") return 2;
        if (v == "info") return 1;
        return 0;
    }();
    return lvl;
}

void trace(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[maclane] " << msg << "\n";
}

}  // namespace maclane
