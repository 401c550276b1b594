#include "maclane/maclane.hpp"

#include "maclane/errors.hpp"

namespace maclane {

namespace {

long mod_inverse(long a, long m) {
    a %= m;
    if (a < 0) a += m;
    long t = 0, nt = 1, r = m, nr = a;
    while (nr) {
        long q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) fail("Internal", "key value has the wrong order in the value group");
    return t < 0 ? t + m : t;
}

mpz_class as_int(const mpq_class& q, const char* what) {
    if (q.get_den() != 1) fail("Internal", std::string("expected an integer: ") + what);
    return q.get_num();
}

// least a in [0, tau) with gamma - a mu_i in the previous value group
long shift_index(const IndVal& V, int i, const mpq_class& gamma) {
    const Stage& s = V.stage(i);
    if (s.tau == 1) return 0;
    mpz_class G = as_int(gamma * s.E, "gamma in value group");
    mpz_class U = as_int(s.mu.q() * s.E, "key value in value group");
    long tau = s.tau;
    long g = mpz_class(G % tau).get_si();
    if (g < 0) g += tau;
    long u = mpz_class(U % tau).get_si();
    return (g * mod_inverse(u, tau)) % tau;
}

std::vector<mpz_class> add_exps(std::vector<mpz_class> a, const std::vector<mpz_class>& b, const mpz_class& k = 1) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
    return a;
}

std::vector<mpz_class> sub_exps(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

// reduction in k_i of the value-zero monomial Pi^b0 prod_{l<i} phi_l^b_l
ResElem redmono(const IndVal& V, int i, const std::vector<mpz_class>& b) {
    if (static_cast<int>(b.size()) != i) fail("Internal", "monomial exponent length");
    if (i == 1) {
        if (b[0] != 0) fail("Internal", "monomial does not have value zero");
        return ResRing(V.stage(1).k).one();
    }
    int l = i - 1;
    const Stage& sl = V.stage(l);
    if (b[l] % sl.tau != 0) fail("Internal", "monomial exponent not divisible by tau");
    mpz_class kk = b[l] / sl.tau;
    std::vector<mpz_class> rest(b.begin(), b.begin() + l);
    if (kk != 0) rest = add_exps(rest, monomial_exps(V, l - 1, sl.mu.q() * sl.tau), kk);
    ResElem r = redmono(V, l, rest);
    const ResExtension& ext = V.stage(i).from_prev;
    ResRing T(ext.to);
    ResElem out = ext.map(r);
    if (kk != 0) out = T.mul(out, T.pow(kk > 0 ? ext.z : T.inv(ext.z), kk > 0 ? kk : mpz_class(-kk)));
    return out;
}

ResPoly red(const IndVal& V, int i, const FPoly& g, const mpq_class& gamma) {
    const Stage& s = V.stage(i);
    if (s.mu.is_inf()) fail("Internal", "reduction at an infinite stage");
    const ExtField& F = *V.F;
    FRing FR(V.F);
    ResRing Ri(s.k);
    ResPoly out;
    auto c = poly::phi_expansion(FR, g, s.phi);
    long a = shift_index(V, i, gamma);
    mpq_class gp = gamma - s.mu.q() * a;
    auto mono_gp = monomial_exps(V, i - 1, gp);
    auto mono_t = monomial_exps(V, i - 1, s.mu.q() * s.tau);
    for (size_t m = 0; m < c.size(); ++m) {
        if (c[m].empty()) continue;
        long mm = static_cast<long>(m);
        if (mm < a || (mm - a) % s.tau != 0) continue;
        long j = (mm - a) / s.tau;
        mpq_class beta = gamma - s.mu.q() * mm;
        Val vc = evaluate_at(V, i - 1, c[m]);
        if (vc > Val(beta)) continue;
        if (vc < Val(beta)) fail("Internal", "reduction below the valuation");
        ResElem coef;
        if (i == 1) {
            long k = as_int(beta * V.E0(), "constant value").get_si();
            coef = F.residue(F.mul(c[m][0].empty() ? F.zero() : c[m].front(), F.pi_pow(-k)));
        } else {
            ResPoly r = red(V, i - 1, c[m], beta);
            const ResExtension& ext = s.from_prev;
            coef = poly::eval(Ri, ext.map_poly(r), ext.z);
        }
        auto b = sub_exps(add_exps(monomial_exps(V, i - 1, beta), mono_t, j), mono_gp);
        ResElem u = redmono(V, i, b);
        if (static_cast<long>(out.size()) <= j) out.resize(j + 1);
        out[j] = Ri.add(out[j], Ri.mul(coef, u));
    }
    poly::trim(Ri, out);
    return out;
}

}  // namespace

long IndVal::E0() const { return F->e(); }

const ResFieldPtr& residue_field_at(const IndVal& V, int i) {
    if (i == 0) return V.F->residue_field();
    return V.stage(i).k;
}

Val evaluate_at(const IndVal& V, int i, const FPoly& g) {
    if (g.empty()) return Val::inf();
    if (i == 0) {
        if (g.size() > 1) fail("Internal", "non-constant at stage 0");
        return V.F->val(g[0]);
    }
    const Stage& s = V.stage(i);
    if (g.size() < s.phi.size()) return evaluate_at(V, i - 1, g);
    FRing FR(V.F);
    if (s.mu.is_inf()) return evaluate_at(V, i - 1, poly::rem(FR, g, s.phi));
    auto c = poly::phi_expansion(FR, g, s.phi);
    Val best = Val::inf();
    for (size_t m = 0; m < c.size(); ++m) {
        if (c[m].empty()) continue;
        best = vmin(best, evaluate_at(V, i - 1, c[m]) + Val(s.mu.q() * static_cast<long>(m)));
    }
    return best;
}

Val evaluate(const IndVal& V, const FPoly& g) { return evaluate_at(V, V.size(), g); }

Val stabilized_evaluate(const IndVal& V, const FPoly& g) {
    int T = V.size();
    FRing FR(V.F);
    return evaluate_at(V, T - 1, poly::rem(FR, g, V.stage(T).phi));
}

std::vector<mpz_class> monomial_exps(const IndVal& V, int i, const mpq_class& gamma) {
    std::vector<mpz_class> b(i + 1);
    mpq_class g = gamma;
    for (int l = i; l >= 1; --l) {
        long a = shift_index(V, l, g);
        b[l] = a;
        g -= V.stage(l).mu.q() * a;
    }
    b[0] = as_int(g * V.E0(), "monomial base exponent");
    return b;
}

FPoly monomial_poly(const IndVal& V, const std::vector<mpz_class>& b) {
    FRing FR(V.F);
    FPoly out = poly::constant(FR, V.F->pi_pow(b[0].get_si()));
    for (size_t l = 1; l < b.size(); ++l) {
        if (b[l] < 0) fail("Internal", "negative key exponent");
        out = poly::mul(FR, out, poly::pow(FR, V.stage(static_cast<int>(l)).phi, b[l].get_ui()));
    }
    return out;
}

ResPoly residual_at(const IndVal& V, int i, const FPoly& g, const mpq_class& gamma) { return red(V, i, g, gamma); }

ResPoly residual_polynomial(const IndVal& V, const FPoly& g) {
    int m = V.last_finite();
    if (m == 0) fail("InvalidArgument", "no finite stage");
    Val v = evaluate_at(V, m, g);
    if (v.is_inf()) fail("InfiniteValue", "residual polynomial of a polynomial with infinite value");
    return red(V, m, g, v.q());
}

KeyCheck is_key(const IndVal& V, const FPoly& phi) {
    KeyCheck kc;
    FRing FR(V.F);
    int m = V.last_finite();
    if (m == 0 || V.terminal()) return kc;
    if (poly::deg<FRing>(phi) < 1 || !poly::is_monic(FR, phi)) return kc;
    const Stage& s = V.stage(m);
    ResRing R(s.k);
    ResPoly r = residual_polynomial(V, phi);
    int ypow = strip_y_power(R, r);
    int d = poly::deg<ResRing>(r);
    int dphi = poly::deg<FRing>(phi), dm = poly::deg<FRing>(s.phi);
    if (d == 0) {
        if (dphi == dm) {
            kc.key = true;
            kc.same_class = true;
        }
        return kc;
    }
    if (ypow > 0) return kc;
    if (dphi != dm * s.tau * d) return kc;
    if (!res_irreducible(R, r)) return kc;
    kc.key = true;
    kc.same_class = dphi == dm;
    kc.psi = poly::monic(R, r);
    return kc;
}

FPoly lift_const(const IndVal& V, int i, const ResElem& kappa, const mpq_class& beta) {
    const ExtField& F = *V.F;
    ResRing Ri(residue_field_at(V, i));
    if (Ri.is_zero(kappa)) return {};
    if (i == 1) {
        long k = as_int(beta * V.E0(), "lift value").get_si();
        return {F.mul(F.lift(kappa), F.pi_pow(k))};
    }
    FRing FR(V.F);
    const ResExtension& ext = V.stage(i).from_prev;
    auto parts = ext.decompose(kappa);
    const Stage& sl = V.stage(i - 1);
    ResRing Rl(sl.k);
    long a = shift_index(V, i - 1, beta);
    mpq_class bp = beta - sl.mu.q() * a;
    auto mono_t = monomial_exps(V, i - 2, sl.mu.q() * sl.tau);
    auto mono_bp = monomial_exps(V, i - 2, bp);
    FPoly C;
    for (size_t l = 0; l < parts.size(); ++l) {
        if (Rl.is_zero(parts[l])) continue;
        mpq_class bl = bp - sl.mu.q() * sl.tau * static_cast<long>(l);
        auto b = sub_exps(add_exps(monomial_exps(V, i - 2, bl), mono_t, static_cast<long>(l)), mono_bp);
        ResElem u = redmono(V, i - 1, b);
        FPoly Cl = lift_const(V, i - 1, Rl.mul(parts[l], Rl.inv(u)), bl);
        FPoly term = poly::mul(FR, poly::pow(FR, sl.phi, a + sl.tau * static_cast<long>(l)), Cl);
        C = poly::add(FR, C, term);
    }
    return C;
}

FPoly lift_key(const IndVal& V, const ResPoly& psi0) {
    int m = V.last_finite();
    if (m == 0 || V.terminal()) fail("InvalidArgument", "lift_key needs a non-terminal valuation");
    const Stage& s = V.stage(m);
    ResRing R(s.k);
    ResPoly psi = poly::monic(R, psi0);
    int d = poly::deg<ResRing>(psi);
    if (d < 1) fail("InvalidArgument", "lift_key of a constant");
    if (d == 1 && R.is_zero(psi[0])) return s.phi;
    FRing FR(V.F);
    mpq_class tm = s.mu.q() * s.tau;
    mpq_class gamma = tm * d;
    auto mono_t = monomial_exps(V, m - 1, tm);
    auto mono_g = monomial_exps(V, m - 1, gamma);
    auto unit = [&](int j) {
        mpq_class bj = tm * (d - j);
        return redmono(V, m, sub_exps(add_exps(monomial_exps(V, m - 1, bj), mono_t, j), mono_g));
    };
    ResElem ud = unit(d);
    FPoly phiT = poly::pow(FR, s.phi, s.tau);
    FPoly out;
    FPoly pw = poly::constant(FR, V.F->one());
    for (int j = 0; j <= d; ++j) {
        if (j == d) {
            out = poly::add(FR, out, pw);
            break;
        }
        if (!R.is_zero(psi[j])) {
            ResElem kap = R.mul(R.mul(ud, psi[j]), R.inv(unit(j)));
            FPoly C = lift_const(V, m, kap, tm * (d - j));
            out = poly::add(FR, out, poly::mul(FR, C, pw));
        }
        pw = poly::mul(FR, pw, phiT);
    }
    return out;
}

IndVal first_stage(const FieldPtr& F, const FE& a, const Val& mu) {
    IndVal V;
    V.F = F;
    Stage s;
    s.phi = {F->neg(a), F->one()};
    poly::trim(FRing(F), s.phi);
    s.mu = mu;
    if (mu.is_inf()) {
        s.tau = 1;
    } else {
        mpq_class q = mu.q() * F->e();
        q.canonicalize();
        s.tau = static_cast<int>(q.get_den().get_si());
    }
    s.E = static_cast<long>(F->e()) * s.tau;
    s.k = F->residue_field();
    s.psi_prev = {ResElem{}, ResRing(s.k).one()};
    s.from_prev = extend(s.k, s.psi_prev);
    V.st.push_back(std::move(s));
    return V;
}

IndVal augment(const IndVal& V, const FPoly& phi, const Val& mu) {
    int m = V.last_finite();
    if (m == 0 || V.terminal()) fail("InvalidKey", "cannot augment a terminal valuation");
    KeyCheck kc = is_key(V, phi);
    if (!kc.key) fail("InvalidKey", fpoly_str(V.F, phi) + " is not a key polynomial");
    Val vphi = evaluate_at(V, m, phi);
    if (!(mu > vphi)) fail("KeyValueTooSmall", "key value " + mu.str() + " does not exceed " + vphi.str());
    const Stage& sm = V.stage(m);
    IndVal W;
    W.F = V.F;
    Stage s;
    s.phi = phi;
    s.mu = mu;
    int base;  // number of stages kept
    if (kc.same_class) {
        base = m - 1;
        s.k = sm.k;
        s.from_prev = sm.from_prev;
        s.psi_prev = sm.psi_prev;
    } else {
        base = m;
        s.psi_prev = kc.psi;
        s.from_prev = extend(sm.k, kc.psi);
        s.k = s.from_prev.to;
    }
    W.st.assign(V.st.begin(), V.st.begin() + base);
    long Ep = base >= 1 ? W.st.back().E : V.E0();
    if (mu.is_inf()) {
        s.tau = 1;
    } else {
        mpq_class q = mu.q() * Ep;
        q.canonicalize();
        s.tau = static_cast<int>(q.get_den().get_si());
    }
    s.E = Ep * s.tau;
    if (base >= 1 && !mu.is_inf()) {
        const Stage& pv = W.st.back();
        long dp = poly::deg<FRing>(pv.phi), dn = poly::deg<FRing>(phi);
        if (!(mu.q() * dp > pv.mu.q() * dn)) fail("Internal", "key value growth inequality violated");
    }
    W.st.push_back(std::move(s));
    if (log_level() >= 2)
        trace(2, "augment: stage " + std::to_string(W.size()) + " key " + fpoly_str(V.F, phi) + " value " + mu.str());
    return W;
}

ExtInvariants ext_invariants(const IndVal& V) {
    ExtInvariants r;
    for (auto& s : V.st) {
        r.e *= s.tau;
        r.f *= s.from_prev.rel_deg;
    }
    return r;
}

std::vector<IndVal> approximant_prefixes(const IndVal& V) {
    std::vector<IndVal> out;
    for (int i = 1; i <= V.size(); ++i) {
        IndVal W;
        W.F = V.F;
        W.st.assign(V.st.begin(), V.st.begin() + i);
        out.push_back(std::move(W));
    }
    return out;
}

// ---- approximants and local factorization ----

namespace {

std::string factorization_str(const ResRing& R, const std::vector<Factor>& fs) {
    std::string s;
    for (auto& f : fs) {
        if (!s.empty()) s += " * ";
        s += "(" + poly_str(R, f.g) + ")";
        if (f.mult > 1) s += "^" + std::to_string(f.mult);
    }
    return s;
}

std::vector<Val> expansion_values(const IndVal& V, const std::vector<FPoly>& c) {
    std::vector<Val> vals;
    int m = V.last_finite();
    for (auto& cm : c) vals.push_back(evaluate_at(V, m, cm));
    return vals;
}

// f squarefree after some specialization t = t0 proves it squarefree over Q(t);
// exact gcds over Q(t) blow up quickly
bool squarefree_by_specialization(const FieldPtr& F, const FPoly& f) {
    if (!F->is_base() || F->K().kind() != BaseKind::QT) return false;
    QScalar Q;
    for (long t0 : {1L, -1L, 2L, 3L, -2L, 5L, 7L}) {
        QPoly g;
        bool ok = true;
        for (auto& c : f) {
            mpq_class x = 0;
            if (!c.empty()) {
                const QRat& r = std::get<QRat>(c[0].v);
                mpq_class d = poly::eval(Q, r.den, mpq_class(t0));
                if (d == 0) {
                    ok = false;
                    break;
                }
                x = poly::eval(Q, r.num, mpq_class(t0)) / d;
            }
            g.push_back(x);
        }
        if (!ok) continue;
        poly::trim(Q, g);
        if (poly::deg<QScalar>(g) != poly::deg<FRing>(f)) continue;
        if (poly::deg<QScalar>(poly::gcd(Q, g, poly::derivative(Q, g))) == 0) return true;
    }
    return false;
}

void check_squarefree(const FieldPtr& F, const FPoly& f) {
    FRing FR(F);
    FPoly df = poly::derivative(FR, f);
    if (df.empty()) return;
    if (squarefree_by_specialization(F, f)) return;
    if (poly::deg<FRing>(poly::gcd(FR, f, df)) > 0) fail("NotSquarefree", "polynomial has a repeated factor");
}

constexpr int kMaxSteps = 4000;

}  // namespace

IndVal approximants(const FieldPtr& F, const FPoly& f0) {
    FRing FR(F);
    if (poly::deg<FRing>(f0) < 1) fail("InvalidArgument", "approximants of a constant");
    FPoly f = poly::monic(FR, f0);
    int n = poly::deg<FRing>(f);
    if (n == 1) return first_stage(F, F->neg(f[0]), Val::inf());
    if (f[0].empty()) fail("NotIrreducible", "stage 1: z divides f");
    check_squarefree(F, f);
    std::vector<Val> vals;
    for (auto& c : f) vals.push_back(F->val(c));
    NewtonPolygon np = newton_polygon(vals);
    if (np.segments.size() != 1)
        fail("NotIrreducible", "stage 1: Newton polygon has " + std::to_string(np.segments.size()) + " slopes");
    IndVal V = first_stage(F, F->zero(), Val(-np.segments[0].slope));
    for (int step = 0; step < kMaxSteps; ++step) {
        int m = V.last_finite();
        const Stage& s = V.stage(m);
        ResRing R(s.k);
        ResPoly r = residual_polynomial(V, f);
        strip_y_power(R, r);
        auto fs = factor(R, r);
        if (fs.size() != 1)
            fail("NotIrreducible", "stage " + std::to_string(m) + ": residual polynomial factors as " + factorization_str(R, fs));
        int D = poly::deg<FRing>(s.phi) * s.tau * poly::deg<ResRing>(fs[0].g);
        trace(2, "approximants: stage " + std::to_string(m) + " residual " + poly_str(R, fs[0].g) + "^" + std::to_string(fs[0].mult));
        if (D == n) return augment(V, f, Val::inf());
        FPoly phi = lift_key(V, fs[0].g);
        auto c = poly::phi_expansion(FR, f, phi);
        if (c[0].empty())
            fail("NotIrreducible", "stage " + std::to_string(m + 1) + ": key " + fpoly_str(F, phi) + " divides f");
        NewtonPolygon np2 = newton_polygon(expansion_values(V, c));
        if (np2.segments.size() != 1)
            fail("NotIrreducible", "stage " + std::to_string(m + 1) + ": Newton polygon of the " + fpoly_str(F, phi) +
                                       "-expansion has " + std::to_string(np2.segments.size()) + " slopes");
        V = augment(V, phi, Val(-np2.segments[0].slope));
    }
    fail("Internal", "approximants did not terminate");
}

IndVal approximants(const BaseField& K, const KPoly& f) {
    FieldPtr B = ExtField::base(K);
    return approximants(B, to_fpoly(B, f));
}

// the leaf key value of a non-exact branch is arbitrary; its tau is not part of the branch field
int Branch::e() const { return ext_invariants(chain).e / (exact ? 1 : chain.st.back().tau); }

int Branch::fdeg() const { return ext_invariants(chain).f; }

namespace {

struct OM {
    FieldPtr F;
    std::shared_ptr<const FPoly> full;
    std::vector<Branch> out;

    void leaf(IndVal V, int degree, bool exact) {
        Branch b;
        b.chain = std::move(V);
        b.degree = degree;
        b.exact = exact;
        b.f = full;
        trace(1, "branch of degree " + std::to_string(degree) + (exact ? " (exact)" : ""));
        out.push_back(std::move(b));
    }

    // all roots of g in direction psi^k of V
    void direction(const IndVal& V, const ResPoly& psi, int k, FPoly g) {
        FRing FR(F);
        int m = V.last_finite();
        const Stage& s = V.stage(m);
        int D = poly::deg<FRing>(s.phi) * s.tau * poly::deg<ResRing>(psi);
        if (D == poly::deg<FRing>(g) && k == 1) {
            leaf(augment(V, g, Val::inf()), D, true);
            return;
        }
        FPoly phi = lift_key(V, psi);
        while (true) {
            auto c = poly::phi_expansion(FR, g, phi);
            if (!c[0].empty()) break;
            leaf(augment(V, phi, Val::inf()), D, true);
            g = poly::quo(FR, g, phi);
            if (--k == 0) return;
        }
        auto c = poly::phi_expansion(FR, g, phi);
        Val vphi = evaluate_at(V, m, phi);
        NewtonPolygon np = newton_polygon(expansion_values(V, c));
        int total = 0;
        for (auto& seg : np.segments) {
            Val mu(-seg.slope);
            if (!(mu > vphi)) continue;
            total += seg.length;
            IndVal W = augment(V, phi, mu);
            if (k == 1) {
                leaf(std::move(W), D, false);
                continue;
            }
            int mw = W.last_finite();
            ResRing R(W.stage(mw).k);
            ResPoly r = residual_polynomial(W, g);
            strip_y_power(R, r);
            for (auto& fc : factor(R, r)) direction(W, fc.g, fc.mult, g);
        }
        if (total != k) fail("Internal", "principal part has the wrong length");
    }
};

}  // namespace

std::vector<Branch> om_branches(const FieldPtr& F, const FPoly& f0) {
    FRing FR(F);
    if (poly::deg<FRing>(f0) < 1) fail("InvalidArgument", "factorization of a constant");
    FPoly f = poly::monic(FR, f0);
    check_squarefree(F, f);
    OM om;
    om.F = F;
    om.full = std::make_shared<const FPoly>(f);
    if (f[0].empty()) {
        om.leaf(first_stage(F, F->zero(), Val::inf()), 1, true);
        f = poly::quo(FR, f, poly::variable(FR));
        if (poly::deg<FRing>(f) == 0) return om.out;
    }
    if (poly::deg<FRing>(f) == 1) {
        om.leaf(first_stage(F, F->neg(f[0]), Val::inf()), 1, true);
        return om.out;
    }
    std::vector<Val> vals;
    for (auto& c : f) vals.push_back(F->val(c));
    NewtonPolygon np = newton_polygon(vals);
    for (auto& seg : np.segments) {
        IndVal V = first_stage(F, F->zero(), Val(-seg.slope));
        ResRing R(V.stage(1).k);
        ResPoly r = residual_polynomial(V, f);
        strip_y_power(R, r);
        for (auto& fc : factor(R, r)) om.direction(V, fc.g, fc.mult, f);
    }
    return om.out;
}

FPoly truncate_key(const IndVal& V, int m, const FPoly& phi, const Val& N) {
    const ExtField& F = *V.F;
    FRing FR(V.F);
    Val vz = evaluate_at(V, m, poly::variable(FR));
    FPoly out = phi;
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        Val need = vz.is_inf() ? N : N - vz * mpq_class(static_cast<long>(i));
        out[i] = F.truncate(out[i], need);
    }
    poly::trim(FR, out);
    return out;
}

void refine(Branch& b, const Val& target) {
    FRing FR(b.chain.F);
    const FPoly& f = *b.f;
    for (int step = 0; step < kMaxSteps && !b.exact; ++step) {
        int m = b.chain.last_finite();
        if (b.chain.stage(m).mu >= target) return;
        ResRing R(b.chain.stage(m).k);
        ResPoly r = residual_polynomial(b.chain, f);
        strip_y_power(R, r);
        if (poly::deg<ResRing>(r) != 1) fail("Internal", "branch residual is not linear");
        FPoly phi = lift_key(b.chain, r);
        auto c = poly::phi_expansion(FR, f, phi);
        if (c[0].empty()) {
            b.chain = augment(b.chain, phi, Val::inf());
            b.exact = true;
            return;
        }
        Val vphi = evaluate_at(b.chain, m, phi);
        NewtonPolygon np = newton_polygon(expansion_values(b.chain, c));
        bool found = false;
        for (auto& seg : np.segments) {
            Val mu(-seg.slope);
            if (!(mu > vphi)) continue;
            if (found || seg.length != 1) fail("Internal", "branch refinement lost its root");
            found = true;
            b.chain = augment(b.chain, truncate_key(b.chain, m, phi, mu + Val(1)), mu);
        }
        if (!found) fail("Internal", "branch refinement found no principal segment");
    }
    if (!b.exact && b.chain.stage(b.chain.last_finite()).mu < target) fail("Internal", "refinement did not converge");
}

FPoly branch_key(const Branch& b) { return b.chain.st.back().phi; }

FE branch_root(const Branch& b) {
    FPoly phi = branch_key(b);
    if (phi.size() != 2) fail("InvalidArgument", "branch is not linear");
    return b.chain.F->neg(phi[0]);
}

}  // namespace maclane
