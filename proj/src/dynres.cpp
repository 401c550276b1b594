#include "maclane/dynres.hpp"

#include <algorithm>

#include "maclane/errors.hpp"

namespace maclane {

namespace {

FPoly padded(const FPoly& f, int d) {
    FPoly out = f;
    out.resize(static_cast<size_t>(d) + 1);
    return out;
}

FPoly trimmed(const FieldPtr& F, FPoly f) {
    poly::trim(FRing(F), f);
    return f;
}

// smallest denominator in [lo, hi]
mpq_class simplest_between(mpq_class lo, mpq_class hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) return lo;
    mpz_class fl = floor_q(lo);
    if (fl == lo) return lo;
    if (fl + 1 <= hi) return mpq_class(fl + 1);
    mpq_class a = lo - fl, b = hi - fl;  // 0 < a < b < 1
    mpq_class r = fl + 1 / simplest_between(1 / b, 1 / a);
    r.canonicalize();
    return r;
}

long p_power_part(long n, long p) {
    if (p <= 0) return 1;
    long q = 1;
    while (n % p == 0) {
        n /= p;
        q *= p;
    }
    return q;
}

FPoly squarefree_part(const FieldPtr& F, const FPoly& g) {
    FRing R(F);
    FPoly dg = poly::derivative(R, g);
    if (dg.empty()) return poly::monic(R, g);
    FPoly c = poly::gcd(R, g, dg);
    return poly::monic(R, poly::quo(R, g, c));
}

// fixed-point polynomial and the polynomial of finite preimages of f(infinity)
std::vector<std::pair<std::string, FPoly>> candidate_polys(const RatMap& f) {
    const FieldPtr& F = f.F;
    FRing R(F);
    FPoly P0 = trimmed(F, f.F0), P1 = trimmed(F, f.F1);
    FPoly fix = poly::sub(R, P0, poly::shift(R, P1, 1));
    FPoly pre;
    if (!F->is_zero(f.F1[f.d])) {
        FE a = F->div(f.F0[f.d], f.F1[f.d]);
        pre = poly::sub(R, P0, poly::scale(R, P1, a));
    } else {
        pre = P1;
    }
    std::vector<std::pair<std::string, FPoly>> out;
    for (auto& [name, g] : {std::pair<std::string, FPoly>{"fixed", fix}, {"preimage", pre}}) {
        FPoly h = trimmed(F, g);
        if (poly::deg<FRing>(h) >= 1) out.emplace_back(name, squarefree_part(F, h));
    }
    return out;
}

Center linear_center(const FieldPtr& F, const FE& alpha, const std::string& source) {
    Center c;
    c.A = Adjoined{F, identity_embedding(F), alpha};
    c.alpha = alpha;
    c.phi = trimmed(F, {F->neg(alpha), F->one()});
    c.source = source;
    return c;
}

Center center_of_branch(const FieldPtr& F, Branch& b, const std::string& source) {
    FRing R(F);
    FPoly key = poly::monic(R, branch_field_key(b));
    if (poly::deg<FRing>(key) == 1) return linear_center(F, F->neg(key[0]), source);
    if (F->K().residue_char() == 0) return linear_center(F, char0_center(F, key), source);
    WtrResult w = ramified_approx(F, key);
    Center c;
    c.A = w.L;
    c.alpha = w.L.root;
    c.phi = w.phi;
    c.source = source;
    return c;
}

// alpha with v(alpha - beta) > max(0, root distances) for a root beta of the branch
Adjoined close_root(const FieldPtr& F, Branch& b) {
    FRing R(F);
    if (b.degree == 1) {
        if (!b.exact) refine(b, Val(1));
        FPoly key = poly::monic(R, branch_key(b));
        return Adjoined{F, identity_embedding(F), F->neg(key[0])};
    }
    FPoly key0 = branch_field_key(b);
    MPhi M = m_phi(F, key0);
    Val s = vmax(M.deltas.back(), Val(0)) + Val(1);
    FPoly key = poly::monic(R, branch_field_key(b, M.apply(s)));
    return adjoin(F, key);
}

mpq_class qd(int n) { return mpq_class(static_cast<long>(n)); }

}  // namespace

RatMap normalize(const FieldPtr& F, const FPoly& F0, const FPoly& F1, int d) {
    if (d < 2) fail("DegreeMismatch", "rational maps need degree at least 2");
    FPoly a = trimmed(F, F0), b = trimmed(F, F1);
    if (poly::deg<FRing>(a) > d || poly::deg<FRing>(b) > d)
        fail("DegreeMismatch", "form of degree above " + std::to_string(d));
    RatMap f;
    f.F = F;
    f.d = d;
    f.F0 = padded(a, d);
    f.F1 = padded(b, d);
    Val m = Val::inf();
    for (const FPoly* g : {&f.F0, &f.F1})
        for (const FE& c : *g) m = vmin(m, F->val(c));
    if (m.is_inf()) fail("NotCoprime", "both forms vanish");
    mpq_class k = m.q() * F->e();
    if (k.get_den() != 1) fail("Internal", "coefficient valuation outside the value group");
    if (k != 0) {
        FE s = F->pi_pow(-k.get_num().get_si());
        for (FPoly* g : {&f.F0, &f.F1})
            for (FE& c : *g) c = F->mul(c, s);
    }
    f.scalar = m;
    if (F->is_zero(poly::sylvester_det(FRing(F), f.F0, f.F1, d, d))) fail("NotCoprime", "the forms share a root");
    return f;
}

RatMap map_ratmap(const Embedding& e, const RatMap& f) {
    RatMap g = f;
    g.F = e.to;
    for (FPoly* h : {&g.F0, &g.F1})
        for (FE& c : *h) c = e.map(c);
    return g;
}

bool same_map(const RatMap& f, const RatMap& g) {
    if (f.d != g.d) return false;
    const FieldPtr& F = f.F;
    FPoly a = f.F0, b = g.F0;
    a.insert(a.end(), f.F1.begin(), f.F1.end());
    b.insert(b.end(), g.F1.begin(), g.F1.end());
    size_t i = 0;
    while (i < a.size() && F->is_zero(a[i])) ++i;
    if (i == a.size() || F->is_zero(b[i])) return false;
    FE lam = F->div(b[i], a[i]);
    for (size_t k = 0; k < a.size(); ++k)
        if (!F->eq(F->mul(lam, a[k]), b[k])) return false;
    return true;
}

Val ordres(const RatMap& f) { return f.F->val(poly::sylvester_det(FRing(f.F), f.F0, f.F1, f.d, f.d)); }

Mobius mobius_mul(const FieldPtr& F, const Mobius& s, const Mobius& t) {
    auto dot = [&](const FE& x, const FE& y, const FE& z, const FE& w) { return F->add(F->mul(x, y), F->mul(z, w)); };
    return Mobius{dot(s.a, t.a, s.b, t.c), dot(s.a, t.b, s.b, t.d), dot(s.c, t.a, s.d, t.c), dot(s.c, t.b, s.d, t.d)};
}

RatMap conjugate(const RatMap& f, const Mobius& s) {
    const FieldPtr& F = f.F;
    FRing R(F);
    if (F->is_zero(F->sub(F->mul(s.a, s.d), F->mul(s.b, s.c)))) fail("InvalidArgument", "singular Mobius map");
    int d = f.d;
    // forms of degree k as polynomials in X of degree <= k
    FPoly l1 = trimmed(F, {s.b, s.a}), l2 = trimmed(F, {s.d, s.c});
    std::vector<FPoly> p1(d + 1), p2(d + 1);
    p1[0] = p2[0] = poly::constant(R, F->one());
    for (int i = 1; i <= d; ++i) {
        p1[i] = poly::mul(R, p1[i - 1], l1);
        p2[i] = poly::mul(R, p2[i - 1], l2);
    }
    auto compose_form = [&](const FPoly& G) {
        FPoly out;
        for (int i = 0; i <= d; ++i)
            if (!F->is_zero(G[i])) out = poly::add(R, out, poly::scale(R, poly::mul(R, p1[i], p2[d - i]), G[i]));
        return out;
    };
    FPoly G0 = compose_form(f.F0), G1 = compose_form(f.F1);
    FPoly H0 = poly::sub(R, poly::scale(R, G0, s.d), poly::scale(R, G1, s.b));
    FPoly H1 = poly::sub(R, poly::scale(R, G1, s.a), poly::scale(R, G0, s.c));
    return normalize(F, H0, H1, d);
}

Val OrdresLine::at(const mpq_class& t) const {
    Val m = Val::inf();
    for (auto& [c, e] : lines) m = vmin(m, c + Val(qd(e) * t));
    return base + Val(qd(d * d + d) * t) - m * qd(2 * d);
}

mpq_class OrdresLine::right_slope(const mpq_class& t) const {
    Val m = Val::inf();
    for (auto& [c, e] : lines) m = vmin(m, c + Val(qd(e) * t));
    int emin = 1 << 30;
    for (auto& [c, e] : lines)
        if (c + Val(qd(e) * t) == m) emin = std::min(emin, e);
    return qd(d * d + d) - qd(2 * d) * emin;
}

mpq_class OrdresLine::left_slope(const mpq_class& t) const {
    Val m = Val::inf();
    for (auto& [c, e] : lines) m = vmin(m, c + Val(qd(e) * t));
    int emax = -1;
    for (auto& [c, e] : lines)
        if (c + Val(qd(e) * t) == m) emax = std::max(emax, e);
    return qd(d * d + d) - qd(2 * d) * emax;
}

Val OrdresLine::min_value(mpq_class* lo, mpq_class* hi) const {
    // convex and piecewise affine: the minimum sits at a crossing of two lines
    std::vector<mpq_class> ts;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j) {
            if (lines[i].second == lines[j].second) continue;
            mpq_class t = (lines[i].first.q() - lines[j].first.q()) / qd(lines[j].second - lines[i].second);
            t.canonicalize();
            ts.push_back(t);
        }
    if (ts.empty()) fail("Internal", "ordres is affine along the path");
    Val best = Val::inf();
    for (auto& t : ts) best = vmin(best, at(t));
    bool first = true;
    for (auto& t : ts) {
        if (at(t) != best) continue;
        if (first || t < *lo) *lo = t;
        if (first || t > *hi) *hi = t;
        first = false;
    }
    return best;
}

OrdresLine ordres_line(const RatMap& f, const FE& alpha) {
    const FieldPtr& F = f.F;
    FRing R(F);
    OrdresLine L;
    L.base = ordres(f);
    L.d = f.d;
    FPoly P0 = poly::translate(R, trimmed(F, f.F0), alpha);
    FPoly P1 = poly::translate(R, trimmed(F, f.F1), alpha);
    FPoly S0 = poly::sub(R, P0, poly::scale(R, P1, alpha));
    for (size_t i = 0; i < S0.size(); ++i)
        if (!F->is_zero(S0[i])) L.lines.emplace_back(F->val(S0[i]), static_cast<int>(i));
    for (size_t i = 0; i < P1.size(); ++i)
        if (!F->is_zero(P1[i])) L.lines.emplace_back(F->val(P1[i]), static_cast<int>(i) + 1);
    return L;
}

Val ordres_at(const RatMap& f, const FE& alpha, const mpq_class& t) { return ordres_line(f, alpha).at(t); }

DegreeBounds degree_bounds(long p, int d) {
    if (d < 2) fail("DegreeMismatch", "degree bounds need d >= 2");
    DegreeBounds B;
    B.p = p;
    B.d = d;
    B.q_dp1 = p_power_part(d + 1, p);
    B.q_dm1 = p_power_part(d - 1, p);
    B.q_d = p_power_part(d, p);
    B.A = (d + 1) * std::max(B.q_dp1, B.q_dm1);
    if (p > 0 && d % p == 0)
        B.B = (d - 1) * B.q_d;
    else if (p > 0 && d % p == 1 % p)
        B.B = d * B.q_dm1;
    else
        B.B = d + 1;
    return B;
}

std::vector<Center> candidate_centers(const RatMap& f) {
    std::vector<Center> out;
    for (auto& [name, g] : candidate_polys(f)) {
        auto branches = om_branches(f.F, g);
        for (auto& b : branches) out.push_back(center_of_branch(f.F, b, name));
    }
    out.push_back(linear_center(f.F, f.F->zero(), "origin"));
    return out;
}

MrlResult mrl_search(const RatMap& f) {
    const FieldPtr& F = f.F;
    MrlResult res;
    res.bounds = degree_bounds(F->K().residue_char(), f.d);
    res.ordres_before = ordres(f);
    auto centers = candidate_centers(f);
    int best = -1;
    Val best_val;
    long best_deg = 0;
    mpq_class best_t;
    for (size_t i = 0; i < centers.size(); ++i) {
        Center& c = centers[i];
        RatMap fc = map_ratmap(c.A.emb, f);
        OrdresLine line = ordres_line(fc, c.alpha);
        mpq_class lo, hi;
        Val v = line.min_value(&lo, &hi);
        long eG = c.A.G->e();
        mpq_class t = simplest_between(lo * eG, hi * eG) / eG;
        t.canonicalize();
        mpq_class te = t * eG;
        te.canonicalize();
        long deg = static_cast<long>(c.degree()) * te.get_den().get_si();
        trace(1, "mrl centre " + std::to_string(i) + " (" + c.source + ", degree " + std::to_string(c.degree()) +
                     "): min " + v.str() + " on [" + qstr(lo) + ", " + qstr(hi) + "], t = " + qstr(t));
        bool better = best < 0 || v < best_val ||
                      (v == best_val && (deg < best_deg || (deg == best_deg && t.get_den() < best_t.get_den())));
        if (better) {
            best = static_cast<int>(i);
            best_val = v;
            best_deg = deg;
            best_t = t;
        }
    }
    Center& c = centers[best];
    WithValue W = ensure_value(c.A.G, best_t);
    res.center = c;
    res.t = best_t;
    res.L = Adjoined{W.ext.G, compose(c.A.emb, W.ext.emb), W.ext.root};
    res.sigma = Mobius{W.u, W.ext.emb.map(c.alpha), W.ext.G->zero(), W.ext.G->one()};
    res.model = conjugate(map_ratmap(res.L.emb, f), res.sigma);
    res.ordres_min = ordres(res.model);
    if (res.ordres_min != best_val) fail("Internal", "conjugate disagrees with the resultant profile");
    if (res.f() != 1) fail("Internal", "search produced a residue extension");
    res.within_A = res.degree() <= res.bounds.A;
    res.within_B = !(res.ordres_min == Val(0)) || res.degree() <= res.bounds.B;
    return res;
}

SemistableCheck semistable_check(const RatMap& f) {
    const FieldPtr& F = f.F;
    SemistableCheck out;
    OrdresLine L0 = ordres_line(f, F->zero());
    out.slopes.push_back({"infinity", -L0.left_slope(0)});
    for (auto& [name, g] : candidate_polys(f)) {
        auto branches = om_branches(F, g);
        for (auto& b : branches) {
            Adjoined A = close_root(F, b);
            // roots outside the unit disk lie in the direction of infinity
            if (A.G->val(A.root) < Val(0)) continue;
            OrdresLine line = ordres_line(map_ratmap(A.emb, f), A.root);
            out.slopes.push_back({name + " " + fpoly_str(F, branch_key(b)), line.right_slope(0)});
        }
    }
    for (auto& s : out.slopes)
        if (s.slope < 0) out.semistable = false;
    return out;
}

}  // namespace maclane
