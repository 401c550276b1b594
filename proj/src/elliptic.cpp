#include "maclane/elliptic.hpp"

#include <algorithm>

#include "maclane/errors.hpp"

namespace maclane {

std::string reduction_name(Reduction r) {
    switch (r) {
        case Reduction::Good: return "Good";
        case Reduction::Multiplicative: return "Multiplicative";
        case Reduction::Additive: return "Additive";
    }
    return "?";
}

WModel make_model(const FieldPtr& F, const KElem& a1, const KElem& a2, const KElem& a3, const KElem& a4,
                  const KElem& a6) {
    return WModel{F, {F->from_k(a1), F->from_k(a2), F->from_k(a3), F->from_k(a4), F->from_k(a6)}};
}

namespace {

// small arithmetic shorthands over one field
struct Ar {
    const ExtField& F;
    FE add(const FE& a, const FE& b) const { return F.add(a, b); }
    FE sub(const FE& a, const FE& b) const { return F.sub(a, b); }
    FE mul(const FE& a, const FE& b) const { return F.mul(a, b); }
    FE mul(long k, const FE& a) const { return F.mul(F.from_int(k), a); }
    FE sq(const FE& a) const { return F.mul(a, a); }
    FE div(const FE& a, const FE& b) const { return F.div(a, b); }
};

bool integral(const WModel& W) {
    for (auto& c : W.a)
        if (W.F->val(c) < Val(0)) return false;
    return true;
}

void require_integral(const WModel& W) {
    if (!integral(W)) fail("NonIntegralModel", "some a_i has negative valuation");
}

ResElem res(const ExtField& F, const FE& a) {
    return F.val(a) > Val(0) ? ResElem{} : F.residue(a);
}

}  // namespace

namespace {

WInvariants invariants_impl(const WModel& W, bool with_j) {
    Ar A{*W.F};
    const FE &a1 = W.a1(), &a2 = W.a2(), &a3 = W.a3(), &a4 = W.a4(), &a6 = W.a6();
    WInvariants I;
    I.b2 = A.add(A.sq(a1), A.mul(4, a2));
    I.b4 = A.add(A.mul(2, a4), A.mul(a1, a3));
    I.b6 = A.add(A.sq(a3), A.mul(4, a6));
    I.b8 = A.sub(A.add(A.add(A.mul(A.sq(a1), a6), A.mul(4, A.mul(a2, a6))), A.mul(a2, A.sq(a3))),
                 A.add(A.mul(a1, A.mul(a3, a4)), A.sq(a4)));
    FE b2b4b6 = A.mul(I.b2, A.mul(I.b4, I.b6));
    I.disc = A.sub(A.mul(9, b2b4b6), A.add(A.add(A.mul(A.sq(I.b2), I.b8), A.mul(8, A.mul(A.sq(I.b4), I.b4))),
                                           A.mul(27, A.sq(I.b6))));
    I.c4 = A.sub(A.sq(I.b2), A.mul(24, I.b4));
    I.c6 = A.sub(A.mul(36, A.mul(I.b2, I.b4)), A.add(A.mul(A.sq(I.b2), I.b2), A.mul(216, I.b6)));
    if (W.F->is_zero(I.disc)) fail("SingularModel", "discriminant vanishes");
    if (with_j) I.j = A.div(A.mul(A.sq(I.c4), I.c4), I.disc);
    return I;
}

Reduction classify(const WModel& W, const WInvariants& I) {
    require_integral(W);
    if (W.F->val(I.disc) == Val(0)) return Reduction::Good;
    if (W.F->val(I.c4) == Val(0)) return Reduction::Multiplicative;
    return Reduction::Additive;
}

}  // namespace

WInvariants invariants(const WModel& W) { return invariants_impl(W, true); }

Transform identity_transform(const FieldPtr& F) { return Transform{F->one(), {}, {}, {}}; }

WModel apply(const WModel& W, const Transform& T) {
    const ExtField& F = *W.F;
    Ar A{F};
    if (F.is_zero(T.u)) fail("InvalidArgument", "coordinate change with u = 0");
    const FE &a1 = W.a1(), &a2 = W.a2(), &a3 = W.a3(), &a4 = W.a4(), &a6 = W.a6();
    const FE &r = T.r, &s = T.s, &t = T.t;
    FE ui = F.inv(T.u);
    FE u2 = A.sq(ui), u3 = A.mul(u2, ui), u4 = A.sq(u2), u6 = A.sq(u3);
    WModel out{W.F, {}};
    out.a[0] = A.mul(A.add(a1, A.mul(2, s)), ui);
    out.a[1] = A.mul(A.sub(A.add(A.sub(a2, A.mul(s, a1)), A.mul(3, r)), A.sq(s)), u2);
    out.a[2] = A.mul(A.add(A.add(a3, A.mul(r, a1)), A.mul(2, t)), u3);
    FE n4 = A.sub(a4, A.mul(s, a3));
    n4 = A.add(n4, A.mul(2, A.mul(r, a2)));
    n4 = A.sub(n4, A.mul(A.add(t, A.mul(r, s)), a1));
    n4 = A.add(n4, A.mul(3, A.sq(r)));
    n4 = A.sub(n4, A.mul(2, A.mul(s, t)));
    out.a[3] = A.mul(n4, u4);
    FE n6 = A.add(a6, A.mul(r, a4));
    n6 = A.add(n6, A.mul(A.sq(r), a2));
    n6 = A.add(n6, A.mul(A.sq(r), r));
    n6 = A.sub(n6, A.mul(t, a3));
    n6 = A.sub(n6, A.sq(t));
    n6 = A.sub(n6, A.mul(r, A.mul(t, a1)));
    out.a[4] = A.mul(n6, u6);
    return out;
}

Transform compose(const FieldPtr& F, const Transform& a, const Transform& b) {
    Ar A{*F};
    FE ua2 = A.sq(a.u);
    Transform c;
    c.u = A.mul(a.u, b.u);
    c.r = A.add(a.r, A.mul(ua2, b.r));
    c.s = A.add(a.s, A.mul(a.u, b.s));
    c.t = A.add(A.add(a.t, A.mul(ua2, A.mul(a.s, b.r))), A.mul(A.mul(ua2, a.u), b.t));
    return c;
}

WModel map_model(const Embedding& e, const WModel& W) {
    WModel out{e.to, {}};
    for (int i = 0; i < 5; ++i) out.a[i] = e.map(W.a[i]);
    return out;
}

Transform map_transform(const Embedding& e, const Transform& T) {
    return Transform{e.map(T.u), e.map(T.r), e.map(T.s), e.map(T.t)};
}

Reduction reduction_type(const WModel& W) {
    require_integral(W);
    return classify(W, invariants_impl(W, false));
}

Reduction roots_reduction(const FieldPtr& F, const FE& al, const FE& be, const FE& ga) {
    if (F->K().residue_char() == 2) fail("ResidueCharTwo", "roots criterion needs residue characteristic != 2");
    for (const FE* x : {&al, &be, &ga})
        if (F->val(*x) < Val(0)) fail("NonIntegralModel", "root with negative valuation");
    ResElem a = res(*F, al), b = res(*F, be), c = res(*F, ga);
    int eq = (a == b) + (b == c) + (a == c);
    if (eq == 0) return Reduction::Good;
    if (eq == 3) return Reduction::Additive;
    return Reduction::Multiplicative;
}

FPoly psi3(const WModel& W) {
    Ar A{*W.F};
    // b-values without the discriminant check
    const FE &a1 = W.a1(), &a2 = W.a2(), &a3 = W.a3(), &a4 = W.a4(), &a6 = W.a6();
    FE b2 = A.add(A.sq(a1), A.mul(4, a2));
    FE b4 = A.add(A.mul(2, a4), A.mul(a1, a3));
    FE b6 = A.add(A.sq(a3), A.mul(4, a6));
    FE b8 = A.sub(A.add(A.add(A.mul(A.sq(a1), a6), A.mul(4, A.mul(a2, a6))), A.mul(a2, A.sq(a3))),
                  A.add(A.mul(a1, A.mul(a3, a4)), A.sq(a4)));
    FPoly out = {b8, A.mul(3, b6), A.mul(3, b4), b2, W.F->from_int(3)};
    poly::trim(FRing(W.F), out);
    return out;
}

Reduction psi3_reduction_type(const WModel& W) {
    if (W.F->K().residue_char() == 3) fail("ResidueCharThree", "3-division criterion needs residue characteristic != 3");
    require_integral(W);
    const ExtField& F = *W.F;
    ResRing R(F.residue_field());
    ResPoly r;
    for (auto& c : psi3(W)) r.push_back(res(F, c));
    poly::trim(R, r);
    auto fs = factor(R, r);
    std::vector<int> lin_mults;
    bool all_simple = true;
    for (auto& f : fs) {
        if (f.mult > 1) all_simple = false;
        if (poly::deg<ResRing>(f.g) == 1) lin_mults.push_back(f.mult);
    }
    if (all_simple) return Reduction::Good;
    std::sort(lin_mults.begin(), lin_mults.end());
    if (fs.size() == 2 && lin_mults == std::vector<int>{1, 3}) return Reduction::Multiplicative;
    if (fs.size() == 1 && lin_mults == std::vector<int>{4}) return Reduction::Additive;
    std::string pat;
    for (auto& f : fs) pat += " " + poly_str(R, f.g) + "^" + std::to_string(f.mult);
    fail("PatternViolation", "reduced 3-division polynomial factors as" + pat);
}

namespace {

struct Isolated {
    std::vector<Branch> branches;
    size_t index = 0;
    Val m;
};

// linear branch whose root is at distance m from all other roots while those
// are strictly closer to each other
Isolated isolated_root(const FieldPtr& F, const FPoly& f) {
    auto rows = pairwise_root_distances(F, f);
    Isolated out;
    out.branches = om_branches(F, f);
    for (size_t b = 0; b < rows.size(); ++b) {
        if (out.branches[b].degree != 1 || rows[b].empty()) continue;
        Val m = rows[b].front();
        bool ok = std::all_of(rows[b].begin(), rows[b].end(), [&](const Val& x) { return x == m; });
        for (size_t c = 0; c < rows.size() && ok; ++c) {
            if (c == b) continue;
            int close = 0;
            for (auto& x : rows[c]) {
                if (x < m) ok = false;
                if (x == m) ++close;
            }
            if (close != 1) ok = false;
        }
        if (ok) {
            out.index = b;
            out.m = m;
            return out;
        }
    }
    fail("NotPotentialMultiplicative", "no root is isolated from the others");
}

FE refined_root(Branch& b, const Val& prec) {
    if (!b.exact) refine(b, prec);
    return branch_root(b);
}

}  // namespace

FE distinguished_two_torsion(const FieldPtr& F, const FPoly& f, const Val& prec) {
    if (poly::deg<FRing>(f) != 3) fail("InvalidArgument", "expected a cubic");
    Isolated iso = isolated_root(F, poly::monic(FRing(F), f));
    return refined_root(iso.branches[iso.index], prec);
}

FE distinguished_three_torsion(const WModel& W, const Val& prec) {
    Isolated iso = isolated_root(W.F, poly::monic(FRing(W.F), psi3(W)));
    return refined_root(iso.branches[iso.index], prec);
}

namespace {

// model, transform from the input model and the field tower built so far
struct State {
    FieldPtr G;
    Embedding emb;  // input field -> G
    WModel W;
    Transform T;

    explicit State(const WModel& W0) : G(W0.F), emb(identity_embedding(W0.F)), W(W0), T(identity_transform(W0.F)) {}

    void extend(const Adjoined& A) {
        emb = compose(emb, A.emb);
        G = A.G;
        W = map_model(A.emb, W);
        T = map_transform(A.emb, T);
    }
    void step(const Transform& S) {
        W = apply(W, S);
        T = compose(G, T, S);
    }
    Val v(const FE& a) const { return G->val(a); }
    Ar ar() const { return Ar{*G}; }
};

Transform shift(const FieldPtr& F, const FE& r, const FE& s, const FE& t) { return Transform{F->one(), r, s, t}; }
Transform scale(const FE& u) { return Transform{u, {}, {}, {}}; }

// a point of the extension field inside the minimal disk of the roots of the monic quadratic P
struct DiskPoint {
    Adjoined ext;
    FE point;
};

DiskPoint point_in_min_disk(const FieldPtr& F, const FPoly& P) {
    auto br = om_branches(F, P);
    if (br.size() == 1) {
        WtrResult w = ramified_approx(F, P);
        return DiskPoint{w.L, w.L.root};
    }
    FE disc = F->sub(F->mul(P[1], P[1]), F->mul(F->from_int(4), F->mul(P[2], P[0])));
    Val target = F->val(disc) / mpq_class(2) + Val(1);
    FE pt = refined_root(br[0], target);
    return DiskPoint{Adjoined{F, identity_embedding(F), F->gen()}, pt};
}

[[noreturn]] void unverified(const std::string& what) { fail("VerificationFailed", what); }

// ---------------------------------------------------------------- p >= 5 and residue characteristic 0

void short_form(State& S) {
    Ar A = S.ar();
    FE half = S.G->inv(S.G->from_int(2));
    S.step(shift(S.G, {}, S.G->neg(A.mul(half, S.W.a1())), S.G->neg(A.mul(half, S.W.a3()))));
    S.step(shift(S.G, S.G->neg(A.div(S.W.a2(), S.G->from_int(3))), {}, {}));
    Val vA = S.v(S.W.a4()), vB = S.v(S.W.a6());
    Val n = vmin(vA * mpq_class(3), vB * mpq_class(2));
    WithValue wv = ensure_value(S.G, n.q() / 12);
    S.extend(wv.ext);
    S.step(scale(wv.u));
}

// ---------------------------------------------------------------- residue characteristic 3

// y^2 = f(x) with f monic cubic; translate by a root-like point c and rescale by r/2
void cubic_case(State& S, const Val& prec, bool pot_mult) {
    Ar A = S.ar();
    FE half = S.G->inv(S.G->from_int(2));
    S.step(shift(S.G, {}, S.G->neg(A.mul(half, S.W.a1())), S.G->neg(A.mul(half, S.W.a3()))));
    FPoly f = {S.W.a6(), S.W.a4(), S.W.a2(), S.G->one()};
    FE c;
    Val r;
    if (pot_mult) {
        Isolated iso = isolated_root(S.G, f);
        r = iso.m;
        c = refined_root(iso.branches[iso.index], iso.m + prec);
    } else {
        auto br = om_branches(S.G, f);
        auto lin = std::find_if(br.begin(), br.end(), [](const Branch& b) { return b.degree == 1; });
        if (lin != br.end()) {
            r = branch_root_distances(S.G, f, *lin).front();
            c = refined_root(*lin, r + prec);
        } else if (br[0].e() == 3) {
            r = root_difference_valuations(S.G, f).front();
            Adjoined Ad = adjoin(S.G, f);
            S.extend(Ad);
            c = Ad.root;
        } else {
            // unramified cubic: a point of the minimal disk, all roots at distance r from it
            WtrResult w = ramified_approx(S.G, f);
            if (w.degree() != 1) fail("Internal", "unramified cubic without a rational center");
            c = S.G->neg(w.phi[0]);
            r = S.v(poly::eval(FRing(S.G), f, c)) / mpq_class(3);
        }
    }
    WithValue wv = ensure_value(S.G, r.q() / 2);
    c = wv.ext.emb.map(c);
    S.extend(wv.ext);
    S.step(Transform{wv.u, c, {}, {}});
}

// ---------------------------------------------------------------- residue characteristic 2

// flex normalization at a 3-torsion point (x0, y0): multiplicative over G or
// good after adjoining an element of value v(a3)/3, recorded in cube
Reduction flex_case(State& S, const FE& x0, const FE& y0, mpq_class* cube = nullptr) {
    S.step(shift(S.G, x0, {}, y0));
    if (S.G->is_zero(S.W.a3())) fail("Internal", "3-torsion point with a3 = 0");
    S.step(shift(S.G, {}, S.G->div(S.W.a4(), S.W.a3()), {}));
    FE a = S.W.a1(), b = S.W.a3();
    if (S.v(a) * mpq_class(3) <= S.v(b)) {
        S.step(scale(a));
        return Reduction::Multiplicative;
    }
    mpq_class t = S.v(b).q() / 3;
    if (cube) *cube = t;
    WithValue wv = ensure_value(S.G, t);
    S.extend(wv.ext);
    S.step(scale(wv.u));
    return Reduction::Good;
}

// y-coordinates of the points above x0
FPoly y_poly(const State& S, const FE& x0) {
    Ar A = S.ar();
    const WModel& W = S.W;
    FE lin = A.add(A.mul(W.a1(), x0), W.a3());
    FE rhs = A.add(A.mul(A.add(A.mul(A.add(x0, W.a2()), x0), W.a4()), x0), W.a6());
    return FPoly{S.G->neg(rhs), lin, S.G->one()};
}

// F-component of z in G = F(beta) with O_G = O_F[theta], theta = (beta - c0)/Pi^k
struct Descent {
    Adjoined A;
    FE c0;
    FE part(const FE& z) const {
        auto c = coordinates(A, z);
        const ExtField& F = *A.emb.from;
        FE out = c.empty() ? F.zero() : c[0];
        if (c.size() > 1) out = F.add(out, F.mul(c[1], c0));
        return out;
    }
};

struct SubRun {
    FPoly key;
    Adjoined A;
    State sub;
    Reduction red;
    mpq_class cube = 0;
};

// flex normalization over G(y0), y0 approximated by a root of a shortened key
SubRun flex_over_y(const State& S, const FE& x, const Val& prec) {
    auto br = om_branches(S.G, y_poly(S, x));
    if (br.size() != 1) fail("Internal", "y-polynomial split after an extension");
    FPoly key = branch_field_key(br[0], prec);
    Adjoined Ad = adjoin(S.G, key);
    SubRun out{key, Ad, S, Reduction::Good};
    out.sub.extend(Ad);
    out.sub.T = identity_transform(out.sub.G);
    out.red = flex_case(out.sub, Ad.emb.map(x), Ad.root, &out.cube);
    return out;
}

// x the x-coordinate of a 3-torsion point
Reduction torsion_point_case(State& S, FE x, const Val& prec) {
    auto br = om_branches(S.G, y_poly(S, x));
    auto lin = std::find_if(br.begin(), br.end(), [](const Branch& b) { return b.degree == 1; });
    if (lin != br.end()) return flex_case(S, x, refined_root(*lin, prec));
    if (br[0].fdeg() == 1) {
        Adjoined Ad = adjoin(S.G, branch_field_key(br[0], prec));
        x = Ad.emb.map(x);
        S.extend(Ad);
        return flex_case(S, x, Ad.root);
    }
    // y0 generates an unramified quadratic: normalize over G(y0) and project
    // the coordinate change back to G
    SubRun run = flex_over_y(S, x, prec);
    if (run.sub.G->degree() != run.A.G->degree()) {
        WithValue wv = ensure_value(S.G, run.cube);
        x = wv.ext.emb.map(x);
        S.extend(wv.ext);
        run = flex_over_y(S, x, prec);
        if (run.sub.G->degree() != run.A.G->degree()) fail("Internal", "cube root adjunction did not descend");
    }
    IndVal V = approximants(S.G, run.key);
    const FPoly& key = V.stage(ramified_index(V)).phi;
    if (poly::deg<FRing>(key) != 1) fail("Internal", "unramified quadratic without a linear key");
    Descent D{run.A, S.G->neg(key[0])};
    const Transform& T = run.sub.T;
    mpq_class k = run.sub.G->val(T.u).q() * S.G->e();
    k.canonicalize();
    if (k.get_den() != 1) fail("Internal", "scaling value outside the value group");
    S.step(Transform{S.G->pi_pow(k.get_num().get_si()), D.part(T.r), D.part(T.s), D.part(T.t)});
    return run.red;
}

// potential good reduction, equispaced 3-division roots: recenter at a point
// of their minimal disk, then remove the non-integral part with a shear
Reduction equispaced_case(State& S) {
    Equispaced eq = equispaced_quartic(S.G, poly::monic(FRing(S.G), psi3(S.W)));
    FE c = eq.alpha.root;
    S.extend(eq.alpha);
    WithValue wv = ensure_value(S.G, eq.r.q() / 2);
    c = wv.ext.emb.map(c);
    S.extend(wv.ext);
    S.step(Transform{wv.u, c, {}, {}});
    Ar A = S.ar();
    auto place = [&](const FPoly& P) {
        DiskPoint dp = point_in_min_disk(S.G, P);
        S.extend(dp.ext);
        return dp.point;
    };
    FE s, t;
    if (S.G->K().kind() == BaseKind::QP) {
        FE half = S.G->inv(S.G->from_int(2));
        S.step(shift(S.G, {}, S.G->neg(A.mul(half, S.W.a1())), S.G->neg(A.mul(half, S.W.a3()))));
        if (S.v(A.mul(4, S.W.a2())) == Val(0)) {
            s = place(FPoly{S.G->neg(S.W.a2()), {}, S.G->one()});
            t = S.G->div(S.W.a4(), S.G->mul(S.G->from_int(2), s));
        } else {
            t = place(FPoly{S.G->neg(S.W.a6()), {}, S.G->one()});
            s = S.G->div(S.W.a4(), S.G->mul(S.G->from_int(2), t));
        }
    } else if (S.v(S.W.a1()) == Val(0)) {
        s = place(FPoly{S.W.a2(), S.W.a1(), S.G->one()});
        t = S.G->div(S.G->add(S.W.a4(), S.G->mul(s, S.W.a3())), S.W.a1());
    } else {
        t = place(FPoly{S.W.a6(), S.W.a3(), S.G->one()});
        s = S.G->div(S.G->add(S.W.a4(), S.G->mul(t, S.W.a1())), S.W.a3());
    }
    S.step(shift(S.G, {}, s, t));
    return Reduction::Good;
}

void char_two(State& S, const Val& prec, bool pot_mult) {
    if (pot_mult) {
        Isolated iso = isolated_root(S.G, poly::monic(FRing(S.G), psi3(S.W)));
        torsion_point_case(S, refined_root(iso.branches[iso.index], iso.m + prec), prec);
        return;
    }
    // at most two rounds: a weakly totally ramified root field gives a rational root
    for (int round = 0; round < 3; ++round) {
        FPoly psi = poly::monic(FRing(S.G), psi3(S.W));
        auto br = om_branches(S.G, psi);
        auto lin = std::find_if(br.begin(), br.end(), [](const Branch& b) { return b.degree == 1; });
        if (lin != br.end()) {
            Val top = branch_root_distances(S.G, psi, *lin).back();
            torsion_point_case(S, refined_root(*lin, top + prec), prec);
            return;
        }
        auto wtr = std::find_if(br.begin(), br.end(), [](const Branch& b) { return b.fdeg() == 1; });
        if (wtr == br.end()) {
            equispaced_case(S);
            return;
        }
        S.extend(adjoin(S.G, branch_field_key(*wtr)));
    }
    fail("Internal", "3-division root field did not produce a rational root");
}

SemistableResult verified(const WModel& W0, const State& S, bool pot_mult) {
    SemistableResult out;
    out.L = Adjoined{S.G, S.emb, S.G->gen()};
    out.model = S.W;
    out.transform = S.T;
    if (!integral(S.W)) unverified("output model is not integral");
    long p = W0.F->K().residue_char();
    WInvariants I = invariants_impl(S.W, false);
    Reduction by_disc = classify(S.W, I);
    out.reduction = p == 2 ? psi3_reduction_type(S.W) : by_disc;
    if (out.reduction == Reduction::Additive) unverified("output model has additive reduction");
    if (by_disc != out.reduction) unverified("reduction criteria disagree");
    // j(out) = j(in) as c4^3 = j(in) disc, avoiding a division in the large field
    FE c4c = S.G->mul(S.G->mul(I.c4, I.c4), I.c4);
    if (!S.G->eq(c4c, S.G->mul(S.emb.map(invariants(W0).j), I.disc))) fail("Internal", "j-invariant changed");
    if (out.f() != 1) fail("Internal", "residue extension is not trivial");
    if (pot_mult && (out.reduction != Reduction::Multiplicative || out.degree() > 2))
        unverified("potential multiplicative input without a multiplicative model of degree <= 2");
    if (!pot_mult && out.reduction != Reduction::Good) unverified("potential good input without good reduction");
    return out;
}

}  // namespace

SemistableResult semistable_model(const WModel& W) {
    WInvariants I = invariants(W);
    bool pot_mult = W.F->val(I.j) < Val(0);
    long p = W.F->K().residue_char();
    if (p != 2 && p != 3) {
        State S(W);
        short_form(S);
        return verified(W, S, pot_mult);
    }
    // root proxies: raise the precision until the model verifies
    std::string last;
    for (long prec = 4; prec <= 64; prec *= 2) {
        State S(W);
        try {
            if (p == 3)
                cubic_case(S, Val(prec), pot_mult);
            else
                char_two(S, Val(prec), pot_mult);
            return verified(W, S, pot_mult);
        } catch (const Error& e) {
            if (e.code() != "VerificationFailed" && e.code() != "NonIntegralModel") throw;
            last = e.what();
            trace(1, "semistable_model: precision " + std::to_string(prec) + ": " + last);
        }
    }
    fail("NoCertifiedCandidate", "semistable model did not verify: " + last);
}

}  // namespace maclane
