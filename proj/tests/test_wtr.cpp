#include <set>

#include "doctest.h"
#include "maclane/errors.hpp"
#include "maclane/wtr.hpp"
#include "test_util.hpp"

using namespace maclane;

namespace {

FPoly FP(const FieldPtr& F, const std::string& s) { return to_fpoly(F, parse_kpoly(F->K(), s)); }

bool p_power(long n, long p) { return p_free_part(n, p) == 1; }

// mutual containment at radius r of the roots of a and b
bool same_disk(const FieldPtr& F, const FPoly& a, const FPoly& b, const Val& r) {
    Diskoid Da = make_diskoid(F, a, m_phi(F, a).apply(r));
    Diskoid Db = make_diskoid(F, b, m_phi(F, b).apply(r));
    return member(Da, b) && member(Db, a);
}

}  // namespace

TEST_CASE("ramified approximation on the worked quartics") {
    auto K = BaseField::parse("qp:2");
    FieldPtr B = ExtField::base(K);
    WtrResult a = ramified_approx(K, parse_kpoly(K, "z^4+2z^3+4z^2+12z+12"));
    CHECK(a.e() == 2);
    CHECK(a.f() == 1);
    CHECK(a.degree() == 2);
    CHECK(same_disk(B, a.phi, FP(B, "z^2+2"), Val(3, 2)));
    CHECK(member(min_disk_of_roots(B, FP(B, "z^4+2z^3+4z^2+12z+12")), a.phi));

    WtrResult b = ramified_approx(K, parse_kpoly(K, "z^4+20z^2+292"));
    CHECK(b.j == 2);
    CHECK(poly::equal(FRing(B), b.phi, FP(B, "z^2+2")));
    CHECK(b.disk.r == Val(3, 2));

    WtrResult c = ramified_approx(K, parse_kpoly(K, "z-6"));
    CHECK(c.degree() == 1);
    CHECK(poly::equal(FRing(B), c.phi, FP(B, "z-6")));

    CHECK_THROWS_AS(ramified_approx(BaseField::parse("qt"), parse_kpoly(BaseField::parse("qt"), "z^2-t")), Error);
}

TEST_CASE("ramified approximation invariants on random inputs") {
    std::mt19937_64 rng(404);
    for (const char* spec : {"qp:2", "qp:3", "fpt:2", "fpt:3"}) {
        auto K = BaseField::parse(spec);
        FieldPtr B = ExtField::base(K);
        long p = K.residue_char();
        int done = 0;
        for (int t = 0; t < 300 && done < 12; ++t) {
            KPoly f = tu::rand_monic(K, rng, 2 + static_cast<int>(rng() % 3), 1, 3);
            IndVal V;
            try {
                V = approximants(K, f);
            } catch (const Error&) {
                continue;
            }
            if (poly::derivative(KRing{K}, f).empty()) continue;
            ++done;
            WtrResult r = ramified_approx(K, f);
            CHECK(r.f() == 1);
            CHECK(p_power(r.e(), p));
            int n = poly::deg<KRing>(f);
            CHECK((n / p_free_part(n, p)) % r.degree() == 0);
            CHECK_FALSE(poly::derivative(FRing(B), r.phi).empty());
            CHECK(member(min_disk_of_roots(B, to_fpoly(B, f)), r.phi));
            CHECK(ext_invariants(V).e % r.e() == 0);
        }
        CHECK(done >= 6);
    }
}

TEST_CASE("inseparable keys are perturbed") {
    auto K = BaseField::parse("fpt:2");
    FieldPtr B = ExtField::base(K);
    // purely inseparable: the minimal disk is a point
    WtrResult r = ramified_approx(K, parse_kpoly(K, "z^2-t"));
    CHECK(r.e() == 2);
    CHECK_FALSE(poly::derivative(FRing(B), r.phi).empty());
    CHECK(member(r.disk, FP(B, "z^2-t")));
    // separable quartic whose ramified key is z^2 + t
    KPoly f = parse_kpoly(K, "z^4+t^2+t^5*z");
    approximants(K, f);
    WtrResult s = ramified_approx(K, f);
    CHECK_FALSE(poly::derivative(FRing(B), s.phi).empty());
    CHECK(member(min_disk_of_roots(B, to_fpoly(B, f)), s.phi));
    CHECK(s.f() == 1);
}

TEST_CASE("separable perturbation displacement") {
    auto K = BaseField::parse("fpt:2");
    FieldPtr B = ExtField::base(K);
    for (int q : {2, 4}) {
        FPoly f = FP(B, "z^" + std::to_string(q) + "-t");
        for (long vc : {2, 4, 8}) {
            FPoly g = separable_perturb(B, f, Val(vc));
            CHECK(B->val(B->sub(g[1], f[1])) == Val(vc));
            // (v(c) + v(alpha) - v(a_q)) / q with v(alpha) = 1/q, a_q = 1
            mpq_class expect = (mpq_class(vc) + mpq_class(1, q)) / q;
            expect.canonicalize();
            CHECK(perturbation_displacement(B, f, B->pi_pow(vc)) == Val(expect));
        }
    }
    CHECK(perturbation_displacement(B, FP(B, "z^2-t"), B->pi_pow(4)) == Val(9, 4));
    CHECK(perturbation_displacement(B, FP(B, "z^4-t"), B->pi_pow(8)) == Val(33, 16));
    FPoly sep = FP(B, "z^2+z+t");
    CHECK(poly::equal(FRing(B), separable_perturb(B, sep, Val(3)), sep));
}

TEST_CASE("residue characteristic zero center") {
    auto K = BaseField::parse("qt");
    FieldPtr B = ExtField::base(K);
    CHECK(B->is_zero(char0_center(B, FP(B, "z^2-t"))));
    CHECK(B->eq(char0_center(B, FP(B, "z-3")), B->from_int(3)));
    CHECK(B->eq(char0_center(B, FP(B, "z^2-4z+(4-t)")), B->from_int(2)));
    std::mt19937_64 rng(50);
    int certified = 0;
    for (int t = 0; t < 400 && certified < 50; ++t) {
        KPoly f = tu::rand_monic(K, rng, 1 + static_cast<int>(rng() % 4), 0, 3);
        if (poly::deg<KRing>(f) > 1) {
            try {
                approximants(K, f);
            } catch (const Error&) {
                continue;
            }
        }
        FPoly ff = to_fpoly(B, f);
        FE b = char0_center(B, ff);
        ++certified;
        if (poly::deg<KRing>(f) == 1) {
            CHECK(poly::eval(FRing(B), ff, b).empty());
            continue;
        }
        // v(root - b) >= min root distance, evaluated in K[z]/(f)
        FieldPtr L = ExtField::create(K, f);
        Val r = root_difference_valuations(B, ff).front();
        CHECK(L->val(L->sub(L->gen(), L->from_k(b.empty() ? K.zero() : b[0]))) >= r);
    }
    CHECK(certified == 50);
}

TEST_CASE("Ax refinement") {
    auto K = BaseField::parse("qp:2");
    FieldPtr B = ExtField::base(K);
    Diskoid unit = make_diskoid(B, FP(B, "z"), Val(0));
    WtrResult a = ax_refinement(B, FP(B, "(z^2+2)*(z^2+z+1)"), unit);
    CHECK(a.degree() <= 2);
    CHECK(member(unit, a.phi));
    CHECK(a.f() == 1);

    // odd degree at p = 2: a point of K
    WtrResult b = ax_refinement(B, FP(B, "(z-1)*(z^2+2)"), make_diskoid(B, FP(B, "z"), Val(0)));
    CHECK(b.degree() == 1);
    FPoly cubic = FP(B, "z^3-2");
    Diskoid D = min_disk_of_roots(B, cubic);
    WtrResult c = ax_refinement(B, cubic, D);
    CHECK(c.degree() == 1);
    ExtInvariants inv = ext_invariants(approximants(B, c.phi));
    CHECK(inv.e == 1);
    CHECK(inv.f == 1);
    CHECK(member(D, c.phi));

    // irreducible input: same as ramified approximation
    FPoly quart = FP(B, "z^4+20z^2+292");
    WtrResult d = ax_refinement(B, quart, min_disk_of_roots(B, quart));
    CHECK(poly::equal(FRing(B), d.phi, FP(B, "z^2+2")));

    CHECK_THROWS_AS(ax_refinement(B, FP(B, "z^2+2"), make_diskoid(B, FP(B, "z-1"), Val(1))), Error);
}

TEST_CASE("pairwise root distances") {
    auto K = BaseField::parse("qp:2");
    FieldPtr B = ExtField::base(K);
    auto d = pairwise_root_distances(B, FP(B, "(z-1)*(z-3)*(z^2+2)"));
    REQUIRE(d.size() == 3);
    for (auto& row : d) CHECK(row.size() == 3);
    // one representative root per branch
    std::multiset<Val> all;
    for (auto& row : d)
        for (auto& x : row) all.insert(x);
    CHECK(all.count(Val(1)) == 2);
    CHECK(all.count(Val(3, 2)) == 1);
    CHECK(all.count(Val(0)) == 6);
}

TEST_CASE("equispaced quartics") {
    auto K = BaseField::parse("qp:2");
    FieldPtr B = ExtField::base(K);
    CHECK_THROWS_AS(equispaced_quartic(B, FP(B, "z^4-2")), Error);

    // unramified quartic: a point of K at distance zero
    Equispaced u = equispaced_quartic(B, FP(B, "z^4+z+1"));
    CHECK(u.r == Val(0));
    CHECK(u.alpha.G->degree() == 1);
    CHECK_FALSE(u.wtr_root);

    // e = 2, f = 2 with a quadratic ramified key
    FPoly g = FP(B, "z^4+92/5*z^3+12*z^2+416/15*z-6652/15");
    Equispaced w = equispaced_quartic(B, g);
    CHECK_FALSE(w.wtr_root);
    CHECK(w.alpha.G->degree() == 2);
    CHECK(w.alpha.G->f() == 1);
    CHECK(w.r == Val(1));
    mpq_class scaled = w.r.q() * w.alpha.G->e();
    CHECK(scaled.get_den() == 1);
    for (auto& row : pairwise_root_distances(B, g))
        for (auto& x : row) CHECK(x == w.r);

    // two unramified quadratics over Q2(zeta_3)
    FieldPtr F = ExtField::create(K, parse_kpoly(K, "z^2+z+1"));
    FE om = F->gen();
    FE om2 = F->mul(om, om);
    FPoly q1 = {om, F->one(), F->one()}, q2 = {om2, F->one(), F->one()};
    Equispaced pr = equispaced_quartic(F, poly::mul(FRing(F), q1, q2));
    CHECK(pr.r == Val(0));
    CHECK(pr.alpha.G->degree() == F->degree());
    CHECK_FALSE(pr.wtr_root);

    // a weakly totally ramified root
    Equispaced e4 = equispaced_quartic(B, FP(B, "z^4+74/5*z^3-18"));
    CHECK(e4.wtr_root);
    CHECK(e4.alpha.G->e() == 4);
}

namespace {

// monic of degree e, constant term of value exactly 1, other lower terms of value >= 1
bool eisenstein(const FieldPtr& U, const FPoly& g, int e) {
    if (poly::deg<FRing>(g) != e || !U->eq(g.back(), U->one())) return false;
    if (U->val(g[0]) != Val(1)) return false;
    for (int i = 1; i < e; ++i)
        if (U->val(g[i]) < Val(1)) return false;
    return true;
}

}  // namespace

TEST_CASE("two-step normal form") {
    auto K = BaseField::parse("qp:2");
    auto L = ExtField::create(K, parse_kpoly(K, "z^2+2"));
    NormalForm a = normal_form(L);
    CHECK(poly::deg<KRing>(a.unramified) == 1);
    CHECK(eisenstein(a.U, a.eisenstein, 2));
    auto M = ExtField::create(K, parse_kpoly(K, "z^2+z+1"));
    NormalForm b = normal_form(M);
    CHECK(poly::equal(KRing{K}, b.unramified, parse_kpoly(K, "z^2+z+1")));
    CHECK(poly::deg<FRing>(b.eisenstein) == 1);
    // compositum: degree 4, e = 2, f = 2
    Adjoined C = adjoin(L, FP(L, "z^2+z+1"));
    REQUIRE(C.G->degree() == 4);
    CHECK(C.G->e() == 2);
    CHECK(C.G->f() == 2);
    NormalForm c = normal_form(C.G);
    CHECK(poly::deg<KRing>(c.unramified) == 2);
    CHECK(c.U->f() == 2);
    CHECK(eisenstein(c.U, c.eisenstein, 2));
    Adjoined back = adjoin(c.U, c.eisenstein);
    CHECK(back.G->degree() == 4);
    CHECK(back.G->e() == 2);
    CHECK(back.G->f() == 2);
    // a wild cubic over Q3 and a tame quartic over F2((t))
    for (auto [spec, poly, e] : {std::tuple<const char*, const char*, int>{"qp:3", "z^3+3z+3", 3},
                                 {"fpt:2", "z^4+t^3*z+t", 4}}) {
        auto B = BaseField::parse(spec);
        auto N = ExtField::create(B, parse_kpoly(B, poly));
        NormalForm n = normal_form(N);
        CHECK(eisenstein(n.U, n.eisenstein, e));
    }
}
