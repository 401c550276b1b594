#include <chrono>
#include <map>

#include "doctest.h"
#include "maclane/elliptic.hpp"
#include "maclane/errors.hpp"
#include "test_util.hpp"

using namespace maclane;

namespace {

WModel M(const BaseField& K, long a1, long a2, long a3, long a4, long a6) {
    return make_model(ExtField::base(K), K.from_int(a1), K.from_int(a2), K.from_int(a3), K.from_int(a4),
                      K.from_int(a6));
}

FE I(const FieldPtr& F, long n) { return F->from_int(n); }

WModel rand_model(const BaseField& K, std::mt19937_64& rng) {
    FieldPtr F = ExtField::base(K);
    std::array<KElem, 5> a;
    for (auto& c : a) c = tu::rand_elem0(K, rng, 0, 4);
    return make_model(F, a[0], a[1], a[2], a[3], a[4]);
}

bool divides(long d, long n) { return n % d == 0; }

// g(u^2 x + r) / u^8
FPoly transformed_psi(const FieldPtr& F, const FPoly& g, const FE& u, const FE& r) {
    FRing R(F);
    FE u2 = F->mul(u, u);
    FPoly lin = {r, u2};
    FPoly out = poly::compose(R, g, lin);
    return poly::scale(R, out, F->inv(F->pow(u, 8)));
}

}  // namespace

TEST_CASE("invariants of small models") {
    auto K = BaseField::parse("qp:5");
    FieldPtr F = ExtField::base(K);
    WInvariants a = invariants(M(K, 0, 0, 0, 0, 1));
    CHECK(F->eq(a.b2, I(F, 0)));
    CHECK(F->eq(a.b6, I(F, 4)));
    CHECK(F->eq(a.disc, I(F, -432)));
    CHECK(F->is_zero(a.c4));
    // 1728 disc = c4^3 - c6^2 and 4 b8 = b2 b6 - b4^2
    FE lhs = F->mul(I(F, 1728), a.disc);
    FE rhs = F->sub(F->pow(a.c4, 3), F->mul(a.c6, a.c6));
    CHECK(F->eq(lhs, rhs));
    WInvariants b = invariants(M(K, 0, 0, 1, 0, 0));
    CHECK(F->eq(b.b6, I(F, 1)));
    CHECK(F->eq(b.disc, I(F, -27)));
    CHECK_THROWS_AS(invariants(M(K, 0, 0, 0, 0, 0)), Error);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        WModel W = rand_model(K, rng);
        WInvariants v;
        try {
            v = invariants(W);
        } catch (const Error&) {
            continue;
        }
        CHECK(F->eq(F->mul(I(F, 4), v.b8), F->sub(F->mul(v.b2, v.b6), F->mul(v.b4, v.b4))));
        CHECK(F->eq(F->mul(I(F, 1728), v.disc), F->sub(F->pow(v.c4, 3), F->mul(v.c6, v.c6))));
    }
}

TEST_CASE("reduction types over Q5") {
    auto K = BaseField::parse("qp:5");
    CHECK(reduction_type(M(K, 0, 1, 0, 0, 5)) == Reduction::Multiplicative);
    CHECK(reduction_type(M(K, 0, 0, 0, 0, 5)) == Reduction::Additive);
    CHECK(reduction_type(M(K, 0, 0, 0, 1, 0)) == Reduction::Good);
    FieldPtr F = ExtField::base(K);
    WModel bad = make_model(F, K.zero(), K.zero(), K.zero(), K.from_mpq(mpq_class(1, 5)), K.one());
    CHECK_THROWS_AS(reduction_type(bad), Error);

    CHECK(roots_reduction(F, I(F, 0), I(F, 1), I(F, 5)) == Reduction::Multiplicative);
    CHECK(roots_reduction(F, I(F, 0), I(F, 1), I(F, 2)) == Reduction::Good);
    CHECK(roots_reduction(F, I(F, 0), I(F, 5), I(F, 10)) == Reduction::Additive);
}

TEST_CASE("3-division polynomial") {
    auto K = BaseField::parse("qp:5");
    FieldPtr F = ExtField::base(K);
    FRing R(F);
    CHECK(poly::equal(R, psi3(M(K, 0, 0, 0, 0, 1)), FPoly{{}, I(F, 12), {}, {}, I(F, 3)}));
    CHECK(poly::equal(R, psi3(M(K, 0, 0, 1, 0, 0)), FPoly{{}, I(F, 3), {}, {}, I(F, 3)}));
    // reduced 3x(x^3 + 1): four distinct roots mod 5
    CHECK(psi3_reduction_type(M(K, 0, 0, 0, 0, 1)) == Reduction::Good);
    CHECK(psi3_reduction_type(M(K, 0, 1, 0, 0, 5)) == Reduction::Multiplicative);
    CHECK(psi3_reduction_type(M(K, 0, 0, 0, 0, 5)) == Reduction::Additive);
    CHECK_THROWS_AS(psi3_reduction_type(M(BaseField::parse("qp:3"), 0, 0, 0, 0, 1)), Error);

    WModel W = M(K, 1, 2, 3, 4, 5);
    Transform shear{F->one(), {}, I(F, 7), {}}, ytr{F->one(), {}, {}, I(F, -3)};
    CHECK(poly::equal(R, psi3(apply(W, shear)), psi3(W)));
    CHECK(poly::equal(R, psi3(apply(W, ytr)), psi3(W)));
}

TEST_CASE("3-division transformation law on random changes") {
    std::mt19937_64 rng(33);
    int checked = 0;
    for (const char* spec : {"qp:2", "qp:3", "qp:5", "fpt:2", "qt"}) {
        auto K = BaseField::parse(spec);
        FieldPtr F = ExtField::base(K);
        FRing R(F);
        for (int i = 0; i < 10; ++i) {
            WModel W = rand_model(K, rng);
            FE u = F->from_k(tu::rand_elem(K, rng, -2, 2));
            FE r = F->from_k(tu::rand_elem0(K, rng, -2, 3));
            FE s = F->from_k(tu::rand_elem0(K, rng, -2, 3));
            FE t = F->from_k(tu::rand_elem0(K, rng, -2, 3));
            FPoly got = psi3(apply(W, Transform{u, r, s, t}));
            CHECK(poly::equal(R, got, transformed_psi(F, psi3(W), u, r)));
            // the pieces separately
            CHECK(poly::equal(R, psi3(apply(W, Transform{F->one(), {}, s, t})), psi3(W)));
            CHECK(poly::equal(R, psi3(apply(W, Transform{u, {}, {}, {}})), transformed_psi(F, psi3(W), u, {})));
            CHECK(poly::equal(R, psi3(apply(W, Transform{F->one(), r, {}, {}})),
                              poly::translate(R, psi3(W), r)));
            // composition agrees with sequential application
            Transform T2{F->from_k(tu::rand_elem(K, rng, -1, 1)), s, r, t};
            WModel two = apply(apply(W, Transform{u, r, s, t}), T2);
            WModel one = apply(W, compose(F, Transform{u, r, s, t}, T2));
            for (int k = 0; k < 5; ++k) CHECK(F->eq(two.a[k], one.a[k]));
            ++checked;
        }
    }
    CHECK(checked == 50);
}

TEST_CASE("cross-criterion agreement") {
    for (const char* spec : {"qp:5", "qp:7"}) {
        auto K = BaseField::parse(spec);
        FieldPtr F = ExtField::base(K);
        std::mt19937_64 rng(91);
        int done = 0;
        for (int i = 0; i < 400 && done < 50; ++i) {
            // y^2 = (x - al)(x - be)(x - ga) with integral roots in K
            FE al = F->from_k(tu::rand_elem0(K, rng, 0, 2));
            FE be = F->from_k(tu::rand_elem0(K, rng, 0, 2));
            FE ga = F->from_k(tu::rand_elem0(K, rng, 0, 2));
            if (F->eq(al, be) || F->eq(be, ga) || F->eq(al, ga)) continue;
            FRing R(F);
            FPoly f = poly::mul(R, poly::mul(R, FPoly{F->neg(al), F->one()}, FPoly{F->neg(be), F->one()}),
                                FPoly{F->neg(ga), F->one()});
            WModel W{F, {FE{}, f[2], FE{}, f[1], f[0]}};
            Reduction a = reduction_type(W);
            CHECK(a == roots_reduction(F, al, be, ga));
            CHECK(a == psi3_reduction_type(W));
            ++done;
        }
        CHECK(done == 50);
        // random models: the discriminant criterion against the 3-division pattern
        int agree = 0;
        for (int i = 0; i < 200 && agree < 50; ++i) {
            WModel W = rand_model(K, rng);
            try {
                invariants(W);
            } catch (const Error&) {
                continue;
            }
            CHECK(reduction_type(W) == psi3_reduction_type(W));
            ++agree;
        }
        CHECK(agree == 50);
    }
}

TEST_CASE("distinguished torsion") {
    auto K = BaseField::parse("qp:5");
    FieldPtr F = ExtField::base(K);
    FRing R(F);
    FPoly f = poly::mul(R, poly::mul(R, FPoly{{}, F->one()}, FPoly{I(F, -1), F->one()}), FPoly{I(F, -5), F->one()});
    FE a = distinguished_two_torsion(F, f, Val(10));
    CHECK(F->val(F->sub(a, I(F, 1))) >= Val(10));
    FPoly g = {I(F, -5), {}, I(F, -1), F->one()};  // x^3 - x^2 - 5
    FE b = distinguished_two_torsion(F, g, Val(6));
    CHECK(F->val(F->sub(b, I(F, 1))) >= Val(1));
    CHECK(F->val(poly::eval(R, g, b)) >= Val(6));
    FPoly eq = poly::mul(R, poly::mul(R, FPoly{{}, F->one()}, FPoly{I(F, -1), F->one()}), FPoly{I(F, -2), F->one()});
    CHECK_THROWS_AS(distinguished_two_torsion(F, eq, Val(4)), Error);

    auto K3 = BaseField::parse("qp:3");
    FieldPtr F3 = ExtField::base(K3);
    WModel tate = make_model(F3, K3.one(), K3.zero(), K3.zero(), K3.zero(), K3.from_int(81));
    FE x0 = distinguished_three_torsion(tate, Val(8));
    CHECK(F3->val(poly::eval(FRing(F3), psi3(tate), x0)) >= Val(8));
    CHECK_THROWS_AS(distinguished_three_torsion(M(BaseField::parse("qp:5"), 0, 0, 0, 1, 0), Val(4)), Error);
}

TEST_CASE("semistable models: pinned cases") {
    auto K = BaseField::parse("qp:5");
    SemistableResult a = semistable_model(M(K, 0, 0, 0, 0, 5));
    CHECK(a.degree() == 6);
    CHECK(a.e() == 6);
    CHECK(a.reduction == Reduction::Good);
    SemistableResult b = semistable_model(M(K, 0, 1, 0, 0, 5));
    CHECK(b.degree() == 1);
    CHECK(b.reduction == Reduction::Multiplicative);
    SemistableResult c = semistable_model(M(K, 0, 0, 0, 1, 0));
    CHECK(c.degree() == 1);
    CHECK(c.reduction == Reduction::Good);
    CHECK_THROWS_AS(semistable_model(M(K, 0, 0, 0, 0, 0)), Error);
}

namespace {

void run_suite(const char* spec, std::function<bool(int)> degree_ok, int want, uint64_t seed) {
    auto K = BaseField::parse(spec);
    long p = K.residue_char();
    std::mt19937_64 rng(seed);
    int done = 0;
    std::map<int, int> degrees;
    for (int i = 0; i < 10 * want && done < want; ++i) {
        WModel W = rand_model(K, rng);
        WInvariants inv;
        try {
            inv = invariants(W);
        } catch (const Error&) {
            continue;
        }
        bool pm = W.F->val(inv.j) < Val(0);
        SemistableResult r;
        try {
            r = semistable_model(W);
        } catch (const Error& e) {
            FAIL_CHECK((std::string(spec) + " model " + std::to_string(i) + ": " + e.what()));
            ++done;
            continue;
        }
        ++done;
        ++degrees[r.degree()];
        CHECK(r.f() == 1);
        CHECK(degree_ok(r.degree()));
        for (auto& c : r.model.a) CHECK(r.L.G->val(c) >= Val(0));
        Reduction check = p == 2 ? psi3_reduction_type(r.model) : reduction_type(r.model);
        CHECK(check == r.reduction);
        CHECK(check != Reduction::Additive);
        CHECK(r.L.G->eq(invariants(r.model).j, r.L.emb.map(inv.j)));
        WModel direct = apply(map_model(r.L.emb, W), r.transform);
        for (int k = 0; k < 5; ++k) CHECK(r.L.G->eq(direct.a[k], r.model.a[k]));
        if (pm) {
            CHECK(r.degree() <= 2);
            CHECK(r.reduction == Reduction::Multiplicative);
        } else {
            CHECK(r.reduction == Reduction::Good);
        }
    }
    CHECK(done == want);
    std::string hist;
    for (auto& [d, n] : degrees) hist += " " + std::to_string(d) + ":" + std::to_string(n);
    MESSAGE((std::string(spec) + " degrees" + hist));
}

}  // namespace

TEST_CASE("semistable suite over Q5") {
    run_suite("qp:5", [](int d) { return d == 1 || d == 2 || d == 3 || d == 4 || d == 6; }, 50, 501);
}

TEST_CASE("semistable suite over Q3") {
    run_suite("qp:3", [](int d) { return divides(d, 12); }, 50, 301);
}

TEST_CASE("semistable suite over Q2") {
    run_suite("qp:2", [](int d) { return divides(d, 24); }, 50, 201);
}
