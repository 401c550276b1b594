#include "doctest.h"
#include "test_util.hpp"

using namespace maclane;

namespace {

KPoly P(const BaseField& K, const std::string& s) { return parse_kpoly(K, s); }

ResPoly rp(const ResRing& R, std::vector<long> c) {
    ResPoly g;
    for (long x : c) g.push_back(R.from_int(x));
    poly::trim(R, g);
    return g;
}

}  // namespace

TEST_CASE("valuation examples") {
    auto Q2 = BaseField::parse("qp:2");
    CHECK(Q2.val(Q2.from_int(12)) == Val(2));
    CHECK(Q2.val(Q2.from_mpq(mpq_class(3, 4))) == Val(-2));
    CHECK(Q2.val(Q2.zero()).is_inf());
    auto F2 = BaseField::parse("fpt:2");
    KElem t = F2.t();
    CHECK(F2.val(t * t + t * t * t) == Val(2));
}

TEST_CASE("reduction and lift") {
    auto Q2 = BaseField::parse("qp:2");
    CHECK(Q2.reduce(Q2.from_int(7)).a == FpPoly{1});
    CHECK(Q2.reduce(Q2.from_mpq(mpq_class(3, 5))).a == FpPoly{1});
    CHECK_THROWS_AS(Q2.reduce(Q2.from_mpq(mpq_class(1, 2))), Error);
    auto F3 = BaseField::parse("fpt:3");
    KElem t = F3.t();
    CHECK(F3.reduce((F3.one() + t) / (F3.one() - t)).a == FpPoly{1});
    ResElem one;
    one.a = {1};
    CHECK(Q2.reduce(Q2.lift(one)) == one);
    CHECK(BaseField::parse("qp:5").uniformizer() == BaseField::parse("qp:5").from_int(5));
    CHECK(F3.val(F3.uniformizer()) == Val(1));
    auto QT = BaseField::parse("qt");
    CHECK(QT.val(QT.uniformizer()) == Val(1));
    CHECK(QT.reduce(QT.from_mpq(mpq_class(2, 3)) + QT.t()).q == mpq_class(2, 3));
}

TEST_CASE("valuation axioms on random pairs") {
    for (std::string spec : {"qp:2", "qp:3", "qp:5", "fpt:2", "fpt:3", "qt"}) {
        auto K = BaseField::parse(spec);
        std::mt19937_64 rng(11);
        int n = spec == "qt" ? 2000 : 10000;
        for (int i = 0; i < n; ++i) {
            KElem x = tu::rand_elem(K, rng, -3, 3), y = tu::rand_elem(K, rng, -3, 3);
            REQUIRE(K.val(x * y) == K.val(x) + K.val(y));
            REQUIRE(K.val(x + y) >= vmin(K.val(x), K.val(y)));
            if (K.val(x) != K.val(y)) REQUIRE(K.val(x + y) == vmin(K.val(x), K.val(y)));
            REQUIRE(K.val(x).is_integer());
            if (K.val(x) >= Val(0) && K.val(y) >= Val(0)) {
                ResRing R(K.residue_field());
                REQUIRE(K.reduce(x * y) == R.mul(K.reduce(x), K.reduce(y)));
                REQUIRE(K.reduce(x + y) == R.add(K.reduce(x), K.reduce(y)));
            }
        }
    }
}

TEST_CASE("truncation keeps the requested precision") {
    for (std::string spec : {"qp:2", "qp:3", "fpt:2", "qt"}) {
        auto K = BaseField::parse(spec);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 300; ++i) {
            KElem x = tu::rand_elem(K, rng, -4, 4);
            long N = static_cast<long>(rng() % 12) - 2;
            KElem y = K.truncate(x, N);
            REQUIRE(K.val(x - y) >= Val(N));
        }
    }
}

TEST_CASE("polynomial arithmetic examples") {
    auto K = BaseField::parse("qp:2");
    KRing R{K};
    KPoly a = P(K, "z^2+2");
    CHECK(poly::equal(R, poly::mul(R, a, a), P(K, "z^4+4*z^2+4")));
    CHECK(poly::equal(R, poly::translate(R, P(K, "z^2"), K.one()), P(K, "z^2+2z+1")));
    KPoly f = P(K, "z^4+20*z^2+292");
    auto [q, r] = poly::divmod(R, f, a);
    CHECK(poly::equal(R, q, P(K, "z^2+18")));
    CHECK(poly::equal(R, r, P(K, "256")));
    CHECK(poly::equal(R, poly::add(R, poly::mul(R, q, a), r), f));
    CHECK(poly::equal(R, poly::scale_var(R, P(K, "z^2+z"), K.from_int(3)), P(K, "9z^2+3z")));
}

TEST_CASE("resultant examples and sign law") {
    auto K = BaseField::parse("qp:2");
    CHECK(resultant(K, P(K, "z^2+2"), P(K, "z")) == K.from_int(2));
    CHECK(sylvester_resultant(K, P(K, "z^2+2"), P(K, "z")) == K.from_int(2));
    KPoly g = P(K, "3z^3 - z + 5");
    CHECK(resultant(K, P(K, "z - 7"), g) == poly::eval(KRing{K}, g, K.from_int(7)));
    CHECK(resultant(K, P(K, "z^3+z+1"), P(K, "1")) == K.one());
    for (std::string spec : {"qp:3", "fpt:2", "qt"}) {
        auto L = BaseField::parse(spec);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 60; ++i) {
            int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
            KPoly f = tu::rand_monic(L, rng, m, -1, 3), h = tu::rand_monic(L, rng, n, -1, 3);
            h = poly::scale(KRing{L}, h, tu::rand_elem(L, rng, -1, 1));
            KElem r1 = resultant(L, f, h), r2 = resultant(L, h, f);
            REQUIRE(r1 == sylvester_resultant(L, f, h));
            if ((m * n) % 2)
                REQUIRE(r1 == -r2);
            else
                REQUIRE(r1 == r2);
        }
    }
}

TEST_CASE("phi expansion round trip") {
    auto K = BaseField::parse("qp:2");
    KRing R{K};
    auto c = poly::phi_expansion(R, P(K, "z^4+20*z^2+292"), P(K, "z^2+2"));
    REQUIRE(c.size() == 3);
    CHECK(poly::equal(R, c[2], P(K, "1")));
    CHECK(poly::equal(R, c[1], P(K, "16")));
    CHECK(poly::equal(R, c[0], P(K, "256")));
    auto d = poly::phi_expansion(R, P(K, "z^2+2"), P(K, "z^2+2"));
    CHECK(d.size() == 2);
    CHECK(d[0].empty());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        KPoly f = tu::rand_monic(K, rng, 1 + static_cast<int>(rng() % 8), -2, 4);
        KPoly phi = tu::rand_monic(K, rng, 1 + static_cast<int>(rng() % 3), 0, 3);
        auto cs = poly::phi_expansion(R, f, phi);
        for (auto& cm : cs) REQUIRE(poly::deg<KRing>(cm) < poly::deg<KRing>(phi));
        REQUIRE(poly::equal(R, poly::phi_assemble(R, cs, phi), f));
    }
}

TEST_CASE("Newton polygon examples") {
    auto K = BaseField::parse("qp:2");
    auto np = newton_polygon(K, P(K, "z^4+20*z^2+292"));
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == mpq_class(-1, 2));
    CHECK(np.segments[0].length == 4);
    auto np2 = newton_polygon(K, P(K, "z^4+2*z^3+4*z^2+12*z+12"));
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].slope == mpq_class(-1, 2));
    auto np3 = newton_polygon(K, P(K, "z - 4"));
    REQUIRE(np3.segments.size() == 1);
    CHECK(np3.segments[0].slope == -2);
    auto np4 = newton_polygon(K, P(K, "z^3 + z^2"));
    CHECK(np4.zmult == 2);
    // sum of root valuations equals v(c0) for monic f
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        KPoly f = tu::rand_monic(K, rng, 1 + static_cast<int>(rng() % 6), -2, 5);
        if (f[0].is_zero()) continue;
        auto n = newton_polygon(K, f);
        mpq_class s = 0;
        for (auto& seg : n.segments) s += -seg.slope * seg.length;
        REQUIRE(Val(-s) == -K.val(f[0]));
    }
}

TEST_CASE("parser handles t, p and lists") {
    auto F = BaseField::parse("fpt:3");
    KPoly f = parse_kpoly(F, "z^3 - t");
    CHECK(f.size() == 4);
    CHECK(f[0] == -F.t());
    auto Q = BaseField::parse("qp:5");
    KPoly g = parse_kpoly(Q, "[p, 0, 1/3]");
    CHECK(g[0] == Q.from_int(5));
    CHECK(g[2] == Q.from_mpq(mpq_class(1, 3)));
    CHECK_THROWS_AS(parse_kpoly(Q, "z^2 +"), Error);
    CHECK(kpoly_str(Q, parse_kpoly(Q, "z^2 - 3z + 1")) == "z^2 - 3*z + 1");
}

TEST_CASE("residue field factorization") {
    ResRing F2(prime_field(2)), F3(prime_field(3)), F5(prime_field(5));
    auto f1 = factor(F2, rp(F2, {1, 0, 1}));
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].mult == 2);
    CHECK(poly::deg<ResRing>(f1[0].g) == 1);
    CHECK(res_irreducible(F3, rp(F3, {1, 0, 1})));
    CHECK(res_irreducible(F2, rp(F2, {1, 1, 0, 0, 1})));
    CHECK(separable_degree(F2, rp(F2, {1, 0, 1})) == 1);
    CHECK(separable_degree(F2, rp(F2, {1, 1, 1})) == 2);
    CHECK(separable_degree(F2, rp(F2, {0, 0, 1, 0, 1})) == 2);
    CHECK(p_free_part(12, 2) == 3);
    CHECK(p_free_part(8, 2) == 1);
    CHECK(p_free_part(15, 2) == 15);
    // x(x+1)(x^2-x+1) over F_5
    auto f5 = factor(F5, rp(F5, {0, 1, 0, 0, 1}));
    CHECK(f5.size() == 3);
    // random re-multiplication over F_4 and F_9
    for (auto k : {finite_field(2, 2), finite_field(3, 2), finite_field(2, 3)}) {
        ResRing R(k);
        std::mt19937_64 rng(7);
        auto els = R.all_elements();
        for (int it = 0; it < 80; ++it) {
            ResPoly g;
            int n = 1 + static_cast<int>(rng() % 7);
            for (int i = 0; i < n; ++i) g.push_back(els[rng() % els.size()]);
            g.push_back(R.one());
            if (rng() % 3 == 0) g = poly::mul(R, g, g);
            auto fs = factor(R, g);
            ResPoly prod = poly::constant(R, R.one());
            for (auto& f : fs) {
                REQUIRE(poly::is_monic(R, f.g));
                for (int m = 0; m < f.mult; ++m) prod = poly::mul(R, prod, f.g);
                // irreducible: no roots when degree 2 or 3
                if (poly::deg<ResRing>(f.g) <= 3 && poly::deg<ResRing>(f.g) > 1)
                    for (auto& e : els) REQUIRE(!R.is_zero(poly::eval(R, f.g, e)));
            }
            REQUIRE(poly::equal(R, prod, g));
        }
    }
}

TEST_CASE("factorization over Q up to degree 4") {
    ResRing Q(rational_field());
    auto q = [&](std::vector<long> c) {
        ResPoly g;
        for (long x : c) {
            ResElem e;
            e.q = x;
            g.push_back(e);
        }
        return g;
    };
    CHECK(factor(Q, q({-2, 0, 1})).size() == 1);
    CHECK(factor(Q, q({-4, 0, 1})).size() == 2);
    // (z^2+1)(z^2+2)
    CHECK(factor(Q, q({2, 0, 3, 0, 1})).size() == 2);
    CHECK(factor(Q, q({1, 0, 0, 0, 1})).size() == 1);
    CHECK_THROWS_AS(factor(Q, q({1, 0, 0, 0, 0, 1})), Error);
}

TEST_CASE("residue extensions embed consistently") {
    auto k = prime_field(2);
    ResRing R(k);
    auto e1 = extend(k, rp(R, {1, 1, 1}));
    ResRing R4(e1.to);
    CHECK(e1.to->deg == 2);
    CHECK(R4.is_zero(poly::eval(R4, e1.map_poly(rp(R, {1, 1, 1})), e1.z)));
    // tower F_4 -> F_16 via an irreducible quadratic over F_4
    ResPoly psi;
    for (auto& c : R4.all_elements()) {
        ResPoly cand{c, R4.one(), R4.one()};
        if (res_irreducible(R4, cand)) {
            psi = cand;
            break;
        }
    }
    REQUIRE(!psi.empty());
    auto e2 = extend(e1.to, psi);
    ResRing R16(e2.to);
    CHECK(e2.to->deg == 4);
    CHECK(R16.is_zero(poly::eval(R16, e2.map_poly(psi), e2.z)));
    for (auto& b : R16.all_elements()) {
        auto parts = e2.decompose(b);
        ResElem back = R16.add(e2.map(parts[0]), R16.mul(e2.map(parts[1]), e2.z));
        REQUIRE(back == b);
    }
    for (auto& a : R4.all_elements())
        for (auto& b : R4.all_elements())
            REQUIRE(e2.map(R4.mul(a, b)) == R16.mul(e2.map(a), e2.map(b)));
}
