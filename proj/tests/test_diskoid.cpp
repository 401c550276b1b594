#include "doctest.h"
#include "maclane/diskoid.hpp"
#include "maclane/errors.hpp"
#include "test_util.hpp"

using namespace maclane;

namespace {

FPoly FP(const FieldPtr& F, const std::string& s) { return to_fpoly(F, parse_kpoly(F->K(), s)); }

struct Q2 {
    BaseField K = BaseField::parse("qp:2");
    FieldPtr B = ExtField::base(K);
};

}  // namespace

TEST_CASE("root difference valuations") {
    Q2 q;
    auto d = root_difference_valuations(q.B, FP(q.B, "z^2+2"));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Val(3, 2));
    d = root_difference_valuations(q.B, FP(q.B, "z^2+z+1"));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Val(0));
    CHECK(root_difference_valuations(q.B, FP(q.B, "z-5")).empty());
    // z^4 - 2: roots 2^(1/4) i^k, differences 2^(1/4)(1 - i^k)
    d = root_difference_valuations(q.B, FP(q.B, "z^4-2"));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == Val(3, 4));
    CHECK(d[1] == Val(3, 4));
    CHECK(d[2] == Val(5, 4));
}

TEST_CASE("M_phi and its inverse") {
    Q2 q;
    MPhi M = m_phi(q.B, FP(q.B, "z^2+2"));
    CHECK(M.apply(Val(3, 2)) == Val(3));
    CHECK(M.invert(Val(3)) == Val(3, 2));
    CHECK(M.apply(Val(1)) == Val(2));
    CHECK(M.apply(Val(5)) == Val(13, 2));
    MPhi L = m_phi(q.B, FP(q.B, "z"));
    CHECK(L.apply(Val(7, 3)) == Val(7, 3));
    std::mt19937_64 rng(5);
    MPhi M4 = m_phi(q.B, FP(q.B, "z^4-2"));
    for (int i = 0; i < 20; ++i) {
        Val r(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
        CHECK(M.invert(M.apply(r)) == r);
        CHECK(M4.invert(M4.apply(r)) == r);
    }
    CHECK(M.invert(Val::inf()).is_inf());
}

TEST_CASE("minimal disks of the worked examples") {
    Q2 q;
    Diskoid D = min_disk_of_roots(q.B, FP(q.B, "z^4+20z^2+292"));
    CHECK(poly::equal(FRing(q.B), D.phi, FP(q.B, "z^2+2")));
    CHECK(D.s == Val(3));
    CHECK(D.r == Val(3, 2));
    CHECK(D.disks == 1);

    Diskoid E = min_disk_of_roots(q.B, FP(q.B, "z^4+2z^3+4z^2+12z+12"));
    CHECK(E.r == Val(3, 4));
    CHECK(member(E, FP(q.B, "z^2+2")));
    CHECK(member(E, FP(q.B, "z^4+2z^3+4z^2+12z+12")));

    Diskoid U = min_disk_of_roots(q.B, FP(q.B, "z^2+z+1"));
    CHECK(U.r == Val(0));
    CHECK(member(U, FP(q.B, "z^2+z+1")));
}

TEST_CASE("purely inseparable input has no finite minimal disk") {
    auto K = BaseField::parse("fpt:2");
    FieldPtr B = ExtField::base(K);
    CHECK_THROWS_AS(min_disk_of_roots(B, FP(B, "z^2-t")), Error);
}

TEST_CASE("membership") {
    Q2 q;
    Diskoid D = make_diskoid(q.B, FP(q.B, "z^2+2"), Val(4));
    CHECK(member(D, FP(q.B, "z^2+2")));
    CHECK_FALSE(member(D, FP(q.B, "z")));
    CHECK(D.disks == 2);
}

TEST_CASE("diskoid valuations") {
    Q2 q;
    Diskoid D = make_diskoid(q.B, FP(q.B, "z^2+2"), Val(4));
    CHECK(diskoid_valuation(D, FP(q.B, "z^4+20z^2+292")) == Val(8));
    CHECK(diskoid_valuation(D, FP(q.B, "z^2+2")) == Val(4));
    Diskoid G = make_diskoid(q.B, FP(q.B, "z"), Val(1));
    CHECK(diskoid_valuation(G, FP(q.B, "z^2")) == Val(2));
    // below the chain value of z^2+2 the diskoid is centered on the first key
    Diskoid S = make_diskoid(q.B, FP(q.B, "z^2+2"), Val(1, 2));
    CHECK(diskoid_valuation(S, FP(q.B, "z^2+2")) == Val(1, 2));
    std::mt19937_64 rng(9);
    for (const char* phi : {"z^2+2", "z^4+20z^2+292", "z^3+2z+2", "z^2+z+1"}) {
        for (int i = 0; i < 6; ++i) {
            Val s(static_cast<long>(rng() % 30) - 5, 1 + static_cast<long>(rng() % 4));
            Diskoid X = make_diskoid(q.B, FP(q.B, phi), s);
            CHECK(diskoid_valuation(X, X.phi) == s);
        }
    }
}

TEST_CASE("infimum soundness at member-certified points") {
    Q2 q;
    KRing R{q.K};
    std::mt19937_64 rng(77);
    int total = 0;
    for (const char* phi : {"z^2+2", "z^4+20z^2+292", "z^2+z+1"}) {
        KPoly pk = parse_kpoly(q.K, phi);
        for (int trial = 0; trial < 8; ++trial) {
            Val s(1 + static_cast<long>(rng() % 8), 1 + static_cast<long>(rng() % 2));
            Diskoid D = make_diskoid(q.B, to_fpoly(q.B, pk), s);
            KPoly g = tu::rand_monic(q.K, rng, 1 + static_cast<int>(rng() % 5), 0, 3);
            Val inf = diskoid_valuation(D, to_fpoly(q.B, g));
            int tested = 0;
            for (int k = 0; k < 12; ++k) {
                // perturbed center; keep it if irreducible and certified inside D
                KPoly h = pk;
                h[rng() % (h.size() - 1)] = h[0] + q.K.pi_pow(static_cast<long>(rng() % 12));
                try {
                    approximants(q.K, h);
                } catch (const Error&) {
                    continue;
                }
                FPoly hf = to_fpoly(q.B, h);
                if (!member(D, hf)) continue;
                ++tested;
                CHECK(root_value(q.B, hf, to_fpoly(q.B, g)) >= inf);
            }
            total += tested;
        }
    }
    CHECK(total >= 20);
}

TEST_CASE("nested diskoids along approximant chains") {
    std::mt19937_64 rng(31);
    for (const char* spec : {"qp:2", "qp:3"}) {
        auto K = BaseField::parse(spec);
        FieldPtr B = ExtField::base(K);
        int chains = 0;
        for (int t = 0; t < 400 && chains < 15; ++t) {
            KPoly f = tu::rand_monic(K, rng, 2 + static_cast<int>(rng() % 3), 1, 3);
            IndVal V;
            try {
                V = approximants(K, f);
            } catch (const Error&) {
                continue;
            }
            ++chains;
            for (int i = 1; i < V.last_finite(); ++i) {
                const Stage& a = V.stage(i);
                const Stage& b = V.stage(i + 1);
                mpq_class s = a.mu.q() * poly::deg<FRing>(b.phi) / poly::deg<FRing>(a.phi);
                CHECK(Val(s) < b.mu);
                Diskoid Da = make_diskoid(B, a.phi, a.mu);
                CHECK(member(Da, b.phi));
            }
        }
        CHECK(chains > 0);
    }
}

TEST_CASE("branch multiplicity") {
    Q2 q;
    IndVal V = approximants(q.K, parse_kpoly(q.K, "z^4+20z^2+292"));
    auto pre = approximant_prefixes(V);
    const IndVal& V2 = pre[1];
    FPoly f = FP(q.B, "z^4+20z^2+292");
    ResRing R(V2.stage(2).k);
    ResPoly psi = residual_polynomial(V2, f);
    strip_y_power(R, psi);
    psi = poly::monic(R, psi);
    CHECK(poly::deg<ResRing>(psi) == 2);
    CHECK(branch_multiplicity(V2, psi) == 2);
    const IndVal& V1 = pre[0];
    ResRing R1(V1.stage(1).k);
    CHECK(branch_multiplicity(V1, ResPoly{R1.one(), R1.one()}) == 1);
}

TEST_CASE("ramified index of worked chains") {
    Q2 q;
    CHECK(ramified_index(approximants(q.K, parse_kpoly(q.K, "z^4+20z^2+292"))) == 2);
    CHECK(ramified_index(approximants(q.K, parse_kpoly(q.K, "z^4+2z^3+4z^2+12z+12"))) == 2);
}
