#include "maclane/diskoid.hpp"

#include <algorithm>

#include "maclane/errors.hpp"

namespace maclane {

std::vector<Val> root_difference_valuations(const FieldPtr& F, const FPoly& phi0) {
    FRing FR(F);
    FPoly phi = poly::monic(FR, phi0);
    int n = poly::deg<FRing>(phi);
    if (n <= 1) return {};
    Adjoined A = adjoin(F, phi);
    const ExtField& G = *A.G;
    FPoly shifted = poly::translate(FRing(A.G), A.emb.map_poly(phi), A.root);
    std::vector<Val> vals;
    for (auto& c : shifted) vals.push_back(G.val(c));
    NewtonPolygon np = newton_polygon(vals);
    std::vector<Val> out;
    for (int i = 1; i < np.zmult; ++i) out.push_back(Val::inf());
    for (auto& seg : np.segments)
        for (int i = 0; i < seg.length; ++i) out.push_back(Val(-seg.slope));
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) != n - 1) fail("Internal", "root difference count");
    return out;
}

Val MPhi::apply(const Val& r) const {
    if (r.is_inf()) return Val::inf();
    Val s = r;
    for (auto& d : deltas) s = s + vmin(r, d);
    return s;
}

Val MPhi::invert(const Val& s) const {
    if (s.is_inf()) return Val::inf();
    // on [delta_k, delta_{k+1}] M(r) = sum_{i<k} delta_i + (n - k) r
    mpq_class acc = 0;
    size_t k = 0;
    for (;; ++k) {
        long slope = n - static_cast<long>(k);
        Val next = k < deltas.size() ? deltas[k] : Val::inf();
        if (next.is_inf() || s <= Val(acc + next.q() * slope)) {
            mpq_class r = (s.q() - acc) / slope;
            r.canonicalize();
            return Val(r);
        }
        acc += next.q();
    }
}

std::vector<std::pair<Val, Val>> MPhi::breakpoints() const {
    std::vector<std::pair<Val, Val>> out;
    for (auto& d : deltas) {
        if (d.is_inf()) break;
        if (!out.empty() && out.back().first == d) continue;
        out.push_back({d, apply(d)});
    }
    return out;
}

MPhi m_phi(const FieldPtr& F, const FPoly& phi) {
    MPhi M;
    M.n = poly::deg<FRing>(phi);
    M.deltas = root_difference_valuations(F, phi);
    return M;
}

namespace {

int disk_count(const MPhi& M, const Val& r) {
    int inside = 1;
    for (auto& d : M.deltas)
        if (d >= r) ++inside;
    return M.n / inside;
}

}  // namespace

Diskoid make_diskoid(const FieldPtr& F, const FPoly& phi, const Val& s) {
    Diskoid D;
    D.F = F;
    D.phi = poly::monic(FRing(F), phi);
    D.s = s;
    MPhi M = m_phi(F, D.phi);
    D.r = M.invert(s);
    D.disks = disk_count(M, D.r);
    return D;
}

int ramified_index(const IndVal& V) {
    long p = V.F->K().residue_char();
    int j = 1;
    if (p == 0) {
        for (int i = 1; i <= V.size(); ++i)
            if (poly::deg<FRing>(V.stage(i).phi) == 1) j = i;
        return j;
    }
    int f = 1;
    for (int i = 1; i <= V.size(); ++i) {
        f *= V.stage(i).from_prev.rel_deg;
        if (f != 1) break;
        if (i >= 2) {
            long e = V.stage(i - 1).E / V.E0();
            if (p_free_part(e, p) != 1) break;
        }
        j = i;
    }
    return j;
}

Val root_value(const FieldPtr& F, const FPoly& h, const FPoly& g) {
    FRing FR(F);
    if (poly::deg<FRing>(h) == 1) {
        FPoly hm = poly::monic(FR, h);
        return F->val(poly::eval(FR, g, F->neg(hm[0])));
    }
    if (F->is_base()) {
        const BaseField& K = F->K();
        KPoly hk = to_kpoly(F, h), gk = to_kpoly(F, g);
        return K.val(resultant(K, poly::monic(KRing{K}, hk), gk)) / mpq_class(poly::deg<KRing>(hk));
    }
    return stabilized_evaluate(approximants(F, h), g);
}

bool member(const Diskoid& D, const FPoly& h) { return root_value(D.F, h, D.phi) >= D.s; }

Diskoid min_disk_of_roots(const FieldPtr& F, const FPoly& f0) {
    FRing FR(F);
    FPoly f = poly::monic(FR, f0);
    int n = poly::deg<FRing>(f);
    if (n < 1) fail("InvalidArgument", "minimal disk of a constant");
    if (n == 1) return make_diskoid(F, f, Val::inf());
    MPhi M = m_phi(F, f);
    Val r = M.deltas.front();
    if (r.is_inf()) fail("PurelyInseparableLocal", "all roots coincide");
    FPoly center;
    if (F->K().residue_char() == 0) {
        // the average of the roots
        center = {F->div(f[n - 1], F->from_int(n)), F->one()};
        poly::trim(FR, center);
    } else {
        IndVal V = approximants(F, f);
        center = V.stage(ramified_index(V)).phi;
    }
    Diskoid D = make_diskoid(F, center, m_phi(F, center).apply(r));
    if (D.disks != 1 || !member(D, f)) fail("Internal", "minimal disk center failed its certificate");
    return D;
}

IndVal diskoid_indval(const Diskoid& D) {
    const FieldPtr& F = D.F;
    FRing FR(F);
    IndVal chain = approximants(F, D.phi);
    if (D.s.is_inf()) return chain;
    int n = chain.size();
    auto pre = approximant_prefixes(chain);
    for (int i = n; i >= 1; --i) {
        // prefix through stage i-1; for i = 1 this is the base valuation
        IndVal W;
        W.F = F;
        if (i >= 2) W = pre[i - 2];
        if (i >= 2 && !(D.s > evaluate(W, D.phi))) continue;
        const FPoly& key = chain.stage(i).phi;
        auto c = poly::phi_expansion(FR, D.phi, key);
        mpq_class mu;
        bool have = false;
        for (size_t m = 1; m < c.size(); ++m) {
            if (c[m].empty()) continue;
            Val a = i >= 2 ? evaluate(W, c[m]) : F->val(c[m][0]);
            mpq_class cand = (D.s.q() - a.q()) / static_cast<long>(m);
            if (!have || cand > mu) mu = cand;
            have = true;
        }
        mu.canonicalize();
        if (i == 1) return first_stage(F, F->neg(key[0]), Val(mu));
        return augment(W, key, Val(mu));
    }
    fail("Internal", "no stage represents the diskoid");
}

Val diskoid_valuation(const Diskoid& D, const FPoly& g) { return evaluate(diskoid_indval(D), g); }

int branch_multiplicity(const IndVal& V, const ResPoly& psi) {
    int m = V.last_finite();
    const Stage& s = V.stage(m);
    long p = V.F->K().residue_char();
    int sep = separable_degree(ResRing(s.k), psi);
    MPhi M = m_phi(V.F, s.phi);
    Val r = M.invert(s.mu);
    int c0 = 1, c1 = 1;
    for (auto& d : M.deltas) {
        if (d >= r) ++c0;
        if (d > r) ++c1;
    }
    long tau_free = p ? p_free_part(s.tau, p) : s.tau;
    return sep * (c0 / c1) * static_cast<int>(tau_free);
}

}  // namespace maclane
