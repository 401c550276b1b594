#include "maclane/wtr.hpp"

#include <algorithm>

#include "maclane/errors.hpp"

namespace maclane {

namespace {

constexpr int kRefineRounds = 64;

bool is_p_power(long n, long p) { return p > 0 && p_free_part(n, p) == 1; }

long p_part(long n, long p) { return p > 0 ? n / p_free_part(n, p) : 1; }

bool inseparable(const FieldPtr& F, const FPoly& f) {
    return poly::derivative(FRing(F), f).empty();
}

// sorted valuations of the roots of g, zero roots first as inf at the end
std::vector<Val> root_vals(const ExtField& G, const FPoly& g) {
    std::vector<Val> vals;
    for (auto& c : g) vals.push_back(G.val(c));
    NewtonPolygon np = newton_polygon(vals);
    std::vector<Val> out;
    for (int i = 0; i < np.zmult; ++i) out.push_back(Val::inf());
    for (auto& seg : np.segments)
        for (int i = 0; i < seg.length; ++i) out.push_back(Val(-seg.slope));
    std::sort(out.begin(), out.end());
    return out;
}

Val next_target(const Val& mu) { return mu.is_inf() ? mu : Val(mu.q() + 1); }

Val last_mu(const Branch& b) { return b.chain.stage(b.chain.last_finite()).mu; }

// decides v(g(beta)) >= s for the roots beta of branch b, refining as needed
bool branch_value_at_least(Branch& b, const FPoly& g, const Val& s) {
    FRing FR(b.chain.F);
    for (int round = 0; round < kRefineRounds; ++round) {
        Val v = evaluate(b.chain, g);
        if (v >= s) return true;
        if (b.exact) return false;
        int m = b.chain.last_finite();
        auto c = poly::phi_expansion(FR, g, b.chain.stage(m).phi);
        Val v0 = c[0].empty() ? Val::inf() : evaluate_at(b.chain, m, c[0]);
        if (v0 == v) {
            bool strict = true;
            Val mu = b.chain.stage(m).mu;
            for (size_t k = 1; k < c.size() && strict; ++k) {
                if (c[k].empty()) continue;
                Val t = evaluate_at(b.chain, m, c[k]) + mu * mpq_class(static_cast<long>(k));
                if (!(t > v0)) strict = false;
            }
            // the constant term dominates: v is the exact value
            if (strict) return false;
        }
        refine(b, next_target(last_mu(b)));
    }
    fail("NoCertifiedCandidate", "branch value undecided within the refinement budget");
}

WtrResult certify(const FieldPtr& F, FPoly phi, int j, Diskoid disk) {
    WtrResult res;
    res.phi = std::move(phi);
    res.j = j;
    res.L = adjoin(F, res.phi);
    res.disk = std::move(disk);
    if (!member(res.disk, res.phi)) fail("Internal", "ramified key failed its disk certificate");
    long p = F->K().residue_char();
    if (res.f() != 1 || (p > 0 && !is_p_power(res.e(), p)))
        fail("Internal", "ramified key generates a non weakly totally ramified extension");
    return res;
}

}  // namespace

// key of a non-exact branch refined until F[z]/(key) is isomorphic to the
// branch field: the key's root is then closer to a branch root than any
// conjugate of that root
FPoly branch_field_key(Branch& b, const Val& at_least) {
    const FieldPtr& F = b.chain.F;
    if (b.degree == 1) return branch_key(b);
    for (int round = 0; round < kRefineRounds; ++round) {
        FPoly key = branch_key(b);
        MPhi M = m_phi(F, key);
        Val need = vmax(M.apply(M.deltas.back()) + Val(1), at_least);
        if (b.exact || last_mu(b) >= need) {
            // shorten the coefficients: a root beta of the result still has
            // v(key(beta)) >= need, so it generates the same field
            Val va = root_vals(*F, key).front();
            FPoly out = key;
            for (size_t i = 0; i + 1 < out.size(); ++i)
                out[i] = F->truncate(out[i], need - va * mpq_class(static_cast<long>(i)));
            poly::trim(FRing(F), out);
            return out;
        }
        refine(b, need);
    }
    fail("NoCertifiedCandidate", "branch key did not reach the isomorphism bound");
}

FPoly separable_perturb(const FieldPtr& F, const FPoly& f, const Val& target) {
    FRing FR(F);
    if (!inseparable(F, f)) return f;
    long k = ceil_q(target.q() * F->e()).get_si();
    FPoly g = f;
    if (g.size() < 2) g.resize(2);
    g[1] = F->add(g[1], F->pi_pow(k));
    poly::trim(FR, g);
    return g;
}

Val perturbation_displacement(const FieldPtr& F, const FPoly& f, const FE& c) {
    FRing FR(F);
    Adjoined A = adjoin(F, poly::monic(FR, f));
    FRing GR(A.G);
    FPoly h = A.emb.map_poly(f);
    if (h.size() < 2) h.resize(2);
    h[1] = A.G->add(h[1], A.emb.map(c));
    poly::trim(GR, h);
    auto vals = root_vals(*A.G, poly::translate(GR, h, A.root));
    return vals.front();
}

WtrResult ramified_approx(const FieldPtr& F, const FPoly& f0) {
    FRing FR(F);
    FPoly f = poly::monic(FR, f0);
    int n = poly::deg<FRing>(f);
    if (n < 1) fail("InvalidArgument", "ramified approximation of a constant");
    if (n == 1) return certify(F, f, 1, make_diskoid(F, f, Val::inf()));
    long p = F->K().residue_char();
    if (p == 0) fail("ResidueCharZero", "use the average of the roots in residue characteristic zero");
    IndVal V = approximants(F, f);
    int j = ramified_index(V);
    FPoly phi = V.stage(j).phi;
    trace(1, "ramified approximation: j = " + std::to_string(j) + ", key " + fpoly_str(F, phi));
    bool point = false;
    Diskoid B;
    try {
        B = min_disk_of_roots(F, f);
    } catch (const Error& e) {
        if (e.code() != "PurelyInseparableLocal") throw;
        point = true;
    }
    if (!inseparable(F, phi)) {
        if (point) fail("Internal", "separable key for a purely inseparable polynomial");
        return certify(F, phi, j, B);
    }
    ExtInvariants want = ext_invariants(approximants(F, phi));
    // the perturbed key must stay irreducible with the same invariants and,
    // when the minimal disk is a genuine disk, inside it
    Val target(point ? 8 : 2);
    for (int round = 0; round < 12; ++round, target = target * mpq_class(2)) {
        FPoly g = separable_perturb(F, phi, target);
        try {
            ExtInvariants got = ext_invariants(approximants(F, g));
            if (got.e != want.e || got.f != want.f) continue;
        } catch (const Error& e) {
            if (e.code() != "NotIrreducible") throw;
            continue;
        }
        trace(2, "separable perturbation at target " + target.str());
        if (point) return certify(F, g, j, make_diskoid(F, f, root_value(F, g, f)));
        if (member(B, g)) return certify(F, g, j, B);
    }
    fail("NoCertifiedCandidate", "separable perturbation did not settle inside the minimal disk");
}

WtrResult ramified_approx(const BaseField& K, const KPoly& f) {
    FieldPtr B = ExtField::base(K);
    return ramified_approx(B, to_fpoly(B, f));
}

FE char0_center(const FieldPtr& F, const FPoly& f) {
    int n = poly::deg<FRing>(f);
    if (n < 1) fail("InvalidArgument", "center of a constant");
    return F->neg(F->div(f[n - 1], F->mul(F->from_int(n), f[n])));
}

WtrResult ax_refinement(const FieldPtr& F, const FPoly& f, const Diskoid& D) {
    if (D.s.is_inf()) fail("InvalidArgument", "the disk must have finite radius");
    auto branches = om_branches(F, f);
    for (auto& b : branches)
        if (!branch_value_at_least(b, D.phi, D.s)) fail("InvalidArgument", "the disk misses a root");
    long p = F->K().residue_char();
    // a branch whose degree has the least p-adic order
    size_t pick = 0;
    for (size_t i = 1; i < branches.size(); ++i)
        if (p_part(branches[i].degree, p) < p_part(branches[pick].degree, p)) pick = i;
    Branch& b = branches[pick];
    long q = p_part(b.degree, p);
    trace(1, "ax refinement: branch " + std::to_string(pick) + " of degree " + std::to_string(b.degree));
    if (p == 0) {
        FPoly key = branch_field_key(b);
        FPoly lin = {char0_center(F, key), F->one()};
        poly::trim(FRing(F), lin);
        if (!member(D, lin)) fail("NoCertifiedCandidate", "root average outside the disk");
        return certify(F, lin, 1, D);
    }
    for (int round = 0; round < kRefineRounds; ++round) {
        FPoly key = branch_key(b);
        if (member(D, key)) {
            WtrResult r = ramified_approx(F, key);
            r.disk = D;
            if (!member(D, r.phi)) fail("NoCertifiedCandidate", "ramified key outside the disk");
            if (r.degree() > q) fail("Internal", "ramified key exceeds the degree bound");
            return r;
        }
        if (b.exact) break;
        refine(b, next_target(last_mu(b)));
    }
    fail("NoCertifiedCandidate", "no branch key inside the disk within the stage budget");
}

std::vector<Val> branch_root_distances(const FieldPtr& F, const FPoly& f, Branch& b) {
    for (int round = 0; round < kRefineRounds; ++round) {
        FPoly key = branch_key(b);
        Adjoined A = adjoin(F, key);
        FRing GR(A.G);
        auto vals = root_vals(*A.G, poly::translate(GR, A.emb.map_poly(f), A.root));
        // the top value belongs to the approximated root itself
        if (vals.size() < 2 || vals.back() > vals[vals.size() - 2]) {
            vals.pop_back();
            return vals;
        }
        if (b.exact) fail("Internal", "repeated root in a squarefree polynomial");
        refine(b, next_target(last_mu(b)) * mpq_class(2));
    }
    fail("NoCertifiedCandidate", "root separation not reached");
}

std::vector<std::vector<Val>> pairwise_root_distances(const FieldPtr& F, const FPoly& f) {
    std::vector<std::vector<Val>> out;
    for (auto& b : om_branches(F, f)) out.push_back(branch_root_distances(F, f, b));
    return out;
}

NormalForm normal_form(const FieldPtr& L) {
    const BaseField& K = L->K();
    NormalForm nf;
    const ResField& k = *L->residue_field();
    if (k.deg == 1) {
        nf.unramified = {K.zero(), K.one()};
    } else {
        for (auto c : k.modulus) nf.unramified.push_back(K.from_int(static_cast<long>(c)));
        poly::trim(KRing{K}, nf.unramified);
    }
    KPoly cp = char_poly(L, L->uniformizer());
    if (L->f() == 1) {
        nf.U = ExtField::base(K);
        nf.eisenstein = to_fpoly(nf.U, cp);
        return nf;
    }
    nf.U = ExtField::create(K, nf.unramified);
    // the uniformizer may generate less than L over K: keep one copy of its minimal polynomial
    KRing R{K};
    cp = poly::monic(R, poly::quo(R, cp, poly::gcd(R, cp, poly::derivative(R, cp))));
    auto branches = om_branches(nf.U, to_fpoly(nf.U, cp));
    Branch& b = branches.front();
    if (b.degree != L->e()) fail("Internal", "uniformizer factor of unexpected degree over the unramified step");
    nf.eisenstein = poly::monic(FRing(nf.U), branch_field_key(b));
    return nf;
}

Equispaced equispaced_quartic(const FieldPtr& F, const FPoly& f0) {
    FRing FR(F);
    FPoly f = poly::monic(FR, f0);
    if (poly::deg<FRing>(f) != 4) fail("InvalidArgument", "expected a quartic");
    if (F->K().residue_char() != 2) fail("InvalidArgument", "expected residue characteristic 2");
    auto dist = pairwise_root_distances(F, f);
    Val r = dist.at(0).at(0);
    for (auto& row : dist)
        for (auto& d : row)
            if (d != r) fail("NotEquispaced", "root distances differ");
    Equispaced out;
    out.r = r;
    auto branches = om_branches(F, f);
    for (auto& b : branches) {
        if (ramified_index(b.chain) != b.chain.size()) continue;
        FPoly key = branch_field_key(b);
        out.alpha = adjoin(F, key);
        out.wtr_root = true;
        return out;
    }
    // alpha must lie within r of every root
    FPoly center;
    bool unramified = true;
    for (auto& b : branches)
        if (ext_invariants(b.chain).e != 1) unramified = false;
    if (unramified) {
        // the ramified key of an unramified branch is linear
        const IndVal& W = branches[0].chain;
        center = W.stage(ramified_index(W)).phi;
        if (poly::deg<FRing>(center) != 1) fail("Internal", "unramified branch without a linear key");
    } else {
        if (branches.size() != 1) fail("Internal", "ramified reducible equispaced quartic");
        IndVal V = approximants(F, f);
        if (V.size() != 3 || poly::deg<FRing>(V.stage(2).phi) != 2)
            fail("Internal", "unexpected chain shape for an equispaced quartic");
        center = V.stage(2).phi;
        // r = v(2 alpha + b) for center z^2 + b z + c
        Adjoined A = adjoin(F, center);
        FE t = A.G->add(A.G->mul(A.G->from_int(2), A.root), A.emb.map(center[1]));
        if (A.G->val(t) != r) fail("Internal", "root distance of the quadratic key disagrees");
    }
    if (poly::deg<FRing>(center) > 1 && inseparable(F, center)) fail("Internal", "inseparable quadratic key");
    Diskoid B = make_diskoid(F, center, m_phi(F, center).apply(r));
    if (B.disks != 1) fail("Internal", "center diskoid splits");
    for (auto& b : branches)
        if (!branch_value_at_least(b, B.phi, B.s)) fail("Internal", "center outside the minimal disk");
    out.alpha = adjoin(F, center);
    mpq_class scaled = r.q() * out.alpha.G->e();
    if (scaled.get_den() != 1) fail("Internal", "root distance not in the value group");
    return out;
}

}  // namespace maclane
