#pragma once

// Ramified Approximation: inside any disk containing the roots of a locally
// irreducible f there is a root of a key polynomial generating a separable
// extension with trivial residue extension and p-power ramification.

#include "maclane/diskoid.hpp"

namespace maclane {

struct WtrResult {
    FPoly phi;       // monic, separable, locally irreducible over F
    Adjoined L;      // F(alpha), phi(alpha) = 0
    int j = 1;       // stage index on the approximant chain of the input
    Diskoid disk;    // certificate: member(disk, phi) holds
    int e() const { return L.G->e() / L.emb.from->e(); }
    int f() const { return L.G->f() / L.emb.from->f(); }
    int degree() const { return L.G->degree() / L.emb.from->degree(); }
};

// pre: residue characteristic p > 0, f locally irreducible.  For purely
// inseparable f the minimal disk is a point; the certificate is then the
// diskoid around f through the perturbed key.
WtrResult ramified_approx(const FieldPtr& F, const FPoly& f);
WtrResult ramified_approx(const BaseField& K, const KPoly& f);

// residue characteristic zero: the average of the roots
FE char0_center(const FieldPtr& F, const FPoly& f);

// D must contain every root of f (checked per local branch).  The result has
// degree at most the p-part of the chosen branch degree.
WtrResult ax_refinement(const FieldPtr& F, const FPoly& f, const Diskoid& D);

// key of branch b refined until F[z]/(key) is isomorphic to the branch field,
// coefficients shortened; v(key_b(beta)) >= at_least at the roots beta of the result
FPoly branch_field_key(Branch& b, const Val& at_least = Val(0));

// f + c z with c = Pi^k, k = ceil(target * e(F)); f returned as is when f' != 0
FPoly separable_perturb(const FieldPtr& F, const FPoly& f, const Val& target);
// min v(beta - alpha) over roots beta of f + c z, alpha the root of f;
// measured on the Newton polygon of (f + c z)(z + alpha) over F(alpha)
Val perturbation_displacement(const FieldPtr& F, const FPoly& f, const FE& c);

// v(beta - gamma) for a root beta of branch b of f over the other roots gamma, ascending
std::vector<Val> branch_root_distances(const FieldPtr& F, const FPoly& f, Branch& b);
// v(beta - gamma) over ordered pairs of distinct roots of a squarefree f,
// grouped by local branch: out[b] lists the distances from a root of branch b
std::vector<std::vector<Val>> pairwise_root_distances(const FieldPtr& F, const FPoly& f);

// two-step presentation of L over its base field K: the unramified step
// U = K[y]/(unramified), unramified lifting the residue field modulus, and an
// Eisenstein polynomial over U with a root generating L over U.  For f = 1 the
// Eisenstein polynomial is the exact minimal polynomial of the uniformizer;
// otherwise it is a key of one local factor, close enough to define the same field.
struct NormalForm {
    KPoly unramified;
    FieldPtr U;
    FPoly eisenstein;
};
NormalForm normal_form(const FieldPtr& L);

struct Equispaced {
    Adjoined alpha;  // F(alpha), degree 1, 2, or that of a weakly totally ramified root
    Val r;           // common distance between roots
    bool wtr_root = false;  // alpha is a root of f itself
};
// residue characteristic 2, f a separable quartic with equispaced roots
Equispaced equispaced_quartic(const FieldPtr& F, const FPoly& f);

}  // namespace maclane
