#pragma once

// Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a
// certified local field and semistable models over weakly totally ramified
// extensions.

#include <array>
#include <string>

#include "maclane/wtr.hpp"

namespace maclane {

enum class Reduction { Good, Multiplicative, Additive };
std::string reduction_name(Reduction r);

struct WModel {
    FieldPtr F;
    std::array<FE, 5> a;  // a1, a2, a3, a4, a6
    const FE& a1() const { return a[0]; }
    const FE& a2() const { return a[1]; }
    const FE& a3() const { return a[2]; }
    const FE& a4() const { return a[3]; }
    const FE& a6() const { return a[4]; }
};
WModel make_model(const FieldPtr& F, const KElem& a1, const KElem& a2, const KElem& a3, const KElem& a4,
                  const KElem& a6);

struct WInvariants {
    FE b2, b4, b6, b8, disc, c4, c6, j;
};
// SingularModel when the discriminant vanishes
WInvariants invariants(const WModel& W);

// x = u^2 x' + r, y = u^3 y' + u^2 s x' + t
struct Transform {
    FE u, r, s, t;
};
Transform identity_transform(const FieldPtr& F);
WModel apply(const WModel& W, const Transform& T);
// first a, then b
Transform compose(const FieldPtr& F, const Transform& a, const Transform& b);
WModel map_model(const Embedding& e, const WModel& W);
Transform map_transform(const Embedding& e, const Transform& T);

Reduction reduction_type(const WModel& W);  // NonIntegralModel unless all v(a_i) >= 0
// y^2 = (x - al)(x - be)(x - ga) with integral roots; residue characteristic != 2
Reduction roots_reduction(const FieldPtr& F, const FE& al, const FE& be, const FE& ga);

FPoly psi3(const WModel& W);
// multiplicity pattern of the reduced 3-division polynomial; residue characteristic != 3
Reduction psi3_reduction_type(const WModel& W);

// root of the separable cubic f farther from the other two than they are
// from each other, approximated to v(error) >= prec
FE distinguished_two_torsion(const FieldPtr& F, const FPoly& f, const Val& prec);
// same for the 3-division polynomial of W
FE distinguished_three_torsion(const WModel& W, const Val& prec);

struct SemistableResult {
    Adjoined L;         // over the field of the input model
    WModel model;       // over L
    Reduction reduction = Reduction::Good;
    Transform transform;  // from the input model mapped into L
    int degree() const { return L.G->degree() / L.emb.from->degree(); }
    int e() const { return L.G->e() / L.emb.from->e(); }
    int f() const { return L.G->f() / L.emb.from->f(); }
};
SemistableResult semistable_model(const WModel& W);

}  // namespace maclane
