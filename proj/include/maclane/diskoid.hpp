#pragma once

// Diskoids D(phi, s) = {b : v(phi(b)) >= s}: Galois orbits of disks described
// by a monic locally irreducible center polynomial phi.

#include <string>
#include <vector>

#include "maclane/maclane.hpp"

namespace maclane {

// values v(a_i - a) for a fixed root a of phi, over the other roots, ascending
std::vector<Val> root_difference_valuations(const FieldPtr& F, const FPoly& phi);

// M(r) = sum_i min(r, v(a_i - a)) including the root a itself
struct MPhi {
    int n = 1;
    std::vector<Val> deltas;  // ascending, size n - 1

    Val apply(const Val& r) const;
    Val invert(const Val& s) const;
    // (r, M(r)) at each finite breakpoint
    std::vector<std::pair<Val, Val>> breakpoints() const;
};
MPhi m_phi(const FieldPtr& F, const FPoly& phi);

struct Diskoid {
    FieldPtr F;
    FPoly phi;
    Val s;
    Val r;
    int disks = 1;
};

Diskoid make_diskoid(const FieldPtr& F, const FPoly& phi, const Val& s);

// index j (1-based) of the Ramified Approximation key on an approximant chain:
// largest j with trivial residue extension through stage j and p-power
// ramification through stage j-1; for residue characteristic zero the last
// linear key
int ramified_index(const IndVal& V);

// minimal disk containing the roots of an irreducible f, centered on the
// Ramified Approximation key
Diskoid min_disk_of_roots(const FieldPtr& F, const FPoly& f);

// v(phi_D(beta)) >= s for a root beta of the irreducible h
bool member(const Diskoid& D, const FPoly& h);
Val root_value(const FieldPtr& F, const FPoly& h, const FPoly& g);  // v(g(beta)), h(beta) = 0

// inductive valuation equal to the infimum valuation on D
IndVal diskoid_indval(const Diskoid& D);
Val diskoid_valuation(const Diskoid& D, const FPoly& g);

// number of directions at the finite stage of V collapsing onto psi
int branch_multiplicity(const IndVal& V, const ResPoly& psi);

}  // namespace maclane
