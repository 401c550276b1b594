#pragma once

// Rational maps P^1 -> P^1 given by binary forms, their resultant valuation
// and the search for a conjugate with minimal resultant.

#include <string>
#include <vector>

#include "maclane/wtr.hpp"

namespace maclane {

// F0, F1 of degree d; index i holds the coefficient of X^i Y^(d-i)
struct RatMap {
    FieldPtr F;
    int d = 0;
    FPoly F0, F1;
    Val scalar;  // the common factor removed: input = Pi-power of this value times (F0, F1)
};
// pads to degree d, removes the common power of the uniformizer;
// DegreeMismatch when a form exceeds degree d or d < 2, NotCoprime when Res = 0
RatMap normalize(const FieldPtr& F, const FPoly& F0, const FPoly& F1, int d);
RatMap map_ratmap(const Embedding& e, const RatMap& f);
bool same_map(const RatMap& f, const RatMap& g);  // proportional forms

Val ordres(const RatMap& f);

// (X, Y) -> (aX + bY, cX + dY)
struct Mobius {
    FE a, b, c, d;
};
Mobius mobius_mul(const FieldPtr& F, const Mobius& s, const Mobius& t);
// sigma^-1 o f o sigma, renormalized
RatMap conjugate(const RatMap& f, const Mobius& sigma);

// ordres of f conjugated by z -> u z + alpha with v(u) = t
Val ordres_at(const RatMap& f, const FE& alpha, const mpq_class& t);

// ordres(f^sigma) along t for a fixed centre: R + (d^2 + d) t - 2d min_k (c_k + e_k t)
struct OrdresLine {
    Val base;  // ordres(f)
    int d = 0;
    std::vector<std::pair<Val, int>> lines;  // (c_k, e_k), c_k finite
    Val at(const mpq_class& t) const;
    mpq_class right_slope(const mpq_class& t) const;
    mpq_class left_slope(const mpq_class& t) const;
    // minimum value and the closed interval of minimizers
    Val min_value(mpq_class* lo, mpq_class* hi) const;
};
OrdresLine ordres_line(const RatMap& f, const FE& alpha);

struct DegreeBounds {
    long p = 0;
    int d = 0;
    long q_dp1 = 1, q_dm1 = 1, q_d = 1;
    long A = 0, B = 0;
};
DegreeBounds degree_bounds(long p, int d);

struct Center {
    Adjoined A;  // F(alpha)
    FE alpha;    // in A.G
    FPoly phi;   // over F, phi(alpha) = 0
    std::string source;  // "fixed", "preimage" or "origin"
    int degree() const { return A.G->degree() / A.emb.from->degree(); }
};
// fixed points of f and the finite preimages of f(infinity), one weakly
// totally ramified centre per local branch, plus the origin
std::vector<Center> candidate_centers(const RatMap& f);

struct MrlResult {
    Center center;
    mpq_class t;
    Adjoined L;     // over f.F: centre field plus an element u with v(u) = t
    Mobius sigma;   // z -> u z + alpha over L
    RatMap model;   // f^sigma over L, normalized
    Val ordres_before, ordres_min;
    DegreeBounds bounds;
    bool within_A = true;
    bool within_B = true;  // meaningful when ordres_min = 0
    int degree() const { return L.G->degree() / L.emb.from->degree(); }
    int e() const { return L.G->e() / L.emb.from->e(); }
    int f() const { return L.G->f() / L.emb.from->f(); }
};
MrlResult mrl_search(const RatMap& f);

struct DirectionSlope {
    std::string direction;  // "infinity" or the key of the residue class
    mpq_class slope;        // derivative of ordres moving away from the Gauss point
};
struct SemistableCheck {
    bool semistable = true;
    std::vector<DirectionSlope> slopes;
};
SemistableCheck semistable_check(const RatMap& f);

}  // namespace maclane
