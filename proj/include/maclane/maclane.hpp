#pragma once

// Certified local extensions of the base field and MacLane inductive
// valuations over them.
//
// Every extension is flattened over the base: L = K[x]/(h) with h monic and
// locally irreducible, elements are polynomials of degree < deg h.  The base
// itself is the degree-one extension with h = x.  Valuations are normalized
// with v(pi_K) = 1 throughout.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "maclane/kpoly.hpp"
#include "maclane/residue.hpp"

namespace maclane {

class ExtField;
struct IndVal;
using FieldPtr = std::shared_ptr<const ExtField>;
using FE = KPoly;  // element of an ExtField

class ExtField {
public:
    // the base field viewed as a degree-one extension
    static FieldPtr base(const BaseField& K);
    // K[x]/(h); runs approximants(h) and fails with NotIrreducible if h splits locally
    static FieldPtr create(const BaseField& K, const KPoly& h);

    const BaseField& K() const { return K_; }
    const KPoly& h() const { return h_; }
    int degree() const { return n_; }
    int e() const { return e_; }
    int f() const { return f_; }
    bool is_base() const { return n_ == 1; }
    const ResFieldPtr& residue_field() const { return kres_; }
    const FE& uniformizer() const { return Pi_; }
    // approximant chain of h over K (empty for degree one)
    const std::shared_ptr<const IndVal>& chain() const { return chain_; }

    FE zero() const { return {}; }
    FE one() const { return {K_.one()}; }
    FE from_int(long n) const { return from_k(K_.from_int(n)); }
    FE from_k(const KElem& c) const;
    FE gen() const;  // class of x
    FE add(const FE& a, const FE& b) const;
    FE sub(const FE& a, const FE& b) const;
    FE neg(const FE& a) const;
    FE mul(const FE& a, const FE& b) const;
    FE inv(const FE& a) const;
    FE div(const FE& a, const FE& b) const { return mul(a, inv(b)); }
    FE pow(const FE& a, long e) const;
    FE reduce_poly(const KPoly& g) const;  // g(x) mod h
    bool is_zero(const FE& a) const { return a.empty(); }
    bool eq(const FE& a, const FE& b) const;

    Val val(const FE& a) const;
    ResElem residue(const FE& a) const;  // NotAUnit unless val = 0; val > 0 gives 0
    FE lift(const ResElem& r) const;
    FE pi_pow(long k) const;        // Pi^k
    FE truncate(const FE& a, const Val& N) const;  // b with v(a - b) >= N, small coefficients

    std::string str(const FE& a, const std::string& var = "w") const;

private:
    BaseField K_;
    KPoly h_;
    int n_ = 1;
    int e_ = 1, f_ = 1;
    ResFieldPtr kres_;
    FE Pi_;
    std::shared_ptr<const IndVal> chain_;
};

// Ring adapter so that poly:: templates work over an ExtField.
struct FRing {
    using E = FE;
    const ExtField* F;
    explicit FRing(const FieldPtr& f) : F(f.get()) {}
    explicit FRing(const ExtField* f) : F(f) {}
    E zero() const { return {}; }
    E one() const { return F->one(); }
    E from_int(long n) const { return F->from_int(n); }
    E from_mpz(const mpz_class& n) const { return F->from_k(F->K().from_mpz(n)); }
    bool is_zero(const E& a) const { return a.empty(); }
    bool eq(const E& a, const E& b) const { return F->eq(a, b); }
    E add(const E& a, const E& b) const { return F->add(a, b); }
    E sub(const E& a, const E& b) const { return F->sub(a, b); }
    E neg(const E& a) const { return F->neg(a); }
    E mul(const E& a, const E& b) const { return F->mul(a, b); }
    E inv(const E& a) const { return F->inv(a); }
};

using FPoly = std::vector<FE>;

FPoly to_fpoly(const FieldPtr& F, const KPoly& f);  // coefficients from K
KPoly to_kpoly(const FieldPtr& F, const FPoly& f);  // requires coefficients in K

// ---------------------------------------------------------------- valuations

struct Stage {
    FPoly phi;
    Val mu;
    int tau = 1;
    long E = 1;       // value group through this stage is (1/E)Z
    ResFieldPtr k;    // constant residue field of this stage
    // k = k_prev[y]/(psi_prev); trivial (identity) for the first stage
    ResExtension from_prev;
    ResPoly psi_prev;
};

struct IndVal {
    FieldPtr F;
    std::vector<Stage> st;  // stage i is st[i-1]

    int size() const { return static_cast<int>(st.size()); }
    bool terminal() const { return !st.empty() && st.back().mu.is_inf(); }
    int last_finite() const { return terminal() ? size() - 1 : size(); }
    const Stage& stage(int i) const { return st.at(i - 1); }
    long E0() const;
};

// evaluate with all stages, or through stage i (i = 0 gives v on constants)
Val evaluate(const IndVal& V, const FPoly& g);
Val evaluate_at(const IndVal& V, int i, const FPoly& g);
// limit value at the final key: raises its key value until the m = 0 term wins
Val stabilized_evaluate(const IndVal& V, const FPoly& g);

// residual polynomial through stage i (default: last finite stage) at value gamma = V_i(g)
ResPoly residual_polynomial(const IndVal& V, const FPoly& g);
ResPoly residual_at(const IndVal& V, int i, const FPoly& g, const mpq_class& gamma);
const ResFieldPtr& residue_field_at(const IndVal& V, int i);

struct KeyCheck {
    bool key = false;
    bool same_class = false;  // same degree as the current key
    ResPoly psi;              // monic residual (empty for same class with constant residual)
};
KeyCheck is_key(const IndVal& V, const FPoly& phi);
FPoly lift_key(const IndVal& V, const ResPoly& psi);
// C with deg C < deg phi_i, value beta and residue kappa
FPoly lift_const(const IndVal& V, int i, const ResElem& kappa, const mpq_class& beta);
IndVal augment(const IndVal& V, const FPoly& phi, const Val& mu);
// first stage [v, V(z - a) = mu]
IndVal first_stage(const FieldPtr& F, const FE& a, const Val& mu);

// canonical monomial exponents (b_0 over Pi_F, b_1..b_i) with value gamma
std::vector<mpz_class> monomial_exps(const IndVal& V, int i, const mpq_class& gamma);
FPoly monomial_poly(const IndVal& V, const std::vector<mpz_class>& b);

struct ExtInvariants {
    int e = 1, f = 1;
};
ExtInvariants ext_invariants(const IndVal& V);

// approximants of a locally irreducible monic f; NotIrreducible otherwise
IndVal approximants(const FieldPtr& F, const FPoly& f);
IndVal approximants(const BaseField& K, const KPoly& f);
std::vector<IndVal> approximant_prefixes(const IndVal& V);

// Local factorization: one branch per irreducible factor over the completion.
struct Branch {
    IndVal chain;      // last stage carries a key of degree = branch degree
    int degree = 0;
    bool exact = false;  // last key is the exact factor (mu = inf)
    std::shared_ptr<const FPoly> f;  // the polynomial the branch belongs to
    int e() const;
    int fdeg() const;
};
// f squarefree (not necessarily monic); branches in a deterministic order
std::vector<Branch> om_branches(const FieldPtr& F, const FPoly& f);
// phi with coefficients shortened so that V_m(phi - result) >= N
FPoly truncate_key(const IndVal& V, int m, const FPoly& phi, const Val& N);
// raise the last key value of a non-exact branch to at least target
void refine(Branch& b, const Val& target);
// linear branch: current approximation of its root
FE branch_root(const Branch& b);
FPoly branch_key(const Branch& b);

// ---------------------------------------------------------------- field towers

struct Embedding {
    FieldPtr from, to;
    FE gen_image;  // image of from's generator
    FE map(const FE& a) const;
    FPoly map_poly(const FPoly& f) const;
};
Embedding identity_embedding(const FieldPtr& F);
Embedding compose(const Embedding& a, const Embedding& b);  // b after a

struct Adjoined {
    FieldPtr G;
    Embedding emb;  // F -> G
    FE root;        // root of the adjoined polynomial in G
};
// G = F(beta), P(beta) = 0; P monic over F and locally irreducible
Adjoined adjoin(const FieldPtr& F, const FPoly& P);
// c_i in F with z = sum_i c_i beta^i, i < [G:F]
std::vector<FE> coordinates(const Adjoined& A, const FE& z);
// Res_x(h(x), z - a(x)): characteristic polynomial of a over K, monic of degree [L:K]
KPoly char_poly(const FieldPtr& L, const FE& a);
// L over F with an element u of valuation t
struct WithValue {
    Adjoined ext;
    FE u;
};
WithValue ensure_value(const FieldPtr& F, const mpq_class& t);

std::string fpoly_str(const FieldPtr& F, const FPoly& f, const std::string& var = "z");

// stage-by-stage tracing controlled by MACLANE_LOG
int log_level();
void trace(int level, const std::string& msg);

}  // namespace maclane
