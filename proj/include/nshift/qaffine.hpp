#pragma once

#include "nshift/galg.hpp"

namespace nshift {

enum class AffineCase { Case1A1, Case1A2, Case3C1 };

AffineCase parse_pair(const std::string& label);  // "case1:A1", "case3:C1vC1", ...
std::string pair_name(AffineCase c);

/// Affine root: gradient in the shared lattice basis plus a level.
struct AffRoot {
    WeightVec grad;
    Rat level;
};

/// Element of the extended affine Weyl group W0 x t(L'):
/// acts as x -> v x + t with t in L'.
struct AffElt {
    int v = 0;          // finite part, index into fin->weyl
    WeightVec trans;    // translation in the shared basis
};

/// Multiplicity per W_S-orbit, stored as exponent-linear forms so that
/// tau constants realize as Laurent monomials.
using QMult = std::vector<QExponent>;

/// Reduced decomposition of an extended affine element: a length-zero part
/// followed by simple reflections (applied right to left).
struct AffWord {
    AffElt omega;             // length-zero remainder
    std::vector<int> letters; // simple indices 0..n, leftmost first
};

class AffinePair {
  public:
    static const AffinePair& get(AffineCase c);

    AffineCase acase;
    std::string name;
    const RootSystem* fin;    // finite combinatorics: A1, A2, or BC1 (for (C1v,C1))
    int e = 1;                // <L, L'> = e^{-1} Z
    int num_orbits = 0;       // W_S-orbits of S
    ScalarCtx sctx;           // QPow context over (q_s, u_1..u_r)

    std::vector<AffRoot> simple;      // a_0 .. a_n (index 0 affine)
    std::vector<int> R_positive;      // fin-root indices of the pair's R_+
    std::vector<int> S0_positive;     // fin-root indices: positive level-zero S roots
    std::vector<int> S01_positive;    // subset with (grad,0) in S_1
    std::vector<int> S01p_positive;   // fin-root indices of positive level-zero S'_1 roots

    // Root/orbit structure of S.
    bool in_S(const AffRoot& a) const;
    int orbit_of(const AffRoot& a) const;      // -1 if not in S
    bool has_double(const AffRoot& a) const;   // 2a in S
    bool primed_has_double(int fin_root) const;  // 2a' in S' for level-zero a'

    QMult symbolic_mult() const;
    QMult rational_mult(const std::vector<Rat>& values) const;
    /// k(a) as an exponent form; zero when a (or its double) is absent.
    QExponent k_of(const QMult& k, const AffRoot& a) const;
    QExponent k_of_double(const QMult& k, const AffRoot& a) const;
    /// tau_{a,k} and tilde tau_{a,k} exponents: (k(a) +- k(2a))/2.
    QExponent tau_exp(const QMult& k, const AffRoot& a) const;
    QExponent tau_tilde_exp(const QMult& k, const AffRoot& a) const;

    /// Dual multiplicity on the level-zero primed roots (fin-root index).
    QExponent kprime_of(const QMult& k, int fin_root) const;
    QExponent kprime_of_double(const QMult& k, int fin_root) const;

    /// Shift multiplicity of a character: orbit-constant extension from S_0.
    std::vector<int> l_per_S_orbit(const LinearCharacter& eps) const;
    QMult shifted(const QMult& k, const LinearCharacter& eps, int dir) const;  // k + dir*l^
    WeightVec rho_tilde_l(const LinearCharacter& eps) const;
    QExponent k_dot_l(const QMult& k, const LinearCharacter& eps) const;

    /// rho_{k'} in the shared basis, coordinates as exponent forms.
    std::vector<QExponent> rho_kprime(const QMult& k) const;
    /// r_{k'}(mu) = mu - v(mu)^{-1} rho_{k'}.
    std::vector<QExponent> spectral_q(const WeightVec& mu, const QMult& k) const;
    /// <lam', x> for an exponent-vector x.
    QExponent pair_exp(const WeightVec& lamp, const std::vector<QExponent>& x) const;

    // Extended affine Weyl group machinery.
    AffElt identity() const { return AffElt{0, WeightVec(fin->rank, 0)}; }
    AffElt simple_refl(int i) const;
    AffElt compose(const AffElt& a, const AffElt& b) const;
    AffElt inverse(const AffElt& a) const;
    AffRoot root_action(const AffElt& g, const AffRoot& a) const;
    bool positive(const AffRoot& a) const;
    int length(const AffElt& g) const;
    AffWord reduced_word(const AffElt& g) const;
    AffElt translation(const WeightVec& lamp) const;

    /// Transposition action of an extended element on the group algebra:
    /// e^lam -> q^{-<v lam, t>} e^{v lam}.
    GAElem act_elt(const AffElt& g, const GAElem& f) const;

  private:
    AffinePair() = default;
    static AffinePair build(AffineCase c);
};

/// Demazure-Lusztig operator T_i (affine index, 0..n) in the basic
/// representation: T_i f = tau_i f + c_{a_i,k} (f^{s_i} - f).
GAElem dl_operator(const AffinePair& P, int i, const QMult& k, const GAElem& f);
GAElem dl_operator_inv(const AffinePair& P, int i, const QMult& k, const GAElem& f);

/// T(w) along a reduced word of a finite Weyl element (index into fin->weyl).
GAElem hecke_word(const AffinePair& P, int w, const QMult& k, const GAElem& f);

/// Cherednik operator Y^{lam'}; lam' in the shared basis.
GAElem y_operator(const AffinePair& P, const WeightVec& lamp, const QMult& k, const GAElem& f);
/// Y^{f'} for f' in K[L'] with e^{nu'} -> Y^{nu'}; and the inverse-substituted
/// variant e^{nu'} -> Y^{-nu'} used by projector-style operators.
GAElem y_poly(const AffinePair& P, const GAElem& fp, const QMult& k, const GAElem& f);
GAElem y_poly_inv(const AffinePair& P, const GAElem& fp, const QMult& k, const GAElem& f);

/// tau^{(eps)}_{w,k} as a scalar (product over a reduced word).
Frac tau_char_word(const AffinePair& P, const LinearCharacter& eps, int w, const QMult& k);
Frac tau_word(const AffinePair& P, int w, const QMult& k);

/// Hecke symmetrizer U_eps(k).
GAElem hecke_symmetrize(const AffinePair& P, const LinearCharacter& eps, const QMult& k,
                        const GAElem& f);

/// Poincare polynomial W_{0 lam}(tau_k^2).
Frac poincare_stab(const AffinePair& P, const WeightVec& lam, const QMult& k);

/// Non-symmetric Macdonald-Koornwinder polynomial (monic Y-eigenfunction).
GAElem nonsym_E_q(const AffinePair& P, const WeightVec& mu, const QMult& k);

class EQCache {
  public:
    EQCache(const AffinePair& P, QMult k) : P_(P), k_(std::move(k)) {}
    const GAElem& E(const WeightVec& mu);
    const QMult& mult() const { return k_; }

  private:
    const AffinePair& P_;
    QMult k_;
    std::map<WeightVec, GAElem> cache_;
};

/// Exact multiplicity substitution k -> k + dir*l^ on the coefficients.
GAElem apply_mult_shift_q(const AffinePair& P, const GAElem& f, const LinearCharacter& eps,
                          int dir);

/// eps-symmetric polynomial; zero with *flagged_zero set when eps(W_{0 lam}) != 1.
GAElem sym_P_q(const AffinePair& P, const WeightVec& lam, const LinearCharacter& eps,
               const QMult& k, bool* flagged_zero = nullptr);

/// q-c-function c^{pm}_{k'}(w)(x): product over level-zero primed roots; the
/// eps twist multiplies the dual multiplicity values by sgn * eps(r_{a'}).
Frac q_c_function(const AffinePair& P, int sign, int w, const QMult& k,
                  const LinearCharacter* twist, int twist_sign,
                  const std::vector<QExponent>& x);

/// Truncated constant-term pairing at rational multiplicities >= 0:
/// coefficient of e^0 in f g* Delta_{S,k}, through q_s-order M*2e.
Frac ct_q(const AffinePair& P, const GAElem& f, const GAElem& g, const QMult& k, int order);

}  // namespace nshift
