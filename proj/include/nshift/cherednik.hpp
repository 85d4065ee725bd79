#pragma once

#include <map>
#include <optional>

#include "nshift/galg.hpp"

namespace nshift {

/// Elements of S(h) are polynomials in the weight-basis vectors; evaluation
/// at a point x pairs each generator with x through the inner product.
using SPoly = MPoly;

Frac spoly_eval(const RootSystem& R, const SPoly& p, const FVec& x);

/// Inner product between a parameter-valued vector and a rational one.
Frac frac_inner(const RootSystem& R, const FVec& x, const RVec& y);

/// Dunkl-Cherednik operator T_xi(k).
GAElem dunkl_cherednik(const RootSystem& R, const RVec& xi, const Mult& k, const GAElem& f);

/// T_p(k) for p in S(h), using commutativity of the T_xi.
GAElem apply_poly_T(const RootSystem& R, const SPoly& p, const Mult& k, const GAElem& f);

/// Deterministic probe sequence for spectral separation.
RVec probe_vector(int rank, int index);

/// Weights mu <= lam under the full ordering, topologically sorted with
/// maximal elements first (lam itself leads).
std::vector<WeightVec> order_cone(const RootSystem& R, const WeightVec& lam);

/// Non-symmetric Heckman-Opdam polynomial E_lambda(k): the monic
/// T-eigenfunction supported on the cone {mu <= lambda}.
GAElem nonsym_E(const RootSystem& R, const WeightVec& lam, const Mult& k);

/// Memoized E-polynomials for one multiplicity.
class ECache {
  public:
    ECache(const RootSystem& R, Mult k) : R_(R), k_(std::move(k)) {}
    const GAElem& E(const WeightVec& lam);
    const Mult& mult() const { return k_; }

  private:
    const RootSystem& R_;
    Mult k_;
    std::map<WeightVec, GAElem> cache_;
};

/// Exact multiplicity substitution k -> k + dir*l on the coefficients;
/// turns E(k) into E(k + dir*l) without a second eigen-solve.
GAElem apply_mult_shift(const RootSystem& R, const GAElem& f, const LinearCharacter& eps,
                        int dir);

/// eps-symmetric polynomial P^(eps)_lambda(k) = |W_lambda|^{-1} U_eps E_lambda(k).
/// Returns the zero element and sets *flagged_zero when eps(W_lambda) != {1}.
GAElem sym_P(const RootSystem& R, const WeightVec& lam, const LinearCharacter& eps,
             const Mult& k, bool* flagged_zero = nullptr);

/// Orbit multiplicity alpha -> sign * eps(r_alpha) k(alpha).
Mult signed_mult(const RootSystem& R, const Mult& k, const LinearCharacter& eps, int sign = 1);

/// c^{pm}_k(w)(x) = prod over R0+ with w(alpha) in R0_{pm} of (1 + k0(alpha)/(x, alpha^vee)).
Frac c_function(const RootSystem& R, int sign, int w, const Mult& k, const FVec& x);

/// Coefficients of P^(eps)_lambda(k) in the E_mu(k) basis, mu in W lambda.
std::map<WeightVec, Frac> expand_P_in_E(const RootSystem& R, const WeightVec& lam,
                                        const LinearCharacter& eps, const Mult& k);

/// Checks the graded Hecke cross relation on the monomial window; returns
/// the first violating (lambda, simple index, basis index) or nullopt.
struct GradedHeckeViolation {
    WeightVec lam;
    int simple, basis;
};
std::optional<GradedHeckeViolation> verify_graded_hecke(const RootSystem& R, const Mult& k,
                                                        int height);

}  // namespace nshift
