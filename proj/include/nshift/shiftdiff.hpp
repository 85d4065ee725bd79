#pragma once

#include "nshift/cherednik.hpp"

namespace nshift {

/// Basis of the |W|-dimensional space of harmonic polynomials, computed
/// degree by degree as the kernel of the inner-product Laplacian.
std::vector<SPoly> harmonic_basis(const RootSystem& R);

/// pi = prod over R0+ of the linear forms (., alpha^vee).
SPoly pi_poly(const RootSystem& R);

/// Two-slot interpolation polynomial: sum_j q_j (x) u_j with
/// q(xi, w xi) = pi(xi) delta_{e,w}.
struct QPoly {
    std::vector<SPoly> q;
    std::vector<SPoly> u;
};
QPoly build_q_poly(const RootSystem& R);
QPoly build_q_poly_for_basis(const RootSystem& R, const std::vector<SPoly>& basis);

/// p composed with w: xi -> p(w xi).
SPoly spoly_compose_weyl(const RootSystem& R, const SPoly& p, int w);

/// Q_mu(m, k) f = sum_j q_j(r_m(mu)) T_{u_j}(k) f.
GAElem projector_Q(const RootSystem& R, const QPoly& qp, const WeightVec& mu, const Mult& m,
                   const Mult& k, const GAElem& f);

/// Genuine eps-forward/backward non-symmetric shift operator, realized by the
/// contraction sum_j T_{u_j}(k +- l) ( Delta^{-+} U_{eps,+-} T_{q_j}(k) f ).
GAElem nonsym_shift_apply(const RootSystem& R, const QPoly& qp, const LinearCharacter& eps,
                          int dir, const Mult& k, const GAElem& f);

/// Monomial-image cache for the (linear) genuine shift operator.
class NonsymShiftOp {
  public:
    NonsymShiftOp(const RootSystem& R, QPoly qp, const LinearCharacter& eps, int dir, Mult k)
        : R_(R), qp_(std::move(qp)), eps_(eps), dir_(dir), k_(std::move(k)) {}
    GAElem apply(const GAElem& f);

  private:
    const RootSystem& R_;
    QPoly qp_;
    const LinearCharacter& eps_;
    int dir_;
    Mult k_;
    std::map<WeightVec, GAElem> images_;
};

/// Shift factor, c-function form.
Frac shift_factor_cfun(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                       int dir, const Mult& k);
/// Shift factor, product form.
Frac shift_factor_product(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                          int dir, const Mult& k);

/// Symmetric forward shift operator on W-invariants, via exact division of
/// the eps-skew image of the T-product.
GAElem sym_shift_apply(const RootSystem& R, const LinearCharacter& eps, const Mult& k,
                       const GAElem& f);
/// h^(eps)_+(lambda, k) = prod over l(a)=1 of ((lambda+rho_k, a^vee) - k0(a)).
Frac sym_shift_h(const RootSystem& R, const WeightVec& lam, const LinearCharacter& eps,
                 const Mult& k);

/// L2-norm ratio ||E_mu(k)||^2 / ||E_{mu_{eps,-}}(k-l)||^2 as the rational
/// factor ratio; lambda_+ must be regular.
Frac norm_ratio(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                const Mult& k);

/// Adjointness of the pair (G_+(k), G_-(k+l)) on the monomial window under
/// the ct pairing; k and k+l must be nonnegative integers.
bool adjoint_check(const RootSystem& R, const LinearCharacter& eps, const Mult& k, int height);

/// Experimental probe for the fundamental-shift-operator decomposition: on
/// the window, H(mu,k)/varpi(mu,k) must be polynomial in k.
bool fundamental_probe(const RootSystem& R, const LinearCharacter& eps, int dir, int height);

}  // namespace nshift
