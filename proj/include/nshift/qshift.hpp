#pragma once

#include "nshift/qaffine.hpp"

namespace nshift {

/// Steinberg basis of K[L'] over its invariants together with the first-slot
/// trigonometric interpolation polynomials and the finite Weyl denominator
/// of S'_02.
struct SteinbergQPoly {
    std::vector<int> order;    // fin->weyl indices, identity first
    std::vector<GAElem> u;     // u_w = e^{w^{-1} lambda_w}
    std::vector<GAElem> q;     // first-slot polynomials
    GAElem varpi;              // prod over S'_02+ of (e^{b/2} - e^{-b/2})
    Frac det_unit;             // det(Uhat) / varpi^{|W0|/2}
};

std::vector<GAElem> steinberg_basis(const AffinePair& P);
SteinbergQPoly build_q_trigpoly(const AffinePair& P);

/// delta_{a,k} for a level-zero root (fin index); branch depends on 2a in S.
GAElem q_delta_single(const AffinePair& P, int fin_root, const QMult& k);
/// delta_{eps,k} over S_01+ with l(a) = 1.
GAElem q_delta_eps(const AffinePair& P, const LinearCharacter& eps, const QMult& k);
/// delta'_{eps,k'} over S'_01+ with l'(a') = 1 (element of K[L']).
GAElem q_delta_eps_primed(const AffinePair& P, const LinearCharacter& eps, const QMult& k);
/// Evaluation delta'_{eps, sign*k'}(x).
Frac q_delta_primed_eval(const AffinePair& P, const LinearCharacter& eps, int sign,
                         const QMult& k, const std::vector<QExponent>& x);

/// mu_{eps,dir} = vbar(mu) w_{0 lam} (lam - dir * rho~_l).
WeightVec mu_shifted_q(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                       int dir);
bool shift_condition_q(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                       int dir);

/// Symmetric forward q-shift operator delta^{-1}_{eps,k} delta'_{eps,k'}(Y(k)^{-1}).
GAElem q_sym_shift(const AffinePair& P, const LinearCharacter& eps, const QMult& k,
                   const GAElem& f);
/// h^(eps)_+(lam,k) = q^{k.l/2} delta'_{eps,-k'}(lam + rho_{k'}).
Frac q_sym_shift_h(const AffinePair& P, const WeightVec& lam, const LinearCharacter& eps,
                   const QMult& k);

enum class QSymVariant { Plain, Hecke };

/// Genuine eps-forward/backward non-symmetric q-shift operator via the
/// contraction over the Steinberg pairs.
GAElem q_nonsym_shift_apply(const AffinePair& P, const SteinbergQPoly& st,
                            const LinearCharacter& eps, int dir, const QMult& k,
                            const GAElem& f, QSymVariant variant);

/// Monomial-image cache for the (linear) genuine q-shift operator.
class QNonsymShiftOp {
  public:
    QNonsymShiftOp(const AffinePair& P, SteinbergQPoly st, const LinearCharacter& eps, int dir,
                   QMult k, QSymVariant variant)
        : P_(P), st_(std::move(st)), eps_(eps), dir_(dir), k_(std::move(k)), variant_(variant) {}
    GAElem apply(const GAElem& f);

  private:
    const AffinePair& P_;
    SteinbergQPoly st_;
    const LinearCharacter& eps_;
    int dir_;
    QMult k_;
    QSymVariant variant_;
    std::map<WeightVec, GAElem> images_;
};

/// Shift factor of the genuine operator.
Frac q_shift_factor(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                    int dir, const QMult& k);

}  // namespace nshift
