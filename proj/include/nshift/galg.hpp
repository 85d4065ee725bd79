#pragma once

#include <functional>
#include <map>

#include "nshift/weyl.hpp"

namespace nshift {

/// Element of a group algebra over a lattice: finite map weight -> scalar.
/// Works for C[P] in the differential case and K[L], K[L'] in the q-case;
/// the coefficient field is a Frac over the caller's ScalarCtx.
class GAElem {
  public:
    using Support = std::map<WeightVec, Frac>;

    GAElem() : rank_(0), nvars_(0) {}
    GAElem(int rank, int nvars) : rank_(rank), nvars_(nvars) {}
    static GAElem monomial(int rank, int nvars, const WeightVec& w, const Frac& c);
    static GAElem one(int rank, int nvars) {
        return monomial(rank, nvars, WeightVec(rank, 0), Frac::constant(nvars, Rat(1)));
    }

    int rank() const { return rank_; }
    int nvars() const { return nvars_; }
    const Support& support() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Frac coeff(const WeightVec& w) const;

    void add_term(const WeightVec& w, const Frac& c);

    GAElem operator-() const;
    GAElem& operator+=(const GAElem& o);
    GAElem& operator-=(const GAElem& o);
    friend GAElem operator+(GAElem a, const GAElem& b) { return a += b; }
    friend GAElem operator-(GAElem a, const GAElem& b) { return a -= b; }
    friend GAElem operator*(const GAElem& a, const GAElem& b);
    GAElem& operator*=(const GAElem& o) { return *this = *this * o; }
    GAElem scaled(const Frac& c) const;
    GAElem mul_monomial(const WeightVec& w, const Frac& c) const;

    friend bool operator==(const GAElem& a, const GAElem& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const GAElem& a, const GAElem& b) { return !(a == b); }

    /// e^w -> e^{-w} with coefficients unchanged (real star).
    GAElem star() const;
    /// Coefficient-wise map.
    GAElem map_coeffs(const std::function<Frac(const Frac&)>& f) const;

  private:
    int rank_, nvars_;
    Support coeffs_;
};

/// Exact division in the group algebra (Laurent); throws DivisionRemainder.
GAElem exact_divide(const GAElem& f, const GAElem& g);
/// Quiet variant for probing divisibility.
bool try_exact_divide(const GAElem& f, const GAElem& g, GAElem* quotient);

/// Transposition action: e^lam -> e^{w lam}.
GAElem act(const RootSystem& R, int w, const GAElem& f);

/// Weyl denominator for a character: prod over R0+ with l = 1 of
/// (e^{a/2} - e^{-a/2}); eps-skew under W.
GAElem weyl_denominator(const RootSystem& R, const LinearCharacter& eps, int nvars);

/// Plain symmetrizer U_eps(f) = sum_w eps(w) f^w.
GAElem plain_symmetrize(const RootSystem& R, const LinearCharacter& eps, const GAElem& f);

/// Constant-term pairing (f, g)_k at nonnegative-integer multiplicities:
/// coefficient of e^0 in f g* prod_{a in R}(1 - e^a)^{k(a)}.
Frac ct_pairing(const RootSystem& R, const GAElem& f, const GAElem& g, const Mult& k);

}  // namespace nshift
