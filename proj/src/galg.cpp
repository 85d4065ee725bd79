#include "nshift/galg.hpp"

#include <cassert>
#include <functional>

#include "nshift/errors.hpp"

namespace nshift {

GAElem GAElem::monomial(int rank, int nvars, const WeightVec& w, const Frac& c) {
    GAElem e(rank, nvars);
    if (!c.is_zero()) e.coeffs_.emplace(w, c);
    return e;
}

Frac GAElem::coeff(const WeightVec& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? Frac(nvars_) : it->second;
}

void GAElem::add_term(const WeightVec& w, const Frac& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(w);
    if (it == coeffs_.end()) {
        coeffs_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

GAElem GAElem::operator-() const {
    GAElem r(rank_, nvars_);
    for (const auto& [w, c] : coeffs_) r.coeffs_.emplace(w, -c);
    return r;
}

GAElem& GAElem::operator+=(const GAElem& o) {
    for (const auto& [w, c] : o.coeffs_) add_term(w, c);
    return *this;
}

GAElem& GAElem::operator-=(const GAElem& o) {
    for (const auto& [w, c] : o.coeffs_) add_term(w, -c);
    return *this;
}

GAElem operator*(const GAElem& a, const GAElem& b) {
    GAElem r(a.rank_, a.nvars_);
    WeightVec w(a.rank_);
    for (const auto& [wa, ca] : a.coeffs_) {
        for (const auto& [wb, cb] : b.coeffs_) {
            for (int i = 0; i < a.rank_; ++i) w[i] = wa[i] + wb[i];
            r.add_term(w, ca * cb);
        }
    }
    return r;
}

GAElem GAElem::scaled(const Frac& c) const {
    GAElem r(rank_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [w, cf] : coeffs_) r.add_term(w, cf * c);
    return r;
}

GAElem GAElem::mul_monomial(const WeightVec& shift, const Frac& c) const {
    GAElem r(rank_, nvars_);
    if (c.is_zero()) return r;
    WeightVec w(rank_);
    for (const auto& [wa, ca] : coeffs_) {
        for (int i = 0; i < rank_; ++i) w[i] = wa[i] + shift[i];
        r.coeffs_.emplace(w, ca * c);
    }
    return r;
}

GAElem GAElem::star() const {
    GAElem r(rank_, nvars_);
    for (const auto& [w, c] : coeffs_) {
        WeightVec neg(rank_);
        for (int i = 0; i < rank_; ++i) neg[i] = -w[i];
        r.coeffs_.emplace(std::move(neg), c);
    }
    return r;
}

GAElem GAElem::map_coeffs(const std::function<Frac(const Frac&)>& f) const {
    GAElem r(rank_, nvars_);
    for (const auto& [w, c] : coeffs_) r.add_term(w, f(c));
    return r;
}

bool try_exact_divide(const GAElem& f, const GAElem& g, GAElem* quotient) {
    if (g.is_zero()) throw DivisionByZero("group-algebra division by zero");
    *quotient = GAElem(f.rank(), f.nvars());
    if (f.is_zero()) return true;
    const int rank = f.rank();
    // Shift both to the origin corner; coordinate-wise minima are additive
    // under multiplication, so an exact quotient stays polynomial.
    auto min_corner = [&](const GAElem& x) {
        WeightVec m = x.support().begin()->first;
        for (const auto& [w, c] : x.support())
            for (int i = 0; i < rank; ++i) m[i] = std::min(m[i], w[i]);
        return m;
    };
    WeightVec mf = min_corner(f), mg = min_corner(g);
    GAElem rem = f, div = g;
    // rem, div get implicit shifts -mf, -mg; run lex-leading division.
    while (!rem.is_zero()) {
        const auto& [ef, cf] = *rem.support().rbegin();
        const auto& [eg, cg] = *div.support().rbegin();
        WeightVec q(rank);
        for (int i = 0; i < rank; ++i) {
            q[i] = ef[i] - eg[i];
            if (ef[i] - mf[i] < eg[i] - mg[i]) return false;  // not divisible at the corner
        }
        Frac c = cf / cg;
        quotient->add_term(q, c);
        rem -= div.mul_monomial(q, c);
    }
    return true;
}

GAElem exact_divide(const GAElem& f, const GAElem& g) {
    GAElem q;
    if (!try_exact_divide(f, g, &q))
        throw DivisionRemainder("group-algebra division leaves a remainder");
    return q;
}

GAElem act(const RootSystem& R, int w, const GAElem& f) {
    GAElem r(f.rank(), f.nvars());
    for (const auto& [wt, c] : f.support()) r.add_term(R.apply(w, wt), c);
    return r;
}

GAElem weyl_denominator(const RootSystem& R, const LinearCharacter& eps, int nvars) {
    // prod (e^{a/2} - e^{-a/2}) = e^{-rho_l} prod (e^a - 1).
    GAElem out = GAElem::one(R.rank, nvars);
    Frac one = Frac::constant(nvars, Rat(1));
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p] || eps.l_per_orbit[R.orbit_of[p]] != 1) continue;
        GAElem factor = GAElem::monomial(R.rank, nvars, R.roots[p], one);
        factor.add_term(WeightVec(R.rank, 0), -one);
        out *= factor;
    }
    WeightVec neg_rho(R.rank);
    for (int i = 0; i < R.rank; ++i) neg_rho[i] = -eps.rho_l[i];
    return out.mul_monomial(neg_rho, one);
}

GAElem plain_symmetrize(const RootSystem& R, const LinearCharacter& eps, const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& w : R.weyl) {
        GAElem img = act(R, w.index, f);
        if (eps.value_of_word(w.word) == 1)
            out += img;
        else
            out -= img;
    }
    return out;
}

Frac ct_pairing(const RootSystem& R, const GAElem& f, const GAElem& g, const Mult& k) {
    int nvars = f.nvars();
    GAElem weight = GAElem::one(R.rank, nvars);
    Frac one = Frac::constant(nvars, Rat(1));
    for (size_t r = 0; r < R.roots.size(); ++r) {
        const Frac& kr = R.k_of_root(k, (int)r);
        if (!kr.is_constant() || !kr.constant_value().is_integer() ||
            kr.constant_value().sign() < 0)
            throw NonIntegerMultiplicity("ct pairing needs nonnegative integer multiplicities");
        long e = kr.constant_value().num().get_si();
        GAElem factor = GAElem::one(R.rank, nvars);
        factor.add_term(R.roots[r], -one);
        for (long i = 0; i < e; ++i) weight *= factor;
    }
    GAElem prod = f * g.star() * weight;
    return prod.coeff(WeightVec(R.rank, 0));
}

}  // namespace nshift
