#include "nshift/qaffine.hpp"

#include <algorithm>
#include <cassert>

#include "nshift/cherednik.hpp"
#include "nshift/errors.hpp"

namespace nshift {

AffineCase parse_pair(const std::string& label) {
    if (label == "case1:A1") return AffineCase::Case1A1;
    if (label == "case1:A2") return AffineCase::Case1A2;
    if (label == "case3:C1vC1") return AffineCase::Case3C1;
    throw UnsupportedCase("unknown affine pair '" + label + "'");
}

std::string pair_name(AffineCase c) {
    switch (c) {
        case AffineCase::Case1A1: return "case1:A1";
        case AffineCase::Case1A2: return "case1:A2";
        case AffineCase::Case3C1: return "case3:C1vC1";
    }
    return "?";
}

namespace {

Rat dot_gram(const RootSystem& fin, const WeightVec& x, const WeightVec& y) {
    return fin.inner(x, y);
}

}  // namespace

bool AffinePair::in_S(const AffRoot& a) const {
    int idx = fin->root_index(a.grad);
    if (acase == AffineCase::Case3C1) {
        if (idx < 0) return false;
        bool short_type = a.grad[0] == 1 || a.grad[0] == -1;
        if (short_type) return (a.level * Rat(2)).is_integer();
        return a.level.is_integer();
    }
    // Case 1: S(R) with integer levels on all roots.
    return idx >= 0 && a.level.is_integer();
}

int AffinePair::orbit_of(const AffRoot& a) const {
    if (!in_S(a)) return -1;
    if (acase != AffineCase::Case3C1) return 0;
    bool short_type = a.grad[0] == 1 || a.grad[0] == -1;
    if (short_type) return a.level.is_integer() ? 0 : 2;
    Rat half = a.level / Rat(2);
    return half.is_integer() ? 1 : 3;
}

bool AffinePair::has_double(const AffRoot& a) const {
    AffRoot d{a.grad, a.level * Rat(2)};
    for (auto& x : d.grad) x *= 2;
    return in_S(d);
}

bool AffinePair::primed_has_double(int fin_root) const {
    if (acase != AffineCase::Case3C1) return false;
    const WeightVec& g = fin->roots[fin_root];
    return g[0] == 1 || g[0] == -1;  // 2 eps is again in S' = S
}

QMult AffinePair::symbolic_mult() const {
    QMult k;
    for (int i = 0; i < num_orbits; ++i) k.push_back(QExponent::of_k(num_orbits, i, Rat(1)));
    return k;
}

QMult AffinePair::rational_mult(const std::vector<Rat>& values) const {
    assert((int)values.size() == num_orbits);
    QMult k;
    for (const auto& v : values) k.push_back(QExponent::of_pure(num_orbits, v));
    return k;
}

QExponent AffinePair::k_of(const QMult& k, const AffRoot& a) const {
    int orb = orbit_of(a);
    return orb < 0 ? QExponent(num_orbits) : k[orb];
}

QExponent AffinePair::k_of_double(const QMult& k, const AffRoot& a) const {
    AffRoot d{a.grad, a.level * Rat(2)};
    for (auto& x : d.grad) x *= 2;
    return k_of(k, d);
}

QExponent AffinePair::tau_exp(const QMult& k, const AffRoot& a) const {
    return (k_of(k, a) + k_of_double(k, a)).scaled(Rat(1, 2));
}

QExponent AffinePair::tau_tilde_exp(const QMult& k, const AffRoot& a) const {
    return (k_of(k, a) - k_of_double(k, a)).scaled(Rat(1, 2));
}

QExponent AffinePair::kprime_of(const QMult& k, int fin_root) const {
    if (acase != AffineCase::Case3C1) {
        // Self-dual orbit data: k'(a') = k(a).
        return k_of(k, AffRoot{fin->roots[fin_root], Rat(0)});
    }
    const WeightVec& g = fin->roots[fin_root];
    bool short_type = g[0] == 1 || g[0] == -1;
    if (short_type)  // k'_1 = (k1+k2+k3+k4)/2
        return (k[0] + k[1] + k[2] + k[3]).scaled(Rat(1, 2));
    return (k[0] + k[1] - k[2] - k[3]).scaled(Rat(1, 2));  // k'_2
}

QExponent AffinePair::kprime_of_double(const QMult& k, int fin_root) const {
    if (!primed_has_double(fin_root)) return QExponent(num_orbits);
    return (k[0] + k[1] - k[2] - k[3]).scaled(Rat(1, 2));
}

std::vector<int> AffinePair::l_per_S_orbit(const LinearCharacter& eps) const {
    std::vector<int> l(num_orbits, 0);
    for (int p : S0_positive) {
        AffRoot a{fin->roots[p], Rat(0)};
        int refl = fin->reflection_of_root[p];
        if (eps.value_of_word(fin->weyl[refl].word) == -1) l[orbit_of(a)] = 1;
    }
    return l;
}

QMult AffinePair::shifted(const QMult& k, const LinearCharacter& eps, int dir) const {
    auto l = l_per_S_orbit(eps);
    QMult out = k;
    for (int i = 0; i < num_orbits; ++i)
        out[i] += QExponent::of_pure(num_orbits, Rat(dir * l[i]));
    return out;
}

WeightVec AffinePair::rho_tilde_l(const LinearCharacter& eps) const {
    auto l = l_per_S_orbit(eps);
    std::vector<Rat> acc(fin->rank, Rat(0));
    for (int p : S01_positive) {
        AffRoot a{fin->roots[p], Rat(0)};
        if (l[orbit_of(a)] != 1) continue;
        int ua = has_double(a) ? 2 : 1;
        for (int i = 0; i < fin->rank; ++i) acc[i] += Rat(ua * fin->roots[p][i], 2);
    }
    WeightVec out(fin->rank);
    for (int i = 0; i < fin->rank; ++i) {
        if (!acc[i].is_integer())
            throw HalfWeightNotInLattice("rho~_l not integral on " + name);
        out[i] = (int)acc[i].num().get_si();
    }
    return out;
}

QExponent AffinePair::k_dot_l(const QMult& k, const LinearCharacter& eps) const {
    auto l = l_per_S_orbit(eps);
    QExponent out(num_orbits);
    for (int p : S0_positive) {
        AffRoot a{fin->roots[p], Rat(0)};
        if (l[orbit_of(a)] == 1) out += k[orbit_of(a)];
    }
    return out;
}

std::vector<QExponent> AffinePair::rho_kprime(const QMult& k) const {
    std::vector<QExponent> out(fin->rank, QExponent(num_orbits));
    for (int p : R_positive) {
        // coroot of roots[p] is again a level-zero primed root
        Rat scale = Rat(2) / fin->inner(fin->roots[p], fin->roots[p]);
        WeightVec covec(fin->rank);
        bool ok = true;
        for (int i = 0; i < fin->rank; ++i) {
            Rat c = scale * Rat(fin->roots[p][i]);
            if (!c.is_integer()) ok = false;
            covec[i] = ok ? (int)c.num().get_si() : 0;
        }
        assert(ok);
        int cidx = fin->root_index(covec);
        assert(cidx >= 0);
        QExponent kp = kprime_of(k, cidx);
        for (int i = 0; i < fin->rank; ++i)
            out[i] += kp.scaled(Rat(fin->roots[p][i], 2));
    }
    return out;
}

std::vector<QExponent> AffinePair::spectral_q(const WeightVec& mu, const QMult& k) const {
    auto d = fin->decompose(mu);
    int vinv = fin->inverse_of[d.v];
    auto rho = rho_kprime(k);
    std::vector<QExponent> out(fin->rank, QExponent(num_orbits));
    const auto& m = fin->weyl[vinv].mat;
    for (int i = 0; i < fin->rank; ++i) {
        out[i] = QExponent::of_pure(num_orbits, Rat(mu[i]));
        for (int j = 0; j < fin->rank; ++j)
            if (m[i][j] != 0) out[i] -= rho[j].scaled(Rat(m[i][j]));
    }
    return out;
}

QExponent AffinePair::pair_exp(const WeightVec& lamp, const std::vector<QExponent>& x) const {
    QExponent out(num_orbits);
    for (int i = 0; i < fin->rank; ++i) {
        Rat gi(0);
        for (int j = 0; j < fin->rank; ++j) gi += fin->gram[i][j] * Rat(lamp[j]);
        if (!gi.is_zero()) out += x[i].scaled(gi);
    }
    return out;
}

AffElt AffinePair::simple_refl(int i) const {
    const AffRoot& a = simple[i];
    int idx = fin->root_index(a.grad);
    AffElt g;
    g.v = fin->reflection_of_root[idx];
    Rat scale = Rat(2) / fin->inner(a.grad, a.grad);
    g.trans.assign(fin->rank, 0);
    for (int j = 0; j < fin->rank; ++j) {
        Rat t = -a.level * scale * Rat(a.grad[j]);
        assert(t.is_integer());
        g.trans[j] = (int)t.num().get_si();
    }
    return g;
}

AffElt AffinePair::compose(const AffElt& a, const AffElt& b) const {
    AffElt g;
    g.v = fin->product[a.v][b.v];
    WeightVec vt = fin->apply(a.v, b.trans);
    g.trans.resize(fin->rank);
    for (int i = 0; i < fin->rank; ++i) g.trans[i] = vt[i] + a.trans[i];
    return g;
}

AffElt AffinePair::inverse(const AffElt& a) const {
    AffElt g;
    g.v = fin->inverse_of[a.v];
    WeightVec vt = fin->apply(g.v, a.trans);
    g.trans.resize(fin->rank);
    for (int i = 0; i < fin->rank; ++i) g.trans[i] = -vt[i];
    return g;
}

AffRoot AffinePair::root_action(const AffElt& g, const AffRoot& a) const {
    AffRoot out;
    out.grad = fin->apply(g.v, a.grad);
    out.level = a.level - dot_gram(*fin, out.grad, g.trans);
    return out;
}

bool AffinePair::positive(const AffRoot& a) const {
    if (!a.level.is_zero()) return a.level > Rat(0);
    return fin->root_index(a.grad) < fin->num_positive;
}

int AffinePair::length(const AffElt& g) const {
    // Count positive S_1 roots sent to negatives; only levels up to the
    // translation size can flip.
    int count = 0;
    Rat bound(1);
    for (int p : S01_positive) {
        Rat b = dot_gram(*fin, fin->roots[p], g.trans).abs() + Rat(2);
        if (b > bound) bound = b;
    }
    for (int p : S01_positive) {
        for (int s : {+1, -1}) {
            WeightVec grad = fin->roots[p];
            for (auto& x : grad) x *= s;
            Rat step = acase == AffineCase::Case3C1 ? Rat(1, 2) : Rat(1);
            Rat lv = s > 0 ? Rat(0) : step;
            for (; lv <= bound; lv += step) {
                AffRoot a{grad, lv};
                if (!positive(root_action(g, a))) ++count;
            }
        }
    }
    return count;
}

AffWord AffinePair::reduced_word(const AffElt& g) const {
    AffWord w;
    AffElt cur = g;
    std::vector<int> rev;
    while (true) {
        int drop = -1;
        for (size_t i = 0; i < simple.size(); ++i) {
            if (!positive(root_action(cur, simple[i]))) {
                drop = (int)i;
                break;
            }
        }
        if (drop < 0) break;
        cur = compose(cur, simple_refl(drop));
        rev.push_back(drop);
        assert(rev.size() < 4096);
    }
    w.omega = cur;
    w.letters.assign(rev.rbegin(), rev.rend());
    return w;
}

AffElt AffinePair::translation(const WeightVec& lamp) const {
    return AffElt{0, lamp};
}

GAElem AffinePair::act_elt(const AffElt& g, const GAElem& f) const {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [lam, c] : f.support()) {
        WeightVec vl = fin->apply(g.v, lam);
        Rat shift = -dot_gram(*fin, vl, g.trans);
        Frac coeff = c;
        if (!shift.is_zero())
            coeff *= q_power(sctx, QExponent::of_pure(num_orbits, shift));
        out.add_term(vl, coeff);
    }
    return out;
}

AffinePair AffinePair::build(AffineCase c) {
    AffinePair P;
    P.acase = c;
    P.name = pair_name(c);
    switch (c) {
        case AffineCase::Case1A1: {
            P.fin = &RootSystem::get(RootType::A1);
            P.e = 2;
            P.num_orbits = 1;
            P.simple = {AffRoot{{-2}, Rat(1)}, AffRoot{{2}, Rat(0)}};
            P.R_positive = {0};
            P.S0_positive = {0};
            P.S01_positive = {0};
            P.S01p_positive = {0};
            break;
        }
        case AffineCase::Case1A2: {
            P.fin = &RootSystem::get(RootType::A2);
            P.e = 3;
            P.num_orbits = 1;
            P.simple = {AffRoot{{-1, -1}, Rat(1)}, AffRoot{{2, -1}, Rat(0)},
                        AffRoot{{-1, 2}, Rat(0)}};
            P.R_positive = {0, 1, 2};
            P.S0_positive = {0, 1, 2};
            P.S01_positive = {0, 1, 2};
            P.S01p_positive = {0, 1, 2};
            break;
        }
        case AffineCase::Case3C1: {
            P.fin = &RootSystem::get(RootType::BC1);
            P.e = 1;
            P.num_orbits = 4;
            P.simple = {AffRoot{{-1}, Rat(1, 2)}, AffRoot{{1}, Rat(0)}};
            P.R_positive = {1};       // R = C1 = {2e}
            P.S0_positive = {0, 1};   // e and 2e at level zero
            P.S01_positive = {0};     // only e lies in S_1
            P.S01p_positive = {0};
            break;
        }
    }
    P.sctx = ScalarCtx::qpow(P.num_orbits, P.e);
    return P;
}

const AffinePair& AffinePair::get(AffineCase c) {
    static const AffinePair a1 = build(AffineCase::Case1A1);
    static const AffinePair a2 = build(AffineCase::Case1A2);
    static const AffinePair c1 = build(AffineCase::Case3C1);
    switch (c) {
        case AffineCase::Case1A1: return a1;
        case AffineCase::Case1A2: return a2;
        case AffineCase::Case3C1: return c1;
    }
    throw UnsupportedCase("pair");
}

// ---------------------------------------------------------------------------
// Basic representation

GAElem dl_operator(const AffinePair& P, int i, const QMult& k, const GAElem& f) {
    const int nv = P.sctx.nvars;
    const AffRoot& a = P.simple[i];
    Frac tau = q_power(P.sctx, P.tau_exp(k, a));
    Frac ttil = q_power(P.sctx, P.tau_tilde_exp(k, a));
    Frac qlv = q_power(P.sctx, QExponent::of_pure(P.num_orbits, a.level));
    GAElem ea = GAElem::monomial(f.rank(), nv, a.grad, qlv);
    GAElem one = GAElem::one(f.rank(), nv);
    GAElem n1 = one - ea.scaled(tau * ttil);
    GAElem n2 = one + ea.scaled(tau / ttil);
    GAElem den = (one - ea * ea).scaled(tau);
    GAElem fs = P.act_elt(P.simple_refl(i), f);
    GAElem diff = fs - f;
    if (diff.is_zero()) return f.scaled(tau);
    GAElem quot;
    if (!try_exact_divide(n1 * n2 * diff, den, &quot))
        throw NonCancellingDenominator("Demazure-Lusztig prefactor left a remainder");
    return f.scaled(tau) + quot;
}

GAElem dl_operator_inv(const AffinePair& P, int i, const QMult& k, const GAElem& f) {
    Frac tau = q_power(P.sctx, P.tau_exp(k, P.simple[i]));
    return dl_operator(P, i, k, f) - f.scaled(tau - tau.inv());
}

GAElem hecke_word(const AffinePair& P, int w, const QMult& k, const GAElem& f) {
    const auto& word = P.fin->weyl[w].word;
    GAElem out = f;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        out = dl_operator(P, *it + 1, k, out);
    return out;
}

GAElem y_operator(const AffinePair& P, const WeightVec& lamp, const QMult& k, const GAElem& f) {
    WeightVec mup(P.fin->rank), nup(P.fin->rank);
    for (int i = 0; i < P.fin->rank; ++i) {
        mup[i] = std::max(lamp[i], 0);
        nup[i] = mup[i] - lamp[i];
    }
    assert(P.fin->is_dominant(mup) && P.fin->is_dominant(nup));
    AffWord wn = P.reduced_word(P.translation(nup));
    AffWord wm = P.reduced_word(P.translation(mup));
    // T(t(nu'))^{-1} = T_{last}^{-1} ... T_{first}^{-1} T(omega^{-1})
    GAElem out = P.act_elt(P.inverse(wn.omega), f);
    for (int letter : wn.letters) out = dl_operator_inv(P, letter, k, out);
    // then T(t(mu')) = T(omega) T_{first} ... T_{last}
    for (auto it = wm.letters.rbegin(); it != wm.letters.rend(); ++it)
        out = dl_operator(P, *it, k, out);
    return P.act_elt(wm.omega, out);
}

GAElem y_poly(const AffinePair& P, const GAElem& fp, const QMult& k, const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [nu, c] : fp.support()) out += y_operator(P, nu, k, f).scaled(c);
    return out;
}

GAElem y_poly_inv(const AffinePair& P, const GAElem& fp, const QMult& k, const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [nu, c] : fp.support()) {
        WeightVec neg(nu.size());
        for (size_t i = 0; i < nu.size(); ++i) neg[i] = -nu[i];
        out += y_operator(P, neg, k, f).scaled(c);
    }
    return out;
}

Frac tau_char_word(const AffinePair& P, const LinearCharacter& eps, int w, const QMult& k) {
    Frac out = Frac::constant(P.sctx.nvars, Rat(1));
    for (int s : P.fin->weyl[w].word) {
        Frac tau = q_power(P.sctx, P.tau_exp(k, P.simple[s + 1]));
        out *= eps.on_simple[s] == 1 ? tau : -tau.inv();
    }
    return out;
}

Frac tau_word(const AffinePair& P, int w, const QMult& k) {
    Frac out = Frac::constant(P.sctx.nvars, Rat(1));
    for (int s : P.fin->weyl[w].word)
        out *= q_power(P.sctx, P.tau_exp(k, P.simple[s + 1]));
    return out;
}

GAElem hecke_symmetrize(const AffinePair& P, const LinearCharacter& eps, const QMult& k,
                        const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& w : P.fin->weyl)
        out += hecke_word(P, w.index, k, f).scaled(tau_char_word(P, eps, w.index, k));
    Frac pre = tau_char_word(P, eps, P.fin->longest, k).inv();
    if (eps.value_of_word(P.fin->weyl[P.fin->longest].word) == -1) pre = -pre;
    return out.scaled(pre);
}

Frac poincare_stab(const AffinePair& P, const WeightVec& lam, const QMult& k) {
    auto d = P.fin->decompose(lam);
    Frac out(P.sctx.nvars);
    for (int s : d.stabilizer) {
        Frac t = tau_word(P, s, k);
        out += t * t;
    }
    return out;
}

GAElem nonsym_E_q(const AffinePair& P, const WeightVec& mu, const QMult& k) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    std::vector<WeightVec> cone = order_cone(fin, mu);
    assert(cone.front() == mu);
    auto x_top = P.spectral_q(mu, k);
    std::vector<std::vector<QExponent>> spectra;
    for (const auto& nu : cone) spectra.push_back(P.spectral_q(nu, k));
    for (size_t i = 1; i < cone.size(); ++i) {
        bool equal = true;
        for (int d = 0; d < fin.rank; ++d)
            if (!(spectra[i][d] == x_top[d])) equal = false;
        if (equal) throw ResonantSpectrum("q-spectrum collision below weight on " + P.name);
    }
    // Probe lattice vector from the deterministic sequence.
    WeightVec probe;
    std::vector<Frac> gaps(cone.size(), Frac(nv));
    bool found = false;
    for (int pi = 0; pi < 64 && !found; ++pi) {
        RVec pr = probe_vector(fin.rank, pi);
        probe.assign(fin.rank, 0);
        for (int i = 0; i < fin.rank; ++i) probe[i] = (int)pr[i].num().get_si();
        found = true;
        for (size_t i = 0; i < cone.size(); ++i) {
            QExponent et = -P.pair_exp(probe, x_top);
            QExponent ei = -P.pair_exp(probe, spectra[i]);
            gaps[i] = q_power(P.sctx, et) - q_power(P.sctx, ei);
            if (i > 0 && gaps[i].is_zero()) {
                found = false;
                break;
            }
        }
    }
    if (!found) throw ProbeNotSeparating("no separating q-probe on " + P.name);
    std::vector<GAElem> ycol;
    for (const auto& nu : cone)
        ycol.push_back(y_operator(P, probe, k,
                                  GAElem::monomial(fin.rank, nv, nu,
                                                   Frac::constant(nv, Rat(1)))));
    std::vector<Frac> u(cone.size(), Frac(nv));
    u[0] = Frac::constant(nv, Rat(1));
    for (size_t i = 1; i < cone.size(); ++i) {
        Frac acc(nv);
        for (size_t j = 0; j < i; ++j) {
            if (u[j].is_zero()) continue;
            Frac t = ycol[j].coeff(cone[i]);
            if (!t.is_zero()) acc += u[j] * t;
        }
        u[i] = acc / gaps[i];
    }
    GAElem out(fin.rank, nv);
    for (size_t i = 0; i < cone.size(); ++i) out.add_term(cone[i], u[i]);
    return out;
}

const GAElem& EQCache::E(const WeightVec& mu) {
    auto it = cache_.find(mu);
    if (it == cache_.end()) it = cache_.emplace(mu, nonsym_E_q(P_, mu, k_)).first;
    return it->second;
}

GAElem apply_mult_shift_q(const AffinePair& P, const GAElem& f, const LinearCharacter& eps,
                          int dir) {
    auto l = P.l_per_S_orbit(eps);
    std::vector<int> shifts(P.sctx.nvars, 0);
    for (int i = 0; i < P.num_orbits; ++i) shifts[1 + i] = dir * l[i] * P.e;
    return f.map_coeffs([&](const Frac& c) { return c.twist_qpow(shifts); });
}

GAElem sym_P_q(const AffinePair& P, const WeightVec& lam, const LinearCharacter& eps,
               const QMult& k, bool* flagged_zero) {
    assert(P.fin->is_dominant(lam));
    auto d = P.fin->decompose(lam);
    if (flagged_zero) *flagged_zero = false;
    for (int s : d.stabilizer) {
        if (eps.value_of_word(P.fin->weyl[s].word) != 1) {
            if (flagged_zero) *flagged_zero = true;
            return GAElem(P.fin->rank, P.sctx.nvars);
        }
    }
    GAElem u = hecke_symmetrize(P, eps, k, nonsym_E_q(P, lam, k));
    return u.scaled(tau_word(P, P.fin->longest, k) / poincare_stab(P, lam, k));
}

Frac q_c_function(const AffinePair& P, int sign, int w, const QMult& k,
                  const LinearCharacter* twist, int twist_sign,
                  const std::vector<QExponent>& x) {
    const auto& fin = *P.fin;
    Frac out = Frac::constant(P.sctx.nvars, Rat(1));
    for (int p : P.S01p_positive) {
        int im = fin.root_index(fin.apply(w, fin.roots[p]));
        bool flips = im >= fin.num_positive;
        if ((sign < 0) != flips) continue;
        int s = twist_sign;
        if (twist) s *= twist->value_of_word(fin.weyl[fin.reflection_of_root[p]].word);
        QExponent kp = P.kprime_of(k, p).scaled(Rat(s));
        QExponent kp2 = P.kprime_of_double(k, p).scaled(Rat(s));
        Frac taup = q_power(P.sctx, (kp + kp2).scaled(Rat(1, 2)));
        Frac ttilp = q_power(P.sctx, (kp - kp2).scaled(Rat(1, 2)));
        Frac z = q_power(P.sctx, P.pair_exp(fin.roots[p], x));
        Frac one = Frac::constant(P.sctx.nvars, Rat(1));
        Frac den = taup * (one - z * z);
        if (den.is_zero()) throw PoleAtEvaluation("q-c-function pole");
        out *= (one - taup * ttilp * z) * (one + (taup / ttilp) * z) / den;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated constant term

namespace {

// Truncated q_s-series are carried as Frac values whose denominator is a
// pure q_s power. At rational multiplicities no u-variables appear.
Frac truncate_qs(const Frac& f, int cut) {
    if (f.is_zero()) return f;
    assert(f.den().is_monomial());
    int shift = f.den().leading_expt()[0];
    MPoly num(f.num().nvars());
    for (const auto& [e, c] : f.num().terms()) {
        if (e[0] - shift <= cut) num.add_term(e, c);
    }
    return Frac(num, f.den());
}

GAElem truncate_qs(const GAElem& f, int cut) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [w, c] : f.support()) out.add_term(w, truncate_qs(c, cut));
    return out;
}

// q_s-order of a monomial Frac.
int qs_order(const Frac& f) {
    assert(f.is_monomial());
    return f.num().leading_expt()[0] - f.den().leading_expt()[0];
}

// Formal q_s-expansion of a rational function through the cutoff.
Frac series_of(const Frac& f, int cut) {
    if (f.is_zero() || f.den().is_monomial()) return truncate_qs(f, cut);
    const int nv = f.num().nvars();
    // den = c0 q_s^a (1 + d) with ord(d) > 0.
    int a = f.den().terms().begin()->first[0];
    for (const auto& [e, c] : f.den().terms()) a = std::min(a, (int)e[0]);
    MPoly d(nv);
    Rat c0(0);
    for (const auto& [e, c] : f.den().terms()) {
        Expt e2 = e;
        e2[0] -= a;
        bool iszero = true;
        for (int i = 0; i < nv; ++i) iszero = iszero && e2[i] == 0;
        if (iszero)
            c0 = c;
        else
            d.add_term(e2, c);
    }
    assert(!c0.is_zero());
    d.scale(Rat(1) / c0);
    // inverse of (1 + d), truncated
    MPoly inv = MPoly::constant(nv, Rat(1));
    MPoly pow = MPoly::constant(nv, Rat(1));
    int dord = d.terms().begin()->first[0];
    for (const auto& [e, c] : d.terms()) dord = std::min(dord, (int)e[0]);
    assert(dord > 0);
    auto chop = [&](const MPoly& p) {
        MPoly out(nv);
        for (const auto& [e, c] : p.terms())
            if (e[0] <= cut + std::abs(a)) out.add_term(e, c);
        return out;
    };
    for (int m = 1; m * dord <= cut + std::abs(a); ++m) {
        pow = chop(pow * d);
        if (m % 2 == 1)
            inv -= pow;
        else
            inv += pow;
    }
    Frac expanded(chop(f.num() * inv).scaled(Rat(1) / c0),
                  MPoly::variable(nv, 0, 0));
    // divide by q_s^a
    Frac qa = a >= 0 ? Frac(MPoly::constant(nv, Rat(1)), MPoly::variable(nv, 0, a))
                     : Frac::of(MPoly::variable(nv, 0, -a));
    return truncate_qs(expanded * qa, cut);
}

}  // namespace

Frac ct_q(const AffinePair& P, const GAElem& f, const GAElem& g, const QMult& k, int order) {
    const int nv = P.sctx.nvars;
    const auto& fin = *P.fin;
    for (const auto& ke : k)
        for (const auto& kc : ke.kcoeff)
            if (!kc.is_zero())
                throw NonIntegerMultiplicity("ct_q needs rational multiplicities");
    const int cut = order * P.sctx.two_e;
    Frac one = Frac::constant(nv, Rat(1));
    GAElem weight = GAElem::one(fin.rank, nv);
    // Positive roots of S_1 by increasing level; levels beyond the cutoff
    // contribute only 1.
    Rat step = P.acase == AffineCase::Case3C1 ? Rat(1, 2) : Rat(1);
    for (int p : P.S01_positive) {
        for (int s : {+1, -1}) {
            WeightVec grad = fin.roots[p];
            for (auto& x : grad) x *= s;
            for (Rat lv = (s > 0 ? Rat(0) : step); lv <= Rat(order + 1); lv += step) {
                AffRoot a{grad, lv};
                Frac tau = q_power(P.sctx, P.tau_exp(k, a));
                Frac ttil = q_power(P.sctx, P.tau_tilde_exp(k, a));
                Frac qlv = q_power(P.sctx, QExponent::of_pure(P.num_orbits, lv));
                // factor (1 - e^{2a}) / ((1 - tau ttil e^a)(1 + tau/ttil e^a))
                GAElem num = GAElem::one(fin.rank, nv);
                WeightVec g2(grad);
                for (auto& x : g2) x *= 2;
                num.add_term(g2, -(qlv * qlv));
                GAElem acc = num;
                std::vector<Frac> ratios = {tau * ttil * qlv, -(tau / ttil) * qlv};
                if (qs_order(ratios[1]) < qs_order(ratios[0])) std::swap(ratios[0], ratios[1]);
                for (const Frac& ratio : ratios) {
                    // divide by (1 - ratio e^{grad}) as a truncated series
                    if (ratio.is_zero()) continue;
                    int ord = qs_order(ratio);
                    if (ord <= 0) {
                        // exact cancellation against the numerator
                        GAElem den = GAElem::one(fin.rank, nv);
                        den.add_term(grad, -ratio);
                        acc = exact_divide(acc, den);
                    } else {
                        GAElem series = GAElem::one(fin.rank, nv);
                        Frac pow = ratio;
                        WeightVec wgt(grad);
                        for (int m = 1; m * ord <= cut; ++m) {
                            series.add_term(wgt, pow);
                            pow *= ratio;
                            for (size_t ii = 0; ii < wgt.size(); ++ii) wgt[ii] += grad[ii];
                        }
                        acc = truncate_qs(acc * series, cut);
                    }
                }
                weight = truncate_qs(weight * acc, cut);
            }
        }
    }
    // g*: exponent inversion plus q_s -> q_s^{-1}, u -> u^{-1} on coefficients.
    GAElem gstar(fin.rank, nv);
    for (const auto& [w, c] : g.support()) {
        WeightVec neg(w.size());
        for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
        auto reflect = [&](const MPoly& p) {
            MPoly out(p.nvars());
            Expt e2(p.nvars(), 0);
            for (const auto& [e, cc] : p.terms()) {
                for (int ii = 0; ii < p.nvars(); ++ii) e2[ii] = -e[ii];
                out.add_term(e2, cc);
            }
            return out;
        };
        // num(1/x)/den(1/x) cleared to polynomials by monomial shifts
        MPoly rn = reflect(c.num()), rd = reflect(c.den());
        Expt mn(nv, 0), md(nv, 0);
        for (const auto& [e, cc] : rn.terms())
            for (int ii = 0; ii < nv; ++ii) mn[ii] = std::min(mn[ii], e[ii]);
        for (const auto& [e, cc] : rd.terms())
            for (int ii = 0; ii < nv; ++ii) md[ii] = std::min(md[ii], e[ii]);
        Expt shift_n(nv), shift_d(nv);
        for (int ii = 0; ii < nv; ++ii) {
            int m = std::min(mn[ii], md[ii]);
            shift_n[ii] = -m;
            shift_d[ii] = -m;
        }
        gstar.add_term(neg, Frac(rn.mul_term(shift_n, Rat(1)), rd.mul_term(shift_d, Rat(1))));
    }
    auto expand = [&](const GAElem& h) {
        GAElem out(h.rank(), h.nvars());
        for (const auto& [w, c] : h.support()) out.add_term(w, series_of(c, cut));
        return out;
    };
    GAElem prod = truncate_qs(expand(f) * expand(gstar) * weight, cut);
    return prod.coeff(WeightVec(fin.rank, 0));
}

}  // namespace nshift
