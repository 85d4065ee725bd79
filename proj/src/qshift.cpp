#include "nshift/qshift.hpp"

#include <cassert>

#include "nshift/errors.hpp"
#include "nshift/linalg.hpp"

namespace nshift {

namespace {

// Positive roots of the finite system S'_02 (as fin-root indices).
std::vector<int> s02p_positive(const AffinePair& P) {
    if (P.acase == AffineCase::Case3C1) return {1};  // {2 eps}
    std::vector<int> out;
    for (int p = 0; p < P.fin->num_positive; ++p) out.push_back(p);
    return out;
}

// b'_i = u_{a'_i} a'_i for the finite simple roots.
std::vector<WeightVec> steinberg_simple(const AffinePair& P) {
    std::vector<WeightVec> out;
    for (int s : P.fin->simple_idx) {
        WeightVec b = P.fin->roots[s];
        if (P.primed_has_double(s))
            for (auto& x : b) x *= 2;
        out.push_back(b);
    }
    return out;
}

Frac det_bareiss(std::vector<std::vector<GAElem>> m, int rank, int nvars, GAElem* out) {
    // Fraction-free elimination; returns success through *out.
    const int n = (int)m.size();
    GAElem prev = GAElem::one(rank, nvars);
    int sign = 1;
    for (int col = 0; col < n - 1; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Frac();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c) {
                GAElem t = m[r][c] * m[col][col] - m[r][col] * m[col][c];
                m[r][c] = exact_divide(t, prev);
            }
            m[r][col] = GAElem(rank, nvars);
        }
        prev = m[col][col];
    }
    *out = sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
    return Frac::constant(nvars, Rat(1));
}

}  // namespace

std::vector<GAElem> steinberg_basis(const AffinePair& P) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    auto bs = steinberg_simple(P);
    // Fundamental weights dual to the b'-system.
    std::vector<WeightVec> lams;
    for (size_t i = 0; i < bs.size(); ++i) {
        std::vector<std::vector<Rat>> a(fin.rank, std::vector<Rat>(fin.rank));
        std::vector<Rat> rhs(fin.rank, Rat(0));
        for (size_t j = 0; j < bs.size(); ++j) {
            Rat norm = fin.inner(bs[j], bs[j]);
            for (int c = 0; c < fin.rank; ++c) {
                Rat g(0);
                for (int d = 0; d < fin.rank; ++d) g += fin.gram[c][d] * Rat(bs[j][d]);
                a[j][c] = Rat(2) * g / norm;
            }
            rhs[j] = i == j ? Rat(1) : Rat(0);
        }
        std::vector<Rat> x;
        bool ok = field_solve(a, rhs, &x);
        assert(ok);
        (void)ok;
        WeightVec lam(fin.rank);
        for (int c = 0; c < fin.rank; ++c) {
            if (!x[c].is_integer())
                throw WeightNotInLattice("Steinberg fundamental weight not in L'");
            lam[c] = (int)x[c].num().get_si();
        }
        lams.push_back(lam);
    }
    std::vector<GAElem> out;
    for (const auto& w : fin.weyl) {
        WeightVec lw(fin.rank, 0);
        int winv = fin.inverse_of[w.index];
        for (size_t i = 0; i < bs.size(); ++i) {
            WeightVec im = fin.apply(winv, bs[i]);
            int idx = fin.root_index(im);
            bool negative;
            if (idx >= 0) {
                negative = idx >= fin.num_positive;
            } else {
                // not a root of fin (cannot happen on the catalog)
                throw UnsupportedCase("Steinberg direction outside the finite system");
            }
            if (negative)
                for (int c = 0; c < fin.rank; ++c) lw[c] += lams[i][c];
        }
        out.push_back(GAElem::monomial(fin.rank, nv, fin.apply(winv, lw),
                                       Frac::constant(nv, Rat(1))));
    }
    return out;
}

SteinbergQPoly build_q_trigpoly(const AffinePair& P) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    const int d = (int)fin.weyl.size();
    SteinbergQPoly st;
    for (int i = 0; i < d; ++i) st.order.push_back(i);
    st.u = steinberg_basis(P);
    // varpi' = prod over S'_02+ of (e^{b/2} - e^{-b/2}) = e^{-rho'} prod (e^b - 1)
    Frac one = Frac::constant(nv, Rat(1));
    GAElem varpi = GAElem::one(fin.rank, nv);
    std::vector<Rat> rho2(fin.rank, Rat(0));
    for (int p : s02p_positive(P)) {
        GAElem factor = GAElem::monomial(fin.rank, nv, fin.roots[p], one);
        factor.add_term(WeightVec(fin.rank, 0), -one);
        varpi *= factor;
        for (int c = 0; c < fin.rank; ++c) rho2[c] += Rat(fin.roots[p][c], 2);
    }
    WeightVec shift(fin.rank);
    for (int c = 0; c < fin.rank; ++c) {
        assert(rho2[c].is_integer());
        shift[c] = -(int)rho2[c].num().get_si();
    }
    st.varpi = varpi.mul_monomial(shift, one);

    // Solve sum_w q_w * (u_w o v) = delta_{e,v} varpi' by Cramer with
    // fraction-free determinants.
    std::vector<std::vector<GAElem>> m(d, std::vector<GAElem>(d));
    for (int v = 0; v < d; ++v)
        for (int w = 0; w < d; ++w) m[v][w] = act(fin, fin.inverse_of[v], st.u[w]);
    GAElem det;
    if (det_bareiss(m, fin.rank, nv, &det).is_zero() || det.is_zero())
        throw SingularSteinbergMatrix("Steinberg evaluation matrix is singular");
    for (int w = 0; w < d; ++w) {
        auto mw = m;
        for (int v = 0; v < d; ++v)
            mw[v][w] = v == 0 ? st.varpi : GAElem(fin.rank, nv);
        GAElem detw;
        if (det_bareiss(mw, fin.rank, nv, &detw).is_zero())
            throw SingularSteinbergMatrix("Cramer minor is singular");
        GAElem qw;
        if (!try_exact_divide(detw, det, &qw))
            throw SingularSteinbergMatrix("trigonometric interpolation is not polynomial");
        st.q.push_back(qw);
    }
    // det(Uhat) = unit * varpi'^{d/2}
    GAElem pw = GAElem::one(fin.rank, nv);
    for (int i = 0; i < d / 2; ++i) pw *= st.varpi;
    GAElem unit;
    if (!try_exact_divide(det, pw, &unit) || unit.support().size() != 1)
        throw SingularSteinbergMatrix("determinant is not a unit multiple of varpi^(d/2)");
    st.det_unit = unit.support().begin()->second;
    return st;
}

GAElem q_delta_single(const AffinePair& P, int fin_root, const QMult& k) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    AffRoot a{fin.roots[fin_root], Rat(0)};
    Frac tau = q_power(P.sctx, P.tau_exp(k, a));
    Frac ttil = q_power(P.sctx, P.tau_tilde_exp(k, a));
    GAElem out(fin.rank, nv);
    if (P.has_double(a)) {
        // tau e^a + (ttil - ttil^{-1}) - tau^{-1} e^{-a}
        out.add_term(a.grad, tau);
        out.add_term(WeightVec(fin.rank, 0), ttil - ttil.inv());
        WeightVec neg = a.grad;
        for (auto& x : neg) x *= -1;
        out.add_term(neg, -tau.inv());
        return out;
    }
    WeightVec half = a.grad;
    for (auto& x : half) {
        if (x % 2 != 0) throw HalfWeightNotInLattice("delta_{a,k} needs a/2 in the lattice");
        x /= 2;
    }
    out.add_term(half, tau);
    WeightVec neg = half;
    for (auto& x : neg) x *= -1;
    out.add_term(neg, -tau.inv());
    return out;
}

namespace {

// Product of delta factors over a set of level-zero roots with given
// multiplicity exponents per root: values(root) = (k(a), k(2a)).
GAElem delta_product(const AffinePair& P, const std::vector<int>& roots,
                     const std::vector<std::pair<QExponent, QExponent>>& values) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    Frac one = Frac::constant(nv, Rat(1));
    GAElem out = GAElem::one(fin.rank, nv);
    std::vector<Rat> halfshift(fin.rank, Rat(0));
    for (size_t i = 0; i < roots.size(); ++i) {
        const auto& [kv, kv2] = values[i];
        Frac tau = q_power(P.sctx, (kv + kv2).scaled(Rat(1, 2)));
        Frac ttil = q_power(P.sctx, (kv - kv2).scaled(Rat(1, 2)));
        AffRoot a{fin.roots[roots[i]], Rat(0)};
        bool doubled = P.acase == AffineCase::Case3C1
                           ? (a.grad[0] == 1 || a.grad[0] == -1)
                           : false;
        GAElem factor(fin.rank, nv);
        if (doubled) {
            factor.add_term(a.grad, tau);
            factor.add_term(WeightVec(fin.rank, 0), ttil - ttil.inv());
            WeightVec neg = a.grad;
            for (auto& x : neg) x *= -1;
            factor.add_term(neg, -tau.inv());
            out *= factor;
        } else {
            // tau e^{a/2} - tau^{-1} e^{-a/2} = e^{-a/2}(tau e^a - tau^{-1})
            factor.add_term(a.grad, tau);
            factor.add_term(WeightVec(fin.rank, 0), -tau.inv());
            out *= factor;
            for (int c = 0; c < fin.rank; ++c) halfshift[c] += Rat(a.grad[c], 2);
        }
    }
    WeightVec shift(fin.rank, 0);
    for (int c = 0; c < fin.rank; ++c) {
        if (!halfshift[c].is_integer())
            throw HalfWeightNotInLattice("delta product has non-integral half-sum");
        shift[c] = -(int)halfshift[c].num().get_si();
    }
    return out.mul_monomial(shift, one);
}

bool exponent_is_one(const QExponent& x) {
    if (x.pure != Rat(1)) return false;
    for (const auto& c : x.kcoeff)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace

GAElem q_delta_eps(const AffinePair& P, const LinearCharacter& eps, const QMult& k) {
    auto l = P.l_per_S_orbit(eps);
    std::vector<int> roots;
    std::vector<std::pair<QExponent, QExponent>> values;
    for (int p : P.S01_positive) {
        AffRoot a{P.fin->roots[p], Rat(0)};
        if (l[P.orbit_of(a)] != 1) continue;
        roots.push_back(p);
        values.emplace_back(P.k_of(k, a), P.k_of_double(k, a));
    }
    return delta_product(P, roots, values);
}

GAElem q_delta_eps_primed(const AffinePair& P, const LinearCharacter& eps, const QMult& k) {
    QMult lq = P.shifted(P.rational_mult(std::vector<Rat>(P.num_orbits, Rat(0))), eps, +1);
    std::vector<int> roots;
    std::vector<std::pair<QExponent, QExponent>> values;
    for (int p : P.S01p_positive) {
        if (!exponent_is_one(P.kprime_of(lq, p))) continue;  // l'(a') = 1
        roots.push_back(p);
        values.emplace_back(P.kprime_of(k, p), P.kprime_of_double(k, p));
    }
    return delta_product(P, roots, values);
}

Frac q_delta_primed_eval(const AffinePair& P, const LinearCharacter& eps, int sign,
                         const QMult& k, const std::vector<QExponent>& x) {
    QMult lq = P.shifted(P.rational_mult(std::vector<Rat>(P.num_orbits, Rat(0))), eps, +1);
    Frac out = Frac::constant(P.sctx.nvars, Rat(1));
    for (int p : P.S01p_positive) {
        if (!exponent_is_one(P.kprime_of(lq, p))) continue;
        QExponent kv = P.kprime_of(k, p).scaled(Rat(sign));
        QExponent kv2 = P.kprime_of_double(k, p).scaled(Rat(sign));
        Frac tau = q_power(P.sctx, (kv + kv2).scaled(Rat(1, 2)));
        Frac ttil = q_power(P.sctx, (kv - kv2).scaled(Rat(1, 2)));
        QExponent za = P.pair_exp(P.fin->roots[p], x);
        if (P.primed_has_double(p)) {
            Frac z = q_power(P.sctx, za);
            out *= tau * z + (ttil - ttil.inv()) - tau.inv() / z;
        } else {
            Frac zh = q_power(P.sctx, za.scaled(Rat(1, 2)));
            out *= tau * zh - tau.inv() / zh;
        }
    }
    return out;
}

WeightVec mu_shifted_q(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                       int dir) {
    auto d = P.fin->decompose(mu);
    WeightVec rhol = P.rho_tilde_l(eps);
    WeightVec target(P.fin->rank);
    for (int i = 0; i < P.fin->rank; ++i) target[i] = d.lambda_plus[i] - dir * rhol[i];
    return P.fin->apply(P.fin->product[d.vbar][d.w_lambda], target);
}

bool shift_condition_q(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                       int dir) {
    return P.fin->decompose(mu).v ==
           P.fin->decompose(mu_shifted_q(P, mu, eps, dir)).v;
}

GAElem q_sym_shift(const AffinePair& P, const LinearCharacter& eps, const QMult& k,
                   const GAElem& f) {
    for (int s : P.fin->simple_idx)
        if (act(*P.fin, P.fin->reflection_of_root[s], f) != f)
            throw NotInvariantInput("symmetric q-shift operator needs a W0-invariant input");
    GAElem num = y_poly_inv(P, q_delta_eps_primed(P, eps, k), k, f);
    return exact_divide(num, q_delta_eps(P, eps, k));
}

Frac q_sym_shift_h(const AffinePair& P, const WeightVec& lam, const LinearCharacter& eps,
                   const QMult& k) {
    auto rho = P.rho_kprime(k);
    std::vector<QExponent> x(P.fin->rank, QExponent(P.num_orbits));
    for (int i = 0; i < P.fin->rank; ++i)
        x[i] = QExponent::of_pure(P.num_orbits, Rat(lam[i])) + rho[i];
    Frac pre = q_power(P.sctx, P.k_dot_l(k, eps).scaled(Rat(1, 2)));
    return pre * q_delta_primed_eval(P, eps, -1, k, x);
}

GAElem q_nonsym_shift_apply(const AffinePair& P, const SteinbergQPoly& st,
                            const LinearCharacter& eps, int dir, const QMult& k,
                            const GAElem& f, QSymVariant variant) {
    assert(dir == 1 || dir == -1);
    const auto& fin = *P.fin;
    QMult kshift = P.shifted(k, eps, dir);
    GAElem div_delta = q_delta_eps(P, eps, k);
    GAElem mul_delta =
        dir < 0 ? q_delta_eps(P, eps, P.shifted(k, eps, -1)) : GAElem(fin.rank, P.sctx.nvars);
    const LinearCharacter& sym_char = dir > 0 ? eps : fin.character("triv");
    GAElem out(fin.rank, P.sctx.nvars);
    for (size_t w = 0; w < st.u.size(); ++w) {
        GAElem mid = y_poly_inv(P, st.q[w], k, f);
        if (variant == QSymVariant::Plain) {
            GAElem sym(fin.rank, P.sctx.nvars);
            for (const auto& v : fin.weyl) {
                GAElem img = act(fin, v.index, mid);
                if (sym_char.value_of_word(v.word) == 1)
                    sym += img;
                else
                    sym -= img;
            }
            mid = sym;
        } else {
            mid = hecke_symmetrize(P, sym_char, k, mid);
        }
        mid = dir > 0 ? exact_divide(mid, div_delta) : mid * mul_delta;
        out += y_poly_inv(P, st.u[w], kshift, mid);
    }
    return out;
}

GAElem QNonsymShiftOp::apply(const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [lam, c] : f.support()) {
        auto it = images_.find(lam);
        if (it == images_.end()) {
            GAElem mono = GAElem::monomial(f.rank(), f.nvars(), lam,
                                           Frac::constant(f.nvars(), Rat(1)));
            it = images_
                     .emplace(lam,
                              q_nonsym_shift_apply(P_, st_, eps_, dir_, k_, mono, variant_))
                     .first;
        }
        out += it->second.scaled(c);
    }
    return out;
}

Frac q_shift_factor(const AffinePair& P, const WeightVec& mu, const LinearCharacter& eps,
                    int dir, const QMult& k) {
    const auto& fin = *P.fin;
    const int nv = P.sctx.nvars;
    auto d = fin.decompose(mu);
    int vw = fin.product[d.vbar][d.w_lambda];
    auto rho = P.rho_kprime(k);
    std::vector<QExponent> x(fin.rank, QExponent(P.num_orbits));
    for (int i = 0; i < fin.rank; ++i)
        x[i] = QExponent::of_pure(P.num_orbits, Rat(d.lambda_plus[i])) + rho[i];
    WeightVec mu_s = mu_shifted_q(P, mu, eps, dir);
    auto ds = fin.decompose(mu_s);
    int vws = fin.product[ds.vbar][ds.w_lambda];
    const LinearCharacter& triv = fin.character("triv");
    const LinearCharacter& eps_pm = dir > 0 ? eps : triv;
    const LinearCharacter& eps_mp = dir > 0 ? triv : eps;
    QMult lq = P.shifted(P.rational_mult(std::vector<Rat>(P.num_orbits, Rat(0))), eps, +1);
    QMult ks = P.shifted(k, eps, dir);

    // sign prefactor eps_pm(vbar(mu)) eps_mp(vbar(mu_s))
    int sgn = 1;
    if (dir > 0 && eps.value_of_word(fin.weyl[d.vbar].word) == -1) sgn = -sgn;
    if (dir < 0 && eps.value_of_word(fin.weyl[ds.vbar].word) == -1) sgn = -sgn;

    // tau_{vbar(mu) w_{0 lam}, k} / tau_{vbar(mu_s) w_{0 lam_s}, k +- l^}
    Frac taus = tau_word(P, vw, k) / tau_word(P, vws, ks);
    // tau_{w0, l^}^{+-1}
    Frac tau0 = tau_word(P, fin.longest, lq);
    if (dir < 0) tau0 = tau0.inv();
    // q^{n^{pm}}
    QExponent n = dir > 0 ? P.k_dot_l(k, eps).scaled(Rat(1, 2))
                          : -P.k_dot_l(P.shifted(k, eps, -1), eps).scaled(Rat(1, 2));
    Frac qn = q_power(P.sctx, n);
    // varpi'(r_{k'}(mu))
    auto rk = P.spectral_q(mu, k);
    Frac varpi_val = Frac::constant(nv, Rat(1));
    for (int p : s02p_positive(P)) {
        QExponent zh = P.pair_exp(fin.roots[p], rk).scaled(Rat(1, 2));
        varpi_val *= q_power(P.sctx, zh) - q_power(P.sctx, -zh);
    }
    Frac cm = q_c_function(P, -1, vw, k, eps_pm.name == "triv" ? nullptr : &eps_pm, +1, x);
    Frac cp = q_c_function(P, +1, vw, ks, eps_mp.name == "triv" ? nullptr : &eps_mp, -1, x);
    Frac out = taus * tau0 * qn * varpi_val * cm * cp;
    if (sgn < 0) out = -out;
    return out;
}

}  // namespace nshift
