#include "nshift/shiftdiff.hpp"

#include <cassert>

#include "nshift/errors.hpp"
#include "nshift/linalg.hpp"

namespace nshift {

namespace {

SPoly linear_form(int rank, const RVec& v) {
    SPoly p(rank);
    for (int i = 0; i < rank; ++i) {
        Expt e(rank, 0);
        e[i] = 1;
        p.add_term(e, v[i]);
    }
    return p;
}

SPoly spoly_derivative(const SPoly& p, int var) {
    SPoly out(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Expt f = e;
        long n = f[var]--;
        out.add_term(f, c * Rat(n));
    }
    return out;
}

}  // namespace

std::vector<SPoly> harmonic_basis(const RootSystem& R) {
    // The harmonic space is spanned by the partial derivatives of the
    // product of the reflection-hyperplane linear forms (Steinberg).
    const size_t target = R.weyl.size();
    std::vector<SPoly> echelon;  // reduced, leading monomials distinct
    auto reduce_insert = [&](SPoly p) {
        bool changed = true;
        while (!p.is_zero() && changed) {
            changed = false;
            for (const auto& q : echelon) {
                if (p.leading_expt() == q.leading_expt()) {
                    p -= q.scaled(p.leading_coeff() / q.leading_coeff());
                    changed = true;
                    break;
                }
            }
        }
        if (!p.is_zero()) echelon.push_back(p.int_primitive());
    };
    std::vector<SPoly> frontier = {pi_poly(R)};
    reduce_insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<SPoly> next;
        for (const auto& p : frontier) {
            for (int v = 0; v < R.rank; ++v) {
                SPoly d = spoly_derivative(p, v);
                if (!d.is_zero()) next.push_back(d);
            }
        }
        for (const auto& d : next) reduce_insert(d);
        frontier = std::move(next);
    }
    assert(echelon.size() == target);
    (void)target;
    std::sort(echelon.begin(), echelon.end(), [](const SPoly& a, const SPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return GrlexLess{}(a.leading_expt(), b.leading_expt());
    });
    return echelon;
}

SPoly pi_poly(const RootSystem& R) {
    SPoly out = SPoly::constant(R.rank, Rat(1));
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p]) continue;
        Rat scale = Rat(2) / R.inner(R.roots[p], R.roots[p]);
        RVec covec(R.rank);
        for (int i = 0; i < R.rank; ++i) covec[i] = scale * Rat(R.roots[p][i]);
        out = out * linear_form(R.rank, covec);
    }
    return out;
}

SPoly spoly_compose_weyl(const RootSystem& R, const SPoly& p, int w) {
    // (p o w)(xi) = p(w xi); generator e_i becomes the linear form of w^{-1} e_i.
    int winv = R.inverse_of[w];
    std::vector<SPoly> gen_image(R.rank);
    for (int i = 0; i < R.rank; ++i) {
        RVec v(R.rank);
        for (int j = 0; j < R.rank; ++j) v[j] = Rat(R.weyl[winv].mat[j][i]);
        gen_image[i] = linear_form(R.rank, v);
    }
    SPoly out(R.rank);
    for (const auto& [e, c] : p.terms()) {
        SPoly t = SPoly::constant(R.rank, c);
        for (int i = 0; i < R.rank; ++i)
            for (int j = 0; j < e[i]; ++j) t = t * gen_image[i];
        out += t;
    }
    return out;
}

QPoly build_q_poly_for_basis(const RootSystem& R, const std::vector<SPoly>& basis) {
    const int d = (int)R.weyl.size();
    assert((int)basis.size() == d);
    // Solve sum_j q_j(xi) u_j(w xi) = pi(xi) delta_{e,w} over the rational
    // function field in the coordinates of xi.
    std::vector<std::vector<Frac>> a(d, std::vector<Frac>(d));
    std::vector<Frac> b(d);
    for (int wi = 0; wi < d; ++wi) {
        for (int j = 0; j < d; ++j)
            a[wi][j] = Frac::of(spoly_compose_weyl(R, basis[j], wi));
        b[wi] = wi == 0 ? Frac::of(pi_poly(R)) : Frac(R.rank);
    }
    std::vector<Frac> x;
    if (!field_solve(a, b, &x))
        throw SingularSteinbergMatrix("harmonic evaluation matrix is singular");
    QPoly qp;
    qp.u = basis;
    for (int j = 0; j < d; ++j) {
        if (!x[j].den().is_constant())
            throw SingularSteinbergMatrix("interpolation solution is not polynomial");
        SPoly num = x[j].num();
        num.scale(Rat(1) / x[j].den().constant_value());
        qp.q.push_back(num);
    }
    return qp;
}

QPoly build_q_poly(const RootSystem& R) { return build_q_poly_for_basis(R, harmonic_basis(R)); }

GAElem projector_Q(const RootSystem& R, const QPoly& qp, const WeightVec& mu, const Mult& m,
                   const Mult& k, const GAElem& f) {
    FVec rm = R.spectral_vector(mu, m);
    GAElem out(f.rank(), f.nvars());
    for (size_t j = 0; j < qp.q.size(); ++j) {
        Frac c = spoly_eval(R, qp.q[j], rm);
        if (c.is_zero()) continue;
        out += apply_poly_T(R, qp.u[j], k, f).scaled(c);
    }
    return out;
}

GAElem nonsym_shift_apply(const RootSystem& R, const QPoly& qp, const LinearCharacter& eps,
                          int dir, const Mult& k, const GAElem& f) {
    assert(dir == 1 || dir == -1);
    const int nv = f.nvars();
    Mult k_shift = R.shifted(k, eps, dir);
    GAElem delta = weyl_denominator(R, eps, nv);
    const LinearCharacter& sym_char = dir > 0 ? eps : R.character("triv");
    GAElem out(f.rank(), nv);
    for (size_t j = 0; j < qp.q.size(); ++j) {
        GAElem mid = plain_symmetrize(R, sym_char, apply_poly_T(R, qp.q[j], k, f));
        mid = dir > 0 ? exact_divide(mid, delta) : mid * delta;
        out += apply_poly_T(R, qp.u[j], k_shift, mid);
    }
    return out;
}

GAElem NonsymShiftOp::apply(const GAElem& f) {
    GAElem out(f.rank(), f.nvars());
    for (const auto& [lam, c] : f.support()) {
        auto it = images_.find(lam);
        if (it == images_.end()) {
            GAElem mono = GAElem::monomial(f.rank(), f.nvars(), lam,
                                           Frac::constant(f.nvars(), Rat(1)));
            it = images_.emplace(lam, nonsym_shift_apply(R_, qp_, eps_, dir_, k_, mono)).first;
        }
        out += it->second.scaled(c);
    }
    return out;
}

Frac shift_factor_cfun(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                       int dir, const Mult& k) {
    const int nv = k[0].nvars();
    auto d = R.decompose(mu);
    int vw = R.product[d.vbar][d.w_lambda];
    FVec rho = R.rho(k);
    FVec x(R.rank);
    for (int i = 0; i < R.rank; ++i)
        x[i] = Frac::constant(nv, Rat(d.lambda_plus[i])) + rho[i];
    const LinearCharacter& triv = R.character("triv");
    const LinearCharacter& eps_pm = dir > 0 ? eps : triv;  // goes with the minus c-function
    const LinearCharacter& eps_mp = dir > 0 ? triv : eps;  // goes with the plus c-function
    Frac cm = c_function(R, -1, vw, signed_mult(R, k, eps_pm, +1), x);
    Frac cp = c_function(R, +1, vw, signed_mult(R, R.shifted(k, eps, dir), eps_mp, -1), x);
    Frac pi_val = spoly_eval(R, pi_poly(R), R.spectral_vector(mu, k));
    Frac out = pi_val * cm * cp;
    // Character prefactor eps_{+-}(vbar(mu)) eps_{-+}(vbar(mu_{eps,+-})): for the
    // backward direction this is eps evaluated on vbar of the shifted weight,
    // which differs from eps(vbar(mu)) by eps(w_lambda) on non-regular orbits.
    int sign_vbar = dir > 0 ? eps.value_of_word(R.weyl[d.vbar].word)
                            : eps.value_of_word(
                                  R.weyl[R.decompose(R.mu_shifted(mu, eps, dir)).vbar].word);
    if (sign_vbar == -1) out = -out;
    return out;
}

Frac shift_factor_product(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                          int dir, const Mult& k) {
    const int nv = k[0].nvars();
    auto d = R.decompose(mu);
    int vw = R.product[d.vbar][d.w_lambda];
    FVec rho = R.rho(k);
    FVec x(R.rank);
    for (int i = 0; i < R.rank; ++i)
        x[i] = Frac::constant(nv, Rat(d.lambda_plus[i])) + rho[i];
    FVec rk = R.spectral_vector(mu, k);
    Frac out = Frac::constant(nv, Rat(1));
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p]) continue;
        Frac k0 = R.k0_of_root(k, p);
        if (eps.l_per_orbit[R.orbit_of[p]] == 1) {
            int delta_w = R.root_index(R.apply(vw, R.roots[p])) >= R.num_positive ? 1 : 0;
            Frac term = R.pair_coroot(x, p) + Frac::constant(nv, Rat(delta_w - 1));
            term = dir > 0 ? term - k0 : term + k0;
            out *= term;
        } else {
            out *= R.pair_coroot(rk, p) - k0;
        }
    }
    return out;
}

GAElem sym_shift_apply(const RootSystem& R, const LinearCharacter& eps, const Mult& k,
                       const GAElem& f) {
    const int nv = f.nvars();
    for (int s : R.simple_idx)
        if (act(R, R.reflection_of_root[s], f) != f)
            throw NotInvariantInput("symmetric shift operator needs a W-invariant input");
    GAElem g = f;
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p] || eps.l_per_orbit[R.orbit_of[p]] != 1) continue;
        Rat scale = Rat(2) / R.inner(R.roots[p], R.roots[p]);
        RVec covec(R.rank);
        for (int i = 0; i < R.rank; ++i) covec[i] = scale * Rat(R.roots[p][i]);
        g = dunkl_cherednik(R, covec, k, g) + g.scaled(R.k0_of_root(k, p));
    }
    return exact_divide(g, weyl_denominator(R, eps, nv));
}

Frac sym_shift_h(const RootSystem& R, const WeightVec& lam, const LinearCharacter& eps,
                 const Mult& k) {
    const int nv = k[0].nvars();
    FVec rho = R.rho(k);
    FVec x(R.rank);
    for (int i = 0; i < R.rank; ++i)
        x[i] = Frac::constant(nv, Rat(lam[i])) + rho[i];
    Frac out = Frac::constant(nv, Rat(1));
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p] || eps.l_per_orbit[R.orbit_of[p]] != 1) continue;
        out *= R.pair_coroot(x, p) - R.k0_of_root(k, p);
    }
    return out;
}

Frac norm_ratio(const RootSystem& R, const WeightVec& mu, const LinearCharacter& eps,
                const Mult& k) {
    auto d = R.decompose(mu);
    if (d.stabilizer.size() != 1)
        throw NonRegularWeight("norm recurrence needs a regular orbit");
    WeightVec down = R.mu_shifted(mu, eps, -1);
    Frac num = shift_factor_cfun(R, mu, eps, -1, k);
    Frac den = shift_factor_cfun(R, down, eps, +1, R.shifted(k, eps, -1));
    return num / den;
}

bool adjoint_check(const RootSystem& R, const LinearCharacter& eps, const Mult& k, int height) {
    const int nv = k[0].nvars();
    QPoly qp = build_q_poly(R);
    Mult kl = R.shifted(k, eps, +1);
    auto window = R.full_window(height);
    std::vector<GAElem> fwd, bwd;
    for (const auto& lam : window) {
        GAElem e = GAElem::monomial(R.rank, nv, lam, Frac::constant(nv, Rat(1)));
        fwd.push_back(nonsym_shift_apply(R, qp, eps, +1, k, e));
        bwd.push_back(nonsym_shift_apply(R, qp, eps, -1, kl, e));
    }
    for (size_t i = 0; i < window.size(); ++i) {
        GAElem ei = GAElem::monomial(R.rank, nv, window[i], Frac::constant(nv, Rat(1)));
        for (size_t j = 0; j < window.size(); ++j) {
            GAElem ej = GAElem::monomial(R.rank, nv, window[j], Frac::constant(nv, Rat(1)));
            if (ct_pairing(R, fwd[i], ej, kl) != ct_pairing(R, ei, bwd[j], k)) return false;
        }
    }
    return true;
}

bool fundamental_probe(const RootSystem& R, const LinearCharacter& eps, int dir, int height) {
    Mult k = R.symbolic_mult();
    const int nv = k[0].nvars();
    for (const auto& mu : R.full_window(height)) {
        Frac h = shift_factor_cfun(R, mu, eps, dir, k);
        FVec rk = R.spectral_vector(mu, k);
        Frac varpi = Frac::constant(nv, Rat(1));
        for (int p = 0; p < R.num_positive; ++p) {
            if (!R.in_R0[p] || eps.l_per_orbit[R.orbit_of[p]] == 1) continue;
            varpi *= R.pair_coroot(rk, p) - R.k0_of_root(k, p);
        }
        Frac resid = h / varpi;
        if (!resid.den().is_constant()) return false;
    }
    return true;
}

}  // namespace nshift
