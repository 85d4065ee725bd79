#include "nshift/cherednik.hpp"

#include <algorithm>
#include <cassert>

#include "nshift/errors.hpp"

namespace nshift {

Frac frac_inner(const RootSystem& R, const FVec& x, const RVec& y) {
    Frac out(x[0].nvars());
    for (int i = 0; i < R.rank; ++i) {
        Rat gi(0);
        for (int j = 0; j < R.rank; ++j) gi += R.gram[i][j] * y[j];
        if (!gi.is_zero()) out += x[i] * Frac::constant(x[i].nvars(), gi);
    }
    return out;
}

Frac spoly_eval(const RootSystem& R, const SPoly& p, const FVec& x) {
    int nv = x[0].nvars();
    // Generator i evaluates to (e_i, x) = (G x)_i.
    FVec gen(R.rank, Frac(nv));
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j)
            gen[i] += x[j] * Frac::constant(nv, R.gram[i][j]);
    Frac out(nv);
    for (const auto& [e, c] : p.terms()) {
        Frac t = Frac::constant(nv, c);
        for (int i = 0; i < R.rank; ++i)
            for (int j = 0; j < e[i]; ++j) t *= gen[i];
        out += t;
    }
    return out;
}

GAElem dunkl_cherednik(const RootSystem& R, const RVec& xi, const Mult& k, const GAElem& f) {
    const int nv = f.nvars();
    GAElem out(f.rank(), nv);
    Frac xi_rho = frac_inner(R, R.rho(k), xi);
    // Per positive root: k(a) (xi, a).
    std::vector<Frac> kxa(R.num_positive);
    for (int p = 0; p < R.num_positive; ++p)
        kxa[p] = R.k_of_root(k, p) *
                 Frac::constant(nv, R.inner_rr(xi, R.roots[p]));
    for (const auto& [lam, c] : f.support()) {
        // Derivative and rho terms.
        Rat lam_xi(0);
        for (int i = 0; i < R.rank; ++i) {
            Rat gi(0);
            for (int j = 0; j < R.rank; ++j) gi += R.gram[i][j] * xi[j];
            lam_xi += Rat(lam[i]) * gi;
        }
        out.add_term(lam, c * (Frac::constant(nv, lam_xi) - xi_rho));
        // Truncated geometric expansion of k(a)(xi,a)(1 - r_a)/(1 - e^{-a}).
        for (int p = 0; p < R.num_positive; ++p) {
            if (kxa[p].is_zero()) continue;
            Rat mr = R.pair_coroot(lam, p);
            assert(mr.is_integer());
            long m = mr.num().get_si();
            WeightVec w = lam;
            if (m >= 0) {
                for (long j = 0; j < m; ++j) {
                    out.add_term(w, c * kxa[p]);
                    for (int i = 0; i < R.rank; ++i) w[i] -= R.roots[p][i];
                }
            } else {
                for (long j = 0; j < -m; ++j) {
                    for (int i = 0; i < R.rank; ++i) w[i] += R.roots[p][i];
                    out.add_term(w, -(c * kxa[p]));
                }
            }
        }
    }
    return out;
}

GAElem apply_poly_T(const RootSystem& R, const SPoly& p, const Mult& k, const GAElem& f) {
    assert(p.nvars() == R.rank);
    GAElem out(f.rank(), f.nvars());
    for (const auto& [e, c] : p.terms()) {
        GAElem cur = f;
        for (int i = 0; i < R.rank; ++i) {
            RVec xi(R.rank, Rat(0));
            xi[i] = Rat(1);
            for (int j = 0; j < e[i]; ++j) cur = dunkl_cherednik(R, xi, k, cur);
        }
        out += cur.scaled(Frac::constant(f.nvars(), c));
    }
    return out;
}

RVec probe_vector(int rank, int index) {
    // Deterministic sequence: nonzero integer vectors ordered by coordinate
    // sum, lexicographic within a sum level.
    std::vector<RVec> seq;
    for (int total = 1; (int)seq.size() <= index + 1; ++total) {
        std::vector<int> idx(rank, 0);
        while (true) {
            int sum = 0;
            for (int v : idx) sum += v;
            if (sum == total) {
                RVec x(rank);
                for (int i = 0; i < rank; ++i) x[i] = Rat(idx[i]);
                seq.push_back(x);
            }
            int p = rank - 1;
            while (p >= 0 && ++idx[p] > total) idx[p--] = 0;
            if (p < 0) break;
        }
    }
    return seq[index];
}

// Weights mu <= lam (strictly below plus lam itself), topologically sorted
// so that larger weights come first.
std::vector<WeightVec> order_cone(const RootSystem& R, const WeightVec& lam) {
    auto dl = R.decompose(lam);
    // Coordinate sums never grow along positive-root subtraction in the
    // catalog bases, so dominant weights below lam_+ live in this window.
    int hsum = 0;
    for (int ci : dl.lambda_plus) hsum += ci;
    struct Cand {
        WeightVec mu;
        WeightVec lamp;
        int vbar;
        RVec scoords;
    };
    RVec top_coords = R.simple_root_coords(dl.lambda_plus);
    auto dom_leq = [&](const RVec& a, const RVec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            Rat d = b[i] - a[i];
            if (!d.is_integer() || d < Rat(0)) return false;
        }
        return true;
    };
    std::vector<Cand> cands;
    for (const auto& nu : R.dominant_window(hsum)) {
        RVec nc = R.simple_root_coords(nu);
        if (!dom_leq(nc, top_coords)) continue;
        for (const auto& mu : R.orbit_of_weight(nu)) {
            auto dm = R.decompose(mu);
            cands.push_back({mu, dm.lambda_plus, dm.vbar, nc});
        }
    }
    auto leq = [&](const Cand& x, const Cand& y) {
        if (x.lamp == y.lamp) return (bool)R.bruhat[x.vbar][y.vbar];
        return dom_leq(x.scoords, y.scoords);
    };
    Cand top{lam, dl.lambda_plus, dl.vbar, top_coords};
    std::vector<Cand> kept;
    for (auto& cd : cands)
        if (leq(cd, top)) kept.push_back(std::move(cd));
    // Kahn's algorithm, maximal elements first.
    const int n = (int)kept.size();
    std::vector<int> above(n, 0);
    std::vector<std::vector<int>> below_of(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (leq(kept[i], kept[j])) {
                ++above[i];
                below_of[j].push_back(i);
            }
        }
    std::vector<WeightVec> sorted;
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i] && above[i] == 0) {
                pick = i;
                break;
            }
        assert(pick >= 0);
        used[pick] = true;
        sorted.push_back(kept[pick].mu);
        for (int i : below_of[pick]) --above[i];
    }
    return sorted;
}

GAElem nonsym_E(const RootSystem& R, const WeightVec& lam, const Mult& k) {
    const int nv = k[0].nvars();
    std::vector<WeightVec> cone = order_cone(R, lam);
    assert(cone.front() == lam);
    FVec r_lam = R.spectral_vector(lam, k);
    // Spectrum separation at this multiplicity.
    std::vector<FVec> spectra;
    for (const auto& mu : cone) spectra.push_back(R.spectral_vector(mu, k));
    for (size_t i = 1; i < cone.size(); ++i) {
        bool equal = true;
        for (int d = 0; d < R.rank; ++d)
            if (spectra[i][d] != r_lam[d]) equal = false;
        if (equal)
            throw ResonantSpectrum("r_k collision below weight on " + R.name);
    }
    // Pick a separating probe from the fixed sequence.
    RVec xi;
    std::vector<Frac> gaps(cone.size(), Frac(nv));
    bool found = false;
    for (int pi = 0; pi < 64 && !found; ++pi) {
        xi = probe_vector(R.rank, pi);
        found = true;
        for (size_t i = 0; i < cone.size(); ++i) {
            gaps[i] = frac_inner(R, r_lam, xi) - frac_inner(R, spectra[i], xi);
            if (i > 0 && gaps[i].is_zero()) {
                found = false;
                break;
            }
        }
    }
    if (!found) throw ProbeNotSeparating("no separating probe for E on " + R.name);

    // Triangular eigen-solve for (T_xi - a_lam) E = 0, E monic at e^lam.
    std::map<WeightVec, int> pos;
    for (size_t i = 0; i < cone.size(); ++i) pos[cone[i]] = (int)i;
    // Columns of T_xi on the cone, restricted to the cone.
    std::vector<GAElem> tcol;
    for (const auto& mu : cone)
        tcol.push_back(dunkl_cherednik(R, xi, k, GAElem::monomial(R.rank, nv, mu,
                                                                  Frac::constant(nv, Rat(1)))));
    std::vector<Frac> u(cone.size(), Frac(nv));
    u[0] = Frac::constant(nv, Rat(1));
    for (size_t i = 1; i < cone.size(); ++i) {
        // (T E)_mu = a_mu u_mu + sum_{nu earlier} u_nu T[mu][nu]; want = a_lam u_mu.
        Frac acc(nv);
        for (size_t j = 0; j < i; ++j) {
            if (u[j].is_zero()) continue;
            Frac t = tcol[j].coeff(cone[i]);
            if (!t.is_zero()) acc += u[j] * t;
        }
        // a_mu u_mu + acc = a_lam u_mu  =>  u_mu = acc / (a_lam - a_mu).
        u[i] = acc / gaps[i];
    }
    GAElem out(R.rank, nv);
    for (size_t i = 0; i < cone.size(); ++i) out.add_term(cone[i], u[i]);
    return out;
}

const GAElem& ECache::E(const WeightVec& lam) {
    auto it = cache_.find(lam);
    if (it == cache_.end()) it = cache_.emplace(lam, nonsym_E(R_, lam, k_)).first;
    return it->second;
}

GAElem apply_mult_shift(const RootSystem& R, const GAElem& f, const LinearCharacter& eps,
                        int dir) {
    std::vector<Rat> offs(R.num_orbits, Rat(0));
    for (int i = 0; i < R.num_orbits; ++i) offs[i] = Rat(dir * eps.l_per_orbit[i]);
    return f.map_coeffs([&](const Frac& c) { return c.shift_params(offs); });
}

GAElem sym_P(const RootSystem& R, const WeightVec& lam, const LinearCharacter& eps,
             const Mult& k, bool* flagged_zero) {
    assert(R.is_dominant(lam));
    auto d = R.decompose(lam);
    if (flagged_zero) *flagged_zero = false;
    for (int s : d.stabilizer) {
        if (eps.value_of_word(R.weyl[s].word) != 1) {
            if (flagged_zero) *flagged_zero = true;
            return GAElem(R.rank, k[0].nvars());
        }
    }
    GAElem u = plain_symmetrize(R, eps, nonsym_E(R, lam, k));
    return u.scaled(Frac::constant(k[0].nvars(), Rat(1, (long)d.stabilizer.size())));
}

Mult signed_mult(const RootSystem& R, const Mult& k, const LinearCharacter& eps, int sign) {
    Mult out = k;
    for (size_t r = 0; r < R.roots.size(); ++r) {
        int orb = R.orbit_of[(int)r];
        int s = sign * eps.value_of_word(R.weyl[R.reflection_of_root[r]].word);
        out[orb] = k[orb].is_zero() ? k[orb]
                                    : (s == 1 ? k[orb] : -k[orb]);
    }
    return out;
}

Frac c_function(const RootSystem& R, int sign, int w, const Mult& k, const FVec& x) {
    const int nv = x[0].nvars();
    Frac out = Frac::constant(nv, Rat(1));
    for (int p = 0; p < R.num_positive; ++p) {
        if (!R.in_R0[p]) continue;
        int im = R.root_index(R.apply(w, R.roots[p]));
        bool flips = im >= R.num_positive;
        if ((sign < 0) != flips) continue;
        Frac denom = R.pair_coroot(x, p);
        if (denom.is_zero()) throw PoleAtEvaluation("c-function pole at (x, alpha^vee) = 0");
        out *= Frac::constant(nv, Rat(1)) + R.k0_of_root(k, p) / denom;
    }
    return out;
}

std::map<WeightVec, Frac> expand_P_in_E(const RootSystem& R, const WeightVec& lam,
                                        const LinearCharacter& eps, const Mult& k) {
    const int nv = k[0].nvars();
    auto d = R.decompose(lam);
    FVec x(R.rank);
    FVec rho = R.rho(k);
    for (int i = 0; i < R.rank; ++i)
        x[i] = Frac::constant(nv, Rat(lam[i])) + rho[i];
    Mult minus_eps_k = signed_mult(R, k, eps, -1);
    std::map<WeightVec, Frac> out;
    for (const auto& mu : R.orbit_of_weight(lam)) {
        auto dm = R.decompose(mu);
        int vw = R.product[dm.vbar][d.w_lambda];
        Frac c = c_function(R, +1, vw, minus_eps_k, x);
        if (eps.value_of_word(R.weyl[dm.vbar].word) == -1) c = -c;
        out[mu] = c;
    }
    return out;
}

std::optional<GradedHeckeViolation> verify_graded_hecke(const RootSystem& R, const Mult& k,
                                                        int height) {
    const int nv = k[0].nvars();
    for (const auto& lam : R.full_window(height)) {
        GAElem f = GAElem::monomial(R.rank, nv, lam, Frac::constant(nv, Rat(1)));
        for (size_t s = 0; s < R.simple_idx.size(); ++s) {
            // The cross relation lives on the simple system of R0: for a
            // non-reduced simple root use its (inmultiplicable) double.
            int root0 = R.in_R0[R.simple_idx[(int)s]] ? R.simple_idx[(int)s]
                                                      : R.double_of[R.simple_idx[(int)s]];
            int refl = R.reflection_of_root[root0];
            for (int b = 0; b < R.rank; ++b) {
                RVec xi(R.rank, Rat(0));
                xi[b] = Rat(1);
                GAElem lhs = act(R, refl, dunkl_cherednik(R, xi, k, f));
                RVec rxi(R.rank);
                {
                    // r_i(xi) for the basis vector xi = e_b.
                    const auto& m = R.weyl[refl].mat;
                    for (int i = 0; i < R.rank; ++i) rxi[i] = Rat(m[i][b]);
                }
                GAElem rhs = dunkl_cherednik(R, rxi, k, act(R, refl, f));
                Rat xa = R.inner_rr(xi, R.roots[root0]);
                Frac c = R.k0_of_root(k, root0) * Frac::constant(nv, xa);
                rhs -= f.scaled(c);
                if (lhs != rhs) return GradedHeckeViolation{lam, (int)s, b};
            }
        }
    }
    return std::nullopt;
}

}  // namespace nshift
