#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nshift/errors.hpp"
#include "nshift/qshift.hpp"

using namespace nshift;

namespace {

GAElem expo(const AffinePair& P, const WeightVec& w) {
    return GAElem::monomial(P.fin->rank, P.sctx.nvars, w,
                            Frac::constant(P.sctx.nvars, Rat(1)));
}

// Two-slot expansion of sum_j a_j (x) b_j over the lattice pairs.
std::map<std::pair<WeightVec, WeightVec>, Frac> two_slot(const std::vector<GAElem>& a,
                                                         const std::vector<GAElem>& b) {
    std::map<std::pair<WeightVec, WeightVec>, Frac> out;
    for (size_t j = 0; j < a.size(); ++j)
        for (const auto& [wa, ca] : a[j].support())
            for (const auto& [wb, cb] : b[j].support()) {
                auto key = std::make_pair(wa, wb);
                auto it = out.find(key);
                if (it == out.end())
                    out.emplace(key, ca * cb);
                else {
                    it->second += ca * cb;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
    return out;
}

}  // namespace

TEST_CASE("steinberg basis") {
    const auto& a1 = AffinePair::get(AffineCase::Case1A1);
    auto u1 = steinberg_basis(a1);
    CHECK(u1[0] == GAElem::one(1, 2));
    CHECK(u1[1] == expo(a1, {-1}));

    const auto& a2 = AffinePair::get(AffineCase::Case1A2);
    auto u2 = steinberg_basis(a2);
    std::set<WeightVec> got;
    for (const auto& u : u2) {
        CHECK(u.support().size() == 1);
        got.insert(u.support().begin()->first);
    }
    std::set<WeightVec> expect = {{0, 0}, {-1, 0}, {0, -1}, {-1, 1}, {1, -1}, {-1, -1}};
    CHECK(got == expect);

    const auto& c1 = AffinePair::get(AffineCase::Case3C1);
    auto u3 = steinberg_basis(c1);
    CHECK(u3[0] == GAElem::one(1, c1.sctx.nvars));
    CHECK(u3[1] == expo(c1, {-1}));
}

TEST_CASE("trigonometric interpolation polynomial") {
    for (auto c : {AffineCase::Case1A1, AffineCase::Case3C1, AffineCase::Case1A2}) {
        const auto& P = AffinePair::get(c);
        SteinbergQPoly st = build_q_trigpoly(P);
        // defining property: sum_w q_w (u_w o v) = delta_{e,v} varpi'
        for (const auto& v : P.fin->weyl) {
            GAElem acc(P.fin->rank, P.sctx.nvars);
            for (size_t w = 0; w < st.u.size(); ++w)
                acc += st.q[w] * act(*P.fin, P.fin->inverse_of[v.index], st.u[w]);
            if (v.index == 0)
                CHECK(acc == st.varpi);
            else
                CHECK(acc.is_zero());
        }
        // det(Uhat) = unit * varpi^{d/2}
        CHECK(st.det_unit.is_monomial());
    }
    // A1: constructed form e^{lam1} (x) 1 - 1 (x) e^{-lam1} with lam1 = omega
    const auto& a1 = AffinePair::get(AffineCase::Case1A1);
    SteinbergQPoly st = build_q_trigpoly(a1);
    auto lhs = two_slot(st.q, st.u);
    auto rhs = two_slot({expo(a1, {1}), -expo(a1, {0})}, {expo(a1, {0}), expo(a1, {-1})});
    CHECK(lhs == rhs);

    // A2 paper form: sum_{j<=3} u*_{7-j} (x) u_j - sum_{j>=4} u*_{7-j} (x) u_j
    const auto& a2 = AffinePair::get(AffineCase::Case1A2);
    SteinbergQPoly st2 = build_q_trigpoly(a2);
    auto build = [&](const WeightVec& w) { return expo(a2, w); };
    std::vector<GAElem> paper_u = {build({0, 0}),  build({-1, 0}),  build({0, -1}),
                                   build({-1, 1}), build({1, -1}),  build({-1, -1})};
    std::vector<GAElem> paper_q;
    for (int j = 0; j < 6; ++j) {
        GAElem star = paper_u[5 - j].star();
        paper_q.push_back(j < 3 ? star : -star);
    }
    CHECK(two_slot(st2.q, st2.u) == two_slot(paper_q, paper_u));
}

TEST_CASE("delta elements") {
    const auto& a1 = AffinePair::get(AffineCase::Case1A1);
    auto k0 = a1.rational_mult({Rat(0)});
    // delta_{a,0} = e^{a/2} - e^{-a/2}
    CHECK(q_delta_single(a1, 0, k0) == expo(a1, {1}) - expo(a1, {-1}));
    // trivial character: empty product
    CHECK(q_delta_eps(a1, a1.fin->character("triv"), a1.symbolic_mult()) ==
          GAElem::one(1, 2));
    // A1 sign: tau e^{w} - tau^{-1} e^{-w}
    auto k = a1.symbolic_mult();
    Frac tau = q_power(a1.sctx, a1.tau_exp(k, a1.simple[1]));
    CHECK(q_delta_eps(a1, a1.fin->character("sign"), k) ==
          expo(a1, {1}).scaled(tau) - expo(a1, {-1}).scaled(tau.inv()));

    // (C1v,C1) sign: the 4-term Laurent element with tau-monomial coefficients
    const auto& c1 = AffinePair::get(AffineCase::Case3C1);
    auto kc = c1.symbolic_mult();
    GAElem d = q_delta_eps(c1, c1.fin->character("sign"), kc);
    Frac tau1 = q_power(c1.sctx, c1.tau_exp(kc, AffRoot{{1}, Rat(0)}));
    Frac ttil1 = q_power(c1.sctx, c1.tau_tilde_exp(kc, AffRoot{{1}, Rat(0)}));
    GAElem expect(1, 4);
    expect.add_term({1}, tau1);
    expect.add_term({0}, ttil1 - ttil1.inv());
    expect.add_term({-1}, -tau1.inv());
    CHECK(d == expect);
    CHECK(d.support().size() == 3);
}

TEST_CASE("q-shift principle") {
    for (auto c : {AffineCase::Case1A1, AffineCase::Case3C1, AffineCase::Case1A2}) {
        const auto& P = AffinePair::get(c);
        auto k = P.symbolic_mult();
        int h = P.fin->rank == 1 ? 3 : 2;
        for (const auto& eps : P.fin->characters) {
            GAElem delta = q_delta_eps(P, eps, k);
            QMult kl = P.shifted(k, eps, +1);
            WeightVec rhol = P.rho_tilde_l(eps);
            Frac pre = q_power(P.sctx, -P.k_dot_l(k, eps).scaled(Rat(1, 2)));
            for (const auto& lam0 : P.fin->dominant_window(h)) {
                WeightVec lam(P.fin->rank);
                for (int i = 0; i < P.fin->rank; ++i) lam[i] = lam0[i] + rhol[i];
                GAElem lhs = sym_P_q(P, lam0, P.fin->character("triv"), kl);
                GAElem rhs = exact_divide(sym_P_q(P, lam, eps, k), delta).scaled(pre);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("corollary normalizations of the shift principle") {
    for (auto c : {AffineCase::Case1A1, AffineCase::Case3C1}) {
        const auto& P = AffinePair::get(c);
        auto k = P.symbolic_mult();
        for (const auto& eps : P.fin->characters) {
            WeightVec rhol = P.rho_tilde_l(eps);
            for (const auto& lam0 : P.fin->dominant_window(2)) {
                // forward: delta^{-1} P^{(eps)}_lam(k) = q^{k.l/2} P_{lam-rho~}(k+l^)
                WeightVec lam(P.fin->rank);
                for (int i = 0; i < P.fin->rank; ++i) lam[i] = lam0[i] + rhol[i];
                GAElem fwd = exact_divide(sym_P_q(P, lam, eps, k), q_delta_eps(P, eps, k));
                Frac qn = q_power(P.sctx, P.k_dot_l(k, eps).scaled(Rat(1, 2)));
                CHECK(fwd == sym_P_q(P, lam0, P.fin->character("triv"),
                                     P.shifted(k, eps, +1))
                                 .scaled(qn));
                // backward: delta_{eps,k-l^} P_lam(k) = q^{n^-} P^{(eps)}_{lam+rho~}(k-l^)
                GAElem bwd = q_delta_eps(P, eps, P.shifted(k, eps, -1)) *
                             sym_P_q(P, lam0, P.fin->character("triv"), k);
                Frac qm = q_power(
                    P.sctx, -P.k_dot_l(P.shifted(k, eps, -1), eps).scaled(Rat(1, 2)));
                CHECK(bwd ==
                      sym_P_q(P, lam, eps, P.shifted(k, eps, -1)).scaled(qm));
            }
        }
    }
}

TEST_CASE("symmetric q-shift operator") {
    const auto& P = AffinePair::get(AffineCase::Case1A1);
    auto k = P.symbolic_mult();
    const auto& sgn = P.fin->character("sign");
    // G_+ P_0 = 0
    CHECK(q_sym_shift(P, sgn, k, GAElem::one(1, 2)).is_zero());
    CHECK_THROWS_AS(q_sym_shift(P, sgn, k, expo(P, {1})), NotInvariantInput);
    // A1: G_+ P_omega = h P_0 with h = q^{k/2} delta'_{eps,-k'}(omega + rho_{k'})
    GAElem pw = sym_P_q(P, {1}, P.fin->character("triv"), k);
    GAElem lhs = q_sym_shift(P, sgn, k, pw);
    Frac h = q_sym_shift_h(P, {1}, sgn, k);
    CHECK(lhs == GAElem::one(1, 2).scaled(h));

    // eigen-relation on windows for all pairs and characters
    for (auto c : {AffineCase::Case1A1, AffineCase::Case3C1, AffineCase::Case1A2}) {
        const auto& Q = AffinePair::get(c);
        auto kk = Q.symbolic_mult();
        int h2 = Q.fin->rank == 1 ? 3 : 2;
        for (const auto& eps : Q.fin->characters) {
            if (eps.name == "triv") continue;
            QMult kl = Q.shifted(kk, eps, +1);
            WeightVec rhol = Q.rho_tilde_l(eps);
            for (const auto& lam : Q.fin->dominant_window(h2)) {
                GAElem p = sym_P_q(Q, lam, Q.fin->character("triv"), kk);
                GAElem img = q_sym_shift(Q, eps, kk, p);
                WeightVec down(Q.fin->rank);
                for (int i = 0; i < Q.fin->rank; ++i) down[i] = lam[i] - rhol[i];
                if (!Q.fin->is_dominant(down)) {
                    CHECK(img.is_zero());
                    continue;
                }
                CHECK(img == sym_P_q(Q, down, Q.fin->character("triv"), kl)
                                 .scaled(q_sym_shift_h(Q, lam, eps, kk)));
            }
        }
    }
}

TEST_CASE("theorem B: variant selection, transmutation, shift action") {
    // Select the symmetrizer variant on the smallest pair first.
    const auto& P = AffinePair::get(AffineCase::Case1A1);
    auto k = P.symbolic_mult();
    const auto& sgn = P.fin->character("sign");
    SteinbergQPoly st = build_q_trigpoly(P);
    WeightVec probe = {1};
    auto transmutes = [&](QSymVariant variant) {
        try {
            for (const auto& lam : P.fin->full_window(2)) {
                GAElem f = expo(P, lam);
                GAElem lhs = q_nonsym_shift_apply(P, st, sgn, +1, k,
                                                  y_operator(P, probe, k, f), variant);
                GAElem rhs = y_operator(P, probe, P.shifted(k, sgn, +1),
                                        q_nonsym_shift_apply(P, st, sgn, +1, k, f, variant));
                if (lhs != rhs) return false;
            }
        } catch (const DivisionRemainder&) {
            return false;  // the plain-w reading does not even divide
        }
        return true;
    };
    bool hecke_ok = transmutes(QSymVariant::Hecke);
    bool plain_ok = transmutes(QSymVariant::Plain);
    CHECK(hecke_ok);
    CHECK(!plain_ok);

    // Full check with the selected variant on all pairs.
    for (auto c : {AffineCase::Case1A1, AffineCase::Case3C1}) {
        const auto& Q = AffinePair::get(c);
        auto kk = Q.symbolic_mult();
        SteinbergQPoly stq = build_q_trigpoly(Q);
        WeightVec pr = {1};
        for (const auto& eps : Q.fin->characters) {
            if (eps.name == "triv") continue;
            for (int dir : {+1, -1}) {
                QMult ks = Q.shifted(kk, eps, dir);
                EQCache low(Q, kk), high(Q, ks);
                for (const auto& mu : Q.fin->full_window(2)) {
                    // transmutation on monomials
                    GAElem f = expo(Q, mu);
                    CHECK(q_nonsym_shift_apply(Q, stq, eps, dir, kk,
                                               y_operator(Q, pr, kk, f), QSymVariant::Hecke) ==
                          y_operator(Q, pr, ks,
                                     q_nonsym_shift_apply(Q, stq, eps, dir, kk, f,
                                                          QSymVariant::Hecke)));
                    // shift action against the factor formula
                    GAElem img = q_nonsym_shift_apply(Q, stq, eps, dir, kk, low.E(mu),
                                                      QSymVariant::Hecke);
                    if (!shift_condition_q(Q, mu, eps, dir)) {
                        CHECK(img.is_zero());
                        CHECK(q_shift_factor(Q, mu, eps, dir, kk).is_zero());
                        continue;
                    }
                    WeightVec tgt = mu_shifted_q(Q, mu, eps, dir);
                    CHECK(img == high.E(tgt).scaled(q_shift_factor(Q, mu, eps, dir, kk)));
                }
            }
        }
    }
}

TEST_CASE("q shift factor examples") {
    const auto& P = AffinePair::get(AffineCase::Case1A1);
    auto k = P.symbolic_mult();
    const auto& sgn = P.fin->character("sign");
    // forward at mu = 0 vanishes (lambda - rho~_l not dominant)
    CHECK(q_shift_factor(P, {0}, sgn, +1, k).is_zero());
    // backward at mu = 0 is nonzero
    CHECK(!q_shift_factor(P, {0}, sgn, -1, k).is_zero());
}

TEST_CASE("half-weight guard on single delta factors") {
    const auto& a2 = AffinePair::get(AffineCase::Case1A2);
    // alpha_1/2 is not in the A2 weight lattice
    CHECK_THROWS_AS(q_delta_single(a2, 0, a2.symbolic_mult()), HalfWeightNotInLattice);
    // but the aggregated sign-character product is a lattice element
    GAElem d = q_delta_eps(a2, a2.fin->character("sign"), a2.symbolic_mult());
    CHECK(!d.is_zero());
}
