#include "nshift/verify.hpp"

#include <chrono>
#include <future>

#include "json.hpp"
#include "nshift/errors.hpp"

namespace nshift {

using nlohmann::json;

void CaseResult::add(const std::string& identity, bool ok, const std::string& counter) {
    checks.push_back({identity, ok, ok ? "" : counter});
    pass = pass && ok;
}

std::vector<std::string> suite_names() {
    return {"hecke",        "commute",        "eigen",          "shift-principle",
            "transmutation", "shift-factor",  "sym-shift",      "adjoint",
            "norms",        "q-hecke",        "q-eigen",        "q-transmutation",
            "q-shift-principle", "q-sym-shift", "all"};
}

bool is_q_suite(const std::string& suite) { return suite.rfind("q-", 0) == 0; }

namespace {

json galg_to_json(const GAElem& f, const ScalarCtx& ctx) {
    json weights = json::array();
    json coeffs = json::array();
    for (const auto& [w, c] : f.support()) {
        weights.push_back(w);
        coeffs.push_back(scalar_to_string(c, ctx));
    }
    return json{{"weights", weights}, {"coeffs", coeffs}};
}

std::string counter_json(const std::string& input, const GAElem& lhs, const GAElem& rhs,
                         const ScalarCtx& ctx) {
    json j{{"input", input}, {"lhs", galg_to_json(lhs, ctx)}, {"rhs", galg_to_json(rhs, ctx)}};
    return j.dump();
}

std::string wstr(const WeightVec& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s;
}

const std::vector<RootType> kDiffTypes = {RootType::A1, RootType::A2, RootType::B2,
                                          RootType::BC1, RootType::BC2};
const std::vector<AffineCase> kPairs = {AffineCase::Case1A1, AffineCase::Case1A2,
                                        AffineCase::Case3C1};

struct DiffCase {
    const RootSystem* R;
    Mult k;
    int window;
    std::string params;
};

std::vector<DiffCase> diff_cases(const VerifyOptions& opt) {
    std::vector<DiffCase> out;
    for (auto t : kDiffTypes) {
        const auto& R = RootSystem::get(t);
        if (!opt.only.empty() && R.name != opt.only) continue;
        DiffCase c{&R, {}, R.rank == 1 ? opt.window_rank1 : opt.window_rank2, "symbolic"};
        if (opt.symbolic) {
            c.k = R.symbolic_mult();
        } else {
            std::vector<Rat> vals(R.num_orbits, Rat(1));
            for (int i = 0; i < R.num_orbits && i < (int)opt.assignment.size(); ++i)
                vals[i] = opt.assignment[i];
            c.k = R.rational_mult(vals);
            c.params = "assigned";
        }
        out.push_back(std::move(c));
    }
    if (out.empty() && !opt.only.empty())
        throw UnsupportedType("no catalog type matches '" + opt.only + "'");
    return out;
}

std::string diff_descriptor(const DiffCase& c, const std::string& extra = "") {
    std::string d = "type=" + c.R->name + " window=" + std::to_string(c.window) +
                    " params=" + c.params;
    if (!extra.empty()) d += " " + extra;
    return d;
}

// ---------------------------------------------------------------------------
// Differential suites

CaseResult suite_commute_case(const DiffCase& c) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor = diff_descriptor(c);
    const int nv = c.k[0].nvars();
    bool comm_ok = true, tri_ok = true;
    std::string counter;
    for (const auto& lam : R.full_window(c.window)) {
        GAElem f = GAElem::monomial(R.rank, nv, lam, Frac::constant(nv, Rat(1)));
        for (int b1 = 0; b1 < R.rank && comm_ok; ++b1)
            for (int b2 = b1 + 1; b2 < R.rank && comm_ok; ++b2) {
                RVec x1(R.rank, Rat(0)), x2(R.rank, Rat(0));
                x1[b1] = Rat(1);
                x2[b2] = Rat(1);
                GAElem l = dunkl_cherednik(R, x1, c.k, dunkl_cherednik(R, x2, c.k, f));
                GAElem r = dunkl_cherednik(R, x2, c.k, dunkl_cherednik(R, x1, c.k, f));
                if (l != r) {
                    comm_ok = false;
                    counter = counter_json("commutator at e^{" + wstr(lam) + "}", l, r, R.ctx());
                }
            }
        for (int b = 0; b < R.rank && tri_ok; ++b) {
            RVec xi(R.rank, Rat(0));
            xi[b] = Rat(1);
            GAElem g = dunkl_cherednik(R, xi, c.k, f);
            g -= f.scaled(frac_inner(R, R.spectral_vector(lam, c.k), xi));
            for (const auto& [mu, cc] : g.support()) {
                if (mu == lam || !R.order_leq(mu, lam)) {
                    tri_ok = false;
                    counter = counter_json("triangularity at e^{" + wstr(lam) + "}", g, f, R.ctx());
                }
            }
        }
    }
    out.add("commutativity [T_xi,T_eta] = 0", comm_ok, counter);
    out.add("triangularity of T_xi", tri_ok, counter);
    return out;
}

CaseResult suite_hecke_case(const DiffCase& c) {
    CaseResult out;
    out.descriptor = diff_descriptor(c);
    auto violation = verify_graded_hecke(*c.R, c.k, c.window);
    std::string counter;
    if (violation)
        counter = "{\"input\": \"lambda=" + wstr(violation->lam) +
                  " simple=" + std::to_string(violation->simple) + "\"}";
    out.add("graded Hecke cross relation", !violation.has_value(), counter);
    return out;
}

CaseResult suite_eigen_case(const DiffCase& c) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor = diff_descriptor(c);
    ECache cache(R, c.k);
    bool ok = true;
    std::string counter;
    for (const auto& mu : R.full_window(c.window)) {
        const GAElem& e = cache.E(mu);
        auto r = R.spectral_vector(mu, c.k);
        for (int b = 0; b < R.rank; ++b) {
            RVec xi(R.rank, Rat(0));
            xi[b] = Rat(1);
            GAElem lhs = dunkl_cherednik(R, xi, c.k, e);
            GAElem rhs = e.scaled(frac_inner(R, r, xi));
            if (lhs != rhs) {
                ok = false;
                counter = counter_json("T_xi E at mu=" + wstr(mu), lhs, rhs, R.ctx());
            }
        }
    }
    out.add("eigenfunction law T_xi E = (xi, r_k) E", ok, counter);
    // Orthogonality oracle at small integer multiplicities.
    if (c.params == "symbolic") {
        for (long kv : {1L, 2L}) {
            if (R.type != RootType::A1 && R.type != RootType::BC1) continue;
            Mult ki = R.rational_mult(std::vector<Rat>(R.num_orbits, Rat(kv)));
            bool orth = true;
            for (const auto& mu : R.full_window(std::min(c.window, 4))) {
                GAElem e = nonsym_E(R, mu, ki);
                for (const auto& nu : R.full_window(std::min(c.window, 4))) {
                    if (nu != mu && R.order_leq(nu, mu) &&
                        !ct_pairing(R, e,
                                    GAElem::monomial(R.rank, R.num_orbits, nu,
                                                     Frac::constant(R.num_orbits, Rat(1))),
                                    ki)
                             .is_zero())
                        orth = false;
                }
            }
            out.add("ct orthogonality of E at k=" + std::to_string(kv), orth);
        }
    }
    return out;
}

CaseResult suite_shift_principle_case(const DiffCase& c, const LinearCharacter& eps) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor = diff_descriptor(c, "char=" + eps.name);
    GAElem delta = weyl_denominator(R, eps, c.k[0].nvars());
    Mult kl = R.shifted(c.k, eps, +1);
    bool ok = true;
    std::string counter;
    for (const auto& lam0 : R.dominant_window(c.window - 1)) {
        WeightVec lam(R.rank);
        for (int i = 0; i < R.rank; ++i) lam[i] = lam0[i] + eps.rho_l[i];
        GAElem lhs = sym_P(R, lam0, R.character("triv"), kl);
        GAElem rhs;
        try {
            rhs = exact_divide(sym_P(R, lam, eps, c.k), delta);
        } catch (const DivisionRemainder&) {
            ok = false;
            counter = "{\"input\": \"division remainder at lambda=" + wstr(lam) + "\"}";
            break;
        }
        if (lhs != rhs) {
            ok = false;
            counter = counter_json("lambda=" + wstr(lam), lhs, rhs, R.ctx());
        }
    }
    out.add("P_{lam-rho_l}(k+l) = Delta_eps^{-1} P^(eps)_lam(k)", ok, counter);
    return out;
}

CaseResult suite_transmutation_case(const DiffCase& c, const LinearCharacter& eps, int dir,
                                    const QPoly& qp) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor =
        diff_descriptor(c, "char=" + eps.name + " dir=" + (dir > 0 ? "forward" : "backward"));
    const int nv = c.k[0].nvars();
    Mult ks = R.shifted(c.k, eps, dir);
    NonsymShiftOp op(R, qp, eps, dir, c.k);
    bool trans_ok = true, action_ok = true, kernel_ok = true;
    std::string counter;
    ECache low(R, c.k);
    for (const auto& mu : R.full_window(c.window)) {
        GAElem f = GAElem::monomial(R.rank, nv, mu, Frac::constant(nv, Rat(1)));
        for (int b = 0; b < R.rank && trans_ok; ++b) {
            RVec xi(R.rank, Rat(0));
            xi[b] = Rat(1);
            GAElem lhs = op.apply(dunkl_cherednik(R, xi, c.k, f));
            GAElem rhs = dunkl_cherednik(R, xi, ks, op.apply(f));
            if (lhs != rhs) {
                trans_ok = false;
                counter = counter_json("transmutation at e^{" + wstr(mu) + "}", lhs, rhs, R.ctx());
            }
        }
        GAElem img = op.apply(low.E(mu));
        Frac fac = shift_factor_cfun(R, mu, eps, dir, c.k);
        if (!R.shift_condition(mu, eps, dir)) {
            if (!img.is_zero() || !fac.is_zero()) {
                kernel_ok = false;
                counter = counter_json("kernel at mu=" + wstr(mu), img, img, R.ctx());
            }
            continue;
        }
        GAElem target = apply_mult_shift(R, low.E(R.mu_shifted(mu, eps, dir)), eps, dir);
        if (img != target.scaled(fac)) {
            action_ok = false;
            counter = counter_json("shift action at mu=" + wstr(mu), img, target.scaled(fac),
                                   R.ctx());
        }
    }
    out.add("transmutation G T_xi = T_xi G", trans_ok, counter);
    out.add("shift action G E_mu = H E_{mu_shift}", action_ok, counter);
    out.add("kernel law when v(mu) != v(mu_shift)", kernel_ok, counter);
    return out;
}

CaseResult suite_shift_factor_case(const DiffCase& c, const LinearCharacter& eps, int dir) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor =
        diff_descriptor(c, "char=" + eps.name + " dir=" + (dir > 0 ? "forward" : "backward"));
    bool agree = true, golden = true;
    std::string counter;
    for (const auto& mu : R.full_window(c.window)) {
        Frac a = shift_factor_cfun(R, mu, eps, dir, c.k);
        Frac b = shift_factor_product(R, mu, eps, dir, c.k);
        if (a != b) {
            agree = false;
            counter = "{\"input\": \"mu=" + wstr(mu) + "\", \"lhs\": \"" +
                      scalar_to_string(a, R.ctx()) + "\", \"rhs\": \"" +
                      scalar_to_string(b, R.ctx()) + "\"}";
        }
    }
    out.add("c-function form == product form", agree, counter);
    if (R.type == RootType::BC1 && eps.name == "sign" && c.params == "symbolic") {
        auto ctx = R.ctx();
        Frac k0 = ctx.k(1) + ctx.k(0) * Frac::constant(2, Rat(1, 2));
        for (int n = 0; n <= c.window - 1; ++n) {
            Frac fwd = shift_factor_cfun(R, {n + 1}, eps, +1, c.k);
            Frac bwd = shift_factor_cfun(R, {-n}, eps, -1, c.k);
            if (dir > 0 && fwd != Frac::constant(2, Rat(n))) golden = false;
            if (dir < 0 && bwd != Frac::constant(2, Rat(n)) + Frac::constant(2, Rat(2)) * k0)
                golden = false;
        }
        out.add("rank-one factors n and n + 2k0(2e1)", golden);
    }
    return out;
}

CaseResult suite_sym_shift_case(const DiffCase& c, const LinearCharacter& eps) {
    CaseResult out;
    const auto& R = *c.R;
    out.descriptor = diff_descriptor(c, "char=" + eps.name);
    Mult kl = R.shifted(c.k, eps, +1);
    bool ok = true;
    std::string counter;
    for (const auto& lam : R.dominant_window(c.window)) {
        GAElem p = sym_P(R, lam, R.character("triv"), c.k);
        GAElem lhs;
        try {
            lhs = sym_shift_apply(R, eps, c.k, p);
        } catch (const DivisionRemainder&) {
            ok = false;
            counter = "{\"input\": \"division remainder at lambda=" + wstr(lam) + "\"}";
            break;
        }
        WeightVec down(R.rank);
        for (int i = 0; i < R.rank; ++i) down[i] = lam[i] - eps.rho_l[i];
        if (!R.is_dominant(down)) {
            if (!lhs.is_zero()) {
                ok = false;
                counter = counter_json("expected zero at lambda=" + wstr(lam), lhs, p, R.ctx());
            }
            continue;
        }
        GAElem rhs =
            sym_P(R, down, R.character("triv"), kl).scaled(sym_shift_h(R, lam, eps, c.k));
        if (lhs != rhs) {
            ok = false;
            counter = counter_json("lambda=" + wstr(lam), lhs, rhs, R.ctx());
        }
    }
    out.add("G^(eps)_+ P_lam = h P_{lam-rho_l}(k+l)", ok, counter);
    return out;
}

CaseResult suite_adjoint_case(const RootSystem& R, const std::vector<Rat>& kv, int window) {
    CaseResult out;
    out.descriptor = "type=" + R.name + " window=" + std::to_string(window) + " params=assigned";
    Mult k = R.rational_mult(kv);
    bool ok = adjoint_check(R, R.character("sign"), k, window);
    out.add("(G_+(k) f, g)_{k+l} = (f, G_-(k+l) g)_k", ok);
    return out;
}

CaseResult suite_norms_case(const RootSystem& R, const std::vector<Rat>& kv, int window) {
    CaseResult out;
    out.descriptor = "type=" + R.name + " window=" + std::to_string(window) + " params=assigned";
    const auto& eps = R.character("sign");
    Mult k = R.rational_mult(kv);
    Mult km = R.shifted(k, eps, -1);
    bool ok = true;
    std::string counter;
    for (const auto& mu : R.full_window(window)) {
        if (R.decompose(mu).stabilizer.size() != 1) continue;
        GAElem hi = nonsym_E(R, mu, k);
        GAElem lo = nonsym_E(R, R.mu_shifted(mu, eps, -1), km);
        Frac oracle = ct_pairing(R, hi, hi, k) / ct_pairing(R, lo, lo, km);
        Frac formula = norm_ratio(R, mu, eps, k);
        if (oracle != formula) {
            ok = false;
            counter = "{\"input\": \"mu=" + wstr(mu) + "\", \"lhs\": \"" +
                      scalar_to_string(formula, R.ctx()) + "\", \"rhs\": \"" +
                      scalar_to_string(oracle, R.ctx()) + "\"}";
        }
    }
    out.add("norm recurrence ratio == ct oracle ratio", ok, counter);
    if (R.type == RootType::A1) {
        out.add("||E_w||^2/||E_2w||^2 = 2 at k=1",
                norm_ratio(R, {1}, eps, k) == Frac::constant(1, Rat(2)));
        out.add("||E_-w||^2/||E_-2w||^2 = 3/2 at k=1",
                norm_ratio(R, {-1}, eps, k) == Frac::constant(1, Rat(3, 2)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// q suites

struct QCase {
    const AffinePair* P;
    QMult k;
    int window;
    std::string params;
};

std::vector<QCase> q_cases(const VerifyOptions& opt) {
    std::vector<QCase> out;
    for (auto c : kPairs) {
        const auto& P = AffinePair::get(c);
        if (!opt.only.empty() && P.name != opt.only) continue;
        QCase qc{&P, {}, opt.window_q, "symbolic"};
        if (opt.symbolic) {
            qc.k = P.symbolic_mult();
        } else {
            std::vector<Rat> vals(P.num_orbits, Rat(1));
            for (int i = 0; i < P.num_orbits && i < (int)opt.assignment.size(); ++i)
                vals[i] = opt.assignment[i];
            qc.k = P.rational_mult(vals);
            qc.params = "assigned";
        }
        out.push_back(std::move(qc));
    }
    if (out.empty() && !opt.only.empty())
        throw UnsupportedCase("no supported pair matches '" + opt.only + "'");
    return out;
}

std::string q_descriptor(const QCase& c, const std::string& extra = "") {
    std::string d = "pair=" + c.P->name + " window=" + std::to_string(c.window) +
                    " params=" + c.params;
    if (!extra.empty()) d += " " + extra;
    return d;
}

CaseResult suite_q_hecke_case(const QCase& c) {
    CaseResult out;
    const auto& P = *c.P;
    out.descriptor = q_descriptor(c);
    const int nv = P.sctx.nvars;
    bool quad_ok = true, braid_ok = true;
    std::string counter;
    for (const auto& lam : P.fin->full_window(c.window)) {
        GAElem f = GAElem::monomial(P.fin->rank, nv, lam, Frac::constant(nv, Rat(1)));
        for (size_t i = 0; i < P.simple.size() && quad_ok; ++i) {
            Frac tau = q_power(P.sctx, P.tau_exp(c.k, P.simple[i]));
            GAElem t1 = dl_operator(P, (int)i, c.k, f);
            GAElem t2 = dl_operator(P, (int)i, c.k, t1);
            GAElem resid = t2 - t1.scaled(tau - tau.inv()) - f;
            if (!resid.is_zero()) {
                quad_ok = false;
                counter = counter_json("quadratic at e^{" + wstr(lam) + "}", resid, f, P.sctx);
            }
        }
        if (P.acase == AffineCase::Case1A2) {
            for (int i = 0; i < 3 && braid_ok; ++i)
                for (int j = i + 1; j < 3 && braid_ok; ++j) {
                    GAElem l = dl_operator(P, i, c.k,
                                           dl_operator(P, j, c.k, dl_operator(P, i, c.k, f)));
                    GAElem r = dl_operator(P, j, c.k,
                                           dl_operator(P, i, c.k, dl_operator(P, j, c.k, f)));
                    if (l != r) {
                        braid_ok = false;
                        counter = counter_json("braid at e^{" + wstr(lam) + "}", l, r, P.sctx);
                    }
                }
        }
    }
    out.add("quadratic Hecke relation", quad_ok, counter);
    out.add("braid relations", braid_ok, counter);
    return out;
}

CaseResult suite_q_eigen_case(const QCase& c) {
    CaseResult out;
    const auto& P = *c.P;
    out.descriptor = q_descriptor(c);
    bool comm_ok = true, eig_ok = true;
    std::string counter;
    WeightVec l1(P.fin->rank, 0), l2(P.fin->rank, 0);
    l1[0] = 1;
    l2[P.fin->rank - 1] = 1;
    EQCache cache(P, c.k);
    for (const auto& mu : P.fin->full_window(c.window)) {
        GAElem f = GAElem::monomial(P.fin->rank, P.sctx.nvars, mu,
                                    Frac::constant(P.sctx.nvars, Rat(1)));
        GAElem ab = y_operator(P, l1, c.k, y_operator(P, l2, c.k, f));
        GAElem ba = y_operator(P, l2, c.k, y_operator(P, l1, c.k, f));
        if (ab != ba) {
            comm_ok = false;
            counter = counter_json("[Y,Y] at e^{" + wstr(mu) + "}", ab, ba, P.sctx);
        }
        const GAElem& e = cache.E(mu);
        QExponent ev = -P.pair_exp(l1, P.spectral_q(mu, c.k));
        GAElem lhs = y_operator(P, l1, c.k, e);
        GAElem rhs = e.scaled(q_power(P.sctx, ev));
        if (lhs != rhs) {
            eig_ok = false;
            counter = counter_json("eigenvalue at mu=" + wstr(mu), lhs, rhs, P.sctx);
        }
    }
    out.add("Y-family commutativity", comm_ok, counter);
    out.add("eigenvalue law Y E = q^{-<lam',r_k'>} E", eig_ok, counter);
    return out;
}

CaseResult suite_q_shift_principle_case(const QCase& c, const LinearCharacter& eps) {
    CaseResult out;
    const auto& P = *c.P;
    out.descriptor = q_descriptor(c, "char=" + eps.name);
    GAElem delta = q_delta_eps(P, eps, c.k);
    QMult kl = P.shifted(c.k, eps, +1);
    WeightVec rhol = P.rho_tilde_l(eps);
    Frac pre = q_power(P.sctx, -P.k_dot_l(c.k, eps).scaled(Rat(1, 2)));
    bool ok = true;
    std::string counter;
    for (const auto& lam0 : P.fin->dominant_window(c.window - 1)) {
        WeightVec lam(P.fin->rank);
        for (int i = 0; i < P.fin->rank; ++i) lam[i] = lam0[i] + rhol[i];
        GAElem lhs = sym_P_q(P, lam0, P.fin->character("triv"), kl);
        GAElem rhs;
        try {
            rhs = exact_divide(sym_P_q(P, lam, eps, c.k), delta).scaled(pre);
        } catch (const DivisionRemainder&) {
            ok = false;
            counter = "{\"input\": \"division remainder at lambda=" + wstr(lam) + "\"}";
            break;
        }
        if (lhs != rhs) {
            ok = false;
            counter = counter_json("lambda=" + wstr(lam), lhs, rhs, P.sctx);
        }
    }
    out.add("P_{lam-rho~}(k+l^) = q^{-k.l/2} delta^{-1} P^(eps)_lam(k)", ok, counter);
    return out;
}

// Tries the plain-w reading of the symmetrizer on one transmutation
// instance; the Hecke reading is the expected survivor.
std::string select_q_variant(const QCase& c, const SteinbergQPoly& st) {
    const auto& P = *c.P;
    const auto& eps = P.fin->characters.back();  // sign
    const int nv = P.sctx.nvars;
    WeightVec probe(P.fin->rank, 0);
    probe[0] = 1;
    GAElem f = GAElem::monomial(P.fin->rank, nv, probe, Frac::constant(nv, Rat(1)));
    bool plain_ok = true;
    try {
        GAElem l = q_nonsym_shift_apply(P, st, eps, +1, c.k, y_operator(P, probe, c.k, f),
                                        QSymVariant::Plain);
        GAElem r = y_operator(P, probe, P.shifted(c.k, eps, +1),
                              q_nonsym_shift_apply(P, st, eps, +1, c.k, f, QSymVariant::Plain));
        plain_ok = l == r;
    } catch (const DivisionRemainder&) {
        plain_ok = false;
    }
    return plain_ok ? "plain" : "hecke";
}

CaseResult suite_q_transmutation_case(const QCase& c, const LinearCharacter& eps, int dir,
                                      const SteinbergQPoly& st, QSymVariant use) {
    CaseResult out;
    const auto& P = *c.P;
    out.descriptor =
        q_descriptor(c, "char=" + eps.name + " dir=" + (dir > 0 ? "forward" : "backward"));
    const int nv = P.sctx.nvars;
    QMult ks = P.shifted(c.k, eps, dir);
    QNonsymShiftOp op(P, st, eps, dir, c.k, use);
    EQCache low(P, c.k);
    bool trans_ok = true, action_ok = true, kernel_ok = true;
    std::string counter;
    WeightVec probe(P.fin->rank, 0);
    probe[0] = 1;
    for (const auto& mu : P.fin->full_window(c.window)) {
        GAElem f = GAElem::monomial(P.fin->rank, nv, mu, Frac::constant(nv, Rat(1)));
        GAElem lhs = op.apply(y_operator(P, probe, c.k, f));
        GAElem rhs = y_operator(P, probe, ks, op.apply(f));
        if (lhs != rhs) {
            trans_ok = false;
            counter = counter_json("q-transmutation at e^{" + wstr(mu) + "}", lhs, rhs, P.sctx);
        }
        GAElem img = op.apply(low.E(mu));
        Frac fac = q_shift_factor(P, mu, eps, dir, c.k);
        if (!shift_condition_q(P, mu, eps, dir)) {
            if (!img.is_zero() || !fac.is_zero()) {
                kernel_ok = false;
                counter = counter_json("kernel at mu=" + wstr(mu), img, img, P.sctx);
            }
            continue;
        }
        GAElem target =
            apply_mult_shift_q(P, low.E(mu_shifted_q(P, mu, eps, dir)), eps, dir).scaled(fac);
        if (img != target) {
            action_ok = false;
            counter = counter_json("q-shift action at mu=" + wstr(mu), img, target, P.sctx);
        }
    }
    out.add("q-transmutation G Y = Y G", trans_ok, counter);
    out.add("q-shift action G E_mu = H E_{mu_shift}", action_ok, counter);
    out.add("kernel law when v(mu) != v(mu_shift)", kernel_ok, counter);
    return out;
}

CaseResult suite_q_sym_shift_case(const QCase& c, const LinearCharacter& eps) {
    CaseResult out;
    const auto& P = *c.P;
    out.descriptor = q_descriptor(c, "char=" + eps.name);
    QMult kl = P.shifted(c.k, eps, +1);
    WeightVec rhol = P.rho_tilde_l(eps);
    bool ok = true;
    std::string counter;
    for (const auto& lam : P.fin->dominant_window(c.window)) {
        GAElem p = sym_P_q(P, lam, P.fin->character("triv"), c.k);
        GAElem lhs;
        try {
            lhs = q_sym_shift(P, eps, c.k, p);
        } catch (const DivisionRemainder&) {
            ok = false;
            counter = "{\"input\": \"division remainder at lambda=" + wstr(lam) + "\"}";
            break;
        }
        WeightVec down(P.fin->rank);
        for (int i = 0; i < P.fin->rank; ++i) down[i] = lam[i] - rhol[i];
        if (!P.fin->is_dominant(down)) {
            if (!lhs.is_zero()) ok = false;
            continue;
        }
        GAElem rhs = sym_P_q(P, down, P.fin->character("triv"), kl)
                         .scaled(q_sym_shift_h(P, lam, eps, c.k));
        if (lhs != rhs) {
            ok = false;
            counter = counter_json("lambda=" + wstr(lam), lhs, rhs, P.sctx);
        }
    }
    out.add("G^(eps)_+ P_lam = h P_{lam-rho~}(k+l^)", ok, counter);
    // Steinberg canonicity: defining property and the determinant unit.
    SteinbergQPoly st = build_q_trigpoly(P);
    bool prop_ok = true;
    for (const auto& v : P.fin->weyl) {
        GAElem acc(P.fin->rank, P.sctx.nvars);
        for (size_t w = 0; w < st.u.size(); ++w)
            acc += st.q[w] * act(*P.fin, P.fin->inverse_of[v.index], st.u[w]);
        GAElem want = v.index == 0 ? st.varpi : GAElem(P.fin->rank, P.sctx.nvars);
        if (acc != want) prop_ok = false;
    }
    out.add("qq(x, wx) = varpi'(x) delta_{e,w}", prop_ok);
    out.add("det Uhat = unit * varpi'^{|W0|/2}", st.det_unit.is_monomial());
    return out;
}

}  // namespace

SuiteReport run_suite(const std::string& suite, const VerifyOptions& opt) {
    if (suite == "all") {
        SuiteReport all;
        all.suite = "all";
        for (const auto& name : suite_names()) {
            if (name == "all") continue;
            SuiteReport sub = run_suite(name, opt);
            for (auto& c : sub.cases) {
                c.descriptor = name + ": " + c.descriptor;
                all.cases.push_back(std::move(c));
            }
            all.pass = all.pass && sub.pass;
            if (!sub.selected_variant.empty()) all.selected_variant = sub.selected_variant;
        }
        return all;
    }
    SuiteReport rep;
    rep.suite = suite;
    using Job = std::function<CaseResult()>;
    std::vector<Job> jobs;

    if (!is_q_suite(suite) && suite != "adjoint" && suite != "norms") {
        for (const auto& c : diff_cases(opt)) {
            if (suite == "commute") {
                jobs.push_back([c] { return suite_commute_case(c); });
            } else if (suite == "hecke") {
                jobs.push_back([c] { return suite_hecke_case(c); });
            } else if (suite == "eigen") {
                jobs.push_back([c] { return suite_eigen_case(c); });
            } else if (suite == "shift-principle") {
                for (const auto& eps : c.R->characters) {
                    if (eps.name == "triv") continue;
                    jobs.push_back([c, &eps] { return suite_shift_principle_case(c, eps); });
                }
            } else if (suite == "transmutation") {
                QPoly qp = build_q_poly(*c.R);
                for (const auto& eps : c.R->characters) {
                    if (eps.name == "triv") continue;
                    for (int dir : {+1, -1})
                        jobs.push_back([c, &eps, dir, qp] {
                            return suite_transmutation_case(c, eps, dir, qp);
                        });
                }
            } else if (suite == "shift-factor") {
                for (const auto& eps : c.R->characters) {
                    if (eps.name == "triv") continue;
                    for (int dir : {+1, -1})
                        jobs.push_back(
                            [c, &eps, dir] { return suite_shift_factor_case(c, eps, dir); });
                }
            } else if (suite == "sym-shift") {
                for (const auto& eps : c.R->characters) {
                    if (eps.name == "triv") continue;
                    jobs.push_back([c, &eps] { return suite_sym_shift_case(c, eps); });
                }
            } else {
                throw UnsupportedCase("unknown suite '" + suite + "'");
            }
        }
    } else if (suite == "adjoint" || suite == "norms") {
        // ct-oracle suites need nonnegative integer multiplicities.
        struct Cfg {
            RootType t;
            std::vector<Rat> k;
        };
        std::vector<Cfg> cfgs = {{RootType::A1, {Rat(1)}}, {RootType::BC1, {Rat(1), Rat(1)}}};
        for (const auto& cfg : cfgs) {
            const auto& R = RootSystem::get(cfg.t);
            if (!opt.only.empty() && R.name != opt.only) continue;
            std::vector<Rat> kv = cfg.k;
            if (!opt.symbolic && !opt.assignment.empty()) {
                kv.assign(R.num_orbits, Rat(1));
                for (int i = 0; i < R.num_orbits && i < (int)opt.assignment.size(); ++i)
                    kv[i] = opt.assignment[i];
            }
            int window = suite == "adjoint" ? std::min(opt.window_rank1, 4) : opt.window_rank1;
            if (suite == "adjoint")
                jobs.push_back([&R, kv, window] { return suite_adjoint_case(R, kv, window); });
            else
                jobs.push_back([&R, kv, window] { return suite_norms_case(R, kv, window); });
        }
    } else {
        for (const auto& c : q_cases(opt)) {
            if (suite == "q-hecke") {
                jobs.push_back([c] { return suite_q_hecke_case(c); });
            } else if (suite == "q-eigen") {
                jobs.push_back([c] { return suite_q_eigen_case(c); });
            } else if (suite == "q-shift-principle") {
                for (const auto& eps : c.P->fin->characters) {
                    if (eps.name == "triv") continue;
                    jobs.push_back([c, &eps] { return suite_q_shift_principle_case(c, eps); });
                }
            } else if (suite == "q-transmutation") {
                SteinbergQPoly st = build_q_trigpoly(*c.P);
                if (rep.selected_variant.empty())
                    rep.selected_variant = select_q_variant(c, st);
                QSymVariant use = rep.selected_variant == "plain" ? QSymVariant::Plain
                                                                  : QSymVariant::Hecke;
                for (const auto& eps : c.P->fin->characters) {
                    if (eps.name == "triv") continue;
                    for (int dir : {+1, -1})
                        jobs.push_back([c, &eps, dir, st, use] {
                            return suite_q_transmutation_case(c, eps, dir, st, use);
                        });
                }
            } else if (suite == "q-sym-shift") {
                for (const auto& eps : c.P->fin->characters) {
                    if (eps.name == "triv") continue;
                    jobs.push_back([c, &eps] { return suite_q_sym_shift_case(c, eps); });
                }
            } else {
                throw UnsupportedCase("unknown suite '" + suite + "'");
            }
        }
    }

    // Deterministic case-ordered assembly; a bounded pool when jobs > 1.
    std::vector<CaseResult> results(jobs.size());
    if (opt.jobs > 1) {
        size_t next = 0;
        while (next < jobs.size()) {
            size_t batch = std::min<size_t>(opt.jobs, jobs.size() - next);
            std::vector<std::future<CaseResult>> futs;
            for (size_t i = 0; i < batch; ++i)
                futs.push_back(std::async(std::launch::async, jobs[next + i]));
            for (size_t i = 0; i < batch; ++i) results[next + i] = futs[i].get();
            next += batch;
        }
    } else {
        for (size_t i = 0; i < jobs.size(); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            results[i] = jobs[i]();
            auto t1 = std::chrono::steady_clock::now();
            results[i].wall_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        }
    }
    for (auto& r : results) {
        rep.pass = rep.pass && r.pass;
        rep.cases.push_back(std::move(r));
    }
    return rep;
}

std::string report_to_json_text(const SuiteReport& report, bool with_timing) {
    json cases = json::array();
    for (const auto& c : report.cases) {
        json checks = json::array();
        for (const auto& ch : c.checks) {
            json j{{"identity", ch.identity}, {"pass", ch.pass}};
            if (!ch.pass) j["counterexample"] = json::parse(ch.counterexample, nullptr, false);
            checks.push_back(j);
        }
        cases.push_back(json{{"case", c.descriptor},
                             {"pass", c.pass},
                             {"wall_ms", with_timing ? c.wall_ms : 0},
                             {"checks", checks}});
    }
    json j{{"suite", report.suite}, {"pass", report.pass}, {"cases", cases}};
    if (!report.selected_variant.empty()) j["symmetrizer_variant"] = report.selected_variant;
    return j.dump(2);
}

std::string galg_to_json_text(const GAElem& f, const ScalarCtx& ctx) {
    return galg_to_json(f, ctx).dump();
}

GAElem galg_from_json_text(const std::string& text, int rank, const ScalarCtx& ctx) {
    json j = json::parse(text);
    GAElem out(rank, ctx.nvars);
    const auto& ws = j.at("weights");
    const auto& cs = j.at("coeffs");
    for (size_t i = 0; i < ws.size(); ++i) {
        WeightVec w = ws[i].get<WeightVec>();
        out.add_term(w, scalar_parse(cs[i].get<std::string>(), ctx));
    }
    return out;
}

}  // namespace nshift
