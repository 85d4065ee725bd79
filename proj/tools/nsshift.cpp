// Command-line interface: compute Heckman-Opdam / Macdonald-Koornwinder
// polynomials and shift-operator actions, and run the verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nshift/errors.hpp"
#include "nshift/verify.hpp"

using namespace nshift;
using nlohmann::json;

namespace {

WeightVec parse_weight(const std::string& s, int rank) {
    WeightVec w;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (cur.empty()) throw ParseError("empty weight coordinate");
            w.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if ((int)w.size() != rank)
        throw ParseError("weight '" + s + "' has wrong rank (want " + std::to_string(rank) + ")");
    return w;
}

std::vector<Rat> parse_assignment(const std::string& s) {
    std::vector<Rat> vals;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) vals.push_back(Rat::parse(cur));
            cur.clear();
        } else if (!std::isspace((unsigned char)ch)) {
            cur += ch;
        }
    }
    return vals;
}

std::vector<Rat> read_config(const std::string& path) {
    // key=value lines, keys k1..kn.
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::map<int, Rat> byidx;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        if (key.size() < 2 || key[0] != 'k') throw ParseError("bad config key '" + key + "'");
        byidx[std::stoi(key.substr(1)) - 1] = Rat::parse(line.substr(eq + 1));
    }
    std::vector<Rat> out;
    for (const auto& [i, v] : byidx) {
        while ((int)out.size() < i) out.push_back(Rat(1));
        out.push_back(v);
    }
    return out;
}

Mult make_mult(const RootSystem& R, bool symbolic, const std::vector<Rat>& vals) {
    if (symbolic) return R.symbolic_mult();
    std::vector<Rat> v(R.num_orbits, Rat(1));
    for (int i = 0; i < R.num_orbits && i < (int)vals.size(); ++i) v[i] = vals[i];
    return R.rational_mult(v);
}

QMult make_qmult(const AffinePair& P, bool symbolic, const std::vector<Rat>& vals) {
    if (symbolic) return P.symbolic_mult();
    std::vector<Rat> v(P.num_orbits, Rat(1));
    for (int i = 0; i < P.num_orbits && i < (int)vals.size(); ++i) v[i] = vals[i];
    return P.rational_mult(v);
}

int cmd_poly(const std::string& kind, bool qcase, const std::string& type_label,
             const std::string& pair_label, const std::string& weight,
             const std::string& charname, bool symbolic, const std::vector<Rat>& vals) {
    if (!qcase) {
        const auto& R = RootSystem::get(parse_type(type_label));
        WeightVec lam = parse_weight(weight, R.rank);
        Mult k = make_mult(R, symbolic, vals);
        GAElem out;
        if (kind == "E") {
            out = nonsym_E(R, lam, k);
        } else {
            if (!R.is_dominant(lam)) throw ParseError("P needs a dominant weight");
            out = sym_P(R, lam, R.character(charname), k);
        }
        std::cout << galg_to_json_text(out, R.ctx()) << "\n";
    } else {
        const auto& P = AffinePair::get(parse_pair(pair_label));
        WeightVec lam = parse_weight(weight, P.fin->rank);
        QMult k = make_qmult(P, symbolic, vals);
        GAElem out;
        if (kind == "E") {
            out = nonsym_E_q(P, lam, k);
        } else {
            if (!P.fin->is_dominant(lam)) throw ParseError("P needs a dominant weight");
            out = sym_P_q(P, lam, P.fin->character(charname), k);
        }
        std::cout << galg_to_json_text(out, P.sctx) << "\n";
    }
    return 0;
}

int cmd_shift(bool qcase, const std::string& type_label, const std::string& pair_label,
              const std::string& charname, const std::string& dirname,
              const std::string& on_E, const std::string& on_monomial, bool symbolic,
              const std::vector<Rat>& vals) {
    int dir = dirname == "forward" ? +1 : -1;
    json out;
    if (!qcase) {
        const auto& R = RootSystem::get(parse_type(type_label));
        const auto& eps = R.character(charname);
        Mult k = make_mult(R, symbolic, vals);
        QPoly qp = build_q_poly(R);
        GAElem f;
        if (!on_E.empty()) {
            WeightVec mu = parse_weight(on_E, R.rank);
            f = nonsym_E(R, mu, k);
            GAElem img = nonsym_shift_apply(R, qp, eps, dir, k, f);
            out["image"] = json::parse(galg_to_json_text(img, R.ctx()));
            Frac closed = shift_factor_cfun(R, mu, eps, dir, k);
            out["closed_form_factor"] = scalar_to_string(closed, R.ctx());
            WeightVec tgt = R.mu_shifted(mu, eps, dir);
            Frac extracted = img.coeff(tgt);
            GAElem target = apply_mult_shift(R, nonsym_E(R, tgt, k), eps, dir);
            if (img == target.scaled(extracted))
                out["extracted_factor"] = scalar_to_string(extracted, R.ctx());
        } else {
            f = GAElem::monomial(R.rank, k[0].nvars(), parse_weight(on_monomial, R.rank),
                                 Frac::constant(k[0].nvars(), Rat(1)));
            out["image"] = json::parse(
                galg_to_json_text(nonsym_shift_apply(R, qp, eps, dir, k, f), R.ctx()));
        }
    } else {
        const auto& P = AffinePair::get(parse_pair(pair_label));
        const auto& eps = P.fin->character(charname);
        QMult k = make_qmult(P, symbolic, vals);
        SteinbergQPoly st = build_q_trigpoly(P);
        if (!on_E.empty()) {
            WeightVec mu = parse_weight(on_E, P.fin->rank);
            GAElem img = q_nonsym_shift_apply(P, st, eps, dir, k, nonsym_E_q(P, mu, k),
                                              QSymVariant::Hecke);
            out["image"] = json::parse(galg_to_json_text(img, P.sctx));
            out["closed_form_factor"] =
                scalar_to_string(q_shift_factor(P, mu, eps, dir, k), P.sctx);
            WeightVec tgt = mu_shifted_q(P, mu, eps, dir);
            Frac extracted = img.coeff(tgt);
            GAElem target = apply_mult_shift_q(P, nonsym_E_q(P, tgt, k), eps, dir);
            if (img == target.scaled(extracted))
                out["extracted_factor"] = scalar_to_string(extracted, P.sctx);
        } else {
            GAElem f = GAElem::monomial(P.fin->rank, P.sctx.nvars,
                                        parse_weight(on_monomial, P.fin->rank),
                                        Frac::constant(P.sctx.nvars, Rat(1)));
            out["image"] = json::parse(galg_to_json_text(
                q_nonsym_shift_apply(P, st, eps, dir, k, f, QSymVariant::Hecke), P.sctx));
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact shift-operator engine for non-symmetric Heckman-Opdam and "
                 "Macdonald-Koornwinder polynomials"};
    app.require_subcommand(1);

    // poly
    auto* poly = app.add_subcommand("poly", "compute E/P polynomials");
    std::string kind = "E", type_label = "A1", pair_label = "case1:A1", weight = "0";
    std::string charname = "triv", dirname = "forward";
    bool use_q = false, use_diff = false;
    std::string kassign, config_path;
    poly->add_option("kind", kind, "E or P")->check(CLI::IsMember({"E", "P"}));
    poly->add_flag("--q", use_q, "Macdonald-Koornwinder case");
    poly->add_flag("--diff", use_diff, "Heckman-Opdam case (default)");
    poly->add_option("--type", type_label, "root system label (A1,A2,B2,C2,BC1,BC2)");
    poly->add_option("--pair", pair_label, "affine pair label (case1:A1,case1:A2,case3:C1vC1)");
    poly->add_option("--weight", weight, "comma-separated weight coordinates")->required();
    poly->add_option("--char", charname, "character for P (triv,sign,eps-short,eps-long)");
    poly->add_option("--k", kassign, "rational multiplicity assignment, e.g. \"1,1/2\"");
    poly->add_option("--config", config_path, "key=value file assigning k1=...,k2=...");

    // shift
    auto* shift = app.add_subcommand("shift", "apply a non-symmetric shift operator");
    std::string on_E, on_monomial;
    shift->add_flag("--q", use_q, "q-case");
    shift->add_flag("--diff", use_diff, "differential case (default)");
    shift->add_option("--type", type_label, "root system label");
    shift->add_option("--pair", pair_label, "affine pair label");
    shift->add_option("--char", charname, "character")->required();
    shift->add_option("--dir", dirname, "forward or backward")
        ->check(CLI::IsMember({"forward", "backward"}));
    shift->add_option("--E", on_E, "apply to E_mu (weight coordinates)");
    shift->add_option("--monomial", on_monomial, "apply to e^lambda (weight coordinates)");
    shift->add_option("--k", kassign, "rational multiplicity assignment");
    shift->add_option("--config", config_path, "key=value multiplicity file");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int window = 0, jobs = 1;
    bool symbolic_flag = false, no_timing = false;
    std::string only;
    verify->add_option("--suite", suite, "suite name or 'all'")->required();
    verify->add_option("--type", only, "restrict to one root system");
    verify->add_option("--pair", only, "restrict to one affine pair");
    verify->add_option("--window", window, "weight window height");
    verify->add_flag("--symbolic", symbolic_flag, "symbolic multiplicities (default)");
    verify->add_option("--k", kassign, "rational multiplicity assignment");
    verify->add_option("--config", config_path, "key=value multiplicity file");
    verify->add_option("--jobs", jobs, "bounded worker pool size");
    verify->add_flag("--no-timing", no_timing, "zero wall_ms for byte-identical reports");

    // probe-fundamental
    auto* probe = app.add_subcommand("probe-fundamental",
                                     "experimental decomposition probe (never a gate)");
    probe->add_option("--type", type_label, "root system label");
    probe->add_option("--char", charname, "character")->required();
    probe->add_option("--dir", dirname, "forward or backward");
    probe->add_option("--window", window, "weight window height");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<Rat> vals;
        if (!config_path.empty()) vals = read_config(config_path);
        if (!kassign.empty()) vals = parse_assignment(kassign);
        bool symbolic = vals.empty();

        if (poly->parsed())
            return cmd_poly(kind, use_q, type_label, pair_label, weight, charname, symbolic,
                            vals);
        if (shift->parsed()) {
            if (on_E.empty() == on_monomial.empty())
                throw ParseError("pass exactly one of --E or --monomial");
            return cmd_shift(use_q, type_label, pair_label, charname, dirname, on_E,
                             on_monomial, symbolic, vals);
        }
        if (probe->parsed()) {
            const auto& R = RootSystem::get(parse_type(type_label));
            int h = window > 0 ? window : (R.rank == 1 ? 6 : 4);
            bool ok = fundamental_probe(R, R.character(charname),
                                        dirname == "forward" ? +1 : -1, h);
            json j{{"type", type_label},
                   {"char", charname},
                   {"dir", dirname},
                   {"window", h},
                   {"residual_factor_polynomial", ok}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.only = only;
            opt.jobs = jobs;
            opt.symbolic = symbolic;
            opt.assignment = vals;
            opt.with_timing = !no_timing;
            if (const char* env = std::getenv("NSSHIFT_WINDOW")) {
                int w = std::atoi(env);
                if (w > 0) {
                    opt.window_rank1 = w;
                    opt.window_rank2 = std::max(1, w - 2);
                    opt.window_q = std::max(1, w - 3);
                }
            }
            if (window > 0) {
                opt.window_rank1 = opt.window_rank2 = opt.window_q = window;
            }
            bool known = false;
            for (const auto& s : suite_names()) known = known || s == suite;
            if (!known) {
                std::cerr << "unknown suite '" << suite << "'\n";
                return 2;
            }
            SuiteReport rep = run_suite(suite, opt);
            std::cout << report_to_json_text(rep, opt.with_timing) << "\n";
            return rep.pass ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UnsupportedType& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UnsupportedCase& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UnavailableCharacter& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
