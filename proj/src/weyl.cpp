#include "nshift/weyl.hpp"

#include <algorithm>
#include <cassert>

#include "nshift/errors.hpp"
#include "nshift/linalg.hpp"

namespace nshift {

std::string type_name(RootType t) {
    switch (t) {
        case RootType::A1: return "A1";
        case RootType::A2: return "A2";
        case RootType::B2: return "B2";
        case RootType::C2: return "C2";
        case RootType::BC1: return "BC1";
        case RootType::BC2: return "BC2";
    }
    return "?";
}

RootType parse_type(const std::string& label) {
    if (label == "A1") return RootType::A1;
    if (label == "A2") return RootType::A2;
    if (label == "B2") return RootType::B2;
    if (label == "C2") return RootType::C2;
    if (label == "BC1") return RootType::BC1;
    if (label == "BC2") return RootType::BC2;
    throw UnsupportedType("unknown root system '" + label + "'");
}

namespace {

WeightVec scaled_weight(const WeightVec& v, int s) {
    WeightVec r = v;
    for (auto& x : r) x *= s;
    return r;
}

bool halvable(const WeightVec& v) {
    for (auto x : v)
        if (x % 2 != 0) return false;
    return true;
}

std::vector<int> matvec(const std::vector<std::vector<int>>& m, const std::vector<int>& v) {
    int n = (int)v.size();
    std::vector<int> r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += m[i][j] * v[j];
    return r;
}

std::vector<std::vector<int>> matmul(const std::vector<std::vector<int>>& a,
                                     const std::vector<std::vector<int>>& b) {
    int n = (int)a.size();
    std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

}  // namespace

int parse_weyl_word(const RootSystem& R, const std::string& text) {
    int cur = 0;
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) return;
        if (tok[0] != 's') throw ParseError("bad Weyl word token '" + tok + "'");
        int i = std::stoi(tok.substr(1)) - 1;
        if (i < 0 || i >= (int)R.simple_idx.size())
            throw ParseError("simple reflection out of range in '" + tok + "'");
        cur = R.product[cur][R.reflection_of_root[R.simple_idx[i]]];
        tok.clear();
    };
    for (char ch : text + " ") {
        if (std::isspace((unsigned char)ch))
            flush();
        else
            tok += ch;
    }
    return cur;
}

Rat RootSystem::inner(const WeightVec& x, const WeightVec& y) const {
    Rat out(0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) out += gram[i][j] * Rat(x[i]) * Rat(y[j]);
    return out;
}

Rat RootSystem::inner_rr(const RVec& x, const WeightVec& y) const {
    Rat out(0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) out += gram[i][j] * x[i] * Rat(y[j]);
    return out;
}

Frac RootSystem::inner(const FVec& x, const WeightVec& y) const {
    Frac out(x.empty() ? 0 : x[0].nvars());
    for (int i = 0; i < rank; ++i) {
        Rat gi(0);
        for (int j = 0; j < rank; ++j) gi += gram[i][j] * Rat(y[j]);
        if (!gi.is_zero()) out += x[i] * Frac::constant(x[i].nvars(), gi);
    }
    return out;
}

Rat RootSystem::pair_coroot(const WeightVec& lam, int root) const {
    return Rat(2) * inner(lam, roots[root]) / inner(roots[root], roots[root]);
}

Frac RootSystem::pair_coroot(const FVec& x, int root) const {
    Rat scale = Rat(2) / inner(roots[root], roots[root]);
    Frac out = inner(x, roots[root]);
    return out * Frac::constant(out.nvars(), scale);
}

WeightVec RootSystem::apply(int w, const WeightVec& lam) const {
    return matvec(weyl[w].mat, lam);
}

FVec RootSystem::apply(int w, const FVec& x) const {
    const auto& m = weyl[w].mat;
    FVec r(rank, Frac(x[0].nvars()));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            if (m[i][j] != 0) r[i] += x[j] * Frac::constant(x[j].nvars(), Rat(m[i][j]));
    return r;
}

WeightVec RootSystem::reflect_root(int w, int root) const { return apply(w, roots[root]); }

int RootSystem::root_index(const WeightVec& v) const {
    auto it = root_lookup_.find(v);
    return it == root_lookup_.end() ? -1 : it->second;
}

bool RootSystem::is_dominant(const WeightVec& lam) const {
    for (int s : simple_idx)
        if (pair_coroot(lam, s) < Rat(0)) return false;
    return true;
}

RVec RootSystem::simple_root_coords(const WeightVec& lam) const {
    std::vector<std::vector<Rat>> a(rank, std::vector<Rat>(rank));
    std::vector<Rat> b(rank);
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) a[i][j] = Rat(roots[simple_idx[j]][i]);
        b[i] = Rat(lam[i]);
    }
    RVec x;
    bool ok = field_solve(a, b, &x);
    assert(ok);
    (void)ok;
    return x;
}

const LinearCharacter& RootSystem::character(const std::string& cname) const {
    for (const auto& c : characters)
        if (c.name == cname) return c;
    throw UnavailableCharacter("'" + cname + "' on " + name);
}

Mult RootSystem::symbolic_mult() const {
    Mult k;
    auto c = ctx();
    for (int i = 0; i < num_orbits; ++i) k.push_back(c.k(i));
    return k;
}

Mult RootSystem::rational_mult(const std::vector<Rat>& values) const {
    assert((int)values.size() == num_orbits);
    Mult k;
    for (const auto& v : values) k.push_back(Frac::constant(num_orbits, v));
    return k;
}

Mult RootSystem::shifted(const Mult& k, const LinearCharacter& eps, int dir) const {
    Mult out = k;
    for (int i = 0; i < num_orbits; ++i)
        out[i] += Frac::constant(k[i].nvars(), Rat(dir * eps.l_per_orbit[i]));
    return out;
}

Frac RootSystem::k_of_root(const Mult& k, int root) const { return k[orbit_of[root]]; }

Frac RootSystem::k0_of_root(const Mult& k, int root) const {
    assert(in_R0[root]);
    Frac out = k_of_root(k, root);
    if (half_of[root] >= 0)
        out += k_of_root(k, half_of[root]) * Frac::constant(out.nvars(), Rat(1, 2));
    return out;
}

FVec RootSystem::rho(const Mult& k) const {
    int nv = k[0].nvars();
    FVec r(rank, Frac(nv));
    for (int p = 0; p < num_positive; ++p) {
        Frac half_k = k_of_root(k, p) * Frac::constant(nv, Rat(1, 2));
        for (int i = 0; i < rank; ++i)
            r[i] += half_k * Frac::constant(nv, Rat(roots[p][i]));
    }
    return r;
}

DominantDecomposition RootSystem::decompose(const WeightVec& mu) const {
    DominantDecomposition d;
    for (const auto& w : weyl) {
        WeightVec im = apply(w.index, mu);
        if (is_dominant(im)) {
            d.lambda_plus = im;
            break;
        }
    }
    int best_v = -1, best_vbar = -1;
    for (const auto& w : weyl) {
        if (apply(w.index, d.lambda_plus) == mu &&
            (best_vbar < 0 || w.length < weyl[best_vbar].length))
            best_vbar = w.index;
        WeightVec im = apply(w.index, mu);
        bool anti = true;
        for (int s : simple_idx)
            if (pair_coroot(im, s) > Rat(0)) anti = false;
        if (anti && (best_v < 0 || w.length < weyl[best_v].length)) best_v = w.index;
        if (apply(w.index, d.lambda_plus) == d.lambda_plus) d.stabilizer.push_back(w.index);
    }
    d.vbar = best_vbar;
    d.v = best_v;
    d.w_lambda = d.stabilizer[0];
    for (int s : d.stabilizer)
        if (weyl[s].length > weyl[d.w_lambda].length) d.w_lambda = s;
    return d;
}

bool RootSystem::dominance_leq(const WeightVec& lam, const WeightVec& mu) const {
    WeightVec diff(rank);
    for (int i = 0; i < rank; ++i) diff[i] = mu[i] - lam[i];
    for (const Rat& c : simple_root_coords(diff)) {
        if (!c.is_integer() || c < Rat(0)) return false;
    }
    return true;
}

bool RootSystem::order_leq(const WeightVec& lam, const WeightVec& mu) const {
    auto dl = decompose(lam), dm = decompose(mu);
    if (dl.lambda_plus != dm.lambda_plus)
        return dominance_leq(dl.lambda_plus, dm.lambda_plus);
    return bruhat[dl.vbar][dm.vbar];
}

FVec RootSystem::spectral_vector(const WeightVec& lam, const Mult& k) const {
    int nv = k[0].nvars();
    FVec r(rank, Frac(nv));
    for (int i = 0; i < rank; ++i) r[i] = Frac::constant(nv, Rat(lam[i]));
    for (int p = 0; p < num_positive; ++p) {
        int eps = pair_coroot(lam, p) > Rat(0) ? 1 : -1;
        Frac c = k_of_root(k, p) * Frac::constant(nv, Rat(eps, 2));
        for (int i = 0; i < rank; ++i)
            r[i] += c * Frac::constant(nv, Rat(roots[p][i]));
    }
    return r;
}

WeightVec RootSystem::mu_shifted(const WeightVec& mu, const LinearCharacter& eps, int dir) const {
    auto d = decompose(mu);
    WeightVec target(rank);
    for (int i = 0; i < rank; ++i) target[i] = d.lambda_plus[i] - dir * eps.rho_l[i];
    return apply(product[d.vbar][d.w_lambda], target);
}

bool RootSystem::shift_condition(const WeightVec& mu, const LinearCharacter& eps, int dir) const {
    return decompose(mu).v == decompose(mu_shifted(mu, eps, dir)).v;
}

std::vector<WeightVec> RootSystem::dominant_window(int height) const {
    std::vector<WeightVec> out;
    // Box enumeration filtered by dominance; catalog bases have nonnegative
    // coordinates on dominant weights.
    std::vector<int> idx(rank, 0);
    while (true) {
        int sum = 0;
        for (int i = 0; i < rank; ++i) sum += idx[i];
        if (sum <= height) {
            WeightVec lam(idx.begin(), idx.end());
            if (is_dominant(lam)) out.push_back(lam);
        }
        int p = rank - 1;
        while (p >= 0 && ++idx[p] > height) idx[p--] = 0;
        if (p < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<WeightVec> RootSystem::full_window(int height) const {
    std::vector<WeightVec> out;
    for (const auto& lam : dominant_window(height))
        for (const auto& mu : orbit_of_weight(lam)) out.push_back(mu);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<WeightVec> RootSystem::orbit_of_weight(const WeightVec& lam) const {
    std::vector<WeightVec> out;
    for (const auto& w : weyl) out.push_back(apply(w.index, lam));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Catalog construction

namespace {

struct CatalogEntry {
    int rank;
    std::vector<std::vector<Rat>> gram;
    std::vector<WeightVec> positive;   // positive roots, simple ones first
    int num_simple;
};

CatalogEntry catalog_data(RootType t) {
    switch (t) {
        case RootType::A1:
            return {1, {{Rat(1, 2)}}, {{2}}, 1};
        case RootType::A2:
            return {2,
                    {{Rat(2, 3), Rat(1, 3)}, {Rat(1, 3), Rat(2, 3)}},
                    {{2, -1}, {-1, 2}, {1, 1}},
                    2};
        case RootType::B2:
            // Basis omega1 = e1, omega2 = (e1+e2)/2.
            return {2,
                    {{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}},
                    {{2, -2}, {-1, 2}, {1, 0}, {0, 2}},
                    2};
        case RootType::C2:
            // Basis omega1 = e1, omega2 = e1+e2.
            return {2,
                    {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}},
                    {{2, -1}, {-2, 2}, {0, 1}, {2, 0}},
                    2};
        case RootType::BC1:
            return {1, {{Rat(1)}}, {{1}, {2}}, 1};
        case RootType::BC2:
            // Epsilon basis.
            return {2,
                    {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                    {{1, -1}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {0, 2}},
                    2};
    }
    throw UnsupportedType("catalog");
}

}  // namespace

RootSystem RootSystem::build(RootType t) {
    RootSystem R;
    R.type = t;
    R.name = type_name(t);
    CatalogEntry cat = catalog_data(t);
    R.rank = cat.rank;
    R.gram = cat.gram;
    for (const auto& a : cat.positive) R.roots.push_back(a);
    R.num_positive = (int)R.roots.size();
    for (const auto& a : cat.positive) R.roots.push_back(scaled_weight(a, -1));
    for (int i = 0; i < (int)R.roots.size(); ++i) R.root_lookup_[R.roots[i]] = i;
    for (int i = 0; i < cat.num_simple; ++i) R.simple_idx.push_back(i);

    int nroots = (int)R.roots.size();
    R.in_R0.resize(nroots);
    R.double_of.assign(nroots, -1);
    R.half_of.assign(nroots, -1);
    for (int i = 0; i < nroots; ++i) {
        R.double_of[i] = R.root_index(scaled_weight(R.roots[i], 2));
        if (halvable(R.roots[i])) {
            WeightVec h = R.roots[i];
            for (auto& x : h) x /= 2;
            R.half_of[i] = R.root_index(h);
        }
        R.in_R0[i] = R.double_of[i] < 0;
    }

    // Simple reflection matrices on the weight basis.
    std::vector<std::vector<std::vector<int>>> simple_mats;
    for (int s = 0; s < cat.num_simple; ++s) {
        std::vector<std::vector<int>> m(R.rank, std::vector<int>(R.rank, 0));
        for (int j = 0; j < R.rank; ++j) {
            WeightVec ej(R.rank, 0);
            ej[j] = 1;
            Rat p = R.pair_coroot(ej, R.simple_idx[s]);
            assert(p.is_integer());
            long pi = p.num().get_si();
            for (int i = 0; i < R.rank; ++i)
                m[i][j] = (i == j ? 1 : 0) - (int)pi * R.roots[R.simple_idx[s]][i];
        }
        simple_mats.push_back(std::move(m));
    }

    // Enumerate W breadth-first; first discovery gives a reduced word.
    std::map<std::vector<std::vector<int>>, int> seen;
    WeylElt id;
    id.index = 0;
    id.mat.assign(R.rank, std::vector<int>(R.rank, 0));
    for (int i = 0; i < R.rank; ++i) id.mat[i][i] = 1;
    R.weyl.push_back(id);
    seen[id.mat] = 0;
    for (size_t head = 0; head < R.weyl.size(); ++head) {
        for (int s = 0; s < cat.num_simple; ++s) {
            auto m = matmul(R.weyl[head].mat, simple_mats[s]);
            if (seen.count(m)) continue;
            WeylElt w;
            w.index = (int)R.weyl.size();
            w.word = R.weyl[head].word;
            w.word.push_back(s);
            w.mat = m;
            w.length = (int)w.word.size();
            seen[w.mat] = w.index;
            R.weyl.push_back(std::move(w));
        }
    }
    R.longest = 0;
    for (const auto& w : R.weyl)
        if (w.length > R.weyl[R.longest].length) R.longest = w.index;

    int nw = (int)R.weyl.size();
    R.product.assign(nw, std::vector<int>(nw));
    R.inverse_of.assign(nw, 0);
    for (int a = 0; a < nw; ++a)
        for (int b = 0; b < nw; ++b) {
            int p = seen.at(matmul(R.weyl[a].mat, R.weyl[b].mat));
            R.product[a][b] = p;
            if (p == 0) R.inverse_of[a] = b;
        }

    // Root orbits under W, numbered by increasing root length.
    R.orbit_of.assign(nroots, -1);
    R.num_orbits = 0;
    std::vector<int> order(nroots);
    for (int i = 0; i < nroots; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return R.inner(R.roots[i], R.roots[i]) < R.inner(R.roots[j], R.roots[j]);
    });
    for (int i : order) {
        if (R.orbit_of[i] >= 0) continue;
        int id_orbit = R.num_orbits++;
        std::vector<int> stack = {i};
        R.orbit_of[i] = id_orbit;
        while (!stack.empty()) {
            int r = stack.back();
            stack.pop_back();
            for (int w = 0; w < nw; ++w) {
                int im = R.root_index(R.apply(w, R.roots[r]));
                if (R.orbit_of[im] < 0) {
                    R.orbit_of[im] = id_orbit;
                    stack.push_back(im);
                }
            }
        }
    }

    // Reflection elements and their conjugacy classes.
    R.reflection_of_root.assign(nroots, -1);
    for (int r = 0; r < nroots; ++r) {
        std::vector<std::vector<int>> m(R.rank, std::vector<int>(R.rank, 0));
        for (int j = 0; j < R.rank; ++j) {
            WeightVec ej(R.rank, 0);
            ej[j] = 1;
            Rat p = R.pair_coroot(ej, r);
            assert(p.is_integer());
            long pi = p.num().get_si();
            for (int i = 0; i < R.rank; ++i)
                m[i][j] = (i == j ? 1 : 0) - (int)pi * R.roots[r][i];
        }
        R.reflection_of_root[r] = seen.at(m);
    }
    std::vector<int> class_of_elt(nw, -1);
    int nclasses = 0;
    std::vector<Rat> class_minlen;
    for (int orb = 0; orb < R.num_orbits; ++orb) {
        int root = -1;
        for (int r = 0; r < nroots; ++r)
            if (R.orbit_of[r] == orb) {
                root = r;
                break;
            }
        int refl = R.reflection_of_root[root];
        if (class_of_elt[refl] < 0) {
            int cls = nclasses++;
            class_minlen.push_back(R.inner(R.roots[root], R.roots[root]));
            for (int w = 0; w < nw; ++w) {
                int conj = R.product[R.product[w][refl]][R.inverse_of[w]];
                class_of_elt[conj] = cls;
            }
        }
    }
    R.refl_class_of_orbit.assign(R.num_orbits, -1);
    for (int r = 0; r < nroots; ++r)
        R.refl_class_of_orbit[R.orbit_of[r]] = class_of_elt[R.reflection_of_root[r]];

    // Bruhat order via the subword property.
    R.bruhat.assign(nw, std::vector<bool>(nw, false));
    for (int w = 0; w < nw; ++w) {
        const auto& word = R.weyl[w].word;
        int L = (int)word.size();
        for (int mask = 0; mask < (1 << L); ++mask) {
            int cur = 0;
            for (int p = 0; p < L; ++p)
                if (mask & (1 << p)) cur = R.product[cur][seen.at(simple_mats[word[p]])];
            R.bruhat[cur][w] = true;
        }
    }

    // Linear characters: one +-1 value per reflection conjugacy class.
    std::vector<int> class_of_simple(cat.num_simple);
    for (int s = 0; s < cat.num_simple; ++s)
        class_of_simple[s] = class_of_elt[R.reflection_of_root[R.simple_idx[s]]];
    for (int mask = 0; mask < (1 << nclasses); ++mask) {
        LinearCharacter ch;
        std::vector<int> sign_of_class(nclasses);
        for (int c = 0; c < nclasses; ++c) sign_of_class[c] = (mask & (1 << c)) ? -1 : 1;
        for (int s = 0; s < cat.num_simple; ++s)
            ch.on_simple.push_back(sign_of_class[class_of_simple[s]]);
        bool all_neg = true, all_pos = true;
        for (int c = 0; c < nclasses; ++c) {
            all_neg = all_neg && sign_of_class[c] == -1;
            all_pos = all_pos && sign_of_class[c] == 1;
        }
        if (all_pos) {
            ch.name = "triv";
        } else if (all_neg) {
            ch.name = "sign";
        } else {
            // Exactly one negative class here (nclasses == 2).
            int neg = sign_of_class[0] == -1 ? 0 : 1;
            ch.name = class_minlen[neg] < class_minlen[1 - neg] ? "eps-short" : "eps-long";
        }
        ch.l_per_orbit.assign(R.num_orbits, 0);
        for (int orb = 0; orb < R.num_orbits; ++orb) {
            int root = -1;
            for (int r = 0; r < nroots; ++r)
                if (R.orbit_of[r] == orb) {
                    root = r;
                    break;
                }
            if (R.in_R0[root] &&
                ch.value_of_word(R.weyl[R.reflection_of_root[root]].word) == -1)
                ch.l_per_orbit[orb] = 1;
        }
        std::vector<Rat> rho2(R.rank, Rat(0));
        for (int p = 0; p < R.num_positive; ++p) {
            if (ch.l_per_orbit[R.orbit_of[p]] == 0) continue;
            for (int i = 0; i < R.rank; ++i) rho2[i] += Rat(R.roots[p][i], 2);
        }
        ch.rho_l.assign(R.rank, 0);
        for (int i = 0; i < R.rank; ++i) {
            if (!rho2[i].is_integer())
                throw HalfWeightNotInLattice("rho_l has non-integral coordinates on " + R.name);
            ch.rho_l[i] = (int)rho2[i].num().get_si();
        }
        R.characters.push_back(std::move(ch));
    }
    std::sort(R.characters.begin(), R.characters.end(),
              [](const LinearCharacter& a, const LinearCharacter& b) {
                  auto key = [](const std::string& n) {
                      if (n == "triv") return 0;
                      if (n == "eps-short") return 1;
                      if (n == "eps-long") return 2;
                      return 3;
                  };
                  return key(a.name) < key(b.name);
              });
    return R;
}

const RootSystem& RootSystem::get(RootType t) {
    static const RootSystem a1 = build(RootType::A1);
    static const RootSystem a2 = build(RootType::A2);
    static const RootSystem b2 = build(RootType::B2);
    static const RootSystem c2 = build(RootType::C2);
    static const RootSystem bc1 = build(RootType::BC1);
    static const RootSystem bc2 = build(RootType::BC2);
    switch (t) {
        case RootType::A1: return a1;
        case RootType::A2: return a2;
        case RootType::B2: return b2;
        case RootType::C2: return c2;
        case RootType::BC1: return bc1;
        case RootType::BC2: return bc2;
    }
    throw UnsupportedType("catalog");
}

}  // namespace nshift
