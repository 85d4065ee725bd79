#include "nshift/mpoly.hpp"

#include <cassert>

namespace nshift {

MPoly MPoly::constant(int nvars, const Rat& c) {
    MPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Expt(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(int nvars, int i, int power) {
    assert(i >= 0 && i < nvars);
    MPoly p(nvars);
    Expt e(nvars, 0);
    e[i] = power;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

MPoly MPoly::term(int nvars, const Expt& e, const Rat& c) {
    MPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (auto e : terms_.begin()->first)
        if (e != 0) return false;
    return true;
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    assert(is_constant());
    return terms_.begin()->second;
}

long MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (auto e : terms_.rbegin()->first) d += e;
    return d;
}

int MPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, (int)e[var]);
    return d;
}

bool MPoly::depends_on(int var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] != 0) return true;
    return false;
}

void MPoly::add_term(const Expt& e, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    assert(a.nvars_ == b.nvars_);
    MPoly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    Expt e(a.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

void MPoly::scale(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly r = *this;
    r.scale(c);
    return r;
}

MPoly MPoly::mul_term(const Expt& e, const Rat& c) const {
    MPoly r(nvars_);
    if (c.is_zero()) return r;
    Expt f(nvars_, 0);
    for (const auto& [ea, ca] : terms_) {
        for (int i = 0; i < nvars_; ++i) f[i] = ea[i] + e[i];
        r.terms_.emplace(f, ca * c);
    }
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& f, const MPoly& g) {
    assert(f.nvars_ == g.nvars_);
    if (g.is_zero()) return std::nullopt;
    MPoly q(f.nvars_);
    MPoly rem = f;
    const Expt& eg = g.leading_expt();
    const Rat& cg = g.leading_coeff();
    Expt e(f.nvars_, 0);
    while (!rem.is_zero()) {
        const Expt& ef = rem.leading_expt();
        for (int i = 0; i < f.nvars_; ++i) {
            e[i] = ef[i] - eg[i];
            if (e[i] < 0) return std::nullopt;
        }
        Rat c = rem.leading_coeff() / cg;
        q.add_term(e, c);
        rem -= g.mul_term(e, c);
    }
    return q;
}

MPoly MPoly::int_primitive() const {
    if (is_zero()) return *this;
    // Clear denominators, divide by integer content, fix the sign.
    Int den_lcm = 1, num_gcd = 0;
    for (const auto& [e, c] : terms_) den_lcm = lcm_int(den_lcm, c.den());
    for (const auto& [e, c] : terms_) num_gcd = gcd_int(num_gcd, c.num() * (den_lcm / c.den()));
    Rat s(den_lcm, num_gcd);
    if (leading_coeff().sign() < 0) s = -s;
    return scaled(s);
}

namespace {

MPoly gcd_z(const MPoly& a, const MPoly& b);

// View of p as a univariate polynomial in variable `var` with MPoly
// coefficients (exponent of `var` zeroed out in the coefficient keys).
std::map<int, MPoly> split_by_var(const MPoly& p, int var) {
    std::map<int, MPoly> out;
    for (const auto& [e, c] : p.terms()) {
        Expt f = e;
        int d = f[var];
        f[var] = 0;
        auto [it, inserted] = out.try_emplace(d, MPoly(p.nvars()));
        it->second.add_term(f, c);
    }
    return out;
}

// Content of p wrt `var`: gcd of the coefficients of the powers of `var`.
MPoly content_in(const MPoly& p, int var) {
    MPoly c(p.nvars());
    for (const auto& [d, coeff] : split_by_var(p, var)) c = gcd_z(c, coeff);
    return c;
}

// Pseudo-remainder of f by g wrt `var` (deg_var f >= deg_var g >= 1).
MPoly pseudo_rem(MPoly f, const MPoly& g, int var, int nvars) {
    auto gparts = split_by_var(g, var);
    int dg = gparts.rbegin()->first;
    const MPoly& lcg = gparts.rbegin()->second;
    while (!f.is_zero()) {
        auto fparts = split_by_var(f, var);
        int df = fparts.rbegin()->first;
        if (df < dg) break;
        const MPoly& lcf = fparts.rbegin()->second;
        Expt shift(nvars, 0);
        shift[var] = df - dg;
        // f <- lcg*f - lcf*v^(df-dg)*g kills the leading v-term.
        f = f * lcg - g.mul_term(shift, Rat(1)) * lcf;
    }
    return f;
}

Int int_content(const MPoly& p) {
    Int g = 0;
    for (const auto& [e, c] : p.terms()) g = gcd_int(g, c.num());
    return g;
}

Int max_abs_coeff(const MPoly& p) {
    Int m = 0;
    for (const auto& [e, c] : p.terms()) {
        Int v = abs(c.num());
        if (v > m) m = v;
    }
    return m;
}

// Coefficient-wise balanced remainder mod xi, into [-xi/2, xi/2).
MPoly balanced_mod(const MPoly& p, const Int& xi) {
    MPoly out(p.nvars());
    Int half = xi / 2;
    for (const auto& [e, c] : p.terms()) {
        Int r = c.num() % xi;
        if (r >= half) r -= xi;
        if (r < -half) r += xi;
        if (r != 0) out.add_term(e, Rat(r));
    }
    return out;
}

// Heuristic gcd (Char-Geddes-Gonnet): evaluate one variable at a large
// integer, gcd the images recursively, reconstruct by balanced base-xi
// digits, certify by trial division. Inputs are integer polynomials that
// both depend on `var`; the result carries no guaranteed content
// normalization. nullopt when all retries fail.
std::optional<MPoly> gcd_heu(const MPoly& a, const MPoly& b, int var) {
    int degbound = std::min(a.degree_in(var), b.degree_in(var));
    Int na = max_abs_coeff(a), nb = max_abs_coeff(b);
    Int xi = 2 * std::min(na, nb) + 2;
    for (int tries = 0; tries < 6; ++tries, xi = (xi * 73794) / 27011 + 1) {
        std::vector<std::optional<Rat>> at(a.nvars(), std::nullopt);
        at[var] = Rat(xi);
        MPoly fa = a.substitute(at), fb = b.substitute(at);
        if (fa.is_zero() || fb.is_zero()) continue;
        MPoly gamma = gcd_z(fa, fb);
        MPoly h(a.nvars());
        Expt e(a.nvars(), 0);
        int i = 0;
        for (; !gamma.is_zero() && i <= degbound; ++i) {
            MPoly digit = balanced_mod(gamma, xi);
            e[var] = i;
            h += digit.mul_term(e, Rat(1));
            gamma -= digit;
            gamma.scale(Rat(Int(1), xi));
        }
        if (!gamma.is_zero()) continue;
        h = h.int_primitive();
        if (h.is_zero()) continue;
        if (MPoly::divide_exact(a, h) && MPoly::divide_exact(b, h)) return h;
    }
    return std::nullopt;
}

// Gcd over the integers, exact including integer content.
MPoly gcd_z(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Int g0 = gcd_int(int_content(a), int_content(b));
    MPoly A = a.scaled(Rat(Int(1), int_content(a)));
    MPoly B = b.scaled(Rat(Int(1), int_content(b)));
    Rat content{g0};
    if (A.is_constant() || B.is_constant()) return MPoly::constant(a.nvars(), content);
    if (A.is_monomial() || B.is_monomial()) {
        Expt e = (A.is_monomial() ? A : B).leading_expt();
        const MPoly& other = A.is_monomial() ? B : A;
        for (const auto& [f, c] : other.terms())
            for (int i = 0; i < a.nvars(); ++i) e[i] = std::min(e[i], f[i]);
        return MPoly::term(a.nvars(), e, content);
    }
    if (A == B || A == -B) return A.int_primitive().scaled(content);
    int var = -1;
    for (int i = a.nvars() - 1; i >= 0; --i) {
        if (A.depends_on(i) || B.depends_on(i)) {
            var = i;
            break;
        }
    }
    if (!A.depends_on(var) || !B.depends_on(var)) {
        const MPoly& free = A.depends_on(var) ? B : A;
        const MPoly& dep = A.depends_on(var) ? A : B;
        return gcd_z(free, content_in(dep, var)).scaled(content);
    }
    if (auto h = gcd_heu(A, B, var)) return h->scaled(content);
    // Fallback: primitive PRS in `var`.
    MPoly ca = content_in(A, var), cb = content_in(B, var);
    MPoly f = *MPoly::divide_exact(A, ca), g = *MPoly::divide_exact(B, cb);
    MPoly cont = gcd_z(ca, cb);
    if (split_by_var(f, var).rbegin()->first < split_by_var(g, var).rbegin()->first)
        std::swap(f, g);
    while (true) {
        if (g.is_zero()) break;
        if (!g.depends_on(var)) {
            f = MPoly::constant(a.nvars(), Rat(1));
            break;
        }
        MPoly r = pseudo_rem(f, g, var, a.nvars());
        f = g;
        if (r.is_zero()) {
            g = r;
        } else {
            g = *MPoly::divide_exact(r, content_in(r, var));
        }
    }
    return (cont * f.int_primitive()).scaled(content);
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.int_primitive();
    if (b.is_zero()) return a.int_primitive();
    // Monomial fast path: per-variable min exponents, unit content.
    if (a.is_monomial() || b.is_monomial()) {
        Expt e = (a.is_monomial() ? a : b).leading_expt();
        const MPoly& other = a.is_monomial() ? b : a;
        for (const auto& [f, c] : other.terms_)
            for (int i = 0; i < a.nvars_; ++i) e[i] = std::min(e[i], f[i]);
        return MPoly::term(a.nvars_, e, Rat(1));
    }
    MPoly ia = a.int_primitive(), ib = b.int_primitive();
    if (ia == ib) return ia;
    return gcd_z(ia, ib).int_primitive();
}

Rat MPoly::eval(const std::vector<Rat>& values) const {
    assert((int)values.size() == nvars_);
    Rat out(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nvars_; ++i) {
            for (int j = 0; j < e[i]; ++j) t *= values[i];
        }
        out += t;
    }
    return out;
}

MPoly MPoly::substitute(const std::vector<std::optional<Rat>>& values) const {
    assert((int)values.size() == nvars_);
    MPoly out(nvars_);
    Expt f(nvars_, 0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nvars_; ++i) {
            if (values[i]) {
                f[i] = 0;
                for (int j = 0; j < e[i]; ++j) t *= *values[i];
            } else {
                f[i] = e[i];
            }
        }
        out.add_term(f, t);
    }
    return out;
}

MPoly MPoly::shift_vars(const std::vector<Rat>& offsets) const {
    assert((int)offsets.size() == nvars_);
    MPoly cur = *this;
    for (int v = 0; v < nvars_; ++v) {
        if (offsets[v].is_zero() || !cur.depends_on(v)) continue;
        auto parts = split_by_var(cur, v);
        int top = parts.rbegin()->first;
        // Horner in x_v with x_v + c.
        MPoly acc(nvars_);
        MPoly xv = MPoly::variable(nvars_, v);
        MPoly cc = MPoly::constant(nvars_, offsets[v]);
        for (int d = top; d >= 0; --d) {
            acc = acc * xv + acc * cc;
            auto it = parts.find(d);
            if (it != parts.end()) acc += it->second;
        }
        cur = acc;
    }
    return cur;
}

void MPoly::twist_exponents(const std::vector<int>& shift_into_x0) {
    assert((int)shift_into_x0.size() == nvars_);
    TermMap out;
    for (const auto& [e, c] : terms_) {
        Expt f = e;
        for (int i = 1; i < nvars_; ++i) f[0] += shift_into_x0[i] * e[i];
        out.emplace(std::move(f), c);
    }
    terms_ = std::move(out);
}

MPoly MPoly::widened(int new_nvars) const {
    assert(new_nvars >= nvars_);
    MPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Expt f(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) f[i] = e[i];
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

}  // namespace nshift
