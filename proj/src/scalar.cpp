#include "nshift/scalar.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

#include "nshift/errors.hpp"

namespace nshift {

Frac::Frac(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    canonicalize();
}

Frac Frac::variable(int nvars, int i, int power) {
    if (power >= 0) return of(MPoly::variable(nvars, i, power));
    return Frac(MPoly::constant(nvars, Rat(1)), MPoly::variable(nvars, i, -power));
}

bool Frac::is_one() const {
    return num_.is_constant() && den_.is_constant() && num_.constant_value().is_one() &&
           den_.constant_value().is_one();
}

Rat Frac::constant_value() const {
    assert(is_constant());
    if (num_.is_zero()) return Rat(0);
    return num_.constant_value() / den_.constant_value();
}

void Frac::canonicalize() {
    if (num_.is_zero()) {
        den_ = MPoly::constant(num_.nvars(), Rat(1));
        return;
    }
    if (!den_.is_constant()) {
        MPoly g = MPoly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *MPoly::divide_exact(num_, g);
            den_ = *MPoly::divide_exact(den_, g);
        }
    }
    Rat lc = den_.leading_coeff();
    if (!lc.is_one()) {
        Rat s = lc.inv();
        num_.scale(s);
        den_.scale(s);
    }
}

Frac Frac::operator-() const {
    Frac r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {

bool is_one_poly(const MPoly& p) { return p.is_constant() && p.constant_value().is_one(); }

}  // namespace

Frac operator+(const Frac& a, const Frac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant())
        return Frac::constant(a.nvars(), a.constant_value() + b.constant_value());
    if (a.den_ == b.den_) {
        if (is_one_poly(a.den_)) {
            // polynomial + polynomial: already canonical
            MPoly s = a.num_ + b.num_;
            Frac r(a.nvars());
            if (!s.is_zero()) r = Frac::of(s);
            return r;
        }
        return Frac(a.num_ + b.num_, a.den_);
    }
    MPoly g = MPoly::gcd(a.den_, b.den_);
    if (g.is_constant()) return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    MPoly ar = *MPoly::divide_exact(a.den_, g);
    MPoly br = *MPoly::divide_exact(b.den_, g);
    return Frac(a.num_ * br + b.num_ * ar, a.den_ * br);
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac(a.nvars());
    if (a.is_constant() && b.is_constant())
        return Frac::constant(a.nvars(), a.constant_value() * b.constant_value());
    // scalar * fraction needs no reduction
    if (a.is_constant() && a.den_.is_constant()) {
        Frac r = b;
        r.num_.scale(a.constant_value());
        return r;
    }
    if (b.is_constant() && b.den_.is_constant()) {
        Frac r = a;
        r.num_.scale(b.constant_value());
        return r;
    }
    if (is_one_poly(a.den_) && is_one_poly(b.den_)) {
        Frac r(a.nvars());
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        return r;
    }
    MPoly g1 = MPoly::gcd(a.num_, b.den_);
    MPoly g2 = MPoly::gcd(b.num_, a.den_);
    MPoly n = *MPoly::divide_exact(a.num_, g1) * *MPoly::divide_exact(b.num_, g2);
    MPoly d = *MPoly::divide_exact(a.den_, g2) * *MPoly::divide_exact(b.den_, g1);
    return Frac(n, d);
}

Frac operator/(const Frac& a, const Frac& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return a * b.inv();
}

Frac Frac::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return Frac(den_, num_);
}

bool operator<(const Frac& a, const Frac& b) {
    auto cmp_poly = [](const MPoly& x, const MPoly& y) -> int {
        if (x.terms().size() != y.terms().size())
            return x.terms().size() < y.terms().size() ? -1 : 1;
        auto it = x.terms().begin();
        auto jt = y.terms().begin();
        for (; it != x.terms().end(); ++it, ++jt) {
            if (it->first != jt->first) return it->first < jt->first ? -1 : 1;
            if (it->second != jt->second) return it->second < jt->second ? -1 : 1;
        }
        return 0;
    };
    int c = cmp_poly(a.num_, b.num_);
    if (c != 0) return c < 0;
    return cmp_poly(a.den_, b.den_) < 0;
}

Frac Frac::specialize(const std::vector<std::optional<Rat>>& values) const {
    MPoly n = num_.substitute(values);
    MPoly d = den_.substitute(values);
    if (d.is_zero()) throw PoleAtSpecialization("denominator vanishes under assignment");
    return Frac(n, d);
}

Frac Frac::shift_params(const std::vector<Rat>& offsets) const {
    // An invertible substitution: coprimality and the monic leading
    // denominator coefficient survive, so no re-reduction is needed.
    Frac r;
    r.num_ = num_.shift_vars(offsets);
    r.den_ = den_.shift_vars(offsets);
    return r;
}

Frac Frac::twist_qpow(const std::vector<int>& qs_shift_per_u) const {
    MPoly n = num_, d = den_;
    n.twist_exponents(qs_shift_per_u);
    d.twist_exponents(qs_shift_per_u);
    // Balance possibly negative q_s exponents with a common monomial.
    int mn = 0;
    for (const auto& [e, c] : n.terms()) mn = std::min(mn, (int)e[0]);
    for (const auto& [e, c] : d.terms()) mn = std::min(mn, (int)e[0]);
    if (mn < 0) {
        Expt shift(n.nvars(), 0);
        shift[0] = -mn;
        n = n.mul_term(shift, Rat(1));
        d = d.mul_term(shift, Rat(1));
    }
    return Frac(n, d);
}

Frac Frac::widened(int new_nvars) const {
    Frac r;
    r.num_ = num_.widened(new_nvars);
    r.den_ = den_.widened(new_nvars);
    return r;
}

ScalarCtx ScalarCtx::params(int num_orbits) {
    ScalarCtx c;
    c.kind = Kind::Param;
    c.nvars = num_orbits;
    return c;
}

ScalarCtx ScalarCtx::qpow(int num_orbits, int e) {
    ScalarCtx c;
    c.kind = Kind::QPow;
    c.nvars = 1 + num_orbits;
    c.two_e = 2 * e;
    return c;
}

QExponent QExponent::of_pure(int num_orbits, const Rat& p) {
    QExponent x(num_orbits);
    x.pure = p;
    return x;
}

QExponent QExponent::of_k(int num_orbits, int i, const Rat& c) {
    QExponent x(num_orbits);
    x.kcoeff[i] = c;
    return x;
}

QExponent QExponent::operator-() const { return scaled(Rat(-1)); }

QExponent& QExponent::operator+=(const QExponent& o) {
    assert(kcoeff.size() == o.kcoeff.size());
    pure += o.pure;
    for (size_t i = 0; i < kcoeff.size(); ++i) kcoeff[i] += o.kcoeff[i];
    return *this;
}

QExponent& QExponent::operator-=(const QExponent& o) { return *this += -o; }

QExponent QExponent::scaled(const Rat& c) const {
    QExponent x = *this;
    x.pure *= c;
    for (auto& k : x.kcoeff) k *= c;
    return x;
}

bool QExponent::is_zero() const {
    if (!pure.is_zero()) return false;
    for (const auto& k : kcoeff)
        if (!k.is_zero()) return false;
    return true;
}

Frac q_power(const ScalarCtx& ctx, const QExponent& x) {
    assert(ctx.kind == ScalarCtx::Kind::QPow);
    assert((int)x.kcoeff.size() == ctx.nvars - 1);
    Expt pos(ctx.nvars, 0), neg(ctx.nvars, 0);
    auto place = [&](int var, const Rat& scaled_exp) {
        if (!scaled_exp.is_integer())
            throw NonRepresentableExponent("q-exponent " + scaled_exp.str() +
                                           " not realizable on variable index " +
                                           std::to_string(var));
        long e = scaled_exp.num().get_si();
        if (e >= 0)
            pos[var] = (int)e;
        else
            neg[var] = (int)-e;
    };
    place(0, x.pure * Rat(ctx.two_e));
    for (size_t i = 0; i < x.kcoeff.size(); ++i) place(1 + (int)i, x.kcoeff[i] * Rat(2));
    return Frac(MPoly::term(ctx.nvars, pos, Rat(1)), MPoly::term(ctx.nvars, neg, Rat(1)));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string exponent_str(const Rat& e) {
    if (e.is_integer()) return e.str();
    return "(" + e.str() + ")";
}

// One monomial over the ctx variable names; exponents may be negative
// (QPow Laurent form) or fractional after the q_s -> q, u -> t rescale.
std::string monomial_str(const ScalarCtx& ctx, const std::vector<Rat>& exps, const Rat& coeff,
                         bool leading) {
    std::string out;
    Rat c = coeff;
    if (c.sign() < 0) {
        out += "-";
        c = -c;
    } else if (!leading) {
        out += "+";
    }
    std::string vars;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i].is_zero()) continue;
        std::string name;
        if (ctx.kind == ScalarCtx::Kind::Param) {
            name = "k" + std::to_string(i + 1);
        } else {
            name = (i == 0) ? "q" : ("t" + std::to_string(i));
        }
        if (!vars.empty()) vars += "*";
        vars += name;
        if (!exps[i].is_one()) vars += "^" + exponent_str(exps[i]);
    }
    if (vars.empty()) return out + c.str();
    if (!c.is_one()) out += c.str() + "*";
    return out + vars;
}

std::vector<Rat> display_exponents(const ScalarCtx& ctx, const Expt& num_e, const Expt& den_e) {
    std::vector<Rat> exps(ctx.nvars);
    for (int i = 0; i < ctx.nvars; ++i) {
        Rat e = Rat(num_e.empty() ? 0 : num_e[i]) - Rat(den_e.empty() ? 0 : den_e[i]);
        if (ctx.kind == ScalarCtx::Kind::QPow) e /= (i == 0) ? Rat(ctx.two_e) : Rat(2);
        exps[i] = e;
    }
    return exps;
}

std::string poly_str(const MPoly& p, const ScalarCtx& ctx) {
    if (p.is_zero()) return "0";
    std::string out;
    bool leading = true;
    // Descending graded-lex order.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        out += monomial_str(ctx, display_exponents(ctx, it->first, {}), it->second, leading);
        leading = false;
    }
    return out;
}

}  // namespace

std::string scalar_to_string(const Frac& f, const ScalarCtx& ctx) {
    if (f.is_zero()) return "0";
    if (f.is_monomial()) {
        return monomial_str(ctx,
                            display_exponents(ctx, f.num().leading_expt(), f.den().leading_expt()),
                            f.num().leading_coeff() / f.den().leading_coeff(), true);
    }
    auto wrap = [&](const MPoly& p) {
        std::string s = poly_str(p, ctx);
        if (p.terms().size() > 1 || s.find('*') != std::string::npos ||
            s.find('^') != std::string::npos)
            return "(" + s + ")";
        return s;
    };
    if (f.den().is_constant()) {
        if (f.den().constant_value().is_one()) return poly_str(f.num(), ctx);
        return wrap(f.num()) + "/" + f.den().constant_value().str();
    }
    return wrap(f.num()) + "/" + wrap(f.den());
}

// ---------------------------------------------------------------------------
// Parsing (recursive descent over + - * / ^ ( ) INT IDENT)

namespace {

struct Lexer {
    std::string s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "' in scalar expression");
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        if (start == pos) throw ParseError("expected identifier");
        return s.substr(start, pos - start);
    }
    Int integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) throw ParseError("expected integer");
        return Int(s.substr(start, pos - start));
    }
};

struct Parser {
    Lexer lex;
    const ScalarCtx& ctx;

    explicit Parser(const std::string& text, const ScalarCtx& c) : ctx(c) { lex.s = text; }

    Rat parse_rational_exponent() {
        // INT or (INT/INT) or (INT)
        if (lex.accept('(')) {
            Int n = lex.integer();
            Rat r(n);
            if (lex.accept('/')) r = Rat(n, lex.integer());
            lex.expect(')');
            return r;
        }
        return Rat(lex.integer());
    }

    // Base variable exponents are tracked as rationals so that q and t_i can
    // carry fractional powers before the q_s/u_i rescale.
    Frac power_var(const std::string& name, const Rat& e) {
        int var = -1;
        Rat scale;
        if (ctx.kind == ScalarCtx::Kind::Param) {
            if (name.size() >= 2 && name[0] == 'k') {
                var = std::stoi(name.substr(1)) - 1;
                scale = Rat(1);
            }
        } else {
            if (name == "q") {
                var = 0;
                scale = Rat(ctx.two_e);
            } else if (name == "qs") {
                var = 0;
                scale = Rat(1);
            } else if (name.size() >= 2 && (name[0] == 't' || name[0] == 'u')) {
                var = std::stoi(name.substr(1));
                scale = name[0] == 't' ? Rat(2) : Rat(1);
            }
        }
        if (var < 0 || var >= ctx.nvars)
            throw ParseError("unknown variable '" + name + "'");
        Rat scaled = e * scale;
        if (!scaled.is_integer())
            throw NonRepresentableExponent("exponent " + e.str() + " on " + name);
        return Frac::variable(ctx.nvars, var, (int)scaled.num().get_si());
    }

    Frac atom() {
        if (lex.accept('(')) {
            Frac r = expr();
            lex.expect(')');
            return r;
        }
        char c = lex.peek();
        if (std::isdigit((unsigned char)c)) return Frac::constant(ctx.nvars, Rat(lex.integer()));
        std::string name = lex.ident();
        Rat e(1);
        if (lex.accept('^')) e = parse_rational_exponent();
        return power_var(name, e);
    }

    Frac factor() {
        char c = lex.peek();
        if (std::isdigit((unsigned char)c) || c == '(') {
            Frac base = atom();
            if (lex.accept('^')) {
                Rat e = parse_rational_exponent();
                if (!e.is_integer())
                    throw NonRepresentableExponent("fractional power of a compound expression");
                long n = e.num().get_si();
                Frac r = Frac::constant(ctx.nvars, Rat(1));
                Frac b = n < 0 ? base.inv() : base;
                for (long i = 0; i < (n < 0 ? -n : n); ++i) r *= b;
                return r;
            }
            return base;
        }
        return atom();
    }

    Frac term() {
        Frac r = factor();
        while (true) {
            if (lex.accept('*')) {
                r *= factor();
            } else if (lex.accept('/')) {
                r /= factor();
            } else {
                break;
            }
        }
        return r;
    }

    Frac expr() {
        bool neg = false;
        if (lex.accept('-'))
            neg = true;
        else
            lex.accept('+');
        Frac r = term();
        if (neg) r = -r;
        while (true) {
            if (lex.accept('+')) {
                r += term();
            } else if (lex.accept('-')) {
                r -= term();
            } else {
                break;
            }
        }
        return r;
    }
};

}  // namespace

Frac scalar_parse(const std::string& text, const ScalarCtx& ctx) {
    Parser p(text, ctx);
    Frac r = p.expr();
    if (!p.lex.eof()) throw ParseError("trailing input in scalar expression '" + text + "'");
    return r;
}

}  // namespace nshift
