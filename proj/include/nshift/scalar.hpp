#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nshift/mpoly.hpp"

namespace nshift {

/// Rational function num/den over a fixed variable set, in canonical form:
/// gcd(num, den) a unit, den's graded-lex leading coefficient equal to 1,
/// den nonzero. Equality is syntactic equality of canonical forms.
///
/// Two variable conventions share this type:
///  - parameter fields  (variables k_1..k_m, one per Weyl orbit);
///  - q-power fields    (variables q_s, u_1..u_r with q = q_s^(2e),
///    u_i = q^(k_i/2); Laurent monomials live here as monomial/monomial).
class Frac {
  public:
    Frac() : num_(0), den_(MPoly::constant(0, Rat(1))) {}
    explicit Frac(int nvars)
        : num_(nvars), den_(MPoly::constant(nvars, Rat(1))) {}
    Frac(const MPoly& num, const MPoly& den);
    static Frac of(const MPoly& p) { return Frac(p, MPoly::constant(p.nvars(), Rat(1))); }
    static Frac constant(int nvars, const Rat& c) { return of(MPoly::constant(nvars, c)); }
    static Frac variable(int nvars, int i, int power = 1);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const;  // requires is_constant()
    /// True when num and den are both single terms (a Laurent monomial).
    bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }

    Frac operator-() const;
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }
    Frac& operator/=(const Frac& o) { return *this = *this / o; }
    friend Frac operator+(const Frac& a, const Frac& b);
    friend Frac operator-(const Frac& a, const Frac& b);
    friend Frac operator*(const Frac& a, const Frac& b);
    friend Frac operator/(const Frac& a, const Frac& b);
    Frac inv() const;

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
    /// Arbitrary strict total order (for canonical sorting of maps).
    friend bool operator<(const Frac& a, const Frac& b);

    /// Partial evaluation; entries with a value are substituted, the rest
    /// stay symbolic. Throws PoleAtSpecialization when the denominator
    /// vanishes under a full assignment of its variables.
    Frac specialize(const std::vector<std::optional<Rat>>& values) const;

    Frac widened(int new_nvars) const;

    /// Param fields: substitution k_i -> k_i + offset_i (exact, canonical).
    Frac shift_params(const std::vector<Rat>& offsets) const;
    /// QPow fields: u_i -> u_i q_s^{s_i} (multiplicity shift k_i -> k_i + s_i/e).
    Frac twist_qpow(const std::vector<int>& qs_shift_per_u) const;

  private:
    void canonicalize();
    MPoly num_, den_;
};

/// Variable table and print/parse conventions for one coefficient field.
struct ScalarCtx {
    enum class Kind { Param, QPow };
    Kind kind = Kind::Param;
    int nvars = 0;
    /// QPow only: q = q_s^(2e); variable 0 is q_s, variables 1..r are u_i.
    int two_e = 2;

    static ScalarCtx params(int num_orbits);
    static ScalarCtx qpow(int num_orbits, int e);

    Frac zero() const { return Frac(nvars); }
    Frac one() const { return Frac::constant(nvars, Rat(1)); }
    Frac rat(const Rat& c) const { return Frac::constant(nvars, c); }
    /// Param: the orbit symbol k_i (0-based i).
    Frac k(int i) const { return Frac::variable(nvars, i); }
};

/// Formal exponent of q: pure + sum_i coeff_i * k_i. Realizable as a
/// Laurent monomial in (q_s, u_i) when den(pure) | 2e and den(coeff_i) | 2.
struct QExponent {
    Rat pure;
    std::vector<Rat> kcoeff;

    explicit QExponent(int num_orbits = 0) : pure(0), kcoeff(num_orbits, Rat(0)) {}
    static QExponent of_pure(int num_orbits, const Rat& p);
    static QExponent of_k(int num_orbits, int i, const Rat& c);

    QExponent operator-() const;
    QExponent& operator+=(const QExponent& o);
    QExponent& operator-=(const QExponent& o);
    friend QExponent operator+(QExponent a, const QExponent& b) { return a += b; }
    friend QExponent operator-(QExponent a, const QExponent& b) { return a -= b; }
    QExponent scaled(const Rat& c) const;
    bool is_zero() const;
    friend bool operator==(const QExponent& a, const QExponent& b) {
        return a.pure == b.pure && a.kcoeff == b.kcoeff;
    }
};

/// Realizes q^x as a Laurent monomial in (q_s, u_i).
/// Multiplicative: q_power(x + y) = q_power(x) * q_power(y).
Frac q_power(const ScalarCtx& ctx, const QExponent& x);

std::string scalar_to_string(const Frac& f, const ScalarCtx& ctx);
Frac scalar_parse(const std::string& text, const ScalarCtx& ctx);

}  // namespace nshift
