#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nshift/rat.hpp"

namespace nshift {

/// Exponent vector of a monomial; length = number of variables.
using Expt = std::vector<int32_t>;

/// Graded-lexicographic order: total degree first, then lex.
struct GrlexLess {
    bool operator()(const Expt& a, const Expt& b) const {
        long da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse multivariate polynomial with rational coefficients.
/// Terms are kept under graded-lex order; no zero coefficients stored.
class MPoly {
  public:
    using TermMap = std::map<Expt, Rat, GrlexLess>;

    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}
    static MPoly constant(int nvars, const Rat& c);
    static MPoly variable(int nvars, int i, int power = 1);
    static MPoly term(int nvars, const Expt& e, const Rat& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    /// Constant term as Rat; requires is_constant().
    Rat constant_value() const;
    long total_degree() const;
    int degree_in(int var) const;
    bool depends_on(int var) const;

    const Expt& leading_expt() const { return terms_.rbegin()->first; }
    const Rat& leading_coeff() const { return terms_.rbegin()->second; }

    void add_term(const Expt& e, const Rat& c);

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    void scale(const Rat& c);
    MPoly scaled(const Rat& c) const;
    MPoly mul_term(const Expt& e, const Rat& c) const;

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    /// Exact division; nullopt when divisor does not divide exactly.
    static std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g);

    /// GCD, normalized to integer-primitive form with positive leading
    /// coefficient. gcd(0,0) = 0.
    static MPoly gcd(const MPoly& a, const MPoly& b);

    /// Scales so coefficients are coprime integers and the grlex-leading
    /// coefficient is positive. Zero stays zero.
    MPoly int_primitive() const;

    /// Full evaluation at rational points (values.size() == nvars).
    Rat eval(const std::vector<Rat>& values) const;

    /// Substitutes rationals for a subset of variables (nullopt entries are
    /// kept symbolic); result is over the same variable set.
    MPoly substitute(const std::vector<std::optional<Rat>>& values) const;

    /// Reinterprets with a larger variable count (appends zero exponents).
    MPoly widened(int new_nvars) const;

    /// Substitution x_i -> x_i + offset_i.
    MPoly shift_vars(const std::vector<Rat>& offsets) const;

    /// Exponent rewrite x_0^a prod x_i^{b_i} -> x_0^{a + sum s_i b_i} prod x_i^{b_i}
    /// (monomial twist of the Laurent units); exponents may go negative, the
    /// caller balances them.
    void twist_exponents(const std::vector<int>& shift_into_x0);

  private:
    int nvars_;
    TermMap terms_;
};

}  // namespace nshift
