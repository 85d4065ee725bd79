#pragma once

#include <map>
#include <string>
#include <vector>

#include "nshift/scalar.hpp"

namespace nshift {

/// Integer coordinates in the chosen basis of the weight lattice P
/// (fundamental weights for A1/A2/B2/C2, the epsilon basis for BC1/BC2).
using WeightVec = std::vector<int>;
/// Rational / parameter-valued vectors in the same basis.
using RVec = std::vector<Rat>;
using FVec = std::vector<Frac>;

enum class RootType { A1, A2, B2, C2, BC1, BC2 };

std::string type_name(RootType t);
RootType parse_type(const std::string& label);

class RootSystem;
/// Parses a word like "s1 s2 s1" into a Weyl element index.
int parse_weyl_word(const RootSystem& R, const std::string& text);

struct WeylElt {
    int index = 0;
    std::vector<int> word;                  // reduced word in simple reflections
    std::vector<std::vector<int>> mat;      // lattice action, column j = image of e_j
    int length = 0;
};

/// Linear character of W together with its induced shift multiplicity.
struct LinearCharacter {
    std::string name;
    std::vector<int> on_simple;     // +-1 per simple reflection
    std::vector<int> l_per_orbit;   // 0/1 per root orbit; supported on R^0
    WeightVec rho_l;                // (1/2) sum of l-positive roots, in P
    int value_of_word(const std::vector<int>& word) const {
        int v = 1;
        for (int i : word) v *= on_simple[i];
        return v;
    }
};

struct DominantDecomposition {
    WeightVec lambda_plus;
    int vbar;                    // index of the shortest w with w(lambda+) = mu
    int v;                       // index of the shortest w with w(mu) antidominant
    int w_lambda;                // longest element of the stabilizer of lambda+
    std::vector<int> stabilizer; // W_{lambda+} as element indices
};

/// Root multiplicity: one scalar per W-orbit of R.
using Mult = std::vector<Frac>;

class RootSystem {
  public:
    static const RootSystem& get(RootType t);

    RootType type;
    std::string name;
    int rank = 0;
    std::vector<std::vector<Rat>> gram;   // Gram matrix of the weight basis

    std::vector<WeightVec> roots;         // all roots, positive first
    int num_positive = 0;                 // roots[0..num_positive) positive
    std::vector<int> simple_idx;          // indices of the simple roots
    std::vector<bool> in_R0;              // 2a not in R
    std::vector<int> double_of;           // index of 2a, or -1
    std::vector<int> half_of;             // index of a/2, or -1
    std::vector<int> orbit_of;            // W-orbit id per root
    int num_orbits = 0;
    std::vector<int> reflection_of_root;  // Weyl element index of r_alpha
    std::vector<int> refl_class_of_orbit; // conjugacy class of r_alpha per orbit

    std::vector<WeylElt> weyl;            // [0] = identity
    int longest = 0;                      // index of w0
    std::vector<int> inverse_of;
    std::vector<std::vector<int>> product; // product[a][b] = index of w_a w_b
    std::vector<std::vector<bool>> bruhat; // bruhat[u][w] = u <=_W w

    std::vector<LinearCharacter> characters;  // triv first, sign last

    // Geometry helpers.
    Rat inner(const WeightVec& x, const WeightVec& y) const;
    Frac inner(const FVec& x, const WeightVec& y) const;
    Rat inner_rr(const RVec& x, const WeightVec& y) const;
    Rat pair_coroot(const WeightVec& lam, int root) const;   // (lam, alpha_r^vee)
    Frac pair_coroot(const FVec& x, int root) const;
    WeightVec apply(int w, const WeightVec& lam) const;
    FVec apply(int w, const FVec& x) const;
    WeightVec reflect_root(int w, int root) const;           // w(alpha) as a vector
    int root_index(const WeightVec& v) const;                // -1 if not a root
    bool is_dominant(const WeightVec& lam) const;
    /// Coordinates of lam in the simple-root basis (rational).
    RVec simple_root_coords(const WeightVec& lam) const;

    const LinearCharacter& character(const std::string& name) const;

    // Multiplicity helpers. Scalars live in ScalarCtx::params(num_orbits).
    ScalarCtx ctx() const { return ScalarCtx::params(num_orbits); }
    Mult symbolic_mult() const;
    Mult rational_mult(const std::vector<Rat>& values) const;
    Mult shifted(const Mult& k, const LinearCharacter& eps, int dir) const;  // k + dir*l
    Frac k_of_root(const Mult& k, int root) const;
    Frac k0_of_root(const Mult& k, int root) const;  // (1/2)k(a/2) + k(a), a in R0
    FVec rho(const Mult& k) const;                   // (1/2) sum_{a>0} k(a) a

    DominantDecomposition decompose(const WeightVec& mu) const;
    bool order_leq(const WeightVec& lam, const WeightVec& mu) const;
    bool dominance_leq(const WeightVec& lam, const WeightVec& mu) const;

    FVec spectral_vector(const WeightVec& lam, const Mult& k) const;  // r_k(lambda)
    WeightVec mu_shifted(const WeightVec& mu, const LinearCharacter& eps, int dir) const;
    /// v(mu) == v(mu_{eps,dir}): the regularity condition for the shift.
    bool shift_condition(const WeightVec& mu, const LinearCharacter& eps, int dir) const;

    std::vector<WeightVec> dominant_window(int height) const;
    std::vector<WeightVec> full_window(int height) const;  // all orbit members
    std::vector<WeightVec> orbit_of_weight(const WeightVec& lam) const;

  private:
    RootSystem() = default;
    static RootSystem build(RootType t);
    std::map<WeightVec, int> root_lookup_;
};

}  // namespace nshift
