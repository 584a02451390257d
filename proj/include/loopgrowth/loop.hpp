#pragma once

#include "loopgrowth/series.hpp"
#include "loopgrowth/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace loopgrowth {

/// Homotopy cofibration  Sigma A -> Y -> Z  presented by A and Z. Inertness of
/// the attaching map is a user-supplied hypothesis, never decided here.
struct CofiberPresentation {
    SpaceExpr attached;  // A, the desuspended cone
    SpaceExpr quotient;  // Z
    bool inert_asserted = false;
    std::string justification;
};

/// General connected sum of M and N over Sigma A.
struct ConnSumPresentation {
    SpaceExpr collar;  // A
    SpaceExpr first;   // M
    SpaceExpr second;  // N
    bool inert_asserted = false;
    std::string justification;
};

/// A space whose (n-1)-skeleton is rationally Sigma J v S^m v S^(n-m) and
/// whose quotient by Sigma J has the cohomology ring of S^m x S^(n-m).
struct YClassPresentation {
    int m = 2;
    int n = 4;
    SpaceExpr j;
    std::string justification;
};

RationalGF loop_gf(const SpaceExpr& x);

/// 1 / (1 - z^(n_alpha - 1) * OmegaZ(z))
RationalGF loop_smash_sphere(int n_alpha, const SpaceExpr& z);

/// Loop series of the fibre (Sigma OmegaZ ^ A) v Sigma A of the split
/// fibration: 1 / (1 - redA(z) * OmegaZ(z)).
RationalGF splitting_fiber_loop_gf(const CofiberPresentation& c);

/// OmegaY(z) = OmegaZ(z) / (1 - redA(z) * OmegaZ(z)).
RationalGF inert_cofiber_loop_gf(const CofiberPresentation& c);
RationalGF connected_sum_loop_gf(const ConnSumPresentation& c);
RationalGF y_class_loop_gf(const YClassPresentation& y);

/// Collar cofibration  Sigma A -> M #_{Sigma A} N -> M v N.
CofiberPresentation collar_cofibration(const ConnSumPresentation& c);
/// Sigma J -> Y -> S^m x S^(n-m), inert by membership in the class.
CofiberPresentation defining_cofibration(const YClassPresentation& y);

struct InertnessCheck {
    bool strongly_inert = false;
    Radius rho_loop_y;
    Radius rho_loop_z;
};

/// rho(OmegaY) < rho(OmegaZ), certified by disjoint isolating intervals.
InertnessCheck strongly_inert_check(const CofiberPresentation& c);

bool omega_at_rho_infinite(const RationalGF& loop_series);
bool omega_at_rho_infinite(const SpaceExpr& z);

/// Loop homology grows at most polynomially (rho >= 1).
bool elliptic_proxy(const Radius& rho_loop);

enum class GoodGrowth {
    StronglyInert,        // strongly inert attaching map
    InertPoleDivergence,  // inert map and OmegaZ(rho) = infinity
    NotCertified,
};

const char* to_string(GoodGrowth g) noexcept;

struct GrowthVerdict {
    Radius rho;  // of OmegaY
    LogIndex log_index;
    bool elliptic = false;
    std::optional<bool> strongly_inert;
    std::optional<bool> omega_at_rho_infinite;
    GoodGrowth good_growth = GoodGrowth::NotCertified;
    Radius rho_loop_z;
    std::vector<std::string> trail;
};

GrowthVerdict good_growth_verdict(const CofiberPresentation& c);
GrowthVerdict connected_sum_verdict(const ConnSumPresentation& c);
GrowthVerdict y_class_verdict(const YClassPresentation& y);

/// Graded Lie ranks: ranks[i] = dim pi_{i+1}(X) (x) Q for i = 1..N.
struct PiRankTable {
    std::vector<Integer> ranks;  // index 0 unused
    std::size_t trunc_degree = 0;
};

/// PBW inversion: the unique ranks with
///   prod_{i odd} (1 + z^i)^{l_i} * prod_{i even} (1 - z^i)^{-l_i} = gf  mod z^(N+1).
PiRankTable pi_ranks(const RationalGF& gf, std::size_t N);

namespace detail {

/// Exponents c_i >= 0 with prod factor_i^{c_i} = series mod z^(N+1); odd
/// degrees use (1 + z^i) when graded, every other factor is (1 - z^i)^{-1}.
std::vector<Integer> invert_product(const std::vector<Integer>& series, std::size_t N, bool graded);

}  // namespace detail

}  // namespace loopgrowth
