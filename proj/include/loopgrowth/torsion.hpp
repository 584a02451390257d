#pragma once

#include "loopgrowth/loop.hpp"
#include "loopgrowth/series.hpp"
#include "loopgrowth/space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loopgrowth {

/// Sorted set of primes.
struct PrimeSet {
    std::vector<int> primes;

    bool contains(int p) const;
    PrimeSet united(const PrimeSet& other) const;
    bool operator==(const PrimeSet& other) const = default;
};

bool is_prime(long n);

/// Primes q <= (d - s + 1) / 2: below them a suspension of a d-dimensional,
/// s-connected complex need not split p-locally into spheres.
PrimeSet primes_set(int d, int s);

/// primes_set over the dimension and connectivity of x.
PrimeSet primes_set(const SpaceExpr& x);

/// p > (d(X) - s(X) + 1) / 2.
bool suspension_splits_locally(const SpaceExpr& x, int p);

/// First p-torsion in pi_*(S^n): n + 2p - 3.
int least_p_torsion_dim(int n, int p);

/// Sphere factors OmegaS^D of Omega(S^m v S^n) by the Hilton-Milnor theorem.
/// One factor per basic product, so multiplicities are the ungraded free Lie
/// ranks on generators of degrees m-1, n-1; graded_ranks are the rational
/// homotopy ranks from PBW inversion, which agree when both degrees are even.
struct HiltonMilnorCensus {
    int m = 2;
    int n = 2;
    std::map<int, Integer> factors;      // D -> multiplicity, D = lie degree + 1
    std::vector<Integer> lie_ranks;      // ungraded, index = degree, [0] unused
    std::vector<Integer> graded_ranks;   // graded, index = degree, [0] unused
    std::size_t trunc_degree = 0;

    /// prod (1 - z^i)^{-lie_ranks[i]} == 1 / (1 - z^{m-1} - z^{n-1}) mod z^{N+1}.
    bool reconstructs() const;
};

HiltonMilnorCensus hilton_milnor_census(int m, int n, std::size_t N);

struct LyndonWord {
    std::string word;  // over letters 'a' (degree m-1) and 'b' (degree n-1)
    int degree = 0;
};

inline constexpr int kLyndonMaxLength = 20;

/// All Lyndon words of length <= W in lexicographic order.
std::vector<LyndonWord> lyndon_basic_products(int m, int n, int W);

/// Lyndon word counts by weight degree 0..N, enumerated word by word with
/// OpenMP over enumeration subtrees.
std::vector<Integer> lyndon_degree_counts(int m, int n, std::size_t N);

namespace reference {
std::vector<Integer> lyndon_degree_counts(int m, int n, std::size_t N);
}

inline constexpr const char* kTorsionModelId = "factor-count-v1";

struct TorsionReport {
    int m = 2;
    int n = 2;
    int prime = 2;
    int r = 1;
    PrimeSet excluded;        // primes_set of S^m v S^n
    bool prime_excluded = false;
    int exponent_witness = 0;  // least odd factor dimension 2k+1 with k >= r
    /// Model lower bound on t at each degree: cumulative count of factors
    /// OmegaS^{2k+1}, k >= r, with first p-torsion at or below that degree.
    std::vector<Integer> t_lower;
    std::string model_id = kTorsionModelId;
    std::vector<Integer> factor_counts;  // census multiplicities by lie degree
    double census_log_index = 0.0;      // empirical, upper half of the range
    double wedge_log_index = 0.0;       // exact, from 1/(1 - z^{m-1} - z^{n-1})
    HiltonMilnorCensus census;
};

TorsionReport torsion_report(int m, int n, int p, int r, std::size_t N);

struct RetractionReport {
    int m = 0;
    int n = 0;
    PrimeSet excluded;
    PrimeSet excluded_attached;  // from A
    PrimeSet excluded_quotient;  // from Z
    bool n_is_homology_proxy = true;
};

RetractionReport retraction_report(const CofiberPresentation& c);

}  // namespace loopgrowth
