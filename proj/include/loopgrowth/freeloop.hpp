#pragma once

#include "loopgrowth/series.hpp"
#include "loopgrowth/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace loopgrowth {

/// Generator degrees of the tensor algebra H(OmegaX) for a wedge of spheres:
/// S^n contributes a generator of degree n - 1.
struct GradedAlphabet {
    std::vector<int> degrees;

    explicit GradedAlphabet(std::vector<int> degrees);

    std::size_t size() const noexcept { return degrees.size(); }
    RationalGF loop_series() const;  // 1 / (1 - sum z^d)
};

/// Throws unless x is a wedge of spheres.
GradedAlphabet alphabet_from_space(const SpaceExpr& x);

/// dim A_k for the tensor algebra A on the alphabet, k = 0..N.
std::vector<Integer> tensor_algebra_dims(const GradedAlphabet& a, std::size_t N);

/// Hochschild homology of the tensor algebra (HH_p = 0 for p >= 2) and the
/// assembled free-loop Betti numbers lx[k] = hh0[k] + hh1[k-1].
struct HHDimTable {
    std::vector<Integer> hh0;
    std::vector<Integer> hh1;
    std::vector<Integer> lx;
    std::vector<Integer> tensor_dims;    // dim A_k
    std::vector<Integer> tensor_v_dims;  // dim (A (x) V)_k
    std::size_t trunc_degree = 0;

    /// hh0[k] - hh1[k] == dim A_k - dim (A (x) V)_k for every k.
    bool rank_nullity_holds() const;
    bool operator==(const HHDimTable& other) const = default;
};

/// Largest total word count sum_k dim A_k the brute-force path accepts.
inline constexpr std::uint64_t kBruteForceWordLimit = 1'000'000'000;

/// Exact ranks of theta(a (x) v) = a.v - (-1)^{|a||v|} v.a on the word basis,
/// assembled one rotation class at a time; OpenMP over enumeration subtrees.
HHDimTable hh_bruteforce(const GradedAlphabet& a, std::size_t N);

/// Signed cyclic-word counting: a rotation class contributes to HH_0 unless
/// its primitive root has odd degree and repeats an even number of times.
/// OpenMP over degrees.
HHDimTable hh_necklace(const GradedAlphabet& a, std::size_t N);

namespace reference {

/// Single-threaded versions kept as the baseline for tests and benchmarks.
HHDimTable hh_bruteforce(const GradedAlphabet& a, std::size_t N);
HHDimTable hh_necklace(const GradedAlphabet& a, std::size_t N);

}  // namespace reference

/// Default tolerance between empirical and exact log index: 0.08 at N = 40,
/// scaled like the 1/N finite-size error of the empirical estimate.
double default_log_index_tolerance(std::size_t N);

struct FreeLoopGrowth {
    HHDimTable table;
    GrowthCheckResult check;
    LogIndex loop_log_index;  // exact, from the loop series pole
    double empirical = 0.0;   // log_index_empirical of lx over the upper half
    double tolerance = 0.0;
    bool log_index_match = false;
};

/// Throws for a single generator (rationally elliptic wedge).
FreeLoopGrowth free_loop_good_growth(const GradedAlphabet& a, std::size_t N, const GrowthParams& params,
                                     std::optional<double> tolerance = std::nullopt);

}  // namespace loopgrowth
