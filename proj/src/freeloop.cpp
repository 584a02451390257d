#include "loopgrowth/freeloop.hpp"

#include "loopgrowth/error.hpp"
#include "loopgrowth/loop.hpp"
#include "loopgrowth/necklace.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

namespace loopgrowth {

GradedAlphabet::GradedAlphabet(std::vector<int> d) : degrees(std::move(d))
{
    if (degrees.empty())
        throw validation_error("alphabet must be nonempty");
    if (degrees.size() > 255)
        throw validation_error("alphabet has more than 255 generators");
    for (int x : degrees)
        if (x < 1)
            throw validation_error("generator degrees must be at least 1");
    std::sort(degrees.begin(), degrees.end());
}

RationalGF GradedAlphabet::loop_series() const
{
    int top = degrees.back();
    std::vector<Integer> den(static_cast<std::size_t>(top) + 1);
    den[0] = 1;
    for (int d : degrees)
        den[static_cast<std::size_t>(d)] -= 1;
    return RationalGF(IntPolynomial{1}, IntPolynomial(std::move(den)));
}

GradedAlphabet alphabet_from_space(const SpaceExpr& x)
{
    // A product node is never a wedge of spheres, even rationally.
    SphereList spheres = wedge_decomposition(x);
    std::vector<int> degrees;
    for (const auto& [n, mult] : spheres) {
        if (!mult.fits_slong_p() || mult > 255)
            throw validation_error("alphabet has more than 255 generators");
        for (long i = 0; i < mult.get_si(); ++i)
            degrees.push_back(n - 1);
    }
    if (degrees.empty())
        throw validation_error("space is rationally trivial");
    return GradedAlphabet(std::move(degrees));
}

std::vector<Integer> tensor_algebra_dims(const GradedAlphabet& a, std::size_t N)
{
    std::vector<Integer> dims(N + 1);
    dims[0] = 1;
    for (std::size_t k = 1; k <= N; ++k)
        for (int d : a.degrees)
            if (static_cast<std::size_t>(d) <= k)
                dims[k] += dims[k - static_cast<std::size_t>(d)];
    return dims;
}

bool HHDimTable::rank_nullity_holds() const
{
    for (std::size_t k = 0; k <= trunc_degree; ++k) {
        if (hh0[k] < 0 || hh1[k] < 0 || lx[k] < 0)
            return false;
        if (hh0[k] - hh1[k] != tensor_dims[k] - tensor_v_dims[k])
            return false;
    }
    return true;
}

namespace {

// dim (A (x) V)_k = sum_j dim A_{k - d_j}
std::vector<Integer> tensor_v_dims(const GradedAlphabet& a, const std::vector<Integer>& dims)
{
    std::vector<Integer> out(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k)
        for (int d : a.degrees)
            if (static_cast<std::size_t>(d) <= k)
                out[k] += dims[k - static_cast<std::size_t>(d)];
    return out;
}

HHDimTable assemble(const GradedAlphabet& a, std::size_t N, std::vector<Integer> hh0, std::vector<Integer> hh1)
{
    HHDimTable t;
    t.trunc_degree = N;
    t.tensor_dims = tensor_algebra_dims(a, N);
    t.tensor_v_dims = tensor_v_dims(a, t.tensor_dims);
    t.hh0 = std::move(hh0);
    t.hh1 = std::move(hh1);
    t.lx.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k)
        t.lx[k] = t.hh0[k] + (k > 0 ? t.hh1[k - 1] : Integer(0));
    if (!t.rank_nullity_holds())
        throw validation_error("internal error: rank-nullity identity violated");
    return t;
}

void check_bruteforce_guard(const GradedAlphabet& a, std::size_t N)
{
    Integer total = 0;
    for (const Integer& d : tensor_algebra_dims(a, N))
        total += d;
    if (total > Integer(std::to_string(kBruteForceWordLimit)))
        throw validation_error("truncation too large for brute force");
}

// ---- exact sparse rank ------------------------------------------------------

struct Entry {
    int row;
    std::int64_t value;
};

// Sparse column with rows in decreasing order. Rotation-class blocks are
// bidiagonal, so elimination never produces more than two nonzeros; the
// capacity leaves headroom and overflow of it is reported, not ignored.
[[noreturn, gnu::cold, gnu::noinline]] void capacity_exceeded()
{
    throw validation_error("internal error: sparse column capacity exceeded");
}

struct Column {
    static constexpr std::size_t kCapacity = 6;
    std::array<Entry, kCapacity> entries;
    std::size_t size = 0;

    bool empty() const { return size == 0; }
    const Entry& lead() const { return entries[0]; }
    void push(int row, std::int64_t value)
    {
        if (value == 0)
            return;
        if (size == kCapacity) [[unlikely]]
            capacity_exceeded();
        entries[size++] = {row, value};
    }
};

[[noreturn, gnu::cold, gnu::noinline]] void overflow()
{
    throw validation_error("internal error: overflow in exact elimination");
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) [[unlikely]]
        overflow();
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) [[unlikely]]
        overflow();
    return r;
}

// Fraction-free sparse column echelon form over Z (ranks agree with Q).
// Each stored pivot column owns its leading (largest) row.
class SparseRank {
public:
    explicit SparseRank(int rows) : pivot_of_row_(static_cast<std::size_t>(rows), -1) {}

    void reset(int rows)
    {
        for (int r : used_rows_)
            pivot_of_row_[static_cast<std::size_t>(r)] = -1;
        used_rows_.clear();
        pivots_.clear();
        if (pivot_of_row_.size() < static_cast<std::size_t>(rows))
            pivot_of_row_.assign(static_cast<std::size_t>(rows), -1);
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

    void add(Column v)
    {
        normalize(v);
        while (!v.empty()) {
            const int lead = v.lead().row;
            const int p = pivot_of_row_[static_cast<std::size_t>(lead)];
            if (p < 0) {
                pivot_of_row_[static_cast<std::size_t>(lead)] = static_cast<int>(pivots_.size());
                used_rows_.push_back(lead);
                pivots_.push_back(v);
                return;
            }
            v = eliminate(pivots_[static_cast<std::size_t>(p)], v);
        }
    }

private:
    static void normalize(Column& v)
    {
        // Insertion sort: columns hold a handful of entries.
        for (std::size_t i = 1; i < v.size; ++i)
            for (std::size_t k = i; k > 0 && v.entries[k - 1].row < v.entries[k].row; --k)
                std::swap(v.entries[k - 1], v.entries[k]);
        std::size_t out = 0;
        for (std::size_t i = 0; i < v.size; ++i) {
            if (out > 0 && v.entries[out - 1].row == v.entries[i].row)
                v.entries[out - 1].value += v.entries[i].value;
            else
                v.entries[out++] = v.entries[i];
        }
        std::size_t kept = 0;
        bool units = true;
        for (std::size_t i = 0; i < out; ++i)
            if (v.entries[i].value != 0) {
                v.entries[kept++] = v.entries[i];
                units = units && (v.entries[i].value == 1 || v.entries[i].value == -1);
            }
        v.size = kept;
        if (units)
            return;
        std::int64_t g = 0;
        for (std::size_t i = 0; i < kept; ++i)
            g = std::gcd(g, v.entries[i].value);
        if (g > 1)
            for (std::size_t i = 0; i < kept; ++i)
                v.entries[i].value /= g;
    }

    // pivot[lead] * v - v[lead] * pivot, which clears the shared leading row.
    static Column eliminate(const Column& pivot, const Column& v)
    {
        const std::int64_t pa = pivot.lead().value;
        const std::int64_t va = v.lead().value;
        Column out;
        std::size_t i = 1, j = 1;
        while (i < pivot.size || j < v.size) {
            if (j < v.size && (i >= pivot.size || v.entries[j].row > pivot.entries[i].row)) {
                out.push(v.entries[j].row, checked_mul(pa, v.entries[j].value));
                ++j;
            } else if (i < pivot.size && (j >= v.size || pivot.entries[i].row > v.entries[j].row)) {
                out.push(pivot.entries[i].row, checked_sub(0, checked_mul(va, pivot.entries[i].value)));
                ++i;
            } else {
                out.push(v.entries[j].row,
                         checked_sub(checked_mul(pa, v.entries[j].value), checked_mul(va, pivot.entries[i].value)));
                ++i;
                ++j;
            }
        }
        normalize(out);
        return out;
    }

    std::vector<int> pivot_of_row_;
    std::vector<int> used_rows_;
    std::vector<Column> pivots_;
};

// Per-degree accumulators of one worker.
struct Tally {
    std::vector<std::int64_t> rank;
    std::vector<std::int64_t> rows;  // words a.v of degree k in the class
    std::vector<std::int64_t> cols;  // tensors a (x) v of degree k in the class
};

// theta restricted to one rotation class. Rows and columns are the distinct
// rotations w_0..w_{s-1} of the necklace, w_{j+1} = sigma(w_j) moving the last
// letter v to the front; theta(a (x) v) = w_j - (-1)^{|a||v|} w_{j+1}.
void orbit_block(std::span<const int> weights, std::span<const std::uint8_t> word, int period, int weight,
                 SparseRank& solver, Tally& tally)
{
    const int t = static_cast<int>(word.size());
    const int s = period;
    solver.reset(s);
    for (int j = 0; j < s; ++j) {
        // Last letter of w_j is word[t - 1 - j] (mod t).
        const int idx = ((t - 1 - j) % t + t) % t;
        const int v = weights[word[static_cast<std::size_t>(idx)]];
        const bool odd = (static_cast<long>(v) * (weight - v)) % 2 != 0;
        const std::int64_t eps = odd ? -1 : 1;
        Column col;
        col.push(j, 1);
        col.push((j + 1) % s, -eps);
        solver.add(col);
    }
    const auto k = static_cast<std::size_t>(weight);
    tally.rank[k] += solver.rank();
    tally.rows[k] += s;
    tally.cols[k] += s;
}

HHDimTable bruteforce_from_tallies(const GradedAlphabet& a, std::size_t N, const std::vector<Tally>& tallies)
{
    std::vector<Integer> hh0(N + 1), hh1(N + 1);
    hh0[0] = 1;  // empty word: A_0 = Q, (A (x) V)_0 = 0
    for (std::size_t k = 1; k <= N; ++k) {
        std::int64_t rank = 0, rows = 0, cols = 0;
        for (const Tally& t : tallies) {
            rank += t.rank[k];
            rows += t.rows[k];
            cols += t.cols[k];
        }
        hh0[k] = Integer(std::to_string(rows - rank));  // coker theta_k
        hh1[k] = Integer(std::to_string(cols - rank));  // ker theta_k
    }
    return assemble(a, N, std::move(hh0), std::move(hh1));
}

Tally make_tally(std::size_t N)
{
    return Tally{std::vector<std::int64_t>(N + 1), std::vector<std::int64_t>(N + 1), std::vector<std::int64_t>(N + 1)};
}

// ---- cyclic-word counting ---------------------------------------------------

std::vector<int> moebius_table(std::size_t n)
{
    std::vector<int> mu(n + 1, 1);
    std::vector<bool> composite(n + 1, false);
    for (std::size_t p = 2; p <= n; ++p) {
        if (composite[p])
            continue;
        for (std::size_t q = p; q <= n; q += p) {
            if (q > p)
                composite[q] = true;
            mu[q] = -mu[q];
        }
        for (std::size_t q = p * p; q <= n; q += p * p)
            mu[q] = 0;
    }
    if (n >= 1)
        mu[0] = 0;
    return mu;
}

// words[L][n] = number of words of length L and degree n.
std::vector<std::vector<Integer>> word_counts(const GradedAlphabet& a, std::size_t N)
{
    std::vector<std::vector<Integer>> w(N + 1, std::vector<Integer>(N + 1));
    w[0][0] = 1;
    for (std::size_t L = 1; L <= N; ++L)
        for (std::size_t n = 1; n <= N; ++n)
            for (int d : a.degrees)
                if (static_cast<std::size_t>(d) <= n)
                    w[L][n] += w[L - 1][n - static_cast<std::size_t>(d)];
    return w;
}

// Number of Lyndon words of degree n (any length).
Integer lyndon_count(const std::vector<std::vector<Integer>>& w, const std::vector<int>& mu, std::size_t n)
{
    Integer total = 0;
    for (std::size_t L = 1; L <= n; ++L) {
        Integer aperiodic = 0;
        const std::size_t g = std::gcd(L, n);
        for (std::size_t e = 1; e <= g; ++e)
            if (g % e == 0 && mu[e] != 0)
                aperiodic += mu[e] * w[L / e][n / e];
        total += aperiodic / static_cast<unsigned long>(L);
    }
    return total;
}

// A class u^m with u primitive is annihilated in the coinvariants iff the
// full rotation by u picks up sign -1, i.e. |u| odd and m even.
Integer hh0_degree(const std::vector<Integer>& lyndon, std::size_t k)
{
    Integer sum = 0;
    for (std::size_t m = 1; m <= k; ++m) {
        if (k % m != 0)
            continue;
        const std::size_t root = k / m;
        if (root % 2 == 1 && m % 2 == 0)
            continue;
        sum += lyndon[root];
    }
    return sum;
}

HHDimTable necklace_table(const GradedAlphabet& a, std::size_t N, bool parallel)
{
    const auto w = word_counts(a, N);
    const auto mu = moebius_table(N);
    std::vector<Integer> lyndon(N + 1);
    const auto n_max = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t n = 1; n <= n_max; ++n)
        lyndon[static_cast<std::size_t>(n)] = lyndon_count(w, mu, static_cast<std::size_t>(n));

    std::vector<Integer> hh0(N + 1);
    hh0[0] = 1;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t k = 1; k <= n_max; ++k)
        hh0[static_cast<std::size_t>(k)] = hh0_degree(lyndon, static_cast<std::size_t>(k));

    // Rank-nullity: hh1[k] = hh0[k] - dim A_k + dim (A (x) V)_k.
    const auto dims = tensor_algebra_dims(a, N);
    const auto vdims = tensor_v_dims(a, dims);
    std::vector<Integer> hh1(N + 1);
    for (std::size_t k = 0; k <= N; ++k)
        hh1[k] = hh0[k] - dims[k] + vdims[k];
    return assemble(a, N, std::move(hh0), std::move(hh1));
}

}  // namespace

HHDimTable hh_bruteforce(const GradedAlphabet& a, std::size_t N)
{
    check_bruteforce_guard(a, N);
    const int workers = necklace::worker_count();
    std::vector<Tally> tallies(static_cast<std::size_t>(workers), make_tally(N));
    std::vector<SparseRank> solvers(static_cast<std::size_t>(workers), SparseRank(static_cast<int>(N) + 1));
    const std::span<const int> weights(a.degrees);
    const necklace::Bounds bounds{static_cast<int>(N), static_cast<int>(N)};
    necklace::parallel_for_each(weights, bounds,
                                [&](int worker, std::span<const std::uint8_t> word, int period, int weight) {
                                    const auto i = static_cast<std::size_t>(worker);
                                    orbit_block(weights, word, period, weight, solvers[i], tallies[i]);
                                });
    return bruteforce_from_tallies(a, N, tallies);
}

HHDimTable hh_necklace(const GradedAlphabet& a, std::size_t N) { return necklace_table(a, N, true); }

namespace reference {

HHDimTable hh_bruteforce(const GradedAlphabet& a, std::size_t N)
{
    check_bruteforce_guard(a, N);
    std::vector<Tally> tallies(1, make_tally(N));
    SparseRank solver(static_cast<int>(N) + 1);
    const std::span<const int> weights(a.degrees);
    const necklace::Bounds bounds{static_cast<int>(N), static_cast<int>(N)};
    necklace::for_each(weights, bounds, [&](std::span<const std::uint8_t> word, int period, int weight) {
        orbit_block(weights, word, period, weight, solver, tallies[0]);
    });
    return bruteforce_from_tallies(a, N, tallies);
}

HHDimTable hh_necklace(const GradedAlphabet& a, std::size_t N) { return necklace_table(a, N, false); }

}  // namespace reference

double default_log_index_tolerance(std::size_t N)
{
    if (N == 0)
        return 0.08 * 40;
    return 0.08 * 40.0 / static_cast<double>(N);
}

FreeLoopGrowth free_loop_good_growth(const GradedAlphabet& a, std::size_t N, const GrowthParams& params,
                                     std::optional<double> tolerance)
{
    if (a.size() < 2)
        throw hypothesis_error("wedge is rationally elliptic; free-loop growth hypothesis fails");
    FreeLoopGrowth out;
    out.table = hh_necklace(a, N);
    out.loop_log_index = log_index_exact(smallest_positive_pole(a.loop_series()));
    TruncatedSeries lx = TruncatedSeries::from_integers(out.table.lx);
    out.check = controlled_growth_check(lx, out.loop_log_index.value, params);
    out.empirical = log_index_empirical(lx, N / 2);
    out.tolerance = tolerance.value_or(default_log_index_tolerance(N));
    out.log_index_match = std::abs(out.empirical - out.loop_log_index.value) <= out.tolerance;
    return out;
}

}  // namespace loopgrowth
