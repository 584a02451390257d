#include "loopgrowth/torsion.hpp"

#include "loopgrowth/error.hpp"
#include "loopgrowth/necklace.hpp"

#include <algorithm>

namespace loopgrowth {

bool PrimeSet::contains(int p) const { return std::binary_search(primes.begin(), primes.end(), p); }

PrimeSet PrimeSet::united(const PrimeSet& other) const
{
    PrimeSet out;
    std::set_union(primes.begin(), primes.end(), other.primes.begin(), other.primes.end(),
                   std::back_inserter(out.primes));
    return out;
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

PrimeSet primes_set(int d, int s)
{
    if (d <= s)
        throw validation_error("dimension must exceed connectivity");
    if (s < 1)
        throw validation_error("connectivity must be at least 1");
    PrimeSet out;
    // q <= (d - s + 1) / 2  <=>  2q <= d - s + 1
    for (int q = 2; 2L * q <= static_cast<long>(d) - s + 1; ++q)
        if (is_prime(q))
            out.primes.push_back(q);
    return out;
}

PrimeSet primes_set(const SpaceExpr& x)
{
    SpaceProfile pr = profile(x);
    return primes_set(pr.dimension, pr.connectivity);
}

bool suspension_splits_locally(const SpaceExpr& x, int p)
{
    if (!is_prime(p))
        throw validation_error("p must be prime");
    SpaceProfile pr = profile(x);
    return 2L * p > static_cast<long>(pr.dimension) - pr.connectivity + 1;
}

int least_p_torsion_dim(int n, int p)
{
    if (n < 2)
        throw validation_error("sphere dimension must be at least 2");
    if (!is_prime(p))
        throw validation_error("p must be prime");
    return n + 2 * p - 3;
}

namespace {

void check_sphere_pair(int m, int n)
{
    if (m < 2 || n < 2)
        throw validation_error("spheres must be simply connected (n ≥ 2)");
}

std::vector<Integer> wedge_loop_coefficients(int m, int n, std::size_t N)
{
    std::vector<Integer> c(N + 1);
    c[0] = 1;
    for (std::size_t k = 1; k <= N; ++k) {
        for (int d : {m - 1, n - 1})
            if (static_cast<std::size_t>(d) <= k)
                c[k] += c[k - static_cast<std::size_t>(d)];
    }
    return c;
}

RationalGF wedge_loop_gf(int m, int n)
{
    const auto top = static_cast<std::size_t>(std::max(m, n) - 1);
    std::vector<Integer> den(top + 1);
    den[0] = 1;
    den[static_cast<std::size_t>(m - 1)] -= 1;
    den[static_cast<std::size_t>(n - 1)] -= 1;
    return RationalGF(IntPolynomial{1}, IntPolynomial(std::move(den)));
}

}  // namespace

bool HiltonMilnorCensus::reconstructs() const
{
    const std::size_t N = trunc_degree;
    std::vector<Integer> product(N + 1);
    product[0] = 1;
    for (std::size_t i = 1; i <= N && i < lie_ranks.size(); ++i) {
        if (lie_ranks[i] == 0)
            continue;
        // (1 - z^i)^{-c} = sum_j binom(c + j - 1, j) z^{ij}
        std::vector<Integer> next(N + 1);
        for (std::size_t j = 0; j * i <= N; ++j) {
            Integer coef = 1;
            if (j > 0) {
                Integer top = lie_ranks[i] + static_cast<unsigned long>(j) - 1;
                mpz_bin_ui(coef.get_mpz_t(), top.get_mpz_t(), j);
            }
            for (std::size_t k = j * i; k <= N; ++k)
                next[k] += coef * product[k - j * i];
        }
        product.swap(next);
    }
    return product == wedge_loop_coefficients(m, n, N);
}

HiltonMilnorCensus hilton_milnor_census(int m, int n, std::size_t N)
{
    check_sphere_pair(m, n);
    HiltonMilnorCensus out;
    out.m = m;
    out.n = n;
    out.trunc_degree = N;
    const auto coeffs = wedge_loop_coefficients(m, n, N);
    out.lie_ranks = detail::invert_product(coeffs, N, false);
    out.graded_ranks = detail::invert_product(coeffs, N, true);
    for (std::size_t i = 1; i <= N; ++i)
        if (out.lie_ranks[i] != 0)
            out.factors[static_cast<int>(i) + 1] = out.lie_ranks[i];
    return out;
}

std::vector<LyndonWord> lyndon_basic_products(int m, int n, int W)
{
    check_sphere_pair(m, n);
    if (W < 1 || W > kLyndonMaxLength)
        throw validation_error("word length guard exceeded: 1 <= W <= " + std::to_string(kLyndonMaxLength));
    const std::vector<int> weights{m - 1, n - 1};
    const necklace::Bounds bounds{W * std::max(m - 1, n - 1), W};
    std::vector<LyndonWord> out;
    necklace::for_each(std::span<const int>(weights), bounds,
                       [&](std::span<const std::uint8_t> word, int period, int weight) {
                           if (period != static_cast<int>(word.size()))
                               return;
                           LyndonWord lw;
                           for (std::uint8_t c : word)
                               lw.word.push_back(c == 0 ? 'a' : 'b');
                           lw.degree = weight;
                           out.push_back(std::move(lw));
                       });
    return out;
}

namespace {

necklace::Bounds lyndon_bounds(int m, int n, std::size_t N)
{
    check_sphere_pair(m, n);
    const int lightest = std::min(m - 1, n - 1);
    return necklace::Bounds{static_cast<int>(N), static_cast<int>(N) / lightest};
}

std::vector<Integer> to_integers(const std::vector<long long>& counts)
{
    std::vector<Integer> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = Integer(std::to_string(counts[i]));
    return out;
}

}  // namespace

std::vector<Integer> lyndon_degree_counts(int m, int n, std::size_t N)
{
    const auto bounds = lyndon_bounds(m, n, N);
    const std::vector<int> weights{m - 1, n - 1};
    const auto workers = static_cast<std::size_t>(necklace::worker_count());
    std::vector<std::vector<long long>> local(workers, std::vector<long long>(N + 1));
    necklace::parallel_for_each(std::span<const int>(weights), bounds,
                                [&](int worker, std::span<const std::uint8_t> word, int period, int weight) {
                                    if (period == static_cast<int>(word.size()))
                                        ++local[static_cast<std::size_t>(worker)][static_cast<std::size_t>(weight)];
                                });
    std::vector<long long> total(N + 1);
    for (const auto& l : local)
        for (std::size_t k = 0; k <= N; ++k)
            total[k] += l[k];
    return to_integers(total);
}

namespace reference {

std::vector<Integer> lyndon_degree_counts(int m, int n, std::size_t N)
{
    const auto bounds = lyndon_bounds(m, n, N);
    const std::vector<int> weights{m - 1, n - 1};
    std::vector<long long> total(N + 1);
    necklace::for_each(std::span<const int>(weights), bounds,
                       [&](std::span<const std::uint8_t> word, int period, int weight) {
                           if (period == static_cast<int>(word.size()))
                               ++total[static_cast<std::size_t>(weight)];
                       });
    return to_integers(total);
}

}  // namespace reference

TorsionReport torsion_report(int m, int n, int p, int r, std::size_t N)
{
    check_sphere_pair(m, n);
    if (!is_prime(p))
        throw validation_error("p must be prime");
    if (r < 1)
        throw validation_error("r must be a positive integer");
    if (N < 2)
        throw validation_error("increase truncation");

    TorsionReport out;
    out.m = m;
    out.n = n;
    out.prime = p;
    out.r = r;
    out.excluded = primes_set(SpaceExpr::wedge(SpaceExpr::sphere(m), SpaceExpr::sphere(n)));
    out.prime_excluded = out.excluded.contains(p);
    out.census = hilton_milnor_census(m, n, N);

    for (const auto& [dim, mult] : out.census.factors) {
        if (dim % 2 == 1 && (dim - 1) / 2 >= r && mult > 0) {
            out.exponent_witness = dim;
            break;
        }
    }
    if (out.exponent_witness == 0)
        throw validation_error("no exponent witness within the truncation: increase truncation");

    // factor-count-v1: each OmegaS^{2k+1} with k >= r adds one summand at
    // its first p-torsion degree; t counts summands in degrees <= index.
    int top = 0;
    std::map<int, Integer> at_degree;
    for (const auto& [dim, mult] : out.census.factors) {
        if (dim % 2 == 0 || (dim - 1) / 2 < r)
            continue;
        const int deg = least_p_torsion_dim(dim, p);
        at_degree[deg] += mult;
        top = std::max(top, deg);
    }
    out.t_lower.assign(static_cast<std::size_t>(top) + 1, Integer(0));
    Integer running = 0;
    for (int d = 0; d <= top; ++d) {
        auto it = at_degree.find(d);
        if (it != at_degree.end())
            running += it->second;
        out.t_lower[static_cast<std::size_t>(d)] = running;
    }

    out.factor_counts = out.census.lie_ranks;
    out.factor_counts[0] = 0;
    out.census_log_index = log_index_empirical(TruncatedSeries::from_integers(out.factor_counts), N / 2);
    out.wedge_log_index = log_index_exact(smallest_positive_pole(wedge_loop_gf(m, n))).value;
    return out;
}

RetractionReport retraction_report(const CofiberPresentation& c)
{
    if (reduced_homology(c.attached).is_zero())
        throw hypothesis_error("retraction hypothesis violated: A must be rationally nontrivial");
    if (reduced_homology(c.quotient).is_zero())
        throw hypothesis_error("retraction hypothesis violated: Z must be rationally nontrivial");
    RetractionReport out;
    // Least sphere of the wedge decomposition of Sigma A.
    SphereList sa = wedge_decomposition(SpaceExpr::susp(c.attached));
    out.m = sa.begin()->first;
    out.n = (out.m - 1) + least_reduced_degree(c.quotient);
    out.excluded_attached = primes_set(c.attached);
    out.excluded_quotient = primes_set(c.quotient);
    out.excluded = out.excluded_attached.united(out.excluded_quotient);
    return out;
}

}  // namespace loopgrowth
