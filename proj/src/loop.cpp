#include "loopgrowth/loop.hpp"

#include "loopgrowth/error.hpp"

namespace loopgrowth {

namespace {

const RationalGF kOne = RationalGF::one();

// 1 / (1 - f)
RationalGF geometric(const RationalGF& f) { return gf_reciprocal(kOne - f); }

void require_nontrivial(const SpaceExpr& x, const char* role)
{
    if (reduced_homology(x).is_zero())
        throw hypothesis_error(std::string("hypothesis of Theorem violated: ") + role
                               + " must be rationally nontrivial");
}

}  // namespace

RationalGF loop_gf(const SpaceExpr& x)
{
    using K = SpaceExpr::Kind;
    switch (x.kind()) {
    case K::Product: return loop_gf(x.left()) * loop_gf(x.right());
    case K::Wedge: {
        // Free product of loop-homology algebras: 1/F = 1/L + 1/R - 1.
        RationalGF inv = gf_reciprocal(loop_gf(x.left())) + gf_reciprocal(loop_gf(x.right())) - kOne;
        return gf_reciprocal(inv);
    }
    case K::Sphere:
    case K::Susp:
    case K::Smash: {
        if (!is_rational_suspension(x))
            throw validation_error("loop series not expressible: smash of non-suspensions");
        // Bott-Samelson: H(Omega Sigma B) = T(reduced H(B)).
        IntPolynomial desuspended = exact_quotient(reduced_homology(x), IntPolynomial{0, 1});
        return geometric(RationalGF::polynomial(std::move(desuspended)));
    }
    }
    throw validation_error("loop series not expressible");
}

RationalGF loop_smash_sphere(int n_alpha, const SpaceExpr& z)
{
    if (n_alpha < 2)
        throw validation_error("sphere dimension must be at least 2");
    require_nontrivial(z, "Z");
    return geometric(gf_shift(loop_gf(z), static_cast<std::size_t>(n_alpha - 1)));
}

RationalGF splitting_fiber_loop_gf(const CofiberPresentation& c)
{
    require_nontrivial(c.attached, "A");
    require_nontrivial(c.quotient, "Z");
    RationalGF red_a = RationalGF::polynomial(reduced_homology(c.attached));
    return geometric(red_a * loop_gf(c.quotient));
}

RationalGF inert_cofiber_loop_gf(const CofiberPresentation& c)
{
    if (!c.inert_asserted)
        throw hypothesis_error("hypothesis of Theorem violated: the attaching map must be asserted inert");
    return loop_gf(c.quotient) * splitting_fiber_loop_gf(c);
}

CofiberPresentation collar_cofibration(const ConnSumPresentation& c)
{
    require_nontrivial(c.collar, "A");
    require_nontrivial(c.first, "M");
    require_nontrivial(c.second, "N");
    return CofiberPresentation{c.collar, SpaceExpr::wedge(c.first, c.second), c.inert_asserted, c.justification};
}

RationalGF connected_sum_loop_gf(const ConnSumPresentation& c)
{
    if (!c.inert_asserted)
        throw hypothesis_error("hypothesis of Theorem violated: both attaching maps must be asserted inert");
    return inert_cofiber_loop_gf(collar_cofibration(c));
}

CofiberPresentation defining_cofibration(const YClassPresentation& y)
{
    if (!(1 < y.m && y.m <= y.n - y.m))
        throw hypothesis_error("not in class 𝒴: requires 1 < m <= n - m");
    require_nontrivial(y.j, "J");
    SpaceExpr quotient = SpaceExpr::product(SpaceExpr::sphere(y.m), SpaceExpr::sphere(y.n - y.m));
    return CofiberPresentation{y.j, std::move(quotient), true, y.justification};
}

RationalGF y_class_loop_gf(const YClassPresentation& y) { return inert_cofiber_loop_gf(defining_cofibration(y)); }

InertnessCheck strongly_inert_check(const CofiberPresentation& c)
{
    if (!c.inert_asserted)
        throw hypothesis_error("strongly inert is only defined for inert maps");
    InertnessCheck out;
    out.rho_loop_y = smallest_positive_pole(inert_cofiber_loop_gf(c));
    out.rho_loop_z = smallest_positive_pole(loop_gf(c.quotient));
    out.strongly_inert = compare(out.rho_loop_y, out.rho_loop_z) == std::partial_ordering::less;
    if (out.strongly_inert) {
        // Certified ordering: refine until the intervals are disjoint.
        while (!out.rho_loop_z.is_infinite() && !(out.rho_loop_y.hi() < out.rho_loop_z.lo())) {
            out.rho_loop_y = out.rho_loop_y.refined(out.rho_loop_y.width() / 2);
            out.rho_loop_z = out.rho_loop_z.refined(out.rho_loop_z.width() / 2);
        }
    }
    return out;
}

bool omega_at_rho_infinite(const RationalGF& loop_series)
{
    Radius rho = smallest_positive_pole(loop_series);
    if (rho.is_infinite())
        return false;
    // Divergent at rho unless the numerator vanishes there as well.
    IntPolynomial g = gcd(loop_series.num(), rho.defining_polynomial());
    if (g.is_constant())
        return true;
    if (g.sign_at(rho.lo()) == 0)
        return false;
    return SturmSequence(g).count_roots(rho.lo(), rho.hi()) == 0;
}

bool omega_at_rho_infinite(const SpaceExpr& z) { return omega_at_rho_infinite(loop_gf(z)); }

bool elliptic_proxy(const Radius& rho_loop) { return compare(rho_loop, Rational(1)) != std::partial_ordering::less; }

const char* to_string(GoodGrowth g) noexcept
{
    switch (g) {
    case GoodGrowth::StronglyInert: return "CERTIFIED_STRONGLY_INERT";
    case GoodGrowth::InertPoleDivergence: return "CERTIFIED_INERT_POLE_DIVERGENCE";
    case GoodGrowth::NotCertified: return "NOT_CERTIFIED";
    }
    return "NOT_CERTIFIED";
}

GrowthVerdict good_growth_verdict(const CofiberPresentation& c)
{
    if (!c.inert_asserted)
        throw hypothesis_error("strongly inert is only defined for inert maps");
    require_nontrivial(c.attached, "A");
    require_nontrivial(c.quotient, "Z");

    GrowthVerdict v;
    v.trail.push_back("A and Z rationally nontrivial: computed from reduced homology");
    v.trail.push_back("attaching map inert: asserted (" + c.justification + ")");

    InertnessCheck check = strongly_inert_check(c);
    v.rho = check.rho_loop_y;
    v.rho_loop_z = check.rho_loop_z;
    v.log_index = log_index_exact(v.rho);
    v.elliptic = elliptic_proxy(v.rho);
    v.strongly_inert = check.strongly_inert;
    if (check.strongly_inert) {
        v.good_growth = GoodGrowth::StronglyInert;
        v.trail.push_back("rho(OmegaY) < rho(OmegaZ): certified by disjoint isolating intervals");
        return v;
    }
    v.trail.push_back("rho(OmegaY) < rho(OmegaZ) not certified");
    v.omega_at_rho_infinite = omega_at_rho_infinite(c.quotient);
    if (*v.omega_at_rho_infinite) {
        v.good_growth = GoodGrowth::InertPoleDivergence;
        v.trail.push_back("OmegaZ(rho(OmegaZ)) = infinity: pole of the reduced loop series of Z");
    } else {
        v.trail.push_back("OmegaZ(rho(OmegaZ)) = infinity fails: no positive pole");
    }
    return v;
}

GrowthVerdict connected_sum_verdict(const ConnSumPresentation& c)
{
    if (!c.inert_asserted)
        throw hypothesis_error("strongly inert is only defined for inert maps");
    CofiberPresentation collar = collar_cofibration(c);
    GrowthVerdict v = good_growth_verdict(collar);
    // Hypotheses of the connected-sum theorem, with N the factor of smaller radius.
    Radius rm = smallest_positive_pole(loop_gf(c.first));
    Radius rn = smallest_positive_pole(loop_gf(c.second));
    const bool swapped = compare(rn, rm) == std::partial_ordering::greater;
    const SpaceExpr& n = swapped ? c.first : c.second;
    const bool divergent = omega_at_rho_infinite(n);
    v.trail.push_back(std::string("rho(OmegaN) <= rho(OmegaM) with N = ") + (swapped ? "M" : "N") + ": computed");
    v.trail.push_back(std::string("OmegaN(rho(OmegaN)) = infinity: ") + (divergent ? "holds" : "fails"));
    return v;
}

GrowthVerdict y_class_verdict(const YClassPresentation& y)
{
    GrowthVerdict v = good_growth_verdict(defining_cofibration(y));
    v.trail.push_back("Z has the rational cohomology of S^m x S^(n-m), so log index(pi(Z)) = 0");
    return v;
}

namespace detail {

std::vector<Integer> invert_product(const std::vector<Integer>& series, std::size_t N, bool graded)
{
    if (series.size() < N + 1)
        throw validation_error("series shorter than the truncation degree");
    if (series[0] != 1)
        throw validation_error("not the Hilbert series of a universal enveloping algebra: constant term must be 1");
    std::vector<Integer> product(N + 1);
    product[0] = 1;
    std::vector<Integer> exps(N + 1);
    std::vector<Integer> factor;
    std::vector<Integer> next(N + 1);
    for (std::size_t i = 1; i <= N; ++i) {
        Integer l = series[i] - product[i];
        if (l < 0)
            throw validation_error("not the Hilbert series of a universal enveloping algebra");
        exps[i] = l;
        if (l == 0)
            continue;
        const bool exterior = graded && (i % 2 == 1);
        const std::size_t jmax = N / i;
        factor.assign(jmax + 1, Integer(0));
        for (std::size_t j = 0; j <= jmax; ++j) {
            if (exterior) {
                mpz_bin_ui(factor[j].get_mpz_t(), l.get_mpz_t(), j);
            } else {
                Integer top = l + static_cast<unsigned long>(j) - 1;
                if (j == 0)
                    factor[j] = 1;
                else
                    mpz_bin_ui(factor[j].get_mpz_t(), top.get_mpz_t(), j);
            }
        }
        for (std::size_t k = 0; k <= N; ++k) {
            Integer acc = 0;
            for (std::size_t j = 0; j <= jmax && j * i <= k; ++j)
                if (factor[j] != 0)
                    mpz_addmul(acc.get_mpz_t(), factor[j].get_mpz_t(), product[k - j * i].get_mpz_t());
            next[k] = acc;
        }
        product.swap(next);
    }
    return exps;
}

}  // namespace detail

PiRankTable pi_ranks(const RationalGF& gf, std::size_t N)
{
    TruncatedSeries s = expand(gf, N);
    if (!s.all_nonnegative_integers())
        throw validation_error("not the Hilbert series of a universal enveloping algebra: "
                               "coefficients must be nonnegative integers");
    std::vector<Integer> coeffs(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
        coeffs[i] = s[i].get_num();
    PiRankTable out;
    out.ranks = detail::invert_product(coeffs, N, true);
    out.trunc_degree = N;
    return out;
}

}  // namespace loopgrowth
