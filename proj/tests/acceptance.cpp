// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "generators.hpp"
#include "loopgrowth/cli.hpp"
#include "loopgrowth/freeloop.hpp"
#include "loopgrowth/loop.hpp"
#include "loopgrowth/torsion.hpp"

#include <omp.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace loopgrowth;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double t = seconds_since(t0);
    if (budget_s > 0 && t > budget_s)
        o.require(false, "time budget exceeded");
    if (!o.ok)
        ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << std::setw(2) << id << "] " << title << " (" << std::fixed
              << std::setprecision(2) << t << " s";
    if (budget_s > 0)
        std::cout << ", budget " << budget_s << " s";
    std::cout << ")";
    if (!o.ok)
        std::cout << ": " << o.detail;
    std::cout << std::endl;
}

oracle::Series series(const RationalGF& f, std::size_t N) { return expand(f, N).coeffs(); }

std::vector<Integer> integers(const oracle::Series& s)
{
    std::vector<Integer> out;
    for (const Rational& r : s)
        out.push_back(r.get_num());
    return out;
}

std::string in_process(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    loopgrowth::cli::run(args, out, err);
    return out.str();
}

std::string quoted(const std::string& s)
{
    std::string q = "'";
    for (char c : s)
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

std::string via_process(const std::vector<std::string>& args)
{
    std::string cmd = quoted(LOOPGROWTH_CLI_PATH);
    for (const auto& a : args)
        cmd += " " + quoted(a);
    cmd += " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("cannot start the CLI");
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

}  // namespace

int main()
{
    criterion(1, "series engine agrees with truncated-series arithmetic (200 expressions, degree 64)", 5.0,
              [](Outcome& o) {
                  std::mt19937_64 rng(1);
                  for (int i = 0; i < 200; ++i) {
                      gen::Paired e = gen::expression(rng, 3, 64);
                      o.require(series(e.gf, 64) == e.series, "expression " + std::to_string(i) + " differs");
                  }
              });

    criterion(2, "loop of a sphere smashed with a loop space matches series division (20 Z, degree 40)", 0,
              [](Outcome& o) {
                  const std::size_t N = 40;
                  std::mt19937_64 rng(2);
                  for (int i = 0; i < 20; ++i) {
                      SpaceExpr z = gen::loopable(rng, 2, 5);
                      const int n_alpha = gen::uniform(rng, 2, 6);
                      oracle::Series omega_z = series(loop_gf(z), N);
                      oracle::Series expected = oracle::reciprocal(oracle::sub(
                          oracle::one(N), oracle::shift(omega_z, static_cast<std::size_t>(n_alpha - 1))));
                      o.require(series(loop_smash_sphere(n_alpha, z), N) == expected, "Z = " + to_string(z));
                  }
              });

    criterion(3, "deleted-manifold identity and certified rho = 1/2", 0, [](Outcome& o) {
        CofiberPresentation c{parse("S2"), parse("S2 x S2"), true, "acceptance"};
        RationalGF y = inert_cofiber_loop_gf(c);
        o.require(y == loop_gf(parse("S2 v S2")), "series differ from the wedge");
        o.require(y == RationalGF(IntPolynomial{1}, IntPolynomial{1, -2}), "series is not 1/(1-2z)");
        Radius rho = smallest_positive_pole(y);
        o.require(!rho.is_infinite() && rho.lo() <= Rational(1, 2) && rho.hi() >= Rational(1, 2),
                  "interval misses 1/2");
        o.require(rho.width() <= Rational(1, 1000000000000), "interval wider than 1e-12");
    });

    criterion(4, "strong inertness certified by disjoint intervals on the battery", 0, [](Outcome& o) {
        std::vector<CofiberPresentation> battery{
            {parse("S2"), parse("S2 x S2"), true, "acceptance"},
            {parse("S2"), parse("S3"), true, "acceptance"},
        };
        for (auto [m, n, j] : {std::tuple{2, 4, "S2"}, {2, 5, "S2"}, {2, 5, "S2 v S3"}})
            battery.push_back(defining_cofibration(YClassPresentation{m, n, parse(j), "class membership"}));
        for (const auto& c : battery) {
            const auto t0 = Clock::now();
            InertnessCheck check = strongly_inert_check(c);
            const std::string name = to_string(c.attached) + " -> " + to_string(c.quotient);
            o.require(check.strongly_inert, name + " not strongly inert");
            o.require(check.rho_loop_z.is_infinite() || check.rho_loop_y.hi() < check.rho_loop_z.lo(),
                      name + " intervals overlap");
            o.require(seconds_since(t0) < 1.0, name + " took longer than 1 s");
        }
    });

    criterion(5, "necklace counting equals brute force on all 19 small alphabets at N = 18", 60.0, [](Outcome& o) {
        for (int a = 1; a <= 3; ++a) {
            std::vector<std::vector<int>> alphabets{{a}};
            for (int b = a; b <= 3; ++b) {
                alphabets.push_back({a, b});
                for (int c = b; c <= 3; ++c)
                    alphabets.push_back({a, b, c});
            }
            for (const auto& d : alphabets) {
                GradedAlphabet alpha(d);
                HHDimTable fast = hh_necklace(alpha, 18);
                HHDimTable slow = hh_bruteforce(alpha, 18);
                std::string name;
                for (int x : d)
                    name += std::to_string(x);
                o.require(fast == slow, "alphabet {" + name + "} differs");
                o.require(fast.rank_nullity_holds() && slow.rank_nullity_holds(), "rank-nullity fails");
            }
        }
    });

    criterion(6, "elliptic tables for S2 and S3 to degree 20", 0, [](Outcome& o) {
        const std::vector<Integer> ones(21, 1);
        const std::vector<Integer> s3 = integers(series(RationalGF(IntPolynomial{1, 0, 0, 1}, IntPolynomial{1, 0, -1}), 20));
        for (bool brute : {false, true}) {
            HHDimTable a = brute ? hh_bruteforce(GradedAlphabet({1}), 20) : hh_necklace(GradedAlphabet({1}), 20);
            HHDimTable b = brute ? hh_bruteforce(GradedAlphabet({2}), 20) : hh_necklace(GradedAlphabet({2}), 20);
            o.require(a.lx == ones, "S2 table is not all ones");
            o.require(b.lx == s3, "S3 table differs from (1+z^3)/(1-z^2)");
        }
        oracle::HH dense = oracle::hochschild_dense({2}, 20);
        o.require(dense.lx == s3, "dense oracle disagrees for S3");
    });

    criterion(7, "controlled growth and log index match for the free loop space of S3 v S3 at N = 40", 120.0,
              [](Outcome& o) {
                  FreeLoopGrowth g = free_loop_good_growth(GradedAlphabet({2, 2}), 40, GrowthParams{1.5, 0.15, 12});
                  o.require(g.check.passed, "growth check failed: " + g.check.failure);
                  const double target = -std::log(1.0 / std::sqrt(2.0));
                  const double diff = std::abs(g.empirical - target);
                  std::ostringstream msg;
                  msg << "empirical " << g.empirical << " vs " << target;
                  o.require(diff <= 0.08, msg.str());
                  o.require(std::abs(g.loop_log_index.value - target) < 1e-9, "exact log index is not ln 2 / 2");
              });

    criterion(8, "PBW ranks of 1/(1-2z^2) equal Lyndon counts over two even letters to degree 14", 0,
              [](Outcome& o) {
                  PiRankTable t = pi_ranks(RationalGF(IntPolynomial{1}, IntPolynomial{1, 0, -2}), 14);
                  auto lyndon = oracle::lyndon_counts({2, 2}, 14);
                  for (std::size_t i = 1; i <= 14; ++i)
                      o.require(t.ranks[i] == lyndon[i], "degree " + std::to_string(i));
              });

    criterion(9, "excluded primes and first torsion dimension", 0, [](Outcome& o) {
        o.require(primes_set(7, 1).primes == std::vector<int>{2, 3}, "primes for d = 7, s = 1");
        o.require(least_p_torsion_dim(3, 5) == 10, "first 5-torsion of S3");
    });

    criterion(10, "Hilton-Milnor census growth for m = n = 3 within 0.1 at N = 30", 0, [](Outcome& o) {
        TorsionReport t = torsion_report(3, 3, 5, 1, 30);
        const double wedge = log_index_exact(
                                 smallest_positive_pole(RationalGF(IntPolynomial{1}, IntPolynomial{1, 0, -2})))
                                 .value;
        std::ostringstream msg;
        msg << "census " << t.census_log_index << " vs wedge " << wedge;
        o.require(std::abs(t.census_log_index - wedge) <= 0.1, msg.str());
    });

    criterion(11, "CLI output byte-identical across runs and across 1 vs 8 threads", 0, [](Outcome& o) {
        const std::vector<std::vector<std::string>> commands{
            {"parse", "Susp(S2 ^ S3) x S4"},
            {"homology", "S2 x S3 v S4"},
            {"loop-series", "S2 v S3 v S3", "--max-degree", "60"},
            {"rho", "Susp(S2 x S2)"},
            {"log-index", "S3 v S3", "--max-degree", "60"},
            {"cofiber", "--A", "S2", "--Z", "S2 x S2", "--inert", "cohomology not single-generated"},
            {"connsum", "--A", "S3", "--M", "S2 x S2", "--N", "S2 x S2", "--inert", "collar"},
            {"yclass", "--m", "2", "--n", "5", "--J", "S2 v S3", "--inert", "class"},
            {"free-loop", "S3 v S3", "--max-degree", "40", "--epsilon", "0.15", "--k-min", "12"},
            {"free-loop", "--alphabet", "1,1,2", "--max-degree", "12", "--method", "both", "--format", "csv"},
            {"hm-census", "--m", "2", "--n", "3", "--max-degree", "20"},
            {"torsion", "--m", "3", "--n", "3", "--p", "5", "--r", "2", "--max-degree", "30"},
            {"primes", "--d", "12", "--s", "1", "--format", "csv"},
            {"retraction", "--A", "S2 v S4", "--Z", "S3", "--inert", "x"},
            {"parse", "S2 v "},
        };
        for (const auto& c : commands) {
            auto with_threads = [&](const char* t) {
                auto a = c;
                a.insert(a.end(), {"--threads", t});
                return a;
            };
            const std::string first = in_process(with_threads("1"));
            const std::string second = in_process(with_threads("1"));
            const std::string eight = in_process(with_threads("8"));
            const std::string proc1 = via_process(with_threads("1"));
            const std::string proc8 = via_process(with_threads("8"));
            o.require(!first.empty(), c[0] + " produced no output");
            o.require(first == second, c[0] + " differs between runs");
            o.require(first == eight, c[0] + " differs between 1 and 8 threads");
            o.require(first == proc1 && proc1 == proc8, c[0] + " differs when run as a process");
        }
        omp_set_num_threads(omp_get_num_procs());
    });

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
