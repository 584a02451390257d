#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loopgrowth::necklace {

/// Letters are indices 0..q-1 ordered by index; weights[c] >= 1 is the
/// degree of letter c. A word's weight is the sum of its letter degrees.
struct Bounds {
    int max_weight;
    int max_length;
};

struct Prefix {
    std::vector<std::uint8_t> word;
    int period = 1;
    int weight = 0;
};

namespace detail {

// Fredricksen-Kessler-Maiorana recursion over prenecklaces. `word` holds the
// current prefix of length t with Lyndon period p. Calls visit(word, p,
// weight) on every necklace (t % p == 0) of length >= 1 within bounds.
template <class Visit>
void extend(std::span<const int> weights, const Bounds& bounds, std::vector<std::uint8_t>& word, int p, int weight,
            Visit& visit)
{
    const int t = static_cast<int>(word.size());
    if (t > 0 && t % p == 0)
        visit(std::span<const std::uint8_t>(word), p, weight);
    if (t >= bounds.max_length)
        return;
    const int q = static_cast<int>(weights.size());
    const int first = t == 0 ? 0 : word[static_cast<std::size_t>(t - p)];
    for (int c = first; c < q; ++c) {
        const int w = weight + weights[static_cast<std::size_t>(c)];
        if (w > bounds.max_weight)
            continue;
        word.push_back(static_cast<std::uint8_t>(c));
        const int np = (t == 0 || c == first) ? p : t + 1;
        extend(weights, bounds, word, t == 0 ? 1 : np, w, visit);
        word.pop_back();
    }
}

// Same traversal, but nodes of length `depth` are collected as tasks
// instead of being expanded. Necklaces shorter than `depth` are visited.
template <class Visit>
void split(std::span<const int> weights, const Bounds& bounds, int depth, std::vector<std::uint8_t>& word, int p,
           int weight, Visit& visit, std::vector<Prefix>& tasks)
{
    const int t = static_cast<int>(word.size());
    if (t == depth) {
        tasks.push_back(Prefix{word, p, weight});
        return;
    }
    if (t > 0 && t % p == 0)
        visit(std::span<const std::uint8_t>(word), p, weight);
    if (t >= bounds.max_length)
        return;
    const int q = static_cast<int>(weights.size());
    const int first = t == 0 ? 0 : word[static_cast<std::size_t>(t - p)];
    for (int c = first; c < q; ++c) {
        const int w = weight + weights[static_cast<std::size_t>(c)];
        if (w > bounds.max_weight)
            continue;
        word.push_back(static_cast<std::uint8_t>(c));
        const int np = (t == 0 || c == first) ? p : t + 1;
        split(weights, bounds, depth, word, t == 0 ? 1 : np, w, visit, tasks);
        word.pop_back();
    }
}

}  // namespace detail

/// Serial enumeration of all necklaces (lexicographically least rotations)
/// within the bounds. visit(word, period, weight); period == length marks a
/// Lyndon word.
template <class Visit>
void for_each(std::span<const int> weights, const Bounds& bounds, Visit&& visit)
{
    std::vector<std::uint8_t> word;
    word.reserve(static_cast<std::size_t>(bounds.max_length) + 1);
    detail::extend(weights, bounds, word, 1, 0, visit);
}

inline int worker_count()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Parallel enumeration: subtrees below a fixed prefix depth run as OpenMP
/// tasks. visit(worker, word, period, weight) receives the worker index in
/// [0, worker_count()), so callers keep per-worker accumulators and merge
/// them afterwards; integer merges make the result schedule-independent.
template <class Visit>
void parallel_for_each(std::span<const int> weights, const Bounds& bounds, Visit&& visit, int depth = 4)
{
    std::vector<Prefix> tasks;
    {
        std::vector<std::uint8_t> word;
        auto serial = [&visit](std::span<const std::uint8_t> w, int p, int weight) { visit(0, w, p, weight); };
        detail::split(weights, bounds, depth, word, 1, 0, serial, tasks);
    }
    const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
#ifdef _OPENMP
        const int worker = omp_get_thread_num();
#else
        const int worker = 0;
#endif
        auto local = [&visit, worker](std::span<const std::uint8_t> w, int p, int weight) {
            visit(worker, w, p, weight);
        };
        Prefix task = tasks[static_cast<std::size_t>(i)];
        task.word.reserve(static_cast<std::size_t>(bounds.max_length) + 1);
        detail::extend(weights, bounds, task.word, task.period, task.weight, local);
    }
}

}  // namespace loopgrowth::necklace
