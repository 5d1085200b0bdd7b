#include "fairorient/random.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace fairorient::gen {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw InputError("Rng::below needs a positive bound");
    // reject the top partial block so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return x % bound;
}

namespace {

std::pair<Vertex, Vertex> pair_at(std::uint64_t idx, std::size_t n)
{
    // idx enumerates u < v row by row
    Vertex u = 0;
    std::uint64_t row = n - 1;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return {u, static_cast<Vertex>(u + 1 + idx)};
}

}  // namespace

Instance random_instance(const RandomSpec &spec)
{
    const std::size_t n = spec.n, m = spec.m;
    if (m > 0 && n < 2)
        throw InputError("random: edges need at least two vertices");
    if (spec.no_zero_zero && spec.max_weight == 0 && m > 0)
        throw InputError("random: max weight 0 makes every edge zero-zero");
    const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (spec.simple && m > pairs)
        throw InputError("random: " + std::to_string(m) + " simple edges do not fit on " + std::to_string(n) + " vertices");

    Rng rng(spec.seed);
    std::vector<std::pair<Vertex, Vertex>> ends;
    ends.reserve(m);
    if (!spec.simple) {
        for (std::size_t e = 0; e < m; ++e) {
            const auto u = static_cast<Vertex>(rng.below(n));
            auto v = static_cast<Vertex>(rng.below(n - 1));
            if (v >= u)
                ++v;
            ends.emplace_back(u, v);
        }
    } else if (2 * m > pairs) {
        // dense: partial shuffle of all pairs
        std::vector<std::uint64_t> all(pairs);
        for (std::uint64_t p = 0; p < pairs; ++p)
            all[p] = p;
        for (std::size_t e = 0; e < m; ++e) {
            std::swap(all[e], all[e + rng.below(pairs - e)]);
            auto [u, v] = pair_at(all[e], n);
            if (rng.coin())
                std::swap(u, v);
            ends.emplace_back(u, v);
        }
    } else {
        std::unordered_set<std::uint64_t> used;
        while (ends.size() < m) {
            const auto u = static_cast<Vertex>(rng.below(n));
            auto v = static_cast<Vertex>(rng.below(n - 1));
            if (v >= u)
                ++v;
            const std::uint64_t key = static_cast<std::uint64_t>(std::min(u, v)) * n + std::max(u, v);
            if (used.insert(key).second)
                ends.emplace_back(u, v);
        }
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    std::size_t heavy = 0;
    for (const auto &[u, v] : ends) {
        Weight top = spec.max_weight;
        if (spec.max_heavy && heavy >= *spec.max_heavy)
            top = std::min<Weight>(top, 1);
        Weight a, b;
        do {
            a = rng.between(0, top);
            b = spec.symmetric ? a : rng.between(0, top);
        } while (spec.no_zero_zero && a == 0 && b == 0);
        if (a >= 2 || b >= 2)
            ++heavy;
        edges.push_back(Edge{u, v, a, b});
    }
    return Instance(n, std::move(edges));
}

}  // namespace fairorient::gen
