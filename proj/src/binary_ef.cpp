#include "fairorient/binary_ef.hpp"

#include <algorithm>

namespace fairorient::binary {

const char *to_string(Property p)
{
    switch (p) {
    case Property::Circuit:
        return "circuit";
    case Property::ForcedEdge:
        return "forced_edge";
    case Property::EvenBundle:
        return "even_bundle";
    case Property::Singleton:
        return "singleton";
    default:
        return "none";
    }
}

namespace {

// Stable counting sort of edge ids by a key in [0, n).
template <typename Key>
std::vector<EdgeId> counting_sort(const std::vector<EdgeId> &ids, std::size_t n, Key key)
{
    std::vector<std::uint32_t> start(n + 1, 0);
    for (EdgeId e : ids)
        ++start[key(e) + 1];
    for (std::size_t i = 0; i < n; ++i)
        start[i + 1] += start[i];
    std::vector<EdgeId> out(ids.size());
    for (EdgeId e : ids)
        out[start[key(e)]++] = e;
    return out;
}

}  // namespace

PrimeGraph preprocess_binary(const Instance &inst)
{
    if (!inst.is_binary())
        throw InputError("binary solver requires all values in {0, 1}");
    PrimeGraph pg;
    pg.n = inst.vertex_count();
    pg.forced_in.assign(pg.n, 0);
    for (EdgeId e = 0; e < inst.edge_count(); ++e) {
        const Edge &ed = inst.edge(e);
        if (ed.w_u == 1 && ed.w_v == 1) {
            pg.prime.push_back(e);
        } else if (ed.w_u == 0 && ed.w_v == 0) {
            pg.discarded.push_back(e);
        } else {
            pg.forced.push_back(e);
            pg.forced_in[ed.w_u == 1 ? ed.u : ed.v] = 1;
        }
    }

    auto lo = [&](EdgeId e) { return std::min(inst.edge(e).u, inst.edge(e).v); };
    auto hi = [&](EdgeId e) { return std::max(inst.edge(e).u, inst.edge(e).v); };
    pg.bundle_edges = counting_sort(counting_sort(pg.prime, pg.n, hi), pg.n, lo);

    for (std::uint32_t p = 0; p < pg.bundle_edges.size(); ++p) {
        const EdgeId e = pg.bundle_edges[p];
        if (pg.bundles.empty() || pg.bundles.back().a != lo(e) || pg.bundles.back().b != hi(e))
            pg.bundles.push_back(Bundle{lo(e), hi(e), p, 0});
        ++pg.bundles.back().count;
    }

    pg.adj_offsets.assign(pg.n + 1, 0);
    for (const Bundle &b : pg.bundles) {
        ++pg.adj_offsets[b.a + 1];
        ++pg.adj_offsets[b.b + 1];
    }
    for (std::size_t i = 0; i < pg.n; ++i)
        pg.adj_offsets[i + 1] += pg.adj_offsets[i];
    pg.adj.resize(pg.adj_offsets[pg.n]);
    std::vector<std::uint32_t> fill(pg.adj_offsets.begin(), pg.adj_offsets.end() - 1);
    for (std::uint32_t id = 0; id < pg.bundles.size(); ++id) {
        pg.adj[fill[pg.bundles[id].a]++] = id;
        pg.adj[fill[pg.bundles[id].b]++] = id;
    }
    return pg;
}

namespace {

Vertex other_end(const Bundle &b, Vertex i)
{
    return b.a == i ? b.b : b.a;
}

// Simple cycle of length >= 3 in the bundle graph of the component rooted
// at `root`, or false when the component is a tree.
bool find_cycle(const PrimeGraph &pg, Vertex root, std::vector<std::uint32_t> &parent_bundle,
                std::vector<std::uint8_t> &state, ComponentDiagnosis &out)
{
    constexpr std::uint32_t kRoot = static_cast<std::uint32_t>(-1);
    struct Frame {
        Vertex v;
        std::uint32_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    parent_bundle[root] = kRoot;
    state[root] = 1;  // on stack
    while (!stack.empty()) {
        Frame &f = stack.back();
        auto inc = pg.bundles_at(f.v);
        if (f.next == inc.size()) {
            state[f.v] = 2;
            stack.pop_back();
            continue;
        }
        const std::uint32_t bid = inc[f.next++];
        if (bid == parent_bundle[f.v])
            continue;
        const Vertex w = other_end(pg.bundles[bid], f.v);
        if (state[w] == 0) {
            state[w] = 1;
            parent_bundle[w] = bid;
            stack.push_back({w, 0});
            continue;
        }
        if (state[w] != 1)
            continue;
        // Back edge to an ancestor: walk the tree path from f.v up to w.
        std::vector<Vertex> path{f.v};
        std::vector<std::uint32_t> via;
        Vertex x = f.v;
        while (x != w) {
            const std::uint32_t pb = parent_bundle[x];
            via.push_back(pb);
            x = other_end(pg.bundles[pb], x);
            path.push_back(x);
        }
        // path = f.v ... w; orient w -> f.v -> ... following the path in
        // reverse, closing with the back bundle.
        std::reverse(path.begin(), path.end());
        std::reverse(via.begin(), via.end());
        out.cycle = path;
        out.cycle_bundles = via;
        out.cycle_bundles.push_back(bid);
        return true;
    }
    return false;
}

}  // namespace

std::vector<ComponentDiagnosis> diagnose_components(const PrimeGraph &pg)
{
    constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
    const std::size_t n = pg.n;
    std::vector<std::uint32_t> comp(n, kUnset);
    std::vector<ComponentDiagnosis> out;
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != kUnset)
            continue;
        const auto id = static_cast<std::uint32_t>(out.size());
        out.emplace_back();
        comp[s] = id;
        queue.assign(1, s);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (std::uint32_t bid : pg.bundles_at(queue[q])) {
                const Vertex w = other_end(pg.bundles[bid], queue[q]);
                if (comp[w] == kUnset) {
                    comp[w] = id;
                    queue.push_back(w);
                }
            }
        }
    }
    for (Vertex v = 0; v < n; ++v)
        out[comp[v]].vertices.push_back(v);

    std::vector<std::uint32_t> bundle_total(out.size(), 0), first_even(out.size(), kUnset),
        first_multi(out.size(), kUnset);
    std::vector<std::uint8_t> touches_forced(out.size(), 0);
    for (std::uint32_t bid = 0; bid < pg.bundles.size(); ++bid) {
        const Bundle &b = pg.bundles[bid];
        const std::uint32_t c = comp[b.a];
        ++bundle_total[c];
        out[c].prime_edges += b.count;
        if (b.count % 2 == 0 && first_even[c] == kUnset)
            first_even[c] = bid;
        if (b.count > 1 && first_multi[c] == kUnset)
            first_multi[c] = bid;
    }
    for (Vertex v = 0; v < n; ++v)
        if (pg.forced_in[v])
            touches_forced[comp[v]] = 1;

    std::vector<std::uint32_t> parent_bundle(n, kUnset);
    std::vector<std::uint8_t> state(n, 0);
    for (std::uint32_t c = 0; c < out.size(); ++c) {
        ComponentDiagnosis &d = out[c];
        if (d.vertices.size() == 1) {
            d.property = Property::Singleton;
            continue;
        }
        if (touches_forced[c]) {
            d.property = Property::ForcedEdge;
            continue;
        }
        if (first_even[c] != kUnset) {
            d.property = Property::EvenBundle;
            d.bundle = first_even[c];
            continue;
        }
        if (bundle_total[c] >= d.vertices.size() && find_cycle(pg, d.vertices.front(), parent_bundle, state, d)) {
            d.property = Property::Circuit;
            continue;
        }
        for (Vertex v : d.vertices) {
            std::uint32_t found = 0;
            for (std::uint32_t bid : pg.bundles_at(v)) {
                if (pg.bundles[bid].count >= 2)
                    d.trail_bundles[found++] = bid;
                if (found == 2)
                    break;
            }
            if (found == 2) {
                d.property = Property::Circuit;
                d.pivot = v;
                break;
            }
        }
        if (d.property == Property::Circuit)
            continue;
        if (first_multi[c] != kUnset) {
            d.repair = Repair::RemoveOneEdge;
            d.bundle = first_multi[c];
        } else {
            d.repair = Repair::RemoveAllEdges;
        }
    }
    return out;
}

Seed seed_orientation(const Instance &inst, const PrimeGraph &pg, const std::vector<ComponentDiagnosis> &diag)
{
    Seed seed{PartialOrientation(inst.edge_count(), Assignment::Charity),
              std::vector<std::uint8_t>(inst.edge_count(), 0)};
    auto give = [&](EdgeId e, Vertex to) {
        seed.orientation.give(inst, e, to);
        seed.decided[e] = 1;
    };
    auto drop = [&](EdgeId e) {
        seed.orientation.set(e, Assignment::Charity);
        seed.decided[e] = 1;
    };
    auto split = [&](const Bundle &b, std::uint32_t skip) {
        auto edges = pg.edges_of(b).subspan(skip);
        for (std::size_t q = 0; q < edges.size(); ++q)
            give(edges[q], q < edges.size() / 2 ? b.a : b.b);
    };

    for (EdgeId e : pg.discarded)
        give(e, inst.edge(e).u);
    for (EdgeId e : pg.forced)
        give(e, inst.edge(e).w_u > 0 ? inst.edge(e).u : inst.edge(e).v);

    for (const ComponentDiagnosis &d : diag) {
        if (d.repair == Repair::RemoveAllEdges) {
            for (Vertex v : d.vertices)
                for (std::uint32_t bid : pg.bundles_at(v))
                    for (EdgeId e : pg.edges_of(pg.bundles[bid]))
                        drop(e);
            continue;
        }
        if (d.repair == Repair::RemoveOneEdge) {
            const Bundle &b = pg.bundles[*d.bundle];
            drop(pg.edges_of(b).front());
            split(b, 1);
            continue;
        }
        switch (d.property) {
        case Property::EvenBundle:
            split(pg.bundles[*d.bundle], 0);
            break;
        case Property::Circuit:
            if (!d.cycle.empty()) {
                for (std::size_t t = 0; t < d.cycle.size(); ++t)
                    give(pg.edges_of(pg.bundles[d.cycle_bundles[t]]).front(), d.cycle[(t + 1) % d.cycle.size()]);
            } else {
                const Vertex j = *d.pivot;
                const Bundle &first = pg.bundles[d.trail_bundles[0]];
                const Bundle &second = pg.bundles[d.trail_bundles[1]];
                const Vertex i = other_end(first, j);
                const Vertex k = other_end(second, j);
                give(pg.edges_of(first)[0], j);
                give(pg.edges_of(second)[0], k);
                give(pg.edges_of(second)[1], j);
                give(pg.edges_of(first)[1], i);
            }
            break;
        default:
            break;
        }
    }
    return seed;
}

PartialOrientation propagate_happy(const Instance &inst, const PrimeGraph &pg, Seed seed, PropagationStats *stats)
{
    const std::size_t n = pg.n;
    PartialOrientation &o = seed.orientation;
    std::vector<Vertex> source(n, kNoVertex);
    std::vector<std::uint8_t> plenty(n, 0);  // two distinct sources, or a forced good

    auto add_source = [&](Vertex i, Vertex from) {
        if (plenty[i])
            return false;
        if (source[i] == kNoVertex) {
            source[i] = from;
            return true;
        }
        if (source[i] == from)
            return false;
        plenty[i] = 1;
        return true;
    };
    auto happy_towards = [&](Vertex i, Vertex k) {
        return plenty[i] || (source[i] != kNoVertex && source[i] != k);
    };

    for (EdgeId e : pg.forced)
        if (seed.decided[e])
            plenty[o.holder(inst, e)] = 1;

    std::vector<std::uint32_t> undecided(pg.bundles.size(), 0);
    for (std::uint32_t bid = 0; bid < pg.bundles.size(); ++bid) {
        const Bundle &b = pg.bundles[bid];
        for (EdgeId e : pg.edges_of(b)) {
            if (!seed.decided[e]) {
                ++undecided[bid];
                continue;
            }
            const Vertex h = o.holder(inst, e);
            if (h != kNoVertex)
                add_source(h, other_end(b, h));
        }
    }

    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if (plenty[v] || source[v] != kNoVertex)
            queue.push_back(v);

    PropagationStats local;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const Vertex i = queue[q];
        ++local.vertex_pops;
        for (std::uint32_t bid : pg.bundles_at(i)) {
            ++local.bundle_scans;
            if (undecided[bid] == 0)
                continue;
            const Bundle &b = pg.bundles[bid];
            const Vertex k = other_end(b, i);
            if (!happy_towards(i, k))
                continue;
            std::uint32_t to_i = 0, to_k = 0;
            for (EdgeId e : pg.edges_of(b)) {
                if (!seed.decided[e])
                    continue;
                const Vertex h = o.holder(inst, e);
                to_i += h == i;
                to_k += h == k;
            }
            const std::uint32_t target_i = b.count / 2;
            if (to_i > target_i || to_k > b.count - target_i)
                throw InternalError("propagate_happy: seed over-assigns a bundle");
            std::uint32_t give_i = target_i - to_i;
            for (EdgeId e : pg.edges_of(b)) {
                if (seed.decided[e])
                    continue;
                o.give(inst, e, give_i > 0 ? i : k);
                if (give_i > 0)
                    --give_i;
                seed.decided[e] = 1;
            }
            undecided[bid] = 0;
            if (add_source(k, i))
                queue.push_back(k);
            if (target_i > 0 && add_source(i, k))
                queue.push_back(i);
        }
    }
    for (std::uint32_t bid = 0; bid < pg.bundles.size(); ++bid)
        if (undecided[bid] != 0)
            throw InternalError("propagate_happy: unreachable edge in bundle " + std::to_string(bid));
    if (stats)
        *stats = local;
    return o;
}

SolveReport solve_binary(const Instance &inst, Goal goal, bool want_certificate)
{
    SolveReport report;
    report.algorithm = "binary";
    report.fairness = Fairness::EF;
    const PrimeGraph pg = preprocess_binary(inst);
    const auto diag = diagnose_components(pg);

    std::uint64_t charity = 0;
    bool every_ok = true;
    for (const ComponentDiagnosis &d : diag) {
        if (d.property != Property::None)
            continue;
        every_ok = false;
        charity += d.repair == Repair::RemoveOneEdge ? 1 : d.prime_edges;
    }
    report.decision = every_ok;
    report.min_charity = charity;
    report.stats["components"] = diag.size();
    report.stats["prime_edges"] = pg.prime.size();
    report.stats["bundles"] = pg.bundles.size();

    if (want_certificate && (goal == Goal::MinCharity || every_ok)) {
        PropagationStats ps;
        report.certificate = propagate_happy(inst, pg, seed_orientation(inst, pg, diag), &ps);
        report.stats["vertex_pops"] = ps.vertex_pops;
        report.stats["bundle_scans"] = ps.bundle_scans;
    }
    return report;
}

}  // namespace fairorient::binary
