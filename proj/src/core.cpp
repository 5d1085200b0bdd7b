#include "fairorient/core.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace fairorient {

Weight checked_add(Weight a, Weight b)
{
    Weight out;
    if (__builtin_add_overflow(a, b, &out))
        throw InputError("weight overflow in summation");
    return out;
}

const char *to_string(Fairness f)
{
    return f == Fairness::EF ? "ef" : "efx";
}

Instance::Instance(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n_ >= kNoVertex)
        throw InputError("too many vertices");
    if (edges_.size() >= std::numeric_limits<EdgeId>::max())
        throw InputError("too many edges");
    std::vector<std::uint32_t> degree(n_ + 1, 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge &ed = edges_[e];
        if (ed.u >= n_ || ed.v >= n_)
            throw InputError("edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.u == ed.v)
            throw InputError("edge " + std::to_string(e) + " is a loop");
        ++degree[ed.u];
        ++degree[ed.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i)
        offsets_[i + 1] = offsets_[i] + degree[i];
    incidence_.resize(offsets_[n_]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        incidence_[fill[edges_[e].u]++] = static_cast<EdgeId>(e);
        incidence_[fill[edges_[e].v]++] = static_cast<EdgeId>(e);
    }
}

std::span<const EdgeId> Instance::incident(Vertex i) const
{
    check_vertex(i);
    return std::span<const EdgeId>(incidence_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

void Instance::check_vertex(Vertex i) const
{
    if (i >= n_)
        throw InputError("vertex id " + std::to_string(i) + " out of range");
}

void Instance::check_edge(EdgeId e) const
{
    if (e >= edges_.size())
        throw InputError("edge id " + std::to_string(e) + " out of range");
}

bool Instance::is_simple() const
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge &e : edges_)
        pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

bool Instance::is_symmetric() const noexcept
{
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge &e) { return e.w_u == e.w_v; });
}

bool Instance::is_binary() const noexcept
{
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge &e) { return e.w_u <= 1 && e.w_v <= 1; });
}

Weight Instance::max_weight() const noexcept
{
    Weight w = 0;
    for (const Edge &e : edges_)
        w = std::max({w, e.w_u, e.w_v});
    return w;
}

Weight Instance::max_shared_weight() const
{
    // Ordered pair (i, j) -> v_i(E_ij).
    std::unordered_map<std::uint64_t, Weight> shared;
    shared.reserve(edges_.size() * 2);
    Weight best = 0;
    auto bump = [&](Vertex i, Vertex j, Weight w) {
        Weight &slot = shared[(static_cast<std::uint64_t>(i) << 32) | j];
        slot = checked_add(slot, w);
        best = std::max(best, slot);
    };
    for (const Edge &e : edges_) {
        bump(e.u, e.v, e.w_u);
        bump(e.v, e.u, e.w_v);
    }
    return best;
}

std::size_t PartialOrientation::charity_count() const noexcept
{
    return static_cast<std::size_t>(std::count(assignment_.begin(), assignment_.end(), Assignment::Charity));
}

Vertex PartialOrientation::holder(const Instance &inst, EdgeId e) const
{
    const Edge &ed = inst.edge(e);
    switch (assignment_.at(e)) {
    case Assignment::ToU:
        return ed.u;
    case Assignment::ToV:
        return ed.v;
    default:
        return kNoVertex;
    }
}

void PartialOrientation::give(const Instance &inst, EdgeId e, Vertex i)
{
    const Edge &ed = inst.edge(e);
    if (i == ed.u)
        set(e, Assignment::ToU);
    else if (i == ed.v)
        set(e, Assignment::ToV);
    else
        throw InternalError("give: vertex is not an endpoint of the edge");
}

Weight bundle_value(const Instance &inst, Vertex i, std::span<const EdgeId> bundle)
{
    inst.check_vertex(i);
    Weight total = 0;
    for (EdgeId e : bundle) {
        inst.check_edge(e);
        total = checked_add(total, inst.edge(e).value_to(i));
    }
    return total;
}

std::vector<EdgeId> bundle_of(const Instance &inst, const PartialOrientation &o, Vertex i)
{
    std::vector<EdgeId> out;
    for (EdgeId e : inst.incident(i))
        if (o.holder(inst, e) == i)
            out.push_back(e);
    return out;
}

namespace {

void check_pair(const Instance &inst, const PartialOrientation &o, Vertex i, Vertex j)
{
    inst.check_vertex(i);
    inst.check_vertex(j);
    if (o.size() != inst.edge_count())
        throw InputError("orientation length does not match edge count");
    if (i == j)
        throw InputError("envy is defined for distinct agents");
}

}  // namespace

bool envies(const Instance &inst, const PartialOrientation &o, Vertex i, Vertex j)
{
    check_pair(inst, o, i, j);
    const auto own = bundle_value(inst, i, bundle_of(inst, o, i));
    const auto other = bundle_value(inst, i, bundle_of(inst, o, j));
    return own < other;
}

bool strongly_envies(const Instance &inst, const PartialOrientation &o, Vertex i, Vertex j)
{
    check_pair(inst, o, i, j);
    const auto theirs = bundle_of(inst, o, j);
    if (theirs.empty())
        return false;
    Weight cheapest = std::numeric_limits<Weight>::max();
    for (EdgeId e : theirs)
        cheapest = std::min(cheapest, inst.edge(e).value_to(i));
    const auto own = bundle_value(inst, i, bundle_of(inst, o, i));
    return own < bundle_value(inst, i, theirs) - cheapest;
}

VerifyResult verify(const Instance &inst, const PartialOrientation &o, Fairness fairness)
{
    if (o.size() != inst.edge_count())
        throw InputError("orientation length does not match edge count");
    const std::size_t n = inst.vertex_count();
    VerifyResult result;
    result.charity = o.charity_count();

    std::vector<std::uint32_t> held(n, 0);
    for (EdgeId e = 0; e < inst.edge_count(); ++e)
        if (Vertex h = o.holder(inst, e); h != kNoVertex)
            ++held[h];

    // Scratch indexed by neighbor: value of their bundle to i, how many of
    // their goods are shared with i, and the cheapest such good.
    std::vector<Weight> seen(n, 0), cheapest(n, 0);
    std::vector<std::uint32_t> shared(n, 0);
    std::vector<Vertex> touched;

    for (Vertex i = 0; i < n; ++i) {
        Weight own = 0;
        touched.clear();
        for (EdgeId e : inst.incident(i)) {
            const Vertex h = o.holder(inst, e);
            const Weight w = inst.edge(e).value_to(i);
            if (h == i) {
                own = checked_add(own, w);
            } else if (h != kNoVertex) {
                if (shared[h] == 0) {
                    touched.push_back(h);
                    cheapest[h] = w;
                }
                seen[h] = checked_add(seen[h], w);
                cheapest[h] = std::min(cheapest[h], w);
                ++shared[h];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Vertex j : touched) {
            Weight threshold = seen[j];
            if (fairness == Fairness::EFX)
                threshold -= held[j] > shared[j] ? 0 : cheapest[j];
            if (!result.witness && own < threshold) {
                result.ok = false;
                result.witness = std::make_pair(i, j);
            }
            seen[j] = 0;
            shared[j] = 0;
        }
        if (result.witness)
            break;
    }
    return result;
}

Instance drop_zero_zero(const Instance &inst, std::vector<EdgeId> &kept)
{
    kept.clear();
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < inst.edge_count(); ++e) {
        if (!inst.edge(e).zero_zero()) {
            kept.push_back(e);
            edges.push_back(inst.edge(e));
        }
    }
    return Instance(inst.vertex_count(), std::move(edges));
}

}  // namespace fairorient
