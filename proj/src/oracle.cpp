#include "fairorient/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

namespace fairorient::oracle {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Depth-first enumeration from the most significant digit (edge m-1) down
// to edge 0, so leaves are met in increasing numeric order.
class Search {
public:
    Search(const Instance &inst, Fairness fairness, bool partial, bool prune)
        : inst_(inst), fairness_(fairness), partial_(partial), prune_(prune),
          base_(partial ? 3 : 2), m_(inst.edge_count()), current_(m_, Assignment::ToU),
          settle_at_(m_), lowest_edge_(inst.vertex_count(), kNone), scratch_(inst.vertex_count(), 0)
    {
        for (Vertex i = 0; i < inst.vertex_count(); ++i) {
            auto inc = inst.incident(i);
            if (!inc.empty()) {
                lowest_edge_[i] = inc.front();
                settle_at_[inc.front()].push_back(i);
            }
        }
    }

    std::size_t base() const { return base_; }
    std::uint64_t visited() const { return visited_; }
    bool found() const { return best_k_ != kNone; }
    std::size_t best_k() const { return best_k_; }
    const std::vector<Assignment> &best() const { return best_; }

    void set_shared_bound(const std::atomic<std::size_t> *bound) { shared_bound_ = bound; }

    // Fix edges m-1 .. m-t to the digits of `block` and search the rest.
    void run_block(std::uint64_t block, std::size_t t)
    {
        std::size_t charity = 0;
        for (std::size_t d = 0; d < t; ++d) {
            const std::size_t e = m_ - 1 - d;
            std::uint64_t p = 1;
            for (std::size_t q = 0; q < t - 1 - d; ++q)
                p *= base_;
            const auto digit = static_cast<std::uint8_t>((block / p) % base_);
            current_[e] = static_cast<Assignment>(digit);
            if (current_[e] == Assignment::Charity)
                ++charity;
            ++visited_;
            if (prune_ && !settled_ok(e))
                return;
        }
        descend(static_cast<std::ptrdiff_t>(m_) - 1 - static_cast<std::ptrdiff_t>(t), charity);
    }

private:
    bool bound_cut(std::size_t charity) const
    {
        if (!partial_ || !prune_)
            return false;
        if (best_k_ != kNone && charity >= best_k_)
            return true;
        return shared_bound_ && charity > shared_bound_->load(std::memory_order_relaxed);
    }

    void descend(std::ptrdiff_t e, std::size_t charity)
    {
        if (e < 0) {
            leaf(charity);
            return;
        }
        for (std::size_t digit = 0; digit < base_; ++digit) {
            const auto a = static_cast<Assignment>(digit);
            const std::size_t c = charity + (a == Assignment::Charity ? 1 : 0);
            if (bound_cut(c))
                continue;
            current_[static_cast<std::size_t>(e)] = a;
            ++visited_;
            if (prune_ && !settled_ok(static_cast<std::size_t>(e)))
                continue;
            descend(e - 1, c);
            if (!partial_ && found())
                return;
        }
    }

    void leaf(std::size_t charity)
    {
        if (!prune_) {
            PartialOrientation o{current_};
            if (!verify(inst_, o, fairness_).ok)
                return;
        }
        if (best_k_ == kNone || charity < best_k_) {
            best_k_ = charity;
            best_ = current_;
        }
    }

    Vertex holder(EdgeId e) const
    {
        const Edge &ed = inst_.edge(e);
        switch (current_[e]) {
        case Assignment::ToU:
            return ed.u;
        case Assignment::ToV:
            return ed.v;
        default:
            return kNoVertex;
        }
    }

    Weight own_value(Vertex i) const
    {
        Weight own = 0;
        for (EdgeId f : inst_.incident(i))
            if (holder(f) == i)
                own = checked_add(own, inst_.edge(f).value_to(i));
        return own;
    }

    // All edges of every vertex settled at edge e are now fixed.
    bool settled_ok(std::size_t e)
    {
        for (Vertex i : settle_at_[e]) {
            if (fairness_ == Fairness::EF) {
                if (!ef_ok(i))
                    return false;
            } else {
                for (EdgeId f : inst_.incident(i)) {
                    const Vertex j = inst_.edge(f).other(i);
                    if (lowest_edge_[j] >= e && (strongly(i, j) || strongly(j, i)))
                        return false;
                }
            }
        }
        return true;
    }

    bool ef_ok(Vertex i)
    {
        const Weight own = own_value(i);
        bool ok = true;
        touched_.clear();
        for (EdgeId f : inst_.incident(i)) {
            const Vertex h = holder(f);
            if (h == i || h == kNoVertex)
                continue;
            if (scratch_[h] == 0)
                touched_.push_back(h);
            scratch_[h] = checked_add(scratch_[h], inst_.edge(f).value_to(i));
            if (scratch_[h] > own)
                ok = false;
        }
        for (Vertex h : touched_)
            scratch_[h] = 0;
        return ok;
    }

    bool strongly(Vertex i, Vertex j) const
    {
        Weight theirs = 0;
        Weight cheapest = std::numeric_limits<Weight>::max();
        bool any = false;
        for (EdgeId f : inst_.incident(j)) {
            if (holder(f) != j)
                continue;
            const Weight w = inst_.edge(f).value_to(i);
            theirs = checked_add(theirs, w);
            cheapest = std::min(cheapest, w);
            any = true;
        }
        return any && own_value(i) < theirs - cheapest;
    }

    const Instance &inst_;
    Fairness fairness_;
    bool partial_;
    bool prune_;
    std::size_t base_;
    std::size_t m_;
    std::vector<Assignment> current_;
    std::vector<std::vector<Vertex>> settle_at_;
    std::vector<std::size_t> lowest_edge_;
    std::vector<Weight> scratch_;
    std::vector<Vertex> touched_;
    std::size_t best_k_ = kNone;
    std::vector<Assignment> best_;
    std::uint64_t visited_ = 0;
    const std::atomic<std::size_t> *shared_bound_ = nullptr;
};

struct Outcome {
    bool found = false;
    std::size_t k = 0;
    std::vector<Assignment> best;
    std::uint64_t visited = 0;
};

Outcome run(const Instance &inst, Fairness fairness, bool partial, const Options &opt)
{
    const std::size_t m = inst.edge_count();
    const std::size_t base = partial ? 3 : 2;
    Outcome out;

    if (!opt.parallel || m == 0) {
        Search s(inst, fairness, partial, opt.prune);
        s.run_block(0, 0);
        out.found = s.found();
        out.k = s.found() ? s.best_k() : 0;
        out.best = s.best();
        out.visited = s.visited();
        return out;
    }

    // Leading digits split into blocks; block order is numeric order.
    std::size_t t = 0;
    std::uint64_t blocks = 1;
    while (t < m && blocks < 256) {
        blocks *= base;
        ++t;
    }

    std::atomic<std::size_t> shared_k{kNone};
    std::atomic<std::uint64_t> first_hit{std::numeric_limits<std::uint64_t>::max()};
    std::vector<Outcome> per_block(blocks);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        const auto block = static_cast<std::uint64_t>(b);
        if (!partial && block > first_hit.load(std::memory_order_relaxed))
            continue;
        Search s(inst, fairness, partial, opt.prune);
        if (partial)
            s.set_shared_bound(&shared_k);
        s.run_block(block, t);
        Outcome &o = per_block[block];
        o.visited = s.visited();
        if (!s.found())
            continue;
        o.found = true;
        o.k = s.best_k();
        o.best = s.best();
        if (partial) {
            std::size_t cur = shared_k.load();
            while (o.k < cur && !shared_k.compare_exchange_weak(cur, o.k)) {
            }
        } else {
            std::uint64_t cur = first_hit.load();
            while (block < cur && !first_hit.compare_exchange_weak(cur, block)) {
            }
        }
    }

    for (const Outcome &o : per_block) {
        out.visited += o.visited;
        if (o.found && (!out.found || o.k < out.k)) {
            out.found = true;
            out.k = o.k;
            out.best = o.best;
        }
    }
    return out;
}

}  // namespace

ExistsResult brute_exists(const Instance &inst, Fairness fairness, const Options &opt)
{
    if (inst.edge_count() > opt.exists_cap)
        throw RefusalError("brute_exists: " + std::to_string(inst.edge_count()) + " edges exceed the cap of " +
                           std::to_string(opt.exists_cap));
    Outcome o = run(inst, fairness, false, opt);
    ExistsResult r;
    r.exists = o.found;
    r.visited = o.visited;
    if (o.found)
        r.certificate = PartialOrientation(std::move(o.best));
    return r;
}

CharityResult brute_min_charity(const Instance &inst, Fairness fairness, const Options &opt)
{
    if (inst.edge_count() > opt.charity_cap)
        throw RefusalError("brute_min_charity: " + std::to_string(inst.edge_count()) +
                           " edges exceed the cap of " + std::to_string(opt.charity_cap));
    Outcome o = run(inst, fairness, true, opt);
    if (!o.found)
        throw InternalError("brute_min_charity: the all-charity orientation was rejected");
    CharityResult r;
    r.min_charity = o.k;
    r.certificate = PartialOrientation(std::move(o.best));
    r.visited = o.visited;
    return r;
}

namespace {

struct EdgeType {
    std::size_t pair;
    Edge edge;
};

std::vector<EdgeType> edge_types(const EnumerationSpec &spec, std::size_t &pairs, std::size_t &per_pair)
{
    std::vector<EdgeType> types;
    pairs = 0;
    per_pair = 0;
    for (Vertex u = 0; u < spec.n_max; ++u) {
        for (Vertex v = u + 1; v < spec.n_max; ++v) {
            std::size_t here = 0;
            for (Weight a = 0; a <= spec.weight_max; ++a) {
                for (Weight b = 0; b <= spec.weight_max; ++b) {
                    if (spec.symmetric && a != b)
                        continue;
                    if (!spec.allow_zero_zero && a == 0 && b == 0)
                        continue;
                    types.push_back({pairs, Edge{u, v, a, b}});
                    ++here;
                }
            }
            per_pair = here;
            ++pairs;
        }
    }
    return types;
}

// Saturating arithmetic keeps the count meaningful only up to 2^64 - 1.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    return __builtin_mul_overflow(a, b, &out) ? std::numeric_limits<std::uint64_t>::max() : out;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    return __builtin_add_overflow(a, b, &out) ? std::numeric_limits<std::uint64_t>::max() : out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const unsigned __int128 next = static_cast<unsigned __int128>(r) * (n - k + i) / i;
        if (next > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
        r = static_cast<std::uint64_t>(next);
    }
    return r;
}

}  // namespace

std::uint64_t count_small_instances(const EnumerationSpec &spec)
{
    std::size_t pairs = 0, per_pair = 0;
    const auto types = edge_types(spec, pairs, per_pair);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j <= spec.m_max; ++j) {
        if (spec.simple) {
            std::uint64_t ways = binomial(pairs, j);
            for (std::size_t q = 0; q < j; ++q)
                ways = sat_mul(ways, per_pair);
            total = sat_add(total, ways);
        } else if (types.empty()) {
            total = sat_add(total, j == 0 ? 1 : 0);
        } else {
            total = sat_add(total, binomial(types.size() + j - 1, j));
        }
    }
    return total;
}

std::uint64_t for_each_small_instance(const EnumerationSpec &spec,
                                      const std::function<void(const Instance &)> &visit)
{
    const std::uint64_t expected = count_small_instances(spec);
    if (expected > spec.cap)
        throw RefusalError("enumeration of " + std::to_string(expected) + " instances exceeds the cap of " +
                           std::to_string(spec.cap));
    std::size_t pairs = 0, per_pair = 0;
    const auto types = edge_types(spec, pairs, per_pair);
    std::vector<Edge> edges;
    std::uint64_t produced = 0;

    // Nondecreasing type sequences (multigraphs) or sequences with strictly
    // increasing pair index (simple graphs).
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t from, std::size_t left) {
        if (left == 0) {
            visit(Instance(spec.n_max, edges));
            ++produced;
            return;
        }
        for (std::size_t t = from; t < types.size(); ++t) {
            edges.push_back(types[t].edge);
            std::size_t next = t;
            if (spec.simple) {
                next = t + 1;
                while (next < types.size() && types[next].pair == types[t].pair)
                    ++next;
            }
            grow(next, left - 1);
            edges.pop_back();
        }
    };
    for (std::size_t j = 0; j <= spec.m_max; ++j)
        grow(0, j);
    return produced;
}

std::vector<Instance> enumerate_small_instances(const EnumerationSpec &spec)
{
    std::vector<Instance> out;
    for_each_small_instance(spec, [&](const Instance &inst) { out.push_back(inst); });
    return out;
}

}  // namespace fairorient::oracle
