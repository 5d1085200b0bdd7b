#include "fairorient/heavy_ef.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

#include <omp.h>

#include "fairorient/flow.hpp"

namespace fairorient::heavy {

Classification classify_heavy(const Instance &inst)
{
    if (!inst.is_simple())
        throw UnsupportedInstance("heavy-edge branching requires a simple graph");
    Classification cls;
    cls.base = PartialOrientation(inst.edge_count(), Assignment::Charity);
    for (EdgeId e = 0; e < inst.edge_count(); ++e) {
        const Edge &ed = inst.edge(e);
        if (ed.zero_zero()) {
            cls.dropped.push_back(e);
            cls.base.set(e, Assignment::ToU);
        } else if (ed.w_u == 0 || ed.w_v == 0) {
            cls.forced.push_back(e);
            cls.base.set(e, ed.w_u > 0 ? Assignment::ToU : Assignment::ToV);
        } else if (std::max(ed.w_u, ed.w_v) >= 2) {
            cls.heavy.push_back(e);
        } else {
            cls.residual.push_back(e);
        }
    }
    return cls;
}

namespace {

Weight deficit(Weight demand, Weight revenue)
{
    return demand > revenue ? demand - revenue : 0;
}

// Branch-independent data.
struct Prepared {
    const Instance *inst = nullptr;
    Classification cls;
    std::size_t n = 0;
    std::vector<std::pair<Vertex, Vertex>> residual_pairs;
    std::vector<std::uint32_t> udeg;
    std::vector<Weight> base_revenue;
    std::vector<std::uint32_t> res_offsets, res_adj;     // residual indices per vertex
    std::vector<std::uint32_t> heavy_offsets, heavy_adj;  // heavy indices per vertex

    explicit Prepared(const Instance &in) : inst(&in), cls(classify_heavy(in)), n(in.vertex_count())
    {
        udeg.assign(n, 0);
        base_revenue.assign(n, 0);
        for (EdgeId e : cls.residual) {
            residual_pairs.emplace_back(in.edge(e).u, in.edge(e).v);
            ++udeg[in.edge(e).u];
            ++udeg[in.edge(e).v];
        }
        for (EdgeId e : cls.forced) {
            const Vertex h = cls.base.holder(in, e);
            base_revenue[h] = checked_add(base_revenue[h], in.edge(e).value_to(h));
        }
        build_csr(res_offsets, res_adj, residual_pairs);
        std::vector<std::pair<Vertex, Vertex>> heavy_pairs;
        for (EdgeId e : cls.heavy)
            heavy_pairs.emplace_back(in.edge(e).u, in.edge(e).v);
        build_csr(heavy_offsets, heavy_adj, heavy_pairs);
    }

    void build_csr(std::vector<std::uint32_t> &off, std::vector<std::uint32_t> &adj,
                   const std::vector<std::pair<Vertex, Vertex>> &pairs) const
    {
        off.assign(n + 1, 0);
        for (auto [a, b] : pairs) {
            ++off[a + 1];
            ++off[b + 1];
        }
        for (std::size_t i = 0; i < n; ++i)
            off[i + 1] += off[i];
        adj.resize(off[n]);
        std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
        for (std::uint32_t q = 0; q < pairs.size(); ++q) {
            adj[fill[pairs[q].first]++] = q;
            adj[fill[pairs[q].second]++] = q;
        }
    }

    const Edge &heavy_edge(std::uint32_t j) const { return inst->edge(cls.heavy[j]); }
    Vertex heavy_holder(std::uint32_t j, std::uint64_t code) const
    {
        return (code >> j) & 1 ? heavy_edge(j).v : heavy_edge(j).u;
    }

    Weight demand_of(Vertex i, std::uint64_t code) const
    {
        Weight d = udeg[i] > 0 ? 1 : 0;
        for (std::uint32_t p = heavy_offsets[i]; p < heavy_offsets[i + 1]; ++p) {
            const std::uint32_t j = heavy_adj[p];
            if (heavy_holder(j, code) != i)
                d = std::max(d, heavy_edge(j).value_to(i));
        }
        return d;
    }
};

BranchState make_state(const Prepared &prep, std::uint64_t code)
{
    const Instance &inst = *prep.inst;
    BranchState st;
    st.fixed = prep.cls.base;
    st.revenue = prep.base_revenue;
    st.unoriented_degree = prep.udeg;
    st.demand.resize(prep.n);
    for (std::uint32_t j = 0; j < prep.cls.heavy.size(); ++j) {
        const Vertex h = prep.heavy_holder(j, code);
        st.fixed.give(inst, prep.cls.heavy[j], h);
        st.revenue[h] = checked_add(st.revenue[h], prep.heavy_edge(j).value_to(h));
    }
    for (Vertex i = 0; i < prep.n; ++i)
        st.demand[i] = prep.demand_of(i, code);
    return st;
}

// Residual orientation maintained across branches. Each residual edge is
// charged to its tail; a branch is feasible iff every edge can be charged
// without exceeding any cap. Augmenting paths move charges along edges.
class Engine {
public:
    explicit Engine(const Prepared &prep)
        : prep_(prep), n_(prep.n), revenue_(prep.n), demand_(prep.n), cap_(prep.n, 0), load_(prep.n, 0),
          violating_(prep.n, 0), tail_(prep.residual_pairs.size(), kNoVertex), stamp_(prep.n, 0),
          via_(prep.n), from_(prep.n)
    {
    }

    void reset(std::uint64_t code)
    {
        code_ = code;
        std::copy(prep_.base_revenue.begin(), prep_.base_revenue.end(), revenue_.begin());
        for (std::uint32_t j = 0; j < prep_.cls.heavy.size(); ++j) {
            const Vertex h = prep_.heavy_holder(j, code);
            revenue_[h] += prep_.heavy_edge(j).value_to(h);
        }
        violations_ = 0;
        std::fill(violating_.begin(), violating_.end(), 0);
        for (Vertex i = 0; i < n_; ++i) {
            demand_[i] = prep_.demand_of(i, code);
            refresh_cap(i);
        }
        std::fill(load_.begin(), load_.end(), 0);
        std::fill(tail_.begin(), tail_.end(), kNoVertex);
        pending_.clear();
        for (std::uint32_t q = prep_.residual_pairs.size(); q-- > 0;)
            pending_.push_back(q);
    }

    void flip(std::uint32_t j)
    {
        const Edge &ed = prep_.heavy_edge(j);
        const Vertex before = prep_.heavy_holder(j, code_);
        code_ ^= std::uint64_t{1} << j;
        const Vertex after = ed.other(before);
        revenue_[before] -= ed.value_to(before);
        revenue_[after] += ed.value_to(after);
        for (Vertex i : {before, after}) {
            demand_[i] = prep_.demand_of(i, code_);
            refresh_cap(i);
            release_excess(i);
        }
    }

    bool pruned() const noexcept { return violations_ > 0; }

    /// Charges every pending edge; false on the first one that cannot be.
    bool complete()
    {
        while (!pending_.empty()) {
            const std::uint32_t q = pending_.back();
            ++attempts_;
            if (!augment(q))
                return false;
            pending_.pop_back();
        }
        return true;
    }

    std::uint64_t attempts() const noexcept { return attempts_; }

private:
    void refresh_cap(Vertex i)
    {
        const Weight def = deficit(demand_[i], revenue_[i]);
        const std::uint8_t bad = def > prep_.udeg[i] ? 1 : 0;
        violations_ += bad - violating_[i];
        violating_[i] = bad;
        if (!bad)
            cap_[i] = prep_.udeg[i] - def;
    }

    void release_excess(Vertex i)
    {
        for (std::uint32_t p = prep_.res_offsets[i + 1]; p-- > prep_.res_offsets[i] && load_[i] > cap_[i];) {
            const std::uint32_t q = prep_.res_adj[p];
            if (tail_[q] != i)
                continue;
            tail_[q] = kNoVertex;
            --load_[i];
            pending_.push_back(q);
        }
    }

    bool augment(std::uint32_t q)
    {
        ++epoch_;
        queue_.clear();
        auto reach = [&](Vertex y, std::uint32_t edge, Vertex prev) {
            if (stamp_[y] == epoch_)
                return;
            stamp_[y] = epoch_;
            via_[y] = edge;
            from_[y] = prev;
            queue_.push_back(y);
        };
        reach(prep_.residual_pairs[q].first, q, kNoVertex);
        reach(prep_.residual_pairs[q].second, q, kNoVertex);
        for (std::size_t h = 0; h < queue_.size(); ++h) {
            const Vertex x = queue_[h];
            if (load_[x] < cap_[x]) {
                ++load_[x];
                for (Vertex y = x; y != kNoVertex; y = from_[y])
                    tail_[via_[y]] = y;
                return true;
            }
            for (std::uint32_t p = prep_.res_offsets[x]; p < prep_.res_offsets[x + 1]; ++p) {
                const std::uint32_t f = prep_.res_adj[p];
                if (tail_[f] != x)
                    continue;
                const auto [a, b] = prep_.residual_pairs[f];
                reach(a == x ? b : a, f, x);
            }
        }
        return false;
    }

    const Prepared &prep_;
    std::size_t n_;
    std::uint64_t code_ = 0;
    std::vector<Weight> revenue_, demand_;
    std::vector<std::uint64_t> cap_, load_;
    std::vector<std::uint8_t> violating_;
    std::int64_t violations_ = 0;
    std::vector<Vertex> tail_;
    std::vector<std::uint32_t> pending_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::vector<std::uint32_t> via_;
    std::vector<Vertex> from_;
    std::vector<Vertex> queue_;
    std::uint64_t attempts_ = 0;
};

// Certificate for a branch known to be feasible, via the deterministic flow.
PartialOrientation certify(const Prepared &prep, std::uint64_t code, std::uint64_t &augmentations)
{
    BranchState st = make_state(prep, code);
    const auto caps = st.caps();
    if (!caps)
        throw InternalError("heavy: certified branch is pruned");
    const auto flow = flow::udcgo_feasible(prep.n, prep.residual_pairs, *caps);
    augmentations += flow.augmentations;
    if (!flow.feasible)
        throw InternalError("heavy: certified branch is infeasible");
    for (std::size_t q = 0; q < prep.cls.residual.size(); ++q)
        st.fixed.give(*prep.inst, prep.cls.residual[q], flow.head[q]);
    return st.fixed;
}

std::uint64_t branch_total(const Prepared &prep, std::size_t max_heavy)
{
    const std::size_t k = prep.cls.heavy.size();
    if (k > max_heavy || k >= 63)
        throw RefusalError("heavy: " + std::to_string(k) + " heavy edges exceed the branching cap");
    return std::uint64_t{1} << k;
}

SolveReport finish(const Prepared &prep, std::uint64_t total, std::uint64_t best, SolveReport report,
                   std::uint64_t augmentations)
{
    report.fairness = Fairness::EF;
    report.decision = best < total;
    report.stats["heavy_edges"] = prep.cls.heavy.size();
    report.stats["residual_edges"] = prep.cls.residual.size();
    if (report.decision) {
        report.min_charity = 0;
        report.stats["branch_index"] = best;
        report.certificate = certify(prep, branch_code(best), augmentations);
    }
    report.stats["augmentations"] = augmentations;
    return report;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> BranchState::caps() const
{
    std::vector<std::uint64_t> out(revenue.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Weight def = deficit(demand[i], revenue[i]);
        if (def > unoriented_degree[i])
            return std::nullopt;
        out[i] = unoriented_degree[i] - def;
    }
    return out;
}

BranchState branch_state(const Instance &inst, const Classification &cls, std::uint64_t code)
{
    Prepared prep(inst);
    if (prep.cls.heavy != cls.heavy)
        throw InputError("branch_state: classification does not belong to the instance");
    return make_state(prep, code);
}

SolveReport solve_heavy(const Instance &inst, Goal goal, const Options &opt)
{
    if (goal == Goal::MinCharity)
        throw UnsupportedInstance("heavy-edge branching decides EF only; it has no charity variant");
    if (!opt.incremental)
        return solve_heavy_reference(inst);
    const Prepared prep(inst);
    const std::uint64_t total = branch_total(prep, opt.max_heavy);
    const std::uint64_t blocks = std::min<std::uint64_t>(total, opt.parallel ? 256 : 1);
    const std::uint64_t span = (total + blocks - 1) / blocks;

    std::atomic<std::uint64_t> best{total};
    std::uint64_t branches = 0, pruned = 0, attempts = 0;
    const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (opt.parallel) \
    reduction(+ : branches, pruned, attempts)
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        const std::uint64_t start = blk * span;
        const std::uint64_t end = std::min(total, start + span);
        if (start >= best.load())
            continue;
        Engine eng(prep);
        eng.reset(branch_code(start));
        for (std::uint64_t b = start; b < end && b < best.load(); ++b) {
            if (b > start)
                eng.flip(static_cast<std::uint32_t>(std::countr_zero(b)));
            ++branches;
            if (eng.pruned()) {
                ++pruned;
                continue;
            }
            if (eng.complete()) {
                std::uint64_t seen = best.load();
                while (b < seen && !best.compare_exchange_weak(seen, b)) {
                }
                break;
            }
        }
        attempts += eng.attempts();
    }

    SolveReport report;
    report.algorithm = "heavy";
    report.stats["branches"] = branches;
    report.stats["pruned"] = pruned;
    report.stats["augment_attempts"] = attempts;
    return finish(prep, total, best.load(), std::move(report), 0);
}

SolveReport solve_heavy_reference(const Instance &inst)
{
    const Prepared prep(inst);
    const std::uint64_t total = branch_total(prep, 40);
    std::uint64_t branches = 0, pruned = 0, flows = 0, augmentations = 0;
    std::uint64_t best = total;
    for (std::uint64_t b = 0; b < total; ++b) {
        ++branches;
        const BranchState st = make_state(prep, branch_code(b));
        const auto caps = st.caps();
        if (!caps) {
            ++pruned;
            continue;
        }
        ++flows;
        const auto flow = flow::udcgo_feasible(prep.n, prep.residual_pairs, *caps);
        augmentations += flow.augmentations;
        if (flow.feasible) {
            best = b;
            break;
        }
    }
    SolveReport report;
    report.algorithm = "heavy-reference";
    report.stats["branches"] = branches;
    report.stats["pruned"] = pruned;
    report.stats["flow_calls"] = flows;
    return finish(prep, total, best, std::move(report), augmentations);
}

}  // namespace fairorient::heavy
