#include "fairorient/dp.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <tuple>
#include <unordered_map>

namespace fairorient::dp {

namespace {

constexpr Weight kFieldLimit = 0xFFF0;

std::uint16_t field(Weight w)
{
    if (w > kFieldLimit)
        throw RefusalError("value " + std::to_string(w) + " exceeds the 16-bit state range");
    return static_cast<std::uint16_t>(w);
}

BundleTable build_table(const Instance &inst, Vertex i, Vertex j, std::vector<EdgeId> edges, Fairness fairness)
{
    using Key = std::tuple<std::uint16_t, std::uint16_t, std::uint16_t, std::uint16_t, std::uint16_t, std::uint16_t>;
    const bool efx = fairness == Fairness::EFX;
    std::map<Key, BundleEntry> cur;
    cur.emplace(Key{0, 0, 0, 0, kNone, kNone}, BundleEntry{});
    for (std::size_t q = 0; q < edges.size(); ++q) {
        const Edge &ed = inst.edge(edges[q]);
        const Weight vi = ed.value_to(i), vj = ed.value_to(j);
        const Assignment toward_i = ed.u == i ? Assignment::ToU : Assignment::ToV;
        const Assignment toward_j = ed.u == j ? Assignment::ToU : Assignment::ToV;
        std::map<Key, BundleEntry> next;
        auto offer = [&](BundleEntry e, Assignment a) {
            e.witness.push_back(a);
            const Key key{e.a1, e.a2, e.b1, e.b2, e.m1, e.m2};
            auto [it, fresh] = next.emplace(key, e);
            if (!fresh && e.charity < it->second.charity)
                it->second = std::move(e);
        };
        for (const auto &[key, entry] : cur) {
            BundleEntry to_i = entry;
            to_i.a1 = field(to_i.a1 + vi);
            to_i.b2 = field(to_i.b2 + vj);
            if (efx)
                to_i.m2 = std::min<std::uint16_t>(to_i.m2, field(vj));
            offer(std::move(to_i), toward_i);

            BundleEntry to_j = entry;
            to_j.a2 = field(to_j.a2 + vi);
            to_j.b1 = field(to_j.b1 + vj);
            if (efx)
                to_j.m1 = std::min<std::uint16_t>(to_j.m1, field(vi));
            offer(std::move(to_j), toward_j);

            BundleEntry gone = entry;
            ++gone.charity;
            offer(std::move(gone), Assignment::Charity);
        }
        cur = std::move(next);
    }
    BundleTable table{i, j, std::move(edges), {}};
    for (auto &[key, entry] : cur)
        table.entries.push_back(std::move(entry));
    return table;
}

struct Back {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

// Keys of fixed stride in a flat pool, open addressing over pool indices,
// cheapest charity per key.
class StateSet {
public:
    explicit StateSet(std::size_t stride = 0) : stride_(stride), slots_(16, kEmpty) {}

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(charity_.size()); }
    const std::uint16_t *key(std::uint32_t s) const { return fields_.data() + std::size_t{s} * stride_; }
    std::uint32_t charity(std::uint32_t s) const { return charity_[s]; }
    const Back &back(std::uint32_t s) const { return back_[s]; }

    void offer(const std::uint16_t *key, std::uint32_t charity, Back back)
    {
        if ((charity_.size() + 1) * 2 > slots_.size())
            grow();
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t h = hash(key) & mask;; h = (h + 1) & mask) {
            const std::uint32_t s = slots_[h];
            if (s == kEmpty) {
                slots_[h] = size();
                fields_.insert(fields_.end(), key, key + stride_);
                charity_.push_back(charity);
                back_.push_back(back);
                return;
            }
            if (std::memcmp(this->key(s), key, stride_ * sizeof(std::uint16_t)) == 0) {
                if (charity < charity_[s]) {
                    charity_[s] = charity;
                    back_[s] = back;
                }
                return;
            }
        }
    }

    /// Keeps only the back pointers.
    void release()
    {
        std::vector<std::uint16_t>().swap(fields_);
        std::vector<std::uint32_t>().swap(slots_);
        std::vector<std::uint32_t>().swap(charity_);
        live_ = false;
    }
    bool live() const noexcept { return live_; }
    std::size_t held() const noexcept { return back_.size(); }

private:
    static constexpr std::uint32_t kEmpty = static_cast<std::uint32_t>(-1);

    std::uint64_t hash(const std::uint16_t *key) const
    {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::size_t q = 0; q < stride_; ++q) {
            h ^= key[q];
            h *= 0xBF58476D1CE4E5B9ull;
            h ^= h >> 31;
        }
        return h;
    }

    void grow()
    {
        std::vector<std::uint32_t> old(slots_.size() * 2, kEmpty);
        old.swap(slots_);
        const std::size_t mask = slots_.size() - 1;
        for (std::uint32_t s = 0; s < size(); ++s) {
            std::size_t h = hash(key(s)) & mask;
            while (slots_[h] != kEmpty)
                h = (h + 1) & mask;
            slots_[h] = s;
        }
    }

    std::size_t stride_;
    std::vector<std::uint16_t> fields_;
    std::vector<std::uint32_t> charity_;
    std::vector<Back> back_;
    std::vector<std::uint32_t> slots_;
    bool live_ = true;
};

// Slot: revenue, demand.
struct EfRules {
    static constexpr std::size_t kWidth = 2;
    std::uint16_t cap;

    std::uint16_t clamp(std::uint32_t x) const { return static_cast<std::uint16_t>(std::min<std::uint32_t>(x, cap)); }

    void introduce(std::uint16_t *s) const { s[0] = s[1] = 0; }

    template <typename Emit>
    void bundle(const std::uint16_t *si, const std::uint16_t *sj, const BundleEntry &e, Emit &&emit) const
    {
        const std::uint16_t ni[2] = {clamp(si[0] + e.a1), std::max(si[1], e.a2)};
        const std::uint16_t nj[2] = {clamp(sj[0] + e.b1), std::max(sj[1], e.b2)};
        emit(ni, nj);
    }

    bool finish(const std::uint16_t *si) const { return si[0] >= si[1]; }

    void join(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) const
    {
        out[0] = clamp(a[0] + b[0]);
        out[1] = std::max(a[1], b[1]);
    }

    bool dominates(const std::uint16_t *a, const std::uint16_t *b) const { return a[0] >= b[0] && a[1] <= b[1]; }
};

// Slot: revenue, demand, flags. Bag vertex flags: bit 0 holds a good, bit 1
// forgotten vertices are safe if no more goods arrive, bit 2 safe if more do.
// While a vertex is being forgotten its flags also carry, in bits 3-4, how
// many bundles gave it goods in this step (capped at 2) and, in bit 5, that
// some neighbor's demand assumed exactly one such bundle.
struct EfxRules {
    static constexpr std::size_t kWidth = 3;
    std::uint16_t cap;

    std::uint16_t clamp(std::uint32_t x) const { return static_cast<std::uint16_t>(std::min<std::uint32_t>(x, cap)); }

    void introduce(std::uint16_t *s) const
    {
        s[0] = s[1] = 0;
        s[2] = 0b110;
    }

    template <typename Emit>
    void bundle(const std::uint16_t *si, const std::uint16_t *sj, const BundleEntry &e, Emit &&emit) const
    {
        const bool fi = e.to_i(), fj = e.to_j();
        const unsigned held_i = si[2] & 1u;
        const unsigned count = std::min(2u, ((si[2] >> 3) & 3u) + (fi ? 1u : 0u));
        const unsigned excl = (si[2] >> 5) & 1u;
        if (excl && count >= 2)
            return;
        const std::uint16_t revenue = clamp(si[0] + e.a1);

        const unsigned held_j = sj[2] & 1u, closed_j = (sj[2] >> 1) & 1u, open_j = (sj[2] >> 2) & 1u;
        const std::uint16_t t_open = e.a2;
        const std::uint16_t t_closed = held_j ? e.a2 : (fj ? static_cast<std::uint16_t>(e.a2 - e.m1) : 0);
        const unsigned base_c = fj ? open_j : closed_j;
        const unsigned base_x = open_j;

        struct Claim {
            unsigned cx, cc;
            std::uint16_t demand;
        };
        Claim claims[4];
        std::size_t nclaims = 0;
        for (unsigned cx = 0; cx <= base_x; ++cx) {
            for (unsigned cc = 0; cc <= base_c; ++cc) {
                const std::uint16_t d = std::max<std::uint16_t>(cx ? t_open : 0, cc ? t_closed : 0);
                claims[nclaims++] = {cx, cc, d};
            }
        }
        const std::uint16_t r_j = clamp(sj[0] + e.b1);
        const std::uint16_t flags_j_base = static_cast<std::uint16_t>(held_j | (fj ? 1u : 0u));

        auto dominated = [&](std::size_t q) {
            for (std::size_t p = 0; p < nclaims; ++p)
                if (p != q && claims[p].cx >= claims[q].cx && claims[p].cc >= claims[q].cc &&
                    claims[p].demand <= claims[q].demand &&
                    (claims[p].cx != claims[q].cx || claims[p].cc != claims[q].cc))
                    return true;
            return false;
        };

        for (unsigned exclusive = 0; exclusive <= 1; ++exclusive) {
            std::uint16_t threshold = e.b2;
            if (exclusive) {
                if (held_i || !fi || e.m2 == 0 || count >= 2)
                    continue;
                threshold = static_cast<std::uint16_t>(e.b2 - e.m2);
            }
            for (std::size_t q = 0; q < nclaims; ++q) {
                if (dominated(q))
                    continue;
                const std::uint16_t ni[3] = {
                    revenue, std::max(si[1], claims[q].demand),
                    static_cast<std::uint16_t>((si[2] & 7u) | (count << 3) | ((excl | exclusive) << 5))};
                const std::uint16_t nj[3] = {
                    r_j, std::max(sj[1], threshold),
                    static_cast<std::uint16_t>(flags_j_base | ((base_c & claims[q].cc) << 1) |
                                               ((base_x & claims[q].cx) << 2))};
                emit(ni, nj);
            }
        }
    }

    bool finish(const std::uint16_t *si) const
    {
        const unsigned count = (si[2] >> 3) & 3u;
        const unsigned excl = (si[2] >> 5) & 1u;
        const unsigned safe = count >= 1 ? (si[2] >> 2) & 1u : (si[2] >> 1) & 1u;
        return si[0] >= si[1] && safe && !(excl && count != 1);
    }

    void join(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) const
    {
        out[0] = clamp(a[0] + b[0]);
        out[1] = std::max(a[1], b[1]);
        const unsigned b1 = a[2] & 1u, c1 = (a[2] >> 1) & 1u, x1 = (a[2] >> 2) & 1u;
        const unsigned b2 = b[2] & 1u, c2 = (b[2] >> 1) & 1u, x2 = (b[2] >> 2) & 1u;
        const unsigned c = (b2 ? x1 : c1) & (b1 ? x2 : c2);
        out[2] = static_cast<std::uint16_t>((b1 | b2) | (c << 1) | ((x1 & x2) << 2));
    }

    bool dominates(const std::uint16_t *a, const std::uint16_t *b) const
    {
        return a[0] >= b[0] && a[1] <= b[1] && (a[2] & 1u) == (b[2] & 1u) && (b[2] & ~a[2] & 6u) == 0;
    }
};

enum class Kind : std::uint8_t { Start, Introduce, Bundle, Filter, Join };

struct Layer {
    Kind kind;
    std::uint32_t table = 0;
    StateSet set;
};

template <typename Rules>
class Runner {
public:
    Runner(const Instance &inst, const decomp::NiceDecomposition &nd, Fairness fairness, const Options &opt)
        : inst_(inst), nd_(nd), fairness_(fairness), opt_(opt)
    {
        const Weight w = inst.max_shared_weight();
        if (w > kFieldLimit)
            throw RefusalError("maximum shared weight " + std::to_string(w) + " is too large for the DP");
        rules_.cap = static_cast<std::uint16_t>(w);
        for (EdgeId e = 0; e < inst.edge_count(); ++e)
            shared_[pair_key(inst.edge(e).u, inst.edge(e).v)].push_back(e);
    }

    SolveReport run()
    {
        layers_.resize(nd_.nodes.size());
        for (std::uint32_t t = 0; t < nd_.nodes.size(); ++t)
            build(t);
        const StateSet &top = layers_.back().back().set;
        SolveReport report;
        report.fairness = fairness_;
        report.stats["max_shared_weight"] = rules_.cap;
        report.stats["states_max"] = states_max_;
        report.stats["states_total"] = states_total_;
        report.stats["join_pairs"] = join_pairs_;
        report.stats["bundle_tables"] = tables_.size();
        if (top.size() == 0)
            throw InternalError("dp: no state survives at the root");
        std::uint32_t best = 0;
        for (std::uint32_t s = 1; s < top.size(); ++s)
            if (top.charity(s) < top.charity(best))
                best = s;
        report.min_charity = top.charity(best);
        report.decision = *report.min_charity == 0;
        report.certificate = reconstruct(best);
        return report;
    }

    std::uint64_t states_max() const noexcept { return states_max_; }

private:
    static std::uint64_t pair_key(Vertex a, Vertex b)
    {
        if (a > b)
            std::swap(a, b);
        return (std::uint64_t{a} << 32) | b;
    }

    StateSet &final_of(std::uint32_t node) { return layers_[node].back().set; }

    void account(const StateSet &set)
    {
        states_max_ = std::max<std::uint64_t>(states_max_, set.size());
        states_total_ += set.size();
        if (set.size() > opt_.max_states)
            throw RefusalError("dp: state count exceeds " + std::to_string(opt_.max_states));
    }

    void push(std::uint32_t node, Kind kind, StateSet set, std::uint32_t table = 0)
    {
        account(set);
        auto &ls = layers_[node];
        if (!ls.empty())
            ls.back().set.release();
        ls.push_back(Layer{kind, table, std::move(set)});
    }

    void build(std::uint32_t t)
    {
        constexpr std::size_t w = Rules::kWidth;
        const decomp::NiceNode &node = nd_.nodes[t];
        const std::size_t size = node.bag.size();
        std::vector<std::uint16_t> buf;
        switch (node.type) {
        case decomp::NodeType::Leaf: {
            StateSet set(0);
            const std::uint16_t none = 0;
            set.offer(&none, 0, {});
            push(t, Kind::Start, std::move(set));
            break;
        }
        case decomp::NodeType::Introduce: {
            StateSet &child = final_of(node.children[0]);
            const std::size_t p = std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin();
            StateSet set(size * w);
            buf.resize(size * w);
            for (std::uint32_t s = 0; s < child.size(); ++s) {
                const std::uint16_t *k = child.key(s);
                std::copy(k, k + p * w, buf.begin());
                rules_.introduce(buf.data() + p * w);
                std::copy(k + p * w, k + (size - 1) * w, buf.begin() + (p + 1) * w);
                set.offer(buf.data(), child.charity(s), {s, 0});
            }
            child.release();
            push(t, Kind::Introduce, std::move(set));
            break;
        }
        case decomp::NodeType::Forget:
            forget(t);
            break;
        case decomp::NodeType::Join: {
            StateSet &a = final_of(node.children[0]);
            StateSet &b = final_of(node.children[1]);
            StateSet set(size * w);
            buf.resize(size * w);
            for (std::uint32_t x = 0; x < a.size(); ++x) {
                for (std::uint32_t y = 0; y < b.size(); ++y) {
                    for (std::size_t q = 0; q < size; ++q)
                        rules_.join(a.key(x) + q * w, b.key(y) + q * w, buf.data() + q * w);
                    set.offer(buf.data(), a.charity(x) + b.charity(y), {x, y});
                }
                if (set.size() > opt_.max_states)
                    throw RefusalError("dp: state count exceeds " + std::to_string(opt_.max_states));
            }
            join_pairs_ += std::uint64_t{a.size()} * b.size();
            a.release();
            b.release();
            push(t, Kind::Join, std::move(set));
            break;
        }
        }
        if (opt_.dominance)
            prune(t);
    }

    void forget(std::uint32_t t)
    {
        constexpr std::size_t w = Rules::kWidth;
        const decomp::NiceNode &node = nd_.nodes[t];
        const decomp::NiceNode &below = nd_.nodes[node.children[0]];
        const std::vector<Vertex> &wide = below.bag;
        const Vertex i = node.vertex;
        const std::size_t pi = std::lower_bound(wide.begin(), wide.end(), i) - wide.begin();
        const std::size_t stride = wide.size() * w;
        std::vector<std::uint16_t> buf(stride);

        // The first layer of the node reads the child's final layer.
        StateSet *cur = &final_of(node.children[0]);
        bool first = true;
        for (std::size_t pj = 0; pj < wide.size(); ++pj) {
            const Vertex j = wide[pj];
            auto it = shared_.find(pair_key(i, j));
            if (j == i || it == shared_.end())
                continue;
            tables_.push_back(build_table(inst_, i, j, it->second, fairness_));
            const BundleTable &table = tables_.back();
            StateSet next(stride);
            for (std::uint32_t s = 0; s < cur->size(); ++s) {
                const std::uint16_t *k = cur->key(s);
                for (std::uint32_t q = 0; q < table.entries.size(); ++q) {
                    const BundleEntry &entry = table.entries[q];
                    rules_.bundle(k + pi * w, k + pj * w, entry, [&](const std::uint16_t *ni, const std::uint16_t *nj) {
                        std::copy(k, k + stride, buf.begin());
                        std::copy(ni, ni + w, buf.begin() + pi * w);
                        std::copy(nj, nj + w, buf.begin() + pj * w);
                        next.offer(buf.data(), cur->charity(s) + entry.charity, {s, q});
                    });
                }
                if (next.size() > opt_.max_states)
                    throw RefusalError("dp: state count exceeds " + std::to_string(opt_.max_states));
            }
            if (first)
                cur->release();
            push(t, Kind::Bundle, std::move(next), static_cast<std::uint32_t>(tables_.size() - 1));
            cur = &final_of(t);
            first = false;
        }

        StateSet out(node.bag.size() * w);
        buf.resize(node.bag.size() * w);
        for (std::uint32_t s = 0; s < cur->size(); ++s) {
            const std::uint16_t *k = cur->key(s);
            if (!rules_.finish(k + pi * w))
                continue;
            std::copy(k, k + pi * w, buf.begin());
            std::copy(k + (pi + 1) * w, k + stride, buf.begin() + pi * w);
            out.offer(buf.data(), cur->charity(s), {s, 0});
        }
        if (first)
            cur->release();
        push(t, Kind::Filter, std::move(out));
    }

    void prune(std::uint32_t t)
    {
        constexpr std::size_t w = Rules::kWidth;
        Layer &layer = layers_[t].back();
        StateSet &set = layer.set;
        const std::size_t size = nd_.nodes[t].bag.size();
        auto covers = [&](std::uint32_t a, std::uint32_t b) {
            if (set.charity(a) > set.charity(b))
                return false;
            for (std::size_t q = 0; q < size; ++q)
                if (!rules_.dominates(set.key(a) + q * w, set.key(b) + q * w))
                    return false;
            return true;
        };
        StateSet kept(size * w);
        for (std::uint32_t s = 0; s < set.size(); ++s) {
            bool dominated = false;
            for (std::uint32_t o = 0; o < set.size() && !dominated; ++o)
                dominated = o != s && covers(o, s);
            if (!dominated)
                kept.offer(set.key(s), set.charity(s), set.back(s));
        }
        layer.set = std::move(kept);
    }

    PartialOrientation reconstruct(std::uint32_t best)
    {
        PartialOrientation cert(inst_.edge_count(), Assignment::Charity);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{static_cast<std::uint32_t>(nd_.nodes.size() - 1), best}};
        while (!stack.empty()) {
            auto [t, s] = stack.back();
            stack.pop_back();
            const auto &ls = layers_[t];
            for (std::size_t l = ls.size(); l-- > 0;) {
                const Back back = ls[l].set.back(s);
                switch (ls[l].kind) {
                case Kind::Start:
                    break;
                case Kind::Join:
                    stack.emplace_back(nd_.nodes[t].children[0], back.a);
                    stack.emplace_back(nd_.nodes[t].children[1], back.b);
                    break;
                case Kind::Bundle: {
                    const BundleTable &table = tables_[ls[l].table];
                    const BundleEntry &entry = table.entries[back.b];
                    for (std::size_t q = 0; q < table.edges.size(); ++q)
                        cert.set(table.edges[q], entry.witness[q]);
                    s = back.a;
                    break;
                }
                default:
                    s = back.a;
                    break;
                }
            }
            const decomp::NiceNode &node = nd_.nodes[t];
            if (node.type == decomp::NodeType::Introduce || node.type == decomp::NodeType::Forget)
                stack.emplace_back(node.children[0], s);
        }
        return cert;
    }

    const Instance &inst_;
    const decomp::NiceDecomposition &nd_;
    Fairness fairness_;
    Options opt_;
    Rules rules_{};
    std::unordered_map<std::uint64_t, std::vector<EdgeId>> shared_;
    std::vector<BundleTable> tables_;
    std::vector<std::vector<Layer>> layers_;
    std::uint64_t states_max_ = 0, states_total_ = 0, join_pairs_ = 0;
};

void check_decomposition(const Instance &inst, const decomp::NiceDecomposition &nd)
{
    if (const auto v = decomp::validate_nice(inst, nd); !v.ok)
        throw InputError("invalid nice decomposition: " + v.detail);
}

}  // namespace

BundleTable build_bundle_table(const Instance &inst, Vertex i, Vertex j, Fairness fairness)
{
    inst.check_vertex(i);
    inst.check_vertex(j);
    if (i == j)
        throw InputError("bundle table needs two distinct vertices");
    std::vector<EdgeId> edges;
    for (EdgeId e : inst.incident(i))
        if (inst.edge(e).other(i) == j)
            edges.push_back(e);
    return build_table(inst, i, j, std::move(edges), fairness);
}

SolveReport solve_ef_mc(const Instance &inst, const decomp::NiceDecomposition &nd, const Options &opt)
{
    check_decomposition(inst, nd);
    std::vector<EdgeId> kept;
    const Instance reduced = drop_zero_zero(inst, kept);
    Runner<EfRules> runner(reduced, nd, Fairness::EF, opt);
    SolveReport report = runner.run();
    report.algorithm = "dp";
    PartialOrientation full(inst.edge_count(), Assignment::ToU);
    for (std::size_t e = 0; e < kept.size(); ++e)
        full.set(kept[e], report.certificate->at(static_cast<EdgeId>(e)));
    report.certificate = std::move(full);
    return report;
}

SolveReport solve_efx_mc(const Instance &inst, const decomp::NiceDecomposition &nd, const Options &opt)
{
    check_decomposition(inst, nd);
    Runner<EfxRules> runner(inst, nd, Fairness::EFX, opt);
    SolveReport report = runner.run();
    report.algorithm = "dp";
    return report;
}

}  // namespace fairorient::dp
