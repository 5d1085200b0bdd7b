#include "fairorient/decomp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace fairorient::decomp {

int TreeDecomposition::width() const
{
    int w = -1;
    for (const auto &b : bags)
        w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

int NiceDecomposition::width() const
{
    int w = -1;
    for (const auto &node : nodes)
        w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

const char *to_string(NodeType t)
{
    switch (t) {
    case NodeType::Leaf:
        return "leaf";
    case NodeType::Introduce:
        return "introduce";
    case NodeType::Forget:
        return "forget";
    default:
        return "join";
    }
}

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

Adjacency simple_adjacency(const Instance &inst)
{
    Adjacency adj(inst.vertex_count());
    for (const Edge &e : inst.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto &row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

bool contains(const std::vector<Vertex> &sorted, Vertex v)
{
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

void insert_sorted(std::vector<Vertex> &row, Vertex v)
{
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v)
        row.insert(it, v);
}

void erase_sorted(std::vector<Vertex> &row, Vertex v)
{
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it != row.end() && *it == v)
        row.erase(it);
}

std::size_t fill_in(const Adjacency &adj, Vertex v)
{
    const auto &row = adj[v];
    std::size_t missing = 0;
    for (std::size_t a = 0; a < row.size(); ++a)
        for (std::size_t b = a + 1; b < row.size(); ++b)
            missing += !contains(adj[row[a]], row[b]);
    return missing;
}

// Removes v, turning its neighborhood into a clique; returns that neighborhood.
std::vector<Vertex> eliminate(Adjacency &adj, Vertex v)
{
    std::vector<Vertex> nb = std::move(adj[v]);
    adj[v].clear();
    for (Vertex x : nb)
        erase_sorted(adj[x], v);
    for (std::size_t a = 0; a < nb.size(); ++a) {
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
            insert_sorted(adj[nb[a]], nb[b]);
            insert_sorted(adj[nb[b]], nb[a]);
        }
    }
    return nb;
}

Validation fail(int condition, std::string detail)
{
    return Validation{false, condition, std::move(detail)};
}

}  // namespace

Validation validate(const Instance &inst, const TreeDecomposition &td)
{
    const std::size_t n = inst.vertex_count();
    const std::size_t nb = td.bags.size();
    if (td.n != n)
        return fail(0, "decomposition is for " + std::to_string(td.n) + " vertices, instance has " +
                           std::to_string(n));
    if (nb == 0)
        return n == 0 ? Validation{} : fail(1, "no bags");
    if (td.tree_edges.size() != nb - 1)
        return fail(0, "tree over " + std::to_string(nb) + " bags needs " + std::to_string(nb - 1) + " edges");

    std::vector<std::vector<Vertex>> sorted(nb);
    for (std::size_t t = 0; t < nb; ++t) {
        sorted[t] = td.bags[t];
        std::sort(sorted[t].begin(), sorted[t].end());
        if (std::adjacent_find(sorted[t].begin(), sorted[t].end()) != sorted[t].end())
            return fail(0, "bag " + std::to_string(t) + " repeats a vertex");
        if (!sorted[t].empty() && sorted[t].back() >= n)
            return fail(0, "bag " + std::to_string(t) + " holds an out-of-range vertex");
    }

    // Connectedness of the tree via union-find.
    std::vector<std::uint32_t> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : td.tree_edges) {
        if (a >= nb || b >= nb || a == b)
            return fail(0, "bad tree edge");
        const auto ra = find(a), rb = find(b);
        if (ra == rb)
            return fail(0, "tree edges contain a cycle");
        parent[ra] = rb;
    }

    std::vector<std::vector<std::uint32_t>> where(n);
    for (std::uint32_t t = 0; t < nb; ++t)
        for (Vertex v : sorted[t])
            where[v].push_back(t);
    for (Vertex v = 0; v < n; ++v)
        if (where[v].empty())
            return fail(1, "vertex " + std::to_string(v) + " is in no bag");

    for (EdgeId e = 0; e < inst.edge_count(); ++e) {
        const Edge &ed = inst.edge(e);
        const Vertex small = where[ed.u].size() <= where[ed.v].size() ? ed.u : ed.v;
        const Vertex other = ed.other(small);
        const bool covered = std::any_of(where[small].begin(), where[small].end(),
                                         [&](std::uint32_t t) { return contains(sorted[t], other); });
        if (!covered)
            return fail(2, "edge " + std::to_string(e) + " has no bag holding both endpoints");
    }

    // In a tree, the bags holding v are connected iff they span |bags| - 1 tree edges.
    std::vector<std::uint32_t> spanned(n, 0);
    for (auto [a, b] : td.tree_edges) {
        std::vector<Vertex> common;
        std::set_intersection(sorted[a].begin(), sorted[a].end(), sorted[b].begin(), sorted[b].end(),
                              std::back_inserter(common));
        for (Vertex v : common)
            ++spanned[v];
    }
    for (Vertex v = 0; v < n; ++v)
        if (spanned[v] + 1 != where[v].size())
            return fail(3, "bags holding vertex " + std::to_string(v) + " are not connected");
    return {};
}

TreeDecomposition from_elimination_order(const Instance &inst, const std::vector<Vertex> &order)
{
    const std::size_t n = inst.vertex_count();
    if (order.size() != n)
        throw InputError("elimination order must list every vertex once");
    std::vector<std::uint32_t> pos(n, static_cast<std::uint32_t>(-1));
    for (std::uint32_t p = 0; p < n; ++p) {
        if (order[p] >= n || pos[order[p]] != static_cast<std::uint32_t>(-1))
            throw InputError("elimination order must list every vertex once");
        pos[order[p]] = p;
    }
    Adjacency adj = simple_adjacency(inst);
    TreeDecomposition td;
    td.n = n;
    td.bags.resize(n);
    for (std::uint32_t p = 0; p < n; ++p) {
        const Vertex v = order[p];
        std::vector<Vertex> later = eliminate(adj, v);
        td.bags[p] = later;
        insert_sorted(td.bags[p], v);
        if (!later.empty()) {
            std::uint32_t up = static_cast<std::uint32_t>(n);
            for (Vertex w : later)
                up = std::min(up, pos[w]);
            td.tree_edges.emplace_back(p, up);
        } else if (p + 1 < n) {
            td.tree_edges.emplace_back(p, p + 1);
        }
    }
    return td;
}

std::vector<Vertex> min_fill_order(const Instance &inst)
{
    const std::size_t n = inst.vertex_count();
    Adjacency adj = simple_adjacency(inst);
    std::vector<std::size_t> fill(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        fill[v] = fill_in(adj, v);
        queue.emplace(fill[v], v);
    }
    std::vector<std::uint8_t> gone(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);
    std::vector<Vertex> affected;
    while (!queue.empty()) {
        const Vertex v = queue.begin()->second;
        queue.erase(queue.begin());
        gone[v] = 1;
        order.push_back(v);
        const std::vector<Vertex> nb = eliminate(adj, v);
        affected.clear();
        for (Vertex x : nb) {
            affected.push_back(x);
            for (Vertex y : adj[x])
                affected.push_back(y);
        }
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        for (Vertex x : affected) {
            if (gone[x])
                continue;
            queue.erase({fill[x], x});
            fill[x] = fill_in(adj, x);
            queue.emplace(fill[x], x);
        }
    }
    return order;
}

TreeDecomposition heuristic_decomposition(const Instance &inst)
{
    return from_elimination_order(inst, min_fill_order(inst));
}

std::vector<Vertex> exact_elimination_order(const Instance &inst, std::size_t max_n)
{
    const std::size_t n = inst.vertex_count();
    if (n > max_n || n > 24)
        throw RefusalError("exact treewidth is limited to " + std::to_string(std::min<std::size_t>(max_n, 24)) +
                           " vertices");
    const Adjacency adj = simple_adjacency(inst);
    std::vector<std::uint32_t> nbr(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : adj[v])
            nbr[v] |= 1u << w;

    // Neighbors of v outside S + v reachable through S, when S is eliminated first.
    auto q_size = [&](std::uint32_t s, Vertex v) {
        std::uint32_t seen = 1u << v, frontier = 1u << v, outside = 0;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1)
                next |= nbr[std::countr_zero(f)];
            next &= ~seen;
            seen |= next;
            outside |= next & ~s;
            frontier = next & s;
        }
        return std::popcount(outside);
    };

    const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    std::vector<int> tw(std::size_t{1} << n, 0);
    std::vector<std::uint8_t> last(std::size_t{1} << n, 0);
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
        int best = static_cast<int>(n) + 1;
        for (std::uint32_t f = s; f; f &= f - 1) {
            const Vertex v = static_cast<Vertex>(std::countr_zero(f));
            const std::uint32_t rest = s & ~(1u << v);
            const int here = std::max(tw[rest], q_size(rest, v));
            if (here < best) {
                best = here;
                last[s] = static_cast<std::uint8_t>(v);
            }
        }
        tw[s] = best;
    }
    std::vector<Vertex> order(n);
    std::uint32_t s = full;
    for (std::size_t p = n; p-- > 0;) {
        order[p] = last[s];
        s &= ~(1u << last[s]);
    }
    return order;
}

int exact_treewidth(const Instance &inst, std::size_t max_n)
{
    if (inst.vertex_count() == 0)
        return -1;
    return from_elimination_order(inst, exact_elimination_order(inst, max_n)).width();
}

NiceDecomposition make_nice(const Instance &inst, const TreeDecomposition &td, std::optional<std::uint32_t> root)
{
    if (const Validation v = validate(inst, td); !v.ok)
        throw InputError("invalid tree decomposition: " + v.detail);
    NiceDecomposition nd;
    nd.n = inst.vertex_count();
    auto add = [&](NodeType type, Vertex v, std::vector<Vertex> bag, std::vector<std::uint32_t> children) {
        nd.nodes.push_back(NiceNode{type, v, std::move(bag), std::move(children)});
        return static_cast<std::uint32_t>(nd.nodes.size() - 1);
    };
    // Forget then introduce vertices until the top node's bag becomes `target`.
    auto morph = [&](std::uint32_t top, const std::vector<Vertex> &target) {
        std::vector<Vertex> bag = nd.nodes[top].bag;
        std::vector<Vertex> drop, gain;
        std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(drop));
        std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            erase_sorted(bag, v);
            top = add(NodeType::Forget, v, bag, {top});
        }
        for (Vertex v : gain) {
            insert_sorted(bag, v);
            top = add(NodeType::Introduce, v, bag, {top});
        }
        return top;
    };

    if (td.bags.empty()) {
        add(NodeType::Leaf, kNoVertex, {}, {});
        return nd;
    }
    const std::size_t nb = td.bags.size();
    const std::uint32_t r = root.value_or(0);
    if (r >= nb)
        throw InputError("root bag out of range");
    std::vector<std::vector<std::uint32_t>> tree(nb);
    for (auto [a, b] : td.tree_edges) {
        tree[a].push_back(b);
        tree[b].push_back(a);
    }
    for (auto &row : tree)
        std::sort(row.begin(), row.end());
    std::vector<std::vector<Vertex>> bags(nb);
    for (std::size_t t = 0; t < nb; ++t) {
        bags[t] = td.bags[t];
        std::sort(bags[t].begin(), bags[t].end());
    }

    // Iterative post-order over the rooted bag tree.
    std::vector<std::uint32_t> parent(nb, static_cast<std::uint32_t>(-1)), order;
    std::vector<std::uint32_t> stack{r};
    parent[r] = r;
    while (!stack.empty()) {
        const std::uint32_t t = stack.back();
        stack.pop_back();
        order.push_back(t);
        for (std::uint32_t c : tree[t]) {
            if (parent[c] == static_cast<std::uint32_t>(-1)) {
                parent[c] = t;
                stack.push_back(c);
            }
        }
    }
    std::vector<std::uint32_t> top(nb);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::uint32_t t = *it;
        std::vector<std::uint32_t> branches;
        for (std::uint32_t c : tree[t])
            if (c != t && parent[c] == t)
                branches.push_back(morph(top[c], bags[t]));
        if (branches.empty()) {
            top[t] = morph(add(NodeType::Leaf, kNoVertex, {}, {}), bags[t]);
            continue;
        }
        std::uint32_t acc = branches.front();
        for (std::size_t q = 1; q < branches.size(); ++q)
            acc = add(NodeType::Join, kNoVertex, bags[t], {acc, branches[q]});
        top[t] = acc;
    }
    morph(top[r], {});
    if (!nd.nodes.back().bag.empty())
        throw InternalError("make_nice: root bag not empty");
    return nd;
}

Validation validate_nice(const Instance &inst, const NiceDecomposition &nd)
{
    const std::size_t n = inst.vertex_count();
    if (nd.n != n)
        return fail(0, "vertex count mismatch");
    if (nd.nodes.empty())
        return fail(0, "no nodes");
    std::vector<std::uint32_t> uses(nd.nodes.size(), 0);
    std::vector<std::uint32_t> forget_at(n, static_cast<std::uint32_t>(-1));
    for (std::uint32_t t = 0; t < nd.nodes.size(); ++t) {
        const NiceNode &node = nd.nodes[t];
        const std::string at = "node " + std::to_string(t) + " (" + to_string(node.type) + ")";
        if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
            std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end() ||
            (!node.bag.empty() && node.bag.back() >= n))
            return fail(0, at + ": malformed bag");
        for (std::uint32_t c : node.children) {
            if (c >= t)
                return fail(0, at + ": child does not precede parent");
            ++uses[c];
        }
        const std::size_t want = node.type == NodeType::Leaf ? 0 : node.type == NodeType::Join ? 2 : 1;
        if (node.children.size() != want)
            return fail(0, at + ": wrong number of children");
        switch (node.type) {
        case NodeType::Leaf:
            if (!node.bag.empty())
                return fail(0, at + ": leaf bag not empty");
            break;
        case NodeType::Join:
            if (nd.nodes[node.children[0]].bag != node.bag || nd.nodes[node.children[1]].bag != node.bag)
                return fail(0, at + ": join children bags differ");
            break;
        case NodeType::Introduce:
        case NodeType::Forget: {
            std::vector<Vertex> big = node.type == NodeType::Introduce ? node.bag : nd.nodes[node.children[0]].bag;
            std::vector<Vertex> small = node.type == NodeType::Introduce ? nd.nodes[node.children[0]].bag : node.bag;
            if (node.vertex >= n || !contains(big, node.vertex))
                return fail(0, at + ": vertex missing from the larger bag");
            erase_sorted(big, node.vertex);
            if (big != small)
                return fail(0, at + ": bags differ by more than the vertex");
            if (node.type == NodeType::Forget) {
                if (forget_at[node.vertex] != static_cast<std::uint32_t>(-1))
                    return fail(3, "vertex " + std::to_string(node.vertex) + " forgotten twice");
                forget_at[node.vertex] = t;
            }
            break;
        }
        }
    }
    for (std::uint32_t t = 0; t + 1 < nd.nodes.size(); ++t)
        if (uses[t] != 1)
            return fail(0, "node " + std::to_string(t) + " is not a child exactly once");
    if (uses.back() != 0 || !nd.nodes.back().bag.empty())
        return fail(0, "root must be an unused node with an empty bag");
    for (Vertex v = 0; v < n; ++v)
        if (forget_at[v] == static_cast<std::uint32_t>(-1))
            return fail(1, "vertex " + std::to_string(v) + " is never forgotten");
    for (EdgeId e = 0; e < inst.edge_count(); ++e) {
        const Edge &ed = inst.edge(e);
        const Vertex first = forget_at[ed.u] < forget_at[ed.v] ? ed.u : ed.v;
        if (!contains(nd.nodes[forget_at[first]].bag, ed.other(first)))
            return fail(2, "edge " + std::to_string(e) + " is not handled at a forget node");
    }
    return {};
}

TreeDecomposition read_pace(std::istream &in)
{
    TreeDecomposition td;
    std::string line;
    std::size_t lineno = 0, declared_bags = 0, declared_size = 0;
    bool header = false;
    std::vector<std::uint8_t> seen;
    auto error = [&](const std::string &what) {
        return InputError("td line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, kind;
            if (header || !(ls >> s >> kind >> declared_bags >> declared_size >> td.n) || s != "s" || kind != "td")
                throw error("bad solution line");
            header = true;
            td.bags.resize(declared_bags);
            seen.assign(declared_bags, 0);
            continue;
        }
        if (!header)
            throw error("content before the solution line");
        if (line[0] == 'b') {
            std::string b;
            std::size_t id = 0;
            if (!(ls >> b >> id) || b != "b" || id == 0 || id > declared_bags || seen[id - 1])
                throw error("bad bag line");
            seen[id - 1] = 1;
            long long v;
            while (ls >> v) {
                if (v < 1 || static_cast<std::size_t>(v) > td.n)
                    throw error("vertex out of range");
                td.bags[id - 1].push_back(static_cast<Vertex>(v - 1));
            }
            if (!ls.eof())
                throw error("bad vertex id");
            if (td.bags[id - 1].size() > declared_size)
                throw error("bag larger than declared");
            continue;
        }
        std::size_t a = 0, b = 0;
        std::string rest;
        if (!(ls >> a >> b) || (ls >> rest) || a == 0 || b == 0 || a > declared_bags || b > declared_bags)
            throw error("bad tree edge");
        td.tree_edges.emplace_back(static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(b - 1));
    }
    if (!header)
        throw InputError("td: missing solution line");
    for (std::size_t t = 0; t < declared_bags; ++t)
        if (!seen[t])
            throw InputError("td: bag " + std::to_string(t + 1) + " missing");
    if (static_cast<int>(declared_size) != td.width() + 1)
        throw InputError("td: declared width does not match the bags");
    return td;
}

void write_pace(std::ostream &out, const TreeDecomposition &td)
{
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.n << '\n';
    for (std::size_t t = 0; t < td.bags.size(); ++t) {
        out << "b " << t + 1;
        for (Vertex v : td.bags[t])
            out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges)
        out << a + 1 << ' ' << b + 1 << '\n';
}

TreeDecomposition read_pace_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return read_pace(in);
}

}  // namespace fairorient::decomp
