#include "fairorient/reductions.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace fairorient::reductions {

Cnf parse_dimacs(std::istream &in)
{
    Cnf cnf;
    std::size_t declared = 0, lineno = 0;
    bool header = false, done = false;
    std::vector<int> clause;
    std::string line;
    auto error = [&](const std::string &what) {
        return InputError("dimacs line " + std::to_string(lineno) + ": " + what);
    };
    while (!done && std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c')
            continue;
        if (tok == "%") {
            done = true;
            break;
        }
        if (tok == "p") {
            std::string fmt;
            long long v = -1, c = -1;
            if (header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0)
                throw error("bad problem line");
            cnf.variables = static_cast<std::size_t>(v);
            declared = static_cast<std::size_t>(c);
            header = true;
            continue;
        }
        if (!header)
            throw error("clause before the problem line");
        do {
            char *end = nullptr;
            const long long lit = std::strtoll(tok.c_str(), &end, 10);
            if (*end != '\0')
                throw error("bad literal '" + tok + "'");
            if (lit == 0) {
                if (clause.empty())
                    throw error("empty clause");
                cnf.clauses.push_back(std::move(clause));
                clause.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::llabs(lit)) > cnf.variables)
                throw error("literal out of range");
            clause.push_back(static_cast<int>(lit));
        } while (ls >> tok);
    }
    if (!header)
        throw InputError("dimacs: missing problem line");
    if (!clause.empty())
        throw InputError("dimacs: last clause is not terminated by 0");
    if (cnf.clauses.size() != declared)
        throw InputError("dimacs: expected " + std::to_string(declared) + " clauses, found " +
                         std::to_string(cnf.clauses.size()));
    return cnf;
}

Cnf read_dimacs_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return parse_dimacs(in);
}

void write_dimacs(std::ostream &out, const Cnf &cnf)
{
    out << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
    for (const auto &clause : cnf.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
}

namespace {

void check_cnf(const Cnf &cnf)
{
    if (cnf.clauses.empty())
        throw InputError("cnf has no clauses");
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        const auto &clause = cnf.clauses[j];
        if (clause.empty())
            throw InputError("clause " + std::to_string(j + 1) + " is empty");
        std::set<int> seen;
        for (int lit : clause) {
            if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > cnf.variables)
                throw InputError("clause " + std::to_string(j + 1) + " has a literal out of range");
            if (seen.count(-lit))
                throw InputError("clause " + std::to_string(j + 1) + " contains a variable and its negation");
            seen.insert(lit);
        }
    }
}

Edge unit(Vertex a, Vertex b, Weight w = 1)
{
    return Edge{a, b, w, w};
}

}  // namespace

Instance sat_to_ef(const Cnf &cnf)
{
    check_cnf(cnf);
    const std::size_t nv = cnf.variables;
    // occurrences[x][0]: clauses with x positive, [1]: negative, clause order.
    std::vector<std::array<std::vector<std::size_t>, 2>> occ(nv + 1);
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j)
        for (int lit : cnf.clauses[j])
            occ[static_cast<std::size_t>(std::abs(lit))][lit < 0 ? 1 : 0].push_back(j);

    std::size_t next = 0;
    struct Block {
        Vertex side[2];
        Vertex first_copy[2];
        std::size_t w;
    };
    std::vector<Block> blocks(nv + 1);
    for (std::size_t x = 1; x <= nv; ++x) {
        const std::size_t w = std::max(occ[x][0].size(), occ[x][1].size());
        if (w == 0)
            continue;
        Block &b = blocks[x];
        b.w = w;
        b.side[0] = static_cast<Vertex>(next++);
        b.side[1] = static_cast<Vertex>(next++);
        b.first_copy[0] = static_cast<Vertex>(next);
        next += w;
        b.first_copy[1] = static_cast<Vertex>(next);
        next += w;
    }
    const Vertex clause0 = static_cast<Vertex>(next);
    next += cnf.clauses.size();

    std::vector<Edge> edges;
    std::vector<Vertex> leftovers;
    for (std::size_t x = 1; x <= nv; ++x) {
        const Block &b = blocks[x];
        if (b.w == 0)
            continue;
        edges.push_back(unit(b.side[0], b.side[1], b.w));
        for (int s = 0; s < 2; ++s) {
            for (std::size_t l = 0; l < b.w; ++l) {
                const Vertex copy = b.first_copy[s] + static_cast<Vertex>(l);
                edges.push_back(unit(copy, b.side[s]));
                if (l < occ[x][s].size())
                    edges.push_back(unit(copy, clause0 + static_cast<Vertex>(occ[x][s][l])));
                else
                    leftovers.push_back(copy);
            }
        }
    }
    for (Vertex u : leftovers) {
        const Vertex a = static_cast<Vertex>(next++), b = static_cast<Vertex>(next++);
        edges.push_back(unit(u, a));
        edges.push_back(unit(a, b));
        edges.push_back(unit(b, u));
    }
    return Instance(next, std::move(edges));
}

Instance sat2p2n_to_ef(const Cnf &cnf)
{
    check_cnf(cnf);
    const std::size_t nv = cnf.variables;
    std::vector<std::array<int, 2>> count(nv + 1, {0, 0});
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        const auto &clause = cnf.clauses[j];
        std::set<int> vars;
        for (int lit : clause)
            vars.insert(std::abs(lit));
        if (clause.size() != 3 || vars.size() != 3)
            throw InputError("clause " + std::to_string(j + 1) + " must have three distinct variables");
        for (int lit : clause)
            ++count[static_cast<std::size_t>(std::abs(lit))][lit < 0 ? 1 : 0];
    }
    for (std::size_t x = 1; x <= nv; ++x)
        if (count[x][0] != 2 || count[x][1] != 2)
            throw InputError("variable " + std::to_string(x) + " must occur exactly twice positively and twice negatively");

    std::vector<Edge> edges;
    for (std::size_t x = 1; x <= nv; ++x)
        edges.push_back(unit(static_cast<Vertex>(2 * (x - 1)), static_cast<Vertex>(2 * (x - 1) + 1), 2));
    const Vertex clause0 = static_cast<Vertex>(2 * nv);
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        for (int lit : cnf.clauses[j]) {
            const auto x = static_cast<Vertex>(std::abs(lit));
            edges.push_back(unit(2 * (x - 1) + (lit < 0 ? 1 : 0), clause0 + static_cast<Vertex>(j)));
        }
    }
    return Instance(2 * nv + cnf.clauses.size(), std::move(edges));
}

Instance partition_to_ef(const std::vector<Weight> &items, PartitionMode mode)
{
    Weight total = 0;
    for (Weight s : items) {
        if (s == 0)
            throw InputError("partition items must be positive");
        total = checked_add(total, s);
    }
    if (total % 2 != 0)
        throw RefusalError("partition total is odd, so no equal split exists");
    std::vector<Edge> edges;
    if (mode == PartitionMode::TwoVertex) {
        for (Weight s : items)
            edges.push_back(unit(0, 1, s));
        return Instance(2, std::move(edges));
    }
    const Weight half = total / 2;
    edges.push_back(unit(0, 2, half));
    edges.push_back(unit(1, 3, half));
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Vertex v = static_cast<Vertex>(4 + i);
        edges.push_back(unit(v, 0, items[i]));
        edges.push_back(unit(v, 1, items[i]));
    }
    return Instance(4 + items.size(), std::move(edges));
}

namespace {

void check_too_shape(const TooInstance &too)
{
    if (too.capacity.size() != too.n)
        throw InputError("too: one capacity per vertex required");
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto &[u, v, w] : too.edges) {
        if (u >= too.n || v >= too.n || u == v)
            throw InputError("too: bad edge endpoints");
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
            throw InputError("too: graph must be simple");
    }
}

}  // namespace

Instance too_to_ef(const TooInstance &too)
{
    check_too_shape(too);
    Weight value_sum = 0, cap_sum = 0;
    for (const auto &[u, v, w] : too.edges) {
        if (w > std::min(too.capacity[u], too.capacity[v]))
            throw InputError("too: edge value exceeds an endpoint capacity; normalize first");
        value_sum = checked_add(value_sum, w);
    }
    for (Weight c : too.capacity)
        cap_sum = checked_add(cap_sum, c);
    if (value_sum != cap_sum)
        throw InputError("too: total value must equal total capacity; normalize first");

    const Vertex a = static_cast<Vertex>(too.n), b = static_cast<Vertex>(too.n + 1);
    std::vector<Edge> edges;
    for (const auto &[u, v, w] : too.edges)
        edges.push_back(unit(u, v, w));
    for (Vertex u = 0; u < too.n; ++u)
        edges.push_back(unit(a, u, too.capacity[u]));
    edges.push_back(unit(a, b, cap_sum));
    return Instance(too.n + 2, std::move(edges));
}

NormalizedToo normalize_too(const TooInstance &too)
{
    check_too_shape(too);
    NormalizedToo out;
    std::vector<Weight> cap = too.capacity;
    std::vector<std::uint8_t> removed(too.edges.size(), 0);
    bool changed = true;
    while (changed && !out.trivially_no) {
        changed = false;
        for (std::size_t e = 0; e < too.edges.size(); ++e) {
            if (removed[e])
                continue;
            const auto &[u, v, w] = too.edges[e];
            const bool fits_u = w <= cap[u], fits_v = w <= cap[v];
            if (fits_u && fits_v)
                continue;
            if (!fits_u && !fits_v) {
                out.trivially_no = true;
                break;
            }
            const Vertex to = fits_u ? u : v;
            cap[to] -= w;
            removed[e] = 1;
            out.forced.emplace_back(e, to);
            changed = true;
        }
    }
    out.reduced.n = too.n;
    out.reduced.capacity = cap;
    Weight value_sum = 0, cap_sum = 0;
    for (std::size_t e = 0; e < too.edges.size(); ++e) {
        if (!removed[e]) {
            out.reduced.edges.push_back(too.edges[e]);
            value_sum = checked_add(value_sum, std::get<2>(too.edges[e]));
        }
    }
    for (Weight c : cap)
        cap_sum = checked_add(cap_sum, c);
    if (value_sum != cap_sum)
        out.trivially_no = true;
    return out;
}

Instance ef_to_efx(const Instance &inst)
{
    const std::size_t n = inst.vertex_count();
    const Vertex d1 = static_cast<Vertex>(n), d2 = static_cast<Vertex>(n + 1);
    std::vector<Edge> edges(inst.edges().begin(), inst.edges().end());
    for (Vertex v = 0; v < n; ++v) {
        edges.push_back(Edge{v, d1, 0, 0});
        edges.push_back(Edge{v, d2, 0, 0});
    }
    edges.push_back(Edge{d1, d2, 1, 1});
    return Instance(n + 2, std::move(edges));
}

}  // namespace fairorient::reductions
