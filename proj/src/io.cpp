#include "fairorient/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace fairorient::io {

namespace {

// Whitespace-separated tokens of one line.
std::vector<std::string> tokens(const std::string &line)
{
    std::vector<std::string> out;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok)
        out.push_back(tok);
    return out;
}

class LineError {
public:
    explicit LineError(std::string what) : what_(std::move(what)) {}
    InputError at(std::size_t line) const { return InputError("line " + std::to_string(line) + ": " + what_); }

private:
    std::string what_;
};

std::uint64_t number(const std::string &tok, const char *what)
{
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range)
        throw LineError(std::string(what) + " '" + tok + "' overflows 64 bits");
    if (ec != std::errc() || end != tok.data() + tok.size())
        throw LineError(std::string("expected a nonnegative integer ") + what + ", got '" + tok + "'");
    return v;
}

Vertex vertex_id(const std::string &tok, std::size_t n)
{
    const std::uint64_t v = number(tok, "vertex id");
    if (v == 0 || v > n)
        throw LineError("vertex id " + tok + " out of range 1.." + std::to_string(n));
    return static_cast<Vertex>(v - 1);
}

bool skippable(const std::vector<std::string> &t)
{
    return t.empty() || t[0] == "c";
}

template <typename Body>
void each_line(std::istream &in, Body &&body)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        try {
            body(tokens(line), lineno);
        } catch (const LineError &e) {
            throw e.at(lineno);
        }
    }
}

std::ifstream open(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return in;
}

}  // namespace

Instance parse_instance(std::istream &in)
{
    bool header = false;
    std::size_t n = 0, m = 0, header_line = 0;
    std::vector<Edge> edges;
    each_line(in, [&](const std::vector<std::string> &t, std::size_t) {
        if (skippable(t))
            return;
        if (t[0] == "p") {
            if (header)
                throw LineError("second header");
            if (t.size() != 4 || t[1] != "fo")
                throw LineError("header must be 'p fo <n> <m>'");
            n = number(t[2], "vertex count");
            m = number(t[3], "edge count");
            if (n >= kNoVertex)
                throw LineError("too many vertices");
            header = true;
            edges.reserve(std::min<std::size_t>(m, 1u << 24));
            return;
        }
        if (t[0] != "e")
            throw LineError("unknown line type '" + t[0] + "'");
        if (!header)
            throw LineError("edge before header");
        if (t.size() != 5)
            throw LineError("edge line must be 'e <u> <v> <w_u> <w_v>'");
        if (edges.size() == m)
            throw LineError("more edges than the header declares");
        Edge e{vertex_id(t[1], n), vertex_id(t[2], n), number(t[3], "weight"), number(t[4], "weight")};
        if (e.u == e.v)
            throw LineError("loop edge");
        edges.push_back(e);
    });
    (void)header_line;
    if (!header)
        throw InputError("missing header 'p fo <n> <m>'");
    if (edges.size() != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Instance(n, std::move(edges));
}

Instance parse_instance_text(const std::string &text)
{
    std::istringstream in(text);
    return parse_instance(in);
}

Instance read_instance_file(const std::string &path)
{
    auto in = open(path);
    return parse_instance(in);
}

void write_instance(std::ostream &out, const Instance &inst, const std::string &comment)
{
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line))
            out << "c " << line << '\n';
    }
    out << "p fo " << inst.vertex_count() << ' ' << inst.edge_count() << '\n';
    for (const Edge &e : inst.edges())
        out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w_u << ' ' << e.w_v << '\n';
}

std::string instance_text(const Instance &inst)
{
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

PartialOrientation parse_certificate(std::istream &in, const Instance &inst)
{
    const std::size_t m = inst.edge_count();
    std::vector<Assignment> a(m, Assignment::Charity);
    std::vector<std::uint8_t> seen(m, 0);
    each_line(in, [&](const std::vector<std::string> &t, std::size_t) {
        if (t.empty() || t[0] != "o")
            return;
        if (t.size() != 3)
            throw LineError("certificate line must be 'o <edge-id> <1|2|c>'");
        const std::uint64_t id = number(t[1], "edge id");
        if (id == 0 || id > m)
            throw LineError("edge id " + t[1] + " out of range 1.." + std::to_string(m));
        if (seen[id - 1])
            throw LineError("edge " + t[1] + " assigned twice");
        seen[id - 1] = 1;
        if (t[2] == "1")
            a[id - 1] = Assignment::ToU;
        else if (t[2] == "2")
            a[id - 1] = Assignment::ToV;
        else if (t[2] == "c")
            a[id - 1] = Assignment::Charity;
        else
            throw LineError("assignment must be 1, 2 or c");
    });
    for (std::size_t e = 0; e < m; ++e)
        if (!seen[e])
            throw InputError("certificate does not assign edge " + std::to_string(e + 1));
    return PartialOrientation(std::move(a));
}

PartialOrientation read_certificate_file(const std::string &path, const Instance &inst)
{
    auto in = open(path);
    return parse_certificate(in, inst);
}

void write_certificate(std::ostream &out, const PartialOrientation &o)
{
    for (std::size_t e = 0; e < o.size(); ++e) {
        const Assignment a = o[static_cast<EdgeId>(e)];
        out << "o " << e + 1 << ' ' << (a == Assignment::ToU ? "1" : a == Assignment::ToV ? "2" : "c") << '\n';
    }
}

reductions::TooInstance parse_too(std::istream &in)
{
    reductions::TooInstance too;
    bool header = false;
    std::size_t m = 0;
    std::vector<std::uint8_t> has_cap;
    each_line(in, [&](const std::vector<std::string> &t, std::size_t) {
        if (skippable(t))
            return;
        if (t[0] == "p") {
            if (header || t.size() != 4 || t[1] != "too")
                throw LineError("header must be 'p too <n> <m>'");
            too.n = number(t[2], "vertex count");
            m = number(t[3], "edge count");
            too.capacity.assign(too.n, 0);
            has_cap.assign(too.n, 0);
            header = true;
            return;
        }
        if (!header)
            throw LineError("content before header");
        if (t[0] == "v" && t.size() == 3) {
            const Vertex v = vertex_id(t[1], too.n);
            if (has_cap[v])
                throw LineError("capacity given twice");
            has_cap[v] = 1;
            too.capacity[v] = number(t[2], "capacity");
            return;
        }
        if (t[0] == "e" && t.size() == 4) {
            const Vertex u = vertex_id(t[1], too.n), v = vertex_id(t[2], too.n);
            if (u == v)
                throw LineError("loop edge");
            too.edges.emplace_back(u, v, number(t[3], "value"));
            return;
        }
        throw LineError("expected 'v <vertex> <capacity>' or 'e <u> <v> <value>'");
    });
    if (!header)
        throw InputError("missing header 'p too <n> <m>'");
    if (too.edges.size() != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " + std::to_string(too.edges.size()));
    return too;
}

reductions::TooInstance read_too_file(const std::string &path)
{
    auto in = open(path);
    return parse_too(in);
}

void write_too(std::ostream &out, const reductions::TooInstance &too)
{
    out << "p too " << too.n << ' ' << too.edges.size() << '\n';
    for (std::size_t v = 0; v < too.n; ++v)
        out << "v " << v + 1 << ' ' << too.capacity[v] << '\n';
    for (const auto &[u, v, w] : too.edges)
        out << "e " << u + 1 << ' ' << v + 1 << ' ' << w << '\n';
}

}  // namespace fairorient::io
