// Text formats for instances, assignments and schedules.
//
// Instance grammar (UTF-8, '#' starts a comment, blank lines ignored):
//   problem channel            | problem migration
//   channels <C_G>             | (absent)
//   node <id> <C_v>            | node <id> <c_v>        (one per node)
//   edge <eid> <u> <v>                                  (one per edge)
// Sections must appear in that order. Node and edge ids are arbitrary
// whitespace-free tokens and must be unique; self-loops are rejected.
//
// Assignment file:  one `color <eid> <int>` line per edge.
// Schedule file:    `round <r> <eid> ...` lines, r contiguous from 1.
//
// serialize_* emit canonical form (no comments, declaration order), so
// parse -> serialize -> parse is the identity.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line;
    if (auto pos = body.find('#'); pos != std::string::npos) body.resize(pos);
    std::istringstream in(body);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (x < -2000000000LL || x > 2000000000LL) throw std::out_of_range(tok);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'",
                         line_no);
    }
}

}  // namespace detail

inline Instance parse_instance(std::istream& in) {
    enum Section { Header, Channels, Nodes, Edges } section = Header;
    ProblemKind kind = ProblemKind::Channel;
    int global_channels = 0;
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::map<std::string, int> node_ix;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (section == Header) {
            if (kw != "problem" || toks.size() != 2)
                throw ParseError("expected 'problem channel|migration'", line_no);
            if (toks[1] == "channel")
                kind = ProblemKind::Channel;
            else if (toks[1] == "migration")
                kind = ProblemKind::Migration;
            else
                throw ParseError("unknown problem kind '" + toks[1] + "'", line_no);
            section = kind == ProblemKind::Channel ? Channels : Nodes;
            continue;
        }
        if (section == Channels) {
            if (kw != "channels" || toks.size() != 2)
                throw ParseError("expected 'channels <C_G>'", line_no);
            global_channels = detail::parse_int(toks[1], line_no, "C_G");
            section = Nodes;
            continue;
        }
        if (kw == "node") {
            if (section != Nodes)
                throw ParseError("node line after first edge line", line_no);
            if (toks.size() != 3) throw ParseError("expected 'node <id> <cap>'", line_no);
            int cap = detail::parse_int(toks[2], line_no, "capacity");
            if (!node_ix.emplace(toks[1], static_cast<int>(nodes.size())).second)
                throw ParseError("duplicate node id " + toks[1], line_no);
            nodes.push_back({toks[1], cap});
            continue;
        }
        if (kw == "edge") {
            section = Edges;
            if (toks.size() != 4) throw ParseError("expected 'edge <eid> <u> <v>'", line_no);
            auto u = node_ix.find(toks[2]);
            auto v = node_ix.find(toks[3]);
            if (u == node_ix.end())
                throw ParseError("edge " + toks[1] + ": unknown node " + toks[2], line_no);
            if (v == node_ix.end())
                throw ParseError("edge " + toks[1] + ": unknown node " + toks[3], line_no);
            edges.push_back({toks[1], u->second, v->second});
            continue;
        }
        throw ParseError("unknown keyword '" + kw + "'", line_no);
    }
    if (section == Header) throw ParseError("empty instance: missing 'problem' line");
    if (section == Channels) throw ParseError("missing 'channels' line");

    try {
        return Instance(kind, std::move(nodes), std::move(edges), global_channels);
    } catch (const InputError& e) {
        throw ParseError(e.what());
    }
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file " + path);
    return parse_instance(in);
}

inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "problem " << (inst.is_channel() ? "channel" : "migration") << "\n";
    if (inst.is_channel()) out << "channels " << inst.global_channels() << "\n";
    for (const Node& n : inst.nodes()) out << "node " << n.id << " " << n.capacity << "\n";
    for (const Edge& e : inst.edges())
        out << "edge " << e.id << " " << inst.node(e.u).id << " " << inst.node(e.v).id << "\n";
    return out.str();
}

// FNV-1a over the canonical serialization; identifies an instance in reports.
inline std::string instance_digest(const Instance& inst) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : serialize_instance(inst)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- assignment files -------------------------------------------------

// Raw edge-id -> color map; totality against an instance is checked by the
// consumer (CLI `verify` reports gaps as violations, library ops require a
// total assignment).
inline std::map<std::string, int> parse_assignment_file(std::istream& in) {
    std::map<std::string, int> colors;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] != "color" || toks.size() != 3)
            throw ParseError("expected 'color <eid> <int>'", line_no);
        int c = detail::parse_int(toks[2], line_no, "color");
        if (!colors.emplace(toks[1], c).second)
            throw ParseError("duplicate color line for edge " + toks[1], line_no);
    }
    return colors;
}

inline std::string serialize_assignment(const Instance& inst, const std::vector<int>& color) {
    std::ostringstream out;
    for (int e = 0; e < inst.num_edges(); ++e)
        out << "color " << inst.edge(e).id << " " << color[e] << "\n";
    return out.str();
}

// ---- schedule files ----------------------------------------------------

inline std::vector<std::vector<std::string>> parse_schedule_file(std::istream& in) {
    std::vector<std::vector<std::string>> rounds;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] != "round" || toks.size() < 2)
            throw ParseError("expected 'round <r> <eid>...'", line_no);
        int r = detail::parse_int(toks[1], line_no, "round number");
        if (r != static_cast<int>(rounds.size()) + 1)
            throw ParseError("round numbers must be contiguous from 1; got " +
                                 std::to_string(r),
                             line_no);
        rounds.emplace_back(toks.begin() + 2, toks.end());
    }
    return rounds;
}

inline std::string serialize_schedule(const Instance& inst,
                                      const std::vector<std::vector<int>>& rounds) {
    std::ostringstream out;
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        out << "round " << (r + 1);
        for (int e : rounds[r]) out << " " << inst.edge(e).id;
        out << "\n";
    }
    return out.str();
}

}  // namespace chromaflux
