#ifndef GBP_IO_HPP
#define GBP_IO_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"
#include "gbp/kernel.hpp"
#include "gbp/model.hpp"
#include "gbp/reductions.hpp"

namespace gbp {

namespace detail {

struct Line {
    std::size_t number = 0;
    std::vector<std::string_view> words;
};

/// Splits a document into whitespace-separated words per line, dropping '#' comments and blank lines.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        std::size_t end = text.find('\n');
        std::string_view raw = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Line line{number, {}};
        std::size_t pos = 0;
        while (pos < raw.size()) {
            while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) {
                ++pos;
            }
            std::size_t start = pos;
            while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) {
                ++pos;
            }
            if (pos > start) {
                line.words.push_back(raw.substr(start, pos - start));
            }
        }
        if (!line.words.empty()) {
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

inline std::size_t parse_number(std::string_view word, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
        throw InputError(ErrorCode::kBadNumber, "'" + std::string(word) + "' is not a non-negative integer", line);
    }
    return value;
}

inline void expect_arity(const Line& line, std::size_t count) {
    if (line.words.size() != count) {
        throw InputError(ErrorCode::kSyntax,
                         "'" + std::string(line.words[0]) + "' takes " + std::to_string(count - 1) + " value(s)",
                         line.number);
    }
}

/// Reads a `key <int>` line into `slot`, rejecting repeats.
inline void read_scalar(const Line& line, std::optional<std::size_t>& slot) {
    expect_arity(line, 2);
    if (slot) {
        throw InputError(ErrorCode::kSyntax, "'" + std::string(line.words[0]) + "' given twice", line.number);
    }
    slot = parse_number(line.words[1], line.number);
}

inline std::size_t require(const std::optional<std::size_t>& slot, std::string_view name) {
    if (!slot) {
        throw InputError(ErrorCode::kMissingField, "missing '" + std::string(name) + "' line");
    }
    return *slot;
}

/// Validates edges against n with line-numbered errors.
inline std::vector<Edge> checked_edges(const std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>>& raw,
                                       std::size_t n) {
    std::set<Edge> seen;
    std::vector<Edge> edges;
    for (const auto& [ends, line] : raw) {
        auto [u, v] = ends;
        if (u >= n || v >= n) {
            throw InputError(ErrorCode::kVertexOutOfRange,
                             "edge names vertex " + std::to_string(std::max(u, v)) + " but n is " + std::to_string(n),
                             line);
        }
        if (u == v) {
            throw InputError(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(u), line);
        }
        Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
        if (!seen.insert(e).second) {
            throw InputError(ErrorCode::kDuplicateEdge, "edge " + to_string(e) + " listed twice", line);
        }
        edges.push_back(e);
    }
    return edges;
}

inline std::string_view expect_header(const std::vector<Line>& lines, std::string_view what) {
    if (lines.empty()) {
        throw InputError(ErrorCode::kMissingHeader, "empty " + std::string(what) + " document");
    }
    return lines.front().words.front();
}

}  // namespace detail

inline VariantKind parse_variant_kind(std::string_view word, std::size_t line = 0) {
    for (auto kind : {VariantKind::kReach, VariantKind::kClosed, VariantKind::kDiam, VariantKind::kConnect}) {
        if (word == to_string(kind)) {
            return kind;
        }
    }
    throw InputError(ErrorCode::kUnknownVariant, "unknown variant '" + std::string(word) + "'", line);
}

/// Parses the line-oriented instance format. Non-fatal remarks (a `d` line on a
/// connect instance) are appended to `warnings` when given.
inline Instance parse_instance(std::string_view text, std::vector<std::string>* warnings = nullptr) {
    auto lines = detail::tokenize(text);
    detail::expect_header(lines, "instance");
    const auto& header = lines.front();
    if (header.words[0] != "gbp") {
        throw InputError(ErrorCode::kMissingHeader, "expected 'gbp 1' header", header.number);
    }
    detail::expect_arity(header, 2);
    if (detail::parse_number(header.words[1], header.number) != 1) {
        throw InputError(ErrorCode::kUnsupportedVersion, "only version 1 is supported", header.number);
    }
    std::optional<VariantKind> kind;
    std::size_t d_line = 0;
    std::optional<std::size_t> d, n, k;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> raw_edges;
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> raw_habitats;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        std::string_view key = line.words[0];
        if (key == "variant") {
            detail::expect_arity(line, 2);
            if (kind) {
                throw InputError(ErrorCode::kSyntax, "'variant' given twice", line.number);
            }
            kind = parse_variant_kind(line.words[1], line.number);
        } else if (key == "d") {
            detail::read_scalar(line, d);
            d_line = line.number;
        } else if (key == "n") {
            detail::read_scalar(line, n);
        } else if (key == "k") {
            detail::read_scalar(line, k);
        } else if (key == "edge") {
            detail::expect_arity(line, 3);
            raw_edges.push_back({{detail::parse_number(line.words[1], line.number),
                                  detail::parse_number(line.words[2], line.number)},
                                 line.number});
        } else if (key == "habitat") {
            std::vector<std::size_t> members;
            for (std::size_t w = 1; w < line.words.size(); ++w) {
                members.push_back(detail::parse_number(line.words[w], line.number));
            }
            raw_habitats.push_back({std::move(members), line.number});
        } else {
            throw InputError(ErrorCode::kSyntax, "unknown keyword '" + std::string(key) + "'", line.number);
        }
    }
    if (!kind) {
        throw InputError(ErrorCode::kMissingField, "missing 'variant' line");
    }
    const std::size_t vertices = detail::require(n, "n");
    if (vertices >= kInfinite) {
        throw InputError(ErrorCode::kBadNumber, "n is too large");
    }
    const std::size_t budget = detail::require(k, "k");
    std::optional<Variant> variant;
    if (*kind == VariantKind::kConnect) {
        if (d && warnings) {
            warnings->push_back("line " + std::to_string(d_line) + ": 'd' is ignored for connect instances");
        }
        variant = Variant::connect();
    } else {
        if (!d) {
            throw InputError(ErrorCode::kMissingDistance,
                             "variant " + std::string(to_string(*kind)) + " needs a 'd' line");
        }
        if (*d == 0) {
            throw InputError(ErrorCode::kInvalidDistance, "d must be at least 1", d_line);
        }
        variant = Variant::of(*kind, *d);
    }
    auto edges = detail::checked_edges(raw_edges, vertices);
    std::vector<VertexSet> habitats;
    for (const auto& [members, line] : raw_habitats) {
        if (members.empty()) {
            throw InputError(ErrorCode::kEmptyHabitat, "habitat without members", line);
        }
        std::set<std::size_t> seen;
        VertexSet habitat;
        for (std::size_t v : members) {
            if (v >= vertices) {
                throw InputError(ErrorCode::kHabitatOutOfRange,
                                 "habitat names vertex " + std::to_string(v) + " but n is " + std::to_string(vertices),
                                 line);
            }
            if (!seen.insert(v).second) {
                throw InputError(ErrorCode::kDuplicateMember, "habitat lists vertex " + std::to_string(v) + " twice",
                                 line);
            }
            habitat.push_back(static_cast<Vertex>(v));
        }
        habitats.push_back(std::move(habitat));
    }
    return Instance(Graph(vertices, std::move(edges)), std::move(habitats), budget, *variant);
}

/// Canonical text: edges ascending, habitats in order with members ascending.
inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "gbp 1\n";
    out << "variant " << to_string(inst.variant().kind()) << '\n';
    if (auto d = inst.variant().d()) {
        out << "d " << *d << '\n';
    }
    out << "n " << inst.graph().n() << '\n';
    out << "k " << inst.k() << '\n';
    for (const Edge& e : inst.graph().edges()) {
        out << "edge " << e.u << ' ' << e.v << '\n';
    }
    for (const auto& habitat : inst.habitats()) {
        out << "habitat";
        for (Vertex v : habitat) {
            out << ' ' << v;
        }
        out << '\n';
    }
    return out.str();
}

/// One `u v` pair per line, validated against the instance graph.
inline Solution parse_solution(std::string_view text, const Instance& inst) {
    Solution sol;
    const auto& g = inst.graph();
    for (const auto& line : detail::tokenize(text)) {
        if (line.words.size() != 2) {
            throw InputError(ErrorCode::kSyntax, "expected 'u v'", line.number);
        }
        std::size_t u = detail::parse_number(line.words[0], line.number);
        std::size_t v = detail::parse_number(line.words[1], line.number);
        if (u >= g.n() || v >= g.n()) {
            throw InputError(ErrorCode::kVertexOutOfRange, "vertex " + std::to_string(std::max(u, v)) + " out of range",
                             line.number);
        }
        if (u == v || !g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
            throw InputError(ErrorCode::kNotAnEdge,
                             "{" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge", line.number);
        }
        if (!sol.edges.insert(Edge(static_cast<Vertex>(u), static_cast<Vertex>(v))).second) {
            throw InputError(ErrorCode::kDuplicateEdge, "edge listed twice", line.number);
        }
    }
    return sol;
}

inline std::string serialize_solution(const Solution& sol) {
    std::ostringstream out;
    for (const Edge& e : sol.edges) {
        out << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

namespace detail {

inline VertexCoverSource parse_vc(const std::vector<Line>& lines) {
    std::optional<std::size_t> n, k;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> raw;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.words[0] == "n") {
            read_scalar(line, n);
        } else if (line.words[0] == "k") {
            read_scalar(line, k);
        } else if (line.words[0] == "edge") {
            expect_arity(line, 3);
            raw.push_back({{parse_number(line.words[1], line.number), parse_number(line.words[2], line.number)},
                           line.number});
        } else {
            throw InputError(ErrorCode::kSyntax, "unknown keyword '" + std::string(line.words[0]) + "'", line.number);
        }
    }
    std::size_t vertices = require(n, "n");
    return VertexCoverSource{Graph(vertices, checked_edges(raw, vertices)), require(k, "k")};
}

inline SetCoverSource parse_sc(const std::vector<Line>& lines) {
    std::optional<std::size_t> universe, k;
    std::vector<std::vector<std::size_t>> family;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.words[0] == "universe") {
            read_scalar(line, universe);
        } else if (line.words[0] == "k") {
            read_scalar(line, k);
        } else if (line.words[0] == "set") {
            std::vector<std::size_t> set;
            for (std::size_t w = 1; w < line.words.size(); ++w) {
                set.push_back(parse_number(line.words[w], line.number));
            }
            family.push_back(std::move(set));
        } else {
            throw InputError(ErrorCode::kSyntax, "unknown keyword '" + std::string(line.words[0]) + "'", line.number);
        }
    }
    SetCoverSource src{require(universe, "universe"), std::move(family), require(k, "k")};
    check_source(src);
    return src;
}

inline PartVertex parse_part_vertex(std::string_view word, std::size_t line) {
    auto colon = word.find(':');
    if (colon == std::string_view::npos) {
        throw InputError(ErrorCode::kSyntax, "expected 'part:index', got '" + std::string(word) + "'", line);
    }
    return {parse_number(word.substr(0, colon), line), parse_number(word.substr(colon + 1), line)};
}

inline MulticoloredCliqueSource parse_mcc(const std::vector<Line>& lines) {
    std::optional<std::size_t> k;
    std::optional<std::vector<std::size_t>> parts;
    MulticoloredCliqueSource src;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.words[0] == "k") {
            read_scalar(line, k);
        } else if (line.words[0] == "parts") {
            if (parts) {
                throw InputError(ErrorCode::kSyntax, "'parts' given twice", line.number);
            }
            parts.emplace();
            for (std::size_t w = 1; w < line.words.size(); ++w) {
                parts->push_back(parse_number(line.words[w], line.number));
            }
        } else if (line.words[0] == "edge") {
            expect_arity(line, 3);
            src.edges.emplace_back(parse_part_vertex(line.words[1], line.number),
                                   parse_part_vertex(line.words[2], line.number));
        } else {
            throw InputError(ErrorCode::kSyntax, "unknown keyword '" + std::string(line.words[0]) + "'", line.number);
        }
    }
    std::size_t count = require(k, "k");
    if (!parts) {
        throw InputError(ErrorCode::kMissingField, "missing 'parts' line");
    }
    if (parts->size() != count) {
        throw InputError(ErrorCode::kInvalidSource, "'parts' lists " + std::to_string(parts->size()) +
                                                        " sizes but k is " + std::to_string(count));
    }
    src.part_sizes = std::move(*parts);
    check_source(src);
    return src;
}

}  // namespace detail

/// Parses a `vc`, `sc` or `mcc` source document (elements and vertices are 0-based).
inline SourceInstance parse_source(std::string_view text) {
    auto lines = detail::tokenize(text);
    std::string_view header = detail::expect_header(lines, "source");
    detail::expect_arity(lines.front(), 1);
    if (header == "vc") {
        return detail::parse_vc(lines);
    }
    if (header == "sc") {
        return detail::parse_sc(lines);
    }
    if (header == "mcc") {
        return detail::parse_mcc(lines);
    }
    throw InputError(ErrorCode::kMissingHeader, "expected 'vc', 'sc' or 'mcc' header", lines.front().number);
}

inline std::string serialize_source(const SourceInstance& src) {
    std::ostringstream out;
    if (const auto* vc = std::get_if<VertexCoverSource>(&src)) {
        out << "vc\nn " << vc->graph.n() << "\nk " << vc->k << '\n';
        for (const Edge& e : vc->graph.edges()) {
            out << "edge " << e.u << ' ' << e.v << '\n';
        }
    } else if (const auto* sc = std::get_if<SetCoverSource>(&src)) {
        out << "sc\nuniverse " << sc->universe << "\nk " << sc->k << '\n';
        for (const auto& set : sc->family) {
            out << "set";
            for (auto x : set) {
                out << ' ' << x;
            }
            out << '\n';
        }
    } else {
        const auto& mcc = std::get<MulticoloredCliqueSource>(src);
        out << "mcc\nk " << mcc.k() << "\nparts";
        for (auto s : mcc.part_sizes) {
            out << ' ' << s;
        }
        out << '\n';
        for (const auto& [a, b] : mcc.edges) {
            out << "edge " << a.part << ':' << a.index << ' ' << b.part << ':' << b.index << '\n';
        }
    }
    return out.str();
}

/// Outcome of a CLI command in reportable form.
struct ResultReport {
    std::string command;
    std::string status;  ///< yes, no or infeasible-input
    std::optional<Variant> variant;
    std::optional<std::size_t> k;
    std::optional<std::size_t> optimum;
    std::optional<EdgeSet> witness;
    std::vector<std::pair<std::string, std::size_t>> trace;  ///< rule name and application count
    std::optional<double> seconds;
    std::optional<std::size_t> nodes;
    std::vector<std::pair<std::string, std::string>> extra;
};

/// Per-rule counts in order of first application.
inline std::vector<std::pair<std::string, std::size_t>> summarize_trace(const std::vector<RuleApplication>& trace) {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& app : trace) {
        std::string name(to_string(app.rule));
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == name; });
        if (it == out.end()) {
            out.emplace_back(name, 1);
        } else {
            ++it->second;
        }
    }
    return out;
}

/// Flat `key=value` block, one field per line, absent fields omitted.
inline std::string format_report(const ResultReport& report) {
    std::ostringstream out;
    out << "command=" << report.command << '\n';
    out << "status=" << report.status << '\n';
    if (report.variant) {
        out << "variant=" << to_string(report.variant->kind()) << '\n';
        if (auto d = report.variant->d()) {
            out << "d=" << *d << '\n';
        }
    }
    if (report.k) {
        out << "k=" << *report.k << '\n';
    }
    if (report.optimum) {
        out << "optimum=" << *report.optimum << '\n';
    }
    if (report.witness) {
        out << "witness=";
        bool first = true;
        for (const Edge& e : *report.witness) {
            out << (first ? "" : " ") << e.u << '-' << e.v;
            first = false;
        }
        out << '\n';
    }
    if (!report.trace.empty()) {
        out << "trace=";
        for (std::size_t i = 0; i < report.trace.size(); ++i) {
            out << (i ? "," : "") << report.trace[i].first << ':' << report.trace[i].second;
        }
        out << '\n';
    }
    for (const auto& [key, value] : report.extra) {
        out << key << '=' << value << '\n';
    }
    if (report.nodes) {
        out << "nodes=" << *report.nodes << '\n';
    }
    if (report.seconds) {
        out << "seconds=" << *report.seconds << '\n';
    }
    return out.str();
}

inline nlohmann::json report_json(const ResultReport& report) {
    nlohmann::json doc;
    doc["command"] = report.command;
    doc["status"] = report.status;
    if (report.variant) {
        doc["variant"] = std::string(to_string(report.variant->kind()));
        if (auto d = report.variant->d()) {
            doc["d"] = *d;
        }
    }
    if (report.k) {
        doc["k"] = *report.k;
    }
    if (report.optimum) {
        doc["optimum"] = *report.optimum;
    }
    if (report.witness) {
        auto& edges = doc["witness"] = nlohmann::json::array();
        for (const Edge& e : *report.witness) {
            edges.push_back({e.u, e.v});
        }
    }
    if (!report.trace.empty()) {
        auto& trace = doc["trace"] = nlohmann::json::object();
        for (const auto& [rule, count] : report.trace) {
            trace[rule] = count;
        }
    }
    for (const auto& [key, value] : report.extra) {
        doc[key] = value;
    }
    if (report.nodes) {
        doc["nodes"] = *report.nodes;
    }
    if (report.seconds) {
        doc["seconds"] = *report.seconds;
    }
    return doc;
}

}  // namespace gbp

#endif  // GBP_IO_HPP
