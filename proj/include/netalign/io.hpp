#pragma once

// Text formats:
//   edge list  "#"-prefixed comments, optional "#n <count>" header, one "u v" pair per line
//   features   comma-separated decimal floats, one row per node
//   mapping    one "source target" pair per line
//   labels     one external label per line; line i names node i

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "netalign/graph.hpp"

namespace netalign {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

inline std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

// Reads "u v" pairs; blank and "#" lines are skipped.
inline std::vector<Edge> read_pairs(std::istream& in, const char* what) {
    std::vector<Edge> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto toks = split_ws(t);
        NodeId u = 0;
        NodeId v = 0;
        if (toks.size() != 2 || !parse_number(toks[0], u) || !parse_number(toks[1], v)) {
            throw ParseError(std::string("malformed ") + what + " at line " + std::to_string(lineno), lineno);
        }
        pairs.emplace_back(u, v);
    }
    return pairs;
}

}  // namespace detail

inline Graph parse_edgelist(std::istream& in) {
    std::vector<Edge> edges;
    std::size_t declared = 0;
    std::size_t max_id_plus_one = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            const auto toks = detail::split_ws(t.substr(1));
            if (toks.size() == 2 && toks[0] == "n") {
                if (!detail::parse_number(toks[1], declared)) {
                    throw ParseError("malformed node-count header at line " + std::to_string(lineno), lineno);
                }
            }
            continue;
        }
        const auto toks = detail::split_ws(t);
        NodeId u = 0;
        NodeId v = 0;
        if (toks.size() != 2 || !detail::parse_number(toks[0], u) || !detail::parse_number(toks[1], v)) {
            throw ParseError("malformed edge at line " + std::to_string(lineno), lineno);
        }
        if (u == v) throw ParseError("self-loop at line " + std::to_string(lineno), lineno);
        edges.emplace_back(u, v);
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + std::size_t{1});
    }
    if (declared != 0 && declared < max_id_plus_one) {
        throw ParseError("node-count header " + std::to_string(declared) + " smaller than max id + 1 (" +
                         std::to_string(max_id_plus_one) + ")");
    }
    return Graph::from_edges(std::max(declared, max_id_plus_one), edges);
}

inline Graph load_edgelist(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    return parse_edgelist(in);
}

inline void write_edgelist(std::ostream& out, const Graph& g) {
    out << "#n " << g.node_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void save_edgelist(const std::filesystem::path& path, const Graph& g) {
    auto out = detail::open_output(path);
    write_edgelist(out, g);
}

inline DenseMatrix parse_feature_matrix(std::istream& in, std::size_t expected_rows) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = t.find(',', start);
            const auto tok = detail::trim(t.substr(start, comma == std::string_view::npos ? t.size() - start
                                                                                          : comma - start));
            double x = 0.0;
            if (!detail::parse_number(tok, x)) {
                throw ParseError("non-numeric token '" + std::string(tok) + "' at line " + std::to_string(lineno),
                                 lineno);
            }
            row.push_back(x);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("ragged row " + std::to_string(rows.size() + 1), lineno);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != expected_rows) {
        throw ParseError("row count " + std::to_string(rows.size()) + " != " + std::to_string(expected_rows));
    }
    const auto cols = rows.empty() ? std::size_t{0} : rows.front().size();
    DenseMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) x(i, j) = rows[i][j];
    }
    return x;
}

inline DenseMatrix load_feature_matrix(const std::filesystem::path& path, std::size_t expected_rows) {
    auto in = detail::open_input(path);
    return parse_feature_matrix(in, expected_rows);
}

// Shortest round-trip decimal representation of every entry.
inline void write_feature_matrix(std::ostream& out, const DenseMatrix& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (j) out << ',';
            out << detail::format_double(x(i, j));
        }
        out << '\n';
    }
}

inline void save_feature_matrix(const std::filesystem::path& path, const DenseMatrix& x) {
    auto out = detail::open_output(path);
    write_feature_matrix(out, x);
}

inline NodeMapping parse_mapping(std::istream& in) {
    const auto pairs = detail::read_pairs(in, "mapping line");
    return NodeMapping(pairs);
}

inline NodeMapping load_mapping(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    return parse_mapping(in);
}

inline void write_mapping(std::ostream& out, const NodeMapping& m) {
    for (const auto& [u, v] : m.pairs()) out << u << ' ' << v << '\n';
}

inline void save_mapping(const std::filesystem::path& path, const NodeMapping& m) {
    auto out = detail::open_output(path);
    write_mapping(out, m);
}

inline std::vector<std::string> load_labels(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) labels.emplace_back(detail::trim(line));
    return labels;
}

}  // namespace netalign
