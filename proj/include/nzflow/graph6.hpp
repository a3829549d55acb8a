#pragma once

// graph6 / sparse6 line formats (as produced by nauty's geng and friends)
// and the DIMACS "p edge" format.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multigraph.hpp"

namespace nzflow {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_g6_byte(unsigned char c) {
    if (c < 63 || c > 126) throw FormatError("byte " + std::to_string(c) + " outside graph6 range 63..126");
}

inline void append_size(std::string& out, long n) {
    if (n < 0) throw FormatError("negative size");
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
    } else if (n <= 68719476735L) {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
    } else {
        throw FormatError("graph too large for graph6");
    }
}

// Reads N(n) starting at pos; advances pos.
inline long read_size(std::string_view s, std::size_t& pos) {
    auto byte = [&](std::size_t i) {
        if (i >= s.size()) throw FormatError("truncated size field");
        unsigned char c = static_cast<unsigned char>(s[i]);
        check_g6_byte(c);
        return static_cast<long>(c - 63);
    };
    long first = byte(pos);
    if (first < 63) {
        pos += 1;
        return first;
    }
    if (byte(pos + 1) < 63) {
        long n = 0;
        for (int i = 1; i <= 3; ++i) n = (n << 6) | byte(pos + i);
        pos += 4;
        if (n <= 62) throw FormatError("non-canonical long size field");
        return n;
    }
    long n = 0;
    for (int i = 2; i <= 7; ++i) n = (n << 6) | byte(pos + i);
    pos += 8;
    if (n <= 258047) throw FormatError("non-canonical long size field");
    return n;
}

class BitWriter {
public:
    void put(bool b) {
        cur_ = static_cast<unsigned char>((cur_ << 1) | (b ? 1 : 0));
        if (++used_ == 6) flush();
    }
    void put_bits(unsigned long x, int k) {
        for (int i = k - 1; i >= 0; --i) put((x >> i) & 1);
    }
    int free_bits() const { return used_ == 0 ? 6 : 6 - used_; }
    bool partial() const { return used_ != 0; }
    void flush() {
        out_.push_back(static_cast<char>(63 + cur_));
        cur_ = 0;
        used_ = 0;
    }
    std::string& str() { return out_; }

private:
    std::string out_;
    unsigned char cur_ = 0;
    int used_ = 0;
};

inline std::string_view trim_line(std::string_view s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

inline int bits_for(long n) {
    int k = 0;
    for (long i = n - 1; i > 0; i >>= 1) ++k;
    return k;
}

}  // namespace detail

inline Multigraph parse_graph6(std::string_view text) {
    text = detail::trim_line(text);
    constexpr std::string_view header = ">>graph6<<";
    if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
    if (text.empty()) throw FormatError("empty graph6 string");
    if (text.front() == ':' || text.front() == ';' || text.front() == '&')
        throw FormatError("not a graph6 string (sparse6/digraph6 prefix)");
    std::size_t pos = 0;
    long n = detail::read_size(text, pos);
    if (n > 100000) throw FormatError("graph6 order too large");
    long bits = n * (n - 1) / 2;
    std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() - pos != need)
        throw FormatError("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " + std::to_string(need));
    Multigraph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            unsigned char c = static_cast<unsigned char>(text[pos + k / 6]);
            detail::check_g6_byte(c);
            if (((c - 63) >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    for (long t = bits; t < static_cast<long>(need) * 6; ++t) {
        unsigned char c = static_cast<unsigned char>(text[pos + t / 6]);
        detail::check_g6_byte(c);
        if (((c - 63) >> (5 - t % 6)) & 1) throw FormatError("graph6 padding bits must be zero");
    }
    for (std::size_t t = pos; t < text.size(); ++t) detail::check_g6_byte(static_cast<unsigned char>(text[t]));
    return g;
}

inline std::string encode_graph6(const Multigraph& g) {
    if (!g.is_simple()) throw FormatError("graph6 cannot encode parallel edges; use sparse6");
    std::string out;
    detail::append_size(out, g.n());
    std::vector<std::vector<char>> adj(g.n(), std::vector<char>(g.n(), 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    detail::BitWriter w;
    for (int j = 1; j < g.n(); ++j)
        for (int i = 0; i < j; ++i) w.put(adj[i][j]);
    while (w.partial()) w.put(false);
    return out + w.str();
}

inline Multigraph parse_sparse6(std::string_view text) {
    text = detail::trim_line(text);
    constexpr std::string_view header = ">>sparse6<<";
    if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
    if (text.empty() || text.front() != ':') throw FormatError("sparse6 string must start with ':'");
    std::size_t pos = 1;
    long n = detail::read_size(text, pos);
    if (n > 1000000) throw FormatError("sparse6 order too large");
    int k = detail::bits_for(n);
    Multigraph g(static_cast<int>(n));
    std::vector<int> bits;
    for (std::size_t i = pos; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        detail::check_g6_byte(c);
        for (int s = 5; s >= 0; --s) bits.push_back(((c - 63) >> s) & 1);
    }
    std::size_t at = 0;
    long v = 0;
    while (at + 1 + k <= bits.size()) {
        int b = bits[at++];
        long x = 0;
        for (int i = 0; i < k; ++i) x = (x << 1) | bits[at++];
        if (b) ++v;
        if (v >= n) break;
        if (x > v) {
            v = x;
        } else {
            if (x == v) throw FormatError("sparse6 string encodes a loop at vertex " + std::to_string(v));
            g.add_edge(static_cast<int>(x), static_cast<int>(v));
        }
    }
    return g;
}

inline std::string encode_sparse6(const Multigraph& g) {
    long n = g.n();
    int k = detail::bits_for(n);
    std::vector<std::pair<int, int>> es;  // (high, low)
    for (const auto& e : g.edges()) es.emplace_back(e.v, e.u);
    std::sort(es.begin(), es.end());
    std::string out = ":";
    detail::append_size(out, n);
    detail::BitWriter w;
    long lastj = 0;
    for (auto [j, i] : es) {
        if (j == lastj) {
            w.put(false);
            w.put_bits(i, k);
        } else if (j == lastj + 1) {
            w.put(true);
            w.put_bits(i, k);
        } else {
            w.put(true);
            w.put_bits(j, k);
            w.put(false);
            w.put_bits(i, k);
        }
        lastj = j;
    }
    if (w.partial()) {
        int free = w.free_bits();
        if (k < 6 && free >= k + 1 && lastj == n - 2 && n == (1L << k)) {
            w.put(false);
            while (w.partial()) w.put(true);
        } else {
            while (w.partial()) w.put(true);
        }
    }
    return out + w.str();
}

/// Dispatches on the ':' prefix.
inline Multigraph parse_graph_line(std::string_view line) {
    line = detail::trim_line(line);
    if (line.substr(0, 11) == ">>sparse6<<") line.remove_prefix(11);
    if (line.substr(0, 10) == ">>graph6<<") line.remove_prefix(10);
    if (!line.empty() && line.front() == ':') return parse_sparse6(line);
    return parse_graph6(line);
}

/// graph6 for simple graphs, sparse6 otherwise.
inline std::string encode_graph_line(const Multigraph& g) {
    return g.is_simple() ? encode_graph6(g) : encode_sparse6(g);
}

inline Multigraph parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> pairs;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::trim_line(line);
        if (t.empty() || t.front() == 'c') continue;
        std::istringstream ls{std::string(t)};
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col"))
                throw FormatError("bad DIMACS problem line " + std::to_string(lineno));
        } else if (tag == "e") {
            long a, b;
            if (n < 0) throw FormatError("DIMACS edge before problem line");
            if (!(ls >> a >> b)) throw FormatError("bad DIMACS edge line " + std::to_string(lineno));
            if (a < 1 || b < 1 || a > n || b > n) throw FormatError("DIMACS vertex out of range at line " + std::to_string(lineno));
            pairs.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        } else {
            throw FormatError("unknown DIMACS line tag '" + tag + "'");
        }
    }
    if (n < 0) throw FormatError("missing DIMACS problem line");
    if (m >= 0 && static_cast<long>(pairs.size()) != m)
        throw FormatError("DIMACS header declares " + std::to_string(m) + " edges, found " + std::to_string(pairs.size()));
    return from_edge_list(static_cast<int>(n), pairs);
}

inline std::string encode_dimacs(const Multigraph& g) {
    std::string out = "p edge " + std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
    for (const auto& e : g.edges()) out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + "\n";
    return out;
}

}  // namespace nzflow
