#pragma once

// Finite abelian groups Z_{n1} x ... x Z_{nr} with elements as residue tuples.
// Elements also have a dense integer code (mixed radix, first factor most
// significant) so the flow search can use lookup tables instead of vectors.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nzflow {

struct GroupElement {
    std::vector<int> residues;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class Group {
public:
    Group() : Group(std::vector<int>{2}) {}

    explicit Group(std::vector<int> orders) : orders_(std::move(orders)) {
        if (orders_.empty())
            throw std::invalid_argument("group needs at least one cyclic factor");
        order_ = 1;
        for (int o : orders_) {
            if (o < 2)
                throw std::invalid_argument("cyclic factor order must be >= 2, got " + std::to_string(o));
            order_ *= o;
            if (order_ > (1 << 16))
                throw std::invalid_argument("group order too large");
        }
        build_tables();
    }

    const std::vector<int>& orders() const { return orders_; }
    int order() const { return order_; }
    int rank() const { return static_cast<int>(orders_.size()); }

    GroupElement zero() const { return GroupElement{std::vector<int>(orders_.size(), 0)}; }

    bool contains(const GroupElement& a) const {
        if (a.residues.size() != orders_.size()) return false;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            if (a.residues[i] < 0 || a.residues[i] >= orders_[i]) return false;
        return true;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a);
        check(b);
        GroupElement r = zero();
        for (std::size_t i = 0; i < orders_.size(); ++i)
            r.residues[i] = (a.residues[i] + b.residues[i]) % orders_[i];
        return r;
    }

    GroupElement neg(const GroupElement& a) const {
        check(a);
        GroupElement r = zero();
        for (std::size_t i = 0; i < orders_.size(); ++i)
            r.residues[i] = (orders_[i] - a.residues[i]) % orders_[i];
        return r;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

    bool is_zero(const GroupElement& a) const {
        check(a);
        for (int r : a.residues)
            if (r != 0) return false;
        return true;
    }

    /// Lexicographic on residues, zero excluded.
    std::vector<GroupElement> nonzero_elements() const {
        std::vector<GroupElement> out;
        out.reserve(order_ - 1);
        for (int c = 1; c < order_; ++c) out.push_back(decode(c));
        return out;
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(order_);
        for (int c = 0; c < order_; ++c) out.push_back(decode(c));
        return out;
    }

    // Dense codes: 0 is the zero element, lexicographic order matches code order.
    int encode(const GroupElement& a) const {
        check(a);
        int c = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) c = c * orders_[i] + a.residues[i];
        return c;
    }

    GroupElement decode(int code) const {
        if (code < 0 || code >= order_) throw std::out_of_range("group element code out of range");
        GroupElement r = zero();
        for (std::size_t i = orders_.size(); i-- > 0;) {
            r.residues[i] = code % orders_[i];
            code /= orders_[i];
        }
        return r;
    }

    int add_code(int a, int b) const { return add_table_[static_cast<std::size_t>(a) * order_ + b]; }
    int neg_code(int a) const { return neg_table_[a]; }
    int sub_code(int a, int b) const { return add_code(a, neg_table_[b]); }

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += "x";
            s += "Z" + std::to_string(orders_[i]);
        }
        return s;
    }

    /// "3", "2,2", "4" style spelling.
    std::string spec() const {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(orders_[i]);
        }
        return s;
    }

    std::string format(const GroupElement& a) const {
        if (a.residues.size() == 1) return std::to_string(a.residues[0]);
        std::string s = "(";
        for (std::size_t i = 0; i < a.residues.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(a.residues[i]);
        }
        return s + ")";
    }

    friend bool operator==(const Group& a, const Group& b) { return a.orders_ == b.orders_; }

private:
    void check(const GroupElement& a) const {
        if (a.residues.size() != orders_.size())
            throw std::invalid_argument("group element arity does not match group");
        if (!contains(a)) throw std::invalid_argument("residue out of range for group");
    }

    void build_tables() {
        add_table_.assign(static_cast<std::size_t>(order_) * order_, 0);
        neg_table_.assign(order_, 0);
        for (int a = 0; a < order_; ++a) {
            GroupElement ea = decode(a);
            neg_table_[a] = encode(neg(ea));
            for (int b = 0; b < order_; ++b)
                add_table_[static_cast<std::size_t>(a) * order_ + b] = encode(add(ea, decode(b)));
        }
    }

    std::vector<int> orders_;
    int order_ = 0;
    std::vector<int> add_table_;
    std::vector<int> neg_table_;
};

inline Group make_group(std::vector<int> orders) { return Group(std::move(orders)); }

inline std::vector<int> parse_int_list(std::string_view text, char sep = ',') {
    std::vector<int> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, sep)) {
        std::size_t pos = 0;
        while (pos < item.size() && item[pos] == ' ') ++pos;
        item = item.substr(pos);
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        while (used < item.size() && item[used] == ' ') ++used;
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

/// Parses "3", "2,2", "4".
inline Group parse_group(std::string_view text) { return Group(parse_int_list(text)); }

/// Per-vertex values: "1,1,1,0" for cyclic groups, "1,0;0,1;..." for products.
inline std::vector<GroupElement> parse_boundary(const Group& g, std::string_view text) {
    std::vector<GroupElement> out;
    auto make = [&](std::vector<int> r) {
        GroupElement e{std::move(r)};
        for (std::size_t i = 0; i < e.residues.size() && i < g.orders().size(); ++i) {
            int o = g.orders()[i];
            e.residues[i] = ((e.residues[i] % o) + o) % o;
        }
        if (e.residues.size() != g.orders().size())
            throw std::invalid_argument("boundary value arity does not match group " + g.name());
        return e;
    };
    if (g.rank() == 1) {
        for (int v : parse_int_list(text)) out.push_back(make({v}));
    } else {
        std::string item;
        std::istringstream in{std::string(text)};
        while (std::getline(in, item, ';')) out.push_back(make(parse_int_list(item)));
    }
    return out;
}

}  // namespace nzflow
