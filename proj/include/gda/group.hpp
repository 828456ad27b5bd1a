#pragma once

#include "gda/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gda {

/// Exponent tuple for an element of Z2^a x Z4^b: a entries mod 2 followed by
/// b entries mod 4 (b is 0 or 1 throughout).
struct GroupElement {
    std::vector<std::uint8_t> e;

    friend bool operator==(const GroupElement& x, const GroupElement& y) = default;
    friend auto operator<=>(const GroupElement& x, const GroupElement& y) = default;
};

/// The grading groups that occur as supports: Z2^a, or Z2^a x Z4.
class FinAbelianGroup {
public:
    FinAbelianGroup() = default;
    FinAbelianGroup(std::size_t z2_count, std::size_t z4_count)
        : a_(z2_count), b_(z4_count) {
        if (b_ > 1) throw GdaError("E_GROUP", "at most one Z4 factor is supported");
    }

    std::size_t z2_count() const { return a_; }
    std::size_t z4_count() const { return b_; }
    std::size_t coord_count() const { return a_ + b_; }
    std::size_t size() const { return (std::size_t{1} << a_) * (b_ ? 4 : 1); }

    friend bool operator==(const FinAbelianGroup&, const FinAbelianGroup&) = default;

    GroupElement identity() const { return GroupElement{std::vector<std::uint8_t>(a_ + b_, 0)}; }

    bool contains(const GroupElement& t) const {
        if (t.e.size() != a_ + b_) return false;
        for (std::size_t i = 0; i < a_; ++i)
            if (t.e[i] > 1) return false;
        if (b_ && t.e[a_] > 3) return false;
        return true;
    }

    void require(const GroupElement& t) const {
        if (!contains(t)) throw GdaError("E_GROUP", "element outside group");
    }

    GroupElement mul(const GroupElement& u, const GroupElement& v) const {
        require(u);
        require(v);
        GroupElement r = identity();
        for (std::size_t i = 0; i < a_; ++i) r.e[i] = (u.e[i] + v.e[i]) & 1u;
        if (b_) r.e[a_] = (u.e[a_] + v.e[a_]) & 3u;
        return r;
    }

    GroupElement inv(const GroupElement& u) const {
        require(u);
        GroupElement r = u;
        if (b_) r.e[a_] = (4 - u.e[a_]) & 3u;
        return r;
    }

    GroupElement power(const GroupElement& u, std::size_t k) const {
        GroupElement r = identity();
        for (std::size_t i = 0; i < k % 4; ++i) r = mul(r, u);
        return r;
    }

    std::size_t order_of(const GroupElement& u) const {
        require(u);
        if (b_ && (u.e[a_] & 1u)) return 4;
        for (std::size_t i = 0; i < a_; ++i)
            if (u.e[i]) return 2;
        if (b_ && u.e[a_] == 2) return 2;
        return 1;
    }

    /// Lexicographic rank of the exponent tuple (first coordinate most
    /// significant), so rank order equals lexicographic order.
    std::size_t rank(const GroupElement& u) const {
        require(u);
        std::size_t r = 0;
        for (std::size_t i = 0; i < a_; ++i) r = r * 2 + u.e[i];
        if (b_) r = r * 4 + u.e[a_];
        return r;
    }

    GroupElement unrank(std::size_t r) const {
        GroupElement u = identity();
        if (b_) {
            u.e[a_] = static_cast<std::uint8_t>(r & 3u);
            r >>= 2;
        }
        for (std::size_t i = a_; i-- > 0;) {
            u.e[i] = static_cast<std::uint8_t>(r & 1u);
            r >>= 1;
        }
        return u;
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(size());
        for (std::size_t r = 0; r < size(); ++r) out.push_back(unrank(r));
        return out;
    }

    /// Standard generators: the unit exponent tuples (Z4 generator last).
    std::vector<GroupElement> generators() const {
        std::vector<GroupElement> g;
        for (std::size_t i = 0; i < a_ + b_; ++i) {
            GroupElement u = identity();
            u.e[i] = 1;
            g.push_back(u);
        }
        return g;
    }

    /// GF(2) image of an element in T/T^2 as a bitmask (coordinates mod 2).
    std::uint64_t mod2_mask(const GroupElement& u) const {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < a_ + b_; ++i)
            if (u.e[i] & 1u) m |= (std::uint64_t{1} << i);
        return m;
    }

    /// Generator of T^2 when a Z4 factor is present (the distinguished
    /// element): exponent 2 in the Z4 coordinate.
    std::optional<GroupElement> square_generator() const {
        if (!b_) return std::nullopt;
        GroupElement f = identity();
        f.e[a_] = 2;
        return f;
    }

private:
    std::size_t a_ = 0, b_ = 0;
};

inline std::string format_group(const FinAbelianGroup& g) {
    std::string s;
    if (g.z2_count() > 0 || g.z4_count() == 0)
        s = "Z2^" + std::to_string(g.z2_count());
    if (g.z4_count()) {
        if (!s.empty()) s += " x ";
        s += "Z4";
    }
    return s;
}

FinAbelianGroup parse_group(std::string_view text);

inline std::string format_element(const GroupElement& u) {
    std::string s = "(";
    for (std::size_t i = 0; i < u.e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(static_cast<int>(u.e[i]));
    }
    s += ')';
    return s;
}

GroupElement parse_element(std::string_view text, const FinAbelianGroup& g);

/// Subgroup of a FinAbelianGroup, stored as the sorted list of element ranks.
class Subgroup {
public:
    Subgroup() = default;

    static Subgroup trivial(const FinAbelianGroup& g) {
        return span(g, {});
    }
    static Subgroup whole(const FinAbelianGroup& g) {
        Subgroup s;
        s.parent_ = g;
        for (std::size_t r = 0; r < g.size(); ++r) s.ranks_.push_back(r);
        return s;
    }
    static Subgroup span(const FinAbelianGroup& g, const std::vector<GroupElement>& gens) {
        Subgroup s;
        s.parent_ = g;
        std::vector<bool> seen(g.size(), false);
        std::vector<GroupElement> frontier{g.identity()};
        seen[g.rank(g.identity())] = true;
        while (!frontier.empty()) {
            GroupElement cur = frontier.back();
            frontier.pop_back();
            for (const auto& gen : gens) {
                GroupElement nxt = g.mul(cur, gen);
                std::size_t r = g.rank(nxt);
                if (!seen[r]) {
                    seen[r] = true;
                    frontier.push_back(nxt);
                }
            }
        }
        for (std::size_t r = 0; r < g.size(); ++r)
            if (seen[r]) s.ranks_.push_back(r);
        return s;
    }
    static Subgroup from_elements(const FinAbelianGroup& g, std::vector<GroupElement> elems) {
        Subgroup s;
        s.parent_ = g;
        for (const auto& t : elems) s.ranks_.push_back(g.rank(t));
        std::sort(s.ranks_.begin(), s.ranks_.end());
        s.ranks_.erase(std::unique(s.ranks_.begin(), s.ranks_.end()), s.ranks_.end());
        if (!s.is_closed())
            throw GdaError("E_GROUP", "element set is not a subgroup");
        return s;
    }

    const FinAbelianGroup& parent() const { return parent_; }
    std::size_t size() const { return ranks_.size(); }
    const std::vector<std::size_t>& ranks() const { return ranks_; }

    bool contains(const GroupElement& t) const {
        if (!parent_.contains(t)) return false;
        return std::binary_search(ranks_.begin(), ranks_.end(), parent_.rank(t));
    }
    bool contains_rank(std::size_t r) const {
        return std::binary_search(ranks_.begin(), ranks_.end(), r);
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        out.reserve(ranks_.size());
        for (std::size_t r : ranks_) out.push_back(parent_.unrank(r));
        return out;
    }

    bool is_closed() const {
        for (std::size_t r : ranks_)
            for (std::size_t s : ranks_) {
                GroupElement p = parent_.mul(parent_.unrank(r), parent_.unrank(s));
                if (!contains_rank(parent_.rank(p))) return false;
            }
        return contains_rank(parent_.rank(parent_.identity()));
    }

    bool is_elementary() const {
        for (std::size_t r : ranks_)
            if (parent_.order_of(parent_.unrank(r)) > 2) return false;
        return true;
    }

    /// { t in this : t^2 = e }
    Subgroup two_torsion() const {
        Subgroup s;
        s.parent_ = parent_;
        for (std::size_t r : ranks_) {
            GroupElement t = parent_.unrank(r);
            if (parent_.order_of(t) <= 2) s.ranks_.push_back(r);
        }
        return s;
    }

    /// { t^2 : t in this }
    Subgroup squares() const {
        std::vector<std::size_t> sq;
        for (std::size_t r : ranks_) {
            GroupElement t = parent_.unrank(r);
            sq.push_back(parent_.rank(parent_.mul(t, t)));
        }
        std::sort(sq.begin(), sq.end());
        sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
        Subgroup s;
        s.parent_ = parent_;
        s.ranks_ = std::move(sq);
        return s;
    }

    /// Cosets of this subgroup inside a larger subgroup, each as a sorted
    /// rank list; the subgroup itself comes first.
    std::vector<std::vector<std::size_t>> cosets_in(const Subgroup& big) const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> used(parent_.size(), false);
        for (std::size_t r : big.ranks_) {
            if (used[r]) continue;
            GroupElement rep = parent_.unrank(r);
            std::vector<std::size_t> coset;
            for (std::size_t h : ranks_) {
                std::size_t x = parent_.rank(parent_.mul(rep, parent_.unrank(h)));
                coset.push_back(x);
                used[x] = true;
            }
            std::sort(coset.begin(), coset.end());
            out.push_back(std::move(coset));
        }
        std::sort(out.begin() + 1, out.end());
        return out;
    }

    /// Greedy independent generating set; valid as a basis when the subgroup
    /// is elementary abelian.
    std::vector<GroupElement> f2_basis() const {
        if (!is_elementary())
            throw GdaError("E_GROUP", "f2_basis requires an elementary abelian subgroup");
        std::vector<GroupElement> basis;
        Subgroup acc = Subgroup::trivial(parent_);
        for (std::size_t r : ranks_) {
            GroupElement t = parent_.unrank(r);
            if (acc.contains(t)) continue;
            basis.push_back(t);
            std::vector<GroupElement> gens = basis;
            acc = Subgroup::span(parent_, gens);
        }
        return basis;
    }

    friend bool operator==(const Subgroup& x, const Subgroup& y) {
        return x.parent_ == y.parent_ && x.ranks_ == y.ranks_;
    }

private:
    FinAbelianGroup parent_;
    std::vector<std::size_t> ranks_;
};

/// Homomorphism between the canonical groups, given by generator images.
struct GroupHom {
    FinAbelianGroup from, to;
    std::vector<GroupElement> images; // one per standard generator of `from`

    bool valid() const {
        if (images.size() != from.coord_count()) return false;
        auto gens = from.generators();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (!to.contains(images[i])) return false;
            std::size_t go = from.order_of(gens[i]);
            if (to.order_of(images[i]) > go) return false; // image order must divide
        }
        return true;
    }

    GroupElement apply(const GroupElement& t) const {
        from.require(t);
        GroupElement r = to.identity();
        for (std::size_t i = 0; i < images.size(); ++i)
            for (std::uint8_t p = 0; p < t.e[i]; ++p) r = to.mul(r, images[i]);
        return r;
    }

    bool is_injective_on(const Subgroup& dom) const {
        std::vector<bool> hit(to.size(), false);
        for (std::size_t r : dom.ranks()) {
            std::size_t img = to.rank(apply(dom.parent().unrank(r)));
            if (hit[img]) return false;
            hit[img] = true;
        }
        return true;
    }

    bool is_automorphism() const {
        if (!(from == to) || !valid()) return false;
        return is_injective_on(Subgroup::whole(from));
    }
};

struct ProductGroup {
    FinAbelianGroup group;
    GroupHom embed_left, embed_right;
};

/// Direct product with canonical coordinate order: left factor's Z2
/// exponents, then the right factor's, Z4 exponent last.
inline ProductGroup direct_product(const FinAbelianGroup& g, const FinAbelianGroup& h) {
    if (g.z4_count() + h.z4_count() > 1)
        throw GdaError("E_GROUP", "product would need more than one Z4 factor");
    FinAbelianGroup p(g.z2_count() + h.z2_count(), g.z4_count() + h.z4_count());
    GroupHom el{g, p, {}}, er{h, p, {}};
    for (std::size_t i = 0; i < g.z2_count(); ++i) {
        GroupElement u = p.identity();
        u.e[i] = 1;
        el.images.push_back(u);
    }
    if (g.z4_count()) {
        GroupElement u = p.identity();
        u.e[p.z2_count()] = 1;
        el.images.push_back(u);
    }
    for (std::size_t i = 0; i < h.z2_count(); ++i) {
        GroupElement u = p.identity();
        u.e[g.z2_count() + i] = 1;
        er.images.push_back(u);
    }
    if (h.z4_count()) {
        GroupElement u = p.identity();
        u.e[p.z2_count()] = 1;
        er.images.push_back(u);
    }
    return {p, el, er};
}

struct QuotientGroup {
    FinAbelianGroup group;
    GroupHom projection;
};

/// Quotient by an order-2 subgroup <f>.
inline QuotientGroup quotient_by_order2(const FinAbelianGroup& g, const GroupElement& f) {
    g.require(f);
    if (g.order_of(f) != 2) throw GdaError("E_GROUP", "quotient generator must have order 2");
    std::size_t a = g.z2_count(), b = g.z4_count();
    std::size_t pivot = a;
    for (std::size_t i = 0; i < a; ++i)
        if (f.e[i]) {
            pivot = i;
            break;
        }
    if (pivot == a) {
        // f = (0,...,0,2) generates T^2: the Z4 coordinate collapses mod 2.
        FinAbelianGroup q(a + 1, 0);
        GroupHom proj{g, q, {}};
        for (std::size_t i = 0; i <= a; ++i) {
            GroupElement u = q.identity();
            u.e[i] = 1;
            proj.images.push_back(u);
        }
        return {q, proj};
    }
    // Basis change {e_pivot, ...} -> {f, ...}, then drop the f coordinate:
    // e_pivot maps to the remainder of f, every other generator to its slot.
    FinAbelianGroup q(a - 1, b);
    GroupHom proj{g, q, {}};
    for (std::size_t i = 0; i < a + b; ++i) {
        GroupElement u = q.identity();
        if (i == pivot) {
            for (std::size_t j = 0; j < a + b; ++j) {
                if (j == pivot || !f.e[j]) continue;
                std::size_t pos = j < pivot ? j : j - 1;
                u.e[pos] = f.e[j];
            }
        } else {
            std::size_t pos = i < pivot ? i : i - 1;
            u.e[pos] = 1;
        }
        proj.images.push_back(u);
    }
    return {q, proj};
}

// ---------------------------------------------------------------------------
// Literals.

[[noreturn]] inline void bad_group_literal(std::string_view text) {
    throw GdaError("E_PARSE", "bad group literal: " + std::string(text));
}

inline FinAbelianGroup parse_group(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s == "Z4") return FinAbelianGroup(0, 1);
    if (s.rfind("Z2^", 0) != 0) bad_group_literal(text);
    std::size_t pos = 3, a = 0;
    if (pos >= s.size() || !isdigit(static_cast<unsigned char>(s[pos]))) bad_group_literal(text);
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
        a = a * 10 + static_cast<std::size_t>(s[pos++] - '0');
    if (pos == s.size()) return FinAbelianGroup(a, 0);
    if (s.substr(pos) == "xZ4") return FinAbelianGroup(a, 1);
    bad_group_literal(text);
}

inline GroupElement parse_element(std::string_view text, const FinAbelianGroup& g) {
    auto fail = [&](const std::string& msg) -> void {
        throw GdaError("E_PARSE", "bad element literal '" + std::string(text) + "': " + msg);
    };
    std::size_t pos = 0;
    auto skip = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    skip();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    ++pos;
    GroupElement u;
    skip();
    if (pos < text.size() && text[pos] == ')') {
        ++pos;
    } else {
        for (;;) {
            skip();
            std::size_t start = pos;
            while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected digit");
            int v = std::stoi(std::string(text.substr(start, pos - start)));
            if (v < 0 || v > 3) fail("exponent out of range");
            u.e.push_back(static_cast<std::uint8_t>(v));
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                break;
            }
            fail("expected ',' or ')'");
        }
    }
    if (!g.contains(u)) fail("element does not lie in " + format_group(g));
    return u;
}

} // namespace gda
