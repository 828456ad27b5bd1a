#pragma once

#include "gda/group.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace gda {

// ---------------------------------------------------------------------------
// Small GF(2) linear algebra on bitmask rows (dimensions stay below 64).

namespace gf2 {

using Vec = std::uint64_t;
using Rows = std::vector<Vec>;

/// Row-reduce in place; returns pivot column per row.
inline std::vector<int> rref(Rows& rows, std::size_t ncols) {
    std::vector<int> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv] >> col & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r] >> col & 1u)) rows[r] ^= rows[rank];
        pivots.push_back(static_cast<int>(col));
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

/// Triangular span with combination tracking. Rows are kept ordered by
/// ascending lead (lowest set) bit, so a single ascending reduction pass is
/// complete: eliminating a lead bit only flips higher bits.
struct Triangular {
    Rows rows;
    Rows combos;

    static Vec lead(Vec v) { return v & ~(v - 1); }

    Vec reduce(Vec v, Vec* combo_out = nullptr) const {
        Vec cmb = 0;
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (v & lead(rows[t])) {
                v ^= rows[t];
                cmb ^= combos[t];
            }
        }
        if (combo_out) *combo_out = cmb;
        return v;
    }

    /// Insert v (tagged by combo); returns false if dependent.
    bool insert(Vec v, Vec combo) {
        Vec cmb = 0;
        v = reduce(v, &cmb);
        if (!v) return false;
        combo ^= cmb;
        std::size_t pos = 0;
        while (pos < rows.size() && lead(rows[pos]) < lead(v)) ++pos;
        rows.insert(rows.begin() + pos, v);
        combos.insert(combos.begin() + pos, combo);
        return true;
    }
};

/// Coordinates of v in the span of basis rows, or nullopt.
inline std::optional<Vec> solve(const Rows& basis, Vec v) {
    Triangular tri;
    for (std::size_t i = 0; i < basis.size(); ++i) tri.insert(basis[i], Vec{1} << i);
    Vec combo = 0;
    if (tri.reduce(v, &combo)) return std::nullopt;
    return combo;
}

/// Kernel basis of the matrix given by rows (n x n).
inline Rows kernel(const Rows& m, std::size_t n) {
    Rows work = m;
    auto pivots = rref(work, n);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Rows out;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v = Vec{1} << free;
        for (std::size_t r = 0; r < work.size(); ++r)
            if (work[r] >> free & 1u) v |= Vec{1} << pivots[r];
        out.push_back(v);
    }
    return out;
}

} // namespace gf2

// ---------------------------------------------------------------------------

struct FormType {
    enum Tag { TypeI, TypeII, NotRegular } tag = NotRegular;
    std::optional<GroupElement> semineutral; // present iff TypeII

    bool regular() const { return tag != NotRegular; }
    friend bool operator==(const FormType&, const FormType&) = default;
};

/// {+1,-1}-valued alternating bicharacter on a subgroup domain. Values only
/// depend on coordinates mod squares (beta(t^2, u) = +1 always), so the form
/// is stored as a GF(2) Gram matrix over a basis of the domain's image in
/// T/T^2 and pulled back through cached coordinates.
class Bicharacter {
public:
    Bicharacter() = default;

    /// Validate a full value table and compress it. `table(u,v)` must return
    /// +-1 for all u,v in the domain. Throws E_FORM on an axiom violation.
    template <class Fn>
    static Bicharacter from_table(const Subgroup& domain, Fn&& table) {
        const FinAbelianGroup& g = domain.parent();
        auto elems = domain.elements();
        for (const auto& u : elems) {
            int duu = table(u, u);
            if (duu != 1)
                throw GdaError("E_FORM", "not alternating: beta(t,t) = -1 at t = " +
                                             format_element(u));
            for (const auto& v : elems) {
                int val = table(u, v);
                if (val != 1 && val != -1)
                    throw GdaError("E_FORM", "bicharacter value must be +-1");
                for (const auto& w : elems) {
                    if (table(g.mul(u, v), w) != table(u, w) * table(v, w))
                        throw GdaError("E_FORM",
                                       "not multiplicative in the first variable at (" +
                                           format_element(u) + "," + format_element(v) + "," +
                                           format_element(w) + ")");
                }
            }
        }
        return from_table_unchecked(domain, table);
    }

    /// Compress a valid alternating bicharacter. The stored form lives on the
    /// image of the domain in T/T^2; a bicharacter that pairs an ambient
    /// square nontrivially cannot be represented and is rejected.
    template <class Fn>
    static Bicharacter from_table_unchecked(const Subgroup& domain, Fn&& table) {
        Bicharacter b;
        b.domain_ = domain;
        b.build_basis();
        std::size_t r = b.basis_.size();
        b.gram_.assign(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (table(b.basis_[i], b.basis_[j]) == -1) b.gram_[i] |= gf2::Vec{1} << j;
        auto elems = domain.elements();
        for (const auto& u : elems)
            for (const auto& v : elems)
                if (b.value(u, v) != table(u, v))
                    throw GdaError("E_FORM",
                                   "bicharacter does not factor through mod-2 coordinates "
                                   "(it pairs a square of the ambient group nontrivially)");
        return b;
    }

    const Subgroup& domain() const { return domain_; }

    int value(const GroupElement& u, const GroupElement& v) const {
        gf2::Vec cu = coords_of(u), cv = coords_of(v);
        int bits = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (cu >> i & 1u) bits ^= static_cast<int>(__builtin_popcountll(gram_[i] & cv) & 1);
        return bits ? -1 : 1;
    }

    Subgroup radical() const {
        auto ker = gf2::kernel(gram_, basis_.size());
        std::vector<GroupElement> members;
        const FinAbelianGroup& g = domain_.parent();
        for (std::size_t r : domain_.ranks()) {
            GroupElement t = g.unrank(r);
            gf2::Vec c = coords_of(t);
            auto sol = gf2::solve(ker, c);
            if (sol) members.push_back(t);
        }
        return Subgroup::from_elements(g, members);
    }

    friend bool operator==(const Bicharacter& x, const Bicharacter& y) {
        if (!(x.domain_ == y.domain_)) return false;
        auto elems = x.domain_.elements();
        for (const auto& u : elems)
            for (const auto& v : elems)
                if (x.value(u, v) != y.value(u, v)) return false;
        return true;
    }

private:
    void build_basis() {
        const FinAbelianGroup& g = domain_.parent();
        gf2::Triangular tri; // triangular basis of the image space in T/T^2
        for (std::size_t r : domain_.ranks()) {
            GroupElement t = g.unrank(r);
            if (tri.insert(g.mod2_mask(t), 0)) basis_.push_back(t);
        }
        // Cache GF(2) coordinates of every domain element in that basis.
        gf2::Rows basis_masks;
        for (const auto& t : basis_) basis_masks.push_back(g.mod2_mask(t));
        for (std::size_t r : domain_.ranks()) {
            GroupElement t = g.unrank(r);
            auto sol = gf2::solve(basis_masks, g.mod2_mask(t));
            if (!sol) throw GdaError("E_INTERNAL", "element escapes its own mod-2 span");
            coords_[r] = *sol;
        }
    }

    gf2::Vec coords_of(const GroupElement& t) const {
        auto it = coords_.find(domain_.parent().rank(t));
        if (it == coords_.end())
            throw GdaError("E_FORM", "element outside bicharacter domain: " + format_element(t));
        return it->second;
    }

    Subgroup domain_;
    std::vector<GroupElement> basis_;
    gf2::Rows gram_;
    std::map<std::size_t, gf2::Vec> coords_;
};

/// {+1,-1}-valued quadratic form on an elementary abelian subgroup, stored as
/// a full value table.
class QuadraticForm {
public:
    QuadraticForm() = default;

    template <class Fn>
    static QuadraticForm from_values(const Subgroup& domain, Fn&& mu) {
        if (!domain.is_elementary())
            throw GdaError("E_FORM", "quadratic form domain must be elementary abelian");
        QuadraticForm q;
        q.domain_ = domain;
        for (std::size_t r : domain.ranks()) {
            int v = mu(domain.parent().unrank(r));
            if (v != 1 && v != -1) throw GdaError("E_FORM", "quadratic form value must be +-1");
            q.values_[r] = v;
        }
        if (q.value(domain.parent().identity()) != 1)
            throw GdaError("E_FORM", "quadratic form must take +1 at the identity");
        return q;
    }

    const Subgroup& domain() const { return domain_; }

    int value(const GroupElement& t) const {
        auto it = values_.find(domain_.parent().rank(t));
        if (it == values_.end())
            throw GdaError("E_FORM", "element outside form domain: " + format_element(t));
        return it->second;
    }

    /// Associated alternating bicharacter beta(u,v) = mu(uv) mu(u) mu(v);
    /// validates that the polarization is bimultiplicative (i.e. that mu
    /// really is quadratic).
    Bicharacter polarize() const {
        const FinAbelianGroup& g = domain_.parent();
        try {
            return Bicharacter::from_table(domain_, [&](const GroupElement& u,
                                                        const GroupElement& v) {
                return value(g.mul(u, v)) * value(u) * value(v);
            });
        } catch (const GdaError& e) {
            throw GdaError("E_FORM", std::string("polarization is not a bicharacter (map is "
                                                 "not quadratic): ") +
                                         e.what());
        }
    }

    friend bool operator==(const QuadraticForm& x, const QuadraticForm& y) {
        return x.domain_ == y.domain_ && x.values_ == y.values_;
    }

    const std::map<std::size_t, int>& values() const { return values_; }

private:
    Subgroup domain_;
    std::map<std::size_t, int> values_;
};

/// Symplectic family: pairs (a_i, b_i) with beta(a_i,b_i) = -1 and all other
/// pairings trivial; optional trailing semineutral element.
struct SymplecticFamily {
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
    std::optional<GroupElement> trailing;

    bool validate(const Bicharacter& beta) const {
        std::vector<GroupElement> all;
        for (const auto& [a, b] : pairs) {
            all.push_back(a);
            all.push_back(b);
        }
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j) {
                bool hyperbolic = (i / 2 == j / 2) && (i != j);
                int expect = hyperbolic ? -1 : 1;
                if (beta.value(all[i], all[j]) != expect) return false;
            }
        if (trailing)
            for (const auto& t : all)
                if (beta.value(*trailing, t) != 1) return false;
        return true;
    }
};

/// Radical-based type of an alternating bicharacter; when a quadratic form is
/// supplied, type II additionally requires mu(f) = -1.
inline FormType radical_and_type(const Bicharacter& beta,
                                 const std::optional<QuadraticForm>& mu = std::nullopt) {
    Subgroup rad = beta.radical();
    const FinAbelianGroup& g = beta.domain().parent();
    if (rad.size() == 1) return FormType{FormType::TypeI, std::nullopt};
    if (rad.size() == 2) {
        GroupElement f = g.unrank(rad.ranks()[0] == g.rank(g.identity()) ? rad.ranks()[1]
                                                                         : rad.ranks()[0]);
        if (mu) {
            if (!mu->domain().contains(f) || mu->value(f) != -1)
                return FormType{FormType::NotRegular, std::nullopt};
        }
        return FormType{FormType::TypeII, f};
    }
    return FormType{FormType::NotRegular, std::nullopt};
}

/// Constructive symplectic basis extraction. Type I: full symplectic basis.
/// Type II over an elementary group: basis pairs plus the trailing f. Type II
/// with a Z4 factor: the last pair has b_m of order 4 and b_m^2 = f.
/// Hyperbolic pairs are chosen by lexicographic scan, order-2 pairs first;
/// only the final pair of the Z4 case may involve an order-4 element.
inline SymplecticFamily symplectic_basis(const Bicharacter& beta) {
    const FinAbelianGroup& g = beta.domain().parent();
    FormType type = radical_and_type(beta);
    if (!type.regular()) throw GdaError("E_FORM", "symplectic basis requires a regular form");

    SymplecticFamily fam;
    std::vector<GroupElement> current = beta.domain().elements();
    auto orthogonal_to = [&](const std::vector<GroupElement>& dom, const GroupElement& a,
                             const GroupElement& b) {
        std::vector<GroupElement> out;
        for (const auto& t : dom)
            if (beta.value(a, t) == 1 && beta.value(b, t) == 1) out.push_back(t);
        return out;
    };

    for (;;) {
        if (current.size() == 1) break; // trivial remainder
        if (current.size() == 2) {
            // remainder {e, f} with trivial pairing: the semineutral element
            GroupElement f = g.order_of(current[0]) == 1 ? current[1] : current[0];
            fam.trailing = f;
            break;
        }
        // Prefer a hyperbolic pair of order-2 elements.
        std::optional<std::pair<GroupElement, GroupElement>> found;
        for (const auto& u : current) {
            if (g.order_of(u) != 2) continue;
            for (const auto& v : current) {
                if (g.order_of(v) != 2) continue;
                if (beta.value(u, v) == -1) {
                    found = {u, v};
                    break;
                }
            }
            if (found) break;
        }
        if (!found) {
            // Z4 terminal step: order-2 partner with an order-4 element.
            for (const auto& u : current) {
                if (g.order_of(u) != 2) continue;
                for (const auto& v : current) {
                    if (g.order_of(v) != 4) continue;
                    if (beta.value(u, v) == -1) {
                        found = {u, v};
                        break;
                    }
                }
                if (found) break;
            }
            if (!found)
                throw GdaError("E_FORM", "no hyperbolic pair in a supposedly regular form");
            fam.pairs.push_back(*found);
            break; // remainder is <a_m> x <b_m> with b_m^2 = f
        }
        fam.pairs.push_back(*found);
        current = orthogonal_to(current, found->first, found->second);
    }

    if (!fam.validate(beta))
        throw GdaError("E_INTERNAL", "constructed family is not symplectic");
    std::vector<GroupElement> gens;
    for (const auto& [a, b] : fam.pairs) {
        gens.push_back(a);
        gens.push_back(b);
    }
    if (fam.trailing) gens.push_back(*fam.trailing);
    if (!(Subgroup::span(g, gens) == beta.domain()))
        throw GdaError("E_INTERNAL", "symplectic family does not span the domain");
    return fam;
}

/// Arf invariant of a type-I quadratic form, computed over a symplectic basis
/// by the product formula and cross-checked against the majority value.
inline int arf(const QuadraticForm& mu) {
    Bicharacter beta = mu.polarize();
    FormType type = radical_and_type(beta, mu);
    if (type.tag != FormType::TypeI)
        throw GdaError("E_FORM", "Arf invariant requires a type-I form");
    SymplecticFamily fam = symplectic_basis(beta);
    int product = 1;
    for (const auto& [a, b] : fam.pairs)
        if (mu.value(a) == -1 && mu.value(b) == -1) product = -product;
    // Majority route: Arf is the value mu assumes most often.
    std::size_t plus = 0, minus = 0;
    for (const auto& [rank, v] : mu.values()) {
        (void)rank;
        (v == 1 ? plus : minus)++;
    }
    int majority = plus == minus ? 0 : (plus > minus ? 1 : -1);
    if (majority != product)
        throw GdaError("E_INTERNAL", "Arf product formula disagrees with the majority value");
    return product;
}

/// Arf of mu via the product formula over an explicitly given symplectic
/// family (no cross-check); used for basis-independence experiments.
inline int arf_over_family(const QuadraticForm& mu, const SymplecticFamily& fam) {
    int product = 1;
    for (const auto& [a, b] : fam.pairs)
        if (mu.value(a) == -1 && mu.value(b) == -1) product = -product;
    return product;
}

/// Map nu on T \ K whose translates mu_g(k) = nu(gk) nu(g) are quadratic
/// forms on K sharing one polarization.
class NiceMap {
public:
    NiceMap() = default;

    template <class Fn>
    static NiceMap from_values(const Subgroup& t, const Subgroup& k, Fn&& nu) {
        if (2 * k.size() != t.size())
            throw GdaError("E_FORM", "K must have index 2 in T");
        if (!k.is_elementary())
            throw GdaError("E_FORM", "K must be elementary abelian");
        for (std::size_t r : k.ranks())
            if (!t.contains_rank(r)) throw GdaError("E_FORM", "K must be a subgroup of T");
        NiceMap n;
        n.t_ = t;
        n.k_ = k;
        for (std::size_t r : t.ranks()) {
            if (k.contains_rank(r)) continue;
            int v = nu(t.parent().unrank(r));
            if (v != 1 && v != -1) throw GdaError("E_FORM", "nice map value must be +-1");
            n.values_[r] = v;
        }
        return n;
    }

    const Subgroup& t() const { return t_; }
    const Subgroup& k() const { return k_; }

    int value(const GroupElement& x) const {
        auto it = values_.find(t_.parent().rank(x));
        if (it == values_.end())
            throw GdaError("E_FORM", "element outside T \\ K: " + format_element(x));
        return it->second;
    }

    const std::map<std::size_t, int>& values() const { return values_; }

    GroupElement least_domain_element() const {
        return t_.parent().unrank(values_.begin()->first);
    }

    /// The induced map mu_g(k) = nu(gk) nu(g)^{-1} on K.
    QuadraticForm mu_at(const GroupElement& gelem) const {
        const FinAbelianGroup& g = t_.parent();
        int base = value(gelem);
        return QuadraticForm::from_values(
            k_, [&](const GroupElement& k) { return value(g.mul(gelem, k)) * base; });
    }

    NiceMap negated() const {
        NiceMap n = *this;
        for (auto& [r, v] : n.values_) {
            (void)r;
            v = -v;
        }
        return n;
    }

    friend bool operator==(const NiceMap& x, const NiceMap& y) {
        return x.t_ == y.t_ && x.k_ == y.k_ && x.values_ == y.values_;
    }

private:
    Subgroup t_, k_;
    std::map<std::size_t, int> values_;
};

struct NiceMapCheck {
    NiceMap map;
    FormType type;
    std::optional<int> sign; // nu(g) * Arf(mu_g) for type I
};

/// Validate a nice map: every translate mu_g must be quadratic with one
/// shared polarization (the first check guarantees the rest; all are
/// asserted). Reports the type and, for type I, the sign.
inline NiceMapCheck check_nice_map(const NiceMap& nu) {
    const FinAbelianGroup& g = nu.t().parent();
    GroupElement g0 = nu.least_domain_element();
    QuadraticForm mu0 = nu.mu_at(g0);
    Bicharacter beta = mu0.polarize(); // throws if mu0 is not quadratic
    for (const auto& [r, v] : nu.values()) {
        (void)v;
        GroupElement h = g.unrank(r);
        QuadraticForm muh = nu.mu_at(h);
        GroupElement shift = g.mul(g.inv(g0), h);
        for (std::size_t kr : nu.k().ranks()) {
            GroupElement k = g.unrank(kr);
            if (muh.value(k) != mu0.value(k) * beta.value(shift, k))
                throw GdaError("E_INTERNAL", "nice map translates have inconsistent polarizations");
        }
    }
    FormType type = radical_and_type(beta, mu0);
    NiceMapCheck out{nu, type, std::nullopt};
    if (type.tag == FormType::TypeI) {
        int s = nu.value(g0) * arf(mu0);
        for (const auto& [r, v] : nu.values()) {
            GroupElement h = g.unrank(r);
            if (v * arf(nu.mu_at(h)) != s)
                throw GdaError("E_INTERNAL", "nu(g) * Arf(mu_g) is not constant");
        }
        out.sign = s;
    }
    return out;
}

/// All quadratic forms on an elementary abelian subgroup, optionally filtered
/// to a fixed polarization. Cost grows with 2^(basis size) when beta is
/// given, and with 2^(r(r+1)/2) otherwise.
inline std::vector<QuadraticForm> enumerate_quadratic_forms(
    const Subgroup& domain, const std::optional<Bicharacter>& beta = std::nullopt) {
    if (domain.size() > 1024)
        throw GdaError("E_FORM", "enumeration domain capped at order 1024");
    if (!domain.is_elementary())
        throw GdaError("E_FORM", "quadratic forms live on elementary abelian groups");
    const FinAbelianGroup& g = domain.parent();
    std::vector<GroupElement> basis = domain.f2_basis();
    std::size_t r = basis.size();

    // Basis coordinates of every domain element, by direct span enumeration
    // (robust also when the domain meets the ambient T^2).
    std::map<std::size_t, std::size_t> coord_of;
    coord_of[g.rank(g.identity())] = 0;
    {
        std::vector<GroupElement> built{g.identity()};
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<GroupElement> next = built;
            for (const auto& u : built) {
                GroupElement w = g.mul(u, basis[i]);
                coord_of[g.rank(w)] = coord_of[g.rank(u)] | (std::size_t{1} << i);
                next.push_back(w);
            }
            built = std::move(next);
        }
    }

    // Candidate Gram values on basis pairs.
    std::vector<std::vector<std::vector<int>>> grams;
    if (beta) {
        std::vector<std::vector<int>> gram(r, std::vector<int>(r, 1));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) gram[i][j] = beta->value(basis[i], basis[j]);
        grams.push_back(std::move(gram));
    } else {
        std::size_t npairs = r * (r - 1) / 2;
        for (std::size_t mask = 0; mask < (std::size_t{1} << npairs); ++mask) {
            std::vector<std::vector<int>> gram(r, std::vector<int>(r, 1));
            std::size_t bit = 0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j, ++bit)
                    if (mask >> bit & 1u) gram[i][j] = gram[j][i] = -1;
            grams.push_back(std::move(gram));
        }
    }

    auto gram_value = [&](const std::vector<std::vector<int>>& gram, std::size_t cu,
                          std::size_t cv) {
        int val = 1;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if ((cu >> i & 1u) && (cv >> j & 1u) && gram[i][j] == -1) val = -val;
        return val;
    };

    std::vector<QuadraticForm> out;
    for (const auto& gram : grams) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
            // Values on the basis extend uniquely via mu(uv) = mu(u) mu(v) beta(u,v).
            std::map<std::size_t, int> table;
            for (const auto& [rank, cu] : coord_of) {
                (void)rank;
                int v = 1;
                std::size_t partial = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!(cu >> i & 1u)) continue;
                    int mv = (mask >> i & 1u) ? -1 : 1;
                    v *= mv * gram_value(gram, partial, std::size_t{1} << i);
                    partial |= std::size_t{1} << i;
                }
                table[rank] = v;
            }
            out.push_back(QuadraticForm::from_values(
                domain, [&](const GroupElement& t) { return table.at(g.rank(t)); }));
        }
    }
    return out;
}

} // namespace gda
