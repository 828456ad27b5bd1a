#pragma once

#include "gda/forms.hpp"
#include "gda/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gda {

/// Matrix algebra with a grading: homogeneous components indexed by elements
/// of an ambient group, each given by a list of matrices spanning it over R.
template <ScalarRing S>
struct GradedAlgebra {
    FinAbelianGroup group; // ambient group
    std::size_t n = 1;     // matrix side
    std::map<std::size_t, std::vector<Matrix<S>>> components; // degree rank -> basis

    static constexpr Kind scalar_kind = scalar_traits<S>::kind;

    std::vector<GroupElement> support() const {
        std::vector<GroupElement> out;
        for (const auto& [r, basis] : components)
            if (!basis.empty()) out.push_back(group.unrank(r));
        return out;
    }

    Subgroup support_subgroup() const { return Subgroup::from_elements(group, support()); }

    std::size_t total_real_dim() const {
        std::size_t d = 0;
        for (const auto& [r, basis] : components) {
            (void)r;
            d += basis.size();
        }
        return d;
    }

    const std::vector<Matrix<S>>& component(const GroupElement& g) const {
        static const std::vector<Matrix<S>> empty;
        auto it = components.find(group.rank(g));
        return it == components.end() ? empty : it->second;
    }

    /// Real dimension of the full matrix algebra M_n over the scalar ring.
    std::size_t full_algebra_dim() const { return n * n * scalar_traits<S>::real_dim; }
};

using AnyGraded = std::variant<GradedAlgebra<RealQuad>, GradedAlgebra<Cyclo8>,
                               GradedAlgebra<QuaternionQ2>>;

inline Kind scalar_kind_of(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return alg.scalar_kind; }, a);
}
inline const FinAbelianGroup& group_of(const AnyGraded& a) {
    return std::visit([](const auto& alg) -> const FinAbelianGroup& { return alg.group; }, a);
}
inline std::size_t side_of(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return alg.n; }, a);
}
inline std::size_t total_real_dim_of(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return alg.total_real_dim(); }, a);
}
inline Subgroup support_subgroup_of(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return alg.support_subgroup(); }, a);
}

// ---------------------------------------------------------------------------
// Scalar and matrix promotions used by the tensor realization rules.

inline Matrix<Cyclo8> promote_to_c(const Matrix<RealQuad>& m) {
    Matrix<Cyclo8> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = Cyclo8::from_quad(m.at(r, c));
    return out;
}

inline Matrix<QuaternionQ2> promote_to_h(const Matrix<RealQuad>& m) {
    Matrix<QuaternionQ2> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.at(r, c) = QuaternionQ2::from_quad(m.at(r, c));
    return out;
}

/// Classical embedding H -> M_2(C):
/// w + xi + yj + zk |-> [ w+xi  y+zi ; -y+zi  w-xi ].
inline Matrix<Cyclo8> complexify(const Matrix<QuaternionQ2>& m) {
    Matrix<Cyclo8> out(2 * m.rows(), 2 * m.cols());
    const Cyclo8 iu = Cyclo8::i();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const QuaternionQ2& q = m.at(r, c);
            Cyclo8 w = Cyclo8::from_quad(q.w), x = Cyclo8::from_quad(q.x);
            Cyclo8 y = Cyclo8::from_quad(q.y), z = Cyclo8::from_quad(q.z);
            out.at(2 * r, 2 * c) = w + x * iu;
            out.at(2 * r, 2 * c + 1) = y + z * iu;
            out.at(2 * r + 1, 2 * c) = -y + z * iu;
            out.at(2 * r + 1, 2 * c + 1) = w - x * iu;
        }
    return out;
}

/// 4x4 real matrix of x -> a x conj(b) on H in the ordered basis (1, i, j, k).
inline Matrix<RealQuad> quat_pair_real(const QuaternionQ2& a, const QuaternionQ2& b) {
    static const std::array<QuaternionQ2, 4> units = {
        QuaternionQ2(RealQuad(1)), QuaternionQ2::i(), QuaternionQ2::j(), QuaternionQ2::k()};
    Matrix<RealQuad> out(4, 4);
    QuaternionQ2 bc = b.conj();
    for (std::size_t c = 0; c < 4; ++c) {
        QuaternionQ2 img = a * units[c] * bc;
        out.at(0, c) = img.w;
        out.at(1, c) = img.x;
        out.at(2, c) = img.y;
        out.at(3, c) = img.z;
    }
    return out;
}

/// Realization of M_p(H) (x) M_q(H) inside M_{4pq}(R): the (i,k),(j,l) block
/// is quat_pair_real(a_ij, b_kl).
inline Matrix<RealQuad> kron_hh(const Matrix<QuaternionQ2>& A, const Matrix<QuaternionQ2>& B) {
    std::size_t p = A.rows(), q = B.rows();
    Matrix<RealQuad> out(4 * p * q, 4 * p * q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < q; ++k)
                for (std::size_t l = 0; l < q; ++l) {
                    Matrix<RealQuad> blk = quat_pair_real(A.at(i, j), B.at(k, l));
                    for (std::size_t r = 0; r < 4; ++r)
                        for (std::size_t c = 0; c < 4; ++c)
                            out.at((i * q + k) * 4 + r, (j * q + l) * 4 + c) = blk.at(r, c);
                }
    return out;
}

// ---------------------------------------------------------------------------
// Building blocks: the four gradings with 1-dimensional components and the
// three 2-dimensional coarsened ones.

enum class Block { H1, M2R1, C1, M2C1, H2, M2R2, M2C2 };

inline std::optional<Block> block_from_name(std::string_view name) {
    if (name == "H1") return Block::H1;
    if (name == "M2R1") return Block::M2R1;
    if (name == "C1") return Block::C1;
    if (name == "M2C1") return Block::M2C1;
    if (name == "H2") return Block::H2;
    if (name == "M2R2") return Block::M2R2;
    if (name == "M2C2") return Block::M2C2;
    return std::nullopt;
}

inline std::string block_name(Block b) {
    switch (b) {
        case Block::H1: return "H1";
        case Block::M2R1: return "M2R1";
        case Block::C1: return "C1";
        case Block::M2C1: return "M2C1";
        case Block::H2: return "H2";
        case Block::M2R2: return "M2R2";
        case Block::M2C2: return "M2C2";
    }
    return "?";
}

AnyGraded build_block(Block b);

namespace detail {

template <ScalarRing S>
GradedAlgebra<S> trivial_graded(std::size_t n, const std::vector<S>& units) {
    GradedAlgebra<S> alg;
    alg.group = FinAbelianGroup(0, 0);
    alg.n = n;
    std::vector<Matrix<S>> comp;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (const S& u : units) {
                Matrix<S> m(n, n);
                m.at(r, c) = u;
                comp.push_back(std::move(m));
            }
    alg.components[0] = std::move(comp);
    return alg;
}

} // namespace detail

/// Trivial grading on M_n over the given scalar kind (support = trivial group).
inline AnyGraded build_trivial(Kind kind, std::size_t n) {
    switch (kind) {
        case Kind::R: return detail::trivial_graded<RealQuad>(n, {RealQuad(1)});
        case Kind::C: return detail::trivial_graded<Cyclo8>(n, {Cyclo8(1), Cyclo8::i()});
        case Kind::H:
            return detail::trivial_graded<QuaternionQ2>(
                n, {QuaternionQ2(RealQuad(1)), QuaternionQ2::i(), QuaternionQ2::j(),
                    QuaternionQ2::k()});
    }
    throw GdaError("E_KIND", "unknown kind");
}

// ---------------------------------------------------------------------------
// Validity checking.

struct GradingCheck {
    std::vector<std::string> issues;
    bool spans_full = false;
    std::size_t total_dim = 0;

    bool ok() const { return issues.empty(); }
};

template <ScalarRing S>
GradingCheck check_grading(const GradedAlgebra<S>& alg, bool expect_full = true) {
    GradingCheck out;
    const FinAbelianGroup& g = alg.group;

    for (const auto& [r, basis] : alg.components) {
        if (r >= g.size()) {
            out.issues.push_back("component degree outside the ambient group");
            return out;
        }
        if (basis.empty()) out.issues.push_back("empty component at " + format_element(g.unrank(r)));
        for (const auto& m : basis) {
            if (m.rows() != alg.n || m.cols() != alg.n)
                out.issues.push_back("matrix of wrong shape in component " +
                                     format_element(g.unrank(r)));
            if (m.is_zero())
                out.issues.push_back("zero basis matrix in component " +
                                     format_element(g.unrank(r)));
        }
    }
    if (!out.issues.empty()) return out;

    // Identity must be homogeneous of degree e.
    std::size_t e_rank = g.rank(g.identity());
    auto it_e = alg.components.find(e_rank);
    if (it_e == alg.components.end()) {
        out.issues.push_back("no neutral component");
        return out;
    }
    if (!in_span(flatten_all(it_e->second), flatten_matrix(Matrix<S>::identity(alg.n))))
        out.issues.push_back("identity matrix is not in the neutral component");

    // Direct sum: stacked component bases must be linearly independent over R.
    QuadRows all;
    for (const auto& [r, basis] : alg.components) {
        (void)r;
        for (const auto& m : basis) all.push_back(flatten_matrix(m));
    }
    out.total_dim = all.size();
    std::size_t rank = rank_of(all);
    if (rank != all.size())
        out.issues.push_back("component bases are not linearly independent (rank " +
                             std::to_string(rank) + " of " + std::to_string(all.size()) + ")");
    out.spans_full = (rank == alg.full_algebra_dim());
    if (expect_full && !out.spans_full)
        out.issues.push_back("components span dimension " + std::to_string(rank) +
                             " but the full algebra has dimension " +
                             std::to_string(alg.full_algebra_dim()));

    // Closure: D_g D_h inside D_{gh}.
    std::map<std::size_t, ReducedSpan> spans;
    for (const auto& [r, basis] : alg.components) spans.emplace(r, ReducedSpan(flatten_all(basis)));
    for (const auto& [gr, gbasis] : alg.components) {
        for (const auto& [hr, hbasis] : alg.components) {
            std::size_t tr = g.rank(g.mul(g.unrank(gr), g.unrank(hr)));
            auto target = spans.find(tr);
            for (std::size_t i = 0; i < gbasis.size(); ++i)
                for (std::size_t j = 0; j < hbasis.size(); ++j) {
                    Matrix<S> p = gbasis[i] * hbasis[j];
                    if (target == spans.end()) {
                        if (!p.is_zero())
                            out.issues.push_back(
                                "product of components " + format_element(g.unrank(gr)) + " * " +
                                format_element(g.unrank(hr)) + " lands outside the grading (no "
                                "component at " + format_element(g.unrank(tr)) + ")");
                    } else if (!target->second.contains(flatten_matrix(p))) {
                        out.issues.push_back("product of components " +
                                             format_element(g.unrank(gr)) + " * " +
                                             format_element(g.unrank(hr)) +
                                             " escapes the component at " +
                                             format_element(g.unrank(tr)));
                    }
                }
        }
    }
    return out;
}

/// Structure of the neutral component of a division grading.
template <ScalarRing S>
struct NeutralDescriptor {
    Kind kind = Kind::R; // isomorphism type of D_e: R, C or H
    // kind C: direction with imaginary_direction^2 = j_square * I, j_square < 0
    std::optional<Matrix<S>> imaginary_direction;
    RealQuad j_square;
    // kind H: anticommuting triple with negative square scalars
    std::optional<std::array<Matrix<S>, 3>> quat_triple;
    std::array<RealQuad, 3> quat_squares{};
};

template <ScalarRing S>
struct DivisionCheck {
    std::vector<std::string> issues;
    std::optional<NeutralDescriptor<S>> neutral;
    std::size_t component_dim = 0;

    bool ok() const { return issues.empty() && neutral.has_value(); }
};

namespace detail {

/// Solve M = p*A + q*I over Q(sqrt2); nullopt when M is outside span{A, I}.
template <ScalarRing S>
std::optional<std::pair<RealQuad, RealQuad>> quadratic_split(const Matrix<S>& m,
                                                             const Matrix<S>& a,
                                                             std::size_t n) {
    QuadRows rows{flatten_matrix(a), flatten_matrix(Matrix<S>::identity(n))};
    auto sol = solve_in_span(rows, flatten_matrix(m));
    if (!sol) return std::nullopt;
    return std::make_pair((*sol)[0], (*sol)[1]);
}

} // namespace detail

template <ScalarRing S>
DivisionCheck<S> check_division_grading(const GradedAlgebra<S>& alg) {
    DivisionCheck<S> out;
    const FinAbelianGroup& g = alg.group;

    // Support closure.
    try {
        (void)alg.support_subgroup();
    } catch (const GdaError&) {
        out.issues.push_back("support is not a subgroup");
        return out;
    }

    auto it_e = alg.components.find(g.rank(g.identity()));
    if (it_e == alg.components.end()) {
        out.issues.push_back("no neutral component");
        return out;
    }
    const auto& ebasis = it_e->second;
    std::size_t d = ebasis.size();
    out.component_dim = d;
    for (const auto& [r, basis] : alg.components)
        if (basis.size() != d)
            out.issues.push_back("component at " + format_element(g.unrank(r)) +
                                 " has dimension " + std::to_string(basis.size()) +
                                 " but the neutral component has dimension " + std::to_string(d));
    if (!out.issues.empty()) return out;

    Matrix<S> ident = Matrix<S>::identity(alg.n);
    QuadVec flat_i = flatten_matrix(ident);

    NeutralDescriptor<S> neutral;
    if (d == 1) {
        // D_e = R I.
        if (!in_span({flat_i}, flatten_matrix(ebasis[0]))) {
            out.issues.push_back("1-dimensional neutral component is not spanned by I");
            return out;
        }
        neutral.kind = Kind::R;
    } else if (d == 2) {
        // Find a non-scalar element and decide C vs split by the discriminant
        // of its quadratic minimal polynomial.
        std::optional<Matrix<S>> nonscalar;
        for (const auto& b : ebasis)
            if (!in_span({flat_i}, flatten_matrix(b))) {
                nonscalar = b;
                break;
            }
        if (!nonscalar) {
            out.issues.push_back("2-dimensional neutral component is a multiple of I");
            return out;
        }
        auto pq = detail::quadratic_split(*nonscalar * *nonscalar, *nonscalar, alg.n);
        if (!pq) {
            out.issues.push_back("neutral component is not closed under squaring");
            return out;
        }
        auto [p, q] = *pq;
        RealQuad disc = p * p + RealQuad(4) * q;
        if (disc.is_zero() || disc.sign() > 0) {
            out.issues.push_back(
                "neutral component has nonnegative discriminant: not a division algebra");
            return out;
        }
        neutral.kind = Kind::C;
        Matrix<S> dir = (*nonscalar + *nonscalar) - ident.scaled(p);
        neutral.imaginary_direction = dir;
        neutral.j_square = disc;
    } else if (d == 4) {
        // Quaternion triple from the trace-zero (pure) subspace.
        std::vector<Matrix<S>> pure;
        for (const auto& b : ebasis) {
            if (in_span({flat_i}, flatten_matrix(b))) continue; // scalar: no pure part
            auto pq = detail::quadratic_split(b * b, b, alg.n);
            if (!pq) {
                out.issues.push_back("neutral component element without quadratic minimal "
                                     "polynomial: not a quaternion algebra");
                return out;
            }
            Matrix<S> pb = (b + b) - ident.scaled(pq->first);
            if (!pb.is_zero()) pure.push_back(std::move(pb));
        }
        QuadRows pure_flat = flatten_all(pure);
        if (rank_of(pure_flat) != 3) {
            out.issues.push_back("pure part of the neutral component does not have dimension 3");
            return out;
        }
        Matrix<S> q1 = pure[0];
        auto sq1 = detail::quadratic_split(q1 * q1, q1, alg.n);
        if (!sq1 || !sq1->first.is_zero()) {
            out.issues.push_back("pure element fails to square to a scalar");
            return out;
        }
        RealQuad r1 = sq1->second;
        if (r1.is_zero() || r1.sign() > 0) {
            out.issues.push_back("pure neutral element with nonnegative square: not H");
            return out;
        }
        // Anticommutant of q1 inside the pure subspace.
        QuadRows constraint;
        for (const auto& p : pure) constraint.push_back(flatten_matrix(p * q1 + q1 * p));
        auto combos = left_kernel(constraint);
        std::optional<Matrix<S>> q2;
        for (const auto& cmb : combos) {
            Matrix<S> cand = combine(pure, cmb);
            if (!cand.is_zero()) {
                q2 = cand;
                break;
            }
        }
        if (!q2) {
            out.issues.push_back("no element anticommuting with the first pure element");
            return out;
        }
        auto sq2 = detail::quadratic_split(*q2 * *q2, *q2, alg.n);
        if (!sq2 || !sq2->first.is_zero()) {
            out.issues.push_back("second pure element fails to square to a scalar");
            return out;
        }
        RealQuad r2 = sq2->second;
        if (r2.is_zero() || r2.sign() > 0) {
            out.issues.push_back("second pure element with nonnegative square: not H");
            return out;
        }
        Matrix<S> q3 = q1 * *q2;
        RealQuad r3 = -(r1 * r2);
        if (r3.sign() > 0) {
            out.issues.push_back("triple product with positive square: not H");
            return out;
        }
        neutral.kind = Kind::H;
        neutral.quat_triple = {q1, *q2, q3};
        neutral.quat_squares = {r1, r2, r3};
    } else {
        out.issues.push_back("component dimension " + std::to_string(d) +
                             " is not 1, 2 or 4");
        return out;
    }

    // Every component is D_e X_t for any nonzero X_t in it.
    for (const auto& [r, basis] : alg.components) {
        const Matrix<S>& xt = basis[0];
        if (!xt.inverse()) {
            out.issues.push_back("component " + format_element(g.unrank(r)) +
                                 " has a singular representative");
            continue;
        }
        std::vector<Matrix<S>> prods;
        prods.reserve(d);
        for (const auto& b : ebasis) prods.push_back(b * xt);
        QuadRows pf = flatten_all(prods);
        if (rank_of(pf) != d) {
            out.issues.push_back("D_e X_t degenerates at " + format_element(g.unrank(r)));
            continue;
        }
        ReducedSpan target(flatten_all(basis));
        for (const auto& row : pf)
            if (!target.contains(row))
                out.issues.push_back("D_e X_t escapes the component at " +
                                     format_element(g.unrank(r)));
    }

    if (out.issues.empty()) out.neutral = std::move(neutral);
    return out;
}

// ---------------------------------------------------------------------------
// Centralizer of a set of elements, component by component.

template <ScalarRing S>
GradedAlgebra<S> centralizer(const GradedAlgebra<S>& alg, const std::vector<Matrix<S>>& elems) {
    GradedAlgebra<S> out;
    out.group = alg.group;
    out.n = alg.n;
    for (const auto& [r, basis] : alg.components) {
        QuadRows rows;
        for (const auto& b : basis) {
            QuadVec row;
            for (const auto& s : elems) {
                QuadVec part = flatten_matrix(b * s - s * b);
                row.insert(row.end(), part.begin(), part.end());
            }
            rows.push_back(std::move(row));
        }
        auto combos = left_kernel(rows);
        std::vector<Matrix<S>> newbasis;
        for (const auto& cmb : combos) {
            Matrix<S> m = combine(basis, cmb);
            if (!m.is_zero()) newbasis.push_back(std::move(m));
        }
        if (!newbasis.empty()) out.components[r] = std::move(newbasis);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product grading with fixed matrix realizations per kind pair.

namespace detail {

template <class SA, class SB, class SeOut, class Fn>
GradedAlgebra<SeOut> product_components(const GradedAlgebra<SA>& a, const GradedAlgebra<SB>& b,
                                        std::size_t out_n, Fn&& realize) {
    GradedAlgebra<SeOut> out;
    ProductGroup pg = direct_product(a.group, b.group);
    out.group = pg.group;
    out.n = out_n;
    for (const auto& [ra, basis_a] : a.components) {
        GroupElement ga = pg.embed_left.apply(a.group.unrank(ra));
        for (const auto& [rb, basis_b] : b.components) {
            GroupElement gb = pg.embed_right.apply(b.group.unrank(rb));
            std::size_t target = pg.group.rank(pg.group.mul(ga, gb));
            auto& dest = out.components[target];
            for (const auto& x : basis_a)
                for (const auto& y : basis_b) dest.push_back(realize(x, y));
        }
    }
    return out;
}

} // namespace detail

/// Tensor product grading. Kind pairs are realized as:
///   (R,R) Kronecker; (R,C),(C,R) Kronecker after promoting R entries;
///   (R,H),(H,R) likewise; (H,H) the regular representation of H (x) H on H;
///   (C,H),(H,C) Kronecker over C after embedding H into M_2(C).
/// (C,C) is rejected: the product is not simple.
inline AnyGraded product_grading(const AnyGraded& a, const AnyGraded& b) {
    using GR = GradedAlgebra<RealQuad>;
    using GC = GradedAlgebra<Cyclo8>;
    using GH = GradedAlgebra<QuaternionQ2>;
    return std::visit(
        [&](const auto& x, const auto& y) -> AnyGraded {
            using A = std::decay_t<decltype(x)>;
            using B = std::decay_t<decltype(y)>;
            if constexpr (std::is_same_v<A, GR> && std::is_same_v<B, GR>) {
                return detail::product_components<RealQuad, RealQuad, RealQuad>(
                    x, y, x.n * y.n, [](const auto& m1, const auto& m2) { return kron(m1, m2); });
            } else if constexpr (std::is_same_v<A, GR> && std::is_same_v<B, GC>) {
                return detail::product_components<RealQuad, Cyclo8, Cyclo8>(
                    x, y, x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(promote_to_c(m1), m2); });
            } else if constexpr (std::is_same_v<A, GC> && std::is_same_v<B, GR>) {
                return detail::product_components<Cyclo8, RealQuad, Cyclo8>(
                    x, y, x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(m1, promote_to_c(m2)); });
            } else if constexpr (std::is_same_v<A, GR> && std::is_same_v<B, GH>) {
                return detail::product_components<RealQuad, QuaternionQ2, QuaternionQ2>(
                    x, y, x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(promote_to_h(m1), m2); });
            } else if constexpr (std::is_same_v<A, GH> && std::is_same_v<B, GR>) {
                return detail::product_components<QuaternionQ2, RealQuad, QuaternionQ2>(
                    x, y, x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(m1, promote_to_h(m2)); });
            } else if constexpr (std::is_same_v<A, GH> && std::is_same_v<B, GH>) {
                return detail::product_components<QuaternionQ2, QuaternionQ2, RealQuad>(
                    x, y, 4 * x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron_hh(m1, m2); });
            } else if constexpr (std::is_same_v<A, GC> && std::is_same_v<B, GH>) {
                return detail::product_components<Cyclo8, QuaternionQ2, Cyclo8>(
                    x, y, 2 * x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(m1, complexify(m2)); });
            } else if constexpr (std::is_same_v<A, GH> && std::is_same_v<B, GC>) {
                return detail::product_components<QuaternionQ2, Cyclo8, Cyclo8>(
                    x, y, 2 * x.n * y.n,
                    [](const auto& m1, const auto& m2) { return kron(complexify(m1), m2); });
            } else {
                throw GdaError("E_KIND_PAIR",
                               "unsupported tensor kind pair (C,C): the product is not simple");
            }
        },
        a, b);
}

// ---------------------------------------------------------------------------
// Coarsening and relabeling.

template <ScalarRing S>
GradedAlgebra<S> coarsen_along_hom(const GradedAlgebra<S>& alg, const GroupHom& phi) {
    if (!(phi.from == alg.group))
        throw GdaError("E_GROUP", "coarsening homomorphism domain mismatch");
    if (!phi.valid()) throw GdaError("E_GROUP", "invalid homomorphism");
    GradedAlgebra<S> out;
    out.group = phi.to;
    out.n = alg.n;
    for (const auto& [r, basis] : alg.components) {
        std::size_t target = phi.to.rank(phi.apply(alg.group.unrank(r)));
        auto& dest = out.components[target];
        dest.insert(dest.end(), basis.begin(), basis.end());
    }
    return out;
}

/// Relabel degrees along an injective homomorphism (component at phi(t) is
/// the old component at t). With from == to this is an automorphism relabel;
/// with a larger codomain it embeds the grading into a bigger ambient group.
template <ScalarRing S>
GradedAlgebra<S> relabel_along(const GradedAlgebra<S>& alg, const GroupHom& phi) {
    if (!(phi.from == alg.group))
        throw GdaError("E_GROUP", "relabeling homomorphism domain mismatch");
    if (!phi.valid()) throw GdaError("E_RELABEL", "invalid relabeling homomorphism");
    if (!phi.is_injective_on(Subgroup::whole(alg.group)))
        throw GdaError("E_RELABEL", "relabeling must be injective");
    GradedAlgebra<S> out;
    out.group = phi.to;
    out.n = alg.n;
    for (const auto& [r, basis] : alg.components)
        out.components[phi.to.rank(phi.apply(alg.group.unrank(r)))] = basis;
    return out;
}

inline AnyGraded coarsen_along_hom(const AnyGraded& a, const GroupHom& phi) {
    return std::visit([&](const auto& alg) -> AnyGraded { return coarsen_along_hom(alg, phi); },
                      a);
}
inline AnyGraded relabel_along(const AnyGraded& a, const GroupHom& phi) {
    return std::visit([&](const auto& alg) -> AnyGraded { return relabel_along(alg, phi); }, a);
}
inline GradingCheck check_grading(const AnyGraded& a, bool expect_full = true) {
    return std::visit([&](const auto& alg) { return check_grading(alg, expect_full); }, a);
}

// ---------------------------------------------------------------------------
// Block definitions.

inline AnyGraded build_block(Block b) {
    switch (b) {
        case Block::H1: {
            GradedAlgebra<QuaternionQ2> alg;
            alg.group = FinAbelianGroup(2, 0);
            alg.n = 1;
            auto put = [&](std::initializer_list<std::uint8_t> deg, QuaternionQ2 v) {
                GroupElement t{std::vector<std::uint8_t>(deg)};
                Matrix<QuaternionQ2> m(1, 1);
                m.at(0, 0) = v;
                alg.components[alg.group.rank(t)] = {std::move(m)};
            };
            put({0, 0}, QuaternionQ2(RealQuad(1)));
            put({1, 0}, QuaternionQ2::i());
            put({0, 1}, QuaternionQ2::j());
            put({1, 1}, QuaternionQ2::k());
            return alg;
        }
        case Block::M2R1: {
            GradedAlgebra<RealQuad> alg;
            alg.group = FinAbelianGroup(2, 0);
            alg.n = 2;
            auto put = [&](std::initializer_list<std::uint8_t> deg, int a11, int a12, int a21,
                           int a22) {
                GroupElement t{std::vector<std::uint8_t>(deg)};
                Matrix<RealQuad> m(2, 2);
                m.at(0, 0) = RealQuad(a11);
                m.at(0, 1) = RealQuad(a12);
                m.at(1, 0) = RealQuad(a21);
                m.at(1, 1) = RealQuad(a22);
                alg.components[alg.group.rank(t)] = {std::move(m)};
            };
            put({0, 0}, 1, 0, 0, 1);
            put({1, 0}, 0, 1, 1, 0);
            put({0, 1}, -1, 0, 0, 1);
            put({1, 1}, 0, -1, 1, 0);
            return alg;
        }
        case Block::C1: {
            GradedAlgebra<Cyclo8> alg;
            alg.group = FinAbelianGroup(1, 0);
            alg.n = 1;
            auto put = [&](std::uint8_t deg, Cyclo8 v) {
                GroupElement t{std::vector<std::uint8_t>{deg}};
                Matrix<Cyclo8> m(1, 1);
                m.at(0, 0) = v;
                alg.components[alg.group.rank(t)] = {std::move(m)};
            };
            put(0, Cyclo8(1));
            put(1, Cyclo8::i());
            return alg;
        }
        case Block::M2C1: {
            GradedAlgebra<Cyclo8> alg;
            alg.group = FinAbelianGroup(1, 1);
            alg.n = 2;
            Cyclo8 w = Cyclo8::omega(1), w3 = Cyclo8::omega(3), iu = Cyclo8::i(), one(1);
            auto put = [&](std::uint8_t x, std::uint8_t y, Cyclo8 a11, Cyclo8 a12, Cyclo8 a21,
                           Cyclo8 a22) {
                GroupElement t{std::vector<std::uint8_t>{x, y}};
                Matrix<Cyclo8> m(2, 2);
                m.at(0, 0) = a11;
                m.at(0, 1) = a12;
                m.at(1, 0) = a21;
                m.at(1, 1) = a22;
                alg.components[alg.group.rank(t)] = {std::move(m)};
            };
            Cyclo8 z(0);
            put(0, 0, one, z, z, one);
            put(0, 1, w, z, z, -w);
            put(0, 2, iu, z, z, iu);
            put(0, 3, w3, z, z, -w3);
            put(1, 0, z, one, one, z);
            put(1, 1, z, -w, w, z);
            put(1, 2, z, iu, iu, z);
            put(1, 3, z, -w3, w3, z);
            return alg;
        }
        case Block::H2: {
            // Coarsening of the Z2^2-grading on H along (x, y) -> y.
            AnyGraded h1 = build_block(Block::H1);
            GroupHom phi{FinAbelianGroup(2, 0), FinAbelianGroup(1, 0), {}};
            phi.images = {GroupElement{{0}}, GroupElement{{1}}};
            return coarsen_along_hom(h1, phi);
        }
        case Block::M2R2: {
            // Coarsening of the Z2^2-grading on M_2(R) along (x, y) -> x + y.
            AnyGraded m2r1 = build_block(Block::M2R1);
            GroupHom phi{FinAbelianGroup(2, 0), FinAbelianGroup(1, 0), {}};
            phi.images = {GroupElement{{1}}, GroupElement{{1}}};
            return coarsen_along_hom(m2r1, phi);
        }
        case Block::M2C2: {
            // Coarsening of the (Z2 x Z4)-grading on M_2(C) along (x, y) -> 2x + y.
            AnyGraded m2c1 = build_block(Block::M2C1);
            GroupHom phi{FinAbelianGroup(1, 1), FinAbelianGroup(0, 1), {}};
            phi.images = {GroupElement{{2}}, GroupElement{{1}}};
            return coarsen_along_hom(m2c1, phi);
        }
    }
    throw GdaError("E_BLOCK", "unknown block");
}

} // namespace gda
