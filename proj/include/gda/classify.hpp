#pragma once

#include "gda/graded.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gda {

// ---------------------------------------------------------------------------
// Case tags: the fourteen structural families of division gradings.

enum class CaseTag { C1a, C1b, C1c, C1d, C2a, C2b, C2c, C2d, C2e, C2f, C3a, C3b, C3c, C3d };

inline std::string tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::C1a: return "1a";
        case CaseTag::C1b: return "1b";
        case CaseTag::C1c: return "1c";
        case CaseTag::C1d: return "1d";
        case CaseTag::C2a: return "2a";
        case CaseTag::C2b: return "2b";
        case CaseTag::C2c: return "2c";
        case CaseTag::C2d: return "2d";
        case CaseTag::C2e: return "2e";
        case CaseTag::C2f: return "2f";
        case CaseTag::C3a: return "3a";
        case CaseTag::C3b: return "3b";
        case CaseTag::C3c: return "3c";
        case CaseTag::C3d: return "3d";
    }
    return "?";
}

inline std::optional<CaseTag> parse_tag(std::string_view s) {
    static const std::pair<const char*, CaseTag> table[] = {
        {"1a", CaseTag::C1a}, {"1b", CaseTag::C1b}, {"1c", CaseTag::C1c}, {"1d", CaseTag::C1d},
        {"2a", CaseTag::C2a}, {"2b", CaseTag::C2b}, {"2c", CaseTag::C2c}, {"2d", CaseTag::C2d},
        {"2e", CaseTag::C2e}, {"2f", CaseTag::C2f}, {"3a", CaseTag::C3a}, {"3b", CaseTag::C3b},
        {"3c", CaseTag::C3c}, {"3d", CaseTag::C3d}};
    for (const auto& [name, tag] : table)
        if (s == name) return tag;
    return std::nullopt;
}

inline int component_dim_of_tag(CaseTag t) {
    switch (t) {
        case CaseTag::C1a:
        case CaseTag::C1b:
        case CaseTag::C1c:
        case CaseTag::C1d: return 1;
        case CaseTag::C2a:
        case CaseTag::C2b:
        case CaseTag::C2c:
        case CaseTag::C2d:
        case CaseTag::C2e:
        case CaseTag::C2f: return 2;
        default: return 4;
    }
}

inline Kind kind_of_tag(CaseTag t) {
    switch (t) {
        case CaseTag::C1a:
        case CaseTag::C2a:
        case CaseTag::C3a: return Kind::R;
        case CaseTag::C1b:
        case CaseTag::C2b:
        case CaseTag::C3b: return Kind::H;
        default: return Kind::C;
    }
}

/// Invariant tuple attached to a division grading by the classification.
struct ClassificationRecord {
    CaseTag tag = CaseTag::C1a;
    Kind algebra_kind = Kind::R; // isomorphism type of the underlying algebra
    std::size_t algebra_n = 1;   // M_n over that division ring
    int component_dim = 1;
    FinAbelianGroup ambient;
    Subgroup support; // T

    std::optional<QuadraticForm> mu;   // 1a, 1b, 1c (on T); 1d (on T_2); 3x inner
    std::optional<Bicharacter> beta;   // 1d (on T); 2d (on K); 2f (on T); 3d inner
    std::optional<Subgroup> k_subgroup; // 2a..2d
    std::optional<NiceMap> nu;         // 2a..2c (on T\K); 2d (on T2\(K n T2)); 2e (on T\T2)
    std::optional<CaseTag> inner_tag;  // 3x: case of the centralizer grading
    bool deferred_complex = false;     // 2f

    friend bool operator==(const ClassificationRecord& x, const ClassificationRecord& y) {
        return x.tag == y.tag && x.algebra_kind == y.algebra_kind && x.algebra_n == y.algebra_n &&
               x.component_dim == y.component_dim && x.ambient == y.ambient &&
               x.support == y.support && x.mu == y.mu && x.beta == y.beta &&
               x.k_subgroup == y.k_subgroup && x.nu == y.nu && x.inner_tag == y.inner_tag &&
               x.deferred_complex == y.deferred_complex;
    }
};

// ---------------------------------------------------------------------------
// Center analysis.

template <ScalarRing S>
struct CenterInfo {
    std::size_t dim = 0;                  // real dimension of Z(D)
    std::optional<GroupElement> f;        // degree of the imaginary center direction
    std::optional<Matrix<S>> w_direction; // W with W^2 = w_square * I, w_square < 0
    RealQuad w_square;
    bool neutral_is_center = false;
};

template <ScalarRing S>
std::vector<Matrix<S>> all_basis_elements(const GradedAlgebra<S>& alg) {
    std::vector<Matrix<S>> out;
    for (const auto& [r, basis] : alg.components) {
        (void)r;
        out.insert(out.end(), basis.begin(), basis.end());
    }
    return out;
}

/// Graded center of a division grading: R I, or R I + R W with W homogeneous
/// of degree e or of order 2 (the semineutral degree).
template <ScalarRing S>
CenterInfo<S> neutral_and_center(const GradedAlgebra<S>& alg) {
    CenterInfo<S> info;
    GradedAlgebra<S> z = centralizer(alg, all_basis_elements(alg));
    info.dim = z.total_real_dim();
    if (info.dim != 1 && info.dim != 2)
        throw GdaError("E_UNCLASSIFIABLE",
                       "center has real dimension " + std::to_string(info.dim) +
                           "; expected 1 or 2 for a simple algebra");
    if (info.dim == 1) return info;

    Matrix<S> ident = Matrix<S>::identity(alg.n);
    QuadVec flat_i = flatten_matrix(ident);
    std::size_t e_rank = alg.group.rank(alg.group.identity());

    if (z.components.size() == 1) {
        // Two-dimensional center concentrated at degree e.
        if (z.components.begin()->first != e_rank)
            throw GdaError("E_UNCLASSIFIABLE", "center misses the neutral degree");
        const auto& basis = z.components.at(e_rank);
        std::optional<Matrix<S>> nonscalar;
        for (const auto& b : basis)
            if (!in_span({flat_i}, flatten_matrix(b))) {
                nonscalar = b;
                break;
            }
        if (!nonscalar)
            throw GdaError("E_UNCLASSIFIABLE", "two-dimensional center spanned by I alone");
        auto pq = detail::quadratic_split(*nonscalar * *nonscalar, *nonscalar, alg.n);
        if (!pq) throw GdaError("E_UNCLASSIFIABLE", "center element without minimal polynomial");
        Matrix<S> dir = (*nonscalar + *nonscalar) - ident.scaled(pq->first);
        RealQuad sq = pq->first * pq->first + RealQuad(4) * pq->second;
        if (sq.is_zero() || sq.sign() > 0)
            throw GdaError("E_UNCLASSIFIABLE", "center is not a field: split discriminant");
        info.f = alg.group.identity();
        info.w_direction = dir;
        info.w_square = sq;
    } else if (z.components.size() == 2) {
        for (const auto& [r, basis] : z.components) {
            if (r == e_rank) {
                if (basis.size() != 1 || !in_span({flat_i}, flatten_matrix(basis[0])))
                    throw GdaError("E_UNCLASSIFIABLE", "neutral center part is not R I");
                continue;
            }
            if (basis.size() != 1)
                throw GdaError("E_UNCLASSIFIABLE", "center component of dimension > 1");
            GroupElement f = alg.group.unrank(r);
            if (alg.group.order_of(f) != 2)
                throw GdaError("E_UNCLASSIFIABLE", "imaginary center degree has order != 2");
            Matrix<S> w = basis[0];
            auto c = solve_in_span({flat_i}, flatten_matrix(w * w));
            if (!c)
                throw GdaError("E_UNCLASSIFIABLE", "center direction squares off the identity");
            RealQuad sq = (*c)[0];
            if (sq.is_zero() || sq.sign() > 0)
                throw GdaError("E_UNCLASSIFIABLE", "center is not a field: positive square");
            info.f = f;
            info.w_direction = w;
            info.w_square = sq;
        }
    } else {
        throw GdaError("E_UNCLASSIFIABLE", "center spread over more than two degrees");
    }

    // D_e = Z(D) detection: both two-dimensional with the center at degree e.
    auto it_e = alg.components.find(e_rank);
    info.neutral_is_center =
        (info.f && *info.f == alg.group.identity() && it_e != alg.components.end() &&
         it_e->second.size() == 2);
    return info;
}

// ---------------------------------------------------------------------------
// Invariant extraction.

/// Commutation factor of two homogeneous representatives: X Y = s * Y X with
/// s = +-1; anything else is a shape violation.
template <ScalarRing S>
int commutation_sign(const Matrix<S>& x, const Matrix<S>& y) {
    Matrix<S> xy = x * y, yx = y * x;
    if (xy == yx) return 1;
    if (xy == -yx) return -1;
    throw GdaError("E_EXTRACT", "representatives neither commute nor anticommute");
}

/// beta(u, v) from X_u X_v = beta(u,v) X_v X_u over the given degrees.
template <ScalarRing S>
Bicharacter extract_beta_on(const GradedAlgebra<S>& alg, const Subgroup& domain) {
    std::map<std::pair<std::size_t, std::size_t>, int> table;
    for (std::size_t ru : domain.ranks())
        for (std::size_t rv : domain.ranks()) {
            auto iu = alg.components.find(ru), iv = alg.components.find(rv);
            if (iu == alg.components.end() || iv == alg.components.end())
                throw GdaError("E_EXTRACT", "bicharacter domain escapes the support");
            table[{ru, rv}] = commutation_sign(iu->second[0], iv->second[0]);
        }
    const FinAbelianGroup& g = domain.parent();
    return Bicharacter::from_table(domain, [&](const GroupElement& u, const GroupElement& v) {
        return table.at({g.rank(u), g.rank(v)});
    });
}

template <ScalarRing S>
Bicharacter extract_beta(const GradedAlgebra<S>& alg) {
    return extract_beta_on(alg, alg.support_subgroup());
}

/// mu(t) = sign(c) where X_t^2 = c I, over the two-torsion of the support.
template <ScalarRing S>
QuadraticForm extract_mu(const GradedAlgebra<S>& alg) {
    Subgroup t2 = alg.support_subgroup().two_torsion();
    QuadVec flat_i = flatten_matrix(Matrix<S>::identity(alg.n));
    std::map<std::size_t, int> values;
    const FinAbelianGroup& g = alg.group;
    for (std::size_t r : t2.ranks()) {
        const Matrix<S>& x = alg.components.at(r)[0];
        auto c = solve_in_span({flat_i}, flatten_matrix(x * x));
        if (!c || (*c)[0].is_zero())
            throw GdaError("E_EXTRACT", "X_t^2 is not a nonzero real multiple of I at t = " +
                                            format_element(g.unrank(r)));
        values[r] = (*c)[0].sign();
    }
    return QuadraticForm::from_values(t2,
                                      [&](const GroupElement& t) { return values.at(g.rank(t)); });
}

/// Support of the centralizer of the neutral component.
template <ScalarRing S>
Subgroup centralizer_support(const GradedAlgebra<S>& alg) {
    const auto& ebasis = alg.components.at(alg.group.rank(alg.group.identity()));
    GradedAlgebra<S> c = centralizer(alg, ebasis);
    return c.support_subgroup();
}

// ---------------------------------------------------------------------------
// Classification.

namespace detail {

inline std::size_t integer_sqrt(std::size_t n, const char* what) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != n)
        throw GdaError("E_UNCLASSIFIABLE", std::string(what) + ": dimension is not a square");
    return r;
}

inline std::size_t derive_n(Kind kind, std::size_t total_real_dim) {
    switch (kind) {
        case Kind::R: return integer_sqrt(total_real_dim, "M_n(R)");
        case Kind::C:
            if (total_real_dim % 2) throw GdaError("E_UNCLASSIFIABLE", "odd complex dimension");
            return integer_sqrt(total_real_dim / 2, "M_n(C)");
        case Kind::H:
            if (total_real_dim % 4)
                throw GdaError("E_UNCLASSIFIABLE", "quaternionic dimension not divisible by 4");
            return integer_sqrt(total_real_dim / 4, "M_n(H)");
    }
    throw GdaError("E_KIND", "unknown kind");
}

} // namespace detail

template <ScalarRing S>
ClassificationRecord classify_impl(const GradedAlgebra<S>& alg);

inline ClassificationRecord classify(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return classify_impl(alg); }, a);
}

template <ScalarRing S>
ClassificationRecord classify_impl(const GradedAlgebra<S>& alg) {
    GradingCheck gc = check_grading(alg, /*expect_full=*/false);
    if (!gc.ok()) throw GdaError("E_NOT_DIVISION", "not a grading: " + gc.issues.front());
    DivisionCheck<S> dc = check_division_grading(alg);
    if (!dc.ok()) throw GdaError("E_NOT_DIVISION", "not a division grading: " + dc.issues.front());

    ClassificationRecord rec;
    rec.component_dim = static_cast<int>(dc.component_dim);
    rec.ambient = alg.group;
    rec.support = alg.support_subgroup();
    const FinAbelianGroup& g = alg.group;
    const Subgroup& t = rec.support;
    std::size_t total = alg.total_real_dim();
    CenterInfo<S> center = neutral_and_center(alg);
    bool t_elementary = t.is_elementary();
    Subgroup t2 = t.two_torsion();

    auto finish = [&](CaseTag tag) {
        rec.tag = tag;
        rec.algebra_kind = kind_of_tag(tag);
        rec.algebra_n = detail::derive_n(rec.algebra_kind, total);
        if (gc.spans_full) {
            if (rec.algebra_kind != alg.scalar_kind || rec.algebra_n != alg.n)
                throw GdaError("E_UNCLASSIFIABLE",
                               "derived algebra type M_" + std::to_string(rec.algebra_n) + "(" +
                                   kind_letter(rec.algebra_kind) +
                                   ") is inconsistent with the declared full algebra");
        }
    };

    if (dc.component_dim == 1) {
        if (center.dim == 1) {
            if (!t_elementary)
                throw GdaError("E_UNCLASSIFIABLE",
                               "central simple with order-4 support degrees: not a division "
                               "grading shape");
            QuadraticForm mu = extract_mu(alg);
            FormType type = radical_and_type(mu.polarize(), mu);
            if (type.tag != FormType::TypeI)
                throw GdaError("E_UNCLASSIFIABLE", "dimension-1 central case needs a type-I form");
            rec.mu = mu;
            finish(arf(mu) == 1 ? CaseTag::C1a : CaseTag::C1b);
        } else {
            if (!center.f || *center.f == g.identity())
                throw GdaError("E_UNCLASSIFIABLE",
                               "center inconsistent with 1-dimensional components");
            QuadraticForm mu = extract_mu(alg);
            if (t_elementary) {
                FormType type = radical_and_type(mu.polarize(), mu);
                if (type.tag != FormType::TypeII || !(*type.semineutral == *center.f))
                    throw GdaError("E_UNCLASSIFIABLE",
                                   "complex dimension-1 case needs a type-II form with the "
                                   "semineutral element at deg(iI)");
                rec.mu = mu;
                finish(CaseTag::C1c);
            } else {
                Bicharacter beta = extract_beta(alg);
                FormType type = radical_and_type(beta);
                if (type.tag != FormType::TypeII || !(*type.semineutral == *center.f))
                    throw GdaError("E_UNCLASSIFIABLE",
                                   "Z4-supported dimension-1 case needs a type-II bicharacter "
                                   "with semineutral deg(iI)");
                if (mu.value(*center.f) != -1)
                    throw GdaError("E_UNCLASSIFIABLE", "mu(f) must be -1");
                // The polarization of mu must be the restriction of beta.
                for (const auto& u : t2.elements())
                    for (const auto& v : t2.elements())
                        if (mu.polarize().value(u, v) != beta.value(u, v))
                            throw GdaError("E_UNCLASSIFIABLE",
                                           "mu does not polarize to the restriction of beta");
                rec.mu = mu;
                rec.beta = beta;
                finish(CaseTag::C1d);
            }
        }
    } else if (dc.component_dim == 2) {
        if (center.neutral_is_center) {
            // Grading of the complex algebra M_n(C): detected, beta extracted,
            // classification deferred to the complex theory.
            rec.beta = extract_beta_on(alg, t);
            rec.deferred_complex = true;
            finish(CaseTag::C2f);
            return rec;
        }
        Subgroup k = centralizer_support(alg);
        if (2 * k.size() != t.size())
            throw GdaError("E_UNCLASSIFIABLE", "supp(C_D(D_e)) does not have index 2");
        QuadVec flat_i = flatten_matrix(Matrix<S>::identity(alg.n));
        auto nu_by_squares = [&](const Subgroup& dom_t, const Subgroup& dom_k) {
            return NiceMap::from_values(dom_t, dom_k, [&](const GroupElement& x) {
                const Matrix<S>& y = alg.components.at(g.rank(x))[0];
                auto c = solve_in_span({flat_i}, flatten_matrix(y * y));
                if (!c || (*c)[0].is_zero())
                    throw GdaError("E_EXTRACT", "Y^2 is not a nonzero real multiple of I at " +
                                                    format_element(x));
                return (*c)[0].sign();
            });
        };
        if (center.dim == 1) {
            if (!t_elementary)
                throw GdaError("E_UNCLASSIFIABLE", "central case with order-4 degrees");
            NiceMap nu = nu_by_squares(t, k);
            NiceMapCheck chk = check_nice_map(nu);
            if (chk.type.tag != FormType::TypeI)
                throw GdaError("E_UNCLASSIFIABLE", "central dimension-2 case needs type I");
            rec.k_subgroup = k;
            rec.nu = nu;
            finish(*chk.sign == 1 ? CaseTag::C2a : CaseTag::C2b);
        } else if (t_elementary) {
            NiceMap nu = nu_by_squares(t, k);
            NiceMapCheck chk = check_nice_map(nu);
            if (chk.type.tag != FormType::TypeII || !(*chk.type.semineutral == *center.f))
                throw GdaError("E_UNCLASSIFIABLE",
                               "complex elementary dimension-2 case needs type II at deg(iI)");
            rec.k_subgroup = k;
            rec.nu = nu;
            finish(CaseTag::C2c);
        } else if (!(k == t2)) {
            // Z4 case (i): K != T_2.
            Subgroup k_t2 = Subgroup::from_elements(g, [&] {
                std::vector<GroupElement> both;
                for (std::size_t r : k.ranks())
                    if (t2.contains_rank(r)) both.push_back(g.unrank(r));
                return both;
            }());
            NiceMap nu = nu_by_squares(t2, k_t2);
            check_nice_map(nu); // niceness only; these maps are never regular
            Bicharacter beta = extract_beta_on(alg, k);
            FormType btype = radical_and_type(beta);
            GroupElement f = *g.square_generator();
            if (btype.tag != FormType::TypeII || !(*btype.semineutral == f))
                throw GdaError("E_UNCLASSIFIABLE", "case (i) needs beta of type II on K");
            QuadraticForm mu0 = nu.mu_at(nu.least_domain_element());
            if (mu0.value(f) != -1)
                throw GdaError("E_UNCLASSIFIABLE",
                               "case (i) induced forms must take -1 on f");
            // Polarization of the induced forms must restrict beta.
            for (const auto& u : k_t2.elements())
                for (const auto& v : k_t2.elements())
                    if (mu0.polarize().value(u, v) != beta.value(u, v))
                        throw GdaError("E_UNCLASSIFIABLE",
                                       "induced forms do not polarize to beta on K n T_2");
            rec.k_subgroup = k;
            rec.beta = beta;
            rec.nu = nu;
            finish(CaseTag::C2d);
        } else {
            // Z4 case (ii): K == T_2; signs are relative to the center
            // direction W at degree f.
            if (!center.w_direction)
                throw GdaError("E_UNCLASSIFIABLE", "missing center direction");
            QuadVec flat_w = flatten_matrix(*center.w_direction);
            std::optional<int> ref_sign;
            std::map<std::size_t, int> raw;
            for (std::size_t r : t.ranks()) {
                if (t2.contains_rank(r)) continue;
                const Matrix<S>& y = alg.components.at(r)[0];
                auto c = solve_in_span({flat_w}, flatten_matrix(y * y));
                if (!c || (*c)[0].is_zero())
                    throw GdaError("E_EXTRACT", "square of an order-4 representative is not a "
                                                "real multiple of the imaginary center direction");
                raw[r] = (*c)[0].sign();
                if (!ref_sign) ref_sign = raw[r]; // lexicographically least degree
            }
            NiceMap nu = NiceMap::from_values(
                t, t2, [&](const GroupElement& x) { return raw.at(g.rank(x)) * *ref_sign; });
            NiceMapCheck chk = check_nice_map(nu);
            GroupElement f = *g.square_generator();
            if (chk.type.tag != FormType::TypeII || !(*chk.type.semineutral == f))
                throw GdaError("E_UNCLASSIFIABLE",
                               "case (ii) nice map must have type II with semineutral f");
            rec.nu = nu;
            finish(CaseTag::C2e);
        }
    } else if (dc.component_dim == 4) {
        const auto& ebasis = alg.components.at(g.rank(g.identity()));
        GradedAlgebra<S> c = centralizer(alg, ebasis);
        if (!(c.support_subgroup() == t))
            throw GdaError("E_UNCLASSIFIABLE", "dimension-4 centralizer support mismatch");
        for (const auto& [r, basis] : c.components)
            if (basis.size() != 1)
                throw GdaError("E_UNCLASSIFIABLE",
                               "centralizer component of dimension != 1 at " +
                                   format_element(g.unrank(r)));
        ClassificationRecord inner = classify_impl(c);
        CaseTag tag;
        switch (inner.tag) {
            case CaseTag::C1a: tag = CaseTag::C3b; break;
            case CaseTag::C1b: tag = CaseTag::C3a; break;
            case CaseTag::C1c: tag = CaseTag::C3c; break;
            case CaseTag::C1d: tag = CaseTag::C3d; break;
            default:
                throw GdaError("E_UNCLASSIFIABLE", "centralizer classification is not a "
                                                   "dimension-1 case");
        }
        rec.mu = inner.mu;
        rec.beta = inner.beta;
        rec.inner_tag = inner.tag;
        finish(tag);
    } else {
        throw GdaError("E_UNCLASSIFIABLE", "component dimension is not 1, 2 or 4");
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Isomorphism and equivalence verdicts on classification records.

struct Verdict {
    bool yes = false;
    std::string reason;
};

inline Verdict is_isomorphic(const ClassificationRecord& a, const ClassificationRecord& b) {
    if (!(a.ambient == b.ambient))
        throw GdaError("E_AMBIENT", "gradings live over different ambient groups; the "
                                    "isomorphism relation fixes the group");
    if (a.tag != b.tag) return {false, "different case tags"};
    if (!(a.support == b.support)) return {false, "different supports"};
    if (a.tag == CaseTag::C2e) {
        bool same = a.nu == b.nu || (a.nu && b.nu && *a.nu == b.nu->negated());
        return {same, same ? "matching [nu] class" : "[nu] classes differ"};
    }
    if (a.tag == CaseTag::C2f) {
        bool same = a.beta == b.beta;
        return {same, same ? "matching (T, beta); verdict defers to the complex classification"
                           : "different beta"};
    }
    if (!(a.mu == b.mu)) return {false, "different quadratic forms"};
    if (!(a.beta == b.beta)) return {false, "different bicharacters"};
    if (!(a.k_subgroup == b.k_subgroup)) return {false, "different K subgroups"};
    if (!(a.nu == b.nu)) return {false, "different nice maps"};
    if (a.inner_tag != b.inner_tag) return {false, "different centralizer cases"};
    return {true, "equal invariants"};
}

inline Verdict is_equivalent(const ClassificationRecord& a, const ClassificationRecord& b) {
    if (a.tag == CaseTag::C2f || b.tag == CaseTag::C2f)
        throw GdaError("E_DEFERRED", "equivalence for complex-linear gradings (case 2f) is "
                                     "deferred to the complex classification");
    bool same = a.tag == b.tag && a.algebra_kind == b.algebra_kind &&
                a.algebra_n == b.algebra_n && a.component_dim == b.component_dim;
    return {same, same ? "same case tag and algebra" : "case tag or algebra differs"};
}

// ---------------------------------------------------------------------------
// Canonical representatives of the equivalence classes (n = 2^m).

inline AnyGraded canonical_representative(CaseTag tag, std::size_t m) {
    auto fold = [](std::vector<AnyGraded> factors) {
        if (factors.empty()) throw GdaError("E_INTERNAL", "empty factor list");
        AnyGraded acc = std::move(factors.front());
        for (std::size_t i = 1; i < factors.size(); ++i)
            acc = product_grading(acc, factors[i]);
        return acc;
    };
    auto m2r1s = [&](std::size_t count, std::vector<AnyGraded>& out) {
        for (std::size_t i = 0; i < count; ++i) out.push_back(build_block(Block::M2R1));
    };
    std::vector<AnyGraded> factors;
    switch (tag) {
        case CaseTag::C1a:
            if (m == 0) return build_trivial(Kind::R, 1);
            m2r1s(m, factors);
            return fold(std::move(factors));
        case CaseTag::C1b:
            m2r1s(m, factors);
            factors.push_back(build_block(Block::H1));
            return fold(std::move(factors));
        case CaseTag::C1c:
            m2r1s(m, factors);
            factors.push_back(build_block(Block::C1));
            return fold(std::move(factors));
        case CaseTag::C1d:
            if (m < 1) throw GdaError("E_BAD_TAG", "case 1d needs n >= 2 (m >= 1)");
            m2r1s(m - 1, factors);
            factors.push_back(build_block(Block::M2C1));
            return fold(std::move(factors));
        case CaseTag::C2a:
            if (m < 1) throw GdaError("E_BAD_TAG", "case 2a needs n >= 2 (m >= 1)");
            factors.push_back(build_block(Block::M2R2));
            m2r1s(m - 1, factors);
            return fold(std::move(factors));
        case CaseTag::C2b:
            factors.push_back(build_block(Block::H2));
            m2r1s(m, factors);
            return fold(std::move(factors));
        case CaseTag::C2c:
            if (m < 1) throw GdaError("E_BAD_TAG", "case 2c needs n >= 2 (m >= 1)");
            factors.push_back(build_block(Block::M2R2));
            m2r1s(m - 1, factors);
            factors.push_back(build_block(Block::C1));
            return fold(std::move(factors));
        case CaseTag::C2d:
            if (m < 2) throw GdaError("E_BAD_TAG", "case 2d needs n >= 4 (m >= 2)");
            factors.push_back(build_block(Block::M2R2));
            m2r1s(m - 2, factors);
            factors.push_back(build_block(Block::M2C1));
            return fold(std::move(factors));
        case CaseTag::C2e:
            if (m < 1) throw GdaError("E_BAD_TAG", "case 2e needs n >= 2 (m >= 1)");
            factors.push_back(build_block(Block::M2C2));
            m2r1s(m - 1, factors);
            return fold(std::move(factors));
        case CaseTag::C2f:
            throw GdaError("E_DEFERRED", "case 2f has no canonical representative here");
        case CaseTag::C3a:
            if (m < 2) throw GdaError("E_BAD_TAG", "case 3a needs n >= 4 (m >= 2)");
            factors.push_back(build_trivial(Kind::H, 1));
            m2r1s(m - 2, factors);
            factors.push_back(build_block(Block::H1));
            return fold(std::move(factors));
        case CaseTag::C3b:
            factors.push_back(build_trivial(Kind::H, 1));
            m2r1s(m, factors);
            return fold(std::move(factors));
        case CaseTag::C3c:
            if (m < 1) throw GdaError("E_BAD_TAG", "case 3c needs n >= 2 (m >= 1)");
            factors.push_back(build_trivial(Kind::H, 1));
            m2r1s(m - 1, factors);
            factors.push_back(build_block(Block::C1));
            return fold(std::move(factors));
        case CaseTag::C3d:
            if (m < 2) throw GdaError("E_BAD_TAG", "case 3d needs n >= 4 (m >= 2)");
            factors.push_back(build_trivial(Kind::H, 1));
            m2r1s(m - 2, factors);
            factors.push_back(build_block(Block::M2C1));
            return fold(std::move(factors));
    }
    throw GdaError("E_BAD_TAG", "unknown case tag");
}

// ---------------------------------------------------------------------------
// Realization: build a grading whose classification reproduces the record.

namespace detail {

struct FactorPlan {
    std::optional<Block> block;            // nullopt: trivially graded H
    std::vector<GroupElement> gen_images;  // per factor generator, Z4 generator last
};

/// Factor plans for a dimension-1 payload: type I (mu only), type II
/// elementary (mu only), or the Z4 shape (beta + mu on T_2).
inline std::vector<FactorPlan> plan_dim1(const FinAbelianGroup& g, const Subgroup& t,
                                         const QuadraticForm& mu,
                                         const std::optional<Bicharacter>& beta_full) {
    std::vector<FactorPlan> plans;
    if (beta_full) {
        // Z4 shape: symplectic family of beta with the order-4 pair last.
        FormType type = radical_and_type(*beta_full);
        GroupElement f = *g.square_generator();
        if (type.tag != FormType::TypeII || !(*type.semineutral == f))
            throw GdaError("E_PAYLOAD", "beta must have type II with semineutral f");
        if (mu.value(f) != -1) throw GdaError("E_PAYLOAD", "mu(f) must be -1");
        SymplecticFamily fam = symplectic_basis(*beta_full);
        if (fam.trailing || fam.pairs.empty())
            throw GdaError("E_PAYLOAD", "beta is not of the Z4 shape");
        for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
            auto [a, b] = fam.pairs[i];
            if (i + 1 < fam.pairs.size()) {
                if (mu.value(a) == -1) a = g.mul(a, f);
                if (mu.value(b) == -1) b = g.mul(b, f);
                plans.push_back({Block::M2R1, {a, b}});
            } else {
                if (g.order_of(b) != 4)
                    throw GdaError("E_PAYLOAD", "final symplectic pair must contain an order-4 "
                                                "element");
                if (mu.value(a) == -1) a = g.mul(a, f);
                plans.push_back({Block::M2C1, {a, b}});
            }
        }
        return plans;
    }
    Bicharacter beta = mu.polarize();
    FormType type = radical_and_type(beta, mu);
    if (type.tag == FormType::NotRegular)
        throw GdaError("E_PAYLOAD", "quadratic form is not regular");
    SymplecticFamily fam = symplectic_basis(beta);
    if (type.tag == FormType::TypeI) {
        for (const auto& [a, b] : fam.pairs) {
            int ma = mu.value(a), mb = mu.value(b);
            GroupElement ab = g.mul(a, b);
            if (ma == 1 && mb == 1)
                plans.push_back({Block::M2R1, {a, b}});
            else if (ma == 1 && mb == -1)
                plans.push_back({Block::M2R1, {a, ab}});
            else if (ma == -1 && mb == 1)
                plans.push_back({Block::M2R1, {ab, b}});
            else
                plans.push_back({Block::H1, {a, b}});
        }
    } else {
        GroupElement f = *type.semineutral;
        if (mu.value(f) != -1) throw GdaError("E_PAYLOAD", "mu(f) must be -1");
        for (auto [a, b] : fam.pairs) {
            if (mu.value(a) == -1) a = g.mul(a, f);
            if (mu.value(b) == -1) b = g.mul(b, f);
            plans.push_back({Block::M2R1, {a, b}});
        }
        if (!fam.trailing || !(*fam.trailing == f))
            throw GdaError("E_INTERNAL", "type-II family must end with the semineutral element");
        plans.push_back({Block::C1, {f}});
    }
    (void)t;
    return plans;
}

inline AnyGraded execute_plans(const std::vector<FactorPlan>& plans, const FinAbelianGroup& g,
                               const Subgroup& t) {
    if (plans.empty()) {
        // Only the trivial support: realize M_1(R) with the trivial grading,
        // relabeled into the ambient group.
        GroupHom embed{FinAbelianGroup(0, 0), g, {}};
        return relabel_along(build_trivial(Kind::R, 1), embed);
    }
    AnyGraded acc = plans[0].block ? build_block(*plans[0].block) : build_trivial(Kind::H, 1);
    for (std::size_t i = 1; i < plans.size(); ++i)
        acc = product_grading(acc, plans[i].block ? build_block(*plans[i].block)
                                                  : build_trivial(Kind::H, 1));
    // Assemble generator images: Z2 generators in factor order, the single Z4
    // generator (if any) last, matching the product's coordinate convention.
    std::vector<GroupElement> z2_images;
    std::optional<GroupElement> z4_image;
    for (const auto& plan : plans) {
        FinAbelianGroup bg = plan.block ? group_of(build_block(*plan.block))
                                        : FinAbelianGroup(0, 0);
        if (plan.gen_images.size() != bg.coord_count())
            throw GdaError("E_INTERNAL", "factor image count mismatch");
        for (std::size_t i = 0; i < bg.z2_count(); ++i) z2_images.push_back(plan.gen_images[i]);
        if (bg.z4_count()) z4_image = plan.gen_images[bg.z2_count()];
    }
    std::vector<GroupElement> images = z2_images;
    if (z4_image) images.push_back(*z4_image);
    GroupHom embed{group_of(acc), g, images};
    AnyGraded out = relabel_along(acc, embed);
    if (!(support_subgroup_of(out) == t))
        throw GdaError("E_PAYLOAD", "realized support differs from the record's support");
    return out;
}

} // namespace detail

inline AnyGraded realize_from_invariants(const ClassificationRecord& rec) {
    const FinAbelianGroup& g = rec.ambient;
    const Subgroup& t = rec.support;

    switch (rec.tag) {
        case CaseTag::C1a:
        case CaseTag::C1b:
        case CaseTag::C1c: {
            if (!rec.mu) throw GdaError("E_PAYLOAD", "missing quadratic form");
            if (!(rec.mu->domain() == t))
                throw GdaError("E_PAYLOAD", "mu must live on the whole support");
            auto plans = detail::plan_dim1(g, t, *rec.mu, std::nullopt);
            Bicharacter beta = rec.mu->polarize();
            FormType type = radical_and_type(beta, *rec.mu);
            if (rec.tag == CaseTag::C1a && !(type.tag == FormType::TypeI && arf(*rec.mu) == 1))
                throw GdaError("E_PAYLOAD", "case 1a needs a type-I form with Arf +1");
            if (rec.tag == CaseTag::C1b && !(type.tag == FormType::TypeI && arf(*rec.mu) == -1))
                throw GdaError("E_PAYLOAD", "case 1b needs a type-I form with Arf -1");
            if (rec.tag == CaseTag::C1c && type.tag != FormType::TypeII)
                throw GdaError("E_PAYLOAD", "case 1c needs a type-II form");
            return detail::execute_plans(plans, g, t);
        }
        case CaseTag::C1d: {
            if (!rec.mu || !rec.beta) throw GdaError("E_PAYLOAD", "case 1d needs beta and mu");
            if (!(rec.beta->domain() == t))
                throw GdaError("E_PAYLOAD", "beta must live on the whole support");
            if (!(rec.mu->domain() == t.two_torsion()))
                throw GdaError("E_PAYLOAD", "mu must live on the two-torsion subgroup");
            for (const auto& u : rec.mu->domain().elements())
                for (const auto& v : rec.mu->domain().elements())
                    if (rec.mu->polarize().value(u, v) != rec.beta->value(u, v))
                        throw GdaError("E_PAYLOAD", "mu must polarize to the restriction of beta");
            auto plans = detail::plan_dim1(g, t, *rec.mu, rec.beta);
            return detail::execute_plans(plans, g, t);
        }
        case CaseTag::C2a:
        case CaseTag::C2b:
        case CaseTag::C2c: {
            if (!rec.nu || !rec.k_subgroup) throw GdaError("E_PAYLOAD", "missing K or nu");
            NiceMapCheck chk = check_nice_map(*rec.nu); // throws on non-nice payloads
            if ((rec.tag == CaseTag::C2a || rec.tag == CaseTag::C2b) &&
                chk.type.tag != FormType::TypeI)
                throw GdaError("E_PAYLOAD", "cases 2a/2b need a type-I nice map");
            if (rec.tag == CaseTag::C2a && *chk.sign != 1)
                throw GdaError("E_PAYLOAD", "case 2a needs a positive nice map");
            if (rec.tag == CaseTag::C2b && *chk.sign != -1)
                throw GdaError("E_PAYLOAD", "case 2b needs a negative nice map");
            if (rec.tag == CaseTag::C2c && chk.type.tag != FormType::TypeII)
                throw GdaError("E_PAYLOAD", "case 2c needs a type-II nice map");
            // Choose g0 with nu(g0) = +1 when possible (always possible except
            // for the pure quaternion case K = {e}, nu = -1).
            std::optional<GroupElement> g0;
            for (const auto& [r, v] : rec.nu->values())
                if (v == 1) {
                    g0 = g.unrank(r);
                    break;
                }
            Block first = Block::M2R2;
            if (!g0) {
                g0 = rec.nu->least_domain_element();
                first = Block::H2;
            }
            std::vector<detail::FactorPlan> plans{{first, {*g0}}};
            QuadraticForm mu_g = rec.nu->mu_at(*g0);
            if (rec.k_subgroup->size() > 1) {
                auto inner = detail::plan_dim1(g, *rec.k_subgroup, mu_g, std::nullopt);
                plans.insert(plans.end(), inner.begin(), inner.end());
            }
            return detail::execute_plans(plans, g, t);
        }
        case CaseTag::C2d: {
            if (!rec.nu || !rec.k_subgroup || !rec.beta)
                throw GdaError("E_PAYLOAD", "case 2d needs K, beta and nu");
            check_nice_map(*rec.nu); // translates must be quadratic
            GroupElement f = *g.square_generator();
            {
                QuadraticForm mu0 = rec.nu->mu_at(rec.nu->least_domain_element());
                if (mu0.value(f) != -1)
                    throw GdaError("E_PAYLOAD", "case 2d induced forms must take -1 on f");
            }
            FormType btype = radical_and_type(*rec.beta);
            if (btype.tag != FormType::TypeII || !(*btype.semineutral == f))
                throw GdaError("E_PAYLOAD", "case 2d beta must be type II at f");
            std::optional<GroupElement> g0;
            for (const auto& [r, v] : rec.nu->values())
                if (v == 1) {
                    g0 = g.unrank(r);
                    break;
                }
            if (!g0) throw GdaError("E_PAYLOAD", "type-II nice map must attain +1");
            QuadraticForm mu_g = rec.nu->mu_at(*g0);
            for (const auto& u : mu_g.domain().elements())
                for (const auto& v : mu_g.domain().elements())
                    if (mu_g.polarize().value(u, v) != rec.beta->value(u, v))
                        throw GdaError("E_PAYLOAD",
                                       "induced form must polarize to beta on K n T_2");
            std::vector<detail::FactorPlan> plans{{Block::M2R2, {*g0}}};
            auto inner = detail::plan_dim1(g, *rec.k_subgroup, mu_g, rec.beta);
            plans.insert(plans.end(), inner.begin(), inner.end());
            return detail::execute_plans(plans, g, t);
        }
        case CaseTag::C2e: {
            if (!rec.nu) throw GdaError("E_PAYLOAD", "case 2e needs [nu]");
            NiceMap nu = *rec.nu;
            GroupElement g0 = nu.least_domain_element();
            if (nu.value(g0) == -1) nu = nu.negated(); // normalize the class representative
            NiceMapCheck chk = check_nice_map(nu);
            GroupElement f = *g.square_generator();
            if (chk.type.tag != FormType::TypeII || !(*chk.type.semineutral == f))
                throw GdaError("E_PAYLOAD", "case 2e nice map must be type II at f");
            if (!(g.mul(g0, g0) == f))
                throw GdaError("E_PAYLOAD", "least order-4 degree must square to f");
            // Complement A of <f> inside T_2.
            Subgroup t2 = t.two_torsion();
            std::vector<GroupElement> a_basis;
            {
                Subgroup acc = Subgroup::span(g, {f});
                for (const auto& el : t2.elements()) {
                    if (acc.contains(el)) continue;
                    a_basis.push_back(el);
                    std::vector<GroupElement> gens = a_basis;
                    gens.push_back(f);
                    acc = Subgroup::span(g, gens);
                }
            }
            Subgroup a = Subgroup::span(g, a_basis);
            QuadraticForm mu_a = QuadraticForm::from_values(
                a, [&](const GroupElement& x) { return nu.value(g.mul(g0, x)); });
            std::vector<detail::FactorPlan> plans{{Block::M2C2, {g0}}};
            if (a.size() > 1) {
                auto inner = detail::plan_dim1(g, a, mu_a, std::nullopt);
                plans.insert(plans.end(), inner.begin(), inner.end());
            }
            return detail::execute_plans(plans, g, t);
        }
        case CaseTag::C2f:
            throw GdaError("E_DEFERRED", "case 2f realization is deferred to the complex theory");
        case CaseTag::C3a:
        case CaseTag::C3b:
        case CaseTag::C3c:
        case CaseTag::C3d: {
            if (!rec.mu && !rec.beta) throw GdaError("E_PAYLOAD", "missing centralizer payload");
            std::vector<detail::FactorPlan> plans{{std::nullopt, {}}};
            std::vector<detail::FactorPlan> inner;
            if (rec.tag == CaseTag::C3d) {
                if (!rec.mu || !rec.beta) throw GdaError("E_PAYLOAD", "case 3d needs beta and mu");
                inner = detail::plan_dim1(g, t, *rec.mu, rec.beta);
            } else {
                if (!rec.mu) throw GdaError("E_PAYLOAD", "missing quadratic form");
                Bicharacter beta = rec.mu->polarize();
                FormType type = radical_and_type(beta, *rec.mu);
                if (rec.tag == CaseTag::C3b &&
                    !(type.tag == FormType::TypeI && arf(*rec.mu) == 1))
                    throw GdaError("E_PAYLOAD", "case 3b needs Arf +1");
                if (rec.tag == CaseTag::C3a &&
                    !(type.tag == FormType::TypeI && arf(*rec.mu) == -1))
                    throw GdaError("E_PAYLOAD", "case 3a needs Arf -1");
                if (rec.tag == CaseTag::C3c && type.tag != FormType::TypeII)
                    throw GdaError("E_PAYLOAD", "case 3c needs type II");
                inner = detail::plan_dim1(g, t, *rec.mu, std::nullopt);
            }
            plans.insert(plans.end(), inner.begin(), inner.end());
            return detail::execute_plans(plans, g, t);
        }
    }
    throw GdaError("E_BAD_TAG", "unknown case tag");
}

// ---------------------------------------------------------------------------
// Refinement: split every component by the involution d -> X d X^{-1}.

template <ScalarRing S>
GradedAlgebra<S> refine_impl(const GradedAlgebra<S>& alg) {
    DivisionCheck<S> dc = check_division_grading(alg);
    if (!dc.ok()) throw GdaError("E_NOT_DIVISION", "refine requires a division grading");
    if (dc.component_dim != 2 && dc.component_dim != 4)
        throw GdaError("E_PRECONDITION", "refine requires components of dimension 2 or 4");
    CenterInfo<S> center = neutral_and_center(alg);
    if (center.neutral_is_center)
        throw GdaError("E_PRECONDITION", "refine requires D_e != Z(D)");

    const FinAbelianGroup& g = alg.group;
    std::optional<Matrix<S>> x;
    if (dc.component_dim == 4) {
        x = (*dc.neutral->quat_triple)[0]; // pure part of the first non-scalar element
    } else {
        Subgroup k = centralizer_support(alg);
        for (const auto& [r, basis] : alg.components) {
            if (k.contains_rank(r)) continue;
            x = basis[0];
            break;
        }
        if (!x) throw GdaError("E_PRECONDITION", "no component outside supp(C_D(D_e))");
    }
    auto xinv = x->inverse();
    if (!xinv) throw GdaError("E_INTERNAL", "refinement element is singular");

    ProductGroup pg = direct_product(FinAbelianGroup(1, 0), g);
    GradedAlgebra<S> out;
    out.group = pg.group;
    out.n = alg.n;
    GroupElement one{{1}};
    for (const auto& [r, basis] : alg.components) {
        GroupElement t = g.unrank(r);
        GroupElement deg_plus = pg.embed_right.apply(t);
        GroupElement deg_minus = pg.group.mul(pg.embed_left.apply(one), deg_plus);
        QuadRows commute, anticommute;
        for (const auto& b : basis) {
            commute.push_back(flatten_matrix(*x * b - b * *x));
            anticommute.push_back(flatten_matrix(*x * b + b * *x));
        }
        std::vector<Matrix<S>> plus, minus;
        for (const auto& cmb : left_kernel(commute)) {
            Matrix<S> m = combine(basis, cmb);
            if (!m.is_zero()) plus.push_back(std::move(m));
        }
        for (const auto& cmb : left_kernel(anticommute)) {
            Matrix<S> m = combine(basis, cmb);
            if (!m.is_zero()) minus.push_back(std::move(m));
        }
        if (plus.size() + minus.size() != basis.size())
            throw GdaError("E_INTERNAL", "eigensplit does not exhaust the component");
        if (!plus.empty()) out.components[pg.group.rank(deg_plus)] = std::move(plus);
        if (!minus.empty()) out.components[pg.group.rank(deg_minus)] = std::move(minus);
    }
    return out;
}

inline AnyGraded refine(const AnyGraded& a) {
    return std::visit([](const auto& alg) -> AnyGraded { return refine_impl(alg); }, a);
}

// ---------------------------------------------------------------------------
// Double centralizer split for dimension-4 gradings.

template <ScalarRing S>
struct CentralizerSplit {
    std::vector<Matrix<S>> neutral_basis;
    GradedAlgebra<S> centralizer_part;
    bool dims_ok = false;
    bool generates = false;
};

template <ScalarRing S>
CentralizerSplit<S> double_centralizer_split(const GradedAlgebra<S>& alg) {
    DivisionCheck<S> dc = check_division_grading(alg);
    if (!dc.ok() || dc.component_dim != 4)
        throw GdaError("E_PRECONDITION", "double centralizer split needs dimension-4 components");
    const auto& ebasis = alg.components.at(alg.group.rank(alg.group.identity()));
    CentralizerSplit<S> out;
    out.neutral_basis = ebasis;
    out.centralizer_part = centralizer(alg, ebasis);
    std::size_t cdim = out.centralizer_part.total_real_dim();
    out.dims_ok = (4 * cdim == alg.total_real_dim());
    QuadRows products;
    for (const auto& b : ebasis)
        for (const auto& [r, cbasis] : out.centralizer_part.components) {
            (void)r;
            for (const auto& c : cbasis) products.push_back(flatten_matrix(b * c));
        }
    out.generates = (rank_of(products) == alg.total_real_dim());
    return out;
}

// ---------------------------------------------------------------------------
// Clifford-style presentation for fine gradings (cases 1a, 1b, 1c).

template <ScalarRing S>
struct CliffordPresentation {
    std::vector<GroupElement> generators;   // pairwise beta = -1, generate T
    std::vector<Matrix<S>> representatives; // X_i in the corresponding components
    std::vector<int> squares;               // sign of X_i^2
    std::size_t signature = 0;              // count of +1 squares
};

template <ScalarRing S>
CliffordPresentation<S> clifford_presentation(const GradedAlgebra<S>& alg) {
    ClassificationRecord rec = classify_impl(alg);
    if (rec.tag != CaseTag::C1a && rec.tag != CaseTag::C1b && rec.tag != CaseTag::C1c)
        throw GdaError("E_PRECONDITION",
                       "Clifford presentation applies to cases 1a, 1b and 1c only");
    const FinAbelianGroup& g = alg.group;
    Bicharacter beta = rec.mu->polarize();
    SymplecticFamily fam = symplectic_basis(beta);

    // Prefix products a_1 b_1 ... a_{i-1} b_{i-1} turn the symplectic basis
    // into a family with all pairwise values -1.
    CliffordPresentation<S> out;
    GroupElement prefix = g.identity();
    for (const auto& [a, b] : fam.pairs) {
        out.generators.push_back(g.mul(prefix, a));
        out.generators.push_back(g.mul(prefix, b));
        prefix = g.mul(prefix, g.mul(a, b));
    }
    if (fam.trailing) out.generators.push_back(g.mul(prefix, *fam.trailing));

    for (std::size_t i = 0; i < out.generators.size(); ++i)
        for (std::size_t j = 0; j < out.generators.size(); ++j)
            if (i != j && beta.value(out.generators[i], out.generators[j]) != -1)
                throw GdaError("E_INTERNAL", "generators fail pairwise anticommutation");
    if (!(Subgroup::span(g, out.generators) == rec.support))
        throw GdaError("E_INTERNAL", "generators do not span the support");

    for (const auto& e : out.generators) {
        const Matrix<S>& x = alg.components.at(g.rank(e))[0];
        out.representatives.push_back(x);
        int sq = rec.mu->value(e);
        out.squares.push_back(sq);
        if (sq == 1) ++out.signature;
    }
    // X_i X_j = -X_j X_i exactly.
    for (std::size_t i = 0; i < out.representatives.size(); ++i)
        for (std::size_t j = i + 1; j < out.representatives.size(); ++j)
            if (commutation_sign(out.representatives[i], out.representatives[j]) != -1)
                throw GdaError("E_INTERNAL", "representatives fail anticommutation");
    return out;
}

// ---------------------------------------------------------------------------
// Structure constants sigma(u, v) with X_u X_v = sigma(u, v) X_{uv} for
// dimension-1 gradings; used by oracle consistency checks.

template <ScalarRing S>
std::map<std::pair<std::size_t, std::size_t>, RealQuad> structure_constants(
    const GradedAlgebra<S>& alg) {
    const FinAbelianGroup& g = alg.group;
    std::map<std::pair<std::size_t, std::size_t>, RealQuad> sigma;
    for (const auto& [ru, ubasis] : alg.components) {
        if (ubasis.size() != 1)
            throw GdaError("E_PRECONDITION", "structure constants need dimension-1 components");
        for (const auto& [rv, vbasis] : alg.components) {
            std::size_t rw = g.rank(g.mul(g.unrank(ru), g.unrank(rv)));
            auto c = solve_in_span({flatten_matrix(alg.components.at(rw)[0])},
                                   flatten_matrix(ubasis[0] * vbasis[0]));
            if (!c) throw GdaError("E_EXTRACT", "product escapes the target component");
            sigma[{ru, rv}] = (*c)[0];
        }
    }
    return sigma;
}

} // namespace gda
