#include "gda/graded.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gda;

namespace {

const std::vector<Block> kAllBlocks = {Block::H1,   Block::M2R1, Block::C1, Block::M2C1,
                                       Block::H2,   Block::M2R2, Block::M2C2};

template <ScalarRing S>
Matrix<S> single(const S& v) {
    Matrix<S> m(1, 1);
    m.at(0, 0) = v;
    return m;
}

} // namespace

TEST_CASE("all seven blocks pass both checks") {
    for (Block b : kAllBlocks) {
        AnyGraded alg = build_block(b);
        auto gc = check_grading(alg);
        INFO(block_name(b));
        for (const auto& issue : gc.issues) INFO(issue);
        CHECK(gc.ok());
        CHECK(gc.spans_full);
        std::visit([&](const auto& a) {
            auto dc = check_division_grading(a);
            for (const auto& issue : dc.issues) INFO(issue);
            CHECK(dc.ok());
        }, alg);
    }
}

TEST_CASE("block shapes") {
    CHECK(group_of(build_block(Block::H1)) == FinAbelianGroup(2, 0));
    CHECK(group_of(build_block(Block::M2C1)) == FinAbelianGroup(1, 1));
    CHECK(group_of(build_block(Block::M2C2)) == FinAbelianGroup(0, 1));
    CHECK(side_of(build_block(Block::M2C2)) == 2);
    CHECK(total_real_dim_of(build_block(Block::M2C1)) == 8);
}

TEST_CASE("neutral kinds of the dim-2 blocks") {
    auto h2 = std::get<GradedAlgebra<QuaternionQ2>>(build_block(Block::H2));
    auto dc = check_division_grading(h2);
    REQUIRE(dc.ok());
    CHECK(dc.neutral->kind == Kind::C);
    // the imaginary direction is a multiple of i
    REQUIRE(dc.neutral->imaginary_direction.has_value());
    auto dir = *dc.neutral->imaginary_direction;
    CHECK(in_span({flatten_matrix(single(QuaternionQ2::i()))}, flatten_matrix(dir)));

    auto m2r2 = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R2));
    auto dc2 = check_division_grading(m2r2);
    REQUIRE(dc2.ok());
    CHECK(dc2.neutral->kind == Kind::C);

    auto m2r1 = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R1));
    auto dc3 = check_division_grading(m2r1);
    REQUIRE(dc3.ok());
    CHECK(dc3.neutral->kind == Kind::R);
}

TEST_CASE("trivial gradings") {
    AnyGraded triv = build_trivial(Kind::R, 2);
    auto gc = check_grading(triv);
    CHECK(gc.ok());
    auto dc = check_division_grading(std::get<GradedAlgebra<RealQuad>>(triv));
    CHECK_FALSE(dc.ok()); // M_2(R) is not a division algebra

    AnyGraded h = build_trivial(Kind::H, 1);
    auto dch = check_division_grading(std::get<GradedAlgebra<QuaternionQ2>>(h));
    REQUIRE(dch.ok());
    CHECK(dch.neutral->kind == Kind::H);
}

TEST_CASE("diagonal grading on M2(R) is a grading but not division") {
    GradedAlgebra<RealQuad> alg;
    alg.group = FinAbelianGroup(1, 0);
    alg.n = 2;
    Matrix<RealQuad> e11(2, 2), e22(2, 2), e12(2, 2), e21(2, 2);
    e11.at(0, 0) = RealQuad(1);
    e22.at(1, 1) = RealQuad(1);
    e12.at(0, 1) = RealQuad(1);
    e21.at(1, 0) = RealQuad(1);
    alg.components[0] = {e11, e22};
    alg.components[1] = {e12, e21};
    CHECK(check_grading(alg).ok());
    auto dc = check_division_grading(alg);
    CHECK_FALSE(dc.ok()); // idempotents in the neutral component
}

TEST_CASE("closure violation is reported") {
    // Reassign deg(j) to coincide with deg(i): i*j = k then escapes D_e.
    GradedAlgebra<QuaternionQ2> alg;
    alg.group = FinAbelianGroup(2, 0);
    alg.n = 1;
    alg.components[alg.group.rank(GroupElement{{0, 0}})] = {single(QuaternionQ2(RealQuad(1)))};
    alg.components[alg.group.rank(GroupElement{{1, 0}})] = {single(QuaternionQ2::i()),
                                                            single(QuaternionQ2::j())};
    alg.components[alg.group.rank(GroupElement{{1, 1}})] = {single(QuaternionQ2::k())};
    auto gc = check_grading(alg);
    CHECK_FALSE(gc.ok());
}

TEST_CASE("product of M2R1 with itself") {
    AnyGraded p = product_grading(build_block(Block::M2R1), build_block(Block::M2R1));
    CHECK(group_of(p) == FinAbelianGroup(4, 0));
    CHECK(side_of(p) == 4);
    CHECK(scalar_kind_of(p) == Kind::R);
    CHECK(check_grading(p).ok());
    auto dc = check_division_grading(std::get<GradedAlgebra<RealQuad>>(p));
    CHECK(dc.ok());
    CHECK(dc.component_dim == 1);
}

TEST_CASE("H (x) H realizes in M4(R)") {
    AnyGraded p = product_grading(build_block(Block::H1), build_block(Block::H1));
    CHECK(group_of(p) == FinAbelianGroup(4, 0));
    CHECK(side_of(p) == 4);
    CHECK(scalar_kind_of(p) == Kind::R);
    CHECK(check_grading(p).ok());
    CHECK(check_division_grading(std::get<GradedAlgebra<RealQuad>>(p)).ok());
    // 1 (x) 1 maps to the identity
    CHECK(quat_pair_real(QuaternionQ2(RealQuad(1)), QuaternionQ2(RealQuad(1))) ==
          Matrix<RealQuad>::identity(4));
}

TEST_CASE("the H (x) H realization is a homomorphism on unit pairs") {
    const std::array<QuaternionQ2, 4> units = {QuaternionQ2(RealQuad(1)), QuaternionQ2::i(),
                                               QuaternionQ2::j(), QuaternionQ2::k()};
    for (const auto& a : units)
        for (const auto& b : units)
            for (const auto& a2 : units)
                for (const auto& b2 : units) {
                    auto lhs = quat_pair_real(a * a2, b * b2);
                    auto rhs = quat_pair_real(a, b) * quat_pair_real(a2, b2);
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("unsupported kind pairs") {
    CHECK_THROWS_AS(product_grading(build_block(Block::C1), build_block(Block::C1)), GdaError);
    // (C,H) and (H,C) realize through the complex embedding of H
    AnyGraded ch = product_grading(build_block(Block::C1), build_block(Block::H1));
    CHECK(scalar_kind_of(ch) == Kind::C);
    CHECK(side_of(ch) == 2);
    CHECK(check_grading(ch).ok());
    CHECK(check_division_grading(std::get<GradedAlgebra<Cyclo8>>(ch)).ok());
}

TEST_CASE("coarsening H1 to H2") {
    AnyGraded h1 = build_block(Block::H1);
    GroupHom phi{FinAbelianGroup(2, 0), FinAbelianGroup(1, 0),
                 {GroupElement{{0}}, GroupElement{{1}}}};
    AnyGraded c = coarsen_along_hom(h1, phi);
    auto& alg = std::get<GradedAlgebra<QuaternionQ2>>(c);
    REQUIRE(alg.components.size() == 2);
    // D_e = R1 + Ri, D_g = Rj + Rk
    auto& de = alg.components.at(0);
    REQUIRE(de.size() == 2);
    CHECK(in_span(flatten_all(de), flatten_matrix(single(QuaternionQ2::i()))));
    auto& dg = alg.components.at(1);
    CHECK(in_span(flatten_all(dg), flatten_matrix(single(QuaternionQ2::k()))));
}

TEST_CASE("identity coarsening preserves the grading") {
    AnyGraded h1 = build_block(Block::H1);
    GroupHom ident{FinAbelianGroup(2, 0), FinAbelianGroup(2, 0),
                   {GroupElement{{1, 0}}, GroupElement{{0, 1}}}};
    AnyGraded c = coarsen_along_hom(h1, ident);
    CHECK(std::get<GradedAlgebra<QuaternionQ2>>(c).components.size() == 4);
}

TEST_CASE("M2C2 equals the stated coarsening of M2C1") {
    AnyGraded direct = build_block(Block::M2C2);
    auto& alg = std::get<GradedAlgebra<Cyclo8>>(direct);
    REQUIRE(alg.components.size() == 4);
    // degree 0 holds I and (0 i; i 0)
    Matrix<Cyclo8> off_i(2, 2);
    off_i.at(0, 1) = Cyclo8::i();
    off_i.at(1, 0) = Cyclo8::i();
    CHECK(in_span(flatten_all(alg.components.at(0)), flatten_matrix(off_i)));
    // degree 2 holds iI and (0 1; 1 0)
    Matrix<Cyclo8> iI = Matrix<Cyclo8>::identity(2);
    iI.at(0, 0) = Cyclo8::i();
    iI.at(1, 1) = Cyclo8::i();
    CHECK(in_span(flatten_all(alg.components.at(2)), flatten_matrix(iI)));
}

TEST_CASE("kronecker associativity on block shapes") {
    auto a = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R1)).components.at(1)[0];
    auto b = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R1)).components.at(2)[0];
    auto c = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R1)).components.at(3)[0];
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
}

TEST_CASE("centralizer of the neutral component") {
    // In M2R2 the centralizer of D_e is D_e itself.
    auto m2r2 = std::get<GradedAlgebra<RealQuad>>(build_block(Block::M2R2));
    auto cent = centralizer(m2r2, m2r2.components.at(0));
    REQUIRE(cent.components.size() == 1);
    CHECK(cent.components.begin()->first == 0);
    CHECK(cent.components.at(0).size() == 2);

    // Center of trivially graded H is R I.
    auto h = std::get<GradedAlgebra<QuaternionQ2>>(build_trivial(Kind::H, 1));
    auto z = centralizer(h, h.components.at(0));
    REQUIRE(z.components.size() == 1);
    CHECK(z.components.at(0).size() == 1);
    CHECK(in_span({flatten_matrix(single(QuaternionQ2(RealQuad(1))))},
                  flatten_matrix(z.components.at(0)[0])));

    // In M2C2 the centralizer of D_e is supported on degrees {0, 2}.
    auto m2c2 = std::get<GradedAlgebra<Cyclo8>>(build_block(Block::M2C2));
    auto cent2 = centralizer(m2c2, m2c2.components.at(0));
    std::vector<std::size_t> degs;
    for (const auto& [r, basis] : cent2.components) {
        (void)basis;
        degs.push_back(r);
    }
    CHECK(degs == std::vector<std::size_t>{0, 2});
}

TEST_CASE("product components share the multiplied dimension") {
    AnyGraded p = product_grading(build_block(Block::H2), build_block(Block::M2R1));
    auto& alg = std::get<GradedAlgebra<QuaternionQ2>>(p);
    for (const auto& [r, basis] : alg.components) {
        (void)r;
        CHECK(basis.size() == 2);
    }
    CHECK(check_division_grading(alg).ok());
}
