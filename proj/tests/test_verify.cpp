#include "gda/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gda;

TEST_CASE("building block suite passes") {
    auto report = verify_building_blocks();
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
    // H1 contributes 16 product checks, M2C1 contributes 64.
    CHECK(report.cases_run == 16 + 16 + 4 + 64 + 16 + 16 + 64);
}

TEST_CASE("a corrupted block fails the product recheck") {
    auto alg = std::get<GradedAlgebra<QuaternionQ2>>(build_block(Block::H1));
    // overwrite the degree-(1,1) line with i*j + 1, which breaks closure
    alg.components.at(alg.group.rank(GroupElement{{1, 1}}))[0] =
        alg.components.at(alg.group.rank(GroupElement{{1, 0}}))[0] *
            alg.components.at(alg.group.rank(GroupElement{{0, 1}}))[0] +
        alg.components.at(alg.group.rank(GroupElement{{0, 0}}))[0];
    VerificationReport report{"corrupted", 0, 0, {}};
    recheck_products(alg, "corrupted-H1", report);
    CHECK_FALSE(report.passed());
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures.front().find("degrees") != std::string::npos);
}

TEST_CASE("section 3 list at max_m = 1") {
    auto report = verify_section3_list(1);
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
}

TEST_CASE("arf independence at m <= 2") {
    auto report = verify_arf_independence(2, 30, 20240811);
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
    CHECK(report.cases_run == (4 + 16) * 30);
}

TEST_CASE("hh relabeling suite") {
    auto report = verify_hh_relabeling();
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
}

TEST_CASE("refinement chain at max_m = 1") {
    auto report = verify_refinement_chain(1);
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
}

TEST_CASE("counts suite") {
    auto report = verify_counts();
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.passed());
}

TEST_CASE("class counts at fixed groups") {
    CHECK(count_isomorphism_classes(Kind::R, 1, FinAbelianGroup(2, 0)) == 3);
    CHECK(count_isomorphism_classes(Kind::H, 1, FinAbelianGroup(2, 0)) == 1);
    CHECK(count_isomorphism_classes(Kind::R, 1, FinAbelianGroup(0, 0)) == 1);
    // On Z2^4 with dimension 1: 28 nondegenerate pairings, 10 forms each of
    // Arf +1 and 6 of Arf -1.
    CHECK(count_isomorphism_classes(Kind::R, 1, FinAbelianGroup(4, 0)) == 28 * 10);
    CHECK(count_isomorphism_classes(Kind::H, 1, FinAbelianGroup(4, 0)) == 28 * 6);
    // M_2(C) with support Z4: a single [nu] class.
    CHECK(count_isomorphism_classes(Kind::C, 2, FinAbelianGroup(0, 1)) == 1);
}

TEST_CASE("enumerated payloads cover the block records") {
    // The record of each block appears among the enumerated payloads of its
    // own tag and group.
    for (Block b : {Block::H1, Block::M2R1, Block::C1, Block::M2C1, Block::H2, Block::M2R2,
                    Block::M2C2}) {
        ClassificationRecord rec = classify(build_block(b));
        auto all = enumerate_records(rec.tag, rec.ambient);
        bool found = false;
        for (const auto& cand : all)
            if (cand == rec) found = true;
        INFO(block_name(b));
        CHECK(found);
    }
}

TEST_CASE("reports carry seeds and render") {
    auto report = verify_arf_independence(1, 5, 42);
    CHECK(report.seed == 42);
    CHECK(report.to_string().find("suite arf: pass") == 0);
}
