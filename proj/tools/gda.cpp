// Command-line front end: build, classify and compare division gradings on
// the simple real algebras M_n(R), M_n(C), M_n(H).
//
// Exit codes: 0 success / "yes" verdicts; 1 "no" verdicts / failed suites;
// 2 usage or input errors (one machine-parsable "error: CODE: ..." line on
// stderr); 10 classified as the deferred complex-linear case 2f; 11 not a
// division grading; 12 equivalence deferred for case 2f.

#include "gda/io.hpp"
#include "gda/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace gda;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

AnyGraded load_document(const std::string& path) { return parse_document(read_file(path)); }

std::vector<GroupElement> parse_element_list_arg(const std::string& text,
                                                 const FinAbelianGroup& g) {
    std::vector<GroupElement> out;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        std::size_t end = text.find(')', pos);
        if (end == std::string::npos) throw GdaError("E_PARSE", "unbalanced element tuple");
        out.push_back(parse_element(text.substr(pos, end - pos + 1), g));
        pos = end + 1;
    }
    return out;
}

int cmd_build(const std::vector<std::string>& blocks, const std::string& relabel,
              const std::string& out_path) {
    std::optional<AnyGraded> acc;
    for (const auto& name : blocks) {
        auto block = block_from_name(name);
        if (!block) throw GdaError("E_BLOCK", "unknown block '" + name + "'");
        AnyGraded alg = build_block(*block);
        acc = acc ? product_grading(*acc, alg) : alg;
    }
    if (!acc) throw GdaError("E_USAGE", "build needs at least one block name");
    if (!relabel.empty()) {
        const FinAbelianGroup& g = group_of(*acc);
        GroupHom phi{g, g, parse_element_list_arg(relabel, g)};
        if (phi.images.size() != g.coord_count())
            throw GdaError("E_RELABEL", "relabeling needs one image per group generator");
        if (!phi.is_automorphism())
            throw GdaError("E_RELABEL", "relabeling images do not define a group automorphism");
        acc = relabel_along(*acc, phi);
    }
    emit(write_document(*acc), out_path);
    return 0;
}

int cmd_classify(const std::string& path, const std::string& out_path) {
    AnyGraded alg = load_document(path);
    GradingCheck gc = check_grading(alg);
    if (!gc.ok()) {
        std::cerr << "error: E_NOT_DIVISION: " << gc.issues.front() << "\n";
        return 11;
    }
    ClassificationRecord rec;
    try {
        rec = classify(alg);
    } catch (const GdaError& e) {
        if (e.code == "E_NOT_DIVISION" || e.code == "E_UNCLASSIFIABLE" ||
            e.code == "E_EXTRACT") {
            std::cerr << "error: " << e.what() << "\n";
            return 11;
        }
        throw;
    }
    std::cout << summarize(rec) << "\n";
    std::string text = write_record(rec);
    if (!out_path.empty())
        write_file(out_path, text);
    else
        std::cout << text;
    return rec.tag == CaseTag::C2f ? 10 : 0;
}

int cmd_iso(const std::string& a_path, const std::string& b_path) {
    ClassificationRecord a = classify(load_document(a_path));
    ClassificationRecord b = classify(load_document(b_path));
    std::cout << "A: " << summarize(a) << "\n";
    std::cout << "B: " << summarize(b) << "\n";
    Verdict v = is_isomorphic(a, b);
    std::cout << "isomorphic: " << (v.yes ? "yes" : "no") << " (" << v.reason << ")\n";
    return v.yes ? 0 : 1;
}

int cmd_equiv(const std::string& a_path, const std::string& b_path) {
    ClassificationRecord a = classify(load_document(a_path));
    ClassificationRecord b = classify(load_document(b_path));
    std::cout << "A: " << summarize(a) << "\n";
    std::cout << "B: " << summarize(b) << "\n";
    Verdict v = is_equivalent(a, b);
    std::cout << "equivalent: " << (v.yes ? "yes" : "no") << " (" << v.reason << ")\n";
    return v.yes ? 0 : 1;
}

int cmd_canonical(const std::string& tag_str, std::size_t m, const std::string& out_path) {
    auto tag = parse_tag(tag_str);
    if (!tag) throw GdaError("E_BAD_TAG", "unknown case tag '" + tag_str + "'");
    emit(write_document(canonical_representative(*tag, m)), out_path);
    return 0;
}

int cmd_realize(const std::string& path, const std::string& out_path) {
    ClassificationRecord rec = parse_record(read_file(path));
    emit(write_document(realize_from_invariants(rec)), out_path);
    return 0;
}

int cmd_refine(const std::string& path, const std::string& out_path) {
    emit(write_document(refine(load_document(path))), out_path);
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t max_m) {
    std::vector<VerificationReport> reports;
    if (suite == "blocks")
        reports.push_back(verify_building_blocks());
    else if (suite == "section3")
        reports.push_back(verify_section3_list(max_m));
    else if (suite == "arf")
        reports.push_back(verify_arf_independence(std::min<std::size_t>(max_m + 1, 3), 100, seed));
    else if (suite == "hh")
        reports.push_back(verify_hh_relabeling());
    else if (suite == "refine")
        reports.push_back(verify_refinement_chain(max_m));
    else if (suite == "counts")
        reports.push_back(verify_counts());
    else if (suite == "all")
        reports = verify_all(seed, max_m);
    else
        throw GdaError("E_USAGE", "unknown suite '" + suite +
                                      "' (blocks, section3, arf, hh, refine, counts, all)");
    bool ok = true;
    for (const auto& report : reports) {
        std::cout << report.to_string() << "\n";
        ok = ok && report.passed();
    }
    std::cout << (ok ? "all suites passed" : "SUITE FAILURES PRESENT") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"division gradings on finite-dimensional simple real algebras"};
    app.require_subcommand(1);
    // global flags (--out, --seed, --max-m) may follow the subcommand
    app.fallthrough();

    std::string out_path;
    std::uint64_t seed = 1;
    std::size_t max_m = 2;
    app.add_option("--out", out_path, "write the result to this file instead of stdout");
    app.add_option("--seed", seed, "seed for randomized verification suites");
    app.add_option("--max-m", max_m, "size bound for list-based suites (n = 2^m)");

    auto* build = app.add_subcommand("build", "tensor building blocks into a graded algebra");
    std::vector<std::string> blocks;
    std::string relabel;
    build->add_option("blocks", blocks, "block names: H1 M2R1 C1 M2C1 H2 M2R2 M2C2")->required();
    build->add_option("--relabel", relabel,
                      "generator images defining a group automorphism, e.g. \"(1,0),(1,1)\"");

    auto* classify_cmd = app.add_subcommand("classify", "classify a graded algebra document");
    std::string classify_path;
    classify_cmd->add_option("file", classify_path)->required();

    auto* iso = app.add_subcommand("iso", "decide isomorphism of two documents");
    std::string iso_a, iso_b;
    iso->add_option("a", iso_a)->required();
    iso->add_option("b", iso_b)->required();

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two documents");
    std::string equiv_a, equiv_b;
    equiv->add_option("a", equiv_a)->required();
    equiv->add_option("b", equiv_b)->required();

    auto* canonical = app.add_subcommand("canonical", "emit a canonical class representative");
    std::string tag_str;
    std::size_t m = 0;
    canonical->add_option("tag", tag_str, "case tag 1a..3d")->required();
    canonical->add_option("m", m, "size parameter, n = 2^m")->required();

    auto* realize = app.add_subcommand("realize", "build a grading from a record file");
    std::string realize_path;
    realize->add_option("record", realize_path)->required();

    auto* refine_cmd = app.add_subcommand("refine", "properly refine a graded document");
    std::string refine_path;
    refine_cmd->add_option("file", refine_path)->required();

    auto* verify = app.add_subcommand("verify", "run oracle verification suites");
    std::string suite;
    std::optional<std::uint64_t> seed_pos;
    verify->add_option("suite", suite, "blocks|section3|arf|hh|refine|counts|all")->required();
    verify->add_option("seed", seed_pos, "seed (overrides --seed)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(blocks, relabel, out_path);
        if (*classify_cmd) return cmd_classify(classify_path, out_path);
        if (*iso) return cmd_iso(iso_a, iso_b);
        if (*equiv) return cmd_equiv(equiv_a, equiv_b);
        if (*canonical) return cmd_canonical(tag_str, m, out_path);
        if (*realize) return cmd_realize(realize_path, out_path);
        if (*refine_cmd) return cmd_refine(refine_path, out_path);
        if (*verify) return cmd_verify(suite, seed_pos ? *seed_pos : seed, max_m);
    } catch (const gda::GdaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code == "E_DEFERRED") return 12;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: E_INTERNAL: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
