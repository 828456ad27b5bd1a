#pragma once

#include "gda/classify.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gda {

// ---------------------------------------------------------------------------
// Line-oriented document format:
//
//   gda 1
//   kind R|C|H
//   n <int>
//   group Z2^a [x Z4]
//   support <elem> <elem> ...
//   component <elem>:
//     [ s, s ; s, s ]        (one matrix per line, as many as the dimension)
//
// Written documents are canonical: components in lexicographic degree order,
// scalars in canonical literal form. parse(format(alg)) reproduces alg and
// format(parse(doc)) is byte-identical on canonical documents.

namespace detail {

template <ScalarRing S>
std::string format_matrix_line(const Matrix<S>& m) {
    std::string out = "[ ";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += " ; ";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += format_scalar(m.at(r, c));
        }
    }
    out += " ]";
    return out;
}

template <ScalarRing S>
Matrix<S> parse_matrix_line(const std::string& line, std::size_t n, std::size_t lineno) {
    auto fail = [&](const std::string& msg) -> void {
        throw GdaError("E_PARSE", "line " + std::to_string(lineno) + ": " + msg);
    };
    std::size_t open = line.find('[');
    std::size_t close = line.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        fail("expected a bracketed matrix");
    std::string body = line.substr(open + 1, close - open - 1);
    std::vector<std::vector<std::string>> rows(1);
    std::string cur;
    int depth = 0;
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && ch == ',') {
            rows.back().push_back(cur);
            cur.clear();
        } else if (depth == 0 && ch == ';') {
            rows.back().push_back(cur);
            cur.clear();
            rows.emplace_back();
        } else {
            cur += ch;
        }
    }
    rows.back().push_back(cur);
    if (rows.size() != n) fail("expected " + std::to_string(n) + " matrix rows");
    Matrix<S> m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) fail("expected " + std::to_string(n) + " entries per row");
        for (std::size_t c = 0; c < n; ++c) {
            try {
                m.at(r, c) = parse_scalar<S>(rows[r][c]);
            } catch (const GdaError& e) {
                fail(std::string(e.what()));
            }
        }
    }
    return m;
}

template <ScalarRing S>
std::string write_document_impl(const GradedAlgebra<S>& alg) {
    std::ostringstream out;
    out << "gda 1\n";
    out << "kind " << kind_letter(scalar_traits<S>::kind) << "\n";
    out << "n " << alg.n << "\n";
    out << "group " << format_group(alg.group) << "\n";
    out << "support";
    for (const auto& [r, basis] : alg.components) {
        (void)basis;
        out << " " << format_element(alg.group.unrank(r));
    }
    out << "\n";
    for (const auto& [r, basis] : alg.components) {
        out << "component " << format_element(alg.group.unrank(r)) << ":\n";
        for (const auto& m : basis) out << "  " << format_matrix_line(m) << "\n";
    }
    return out.str();
}

template <ScalarRing S>
GradedAlgebra<S> parse_components(const std::vector<std::string>& lines, std::size_t& idx,
                                  const FinAbelianGroup& g, std::size_t n) {
    GradedAlgebra<S> alg;
    alg.group = g;
    alg.n = n;
    while (idx < lines.size()) {
        const std::string& line = lines[idx];
        if (line.rfind("component ", 0) != 0)
            throw GdaError("E_PARSE",
                           "line " + std::to_string(idx + 1) + ": expected 'component'");
        std::size_t colon = line.rfind(':');
        if (colon == std::string::npos)
            throw GdaError("E_PARSE", "line " + std::to_string(idx + 1) + ": missing ':'");
        GroupElement deg = parse_element(line.substr(10, colon - 10), g);
        ++idx;
        std::vector<Matrix<S>> basis;
        while (idx < lines.size()) {
            std::string body = lines[idx];
            std::size_t first = body.find_first_not_of(" \t");
            if (first == std::string::npos || body[first] != '[') break;
            basis.push_back(parse_matrix_line<S>(body, n, idx + 1));
            ++idx;
        }
        if (basis.empty())
            throw GdaError("E_PARSE", "line " + std::to_string(idx) + ": component " +
                                          format_element(deg) + " has no matrices");
        auto [it, fresh] = alg.components.emplace(g.rank(deg), std::move(basis));
        (void)it;
        if (!fresh)
            throw GdaError("E_PARSE", "duplicate component " + format_element(deg));
    }
    return alg;
}

} // namespace detail

inline std::string write_document(const AnyGraded& a) {
    return std::visit([](const auto& alg) { return detail::write_document_impl(alg); }, a);
}

inline AnyGraded parse_document(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
    }
    auto expect_prefix = [&](std::size_t idx, const std::string& prefix) -> std::string {
        if (idx >= lines.size() || lines[idx].rfind(prefix, 0) != 0)
            throw GdaError("E_PARSE",
                           "line " + std::to_string(idx + 1) + ": expected '" + prefix + "'");
        return lines[idx].substr(prefix.size());
    };
    if (expect_prefix(0, "gda ") != "1")
        throw GdaError("E_PARSE", "line 1: unsupported format version");
    std::string kind_str = expect_prefix(1, "kind ");
    auto kind = kind_str.size() == 1 ? kind_from_letter(kind_str[0]) : std::nullopt;
    if (!kind) throw GdaError("E_PARSE", "line 2: unknown kind '" + kind_str + "'");
    std::size_t n = 0;
    try {
        n = std::stoul(expect_prefix(2, "n "));
    } catch (...) {
        throw GdaError("E_PARSE", "line 3: bad matrix size");
    }
    if (n == 0) throw GdaError("E_PARSE", "line 3: matrix size must be positive");
    FinAbelianGroup g = parse_group(expect_prefix(3, "group "));
    std::string support_line = expect_prefix(4, "support");
    std::vector<GroupElement> declared;
    {
        std::size_t pos = 0;
        while ((pos = support_line.find('(', pos)) != std::string::npos) {
            std::size_t end = support_line.find(')', pos);
            if (end == std::string::npos)
                throw GdaError("E_PARSE", "line 5: unbalanced support element");
            declared.push_back(parse_element(support_line.substr(pos, end - pos + 1), g));
            pos = end + 1;
        }
    }
    std::size_t idx = 5;
    AnyGraded out = [&]() -> AnyGraded {
        switch (*kind) {
            case Kind::R: return detail::parse_components<RealQuad>(lines, idx, g, n);
            case Kind::C: return detail::parse_components<Cyclo8>(lines, idx, g, n);
            case Kind::H: return detail::parse_components<QuaternionQ2>(lines, idx, g, n);
        }
        throw GdaError("E_PARSE", "unknown kind");
    }();
    // Cross-check the declared support against the component degrees.
    std::vector<GroupElement> actual = std::visit(
        [](const auto& alg) { return alg.support(); }, out);
    std::sort(declared.begin(), declared.end());
    if (declared != actual)
        throw GdaError("E_PARSE", "support declaration disagrees with the component list");
    return out;
}

// ---------------------------------------------------------------------------
// Classification record format:
//
//   gdr 1
//   case <tag>
//   kind R|C|H
//   n <int>
//   dim <1|2|4>
//   group <group literal>
//   support <elem> ...
//   [inner <tag>]
//   [K <elem> ...]
//   [beta <u> <v> <+1|-1>]...
//   [mu <t> <+1|-1>]...
//   [nu <t> <+1|-1>]...

inline std::string write_record(const ClassificationRecord& rec) {
    std::ostringstream out;
    out << "gdr 1\n";
    out << "case " << tag_name(rec.tag) << "\n";
    out << "kind " << kind_letter(rec.algebra_kind) << "\n";
    out << "n " << rec.algebra_n << "\n";
    out << "dim " << rec.component_dim << "\n";
    out << "group " << format_group(rec.ambient) << "\n";
    out << "support";
    for (const auto& t : rec.support.elements()) out << " " << format_element(t);
    out << "\n";
    if (rec.inner_tag) out << "inner " << tag_name(*rec.inner_tag) << "\n";
    if (rec.k_subgroup) {
        out << "K";
        for (const auto& t : rec.k_subgroup->elements()) out << " " << format_element(t);
        out << "\n";
    }
    if (rec.beta) {
        for (const auto& u : rec.beta->domain().elements())
            for (const auto& v : rec.beta->domain().elements())
                out << "beta " << format_element(u) << " " << format_element(v) << " "
                    << (rec.beta->value(u, v) > 0 ? "+1" : "-1") << "\n";
    }
    if (rec.mu) {
        for (const auto& t : rec.mu->domain().elements())
            out << "mu " << format_element(t) << " " << (rec.mu->value(t) > 0 ? "+1" : "-1")
                << "\n";
    }
    if (rec.nu) {
        const FinAbelianGroup& g = rec.nu->t().parent();
        for (const auto& [r, v] : rec.nu->values())
            out << "nu " << format_element(g.unrank(r)) << " " << (v > 0 ? "+1" : "-1") << "\n";
    }
    return out.str();
}

inline ClassificationRecord parse_record(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
    }
    auto fail = [](std::size_t idx, const std::string& msg) -> void {
        throw GdaError("E_PARSE", "line " + std::to_string(idx + 1) + ": " + msg);
    };
    auto expect_prefix = [&](std::size_t idx, const std::string& prefix) -> std::string {
        if (idx >= lines.size() || lines[idx].rfind(prefix, 0) != 0)
            fail(idx, "expected '" + prefix + "'");
        return lines[idx].substr(prefix.size());
    };
    if (expect_prefix(0, "gdr ") != "1") fail(0, "unsupported record version");
    ClassificationRecord rec;
    auto tag = parse_tag(expect_prefix(1, "case "));
    if (!tag) fail(1, "unknown case tag");
    rec.tag = *tag;
    std::string kind_str = expect_prefix(2, "kind ");
    auto kind = kind_str.size() == 1 ? kind_from_letter(kind_str[0]) : std::nullopt;
    if (!kind) fail(2, "unknown kind");
    rec.algebra_kind = *kind;
    try {
        rec.algebra_n = std::stoul(expect_prefix(3, "n "));
        rec.component_dim = std::stoi(expect_prefix(4, "dim "));
    } catch (...) {
        fail(3, "bad n or dim");
    }
    rec.ambient = parse_group(expect_prefix(5, "group "));
    const FinAbelianGroup& g = rec.ambient;

    auto parse_elem_list = [&](const std::string& body) {
        std::vector<GroupElement> elems;
        std::size_t pos = 0;
        while ((pos = body.find('(', pos)) != std::string::npos) {
            std::size_t end = body.find(')', pos);
            if (end == std::string::npos)
                throw GdaError("E_PARSE", "unbalanced element list");
            elems.push_back(parse_element(body.substr(pos, end - pos + 1), g));
            pos = end + 1;
        }
        return elems;
    };
    rec.support = Subgroup::from_elements(g, parse_elem_list(expect_prefix(6, "support")));

    std::map<std::pair<std::size_t, std::size_t>, int> beta_table;
    std::map<std::size_t, int> mu_table, nu_table;
    std::vector<GroupElement> k_elems;
    auto parse_sign = [&](const std::string& s, std::size_t idx) {
        if (s == "+1") return 1;
        if (s == "-1") return -1;
        fail(idx, "expected +1 or -1");
        return 0;
    };
    for (std::size_t idx = 7; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        std::istringstream in(line);
        std::string head;
        in >> head;
        std::string rest;
        std::getline(in, rest);
        if (head == "inner") {
            auto it = parse_tag(rest.substr(rest.find_first_not_of(' ')));
            if (!it) fail(idx, "unknown inner tag");
            rec.inner_tag = *it;
        } else if (head == "K") {
            k_elems = parse_elem_list(rest);
        } else if (head == "beta") {
            auto elems = parse_elem_list(rest);
            if (elems.size() != 2) fail(idx, "beta line needs two elements");
            std::size_t sp = rest.rfind(' ');
            beta_table[{g.rank(elems[0]), g.rank(elems[1])}] =
                parse_sign(rest.substr(sp + 1), idx);
        } else if (head == "mu" || head == "nu") {
            auto elems = parse_elem_list(rest);
            if (elems.size() != 1) fail(idx, head + " line needs one element");
            std::size_t sp = rest.rfind(' ');
            int v = parse_sign(rest.substr(sp + 1), idx);
            (head == "mu" ? mu_table : nu_table)[g.rank(elems[0])] = v;
        } else {
            fail(idx, "unknown record field '" + head + "'");
        }
    }

    if (!k_elems.empty()) rec.k_subgroup = Subgroup::from_elements(g, k_elems);

    Subgroup t2 = rec.support.two_torsion();
    if (!beta_table.empty()) {
        // beta lives on T (1d, 2f) or on K (2d).
        Subgroup domain = (rec.tag == CaseTag::C2d && rec.k_subgroup) ? *rec.k_subgroup
                                                                      : rec.support;
        rec.beta = Bicharacter::from_table(domain, [&](const GroupElement& u,
                                                       const GroupElement& v) {
            auto it = beta_table.find({g.rank(u), g.rank(v)});
            if (it == beta_table.end())
                throw GdaError("E_PARSE", "beta table is missing a pair");
            return it->second;
        });
    }
    if (!mu_table.empty()) {
        // mu lives on T when elementary, on T_2 in the Z4 cases.
        Subgroup domain = rec.support.is_elementary() ? rec.support : t2;
        rec.mu = QuadraticForm::from_values(domain, [&](const GroupElement& t) {
            auto it = mu_table.find(g.rank(t));
            if (it == mu_table.end()) throw GdaError("E_PARSE", "mu table is missing a value");
            return it->second;
        });
    }
    if (!nu_table.empty()) {
        Subgroup nu_t = rec.support, nu_k;
        switch (rec.tag) {
            case CaseTag::C2a:
            case CaseTag::C2b:
            case CaseTag::C2c:
                if (!rec.k_subgroup) throw GdaError("E_PARSE", "nu without K");
                nu_k = *rec.k_subgroup;
                break;
            case CaseTag::C2d: {
                if (!rec.k_subgroup) throw GdaError("E_PARSE", "nu without K");
                std::vector<GroupElement> kt2;
                for (const auto& t : rec.k_subgroup->elements())
                    if (g.order_of(t) <= 2) kt2.push_back(t);
                nu_t = t2;
                nu_k = Subgroup::from_elements(g, kt2);
                break;
            }
            case CaseTag::C2e:
                nu_k = t2;
                break;
            default: throw GdaError("E_PARSE", "nu is only valid for 2a-2e records");
        }
        rec.nu = NiceMap::from_values(nu_t, nu_k, [&](const GroupElement& t) {
            auto it = nu_table.find(g.rank(t));
            if (it == nu_table.end()) throw GdaError("E_PARSE", "nu table is missing a value");
            return it->second;
        });
    }
    rec.deferred_complex = (rec.tag == CaseTag::C2f);
    return rec;
}

// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GdaError("E_IO", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GdaError("E_IO", "cannot write " + path);
    out << content;
}

/// One-line human summary of a record, e.g. "case 2e, M_2(C), T = Z4, [nu] = +-".
inline std::string summarize(const ClassificationRecord& rec) {
    std::string out = "case " + tag_name(rec.tag) + ", M_" + std::to_string(rec.algebra_n) +
                      "(" + kind_letter(rec.algebra_kind) + "), T = " +
                      format_group(rec.ambient);
    if (rec.support.size() != rec.ambient.size()) out += " (proper subgroup support)";
    if (rec.nu) {
        out += ", ";
        out += (rec.tag == CaseTag::C2e ? "[nu] = " : "nu = ");
        for (const auto& [r, v] : rec.nu->values()) {
            (void)r;
            out += (v > 0 ? '+' : '-');
        }
    }
    if (rec.tag == CaseTag::C2f) out += ", deferred to the complex classification";
    return out;
}

} // namespace gda
