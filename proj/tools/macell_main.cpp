#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "macell/catalog.hpp"
#include "macell/cellular.hpp"
#include "macell/components.hpp"
#include "macell/errors.hpp"
#include "macell/extension.hpp"
#include "macell/generators.hpp"
#include "macell/ma_analysis.hpp"
#include "macell/parser.hpp"
#include "macell/qe.hpp"
#include "macell/structure.hpp"

namespace {

using namespace macell;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + output_path);
    out << content;
}

std::string analyze_text(const Structure& m, const Decomposition& dec,
                         const DegreeProfile& prof, const PresentationReport& rep) {
    std::ostringstream os;
    os << "elements: " << m.size() << "\n";
    os << "components: " << dec.components.size() << "\n";
    os << "iso classes: " << dec.classes.size() << "\n";
    for (std::size_t i = 0; i < dec.classes.size(); ++i)
        os << "class " << i << ": " << dec.classes[i].members.size()
           << " components of size " << dec.classes[i].size << "\n";
    for (const auto& rel : m.signature().relations) {
        auto it = prof.degree.find(rel.name);
        os << "deg(" << rel.name << ")=" << (it == prof.degree.end() ? 0 : it->second);
        auto wit = prof.witness.find(rel.name);
        if (wit != prof.witness.end()) os << " (witness " << wit->second << ")";
        os << "\n";
    }
    os << "overall degree: " << prof.overall << "\n";
    os << rep.text();
    return os.str();
}

nlohmann::json analyze_json(const Structure& m, const Decomposition& dec,
                            const DegreeProfile& prof, const PresentationReport& rep) {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t i = 0; i < dec.classes.size(); ++i)
        classes.push_back({{"index", i},
                           {"size", dec.classes[i].size},
                           {"members", dec.classes[i].members.size()}});
    nlohmann::json degrees = nlohmann::json::object();
    for (const auto& rel : m.signature().relations) {
        auto it = prof.degree.find(rel.name);
        nlohmann::json entry = {{"degree", it == prof.degree.end() ? 0 : it->second}};
        auto wit = prof.witness.find(rel.name);
        if (wit != prof.witness.end()) entry["witness"] = wit->second;
        degrees[rel.name] = entry;
    }
    return {{"elements", m.size()},
            {"components", dec.components.size()},
            {"iso_classes", classes},
            {"degrees", degrees},
            {"overall_degree", prof.overall},
            {"presentation", rep.to_json()}};
}

int cmd_analyze(const std::string& path, const std::string& format,
                const std::string& output) {
    Structure m = load_structure_file(path);
    Decomposition dec = decompose(m);
    DegreeProfile prof = degree_profile(m);
    PresentationReport rep = is_ma_presented(m);
    if (format == "json")
        emit(output, analyze_json(m, dec, prof, rep).dump(2) + "\n");
    else
        emit(output, analyze_text(m, dec, prof, rep));
    return 0;
}

int cmd_decompose(const std::string& path, int threshold, const std::string& output) {
    Structure m = load_structure_file(path);
    CellularPartition p = cellular_decompose(m, threshold);
    emit(output, serialize_partition(p, m));
    return 0;
}

int cmd_verify(const std::string& path, const std::string& partition_path,
               const std::string& format, const std::string& output) {
    Structure m = load_structure_file(path);
    CellularPartition p = load_partition(read_file(partition_path), m);
    CellularReport rep = verify_cellular(m, p);
    if (format == "text")
        emit(output, rep.text());
    else
        emit(output, rep.to_json().dump(2) + "\n");
    return rep.pass ? 0 : 1;
}

int cmd_rewrite(const std::string& formula_text, const std::string& catalog_path,
                const std::string& format, const std::string& output) {
    StructureCatalog cat = load_catalog_file(catalog_path);
    FormulaPtr phi = parse_formula(formula_text, cat.signature());
    RewriteResult result = qe_rewrite(phi, cat);
    if (format == "text") {
        std::ostringstream os;
        os << "formula: " << print_formula(result.formula) << "\n";
        os << "threshold: " << result.threshold << "\n";
        for (const auto& n : result.notes) os << "note: " << n << "\n";
        emit(output, os.str());
    } else {
        nlohmann::json j = {{"formula", print_formula(result.formula)},
                            {"threshold", result.threshold},
                            {"notes", result.notes}};
        emit(output, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_extend(const std::string& catalog_path, int copies, long long new_size,
               const std::string& output) {
    StructureCatalog cat = load_catalog_file(catalog_path);
    StructureCatalog grown = synthesize_extension(cat, copies, new_size);
    emit(output, serialize_catalog(grown));
    return 0;
}

std::pair<int, int> parse_range(const std::string& text) {
    try {
        auto pos = text.find("..");
        if (pos == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
    } catch (const std::exception&) {
        throw InputError("cannot parse size range '" + text + "' (expected N or A..B)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutually algebraic structure toolkit"};
    app.require_subcommand(1);

    std::string input_path, partition_path, catalog_path, formula_text, output;
    std::string format = "text";
    int threshold = 3;
    int copies = 0;
    long long new_size = 0;
    std::uint64_t seed = 0;

    auto* analyze = app.add_subcommand("analyze", "degree profile and component census");
    analyze->add_option("path", input_path, "structure document")->required();
    analyze->add_option("--format", format, "text or json");
    analyze->add_option("--output", output, "write here instead of stdout");

    auto* decomp = app.add_subcommand("decompose", "cellular partition of a structure");
    decomp->add_option("path", input_path, "structure document")->required();
    decomp->add_option("--threshold", threshold, "band threshold (>= 2)");
    decomp->add_option("--output", output, "write here instead of stdout");

    auto* verify = app.add_subcommand("verify", "check a partition against a structure");
    verify->add_option("path", input_path, "structure document")->required();
    verify->add_option("partition", partition_path, "partition document")->required();
    std::string verify_format = "json";
    verify->add_option("--format", verify_format, "json or text");
    verify->add_option("--output", output, "write here instead of stdout");

    auto* rewrite = app.add_subcommand("rewrite", "quantifier elimination over a catalog");
    rewrite->add_option("formula", formula_text, "formula text")->required();
    rewrite->add_option("catalog", catalog_path, "catalog document")->required();
    std::string rewrite_format = "json";
    rewrite->add_option("--format", rewrite_format, "json or text");
    rewrite->add_option("--output", output, "write here instead of stdout");

    auto* extend = app.add_subcommand("extend", "append isomorphic fresh components");
    extend->add_option("catalog", catalog_path, "catalog document")->required();
    extend->add_option("copies", copies, "number of new components")->required();
    extend->add_option("new_size", new_size, "minimum size of each new component")->required();
    extend->add_option("--output", output, "write here instead of stdout");

    auto* gen = app.add_subcommand("gen", "deterministic fixture generators");
    gen->require_subcommand(1);
    gen->add_option("--seed", seed, "PRNG seed (random kind only)");
    gen->add_option("--output", output, "write here instead of stdout");
    gen->fallthrough();

    std::string sizes = "1..5";
    int count = 4, rows = 2, cols = 2, blocks = 2, block_size = 3;
    int length = 6, chains = 2, elements = 8;
    auto* g_paths = gen->add_subcommand("paths", "disjoint directed paths");
    g_paths->add_option("--sizes", sizes, "size range A..B");
    auto* g_matching = gen->add_subcommand("matching", "disjoint directed edges");
    g_matching->add_option("--count", count, "number of edges");
    auto* g_grid = gen->add_subcommand("grid", "grid graph");
    g_grid->add_option("--rows", rows, "rows");
    g_grid->add_option("--cols", cols, "columns");
    auto* g_eqrel = gen->add_subcommand("eqrel", "block equivalence relation");
    g_eqrel->add_option("--blocks", blocks, "number of blocks");
    g_eqrel->add_option("--size", block_size, "elements per block");
    auto* g_chaindel = gen->add_subcommand("chaindel", "chains with one edge deleted in R2");
    g_chaindel->add_option("--length", length, "chain length");
    g_chaindel->add_option("--chains", chains, "number of chains");
    auto* g_random = gen->add_subcommand("random", "seeded bounded-degree structure");
    g_random->add_option("--elements", elements, "universe size");
    for (auto* g : {g_paths, g_matching, g_grid, g_eqrel, g_chaindel, g_random})
        g->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(input_path, format, output);
        if (decomp->parsed()) return cmd_decompose(input_path, threshold, output);
        if (verify->parsed())
            return cmd_verify(input_path, partition_path, verify_format, output);
        if (rewrite->parsed())
            return cmd_rewrite(formula_text, catalog_path, rewrite_format, output);
        if (extend->parsed()) return cmd_extend(catalog_path, copies, new_size, output);
        if (gen->parsed()) {
            Structure m;
            if (g_paths->parsed()) {
                auto [lo, hi] = parse_range(sizes);
                m = gen_paths(lo, hi);
            } else if (g_matching->parsed()) {
                m = gen_matching(count);
            } else if (g_grid->parsed()) {
                m = gen_grid(rows, cols);
            } else if (g_eqrel->parsed()) {
                m = gen_eqrel(blocks, block_size);
            } else if (g_chaindel->parsed()) {
                m = gen_chain_deleted(length, chains);
            } else {
                m = gen_random(elements, seed);
            }
            emit(output, serialize(m));
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
