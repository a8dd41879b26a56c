// ulbound: exact lower bounds for unlinking numbers and 4-ball crossing
// numbers from lattice embeddings, linking forms and correction terms.

#include "ulb/lattice.hpp"
#include "ulb/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ulb;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

IntMatrix gram_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    std::vector<std::vector<Integer>> rows;
    for (const auto& row : j) {
        std::vector<Integer> r;
        for (const auto& v : row) r.emplace_back(v.get<long>());
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    return IntMatrix::from_rows(rows);
}

std::string elem_str(const FiniteAbelianGroup::Elem& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i)
        s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

int cmd_goeritz(const std::string& file) {
    auto code = pd_from_text(slurp(file));
    auto a = analyze(code);
    auto g = goeritz_with_signature(code);
    std::cout << "crossings\t" << code.crossings.size() << "\n";
    std::cout << "components\t" << a.num_components << "\n";
    std::cout << "white_gram\t" << g.white_gram.to_string() << "\n";
    std::cout << "black_gram\t" << g.black_gram.to_string() << "\n";
    std::cout << "determinant\t" << g.determinant.get_str() << "\n";
    std::cout << "nullity_zero\t" << (g.nullity_zero ? "true" : "false") << "\n";
    std::cout << "gl_correction\t" << g.gl_correction << "\n";
    std::cout << "signatures";
    for (long s : quasi_orientation_signatures(code)) std::cout << "\t" << s;
    std::cout << "\n";
    return 0;
}

int cmd_embed(const std::string& file, std::size_t ambient) {
    IntMatrix gram = gram_from_json_text(slurp(file));
    auto classes = orthogonal_embeddings(Lattice::from_gram(gram), ambient);
    std::cout << "classes\t" << classes.size() << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& E = classes[i];
        auto C = orthogonal_complement(E);
        std::cout << "embedding " << i + 1 << "\t" << E.images.to_string()
                  << "\tcomplement_gram\t" << C.gram.to_string() << "\n";
    }
    return 0;
}

int cmd_dinv(const std::string& file) {
    IntMatrix gram = gram_from_json_text(slurp(file));
    auto t = d_invariants_alternating(gram);
    std::cout << "group";
    for (long long f : t.group.factors) std::cout << "\t" << f;
    std::cout << "\n";
    for (const auto& [e, v] : t.values) {
        bool spin = std::find(t.spin_elements.begin(), t.spin_elements.end(), e) !=
                    t.spin_elements.end();
        std::cout << elem_str(e) << "\t" << rational_to_string(v) << (spin ? "\tspin" : "")
                  << "\n";
    }
    return 0;
}

int cmd_obstruct(const std::string& file, long p, long n) {
    auto record = record_from_json_text(slurp(file));
    auto run = run_obstruction(record, CrossingBudget{p, n});
    const char* outcome = run.outcome == ObstructionRun::Outcome::obstructed ? "obstructed"
                          : run.outcome == ObstructionRun::Outcome::not_obstructed
                              ? "not-obstructed"
                              : "inconclusive";
    std::cout << record.name << "\t(p,n)=(" << p << "," << n << ")\t" << outcome << "\n";
    for (const auto& e : run.provenance)
        std::cout << e.rule << "\t" << e.inputs << "\t" << e.witness << "\n";
    return 0;
}

int cmd_table(const std::string& file) {
    auto records = dataset_from_json_text(slurp(file));
    std::cout << table_tsv(records);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact unlinking-number lower bounds"};
    app.require_subcommand(1);

    std::string pd_file, gram_file, record_file, dataset_file;
    std::size_t ambient = 0;
    long p = 0, n = 0;

    auto* goeritz = app.add_subcommand("goeritz", "Goeritz data of a PD code");
    goeritz->add_option("pd-file", pd_file, "file with a PD code")->required();

    auto* embed = app.add_subcommand("embed", "orthogonal embeddings of a Gram form");
    embed->add_option("--gram", gram_file, "JSON matrix file")->required();
    embed->add_option("--ambient", ambient, "ambient rank N")->required();

    auto* dinv = app.add_subcommand("dinv", "correction terms from a negative-definite Goeritz matrix");
    dinv->add_option("--gram", gram_file, "JSON matrix file")->required();

    auto* obstruct = app.add_subcommand("obstruct", "equality-case obstruction for one budget");
    obstruct->add_option("record", record_file, "link record JSON")->required();
    obstruct->add_option("--p", p, "positive double points")->required();
    obstruct->add_option("--n", n, "negative double points")->required();

    auto* table = app.add_subcommand("table", "batch lower bounds for a dataset");
    table->add_option("dataset", dataset_file, "dataset JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (goeritz->parsed()) return cmd_goeritz(pd_file);
        if (embed->parsed()) return cmd_embed(gram_file, ambient);
        if (dinv->parsed()) return cmd_dinv(gram_file);
        if (obstruct->parsed()) return cmd_obstruct(record_file, p, n);
        if (table->parsed()) return cmd_table(dataset_file);
    } catch (const ulb::CapacityError& e) {
        std::cerr << "capacity refusal: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
